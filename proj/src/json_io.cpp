#include "sniep/json_io.hpp"

#include "sniep/errors.hpp"

#include <cmath>

namespace sniep::io {

Json to_json(const Rational& q) { return q.str(); }

Rational rational_from(const Json& j) {
    if (j.is_string()) return Rational::parse(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<long>());
    if (j.is_number_float()) {
        if (!std::isfinite(j.get<double>())) throw InputError("non-finite number");
        return Rational::parse(j.dump());
    }
    throw InputError("expected a rational, got " + j.dump());
}

Json to_json(const std::vector<Rational>& v) {
    Json a = Json::array();
    for (const auto& q : v) a.push_back(to_json(q));
    return a;
}

std::vector<Rational> rationals_from(const Json& j) {
    if (!j.is_array()) throw InputError("expected a list of rationals, got " + j.dump());
    std::vector<Rational> v;
    for (const auto& e : j) v.push_back(rational_from(e));
    return v;
}

namespace {

const Json& field(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw InputError(std::string("missing field \"") + key + "\"");
    return j.at(key);
}

std::size_t index_from(const Json& j) {
    if (!j.is_number_integer() || j.get<long>() < 0) throw InputError("expected a nonnegative index, got " + j.dump());
    return j.get<std::size_t>();
}

Json set_json(const IndexSet& s) {
    Json a = Json::array();
    for (auto i : s) a.push_back(i + 1);
    return a;
}

IndexSet set_from(const Json& j) {
    if (!j.is_array()) throw InputError("expected an index set, got " + j.dump());
    IndexSet s;
    for (const auto& e : j) {
        std::size_t i = index_from(e);
        if (i == 0) throw InputError("index sets are 1-based");
        s.push_back(i - 1);
    }
    return s;
}

}  // namespace

// ---- H certificates ----------------------------------------------------------------

Json to_json(const HCertificate& cert) {
    switch (cert.kind()) {
        case HCertificate::Kind::Leaf1:
            return {{"leaf1", {{"lambda", to_json(cert.lambda(0))}, {"a", to_json(cert.a(0))}}}};
        case HCertificate::Kind::Leaf2:
            return {{"leaf2",
                     {{"lambda", to_json(std::vector<Rational>{cert.lambda(0), cert.lambda(1)})},
                      {"diag", to_json(std::vector<Rational>{cert.a(0), cert.a(1)})}}}};
        case HCertificate::Kind::Node:
            return {{"node",
                     {{"c", to_json(cert.c())},
                      {"slot", cert.slot()},
                      {"top", to_json(cert.top())},
                      {"bottom", to_json(cert.bottom())}}}};
    }
    return {};
}

HCertificate hcert_from(const Json& j) {
    if (!j.is_object()) throw InputError("expected an H certificate object, got " + j.dump());
    // tagged form {"leaf1": {...}}; a flat {"kind": ...} form is also read
    std::string kind;
    const Json* body = &j;
    if (j.contains("kind")) {
        kind = field(j, "kind").get<std::string>();
    } else if (j.size() == 1 && (j.contains("leaf1") || j.contains("leaf2") || j.contains("node"))) {
        kind = j.begin().key();
        body = &j.begin().value();
    } else if (j.contains("certificate")) {
        return hcert_from(j.at("certificate"));
    } else {
        throw InputError("not an H certificate: " + j.dump());
    }
    if (kind == "leaf1") return HCertificate::leaf1(rational_from(field(*body, "lambda")), rational_from(field(*body, "a")));
    if (kind == "leaf2") {
        auto l = rationals_from(field(*body, "lambda"));
        auto a = rationals_from(field(*body, "diag"));
        if (l.size() != 2 || a.size() != 2) throw InputError("leaf2 needs two eigenvalues and two diagonal entries");
        return HCertificate::leaf2(l[0], l[1], a[0], a[1]);
    }
    if (kind == "node")
        return HCertificate::node(hcert_from(field(*body, "top")), hcert_from(field(*body, "bottom")),
                                  rational_from(field(*body, "c")), index_from(field(*body, "slot")));
    throw InputError("unknown certificate kind \"" + kind + "\"");
}

// ---- S_p certificates ----------------------------------------------------------------

Json to_json(const SotoCertificate& cert) {
    Json j{{"level", cert.level}, {"spectrum", to_json(cert.spectrum)}};
    if (cert.level == 1) {
        j["T"] = to_json(cert.t);
        j["slack"] = to_json(cert.slack);
        return j;
    }
    j["gamma"] = to_json(cert.gamma);
    Json parts = Json::array();
    for (std::size_t i = 0; i < cert.parts.size(); ++i) {
        const auto& p = cert.parts[i];
        Json pj{{"list", to_json(p.list)}, {i == 0 ? "margin" : "shift", to_json(p.adjust)}};
        if (p.child) pj["child"] = to_json(*p.child);
        parts.push_back(std::move(pj));
    }
    j["parts"] = std::move(parts);
    return j;
}

SotoCertificate soto_from(const Json& j) {
    if (j.is_object() && j.contains("certificate") && !j.contains("level")) return soto_from(j.at("certificate"));
    SotoCertificate c;
    c.level = field(j, "level").get<int>();
    c.spectrum = rationals_from(field(j, "spectrum"));
    if (c.level == 1) {
        c.t = rationals_from(field(j, "T"));
        c.slack = rational_from(field(j, "slack"));
        return c;
    }
    c.gamma = rational_from(field(j, "gamma"));
    const auto& parts = field(j, "parts");
    if (!parts.is_array()) throw InputError("parts must be a list");
    for (std::size_t i = 0; i < parts.size(); ++i) {
        const auto& pj = parts[i];
        SotoPart p;
        p.list = rationals_from(field(pj, "list"));
        p.adjust = rational_from(field(pj, i == 0 ? "margin" : "shift"));
        p.child = std::make_shared<SotoCertificate>(soto_from(field(pj, "child")));
        c.parts.push_back(std::move(p));
    }
    return c;
}

// ---- traces -----------------------------------------------------------------------------

Json to_json(const CTrace& trace) {
    Json steps = Json::array();
    for (const auto& s : trace.steps) {
        switch (s.op()) {
            case CStep::Op::Union: steps.push_back({{"op", "union"}, {"i", s.list()}, {"j", s.other()}}); break;
            case CStep::Op::Perron:
                steps.push_back({{"op", "perron"}, {"list", s.list()}, {"eps", to_json(s.eps())}});
                break;
            case CStep::Op::Guo:
                steps.push_back({{"op", "guo"},
                                 {"list", s.list()},
                                 {"target", s.target()},
                                 {"eps", to_json(s.eps())},
                                 {"sign", s.sign() > 0 ? "+" : "-"}});
                break;
        }
    }
    return {{"n0", trace.n0}, {"steps", std::move(steps)}};
}

CTrace trace_from(const Json& j) {
    if (j.is_object() && j.contains("trace") && !j.contains("n0")) return trace_from(j.at("trace"));
    CTrace t;
    t.n0 = index_from(field(j, "n0"));
    const auto& steps = field(j, "steps");
    if (!steps.is_array()) throw InputError("steps must be a list");
    for (const auto& s : steps) {
        const std::string op = field(s, "op").get<std::string>();
        if (op == "union") {
            t.steps.push_back(CStep::join(index_from(field(s, "i")), index_from(field(s, "j"))));
        } else if (op == "perron") {
            t.steps.push_back(CStep::perron(index_from(field(s, "list")), rational_from(field(s, "eps"))));
        } else if (op == "guo") {
            const auto& sg = field(s, "sign");
            int sign = 0;
            if (sg.is_string())
                sign = sg.get<std::string>() == "+" ? 1 : sg.get<std::string>() == "-" ? -1 : 0;
            else if (sg.is_number_integer())
                sign = sg.get<int>();
            t.steps.push_back(CStep::guo(index_from(field(s, "list")), index_from(field(s, "target")),
                                         rational_from(field(s, "eps")), sign));
        } else {
            throw InputError("unknown trace op \"" + op + "\"");
        }
    }
    return t;
}

// ---- Soules -------------------------------------------------------------------------------

Json to_json(const SoulesSpec& spec) {
    Json j{{"n", spec.seq.n}};
    if (spec.x_sq)
        j["x_sq"] = to_json(*spec.x_sq);
    else
        j["x"] = spec.x;
    Json splits = Json::array();
    for (const auto& s : spec.seq.splits)
        splits.push_back({{"parent", set_json(s.parent)}, {"star", set_json(s.star)}, {"starstar", set_json(s.starstar)}});
    j["splits"] = std::move(splits);
    return j;
}

SoulesSpec soules_from(const Json& j) {
    SoulesSequence seq;
    if (j.contains("splits")) {
        std::vector<SoulesSplit> splits;
        for (const auto& s : field(j, "splits"))
            splits.push_back({set_from(field(s, "parent")), set_from(field(s, "star")), set_from(field(s, "starstar"))});
        seq = SoulesSequence::from_splits(index_from(field(j, "n")), std::move(splits));
    } else {
        std::vector<Partition> parts;
        for (const auto& p : field(j, "partitions")) {
            Partition q;
            for (const auto& s : p) q.push_back(set_from(s));
            parts.push_back(std::move(q));
        }
        seq = SoulesSequence::from_partitions(std::move(parts));
    }
    if (auto v = validate_sequence(seq); !v) throw InputError("invalid Soules sequence: " + v.message);
    if (j.contains("x_sq")) return SoulesSpec::from_squares(std::move(seq), rationals_from(j.at("x_sq")));
    return SoulesSpec::from_vector(std::move(seq), field(j, "x").get<std::vector<double>>());
}

Json to_json(const SoulesRealization& real) {
    return {{"soules", to_json(real.spec)},
            {"spectrum", to_json(real.sigma.values())},
            {"diag", to_json(real.diag.values())}};
}

SoulesRealization realization_from(const Json& j) {
    if (j.is_object() && j.contains("realization") && !j.contains("soules")) return realization_from(j.at("realization"));
    SoulesSpec spec = soules_from(field(j, "soules"));
    Spectrum sigma(rationals_from(field(j, "spectrum")));
    if (j.contains("diag")) return {std::move(spec), sigma, DiagonalList(rationals_from(j.at("diag")))};
    auto d = soules_diag_exact(spec, sigma);
    return {std::move(spec), sigma, DiagonalList(d)};
}

// ---- matrices --------------------------------------------------------------------------------

Json to_json(const SymMatrix& a) { return {{"n", a.order()}, {"rows", a.rows()}}; }

std::vector<std::vector<double>> matrix_from(const Json& j) {
    if (j.is_object() && j.contains("matrix")) return matrix_from(j.at("matrix"));
    if (j.is_object() && j.contains("rows")) {
        auto rows = matrix_from(j.at("rows"));
        if (j.contains("n") && index_from(j.at("n")) != rows.size()) throw InputError("matrix order differs from \"n\"");
        return rows;
    }
    if (!j.is_array()) throw InputError("expected a matrix as a list of rows");
    auto rows = j.get<std::vector<std::vector<double>>>();
    for (const auto& r : rows)
        if (r.size() != rows.size()) throw InputError("matrix is not square");
    return rows;
}

Json to_json(const VerificationReport& r) {
    return {{"pass", r.pass()},
            {"symmetric", r.symmetric_ok},
            {"nonnegative", r.nonneg_ok},
            {"min_entry", r.min_entry},
            {"spectrum_error", r.spectrum_err},
            {"diag_checked", r.diag_checked},
            {"diag_error", r.diag_err},
            {"tol", r.tol}};
}

}  // namespace sniep::io
