#include "sniep/cli.hpp"

#include "sniep/ctrace.hpp"
#include "sniep/equiv.hpp"
#include "sniep/errors.hpp"
#include "sniep/fiedler.hpp"
#include "sniep/hcalc.hpp"
#include "sniep/json_io.hpp"
#include "sniep/soto.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <queue>
#include <sstream>

namespace sniep {

namespace {

using io::Json;

struct Options {
    std::string kind, from, to;
    std::string spectrum, diag, input, output, matrix;
    double tol = 1e-9;
    std::optional<long long> budget;
    int max_p = 0;
    bool exact_only = false;
};

struct Result {
    int code = kMember;
    Json doc;
};

std::vector<Rational> parse_list(const std::string& s) {
    std::vector<Rational> v;
    std::string tok;
    auto flush = [&] {
        if (!tok.empty()) v.push_back(Rational::parse(tok));
        tok.clear();
    };
    for (char ch : s) {
        if (ch == ',' || ch == ' ' || ch == ';' || ch == '\t')
            flush();
        else
            tok += ch;
    }
    flush();
    if (v.empty()) throw InputError("empty list \"" + s + "\"");
    return v;
}

Json read_json(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw InputError("cannot open " + path);
    try {
        return Json::parse(f);
    } catch (const Json::exception& e) {
        throw InputError(path + ": " + e.what());
    }
}

std::size_t budget_of(const Options& o) {
    if (o.budget) return static_cast<std::size_t>(*o.budget);
    if (const char* env = std::getenv("SNIEP_BUDGET")) {
        char* end = nullptr;
        long long v = std::strtoll(env, &end, 10);
        if (end == env || *end != '\0' || v <= 0) throw InputError("SNIEP_BUDGET must be a positive integer");
        return static_cast<std::size_t>(v);
    }
    return kDefaultBudget;
}

struct Problem {
    std::optional<Spectrum> sigma;
    std::optional<DiagonalList> diag;
};

Problem load_problem(const Options& o) {
    Problem p;
    std::optional<Json> doc;
    if (!o.input.empty()) doc = read_json(o.input);
    if (!o.spectrum.empty())
        p.sigma = Spectrum(parse_list(o.spectrum));
    else if (doc && doc->contains("spectrum"))
        p.sigma = Spectrum(io::rationals_from(doc->at("spectrum")));
    if (!o.diag.empty())
        p.diag = DiagonalList(parse_list(o.diag));
    else if (doc && doc->contains("diag"))
        p.diag = DiagonalList(io::rationals_from(doc->at("diag")));
    if (p.sigma && p.diag && p.sigma->size() != p.diag->size())
        throw InputError("spectrum has " + std::to_string(p.sigma->size()) + " entries, diagonal has " +
                         std::to_string(p.diag->size()));
    return p;
}

const Spectrum& need_sigma(const Problem& p) {
    if (!p.sigma) throw InputError("no spectrum given (use --spectrum or an input file)");
    return *p.sigma;
}

const DiagonalList& need_diag(const Problem& p) {
    if (!p.diag) throw InputError("no diagonal given (use --diag or an input file)");
    return *p.diag;
}

// S_p for p = 1..max_p.  A miss is final once max_p reaches n - 1, because a
// member of H_n satisfies S_{n-1} (two-part partitions suffice).
struct Spectral {
    int code = kNonMember;
    std::optional<SotoCertificate> cert;
    std::string note;
};

Spectral spectral_search(const Spectrum& sigma, const Options& o) {
    const int n = static_cast<int>(sigma.size());
    const int max_p = o.max_p > 0 ? o.max_p : n;
    SpOptions opt;
    opt.budget = budget_of(o);
    Spectral r;
    if (sigma.size() > opt.max_n) {
        r.code = kInconclusive;
        r.note = "lists longer than " + std::to_string(opt.max_n) + " are outside the S_p search";
        return r;
    }
    for (int p = 1; p <= max_p; ++p) {
        auto out = sp_check(sigma, p, opt);
        if (out.status == SpStatus::Member) {
            r.code = kMember;
            r.cert = std::move(out.cert);
            return r;
        }
        if (out.status == SpStatus::Exhausted) {
            r.code = kInconclusive;
            r.note = "partition budget exhausted at p = " + std::to_string(p);
            return r;
        }
    }
    if (max_p >= n - 1 || n == 1) {
        r.code = kNonMember;
    } else {
        r.code = kInconclusive;
        r.note = "no S_p certificate up to p = " + std::to_string(max_p);
    }
    return r;
}

Json member_field(int code) {
    if (code == kMember) return true;
    if (code == kNonMember) return false;
    return nullptr;
}

// H certificate either from the diagonal search or through S_p -> C -> H.
struct HFind {
    int code = kNonMember;
    std::optional<HCertificate> cert;
    std::string note;
    std::size_t expansions = 0;
};

HFind find_h(const Problem& p, const Options& o) {
    const Spectrum& sigma = need_sigma(p);
    HFind r;
    if (p.diag) {
        auto out = search_with_diag(sigma, *p.diag, budget_of(o));
        r.expansions = out.expansions;
        r.code = out.status == SearchStatus::Found ? kMember : out.status == SearchStatus::NotMember ? kNonMember
                                                                                                      : kInconclusive;
        if (out.status == SearchStatus::Exhausted) r.note = "search budget exhausted";
        r.cert = std::move(out.cert);
        return r;
    }
    auto s = spectral_search(sigma, o);
    r.code = s.code;
    r.note = s.note;
    if (s.cert) r.cert = c_to_h(sp_to_c(*s.cert));
    return r;
}

Result cmd_check(const Options& o) {
    Problem p = load_problem(o);
    const Spectrum& sigma = need_sigma(p);
    Result r;
    r.doc["kind"] = o.kind;
    r.doc["spectrum"] = io::to_json(sigma.values());
    if (o.kind == "fiedler") {
        const DiagonalList& d = need_diag(p);
        auto nec = fiedler_necessary(sigma, d);
        auto suf = fiedler_sufficient(sigma, d);
        r.doc["diag"] = io::to_json(d.values());
        r.doc["necessary"] = nec.necessary_ok;
        r.doc["sufficient"] = suf.sufficient_ok;
        if (!nec.first_violated.empty()) r.doc["necessary_violated"] = nec.first_violated;
        if (!suf.first_violated.empty()) r.doc["sufficient_violated"] = suf.first_violated;
        r.code = suf.sufficient_ok ? kMember : !nec.necessary_ok ? kNonMember : kInconclusive;
    } else if (o.kind == "s1") {
        auto s = s1_check(sigma);
        r.doc["T"] = io::to_json(s1_terms(sigma));
        r.doc["slack"] = io::to_json(s.slack);
        r.doc["negativity"] = io::to_json(s1_negativity(sigma));
        if (s.ok) r.doc["margin"] = io::to_json(s1_margin(sigma));
        r.code = s.ok ? kMember : kNonMember;
    } else if (o.kind == "sp" || o.kind == "c") {
        auto s = spectral_search(sigma, o);
        r.code = s.code;
        if (!s.note.empty()) r.doc["note"] = s.note;
        if (s.cert) {
            r.doc["level"] = s.cert->level;
            if (o.kind == "sp")
                r.doc["certificate"] = io::to_json(*s.cert);
            else
                r.doc["trace"] = io::to_json(sp_to_c(*s.cert));
        }
    } else if (o.kind == "h") {
        auto h = find_h(p, o);
        r.code = h.code;
        if (!h.note.empty()) r.doc["note"] = h.note;
        if (p.diag) r.doc["expansions"] = h.expansions;
        if (h.cert) {
            r.doc["diag"] = io::to_json(h.cert->diagonal());
            r.doc["certificate"] = io::to_json(*h.cert);
        } else if (p.diag) {
            r.doc["diag"] = io::to_json(p.diag->values());
        }
    } else {
        throw InputError("unknown check kind \"" + o.kind + "\" (fiedler, h, s1, sp, c)");
    }
    r.doc["member"] = member_field(r.code);
    return r;
}

Result cmd_realize(const Options& o) {
    Result r;
    r.doc["method"] = o.kind;
    if (o.kind == "h") {
        Problem p = load_problem(o);
        auto h = find_h(p, o);
        r.code = h.code;
        r.doc["spectrum"] = io::to_json(need_sigma(p).values());
        if (!h.note.empty()) r.doc["note"] = h.note;
        if (!h.cert) {
            r.doc["member"] = member_field(r.code);
            return r;
        }
        auto d = h.cert->diagonal();
        r.doc["diag"] = io::to_json(d);
        r.doc["certificate"] = io::to_json(*h.cert);
        if (!o.exact_only) {
            SymMatrix a = materialize(*h.cert, o.tol);
            auto rep = verify_realization(a, *p.sigma, DiagonalList(d), o.tol);
            r.doc["matrix"] = io::to_json(a);
            r.doc["report"] = io::to_json(rep);
            if (!rep.pass()) r.code = kInconclusive;
        }
        return r;
    }
    if (o.kind == "soules") {
        if (o.input.empty()) throw InputError("realize soules needs --input with a Soules spec");
        Json doc = read_json(o.input);
        if (doc.contains("realization") && !doc.contains("soules")) doc = doc.at("realization");
        SoulesSpec spec = io::soules_from(doc.contains("soules") ? doc.at("soules") : doc);
        Spectrum sigma = !o.spectrum.empty() ? Spectrum(parse_list(o.spectrum))
                                             : Spectrum(io::rationals_from(doc.at("spectrum")));
        r.doc["spectrum"] = io::to_json(sigma.values());
        std::optional<DiagonalList> exact;
        if (spec.x_sq) {
            exact = DiagonalList(soules_diag_exact(spec, sigma));
            r.doc["diag"] = io::to_json(exact->values());
        }
        if (!o.exact_only) {
            auto real = soules_realize(spec, sigma);
            auto rep = verify_realization(real.a, sigma, exact, o.tol);
            r.doc["matrix"] = io::to_json(real.a);
            r.doc["report"] = io::to_json(rep);
            if (!rep.pass()) r.code = kNonMember;
        }
        return r;
    }
    throw InputError("unknown realize method \"" + o.kind + "\" (h, soules)");
}

// ---- convert -----------------------------------------------------------------------------

struct Item {
    std::optional<CTrace> trace;
    std::optional<HCertificate> h;
    std::optional<SotoCertificate> sp;
    std::optional<std::vector<SoulesRealization>> soules;
};

Item load_item(const std::string& kind, const Json& j) {
    Item it;
    if (kind == "c") {
        it.trace = io::trace_from(j);
        if (auto v = validate_trace(*it.trace); !v.ok()) throw InputError("illegal trace: " + v.message);
    } else if (kind == "h") {
        it.h = io::hcert_from(j);
        if (auto v = validate_certificate(*it.h); !v) throw InputError("invalid H certificate: " + v.message);
    } else if (kind == "sp") {
        it.sp = io::soto_from(j);
        if (auto v = validate_soto(*it.sp); !v) throw InputError("invalid S_p certificate: " + v.message);
    } else if (kind == "soules") {
        auto real = io::realization_from(j);
        if (auto v = validate_realization(real); !v) throw InputError("invalid Soules realisation: " + v.message);
        it.soules = std::vector<SoulesRealization>{std::move(real)};
    } else {
        throw InputError("unknown certificate kind \"" + kind + "\" (c, h, sp, soules)");
    }
    return it;
}

std::vector<SoulesRealization> to_soules(const HCertificate& cert) {
    Spectrum sigma = cert.spectrum();
    DiagonalList diag(cert.diagonal());
    try {
        return {h_star_to_soules(sigma, diag, cert)};
    } catch (const NotIrreducible&) {
    }
    std::vector<SoulesRealization> out;
    for (const auto& b : sbar_decompose(sigma, diag)) out.push_back(h_star_to_soules(b.sigma, b.diag, b.cert));
    return out;
}

Item convert_edge(const std::string& from, const std::string& to, const Item& in) {
    Item out;
    if (from == "c" && to == "h") out.h = c_to_h(*in.trace);
    if (from == "h" && to == "sp") out.sp = h_to_sp(*in.h);
    if (from == "sp" && to == "c") out.trace = sp_to_c(*in.sp);
    if (from == "h" && to == "soules") out.soules = to_soules(*in.h);
    if (from == "soules" && to == "h") {
        const auto& blocks = *in.soules;
        HCertificate acc = soules_to_h(blocks.front());
        for (std::size_t i = 1; i < blocks.size(); ++i) {
            HCertificate next = soules_to_h(blocks[i]);
            acc = acc.perron() >= next.perron() ? hunion(acc, next) : hunion(next, acc);
        }
        out.h = acc;
    }
    return out;
}

Result cmd_convert(const Options& o) {
    static const std::multimap<std::string, std::string> edges{
        {"c", "h"}, {"h", "sp"}, {"sp", "c"}, {"h", "soules"}, {"soules", "h"}};
    for (const auto& k : {o.from, o.to})
        if (k != "c" && k != "h" && k != "sp" && k != "soules")
            throw InputError("unknown certificate kind \"" + k + "\" (c, h, sp, soules)");
    if (o.input.empty()) throw InputError("convert needs --input");
    Item cur = load_item(o.from, read_json(o.input));

    // shortest route through the converters
    std::map<std::string, std::string> prev{{o.from, ""}};
    std::queue<std::string> q;
    q.push(o.from);
    while (!q.empty()) {
        auto k = q.front();
        q.pop();
        auto [b, e] = edges.equal_range(k);
        for (auto it = b; it != e; ++it)
            if (!prev.count(it->second)) {
                prev[it->second] = k;
                q.push(it->second);
            }
    }
    std::vector<std::string> path{o.to};
    while (path.back() != o.from) path.push_back(prev.at(path.back()));
    std::reverse(path.begin(), path.end());
    for (std::size_t i = 1; i < path.size(); ++i) cur = convert_edge(path[i - 1], path[i], cur);

    Result r;
    r.doc["from"] = o.from;
    r.doc["to"] = o.to;
    Json route = Json::array();
    for (const auto& k : path) route.push_back(k);
    r.doc["route"] = route;
    if (o.to == "c") {
        r.doc["trace"] = io::to_json(*cur.trace);
        r.doc["final"] = io::to_json(validate_trace(*cur.trace).final_list->values());
    } else if (o.to == "h") {
        r.doc["certificate"] = io::to_json(*cur.h);
        r.doc["spectrum"] = io::to_json(cur.h->spectrum().values());
        r.doc["diag"] = io::to_json(cur.h->diagonal());
    } else if (o.to == "sp") {
        r.doc["certificate"] = io::to_json(*cur.sp);
    } else {
        const auto& blocks = *cur.soules;
        if (blocks.size() == 1) {
            r.doc["realization"] = io::to_json(blocks.front());
        } else {
            Json arr = Json::array();
            for (const auto& b : blocks) arr.push_back(io::to_json(b));
            r.doc["blocks"] = arr;
        }
    }
    return r;
}

Result cmd_verify(const Options& o) {
    if (o.matrix.empty()) throw InputError("verify needs --matrix");
    auto rows = io::matrix_from(read_json(o.matrix));
    Problem p = load_problem(o);
    const Spectrum& sigma = need_sigma(p);
    if (rows.size() != sigma.size()) throw InputError("matrix order differs from the spectrum length");
    std::optional<std::vector<double>> d;
    if (p.diag) d = p.diag->to_double();
    auto rep = verify_realization(rows, sigma.to_double(), d, o.tol);
    Result r;
    r.doc["report"] = io::to_json(rep);
    r.code = rep.pass() ? kMember : kNonMember;
    return r;
}

Result cmd_batch(const Options& o) {
    if (o.input.empty()) throw InputError("batch needs --input with a list of jobs");
    Json jobs = read_json(o.input);
    if (!jobs.is_array()) throw InputError("batch input must be a list of jobs");
    Json results = Json::array();
    for (const auto& job : jobs) {
        Json entry;
        std::vector<std::string> args;
        try {
            const Json& a = job.is_object() ? job.at("args") : job;
            args = a.get<std::vector<std::string>>();
        } catch (const Json::exception&) {
            entry["args"] = job;
            entry["exit"] = static_cast<int>(kInputError);
            entry["error"] = "a job is a list of argument strings or {\"args\": [...]}";
            results.push_back(entry);
            continue;
        }
        std::ostringstream out, err;
        int code = run_cli(args, out, err);
        entry["args"] = args;
        entry["exit"] = code;
        try {
            entry["output"] = Json::parse(out.str());
        } catch (const Json::exception&) {
            entry["output"] = out.str();
        }
        if (!err.str().empty()) entry["error"] = err.str();
        results.push_back(entry);
    }
    return {kMember, {{"jobs", results}}};
}

void emit(const Json& doc, const Options& o, std::ostream& out) {
    if (o.output.empty()) {
        out << doc.dump(2) << "\n";
        return;
    }
    std::ofstream f(o.output);
    if (!f) throw InputError("cannot write " + o.output);
    f << doc.dump(2) << "\n";
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Constructive tools for the symmetric nonnegative inverse eigenvalue problem", "sniep"};
    app.require_subcommand(1);
    Options o;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--spectrum", o.spectrum, "comma separated eigenvalues, Perron value first");
        sub->add_option("--diag", o.diag, "comma separated diagonal entries");
        sub->add_option("--input", o.input, "JSON input file");
        sub->add_option("--output", o.output, "write the JSON result here instead of stdout");
        sub->add_option("--tol", o.tol, "numerical tolerance")->check(CLI::PositiveNumber);
        sub->add_option("--budget", o.budget, "search budget (default 1000000, or SNIEP_BUDGET)");
        sub->add_option("--max-p", o.max_p, "highest S_p level to try (default n)");
        sub->add_flag("--exact-only", o.exact_only, "skip building matrices");
    };

    auto* check = app.add_subcommand("check", "membership test with certificate");
    check->add_option("kind", o.kind, "fiedler, h, s1, sp or c")->required();
    add_common(check);

    auto* realize = app.add_subcommand("realize", "build and verify a realising matrix");
    realize->add_option("method", o.kind, "h or soules")->required();
    add_common(realize);

    auto* convert = app.add_subcommand("convert", "translate a certificate between c, h, sp and soules");
    convert->add_option("from", o.from, "source kind")->required();
    convert->add_option("to", o.to, "target kind")->required();
    add_common(convert);

    auto* verify = app.add_subcommand("verify", "check a matrix against a spectrum and diagonal");
    verify->add_option("--matrix", o.matrix, "JSON matrix file")->required();
    add_common(verify);

    auto* batch = app.add_subcommand("batch", "run a list of jobs from a JSON file");
    add_common(batch);

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kInputError;
    }

    try {
        if (o.budget && *o.budget <= 0) throw InputError("--budget must be positive");
        if (o.max_p < 0) throw InputError("--max-p must be positive");
        Result r;
        if (check->parsed())
            r = cmd_check(o);
        else if (realize->parsed())
            r = cmd_realize(o);
        else if (convert->parsed())
            r = cmd_convert(o);
        else if (verify->parsed())
            r = cmd_verify(o);
        else
            r = cmd_batch(o);
        emit(r.doc, o, out);
        return r.code;
    } catch (const InputError& e) {
        err << "input error: " << e.what() << "\n";
        return kInputError;
    } catch (const NotIrreducible& e) {
        err << "input error: " << e.what() << "\n";
        return kInputError;
    } catch (const Json::exception& e) {
        err << "input error: " << e.what() << "\n";
        return kInputError;
    } catch (const NotRealizable& e) {
        err << "not realisable: " << e.what() << "\n";
        return kNonMember;
    } catch (const BudgetExhausted& e) {
        err << "inconclusive: " << e.what() << "\n";
        return kInconclusive;
    } catch (const ConvergenceError& e) {
        err << "inconclusive: " << e.what() << "\n";
        return kInconclusive;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    }
}

}  // namespace sniep
