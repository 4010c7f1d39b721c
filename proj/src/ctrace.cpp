#include "sniep/ctrace.hpp"

#include "sniep/errors.hpp"

#include <algorithm>
#include <sstream>

namespace sniep {

CStep CStep::join(std::size_t i, std::size_t j) {
    if (i == j) throw InputError("union needs two different lists");
    CStep s;
    s.op_ = Op::Union;
    s.i_ = i;
    s.j_ = j;
    return s;
}

CStep CStep::perron(std::size_t list, const Rational& eps) {
    if (eps.sign() < 0) throw InputError("Perron increase needs eps >= 0, got " + eps.str());
    CStep s;
    s.op_ = Op::Perron;
    s.i_ = list;
    s.eps_ = eps;
    return s;
}

CStep CStep::guo(std::size_t list, std::size_t target, const Rational& eps, int sign) {
    if (eps.sign() < 0) throw InputError("Guo step needs eps >= 0, got " + eps.str());
    if (target == 0) throw InputError("Guo step cannot target the Perron value");
    if (sign != 1 && sign != -1) throw InputError("Guo sign must be +1 or -1");
    CStep s;
    s.op_ = Op::Guo;
    s.i_ = list;
    s.target_ = target;
    s.eps_ = eps;
    s.sign_ = sign;
    return s;
}

std::string CStep::describe() const {
    std::ostringstream os;
    switch (op_) {
        case Op::Union: os << "union(" << i_ << ", " << j_ << ")"; break;
        case Op::Perron: os << "perron(" << i_ << ", " << eps_ << ")"; break;
        case Op::Guo: os << "guo(" << i_ << ", " << target_ << ", " << (sign_ > 0 ? "+" : "-") << eps_ << ")"; break;
    }
    return os.str();
}

TraceResult validate_trace(const CTrace& trace) {
    TraceResult r;
    if (trace.n0 == 0) {
        r.message = "a trace needs at least one starting list";
        return r;
    }
    auto& L = r.lists;
    L.assign(trace.n0, std::vector<Rational>{Rational(0)});
    for (std::size_t k = 0; k < trace.steps.size(); ++k) {
        const auto& s = trace.steps[k];
        auto bad = [&](const std::string& m) {
            r.failed_step = k;
            r.message = "step " + std::to_string(k + 1) + " " + s.describe() + ": " + m;
            return r;
        };
        if (s.list() >= L.size()) return bad("no such list");
        auto& li = L[s.list()];
        switch (s.op()) {
            case CStep::Op::Union: {
                if (s.other() >= L.size() || s.other() == s.list()) return bad("no such second list");
                const auto& lj = L[s.other()];
                if (li.front() < lj.front())
                    return bad("Perron value " + li.front().str() + " is below " + lj.front().str());
                std::vector<Rational> merged = li;
                merged.insert(merged.end(), lj.begin(), lj.end());
                std::size_t lo = std::min(s.list(), s.other()), hi = std::max(s.list(), s.other());
                L[lo] = std::move(merged);
                L.erase(L.begin() + static_cast<long>(hi));
                break;
            }
            case CStep::Op::Perron:
                if (s.eps().sign() < 0) return bad("negative eps");
                li.front() += s.eps();
                break;
            case CStep::Op::Guo:
                if (s.eps().sign() < 0) return bad("negative eps");
                if (s.target() == 0 || s.target() >= li.size()) return bad("target out of range");
                li.front() += s.eps();
                li[s.target()] += s.sign() > 0 ? s.eps() : -s.eps();
                break;
        }
    }
    if (L.size() != 1) {
        r.failed_step = trace.steps.size();
        r.message = "trace ends with " + std::to_string(L.size()) + " lists";
        return r;
    }
    r.final_list = Spectrum::from_unordered(L.front());
    return r;
}

HCertificate c_to_h(const CTrace& trace) {
    auto check = validate_trace(trace);
    if (!check.ok()) throw InputError("illegal trace: " + check.message);

    struct Work {
        HCertificate cert;
        std::vector<std::size_t> eig;  // list position -> eigenvalue index in cert
    };
    std::vector<Work> w(trace.n0, Work{HCertificate::leaf1(Rational(0), Rational(0)), {0}});
    for (const auto& s : trace.steps) {
        auto& wi = w[s.list()];
        switch (s.op()) {
            case CStep::Op::Union: {
                const auto& wj = w[s.other()];
                const std::size_t k = wi.eig.size();
                Work u{hunion(wi.cert, wj.cert), {0}};
                for (std::size_t p = 1; p < k; ++p) u.eig.push_back(1 + wi.eig[p]);
                u.eig.push_back(1);
                for (std::size_t p = 1; p < wj.eig.size(); ++p) u.eig.push_back(k + wj.eig[p]);
                std::size_t lo = std::min(s.list(), s.other()), hi = std::max(s.list(), s.other());
                w[lo] = std::move(u);
                w.erase(w.begin() + static_cast<long>(hi));
                break;
            }
            case CStep::Op::Perron: wi.cert = perron_increase(wi.cert, s.eps(), 0); break;
            case CStep::Op::Guo:
                if (s.sign() < 0)
                    wi.cert = guo_minus(wi.cert, wi.eig[s.target()], s.eps());
                else
                    wi.cert = guo_plus(wi.cert, wi.eig[s.target()], s.eps()).cert;
                break;
        }
    }
    return w.front().cert;
}

// ---- S_p -> C ------------------------------------------------------------------------

namespace {

// Tracks working lists by handle while emitting steps.
class Builder {
public:
    explicit Builder(std::size_t n0) : lists_(n0, std::vector<Rational>{Rational(0)}) {
        trace_.n0 = n0;
        for (std::size_t i = 0; i < n0; ++i) ids_.push_back(i);
    }

    std::size_t take() {
        if (next_ >= trace_.n0) throw std::logic_error("trace builder ran out of starting lists");
        return next_++;
    }

    const std::vector<Rational>& list(std::size_t id) const { return lists_[pos(id)]; }
    const Rational& head(std::size_t id) const { return list(id).front(); }
    std::size_t size(std::size_t id) const { return list(id).size(); }

    // Returns the handle of the merged list (that of a).
    std::size_t unite(std::size_t a, std::size_t b) {
        std::size_t i = pos(a), j = pos(b);
        if (lists_[i].front() < lists_[j].front()) throw std::logic_error("union with a larger second head");
        trace_.steps.push_back(CStep::join(i, j));
        auto merged = lists_[i];
        merged.insert(merged.end(), lists_[j].begin(), lists_[j].end());
        std::size_t lo = std::min(i, j), hi = std::max(i, j);
        lists_[lo] = std::move(merged);
        ids_[lo] = a;
        lists_.erase(lists_.begin() + static_cast<long>(hi));
        ids_.erase(ids_.begin() + static_cast<long>(hi));
        return a;
    }

    void perron(std::size_t id, const Rational& eps) {
        if (eps.sign() < 0) throw std::logic_error("negative Perron increase in trace builder");
        if (eps.is_zero()) return;
        std::size_t i = pos(id);
        trace_.steps.push_back(CStep::perron(i, eps));
        lists_[i].front() += eps;
    }

    void guo(std::size_t id, std::size_t target, const Rational& eps, int sign) {
        if (eps.is_zero()) return;
        std::size_t i = pos(id);
        trace_.steps.push_back(CStep::guo(i, target, eps, sign));
        lists_[i].front() += eps;
        lists_[i][target] += sign > 0 ? eps : -eps;
    }

    CTrace trace() const { return trace_; }

private:
    std::size_t pos(std::size_t id) const {
        auto it = std::find(ids_.begin(), ids_.end(), id);
        if (it == ids_.end()) throw std::logic_error("unknown list handle");
        return static_cast<std::size_t>(it - ids_.begin());
    }

    std::vector<std::vector<Rational>> lists_;
    std::vector<std::size_t> ids_;
    std::size_t next_ = 0;
    CTrace trace_;
};

// (hi, lo) from two zero lists, hi >= max(lo, -lo).
std::size_t build_pair(Builder& b, const Rational& hi, const Rational& lo) {
    std::size_t first = b.take();
    std::size_t p = b.unite(first, b.take());
    if (lo.sign() <= 0)
        b.guo(p, 1, -lo, -1);
    else
        b.guo(p, 1, lo, +1);
    b.perron(p, hi - b.head(p));
    return p;
}

std::size_t build_s1(Builder& b, const std::vector<Rational>& v) {
    const std::size_t n = v.size();
    if (n == 1) {
        std::size_t a = b.take();
        b.perron(a, v[0]);
        return a;
    }
    const Rational& ln = v.back();
    std::size_t first = b.take();
    std::size_t main = b.unite(first, b.take());
    if (ln.sign() <= 0)
        b.guo(main, 1, -ln, -1);
    else
        b.guo(main, 1, ln, +1);

    // Pairs with T_i < 0 and a negative middle value spend their deficit on main.
    std::vector<std::pair<Rational, Rational>> later;
    for (std::size_t i = 2; i <= n / 2; ++i) {
        const Rational& hi = v[i - 1];
        const Rational& lo = v[n - i];
        Rational t = hi + lo;
        if (t.sign() < 0) {
            std::size_t p = build_pair(b, -lo, lo);
            std::size_t k = b.size(main);
            b.unite(main, p);
            b.guo(main, k, -t, -1);
        } else {
            later.emplace_back(hi, lo);
        }
    }
    std::optional<Rational> mid_later;
    if (n >= 3 && n % 2 == 1) {
        const Rational& mid = v[(n + 1) / 2 - 1];
        if (mid.sign() < 0) {
            std::size_t p = b.take();
            std::size_t k = b.size(main);
            b.unite(main, p);
            b.guo(main, k, -mid, -1);
        } else {
            mid_later = mid;
        }
    }
    if (b.head(main) > v[0]) throw std::logic_error("S1 certificate with negative slack");
    b.perron(main, v[0] - b.head(main));
    for (const auto& [hi, lo] : later) b.unite(main, build_pair(b, hi, lo));
    if (mid_later) {
        std::size_t p = b.take();
        b.perron(p, *mid_later);
        b.unite(main, p);
    }
    return main;
}

std::size_t build(Builder& b, const SotoCertificate& c) {
    if (c.level == 1) return build_s1(b, c.spectrum);
    std::size_t main = build(b, *c.parts.front().child);
    for (std::size_t i = 1; i < c.parts.size(); ++i) {
        const auto& part = c.parts[i];
        const Rational& h = part.list.front();
        const Rational& s = part.adjust;
        std::size_t q = build(b, *part.child);
        Rational H = b.head(main), P = b.head(q);
        if (H >= P) {
            std::size_t k = b.size(main);
            b.unite(main, q);
            b.guo(main, k, s, -1);
        } else if (h <= H) {
            std::size_t k = b.size(q);
            b.unite(q, main);
            b.guo(q, k, H - h, -1);
            main = q;
        } else {
            b.perron(main, h - H);
            b.unite(q, main);
            main = q;
        }
    }
    const Rational& l1 = c.spectrum.front();
    if (b.head(main) > l1) throw std::logic_error("S_p certificate overspends its Perron value");
    b.perron(main, l1 - b.head(main));
    return main;
}

}  // namespace

CTrace sp_to_c(const SotoCertificate& cert) {
    if (auto v = validate_soto(cert); !v) throw InputError("invalid S_p certificate: " + v.message);
    Builder b(cert.spectrum.size());
    build(b, cert);
    return b.trace();
}

}  // namespace sniep
