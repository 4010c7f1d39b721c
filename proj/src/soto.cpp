#include "sniep/soto.hpp"

#include "sniep/errors.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace sniep {

// ---- S1 ------------------------------------------------------------------------

namespace {

// T_i over a full list; element 0 is never read.
std::vector<Rational> terms_of(const std::vector<Rational>& v) {
    const std::size_t n = v.size();
    std::vector<Rational> t;
    for (std::size_t i = 2; i <= n / 2; ++i) t.push_back(v[i - 1] + v[n - i]);
    if (n >= 3 && n % 2 == 1) t.push_back(min(v[(n + 1) / 2 - 1], Rational(0)));
    return t;
}

// Least lambda_1 passing S1 for the given tail, before clamping.
Rational theta1(const std::vector<Rational>& tail) {
    if (tail.empty()) return Rational(0);
    std::vector<Rational> full{Rational(0)};
    full.insert(full.end(), tail.begin(), tail.end());
    Rational th = -full.back();
    for (const auto& t : terms_of(full))
        if (t.sign() < 0) th -= t;
    return th;
}

}  // namespace

std::vector<Rational> s1_terms(const Spectrum& sigma) { return terms_of(sigma.values()); }

S1Result s1_check(const Spectrum& sigma) {
    const auto& v = sigma.values();
    if (v.size() == 1) return {v[0].sign() >= 0, v[0]};
    Rational slack = v.front() + v.back();
    for (const auto& t : terms_of(v))
        if (t.sign() < 0) slack += t;
    return {slack.sign() >= 0, slack};
}

Rational s1_negativity(const Spectrum& sigma) {
    auto r = s1_check(sigma);
    return r.slack.sign() < 0 ? -r.slack : Rational(0);
}

Rational s1_margin(const Spectrum& sigma) {
    auto r = s1_check(sigma);
    if (!r.ok) throw NotRealizable("list fails S1 (slack " + r.slack.str() + "), margin undefined");
    if (sigma.size() == 1) return sigma[0];
    return min(r.slack, sigma[0] - sigma[1]);
}

// ---- S_p evaluation ----------------------------------------------------------------

namespace {

struct Entry {
    Rational theta;           // effective threshold
    std::vector<int> labels;  // best partition of the tail (p >= 2)
};

struct Groups {
    std::vector<Rational> first;               // tail of sigma_1
    std::vector<std::vector<Rational>> others;  // full lists sigma_2..sigma_r
};

Groups split_by(const std::vector<Rational>& tail, const std::vector<int>& lab) {
    Groups g;
    int top = 0;
    for (int l : lab) top = std::max(top, l);
    g.others.resize(static_cast<std::size_t>(top));
    for (std::size_t i = 0; i < tail.size(); ++i) {
        if (lab[i] == 0)
            g.first.push_back(tail[i]);
        else
            g.others[static_cast<std::size_t>(lab[i] - 1)].push_back(tail[i]);
    }
    return g;
}

class Engine {
public:
    explicit Engine(const SpOptions& opt) : opt_(opt) {}

    // max(theta_p(tail), max tail, 0)
    const Entry& theta(const std::vector<Rational>& tail, int p) {
        auto key = std::make_pair(p, tail);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        Entry e;
        if (p == 1) {
            e.theta = theta1(tail);
        } else {
            best_(tail, p, e);
        }
        if (!tail.empty()) e.theta = max(e.theta, tail.front());
        e.theta = max(e.theta, Rational(0));
        return memo_.emplace(std::move(key), std::move(e)).first->second;
    }

    SotoCertificate build(const std::vector<Rational>& list, int p) {
        SotoCertificate c;
        c.level = p;
        c.spectrum = list;
        std::vector<Rational> tail(list.begin() + 1, list.end());
        if (p == 1) {
            c.t = terms_of(list);
            c.slack = s1_check(Spectrum(list)).slack;
            return c;
        }
        const Entry& e = theta(tail, p);
        auto g = split_by(tail, e.labels);
        const Rational& l1 = list.front();

        SotoPart first;
        first.list = {l1};
        first.list.insert(first.list.end(), g.first.begin(), g.first.end());
        Rational head1 = theta(g.first, p - 1).theta;
        first.adjust = l1 - head1;
        std::vector<Rational> child1{head1};
        child1.insert(child1.end(), g.first.begin(), g.first.end());
        first.child = std::make_shared<SotoCertificate>(build(child1, p - 1));
        c.gamma = head1;
        c.parts.push_back(std::move(first));

        for (auto& lst : g.others) {
            SotoPart part;
            std::vector<Rational> rest(lst.begin() + 1, lst.end());
            Rational need = theta(rest, p - 1).theta;
            part.adjust = max(Rational(0), need - lst.front());
            std::vector<Rational> childl{lst.front() + part.adjust};
            childl.insert(childl.end(), rest.begin(), rest.end());
            part.child = std::make_shared<SotoCertificate>(build(childl, p - 1));
            c.gamma = max(c.gamma, lst.front());
            part.list = std::move(lst);
            c.parts.push_back(std::move(part));
        }
        return c;
    }

    std::size_t partitions() const { return count_; }

private:
    void best_(const std::vector<Rational>& tail, int p, Entry& out) {
        const std::size_t m = tail.size();
        const int max_other = static_cast<int>(opt_.max_parts) - 1;
        std::vector<int> lab(m, 0);
        std::set<std::vector<std::vector<Rational>>> seen;
        bool have = false;

        std::function<void(std::size_t, int)> rec = [&](std::size_t i, int used) {
            if (i == m) {
                if (++count_ > opt_.budget) throw BudgetExhausted("S_p partition budget exhausted");
                auto g = split_by(tail, lab);
                std::vector<std::vector<Rational>> key{g.first};
                auto others = g.others;
                std::sort(others.begin(), others.end());
                key.insert(key.end(), others.begin(), others.end());
                if (!seen.insert(std::move(key)).second) return;
                Rational v = theta(g.first, p - 1).theta;
                Rational shifts;
                for (const auto& lst : g.others) {
                    v = max(v, lst.front());
                    std::vector<Rational> rest(lst.begin() + 1, lst.end());
                    Rational need = theta(rest, p - 1).theta - lst.front();
                    if (need.sign() > 0) shifts += need;
                }
                v += shifts;
                if (!have || v < out.theta) {
                    out.theta = v;
                    out.labels = lab;
                    have = true;
                }
                return;
            }
            // Labels are tried from the highest down; within a run of equal
            // values they never decrease, which removes most duplicates.
            int lo = (i > 0 && tail[i] == tail[i - 1]) ? lab[i - 1] : 0;
            int hi = std::min(used + 1, max_other);
            for (int l = hi; l >= lo; --l) {
                if (l == used + 1 && tail[i].sign() < 0) continue;  // a new part needs a nonnegative head
                lab[i] = l;
                rec(i + 1, std::max(used, l));
            }
            lab[i] = 0;
        };
        rec(0, 0);
    }

    SpOptions opt_;
    std::size_t count_ = 0;
    std::map<std::pair<int, std::vector<Rational>>, Entry> memo_;
};

void check_args(const Spectrum& sigma, int p, const SpOptions& opt) {
    if (p < 1) throw InputError("S_p level must be at least 1");
    if (sigma.size() == 0) throw InputError("empty spectrum");
    if (sigma.size() > opt.max_n)
        throw InputError("S_p search is capped at n = " + std::to_string(opt.max_n));
    if (opt.max_parts < 1) throw InputError("max_parts must be positive");
}

}  // namespace

SpOutcome sp_check(const Spectrum& sigma, int p, const SpOptions& opt) {
    check_args(sigma, p, opt);
    Engine eng(opt);
    SpOutcome out;
    try {
        out.threshold = eng.theta(sigma.tail(), p).theta;
        if (sigma.perron() >= out.threshold) {
            out.status = SpStatus::Member;
            out.cert = eng.build(sigma.values(), p);
        } else {
            out.status = SpStatus::NotMember;
        }
    } catch (const BudgetExhausted&) {
        out.status = SpStatus::Exhausted;
        out.cert.reset();
    }
    out.partitions = eng.partitions();
    return out;
}

Rational sp_negativity(const Spectrum& sigma, int p, const SpOptions& opt) {
    check_args(sigma, p, opt);
    Engine eng(opt);
    Rational th = eng.theta(sigma.tail(), p).theta;
    return max(Rational(0), th - sigma.perron());
}

Rational sp_margin(const Spectrum& sigma, int p, const SpOptions& opt) {
    check_args(sigma, p, opt);
    Engine eng(opt);
    Rational th = eng.theta(sigma.tail(), p).theta;
    if (sigma.perron() < th)
        throw NotRealizable("list fails S_" + std::to_string(p) + ", margin undefined");
    return sigma.perron() - th;
}

// ---- certificates -----------------------------------------------------------------------

namespace {

bool sorted_desc_ok(const std::vector<Rational>& v) {
    return std::is_sorted(v.begin(), v.end(), std::greater<>());
}

std::vector<Rational> with_head(const std::vector<Rational>& v, const Rational& h) {
    std::vector<Rational> out = v;
    out.front() = h;
    return out;
}

}  // namespace

Validation validate_soto(const SotoCertificate& cert) {
    auto fail = [&](const std::string& m) {
        return Validation{false, "level " + std::to_string(cert.level) + " (" + join(cert.spectrum) + "): " + m};
    };
    if (cert.spectrum.empty()) return fail("empty list");
    if (!sorted_desc_ok(cert.spectrum)) return fail("list is not sorted");
    if (cert.level < 1) return fail("level must be positive");
    if (cert.level == 1) {
        auto r = s1_check(Spectrum(cert.spectrum));
        if (!r.ok) return fail("S1 fails with slack " + r.slack.str());
        if (r.slack != cert.slack) return fail("recorded slack " + cert.slack.str() + " should be " + r.slack.str());
        if (terms_of(cert.spectrum) != cert.t) return fail("recorded T values do not match the list");
        return {};
    }
    if (cert.parts.empty()) return fail("no parts");
    std::vector<Rational> all;
    const Rational& l1 = cert.spectrum.front();
    Rational gamma, shifts;
    for (std::size_t i = 0; i < cert.parts.size(); ++i) {
        const auto& part = cert.parts[i];
        const std::string tag = "part " + std::to_string(i + 1);
        if (part.list.empty()) return fail(tag + " is empty");
        if (!sorted_desc_ok(part.list)) return fail(tag + " is not sorted");
        if (part.list.front().sign() < 0) return fail(tag + " has a negative head");
        if (part.adjust.sign() < 0) return fail(tag + " has a negative adjustment");
        if (!part.child) return fail(tag + " has no child certificate");
        if (part.child->level != cert.level - 1) return fail(tag + " child is not one level down");
        all.insert(all.end(), part.list.begin(), part.list.end());
        Rational head;
        if (i == 0) {
            if (part.list.front() != l1) return fail("part 1 must start with lambda_1");
            Rational gap = part.list.size() > 1 ? l1 - part.list[1] : l1;
            if (part.adjust > gap) return fail("margin " + part.adjust.str() + " exceeds the gap " + gap.str());
            head = l1 - part.adjust;
            gamma = head;
        } else {
            head = part.list.front() + part.adjust;
            gamma = max(gamma, part.list.front());
            shifts += part.adjust;
        }
        if (part.child->spectrum != with_head(part.list, head)) return fail(tag + " child certifies a different list");
        if (auto v = validate_soto(*part.child); !v) return v;
    }
    if (sorted_desc(all) != cert.spectrum) return fail("parts do not make up the list");
    if (gamma != cert.gamma) return fail("recorded gamma " + cert.gamma.str() + " should be " + gamma.str());
    if (l1 < gamma + shifts)
        return fail("lambda_1 = " + l1.str() + " is below gamma + shifts = " + (gamma + shifts).str());
    return {};
}

SotoCertificate lift(const SotoCertificate& cert, int level) {
    SotoCertificate cur = cert;
    while (cur.level < level) {
        SotoCertificate up;
        up.level = cur.level + 1;
        up.spectrum = cur.spectrum;
        up.gamma = cur.spectrum.front();
        SotoPart part{cur.spectrum, Rational(0), std::make_shared<SotoCertificate>(cur)};
        up.parts.push_back(std::move(part));
        cur = std::move(up);
    }
    return cur;
}

SotoCertificate h_to_sp(const HCertificate& cert) {
    if (auto v = validate_certificate(cert); !v) throw InputError("invalid H certificate: " + v.message);
    Spectrum sigma = cert.spectrum();
    if (s1_check(sigma).ok) {
        SotoCertificate c;
        c.level = 1;
        c.spectrum = sigma.values();
        c.t = s1_terms(sigma);
        c.slack = s1_check(sigma).slack;
        return c;
    }
    // Not in S1, so n >= 2 and lambda_2 >= 0 (otherwise the trace condition is S1).
    auto ag = anti_guo_split(cert);
    auto c1 = h_to_sp(ag.left);
    auto c2 = h_to_sp(ag.right);
    int k = std::max(c1.level, c2.level);
    c1 = lift(c1, k);
    c2 = lift(c2, k);

    SotoCertificate c;
    c.level = k + 1;
    c.spectrum = sigma.values();
    SotoPart p1{with_head(c1.spectrum, c1.spectrum.front() + ag.eps), ag.eps,
                std::make_shared<SotoCertificate>(c1)};
    SotoPart p2{with_head(c2.spectrum, c2.spectrum.front() - ag.eps), ag.eps,
                std::make_shared<SotoCertificate>(c2)};
    c.gamma = max(p1.list.front() - ag.eps, p2.list.front());
    c.parts.push_back(std::move(p1));
    c.parts.push_back(std::move(p2));
    return c;
}

}  // namespace sniep
