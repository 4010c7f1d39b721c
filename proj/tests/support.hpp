#pragma once

// Shared generators and oracles for the unit tests and the acceptance run.

#include "sniep/ctrace.hpp"
#include "sniep/hcalc.hpp"
#include "sniep/numkit.hpp"
#include "sniep/soules.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <random>
#include <vector>

namespace sniep::testing {

using Rng = std::mt19937_64;

inline long uniform(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

// k/den for k uniform in [lo*den, hi*den]
inline Rational grid(Rng& rng, long lo, long hi, long den) { return Rational(uniform(rng, lo * den, hi * den), den); }

// Uniform grid value in [lo, hi] for rational bounds.
inline Rational between(Rng& rng, const Rational& lo, const Rational& hi, long steps = 8) {
    if (hi <= lo) return lo;
    return lo + (hi - lo) * Rational(uniform(rng, 0, steps), steps);
}

inline std::vector<Rational> sorted(std::vector<Rational> v) {
    std::sort(v.begin(), v.end(), std::greater<>());
    return v;
}

inline bool same_multiset(std::vector<Rational> a, std::vector<Rational> b) { return sorted(a) == sorted(b); }

// A certificate with Perron value c.  When forced is set (forced <= c, and
// forced == c if n == 1) some diagonal entry equals it.  Built directly from
// the tree definition, so it does not depend on any transformer.
inline HCertificate random_cert(Rng& rng, std::size_t n, const Rational& c,
                                const std::optional<Rational>& forced = std::nullopt) {
    if (n == 1) return HCertificate::leaf1(c, c);
    if (n == 2) {
        Rational a1 = forced ? *forced : between(rng, Rational(0), c);
        Rational a2 = between(rng, Rational(0), c);
        if (uniform(rng, 0, 1)) std::swap(a1, a2);
        return HCertificate::leaf2(c, a1 + a2 - c, a1, a2);
    }
    const std::size_t k = static_cast<std::size_t>(uniform(rng, 2, static_cast<long>(n) - 1));
    const std::size_t l = n - k + 1;
    Rational cb = forced ? between(rng, *forced, c) : between(rng, Rational(0), c);
    HCertificate bottom = random_cert(rng, l, cb, forced);
    HCertificate top = random_cert(rng, k, c, cb);
    auto d = top.diagonal();
    std::vector<std::size_t> slots;
    for (std::size_t i = 0; i < d.size(); ++i)
        if (d[i] == cb) slots.push_back(i);
    std::size_t slot = slots[static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(slots.size()) - 1))];
    return HCertificate::node(top, bottom, cb, slot);
}

inline HCertificate random_cert(Rng& rng, std::size_t n) { return random_cert(rng, n, grid(rng, 0, 8, 2)); }

// Legal trace built by random moves; every union respects the Perron order.
inline CTrace random_trace(Rng& rng, std::size_t n0) {
    CTrace t;
    t.n0 = n0;
    std::vector<std::vector<Rational>> lists(n0, std::vector<Rational>{Rational(0)});
    auto pick = [&](std::size_t m) { return static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(m) - 1)); };
    while (lists.size() > 1 || uniform(rng, 0, 2) > 0) {
        const long op = uniform(rng, 0, 3);
        if (op == 0 && lists.size() > 1) {
            std::size_t i = pick(lists.size()), j = pick(lists.size() - 1);
            if (j >= i) ++j;
            if (lists[i].front() < lists[j].front()) std::swap(i, j);
            t.steps.push_back(CStep::join(i, j));
            auto merged = lists[i];
            merged.insert(merged.end(), lists[j].begin(), lists[j].end());
            lists[std::min(i, j)] = merged;
            lists.erase(lists.begin() + static_cast<long>(std::max(i, j)));
        } else if (op == 1) {
            std::size_t i = pick(lists.size());
            Rational e = grid(rng, 0, 3, 2);
            t.steps.push_back(CStep::perron(i, e));
            lists[i].front() += e;
        } else {
            std::size_t i = pick(lists.size());
            if (lists[i].size() < 2) continue;
            std::size_t tgt = 1 + pick(lists[i].size() - 1);
            Rational e = grid(rng, 0, 3, 2);
            int sign = uniform(rng, 0, 1) ? 1 : -1;
            t.steps.push_back(CStep::guo(i, tgt, e, sign));
            lists[i].front() += e;
            lists[i][tgt] += sign > 0 ? e : -e;
        }
        if (t.steps.size() > 40 && lists.size() == 1) break;
    }
    return t;
}

// Random Soules sequence: each level splits a random set of size >= 2 at a random cut.
inline SoulesSequence random_sequence(Rng& rng, std::size_t n) {
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    Partition cur{IndexSet(perm.begin(), perm.end())};
    std::vector<Partition> parts{canonical(cur)};
    while (cur.size() < n) {
        std::vector<std::size_t> big;
        for (std::size_t i = 0; i < cur.size(); ++i)
            if (cur[i].size() >= 2) big.push_back(i);
        std::size_t which = big[static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(big.size()) - 1))];
        IndexSet s = cur[which];
        std::size_t cut = static_cast<std::size_t>(uniform(rng, 1, static_cast<long>(s.size()) - 1));
        cur[which] = IndexSet(s.begin(), s.begin() + static_cast<long>(cut));
        cur.push_back(IndexSet(s.begin() + static_cast<long>(cut), s.end()));
        Partition c;
        for (auto set : cur) {
            std::sort(set.begin(), set.end());
            c.push_back(set);
        }
        parts.push_back(canonical(c));
    }
    return SoulesSequence::from_partitions(parts);
}

// Positive squares with small denominators summing to 1.
inline std::vector<Rational> random_squares(Rng& rng, std::size_t n) {
    std::vector<Rational> w(n);
    Rational total(0);
    for (auto& x : w) {
        x = Rational(uniform(rng, 1, 9));
        total += x;
    }
    for (auto& x : w) x /= total;
    return w;
}

inline double max_abs_diff(const std::vector<std::vector<double>>& a, const std::vector<std::vector<double>>& b) {
    double m = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a[i].size(); ++j) m = std::max(m, std::abs(a[i][j] - b[i][j]));
    return m;
}

// The worked Soules example: x^2 = (1/4, 1/4, 1/8, 3/16, 3/16) and its partition chain.
inline SoulesSpec golden_soules_spec() {
    std::vector<Partition> parts{
        {{0, 1, 2, 3, 4}},
        {{0, 1}, {2, 3, 4}},
        {{0, 1}, {2}, {3, 4}},
        {{0, 1}, {2}, {3}, {4}},
        {{0}, {1}, {2}, {3}, {4}},
    };
    return SoulesSpec::from_squares(SoulesSequence::from_partitions(parts),
                                    {Rational(1, 4), Rational(1, 4), Rational(1, 8), Rational(3, 16), Rational(3, 16)});
}

inline std::vector<std::vector<double>> golden_soules_matrix() {
    const double r6 = std::sqrt(6.0), a = 1 / (2 * std::sqrt(2.0)), b = std::sqrt(3.0) / 4;
    return {{0, 6, a, b, b}, {6, 0, a, b, b}, {a, a, 0, r6, r6}, {b, b, r6, 0, 4}, {b, b, r6, 4, 0}};
}

// The decomposition tree for (7,5,-2,-4,-6) over a zero diagonal: (7;5) over (6,6)
// with (6;-6) over (0,0) glued at one 6 and (6;-2,-4) over (0,0,0) at the other.
inline HCertificate golden_cert() {
    auto left = HCertificate::node(HCertificate::leaf2(7, 5, 6, 6), HCertificate::leaf2(6, -6, 0, 0), 6, 0);
    auto right = HCertificate::node(HCertificate::leaf2(6, -2, 0, 4), HCertificate::leaf2(4, -4, 0, 0), 4, 1);
    return HCertificate::node(left, right, 6, 0);
}

inline Spectrum golden_sigma() { return Spectrum{7, 5, -2, -4, -6}; }
inline DiagonalList zero_diag(std::size_t n) { return DiagonalList(std::vector<Rational>(n, Rational(0))); }

// The seven-stage trace from five zero lists to (7,5,-2,-4,-6).
inline CTrace golden_trace() {
    CTrace t;
    t.n0 = 5;
    t.steps = {CStep::join(0, 1),     CStep::join(1, 2),         CStep::guo(0, 1, 6, -1),
               CStep::guo(1, 1, 4, -1), CStep::join(1, 2),       CStep::guo(1, 2, 2, -1),
               CStep::join(0, 1),     CStep::guo(0, 2, 1, -1)};
    return t;
}

}  // namespace sniep::testing
