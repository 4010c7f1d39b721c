#include "sniep/fiedler.hpp"

#include "sniep/errors.hpp"

#include <cmath>

namespace sniep {

namespace {

void check_lengths(const Spectrum& sigma, const DiagonalList& diag) {
    if (sigma.size() != diag.size())
        throw InputError("spectrum has " + std::to_string(sigma.size()) + " entries but diagonal has " +
                         std::to_string(diag.size()));
}

void note(std::string* why, std::string msg) {
    if (why) *why = std::move(msg);
}

}  // namespace

bool necessary_sorted(const std::vector<Rational>& lam, const std::vector<Rational>& a, std::string* why) {
    const std::size_t n = lam.size();
    if (lam[0] < a[0]) {
        note(why, "lambda_1 >= a_1 fails: " + lam[0].str() + " < " + a[0].str());
        return false;
    }
    if (sum(lam) != sum(a)) {
        note(why, "trace mismatch: sum(lambda) = " + sum(lam).str() + ", sum(a) = " + sum(a).str());
        return false;
    }
    // prefix sums, 1-based: L[s] = lambda_1 + ... + lambda_s
    std::vector<Rational> L(n + 1), A(n + 1);
    for (std::size_t i = 0; i < n; ++i) {
        L[i + 1] = L[i] + lam[i];
        A[i + 1] = A[i] + a[i];
    }
    for (std::size_t s = 1; s <= n; ++s)
        for (std::size_t k = s + 1; k <= n; ++k) {
            Rational lhs = L[s] + lam[k - 1];
            Rational rhs = A[s - 1] + a[k - 2] + a[k - 1];
            if (lhs < rhs) {
                note(why, "inequality (s=" + std::to_string(s) + ", k=" + std::to_string(k) + ") fails: " +
                              lhs.str() + " < " + rhs.str());
                return false;
            }
        }
    return true;
}

bool sufficient_sorted(const std::vector<Rational>& lam, const std::vector<Rational>& a, std::string* why) {
    const std::size_t n = lam.size();
    Rational L, A;
    for (std::size_t k = 1; k < n; ++k) {
        L += lam[k - 1];
        A += a[k - 1];
        if (L < A) {
            note(why, "partial sum k=" + std::to_string(k) + " fails: " + L.str() + " < " + A.str());
            return false;
        }
    }
    if (sum(lam) != sum(a)) {
        note(why, "trace mismatch: sum(lambda) = " + sum(lam).str() + ", sum(a) = " + sum(a).str());
        return false;
    }
    for (std::size_t k = 2; k + 1 <= n; ++k)
        if (lam[k - 1] > a[k - 2]) {
            note(why, "lambda_" + std::to_string(k) + " <= a_" + std::to_string(k - 1) + " fails: " +
                          lam[k - 1].str() + " > " + a[k - 2].str());
            return false;
        }
    return true;
}

FiedlerVerdict fiedler_necessary(const Spectrum& sigma, const DiagonalList& diag) {
    check_lengths(sigma, diag);
    auto lam = sorted_desc(sigma.values());
    auto a = diag.sorted_desc();
    FiedlerVerdict v;
    v.necessary_ok = necessary_sorted(lam, a, &v.first_violated);
    v.sufficient_ok = sufficient_sorted(lam, a);
    return v;
}

FiedlerVerdict fiedler_sufficient(const Spectrum& sigma, const DiagonalList& diag) {
    check_lengths(sigma, diag);
    auto lam = sorted_desc(sigma.values());
    auto a = diag.sorted_desc();
    FiedlerVerdict v;
    v.sufficient_ok = sufficient_sorted(lam, a, &v.first_violated);
    v.necessary_ok = necessary_sorted(lam, a);
    return v;
}

bool check_n2(const Rational& l1, const Rational& l2, const Rational& a1, const Rational& a2, std::string* why) {
    if (a1.sign() < 0 || a2.sign() < 0) {
        note(why, "negative diagonal entry");
        return false;
    }
    if (l1 < max(a1, a2)) {
        note(why, "lambda_1 >= max(a_1, a_2) fails: " + l1.str() + " < " + max(a1, a2).str());
        return false;
    }
    if (l1 + l2 != a1 + a2) {
        note(why, "trace mismatch: " + (l1 + l2).str() + " != " + (a1 + a2).str());
        return false;
    }
    return true;
}

SymMatrix realize_2x2(const Rational& l1, const Rational& l2, const Rational& a1, const Rational& a2) {
    std::string why;
    if (!check_n2(l1, l2, a1, a2, &why)) throw NotRealizable(why);
    double w = std::sqrt(((l1 - a1) * (l1 - a2)).to_double());
    SymMatrix m(2);
    m.set(0, 0, a1.to_double());
    m.set(1, 1, a2.to_double());
    m.set(1, 0, w);
    return m;
}

SymMatrix realize_2x2(const Spectrum& sigma, const DiagonalList& diag) {
    if (sigma.size() != 2 || diag.size() != 2) throw InputError("realize_2x2 needs lists of length 2");
    return realize_2x2(sigma[0], sigma[1], diag[0], diag[1]);
}

bool check_n3(const Spectrum& sigma, const DiagonalList& diag) {
    if (sigma.size() != 3 || diag.size() != 3) throw InputError("check_n3 needs lists of length 3");
    auto l = sorted_desc(sigma.values());
    auto a = diag.sorted_desc();
    return l[1] <= a[0] && a[0] <= l[0] && l[2] <= a[2] && sum(l) == sum(a);
}

N3Split split_n3(const Spectrum& sigma, const DiagonalList& diag) {
    if (!check_n3(sigma, diag)) throw NotRealizable("n=3 conditions fail for (" + join(sigma.values()) +
                                                    ") with diagonal (" + join(diag.values()) + ")");
    auto l = sorted_desc(sigma.values());
    auto a = diag.sorted_desc();
    N3Split s{l[0], l[1], l[2], a[0], a[1], a[2], l[0] + l[1] - a[0]};
    return s;
}

}  // namespace sniep
