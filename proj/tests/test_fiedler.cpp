#include "support.hpp"

#include "sniep/errors.hpp"
#include "sniep/fiedler.hpp"

#include <doctest.h>

using namespace sniep;
using namespace sniep::testing;

namespace {

// Inequalities written out directly over sorted lists.
bool necessary_oracle(const std::vector<Rational>& l, const std::vector<Rational>& a) {
    const std::size_t n = l.size();
    if (l[0] < a[0] || sum(l) != sum(a)) return false;
    for (std::size_t s = 1; s <= n; ++s)
        for (std::size_t k = s + 1; k <= n; ++k) {
            Rational lhs = l[k - 1], rhs = a[k - 2] + a[k - 1];
            for (std::size_t i = 1; i <= s; ++i) lhs += l[i - 1];
            for (std::size_t i = 1; i + 1 <= s; ++i) rhs += a[i - 1];
            if (lhs < rhs) return false;
        }
    return true;
}

bool sufficient_oracle(const std::vector<Rational>& l, const std::vector<Rational>& a) {
    const std::size_t n = l.size();
    Rational sl(0), sa(0);
    for (std::size_t k = 0; k < n; ++k) {
        sl += l[k];
        sa += a[k];
        if (k + 1 < n && sl < sa) return false;
    }
    if (sl != sa) return false;
    for (std::size_t k = 2; k + 1 <= n; ++k)
        if (l[k - 1] > a[k - 2]) return false;
    return true;
}

std::pair<Spectrum, DiagonalList> random_instance(Rng& rng, std::size_t n) {
    std::vector<Rational> a(n), l(n);
    for (auto& x : a) x = grid(rng, 0, 3, 2);
    for (std::size_t i = 1; i < n; ++i) l[i] = grid(rng, -3, 3, 2);
    // fix the trace so that the sum condition is not trivially false
    l[0] = sum(a) - (sum(l) - l[0]);
    Rational top = l[0];
    for (auto& x : l) top = max(top, x);
    if (top > l[0]) l[0] = top;
    return {Spectrum(l), DiagonalList(a)};
}

}  // namespace

TEST_CASE("necessary conditions") {
    CHECK(fiedler_necessary(golden_sigma(), zero_diag(5)).necessary_ok);
    CHECK(fiedler_necessary(Spectrum{1}, DiagonalList{1}).necessary_ok);
    auto v = fiedler_necessary(Spectrum{1, 1}, DiagonalList{2, 0});
    CHECK_FALSE(v.necessary_ok);
    CHECK_FALSE(v.first_violated.empty());
    CHECK_THROWS_AS(fiedler_necessary(Spectrum{1, 1}, DiagonalList{2}), InputError);
}

TEST_CASE("sufficient conditions") {
    CHECK_FALSE(fiedler_sufficient(golden_sigma(), zero_diag(5)).sufficient_ok);
    CHECK(fiedler_sufficient(Spectrum{2, 0}, DiagonalList{1, 1}).sufficient_ok);
    CHECK(fiedler_sufficient(Spectrum{3}, DiagonalList{3}).sufficient_ok);
}

TEST_CASE("conditions agree with a direct evaluation") {
    Rng rng(5);
    for (int k = 0; k < 500; ++k) {
        auto [s, a] = random_instance(rng, static_cast<std::size_t>(uniform(rng, 1, 8)));
        auto nec = fiedler_necessary(s, a);
        auto suf = fiedler_sufficient(s, a);
        CHECK(nec.necessary_ok == necessary_oracle(s.values(), a.sorted_desc()));
        CHECK(suf.sufficient_ok == sufficient_oracle(s.values(), a.sorted_desc()));
        if (suf.sufficient_ok) CHECK(nec.necessary_ok);
    }
}

TEST_CASE("two by two realiser") {
    auto m = realize_2x2(Spectrum{7, 5}, DiagonalList{6, 6});
    CHECK(max_abs_diff(m.rows(), {{6, 1}, {1, 6}}) <= 1e-12);
    CHECK(max_abs_diff(realize_2x2(Spectrum{6, -6}, DiagonalList{0, 0}).rows(), {{0, 6}, {6, 0}}) <= 1e-12);
    CHECK(max_abs_diff(realize_2x2(Spectrum{2, 2}, DiagonalList{2, 2}).rows(), {{2, 0}, {0, 2}}) == 0);
    CHECK_THROWS_AS(realize_2x2(Spectrum{1, 1}, DiagonalList{2, 0}), NotRealizable);

    Rng rng(8);
    for (int k = 0; k < 200; ++k) {
        Rational a1 = grid(rng, 0, 5, 3), a2 = grid(rng, 0, 5, 3);
        Rational l1 = max(a1, a2) + grid(rng, 0, 4, 3);
        DiagonalList d{a1, a2};
        Spectrum s{l1, a1 + a2 - l1};
        auto mat = realize_2x2(s, d);
        CHECK(verify_realization(mat, s, d).pass());
        CHECK(mat(0, 0) == a1.to_double());
    }
}

TEST_CASE("three by three test and split") {
    CHECK(check_n3(Spectrum{7, 5, -6}, DiagonalList{6, 0, 0}));
    CHECK_FALSE(check_n3(Spectrum{7, 5, -6}, DiagonalList{6, 6, 0}));  // trace 6 against 12
    CHECK(check_n3(Spectrum{6, -2, -4}, DiagonalList{0, 0, 0}));
    CHECK_FALSE(check_n3(Spectrum{1, 1, 1}, DiagonalList{3, 0, 0}));

    auto sp = split_n3(Spectrum{6, -2, -4}, DiagonalList{0, 0, 0});
    CHECK(sp.c == 4);
    CHECK(check_n2(sp.l1, sp.l2, sp.a1, sp.c));
    CHECK(check_n2(sp.c, sp.l3, sp.a2, sp.a3));

    auto sq = split_n3(Spectrum{7, 5, -6}, DiagonalList{6, 0, 0});
    CHECK(sq.c == 6);
    CHECK(check_n2(sq.l1, sq.l2, sq.a1, sq.c));
    CHECK(check_n2(sq.c, sq.l3, sq.a2, sq.a3));

    auto flat = split_n3(Spectrum{2, 2, 2}, DiagonalList{2, 2, 2});
    CHECK(flat.c == 2);

    CHECK_THROWS_AS(split_n3(Spectrum{1, 1, 1}, DiagonalList{3, 0, 0}), NotRealizable);
}

TEST_CASE("for three elements the test equals both Fiedler groups") {
    Rng rng(13);
    for (int k = 0; k < 1000; ++k) {
        auto [s, a] = random_instance(rng, 3);
        bool both = fiedler_necessary(s, a).necessary_ok && fiedler_sufficient(s, a).sufficient_ok;
        CHECK(check_n3(s, a) == both);
        if (check_n3(s, a)) {
            auto sp = split_n3(s, a);
            CHECK(check_n2(sp.l1, sp.l2, sp.a1, sp.c));
            CHECK(check_n2(sp.c, sp.l3, sp.a2, sp.a3));
        }
    }
}
