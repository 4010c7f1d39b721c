#include "support.hpp"

#include "sniep/errors.hpp"

#include <doctest.h>

using namespace sniep;
using namespace sniep::testing;

TEST_CASE("sequence validation") {
    CHECK(validate_sequence(golden_soules_spec().seq));
    CHECK(validate_sequence(SoulesSequence::from_partitions({{{0}}})));

    // the third level merges instead of splitting
    auto bad = SoulesSequence::from_partitions({{{0, 1, 2}}, {{0}, {1}, {2}}, {{0, 1}, {2}}});
    CHECK_FALSE(validate_sequence(bad));

    // splits with a wrong parent are refused
    CHECK_THROWS_AS(SoulesSequence::from_splits(3, {{{0, 1}, {0}, {1}}, {{0, 1, 2}, {0}, {1, 2}}}), InputError);

    auto seq = SoulesSequence::from_splits(3, {{{0, 1, 2}, {0, 1}, {2}}, {{0, 1}, {0}, {1}}});
    CHECK(validate_sequence(seq));
    CHECK(seq.partitions.back().size() == 3);
}

TEST_CASE("golden Soules matrix") {
    auto r = build_soules_matrix(golden_soules_spec());
    CHECK(r(2, 2) == doctest::Approx(std::sqrt(3.0) / 2));
    CHECK(r(0, 4) == doctest::Approx(1 / std::sqrt(2.0)));
    CHECK(r(3, 2) == doctest::Approx(-1 / (2 * std::sqrt(2.0))));
    CHECK(r.orth_error() <= 1e-12);

    auto real = soules_realize(golden_soules_spec(), golden_sigma());
    CHECK(max_abs_diff(real.a.rows(), golden_soules_matrix()) <= 1e-10);
    CHECK(soules_diag_exact(golden_soules_spec(), golden_sigma()) == std::vector<Rational>(5, Rational(0)));
}

TEST_CASE("two by two Soules matrix") {
    auto seq = SoulesSequence::from_partitions({{{0, 1}}, {{0}, {1}}});
    auto spec = SoulesSpec::from_squares(seq, {Rational(1, 2), Rational(1, 2)});
    const double h = 1 / std::sqrt(2.0);
    auto r = build_soules_matrix(spec);
    CHECK(r(0, 0) == doctest::Approx(h));
    CHECK(r(1, 1) == doctest::Approx(-h));
    CHECK(max_abs_diff(soules_realize(spec, Spectrum{6, -6}).a.rows(), {{0, 6}, {6, 0}}) <= 1e-12);
    CHECK(soules_diag_exact(spec, Spectrum{7, 5}) == std::vector<Rational>{6, 6});

    auto one = SoulesSpec::from_squares(SoulesSequence::from_partitions({{{0}}}), {Rational(1)});
    CHECK(build_soules_matrix(one)(0, 0) == 1);

    CHECK_THROWS_AS(SoulesSpec::from_squares(seq, {Rational(1, 2), Rational(1, 3)}), InputError);
}

TEST_CASE("random Soules specs") {
    Rng rng(17);
    for (int k = 0; k < 100; ++k) {
        std::size_t n = static_cast<std::size_t>(uniform(rng, 1, 7));
        auto spec = SoulesSpec::from_squares(random_sequence(rng, n), random_squares(rng, n));
        REQUIRE(validate_sequence(spec.seq));
        auto r = build_soules_matrix(spec);
        CHECK(r.orth_error() <= 1e-10);

        // sparsity follows the split sets
        for (std::size_t i = 1; i < n; ++i) {
            const auto& sp = spec.seq.splits[i - 1];
            for (std::size_t j = 0; j < n; ++j) {
                bool inside = std::count(sp.parent.begin(), sp.parent.end(), j) > 0;
                CHECK((std::abs(r(j, i)) > 1e-14) == inside);
                if (std::count(sp.star.begin(), sp.star.end(), j)) CHECK(r(j, i) > 0);
            }
        }

        std::vector<Rational> lam(n);
        for (auto& x : lam) x = grid(rng, -5, 5, 2);
        auto sig = Spectrum::from_unordered(lam);
        auto a = soules_realize(spec, sig).a;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < i; ++j) CHECK(a(i, j) >= -1e-10);
        auto exact = soules_diag_exact(spec, sig);
        for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(exact[i].to_double() - a(i, i)) <= 1e-9);

        for (auto& x : lam) x = grid(rng, 0, 5, 2);
        auto b = soules_realize(spec, Spectrum::from_unordered(lam)).a;
        CHECK(b.min_entry() >= -1e-10);

        // rank one: sigma = (1, 0, ..., 0) gives x x^T
        std::vector<Rational> e1(n, Rational(0));
        e1[0] = 1;
        auto rank1 = soules_realize(spec, Spectrum(e1)).a;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) CHECK(std::abs(rank1(i, j) - spec.x[i] * spec.x[j]) <= 1e-12);

        // constant spectrum gives s I
        std::vector<Rational> flat(n, Rational(3));
        CHECK(soules_diag_exact(spec, Spectrum(flat)) == flat);
    }
}
