#include "support.hpp"

#include "sniep/errors.hpp"
#include "sniep/soto.hpp"

#include <doctest.h>

using namespace sniep;
using namespace sniep::testing;

TEST_CASE("worked trace replays") {
    auto r = validate_trace(golden_trace());
    REQUIRE(r.ok());
    CHECK(*r.final_list == golden_sigma());

    CTrace start;
    start.n0 = 1;
    auto s = validate_trace(start);
    REQUIRE(s.ok());
    CHECK(*s.final_list == Spectrum{0});
}

TEST_CASE("illegal steps are caught") {
    CTrace t;
    t.n0 = 2;
    t.steps = {CStep::perron(1, 1), CStep::join(0, 1)};  // head 0 below head 1
    auto r = validate_trace(t);
    CHECK_FALSE(r.ok());
    CHECK(r.failed_step == 1);

    CTrace g;
    g.n0 = 1;
    g.steps = {CStep::guo(0, 1, 1, -1)};  // a one-element list has no target
    CHECK_FALSE(validate_trace(g).ok());

    CTrace open;
    open.n0 = 2;
    CHECK_FALSE(validate_trace(open).ok());

    CHECK_THROWS_AS(CStep::perron(0, -1), InputError);
    CHECK_THROWS_AS(CStep::guo(0, 0, 1, 1), InputError);
    CHECK_THROWS_AS(CStep::guo(0, 1, 1, 0), InputError);
    CHECK_THROWS_AS(c_to_h(t), InputError);
}

TEST_CASE("compiling the worked trace") {
    auto h = c_to_h(golden_trace());
    CHECK(validate_certificate(h));
    CHECK(h.spectrum() == golden_sigma());
    auto a = materialize(h);
    CHECK(verify_realization(a, golden_sigma(), DiagonalList(h.diagonal())).pass());

    CTrace start;
    start.n0 = 1;
    auto leaf = c_to_h(start);
    CHECK(leaf.kind() == HCertificate::Kind::Leaf1);
    CHECK(leaf.perron() == 0);
}

TEST_CASE("random legal traces compile to sound certificates") {
    Rng rng(53);
    for (int k = 0; k < 150; ++k) {
        auto t = random_trace(rng, static_cast<std::size_t>(uniform(rng, 1, 6)));
        auto r = validate_trace(t);
        REQUIRE(r.ok());
        auto again = validate_trace(t);
        CHECK(*again.final_list == *r.final_list);
        auto h = c_to_h(t);
        CHECK(validate_certificate(h));
        CHECK(h.spectrum() == *r.final_list);
        auto rep = verify_realization(materialize(h), *r.final_list, DiagonalList(h.diagonal()));
        CHECK_MESSAGE(rep.pass(), rep.summary());

        // around the cycle: C -> H -> S_p -> C
        auto back = sp_to_c(h_to_sp(h));
        auto rb = validate_trace(back);
        REQUIRE(rb.ok());
        CHECK(*rb.final_list == *r.final_list);
    }
}

TEST_CASE("S_p certificates become traces") {
    auto c2 = *sp_check(golden_sigma(), 2).cert;
    auto t = sp_to_c(c2);
    auto r = validate_trace(t);
    REQUIRE(r.ok());
    CHECK(*r.final_list == golden_sigma());

    auto c1 = *sp_check(Spectrum{1, -1}, 1).cert;
    auto t1 = sp_to_c(c1);
    CHECK(t1.n0 == 2);
    REQUIRE(validate_trace(t1).ok());
    CHECK(*validate_trace(t1).final_list == Spectrum{1, -1});

    std::vector<Rational> v{25, 21, 18, 16};
    v.insert(v.end(), 8, Rational(-10));
    auto c3 = *sp_check(Spectrum(v), 3).cert;
    auto t3 = sp_to_c(c3);
    auto r3 = validate_trace(t3);
    REQUIRE(r3.ok());
    CHECK(*r3.final_list == Spectrum(v));
    CHECK(validate_certificate(c_to_h(t3)));
}
