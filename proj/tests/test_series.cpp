#include "doctest.h"

#include "qdl/series.hpp"

using namespace qdl;

namespace {

PoincareSeries closed_form(uint32_t n, uint64_t q, uint64_t ell, uint32_t D) {
    return presentation_series(quillen_presentation(n, q, ell), D);
}

} // namespace

TEST_SUITE("series") {

TEST_CASE("series arithmetic round-trips") {
    auto s = PoincareSeries::one(20);
    auto t = series_div_1m(s, 4); // 1/(1-t^4)
    for (uint32_t i = 0; i <= 20; ++i) CHECK(t.a[i] == (i % 4 == 0 ? 1 : 0));
    auto u = series_mul_1p(t, 3);
    CHECK(series_div_1p(u, 3) == t);
    auto v = series_mul(t, u);
    CHECK(v.a[0] == 1);
}

TEST_CASE("presentations: generator lists") {
    auto P = quillen_presentation(2, 2, 3); // r = 2
    CHECK(P.r == 2);
    REQUIRE(P.gens.size() == 2);
    CHECK(P.gens[0].name == "c2");
    CHECK(P.gens[0].degree == 4);
    CHECK(P.gens[1].name == "e2");
    CHECK(P.gens[1].degree == 3);

    auto trivial = quillen_presentation(1, 2, 7); // r = 3 > n
    CHECK(trivial.r == 3);
    CHECK(trivial.gens.empty());

    auto full = quillen_presentation(3, 4, 3); // r = 1
    CHECK(full.r == 1);
    auto polys = full.polynomial_gens();
    auto exts = full.exterior_gens();
    REQUIRE(polys.size() == 3);
    REQUIRE(exts.size() == 3);
    for (uint32_t j = 0; j < 3; ++j) {
        CHECK(polys[j].degree == 2 * (j + 1));
        CHECK(exts[j].degree == 2 * (j + 1) - 1);
    }

    CHECK_THROWS_AS(quillen_presentation(2, 4, 2), error); // ell == p
    CHECK_THROWS_AS(quillen_presentation(2, 4, 6), error); // ell not prime
}

TEST_CASE("SL presentations") {
    // r >= 2: identical to the GL one
    auto gl = quillen_presentation(2, 2, 3);
    auto sl = sl_presentation(2, 2, 3);
    CHECK(gl.gens.size() == sl.gens.size());
    for (size_t i = 0; i < gl.gens.size(); ++i) CHECK(gl.gens[i].name == sl.gens[i].name);

    // r = 1: the degree-(2,1) pair drops
    auto sl1 = sl_presentation(2, 4, 3);
    REQUIRE(sl1.gens.size() == 2);
    CHECK(sl1.gens[0].name == "c2");
    CHECK(sl1.gens[1].name == "e2");

    CHECK(sl_presentation(1, 4, 3).gens.empty()); // r = 1, n = 1: nothing left
}

TEST_CASE("motivic presentation carries tau and weights") {
    auto P = motivic_presentation(2, 2, 3);
    CHECK(P.motivic);
    REQUIRE(P.gens.size() == 3);
    CHECK(P.gens[0].name == "tau");
    CHECK(P.gens[0].degree == 0);
    CHECK(P.gens[0].weight == 1);
    CHECK(P.gens[0].kind == GenKind::Polynomial);
    for (const auto& g : P.gens) {
        if (g.name == "c2") {
            CHECK(g.degree == 4);
            CHECK(g.weight == 2); // weight = half the degree
        }
        if (g.name == "e2") {
            CHECK(g.degree == 3);
            CHECK(g.weight == 2);
        }
    }
    // first-grading image: same series as the plain presentation
    CHECK(presentation_series(P, 30) == presentation_series(quillen_presentation(2, 2, 3), 30));
}

TEST_CASE("frozen closed forms") {
    // (n=2, q=2, ell=3): (1 + t^3) / (1 - t^4)
    auto s = closed_form(2, 2, 3, 40);
    PoincareSeries expect = series_div_1m(series_mul_1p(PoincareSeries::one(40), 3), 4);
    CHECK(s == expect);

    // (n=3, q=4, ell=3): prod_j (1 + t^{2j-1}) / (1 - t^{2j})
    auto s3 = closed_form(3, 4, 3, 40);
    PoincareSeries e3 = PoincareSeries::one(40);
    for (uint32_t j = 1; j <= 3; ++j) e3 = series_div_1m(series_mul_1p(e3, 2 * j - 1), 2 * j);
    CHECK(s3 == e3);
}

TEST_CASE("inductive series equals the closed form") {
    // frozen small case: trivial ring for n < r
    auto triv = inductive_series(1, 2, 3, 10);
    for (uint32_t i = 0; i <= 10; ++i) CHECK(triv.a[i] == (i == 0 ? 1 : 0));

    CHECK_THROWS_AS(inductive_series(6, 2, 3, 8), error); // truncation below 2n

    for (auto [q, ell] : std::vector<std::pair<uint64_t, uint64_t>>{{2, 3}, {2, 7}, {4, 3}, {3, 13}})
        for (uint32_t n = 1; n <= 6; ++n) {
            CAPTURE(q);
            CAPTURE(ell);
            CAPTURE(n);
            CHECK(inductive_series(n, q, ell, 40) == closed_form(n, q, ell, 40));
        }

    // a couple more off the acceptance grid
    CHECK(inductive_series(5, 3, 11, 40) == closed_form(5, 3, 11, 40));
    CHECK(inductive_series(4, 5, 3, 40) == closed_form(4, 5, 3, 40));
}

TEST_CASE("series coefficients are nonnegative") {
    for (auto [q, ell] : std::vector<std::pair<uint64_t, uint64_t>>{{2, 3}, {4, 3}, {3, 13}})
        for (uint32_t n = 1; n <= 6; ++n)
            for (int64_t c : inductive_series(n, q, ell, 40).a) CHECK(c >= 0);
}

TEST_CASE("rank ledger frozen values") {
    auto r22 = dickson_rank_check(2, 2);
    CHECK(r22.value_at_1 == 6);
    CHECK(r22.expected == 6);
    CHECK(r22.pass);
    // the polynomial itself: (1+t)(1+t+t^2) for q=2, n=2
    CHECK(r22.poly == std::vector<uint64_t>{1, 2, 2, 1});

    CHECK(dickson_rank_check(2, 3).value_at_1 == 24);
    CHECK(dickson_rank_check(3, 2).value_at_1 == 168);
}

TEST_CASE("rank ledger across the acceptance grid") {
    for (uint32_t n = 1; n <= 5; ++n)
        for (uint64_t q : {2ull, 3ull, 4ull}) {
            auto rl = dickson_rank_check(n, q);
            CAPTURE(n);
            CAPTURE(q);
            CHECK(rl.pass);
            CHECK(rl.expected == sl_order_series(n, q));
        }
}

TEST_CASE("root identity: frozen cases") {
    auto r23 = root_identity_check(2, 3);
    CHECK(r23.r == 2);
    CHECK(r23.pass); // (X - t)(X - 2t) = X^2 - t^2 mod 3

    auto r43 = root_identity_check(4, 3);
    CHECK(r43.r == 1); // X - t, trivially

    auto r27 = root_identity_check(2, 7);
    CHECK(r27.r == 3);
    CHECK(r27.pass); // (X-t)(X-2t)(X-4t) = X^3 - t^3 mod 7
}

TEST_CASE("root identity over the full grid") {
    for (uint64_t q : {2ull, 3ull, 4ull, 5ull, 7ull, 8ull, 9ull})
        for (uint64_t ell : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull}) {
            auto [p, s] = prime_power_split(q);
            if (ell == p) continue;
            CAPTURE(q);
            CAPTURE(ell);
            CHECK(root_identity_check(q, ell).pass);
        }
}

} // TEST_SUITE
