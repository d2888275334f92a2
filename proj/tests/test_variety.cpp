#include "doctest.h"

#include "qdl/variety.hpp"

using namespace qdl;

TEST_SUITE("variety") {

TEST_CASE("no rational points over the base field: Q and Qprime") {
    for (auto [p, n] : std::vector<std::pair<uint32_t, uint32_t>>{{2, 2}, {3, 2}, {2, 3}, {3, 3}}) {
        FieldCtx k(FieldSpec{p, 1, 1});
        CAPTURE(p);
        CAPTURE(n);
        CHECK(enumerate_variety(k, VarietyKind::Q, n).empty());
        CHECK(enumerate_variety(k, VarietyKind::Qprime, n).empty());
    }
}

TEST_CASE("frozen counts over F_4, n=2") {
    FieldCtx f4(FieldSpec{2, 1, 2});
    Fq w = f4.from_coeffs({0, 1});
    auto q_pts = enumerate_variety(f4, VarietyKind::Q, 2);
    // contains (1, w) since e(1, w) = 1
    bool found = false;
    for (const auto& x : q_pts) found = found || (x[0] == f4.one() && x[1] == w);
    CHECK(found);
    auto x1_pts = enumerate_variety(f4, VarietyKind::X1, 2);
    CHECK(x1_pts.size() == (4 - 1) * (4 - 2)); // Moore criterion count
}

TEST_CASE("containments Q <= Qprime <= X1 pointwise") {
    for (FieldSpec fs : {FieldSpec{2, 1, 2}, FieldSpec{2, 1, 3}, FieldSpec{3, 1, 2},
                         FieldSpec{2, 2, 2}, FieldSpec{3, 1, 3}}) {
        FieldCtx k(fs);
        for (uint32_t n = 2; n <= 3; ++n) {
            if (checked_pow_u64(k.size(), n) > 100000) continue;
            for_each_point(k, n, [&](const std::vector<Fq>& x) {
                bool on_q = on_variety(k, VarietyKind::Q, x);
                bool on_qp = on_variety(k, VarietyKind::Qprime, x);
                bool on_x1 = on_variety(k, VarietyKind::X1, x);
                if (on_q) CHECK(on_qp);
                if (on_qp) CHECK(on_x1);
            });
        }
    }
}

TEST_CASE("sign variant: same set in characteristic 2 and for odd n") {
    FieldCtx f4(FieldSpec{2, 1, 2});
    CHECK(enumerate_variety(f4, VarietyKind::Qprime, 2, true) ==
          enumerate_variety(f4, VarietyKind::Qprime, 2, false));
    FieldCtx f9(FieldSpec{3, 1, 2});
    CHECK(enumerate_variety(f9, VarietyKind::Qprime, 3, true) ==
          enumerate_variety(f9, VarietyKind::Qprime, 3, false));
}

TEST_CASE("sign variant diverges for even n in odd characteristic") {
    FieldCtx f9(FieldSpec{3, 1, 2});
    auto unsigned_pts = enumerate_variety(f9, VarietyKind::Qprime, 2, false);
    auto signed_pts = enumerate_variety(f9, VarietyKind::Qprime, 2, true);
    // over F_9 every e-value on X1 squares to -1, so the unsigned locus is
    // empty and the signed one is all of X1
    CHECK(unsigned_pts.empty());
    CHECK(signed_pts.size() == (9 - 1) * (9 - 3));
}

TEST_CASE("free action: (Q, SL) and (Qprime, GL), closure and scalars") {
    for (uint32_t m = 1; m <= 4; ++m) {
        FieldCtx k(FieldSpec{2, 1, m});
        auto repQ = check_action(k, VarietyKind::Q, 2, GroupKind::SL);
        CAPTURE(m);
        CHECK(repQ.closed_under_action);
        CHECK(repQ.violations.empty());
        CHECK(repQ.scalar_action_commutes);
        auto repQp = check_action(k, VarietyKind::Qprime, 2, GroupKind::GL);
        CHECK(repQp.closed_under_action);
        CHECK(repQp.violations.empty());
        for (uint64_t s : repQp.orbit_sizes) CHECK(repQp.group_order % s == 0);
    }
    // n = 3 over F_4: the locus is empty (no independent triple), still fine
    FieldCtx f4(FieldSpec{2, 1, 2});
    auto rep3 = check_action(f4, VarietyKind::Q, 3, GroupKind::SL);
    CHECK(rep3.point_count == 0);
    CHECK(rep3.violations.empty());
}

TEST_CASE("X1 is closed under GL but freeness is not claimed") {
    FieldCtx f9(FieldSpec{3, 1, 2});
    auto rep = check_action(f9, VarietyKind::X1, 2, GroupKind::GL);
    CHECK(rep.closed_under_action);
    CHECK(rep.point_count == 48);
    uint64_t total = 0;
    for (uint64_t s : rep.orbit_sizes) {
        CHECK(rep.group_order % s == 0);
        total += s;
    }
    CHECK(total == rep.point_count);
}

TEST_CASE("quotient map: group-invariant, rejects off-locus points") {
    FieldCtx f16(FieldSpec{2, 1, 4});
    auto pts = enumerate_variety(f16, VarietyKind::Qprime, 2);
    auto group = enumerate_gl_subfield(f16, 2);
    for (const auto& x : pts) {
        auto c = quotient_map(f16, x);
        for (const auto& g : group) CHECK(quotient_map(f16, mat_vec(g, x)) == c);
    }
    CHECK_THROWS_AS(quotient_map(f16, {f16.one(), f16.one()}), error);
}

TEST_CASE("scaling cover of X1 by Q x G_m") {
    // base F_4: every X1 point already has e = 1, so the ladder closes at 1
    FieldCtx f4(FieldSpec{2, 1, 2});
    auto rep = scaling_cover(f4, 2, 6);
    CHECK(rep.exponent == 3);
    CHECK(rep.max_ladder == 1);
    CHECK(rep.fiber_multiplicity == 3);
    CHECK(rep.fiber_is_single_orbit);
    CHECK(rep.pass);
    for (const auto& e : rep.entries) CHECK(e.ladder == 1);

    // base F_8: the cube map is bijective on F_8^*, so every point is covered
    // at step 1, but the fiber only splits where mu_3 lives (step 2)
    FieldCtx f8(FieldSpec{2, 1, 3});
    auto rep8 = scaling_cover(f8, 2, 6);
    CHECK(rep8.max_ladder == 1);
    CHECK(rep8.splitting_step == 2);
    CHECK(rep8.fiber_multiplicity == 3);
    CHECK(rep8.pass);

    // odd characteristic: q(2) = 4 over F_9
    FieldCtx f9(FieldSpec{3, 1, 2});
    auto rep9 = scaling_cover(f9, 2, 6);
    CHECK(rep9.exponent == 4);
    CHECK(rep9.fiber_multiplicity == 4);
    CHECK(rep9.pass);
}

TEST_CASE("torsor: scalar stability of Qprime and the G_m cover") {
    FieldCtx f4(FieldSpec{2, 1, 2});
    auto rep = torsor_check(f4, 2, 6);
    CHECK(rep.mu_order == 3); // mu_3 = F_4^*
    CHECK(rep.mu_stable);
    CHECK(rep.cover.exponent == 3);
    CHECK(rep.pass);

    FieldCtx f16(FieldSpec{2, 1, 4});
    auto rep16 = torsor_check(f16, 2, 6);
    CHECK(rep16.mu_order == 3);
    CHECK(rep16.mu_stable);
    CHECK(rep16.pass);
}

TEST_CASE("fiber census: targets over F_2") {
    FieldCtx f2(FieldSpec{2, 1, 1});
    auto fc0 = fiber_census(f2, 2, {f2.zero()}, 6);
    CHECK(fc0.count == 6); // |GL_2(F_2)|
    CHECK(fc0.pass);
    auto fc1 = fiber_census(f2, 2, {f2.one()}, 6);
    CHECK(fc1.count == 6);
    CHECK(fc1.pass);
}

TEST_CASE("fiber census: targets over F_4") {
    FieldCtx f4(FieldSpec{2, 1, 2});
    for (Fq c : f4.elements()) {
        auto fc = fiber_census(f4, 2, {c}, 6);
        CAPTURE(c.v);
        CHECK(fc.count == 6);
        CHECK(fc.pass);
    }
}

TEST_CASE("ladder exhaustion raises") {
    FieldCtx f2(FieldSpec{2, 1, 1});
    CHECK_THROWS_AS(fiber_census(f2, 2, {f2.zero()}, 1), error);
}

} // TEST_SUITE
