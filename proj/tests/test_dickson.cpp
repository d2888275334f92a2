#include "doctest.h"

#include "qdl/dickson.hpp"

using namespace qdl;

namespace {

// independent hand expansions for n = 2, q = 2:
//   X (X+x1) (X+x2) (X+x1+x2) = X^4 + (x1^2 + x1 x2 + x2^2) X^2 + (x1^2 x2 + x1 x2^2) X
Fq c21_hand(const FieldCtx& k, Fq x1, Fq x2) {
    return k.add(k.add(k.mul(x1, x1), k.mul(x1, x2)), k.mul(x2, x2));
}
Fq c20_hand(const FieldCtx& k, Fq x1, Fq x2) {
    return k.add(k.mul(k.mul(x1, x1), x2), k.mul(x1, k.mul(x2, x2)));
}

bool fq_independent(const FieldCtx& k, const std::vector<Fq>& x) {
    // lambda-scan: only the zero form annihilates an independent tuple
    const auto& fq = k.subfield();
    std::vector<uint32_t> lambda(x.size(), 0);
    while (true) {
        uint32_t ci = 0;
        while (ci < x.size() && ++lambda[ci] == fq.size()) lambda[ci++] = 0;
        if (ci == x.size()) break;
        Fq acc = k.zero();
        for (size_t i = 0; i < x.size(); ++i) acc = k.add(acc, k.mul(fq[lambda[i]], x[i]));
        if (acc.v == 0) return false;
    }
    return true;
}

} // namespace

TEST_SUITE("dickson") {

TEST_CASE("moore matrix shape and Frobenius recurrence") {
    FieldCtx f4(FieldSpec{2, 1, 2});
    Fq w = f4.from_coeffs({0, 1});
    Fq w2 = f4.mul(w, w);

    auto M = moore_matrix(f4, {f4.one(), f4.zero()});
    CHECK(M.at(0, 0) == f4.one());
    CHECK(M.at(0, 1) == f4.one());
    CHECK(M.at(1, 0) == f4.zero());
    CHECK(M.at(1, 1) == f4.zero());

    auto N = moore_matrix(f4, {f4.one(), w});
    CHECK(N.at(1, 0) == w);
    CHECK(N.at(1, 1) == w2);
    // column j is the entrywise Frobenius of column j-1
    FieldCtx f8(FieldSpec{2, 1, 3});
    auto P = moore_matrix(f8, {Fq{3}, Fq{5}, Fq{7}});
    for (uint32_t i = 0; i < 3; ++i)
        for (uint32_t j = 1; j < 3; ++j) CHECK(P.at(i, j) == f8.frob(P.at(i, j - 1)));
}

TEST_CASE("moore determinant frozen values") {
    FieldCtx f4(FieldSpec{2, 1, 2});
    Fq w = f4.from_coeffs({0, 1});
    CHECK(moore_det(f4, {f4.one(), f4.zero()}) == f4.zero()); // dependent
    CHECK(moore_det(f4, {f4.one(), w}) == f4.one());          // w^2 - w = 1

    // all coordinates in F_q give e = 0 (equal rows after F)
    for (Fq a : f4.subfield())
        for (Fq b : f4.subfield()) CHECK(moore_det(f4, {a, b}) == f4.zero());
}

TEST_CASE("moore criterion: e != 0 iff coordinates independent over F_q") {
    for (FieldSpec fs : {FieldSpec{2, 1, 2}, FieldSpec{2, 1, 3}, FieldSpec{3, 1, 2},
                         FieldSpec{2, 2, 2}}) {
        FieldCtx k(fs);
        for (uint32_t n = 2; n <= 3; ++n) {
            if (checked_pow_u64(k.size(), n) > (1u << 16)) continue;
            std::vector<Fq> x(n, Fq{0});
            while (true) {
                CHECK((moore_det(k, x).v != 0) == fq_independent(k, x));
                uint32_t ci = 0;
                while (ci < n && ++x[ci].v == k.size()) x[ci++].v = 0;
                if (ci == n) break;
            }
        }
    }
}

TEST_CASE("product expansion matches the hand formula for n=2, q=2") {
    for (FieldSpec fs : {FieldSpec{2, 1, 2}, FieldSpec{2, 1, 3}}) {
        FieldCtx k(fs);
        for (Fq x1 : k.elements())
            for (Fq x2 : k.elements()) {
                auto P = dickson_product_poly(k, {x1, x2});
                CHECK(P.qcoeff.at(2) == k.one());
                CHECK(P.qcoeff.at(1) == c21_hand(k, x1, x2));
                CHECK(P.qcoeff.at(0) == c20_hand(k, x1, x2));
            }
    }
}

TEST_CASE("q-polynomials are additive as functions") {
    FieldCtx k(FieldSpec{2, 1, 4});
    SplitMix64 rng(77);
    auto P = dickson_product_poly(k, {Fq{5}, Fq{9}});
    for (int t = 0; t < 200; ++t) {
        Fq u{static_cast<uint32_t>(rng.below(k.size()))};
        Fq v{static_cast<uint32_t>(rng.below(k.size()))};
        CHECK(P.eval(k.add(u, v)) == k.add(P.eval(u), P.eval(v)));
    }
}

TEST_CASE("c_{n,0} = e^{q-1} on every point (n = 2)") {
    for (FieldSpec fs : {FieldSpec{2, 1, 2}, FieldSpec{3, 1, 2}}) {
        FieldCtx k(fs);
        for (Fq x1 : k.elements())
            for (Fq x2 : k.elements()) {
                auto dv = dickson_from_product(k, {x1, x2});
                CHECK(dv.c[0] == k.pow(dv.e, k.q() - 1));
            }
    }
}

TEST_CASE("general law: c_{n,0} = (-1)^{q(n)} e^{q-1}") {
    // the product of all nonzero vectors of an n-space is (-1)^{q(n)} times
    // the (q-1)-th power of the Moore determinant: over F_q the scalars
    // contribute (prod of F_q^*)^{q(n)} = (-1)^{q(n)}. The sign is -1 exactly
    // when both q and n are odd.
    struct Case {
        FieldSpec fs;
        uint32_t n;
    };
    for (Case c : {Case{{3, 1, 1}, 1}, Case{{3, 1, 2}, 1}, Case{{3, 1, 2}, 2},
                   Case{{3, 1, 3}, 3}, Case{{5, 1, 1}, 1}, Case{{2, 1, 3}, 3}}) {
        FieldCtx k(c.fs);
        CAPTURE(c.fs.to_string());
        CAPTURE(c.n);
        uint64_t qn = (checked_pow_u64(k.q(), c.n) - 1) / (k.q() - 1);
        int sign = (qn % 2 == 0) ? 1 : -1;
        SplitMix64 rng(2718);
        for (int t = 0; t < 200; ++t) {
            std::vector<Fq> x(c.n);
            for (auto& e : x) e = Fq{static_cast<uint32_t>(rng.below(k.size()))};
            auto dv = dickson_from_product(k, x);
            CHECK(dv.c[0] == apply_sign(k, sign, k.pow(dv.e, k.q() - 1)));
        }
    }
}

TEST_CASE("frozen value: c_{2,1}(1, w) = 0 over F_4") {
    FieldCtx f4(FieldSpec{2, 1, 2});
    Fq w = f4.from_coeffs({0, 1});
    auto dv = dickson_cofactor(f4, {f4.one(), w});
    CHECK(dv.c[1] == f4.zero()); // 1 + w + w^2 = 0
    CHECK(dv.c[0] == f4.one());
    CHECK(dv.e == f4.one());
}

TEST_CASE("cofactor path agrees with the product oracle wherever defined") {
    // the suite that pins the minor sign table
    std::vector<std::pair<FieldSpec, uint32_t>> cases = {
        {{2, 1, 2}, 2}, {{2, 1, 3}, 2}, {{2, 1, 4}, 2}, {{3, 1, 2}, 2}, {{3, 1, 3}, 2},
        {{2, 2, 2}, 2}, {{2, 1, 3}, 3}, {{2, 1, 2}, 3}, {{3, 1, 3}, 3},
    };
    for (auto [fs, n] : cases) {
        FieldCtx k(fs);
        CAPTURE(fs.to_string());
        CAPTURE(n);
        uint64_t checked = 0;
        std::vector<Fq> x(n, Fq{0});
        while (true) {
            if (moore_det(k, x).v != 0) {
                auto fast = dickson_cofactor(k, x);
                auto oracle = dickson_from_product(k, x);
                REQUIRE(fast.c == oracle.c);
                ++checked;
            }
            uint32_t ci = 0;
            while (ci < n && ++x[ci].v == k.size()) x[ci++].v = 0;
            if (ci == n) break;
        }
        // number of independent tuples is known in closed form
        uint64_t expect = 1;
        for (uint32_t j = 0; j < n; ++j) expect *= k.size() - checked_pow_u64(k.q(), j);
        CHECK(checked == expect);
    }
    FieldCtx f4(FieldSpec{2, 1, 2});
    CHECK_THROWS_AS(dickson_cofactor(f4, {f4.one(), f4.one()}), error);
}

TEST_CASE("degenerate points fall back to the product path") {
    FieldCtx f4(FieldSpec{2, 1, 2});
    auto dv = dickson_vector(f4, {f4.one(), f4.one()});
    CHECK(dv.e == f4.zero());
    CHECK(dv.c[0] == f4.zero());
}

TEST_CASE("scaling degrees: e and c are homogeneous of the stated degrees") {
    FieldCtx k(FieldSpec{2, 1, 4});
    FieldCtx k3(FieldSpec{3, 1, 2});
    SplitMix64 rng(1234);
    for (int t = 0; t < 100; ++t) {
        for (const FieldCtx* kp : {&k, &k3}) {
            const FieldCtx& kk = *kp;
            uint32_t n = 2;
            std::vector<Fq> x(n);
            for (auto& c : x) c = Fq{static_cast<uint32_t>(rng.below(kk.size()))};
            Fq s{static_cast<uint32_t>(1 + rng.below(kk.size() - 1))};
            std::vector<Fq> sx(n);
            for (uint32_t i = 0; i < n; ++i) sx[i] = kk.mul(s, x[i]);
            uint64_t qn = checked_pow_u64(kk.q(), n);
            // e(sx) = s^{q(n)} e(x)
            CHECK(moore_det(kk, sx) ==
                  kk.mul(kk.pow(s, (qn - 1) / (kk.q() - 1)), moore_det(kk, x)));
            auto dx = dickson_from_product(kk, x);
            auto dsx = dickson_from_product(kk, sx);
            for (uint32_t i = 0; i < n; ++i) {
                uint64_t deg = qn - checked_pow_u64(kk.q(), i);
                CHECK(dsx.c[i] == kk.mul(kk.pow(s, deg), dx.c[i]));
            }
        }
    }
}

TEST_CASE("GL-equivariance of e and invariance of the c_i") {
    // exhaustive over the group, sampled over points
    struct Case {
        FieldSpec fs;
        uint32_t n;
    };
    for (Case c : {Case{{2, 1, 3}, 2}, Case{{3, 1, 2}, 2}, Case{{2, 1, 2}, 3}}) {
        FieldCtx k(c.fs);
        auto group = enumerate_gl_subfield(k, c.n);
        SplitMix64 rng(99 + c.n);
        for (int t = 0; t < 60; ++t) {
            std::vector<Fq> x(c.n);
            for (auto& e : x) e = Fq{static_cast<uint32_t>(rng.below(k.size()))};
            auto dx = dickson_vector(k, x);
            for (const auto& g : group) {
                auto gx = mat_vec(g, x);
                CHECK(moore_det(k, gx) == k.mul(det(g), moore_det(k, x)));
                auto dgx = dickson_vector(k, gx);
                for (uint32_t i = 1; i < c.n; ++i) CHECK(dgx.c[i] == dx.c[i]);
                // e^{q-1} is fully GL-invariant, e itself SL-invariant
                CHECK(k.pow(dgx.e, k.q() - 1) == k.pow(dx.e, k.q() - 1));
                if (det(g).v == 1) CHECK(dgx.e == dx.e);
            }
        }
    }
}

} // TEST_SUITE
