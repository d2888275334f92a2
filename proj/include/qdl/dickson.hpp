#pragma once

#include <map>

#include "qdl/matrix.hpp"

namespace qdl {

// ---------------------------------------------------------------------------
// Sign ledger.
//
// Conventions are pinned against the product-expansion oracle and frozen here;
// the exhaustive agreement suites in tests/ revalidate them over every
// enumerable field, including odd characteristic where they are visible.
//
//   * dickson_minor_sign(n, s) = (-1)^{n-s}: with column exponents
//     (q^0, ..., ^hat{q^s}, ..., q^{n-1}, q^n) in increasing order, the minor
//     ratio det/e equals (-1)^{n-s} c_{n,s}.
//   * kCompanionSign = -1: the last column of x^{-1} F(x) is
//     -(c_{n,0}, ..., c_{n,n-1}), from the root relation
//     x_k^{q^n} = -sum_{i<n} c_{n,i} x_k^{q^i}.
//   * c_{n,0} = (-1)^{q(n)} e^{q-1} with q(n) = (q^n-1)/(q-1): the scalars of
//     each projective direction contribute (prod F_q^*)^{q(n)}. The sign is
//     -1 exactly when q and n are both odd.
// ---------------------------------------------------------------------------

inline int dickson_minor_sign(uint32_t n, uint32_t s) { return ((n - s) % 2 == 0) ? 1 : -1; }
constexpr int kCompanionSign = -1;

inline Fq apply_sign(const FieldCtx& k, int sign, Fq a) { return sign == 1 ? a : k.neg(a); }

/// Moore matrix: entry (i,j) = x_i^{q^{j-1}}, 1 <= i,j <= n. Column j is the
/// entrywise Frobenius of column j-1.
inline MatFq moore_matrix(const FieldCtx& k, const std::vector<Fq>& x) {
    const uint32_t n = static_cast<uint32_t>(x.size());
    MatFq M(k, n);
    for (uint32_t i = 0; i < n; ++i) {
        Fq v = x[i];
        for (uint32_t j = 0; j < n; ++j) {
            M.at(i, j) = v;
            v = k.frob(v);
        }
    }
    return M;
}

/// e_n(x) = det(x_i^{q^{j-1}}); nonzero exactly when x_1..x_n are linearly
/// independent over F_q.
inline Fq moore_det(const FieldCtx& k, const std::vector<Fq>& x) {
    return det(moore_matrix(k, x));
}

/// An additive polynomial sum a_i X^{q^i} together with its ordinary dense
/// expansion (kept for verification and evaluation).
struct QPolynomial {
    const FieldCtx* k = nullptr;
    std::vector<Fq> ordinary;       // ordinary[d] = coefficient of X^d
    std::map<uint32_t, Fq> qcoeff;  // i -> coefficient of X^{q^i}

    Fq eval(Fq at) const {
        Fq acc = k->zero();
        for (size_t d = ordinary.size(); d-- > 0;) {
            acc = k->mul(acc, at);
            acc = k->add(acc, ordinary[d]);
        }
        return acc;
    }
};

struct DicksonVector {
    uint32_t n = 0;
    Fq e;                // Moore determinant e_n(x)
    std::vector<Fq> c;   // c_{n,0} .. c_{n,n-1}
};

/// Oracle path: expands prod_{lambda in F_q^n} (X + lambda.x) as an ordinary
/// polynomial and reads the Dickson values off the X^{q^i} slots. Verifies
/// that only q-power exponents survive and that the expansion is monic of
/// degree q^n.
inline QPolynomial dickson_product_poly(const FieldCtx& k, const std::vector<Fq>& x) {
    const uint32_t n = static_cast<uint32_t>(x.size());
    const auto& fq = k.subfield();
    const uint64_t q = fq.size();
    uint64_t deg = checked_pow_u64(q, n);
    if (deg + 1 > k.enum_bound())
        throw error(errc::degree_overflow, "product expansion degree over bound");

    QPolynomial P;
    P.k = &k;
    P.ordinary.assign(1, k.one()); // the constant polynomial 1
    std::vector<uint32_t> lambda(n, 0);
    while (true) {
        Fq root = k.zero();
        for (uint32_t i = 0; i < n; ++i) root = k.add(root, k.mul(fq[lambda[i]], x[i]));
        // multiply by (X + root)
        std::vector<Fq> next(P.ordinary.size() + 1, k.zero());
        for (size_t d = 0; d < P.ordinary.size(); ++d) {
            next[d + 1] = k.add(next[d + 1], P.ordinary[d]);
            next[d] = k.add(next[d], k.mul(root, P.ordinary[d]));
        }
        P.ordinary = std::move(next);
        uint32_t ci = 0;
        while (ci < n && ++lambda[ci] == q) lambda[ci++] = 0;
        if (ci == n) break;
    }

    std::vector<uint64_t> qpows;
    for (uint64_t pw = 1; pw <= deg; pw = checked_mul_u64(pw, q)) qpows.push_back(pw);
    for (uint64_t d = 0; d < P.ordinary.size(); ++d) {
        bool is_qpow = std::find(qpows.begin(), qpows.end(), d) != qpows.end();
        if (!is_qpow && P.ordinary[d].v != 0)
            throw error(errc::non_additive_expansion,
                        "nonzero coefficient at X^" + std::to_string(d));
    }
    if (P.ordinary.back().v != 1)
        throw error(errc::non_additive_expansion, "expansion not monic");
    for (uint32_t i = 0; i < qpows.size(); ++i) P.qcoeff[i] = P.ordinary[qpows[i]];
    return P;
}

inline DicksonVector dickson_from_product(const FieldCtx& k, const std::vector<Fq>& x) {
    QPolynomial P = dickson_product_poly(k, x);
    DicksonVector dv;
    dv.n = static_cast<uint32_t>(x.size());
    dv.e = moore_det(k, x);
    dv.c.resize(dv.n);
    for (uint32_t i = 0; i < dv.n; ++i) dv.c[i] = P.qcoeff.at(i);
    return dv;
}

/// Fast path: c_{n,s} as a ratio of Moore-type determinants, the minor with
/// column exponent q^s removed and q^n appended (sign ledger applied).
/// Requires e_n(x) != 0.
inline DicksonVector dickson_cofactor(const FieldCtx& k, const std::vector<Fq>& x) {
    const uint32_t n = static_cast<uint32_t>(x.size());
    DicksonVector dv;
    dv.n = n;
    dv.e = moore_det(k, x);
    if (dv.e.v == 0)
        throw error(errc::singular_moore, "Moore determinant vanishes; use the product path");
    Fq einv = k.inv(dv.e);
    dv.c.resize(n);
    for (uint32_t s = 0; s < n; ++s) {
        MatFq M(k, n);
        for (uint32_t i = 0; i < n; ++i) {
            Fq v = x[i];
            uint32_t col = 0;
            for (uint32_t j = 0; j <= n; ++j) { // exponents q^0 .. q^n, skipping q^s
                if (j != s) M.at(i, col++) = v;
                v = k.frob(v);
            }
        }
        dv.c[s] = apply_sign(k, dickson_minor_sign(n, s), k.mul(det(M), einv));
    }
    return dv;
}

/// Dickson values at a point: the minor ratio when e != 0, the product
/// expansion otherwise.
inline DicksonVector dickson_vector(const FieldCtx& k, const std::vector<Fq>& x) {
    if (moore_det(k, x).v != 0) return dickson_cofactor(k, x);
    return dickson_from_product(k, x);
}

} // namespace qdl
