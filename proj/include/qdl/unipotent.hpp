#pragma once

#include <sstream>

#include "qdl/dickson.hpp"

namespace qdl {

/// Root element x_{i,j}(a) = 1 + a e_{i,j}, 1 <= i < j <= n.
struct RootElt {
    uint32_t i = 0, j = 0; // 1-based
    Fq a;
};

inline MatFq root_matrix(const FieldCtx& k, uint32_t n, const RootElt& r) {
    if (!(1 <= r.i && r.i < r.j && r.j <= n))
        throw error(errc::config_error, "root element indices out of range");
    MatFq M = MatFq::identity(k, n);
    M.at(r.i - 1, r.j - 1) = r.a;
    return M;
}

inline bool is_unitriangular(const MatFq& M) {
    for (uint32_t i = 0; i < M.n; ++i)
        for (uint32_t j = 0; j <= i; ++j)
            if (M.at(i, j).v != (i == j ? 1u : 0u)) return false;
    return true;
}

/// Membership in U* (all unitriangular matrices).
inline bool in_u_star(const MatFq& M) { return is_unitriangular(M); }

/// Membership in InU* = U* with trivial first row.
inline bool in_inu_star(const MatFq& M) {
    if (!is_unitriangular(M)) return false;
    for (uint32_t j = 1; j < M.n; ++j)
        if (M.at(0, j).v != 0) return false;
    return true;
}

/// Twisted action rho(u) v = ad(w^{-1})(u) . v . F(u)^{-1} of InU* on U*,
/// where w is the Coxeter permutation matrix and F the entrywise q-power.
/// The map u -> rho(u) is a homomorphism: rho(u1) rho(u2) = rho(u1 u2);
/// see the property tests.
inline MatFq rho(const MatFq& u, const MatFq& v) {
    if (!in_inu_star(u)) throw error(errc::membership_violation, "rho: u not in InU*");
    if (!in_u_star(v)) throw error(errc::membership_violation, "rho: v not in U*");
    const FieldCtx& k = *u.k;
    MatFq W = coxeter_matrix(k, u.n);
    MatFq Winv = transpose(W); // permutation matrix: inverse = transpose
    MatFq conj = mat_mul(mat_mul(Winv, u), W);
    return mat_mul(mat_mul(conj, v), inverse(mat_frob(u)));
}

/// Unique coefficients of v = prod x_{i,j}(b_{i,j}) taken in the row-major
/// root order (i,j) < (i',j') iff i < i' or (i = i', j < j'). Computed by
/// greedy peeling of minimal roots; zero coefficients are omitted.
inline std::vector<RootElt> ordered_decompose(const MatFq& v) {
    if (!is_unitriangular(v)) throw error(errc::not_unitriangular, "decompose: not unitriangular");
    const FieldCtx& k = *v.k;
    MatFq cur = v;
    std::vector<RootElt> out;
    for (uint32_t i = 1; i <= v.n; ++i)
        for (uint32_t j = i + 1; j <= v.n; ++j) {
            Fq b = cur.at(i - 1, j - 1);
            if (b.v == 0) continue;
            out.push_back(RootElt{i, j, b});
            cur = mat_mul(root_matrix(k, v.n, RootElt{i, j, k.neg(b)}), cur);
        }
    if (!(cur == MatFq::identity(k, v.n)))
        throw error(errc::not_unitriangular, "decompose: residue not identity");
    return out;
}

inline MatFq reconstruct(const FieldCtx& k, uint32_t n, const std::vector<RootElt>& roots) {
    MatFq M = MatFq::identity(k, n);
    for (const auto& r : roots) M = mat_mul(M, root_matrix(k, n, r));
    return M;
}

struct NormalFormResult {
    std::vector<Fq> d;  // last-column entries d_1..d_{n-1}
    MatFq transform;    // accumulated u in InU* with rho(u) v = normal form
    MatFq reduced;      // the normal form itself
    uint32_t steps = 0;
};

/// Elimination to the last-column normal form: repeatedly find the minimal
/// root (i0,j0) with nonzero coefficient and j0 < n, and apply
/// rho(x_{i0+1,j0+1}(-b)). The minimal bad root strictly increases, so the
/// loop ends within the number of roots with j < n.
inline NormalFormResult normal_form(const MatFq& v) {
    if (!in_u_star(v)) throw error(errc::membership_violation, "normal_form: not in U*");
    const FieldCtx& k = *v.k;
    const uint32_t n = v.n;
    NormalFormResult res;
    res.transform = MatFq::identity(k, n);
    MatFq cur = v;
    const uint32_t cap = n * n;
    std::pair<uint32_t, uint32_t> last_bad{0, 0};
    while (true) {
        auto roots = ordered_decompose(cur);
        const RootElt* bad = nullptr;
        for (const auto& r : roots)
            if (r.j < n) {
                bad = &r;
                break;
            }
        if (!bad) break;
        std::pair<uint32_t, uint32_t> pos{bad->i, bad->j};
        if (!(last_bad < pos))
            throw error(errc::non_termination, "normal_form: minimal bad root did not increase");
        last_bad = pos;
        if (!(bad->i + 1 < bad->j + 1 && bad->j + 1 <= n))
            throw error(errc::non_termination, "normal_form: eliminator index out of range");
        MatFq u = root_matrix(k, n, RootElt{bad->i + 1, bad->j + 1, k.neg(bad->a)});
        cur = rho(u, cur);
        res.transform = mat_mul(u, res.transform);
        if (++res.steps > cap)
            throw error(errc::non_termination, "normal_form: step cap exceeded");
    }
    // last-column shape
    for (uint32_t i = 0; i < n; ++i)
        for (uint32_t j = i + 1; j < n; ++j)
            if (j != n - 1 && cur.at(i, j).v != 0)
                throw error(errc::non_termination, "normal_form: residue not last-column");
    res.d.resize(n - 1);
    for (uint32_t i = 0; i + 1 < n; ++i) res.d[i] = cur.at(i, n - 1);
    res.reduced = cur;
    if (!(rho(res.transform, v) == cur))
        throw error(errc::non_termination, "normal_form: transform does not reproduce result");
    return res;
}

inline bool orbit_equiv(const MatFq& v1, const MatFq& v2) {
    return normal_form(v1).d == normal_form(v2).d;
}

namespace detail {
inline std::string mat_to_string(const MatFq& M) {
    std::ostringstream os;
    os << "[";
    for (uint32_t i = 0; i < M.n; ++i) {
        os << (i ? ";" : "");
        for (uint32_t j = 0; j < M.n; ++j) os << (j ? "," : "") << M.at(i, j).v;
    }
    os << "]";
    return os.str();
}
} // namespace detail

struct CompanionResult {
    MatFq f;          // w^{-1} x^{-1} F(x)
    MatFq companion;  // x^{-1} F(x)
    DicksonVector dv; // Dickson values extracted from the last column
};

/// f(x) = w^{-1} M(x)^{-1} F(M(x)) for the Moore matrix M(x). Asserts that
/// M(x)^{-1} F(M(x)) is the companion-shaped matrix with subdiagonal 1s and
/// last column built from the Dickson values (sign ledger applied), and that
/// those values agree with the dickson module. Exactly constant on
/// GL_n(F_q)-orbits since F fixes the group.
inline CompanionResult dl_companion(const FieldCtx& k, const std::vector<Fq>& x) {
    const uint32_t n = static_cast<uint32_t>(x.size());
    MatFq M = moore_matrix(k, x);
    Fq e = det(M);
    if (e.v == 0) throw error(errc::singular_moore, "dl_companion: e(x) = 0");
    MatFq C = mat_mul(inverse(M), mat_frob(M));

    DicksonVector dv = dickson_cofactor(k, x);
    MatFq expect(k, n);
    for (uint32_t t = 0; t + 1 < n; ++t) expect.at(t + 1, t) = k.one();
    for (uint32_t s = 0; s < n; ++s) expect.at(s, n - 1) = apply_sign(k, kCompanionSign, dv.c[s]);
    if (!(C == expect))
        throw error(errc::companion_mismatch, "companion mismatch: got " +
                                                  detail::mat_to_string(C) + " expected " +
                                                  detail::mat_to_string(expect));

    CompanionResult res;
    res.companion = C;
    res.dv = dv;
    res.f = mat_mul(transpose(coxeter_matrix(k, n)), C);
    return res;
}

} // namespace qdl
