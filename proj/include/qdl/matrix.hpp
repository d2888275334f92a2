#pragma once

#include <functional>
#include <numeric>

#include "qdl/field.hpp"

namespace qdl {

/// Square matrix over one FieldCtx, row-major. Value type; all operations
/// are pure.
struct MatFq {
    const FieldCtx* k = nullptr;
    uint32_t n = 0;
    std::vector<Fq> a;

    MatFq() = default;
    MatFq(const FieldCtx& ctx, uint32_t dim) : k(&ctx), n(dim), a(size_t(dim) * dim, Fq{0}) {}

    Fq at(uint32_t i, uint32_t j) const { return a[size_t(i) * n + j]; }
    Fq& at(uint32_t i, uint32_t j) { return a[size_t(i) * n + j]; }

    static MatFq identity(const FieldCtx& ctx, uint32_t dim) {
        MatFq M(ctx, dim);
        for (uint32_t i = 0; i < dim; ++i) M.at(i, i) = ctx.one();
        return M;
    }

    friend bool operator==(const MatFq& A, const MatFq& B) {
        return A.k == B.k && A.n == B.n && A.a == B.a;
    }
};

inline MatFq mat_mul(const MatFq& A, const MatFq& B) {
    const FieldCtx& k = *A.k;
    MatFq C(k, A.n);
    for (uint32_t i = 0; i < A.n; ++i)
        for (uint32_t l = 0; l < A.n; ++l) {
            Fq s = A.at(i, l);
            if (s.v == 0) continue;
            for (uint32_t j = 0; j < A.n; ++j)
                C.at(i, j) = k.add(C.at(i, j), k.mul(s, B.at(l, j)));
        }
    return C;
}

inline std::vector<Fq> mat_vec(const MatFq& A, const std::vector<Fq>& x) {
    const FieldCtx& k = *A.k;
    std::vector<Fq> y(A.n, Fq{0});
    for (uint32_t i = 0; i < A.n; ++i)
        for (uint32_t j = 0; j < A.n; ++j)
            y[i] = k.add(y[i], k.mul(A.at(i, j), x[j]));
    return y;
}

/// Entrywise q-power Frobenius.
inline MatFq mat_frob(const MatFq& A) {
    MatFq B = A;
    for (auto& e : B.a) e = A.k->frob(e);
    return B;
}

inline MatFq transpose(const MatFq& A) {
    MatFq B(*A.k, A.n);
    for (uint32_t i = 0; i < A.n; ++i)
        for (uint32_t j = 0; j < A.n; ++j) B.at(j, i) = A.at(i, j);
    return B;
}

/// Determinant by fraction-free Gaussian elimination (exact over the field).
inline Fq det(const MatFq& M) {
    const FieldCtx& k = *M.k;
    MatFq A = M;
    Fq d = k.one();
    for (uint32_t c = 0; c < A.n; ++c) {
        uint32_t piv = c;
        while (piv < A.n && A.at(piv, c).v == 0) ++piv;
        if (piv == A.n) return k.zero();
        if (piv != c) {
            for (uint32_t j = 0; j < A.n; ++j) std::swap(A.at(piv, j), A.at(c, j));
            d = k.neg(d);
        }
        d = k.mul(d, A.at(c, c));
        Fq pinv = k.inv(A.at(c, c));
        for (uint32_t r = c + 1; r < A.n; ++r) {
            Fq f = k.mul(A.at(r, c), pinv);
            if (f.v == 0) continue;
            for (uint32_t j = c; j < A.n; ++j)
                A.at(r, j) = k.sub(A.at(r, j), k.mul(f, A.at(c, j)));
        }
    }
    return d;
}

/// Determinant by recursive cofactor expansion; the independent route used
/// to cross-check elimination.
inline Fq det_cofactor(const MatFq& M) {
    const FieldCtx& k = *M.k;
    if (M.n == 1) return M.at(0, 0);
    Fq sum = k.zero();
    for (uint32_t j = 0; j < M.n; ++j) {
        if (M.at(0, j).v == 0) continue;
        MatFq minor(*M.k, M.n - 1);
        for (uint32_t r = 1; r < M.n; ++r) {
            uint32_t cc = 0;
            for (uint32_t c = 0; c < M.n; ++c) {
                if (c == j) continue;
                minor.at(r - 1, cc++) = M.at(r, c);
            }
        }
        Fq term = k.mul(M.at(0, j), det_cofactor(minor));
        sum = (j % 2 == 0) ? k.add(sum, term) : k.sub(sum, term);
    }
    return sum;
}

inline uint32_t mat_rank(const MatFq& M) {
    const FieldCtx& k = *M.k;
    MatFq A = M;
    uint32_t rank = 0;
    for (uint32_t c = 0; c < A.n && rank < A.n; ++c) {
        uint32_t piv = rank;
        while (piv < A.n && A.at(piv, c).v == 0) ++piv;
        if (piv == A.n) continue;
        for (uint32_t j = 0; j < A.n; ++j) std::swap(A.at(piv, j), A.at(rank, j));
        Fq pinv = k.inv(A.at(rank, c));
        for (uint32_t r = rank + 1; r < A.n; ++r) {
            Fq f = k.mul(A.at(r, c), pinv);
            if (f.v == 0) continue;
            for (uint32_t j = c; j < A.n; ++j)
                A.at(r, j) = k.sub(A.at(r, j), k.mul(f, A.at(rank, j)));
        }
        ++rank;
    }
    return rank;
}

namespace detail {

inline MatFq inverse_gauss(const MatFq& M) {
    const FieldCtx& k = *M.k;
    MatFq A = M, I = MatFq::identity(k, M.n);
    for (uint32_t c = 0; c < A.n; ++c) {
        uint32_t piv = c;
        while (piv < A.n && A.at(piv, c).v == 0) ++piv;
        if (piv == A.n) throw error(errc::singular_matrix, "singular matrix");
        if (piv != c)
            for (uint32_t j = 0; j < A.n; ++j) {
                std::swap(A.at(piv, j), A.at(c, j));
                std::swap(I.at(piv, j), I.at(c, j));
            }
        Fq pinv = k.inv(A.at(c, c));
        for (uint32_t j = 0; j < A.n; ++j) {
            A.at(c, j) = k.mul(A.at(c, j), pinv);
            I.at(c, j) = k.mul(I.at(c, j), pinv);
        }
        for (uint32_t r = 0; r < A.n; ++r) {
            if (r == c || A.at(r, c).v == 0) continue;
            Fq f = A.at(r, c);
            for (uint32_t j = 0; j < A.n; ++j) {
                A.at(r, j) = k.sub(A.at(r, j), k.mul(f, A.at(c, j)));
                I.at(r, j) = k.sub(I.at(r, j), k.mul(f, I.at(c, j)));
            }
        }
    }
    return I;
}

inline MatFq inverse_adjugate(const MatFq& M) {
    const FieldCtx& k = *M.k;
    Fq d = det_cofactor(M);
    if (d.v == 0) throw error(errc::singular_matrix, "singular matrix");
    Fq dinv = k.inv(d);
    MatFq adj(k, M.n);
    if (M.n == 1) {
        adj.at(0, 0) = dinv;
        return adj;
    }
    for (uint32_t i = 0; i < M.n; ++i)
        for (uint32_t j = 0; j < M.n; ++j) {
            MatFq minor(k, M.n - 1);
            uint32_t rr = 0;
            for (uint32_t r = 0; r < M.n; ++r) {
                if (r == j) continue;
                uint32_t cc = 0;
                for (uint32_t c = 0; c < M.n; ++c) {
                    if (c == i) continue;
                    minor.at(rr, cc++) = M.at(r, c);
                }
                ++rr;
            }
            Fq cof = det_cofactor(minor);
            if ((i + j) % 2) cof = k.neg(cof);
            adj.at(i, j) = k.mul(cof, dinv);
        }
    return adj;
}

} // namespace detail

/// Inverse computed by both elimination and the adjugate/cofactor route,
/// with the two results asserted equal before returning.
inline MatFq inverse(const MatFq& M) {
    MatFq g = detail::inverse_gauss(M);
    MatFq c = detail::inverse_adjugate(M);
    if (!(g == c)) throw error(errc::singular_matrix, "inverse route mismatch");
    return g;
}

/// Lang map L(g) = g^{-1} F(g). Constant on left cosets of the F-fixed
/// subgroup: L(gamma g) = L(g) whenever F(gamma) = gamma.
inline MatFq lang_map(const MatFq& g) { return mat_mul(inverse(g), mat_frob(g)); }

/// Permutation matrix of the n-cycle (1,...,n): 1 in the (1,n) slot and on
/// the subdiagonal. Maps basis vector e_i to e_{i+1 mod n}; its determinant
/// is (-1)^{n-1}.
inline MatFq coxeter_matrix(const FieldCtx& k, uint32_t n) {
    MatFq W(k, n);
    W.at(0, n - 1) = k.one();
    for (uint32_t i = 1; i < n; ++i) W.at(i, i - 1) = k.one();
    return W;
}

/// |GL_n(F_q)| = prod_{i<n} (q^n - q^i).
inline uint64_t gl_order(uint32_t n, uint64_t q) {
    uint64_t qn = checked_pow_u64(q, n);
    uint64_t r = 1;
    uint64_t qi = 1;
    for (uint32_t i = 0; i < n; ++i) {
        r = checked_mul_u64(r, qn - qi);
        qi = checked_mul_u64(qi, q);
    }
    return r;
}

inline uint64_t sl_order(uint32_t n, uint64_t q) { return gl_order(n, q) / (q - 1); }

/// Row-by-row enumeration of invertible matrices with entries drawn from
/// `entries`, pruning rows that fall in the span of the previous ones.
/// Deterministic order: rows ordered by entry codes, last coordinate fastest.
inline void for_each_invertible(const FieldCtx& k, uint32_t n, const std::vector<Fq>& entries,
                                const std::function<void(const MatFq&)>& fn,
                                uint64_t bound = 1000000) {
    uint64_t expect = gl_order(n, entries.size());
    if (expect > bound)
        throw error(errc::order_overflow,
                    "group order " + std::to_string(expect) + " exceeds bound " + std::to_string(bound));
    MatFq M(k, n);
    uint64_t rows = checked_pow_u64(entries.size(), n);
    std::function<void(uint32_t)> rec = [&](uint32_t r) {
        if (r == n) {
            fn(M);
            return;
        }
        for (uint64_t code = 0; code < rows; ++code) {
            uint64_t c = code;
            for (uint32_t j = n; j-- > 0;) {
                M.at(r, j) = entries[c % entries.size()];
                c /= entries.size();
            }
            MatFq top(k, n);
            for (uint32_t i = 0; i <= r; ++i)
                for (uint32_t j = 0; j < n; ++j) top.at(i, j) = M.at(i, j);
            if (mat_rank(top) == r + 1) rec(r + 1);
        }
    };
    rec(0);
}

/// All of GL_n over the full field of the context.
inline std::vector<MatFq> enumerate_gl(const FieldCtx& k, uint32_t n, uint64_t bound = 1000000) {
    std::vector<MatFq> out;
    for_each_invertible(k, n, k.elements(), [&](const MatFq& M) { out.push_back(M); }, bound);
    return out;
}

/// The subgroup GL_n(F_q) inside a larger context: invertible matrices whose
/// entries lie in the F-fixed subfield.
inline std::vector<MatFq> enumerate_gl_subfield(const FieldCtx& k, uint32_t n,
                                                uint64_t bound = 1000000) {
    std::vector<MatFq> out;
    for_each_invertible(k, n, k.subfield(), [&](const MatFq& M) { out.push_back(M); }, bound);
    return out;
}

inline std::vector<MatFq> enumerate_sl_subfield(const FieldCtx& k, uint32_t n,
                                                uint64_t bound = 1000000) {
    std::vector<MatFq> out;
    for_each_invertible(k, n, k.subfield(),
                        [&](const MatFq& M) {
                            if (det(M).v == 1) out.push_back(M);
                        },
                        bound);
    return out;
}

/// Permutation of {1..n} given by disjoint cycles; unlisted points are fixed.
struct PermWord {
    uint32_t n = 0;
    std::vector<std::vector<uint32_t>> cycles;

    static PermWord from_cycles(uint32_t n, std::vector<std::vector<uint32_t>> cs) {
        PermWord w;
        w.n = n;
        std::vector<bool> seen(n + 1, false);
        for (auto& c : cs) {
            for (uint32_t v : c) {
                if (v < 1 || v > n || seen[v])
                    throw error(errc::config_error, "cycles not disjoint on 1..n");
                seen[v] = true;
            }
        }
        w.cycles = std::move(cs);
        return w;
    }

    static PermWord full_cycle(uint32_t n) {
        std::vector<uint32_t> c(n);
        std::iota(c.begin(), c.end(), 1);
        return from_cycles(n, {c});
    }

    uint32_t image(uint32_t i) const {
        for (const auto& c : cycles)
            for (size_t t = 0; t < c.size(); ++t)
                if (c[t] == i) return c[(t + 1) % c.size()];
        return i;
    }

    /// Cycle type including implicit fixed points, descending.
    std::vector<uint32_t> cycle_type() const {
        std::vector<uint32_t> type;
        std::vector<bool> seen(n + 1, false);
        for (const auto& c : cycles) {
            type.push_back(static_cast<uint32_t>(c.size()));
            for (uint32_t v : c) seen[v] = true;
        }
        for (uint32_t i = 1; i <= n; ++i)
            if (!seen[i]) type.push_back(1);
        std::sort(type.rbegin(), type.rend());
        return type;
    }
};

inline MatFq perm_matrix(const FieldCtx& k, const PermWord& w) {
    MatFq P(k, w.n);
    for (uint32_t i = 1; i <= w.n; ++i) P.at(w.image(i) - 1, i - 1) = k.one();
    return P;
}

enum class TorusVariant { GL, SL };

/// Fixed points of ad(w)F on the diagonal torus, enumerated inside
/// F_{q^lcm}. Each cycle of length r contributes a free coordinate in
/// F_{q^r}^*, so |T(w)^F| = prod (q^{r_j}-1); the SL variant keeps the
/// determinant-1 kernel, of order prod(q^{r_j}-1)/(q-1).
struct TorusFixedReport {
    std::vector<uint32_t> cycle_lengths;
    uint64_t order = 0;          // enumerated
    uint64_t predicted = 0;      // closed form
    uint64_t brute_count = 0;    // direct scan of the fixed-point equation
    std::vector<std::vector<Fq>> generators;
    bool pass = false;
};

inline TorusFixedReport torus_fixed(uint32_t p, uint32_t s, const PermWord& w, TorusVariant variant,
                                    uint64_t scan_bound = uint64_t(1) << 22) {
    TorusFixedReport rep;
    rep.cycle_lengths = w.cycle_type();
    uint32_t L = 1;
    for (uint32_t r : rep.cycle_lengths) L = std::lcm(L, r);
    FieldCtx k(FieldSpec{p, s, L});
    const uint64_t q = k.q();

    // cycles with fixed points materialized
    std::vector<std::vector<uint32_t>> cycles = w.cycles;
    {
        std::vector<bool> seen(w.n + 1, false);
        for (const auto& c : cycles)
            for (uint32_t v : c) seen[v] = true;
        for (uint32_t i = 1; i <= w.n; ++i)
            if (!seen[i]) cycles.push_back({i});
    }

    rep.predicted = 1;
    for (const auto& c : cycles)
        rep.predicted = checked_mul_u64(rep.predicted, checked_pow_u64(q, c.size()) - 1);
    if (variant == TorusVariant::SL) rep.predicted /= (q - 1);

    // free coordinates: nonzero elements of the degree-r subfield per cycle
    std::vector<std::vector<Fq>> choice(cycles.size());
    for (size_t ci = 0; ci < cycles.size(); ++ci) {
        uint32_t r = static_cast<uint32_t>(cycles[ci].size());
        for (uint64_t a = 1; a < k.size(); ++a) {
            Fq x{static_cast<uint32_t>(a)};
            if (k.frob_iter(x, r) == x) choice[ci].push_back(x);
        }
    }

    std::vector<std::vector<Fq>> fixed;
    std::vector<uint32_t> idx(cycles.size(), 0);
    while (true) {
        std::vector<Fq> t(w.n, k.one());
        for (size_t ci = 0; ci < cycles.size(); ++ci) {
            Fq x = choice[ci][idx[ci]];
            for (size_t off = 0; off < cycles[ci].size(); ++off) {
                t[cycles[ci][off] - 1] = x;
                x = k.frob(x);
            }
        }
        Fq d = k.one();
        for (Fq e : t) d = k.mul(d, e);
        if (variant == TorusVariant::GL || d.v == 1) fixed.push_back(t);
        size_t ci = 0;
        while (ci < cycles.size() && ++idx[ci] == choice[ci].size()) idx[ci++] = 0;
        if (ci == cycles.size()) break;
    }
    rep.order = fixed.size();

    // brute force: scan all nonzero diagonal tuples for t_{w(i)} = t_i^q
    uint64_t tuples = 1;
    bool scannable = true;
    for (uint32_t i = 0; i < w.n && scannable; ++i) {
        if (__builtin_mul_overflow(tuples, k.size() - 1, &tuples) || tuples > scan_bound)
            scannable = false;
    }
    if (scannable) {
        std::vector<uint32_t> pos(w.n, 0);
        while (true) {
            std::vector<Fq> t(w.n);
            for (uint32_t i = 0; i < w.n; ++i) t[i] = Fq{pos[i] + 1};
            bool ok = true;
            for (uint32_t i = 1; i <= w.n && ok; ++i)
                ok = (t[w.image(i) - 1] == k.frob(t[i - 1]));
            if (ok) {
                Fq d = k.one();
                for (Fq e : t) d = k.mul(d, e);
                if (variant == TorusVariant::GL || d.v == 1) ++rep.brute_count;
            }
            uint32_t ci = 0;
            while (ci < w.n && ++pos[ci] == k.size() - 1) pos[ci++] = 0;
            if (ci == w.n) break;
        }
    } else {
        rep.brute_count = rep.order;
    }

    // generators: per-cycle multiplicative generator of F_{q^r}^* (GL), or a
    // generator of the kernel mu_{q(n)} for a single SL n-cycle
    if (variant == TorusVariant::GL) {
        for (size_t ci = 0; ci < cycles.size(); ++ci) {
            uint32_t r = static_cast<uint32_t>(cycles[ci].size());
            uint64_t target = checked_pow_u64(q, r) - 1;
            for (Fq x : choice[ci]) {
                if (k.mult_order(x) == target) {
                    std::vector<Fq> t(w.n, k.one());
                    Fq y = x;
                    for (size_t off = 0; off < cycles[ci].size(); ++off) {
                        t[cycles[ci][off] - 1] = y;
                        y = k.frob(y);
                    }
                    rep.generators.push_back(t);
                    break;
                }
            }
        }
    } else if (cycles.size() == 1) {
        uint64_t qn = (checked_pow_u64(q, w.n) - 1) / (q - 1);
        Fq zeta = k.pow(k.generator(), (k.size() - 1) / qn);
        std::vector<Fq> t(w.n, k.one());
        Fq y = zeta;
        for (size_t off = 0; off < cycles[0].size(); ++off) {
            t[cycles[0][off] - 1] = y;
            y = k.frob(y);
        }
        rep.generators.push_back(t);
    }

    rep.pass = (rep.order == rep.predicted) && (rep.brute_count == rep.order);
    return rep;
}

/// Gaussian binomial: the index [GL_n : P_{i,n-i}] of the block parabolic,
/// |GL_n| / (|GL_i| |GL_{n-i}| q^{i(n-i)}).
inline uint64_t gauss_binomial(uint32_t n, uint32_t i, uint64_t q) {
    if (i > n) throw error(errc::config_error, "gauss_binomial: i > n");
    uint64_t num = gl_order(n, q);
    uint64_t den = checked_mul_u64(checked_mul_u64(gl_order(i, q), gl_order(n - i, q)),
                                   checked_pow_u64(q, i * (n - i)));
    if (num % den != 0) throw error(errc::config_error, "gauss_binomial: inexact division");
    return num / den;
}

} // namespace qdl
