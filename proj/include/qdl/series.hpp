#pragma once

#include <map>
#include <string>

#include "qdl/base.hpp"

namespace qdl {

/// Integer power series truncated at degree D, used as Poincare series of
/// graded rings. Multiplication and the geometric divisions are exact on the
/// kept coefficients.
struct PoincareSeries {
    uint32_t D = 0;
    std::vector<int64_t> a; // a[0..D]

    static PoincareSeries one(uint32_t D) {
        PoincareSeries s;
        s.D = D;
        s.a.assign(D + 1, 0);
        s.a[0] = 1;
        return s;
    }

    friend bool operator==(const PoincareSeries& x, const PoincareSeries& y) {
        return x.D == y.D && x.a == y.a;
    }
};

inline PoincareSeries series_mul(const PoincareSeries& x, const PoincareSeries& y) {
    PoincareSeries z = PoincareSeries::one(x.D);
    z.a.assign(x.D + 1, 0);
    for (uint32_t i = 0; i <= x.D; ++i) {
        if (x.a[i] == 0) continue;
        for (uint32_t j = 0; i + j <= x.D; ++j) z.a[i + j] += x.a[i] * y.a[j];
    }
    return z;
}

/// Multiply by (1 + t^k).
inline PoincareSeries series_mul_1p(const PoincareSeries& x, uint32_t k) {
    PoincareSeries z = x;
    for (uint32_t i = x.D + 1; i-- > k;) z.a[i] += x.a[i - k];
    return z;
}

/// Divide by (1 - t^k): y_i = x_i + y_{i-k}.
inline PoincareSeries series_div_1m(const PoincareSeries& x, uint32_t k) {
    PoincareSeries z = x;
    for (uint32_t i = k; i <= x.D; ++i) z.a[i] += z.a[i - k];
    return z;
}

/// Divide by (1 + t^k): y_i = x_i - y_{i-k}. Exact when x is a multiple.
inline PoincareSeries series_div_1p(const PoincareSeries& x, uint32_t k) {
    PoincareSeries z = x;
    for (uint32_t i = k; i <= x.D; ++i) z.a[i] -= z.a[i - k];
    return z;
}

enum class GenKind { Polynomial, Exterior };

struct GenSpec {
    std::string name;
    GenKind kind;
    uint32_t degree = 0;
    uint32_t weight = 0; // second grading, motivic variant only
};

/// Generators-and-degrees presentation of a graded ring over Z/ell: a
/// polynomial part tensor an exterior part, optionally bigraded with a tau
/// polynomial generator of bidegree (0,1).
struct GradedPresentation {
    uint64_t ell = 0;
    uint32_t r = 0; // multiplicative order of q mod ell
    bool motivic = false;
    std::vector<GenSpec> gens;

    std::vector<GenSpec> polynomial_gens() const {
        std::vector<GenSpec> out;
        for (const auto& g : gens)
            if (g.kind == GenKind::Polynomial) out.push_back(g);
        return out;
    }
    std::vector<GenSpec> exterior_gens() const {
        std::vector<GenSpec> out;
        for (const auto& g : gens)
            if (g.kind == GenKind::Exterior) out.push_back(g);
        return out;
    }
};

namespace detail {
inline void require_ell_valid(uint64_t q, uint64_t ell) {
    auto [p, s] = prime_power_split(q);
    if (!is_prime_u64(ell)) throw error(errc::config_error, "ell must be prime");
    if (ell == p) throw error(errc::ell_equals_p, "ell equals the field characteristic");
}
} // namespace detail

/// Presentation with polynomial generators c_{rj} in degree 2rj and exterior
/// generators e_{rj} in degree 2rj-1, j = 1..floor(n/r), r = ord(q mod ell).
/// Trivial when r > n.
inline GradedPresentation quillen_presentation(uint32_t n, uint64_t q, uint64_t ell) {
    detail::require_ell_valid(q, ell);
    GradedPresentation P;
    P.ell = ell;
    P.r = static_cast<uint32_t>(ord_mod(q, ell));
    for (uint32_t j = 1; j * P.r <= n; ++j) {
        uint32_t i = j * P.r;
        P.gens.push_back({"c" + std::to_string(i), GenKind::Polynomial, 2 * i, i});
        P.gens.push_back({"e" + std::to_string(i), GenKind::Exterior, 2 * i - 1, i});
    }
    return P;
}

/// SL variant: identical for r >= 2; for r = 1 the degree-2 pair c_1, e_1 is
/// dropped.
inline GradedPresentation sl_presentation(uint32_t n, uint64_t q, uint64_t ell) {
    GradedPresentation P = quillen_presentation(n, q, ell);
    if (P.r == 1) {
        std::erase_if(P.gens, [](const GenSpec& g) { return g.name == "c1" || g.name == "e1"; });
    }
    return P;
}

/// Bigraded variant: the same generators with weights (2rj, rj), (2rj-1, rj)
/// plus a polynomial generator tau of bidegree (0, 1).
inline GradedPresentation motivic_presentation(uint32_t n, uint64_t q, uint64_t ell) {
    GradedPresentation P = quillen_presentation(n, q, ell);
    P.motivic = true;
    P.gens.insert(P.gens.begin(), GenSpec{"tau", GenKind::Polynomial, 0, 1});
    return P;
}

/// prod over exterior gens (1 + t^deg) / prod over polynomial gens (1 - t^deg),
/// truncated. Degree-0 polynomial generators (tau) are excluded: they do not
/// contribute to the first grading.
inline PoincareSeries presentation_series(const GradedPresentation& P, uint32_t D) {
    PoincareSeries s = PoincareSeries::one(D);
    for (const auto& g : P.gens) {
        if (g.degree == 0) continue;
        s = (g.kind == GenKind::Exterior) ? series_mul_1p(s, g.degree) : series_div_1m(s, g.degree);
    }
    return s;
}

/// The stratification recurrence, run purely as series arithmetic.
/// Ladder state PS_i = series of the equivariant ring of X(i):
///   PS_1 = 1 + t;
///   r | i : PS_{i+1} = PS_i * (1 + t^{2i+1}) / (1 - t^{2i})   (new generator pair)
///   r ∤ i : PS_{i+1} = H_i * (1 + t^{2i+1}),  H_i = PS_i / (1 + t^{2i-1})
///           (the floating exterior generator moves up, nothing is added)
/// and the closing step at i = n divides out (1 - t^{2n}) when r | n or
/// strips the floating generator otherwise. Must equal the closed form.
inline PoincareSeries inductive_series(uint32_t n, uint64_t q, uint64_t ell, uint32_t D) {
    detail::require_ell_valid(q, ell);
    if (D < 2 * n)
        throw error(errc::truncation_too_small,
                    "truncation degree " + std::to_string(D) + " cannot see the top generator (2n = " +
                        std::to_string(2 * n) + ")");
    const uint32_t r = static_cast<uint32_t>(ord_mod(q, ell));
    PoincareSeries ps = PoincareSeries::one(D);
    ps.a[0] = 1;
    if (D >= 1) ps.a[1] = 1; // X(1): exterior on one degree-1 class
    if (n == 0) return PoincareSeries::one(D);
    for (uint32_t i = 1; i < n; ++i) {
        if (i % r == 0) {
            ps = series_div_1m(series_mul_1p(ps, 2 * i + 1), 2 * i);
        } else {
            PoincareSeries h = series_div_1p(ps, 2 * i - 1);
            ps = series_mul_1p(h, 2 * i + 1);
        }
    }
    if (n % r == 0) return series_div_1m(ps, 2 * n);
    return series_div_1p(ps, 2 * n - 1);
}

// local order formulas so this header stays free of the matrix module
inline uint64_t q_integer_series(uint64_t q, uint32_t n) {
    return (checked_pow_u64(q, n) - 1) / (q - 1);
}
inline uint64_t sl_order_series(uint32_t n, uint64_t q) {
    uint64_t qn = checked_pow_u64(q, n);
    uint64_t r = 1, qi = 1;
    for (uint32_t i = 0; i < n; ++i) {
        r = checked_mul_u64(r, qn - qi);
        qi = checked_mul_u64(qi, q);
    }
    return r / (q - 1);
}

struct RankLedger {
    std::vector<uint64_t> poly; // the PS-ratio polynomial, ascending coefficients
    uint64_t value_at_1 = 0;
    uint64_t expected = 0; // |SL_n(F_q)|
    bool pass = false;
};

/// The polynomial prod_{i=1}^{n-1} (1 + t + ... + t^{(q^n - q^i) - 1}) times
/// (1 + t + ... + t^{q + ... + q^{n-1}}); its value at t = 1 is |SL_n(F_q)|.
inline RankLedger dickson_rank_check(uint32_t n, uint64_t q) {
    RankLedger rl;
    rl.poly = {1};
    auto mul_ones = [&](uint64_t terms) {
        // multiply by 1 + t + ... + t^{terms-1}
        std::vector<uint64_t> out(rl.poly.size() + terms - 1, 0);
        for (size_t i = 0; i < rl.poly.size(); ++i)
            for (uint64_t j = 0; j < terms; ++j) out[i + j] += rl.poly[i];
        rl.poly = std::move(out);
    };
    uint64_t qn = checked_pow_u64(q, n);
    uint64_t qi = q;
    for (uint32_t i = 1; i < n; ++i) {
        mul_ones(qn - qi);
        qi = checked_mul_u64(qi, q);
    }
    mul_ones(q_integer_series(q, n));
    for (uint64_t c : rl.poly) rl.value_at_1 += c;
    rl.expected = sl_order_series(n, q);
    rl.pass = rl.value_at_1 == rl.expected;
    return rl;
}

// --- symbolic expansion mod ell --------------------------------------------

namespace detail {

/// Sparse multivariate polynomial over Z/ell, exponent vectors as keys.
struct MPolyMod {
    uint64_t ell;
    std::map<std::vector<uint32_t>, uint64_t> terms;

    explicit MPolyMod(uint64_t l) : ell(l) {}

    static MPolyMod monomial(uint64_t ell, std::vector<uint32_t> exps, uint64_t coef) {
        MPolyMod p(ell);
        coef %= ell;
        if (coef) p.terms[std::move(exps)] = coef;
        return p;
    }

    MPolyMod mul(const MPolyMod& o) const {
        MPolyMod out(ell);
        for (const auto& [ea, ca] : terms)
            for (const auto& [eb, cb] : o.terms) {
                std::vector<uint32_t> e(ea.size());
                for (size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
                uint64_t& c = out.terms[e];
                c = (c + ca * cb) % ell;
            }
        std::erase_if(out.terms, [](const auto& kv) { return kv.second == 0; });
        return out;
    }

    friend bool operator==(const MPolyMod& a, const MPolyMod& b) { return a.terms == b.terms; }
};

} // namespace detail

struct RootIdentityReport {
    uint32_t r = 0;
    bool single_ok = false;     // prod_{i<r} (X - q^i t) = X^r - t^r mod ell
    bool products_ok = false;   // k-fold products only involve r-th powers, k <= 3
    std::string witness;        // the expanded single product, for inspection
    bool pass = false;
};

/// Expands prod_{i=0}^{r-1} (X - q^i t) symbolically over Z/ell and asserts
/// it equals X^r - t^r; then expands the k-fold product over variables
/// t_1..t_k for k <= 3 and asserts it equals prod_j (X^r - t_j^r).
inline RootIdentityReport root_identity_check(uint64_t q, uint64_t ell) {
    detail::require_ell_valid(q, ell);
    RootIdentityReport rep;
    rep.r = static_cast<uint32_t>(ord_mod(q % ell, ell));
    const uint32_t r = rep.r;

    {
        // single product, variables (X, t)
        detail::MPolyMod prod = detail::MPolyMod::monomial(ell, {0, 0}, 1);
        uint64_t qi = 1 % ell;
        for (uint32_t i = 0; i < r; ++i) {
            detail::MPolyMod factor(ell);
            factor.terms[{1, 0}] = 1;                    // X
            if (qi) factor.terms[{0, 1}] = ell - qi;     // - q^i t
            prod = prod.mul(factor);
            qi = (qi * (q % ell)) % ell;
        }
        detail::MPolyMod expect(ell);
        expect.terms[{r, 0}] = 1;
        expect.terms[{0, r}] = ell - 1;
        rep.single_ok = (prod == expect);
        for (const auto& [e, c] : prod.terms)
            rep.witness += "X^" + std::to_string(e[0]) + " t^" + std::to_string(e[1]) + " : " +
                           std::to_string(c) + "; ";
    }

    rep.products_ok = true;
    for (uint32_t kk = 1; kk <= 3; ++kk) {
        // variables (X, t_1, ..., t_kk)
        detail::MPolyMod prod = detail::MPolyMod::monomial(ell, std::vector<uint32_t>(kk + 1, 0), 1);
        for (uint32_t j = 0; j < kk; ++j) {
            uint64_t qi = 1 % ell;
            for (uint32_t i = 0; i < r; ++i) {
                detail::MPolyMod factor(ell);
                std::vector<uint32_t> ex(kk + 1, 0);
                ex[0] = 1;
                factor.terms[ex] = 1;
                if (qi) {
                    std::vector<uint32_t> et(kk + 1, 0);
                    et[j + 1] = 1;
                    factor.terms[et] = ell - qi;
                }
                prod = prod.mul(factor);
                qi = (qi * (q % ell)) % ell;
            }
        }
        detail::MPolyMod expect = detail::MPolyMod::monomial(ell, std::vector<uint32_t>(kk + 1, 0), 1);
        for (uint32_t j = 0; j < kk; ++j) {
            detail::MPolyMod factor(ell);
            std::vector<uint32_t> ex(kk + 1, 0);
            ex[0] = r;
            factor.terms[ex] = 1;
            std::vector<uint32_t> et(kk + 1, 0);
            et[j + 1] = r;
            factor.terms[et] = ell - 1;
            expect = expect.mul(factor);
        }
        if (!(prod == expect)) rep.products_ok = false;
        // every surviving exponent is a multiple of r
        for (const auto& [e, c] : prod.terms)
            for (uint32_t comp : e)
                if (comp % r != 0) rep.products_ok = false;
    }
    rep.pass = rep.single_ok && rep.products_ok;
    return rep;
}

} // namespace qdl
