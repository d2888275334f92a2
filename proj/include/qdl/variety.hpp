#pragma once

#include <optional>
#include <set>

#include "qdl/dickson.hpp"

namespace qdl {

/// The three hypersurface loci in A^n cut out by the Moore determinant:
/// Q (e = 1), Qprime (e^{q-1} = 1) and X1 (e != 0). With the sign variant on,
/// Qprime becomes (-1)^{n-1} e^{q-1} = 1; the two coincide in characteristic
/// 2 and for odd n.
enum class VarietyKind { Q, Qprime, X1 };

inline const char* variety_kind_name(VarietyKind kind) {
    switch (kind) {
        case VarietyKind::Q: return "Q";
        case VarietyKind::Qprime: return "Qprime";
        default: return "X1";
    }
}

inline VarietyKind variety_kind_parse(const std::string& s) {
    if (s == "Q") return VarietyKind::Q;
    if (s == "Qprime") return VarietyKind::Qprime;
    if (s == "X1") return VarietyKind::X1;
    throw error(errc::config_error, "unknown variety kind: " + s);
}

/// A locus to enumerate: which hypersurface, how many coordinates, over
/// which base field, and whether the (-1)^{n-1} variant applies.
struct VarietySpec {
    VarietyKind kind = VarietyKind::Q;
    uint32_t n = 2;
    FieldSpec base;
    bool sign_variant = false;
};

inline bool on_variety(const FieldCtx& k, VarietyKind kind, const std::vector<Fq>& x,
                       bool sign_variant = false) {
    Fq e = moore_det(k, x);
    switch (kind) {
        case VarietyKind::Q:
            return e.v == 1;
        case VarietyKind::Qprime: {
            Fq v = k.pow(e, k.q() - 1);
            // sign (-1)^{n-1} e^{q-1} = 1  <=>  e^{q-1} = (-1)^{n-1}
            Fq target = k.one();
            if (sign_variant && x.size() % 2 == 0) target = k.neg(k.one());
            return v == target;
        }
        default:
            return e.v != 0;
    }
}

inline void for_each_point(const FieldCtx& k, uint32_t n,
                           const std::function<void(const std::vector<Fq>&)>& fn) {
    uint64_t total = checked_pow_u64(k.size(), n);
    if (total > k.enum_bound()) throw error(errc::degree_overflow, "point enumeration over bound");
    std::vector<Fq> x(n, Fq{0});
    while (true) {
        fn(x);
        uint32_t ci = 0;
        while (ci < n && ++x[ci].v == k.size()) x[ci++].v = 0;
        if (ci == n) break;
    }
}

/// All points of the given locus over the context's field, in deterministic
/// coordinate order.
inline std::vector<std::vector<Fq>> enumerate_variety(const FieldCtx& k, VarietyKind kind,
                                                       uint32_t n, bool sign_variant = false) {
    std::vector<std::vector<Fq>> pts;
    for_each_point(k, n, [&](const std::vector<Fq>& x) {
        if (on_variety(k, kind, x, sign_variant)) pts.push_back(x);
    });
    return pts;
}

/// Enumerate a VarietySpec over the degree-m extension of its base field.
inline std::vector<std::vector<Fq>> enumerate_variety(const FieldCtx& k, const VarietySpec& spec) {
    if (k.p() != spec.base.p || k.s() != spec.base.s)
        throw error(errc::incompatible_fields, "context does not extend the spec's base field");
    return enumerate_variety(k, spec.kind, spec.n, spec.sign_variant);
}

/// mu_d inside the context: elements with t^d = 1.
inline std::vector<Fq> roots_of_unity(const FieldCtx& k, uint64_t d) {
    std::vector<Fq> out;
    for (uint64_t c = 1; c < k.size(); ++c) {
        Fq t{static_cast<uint32_t>(c)};
        if (k.pow(t, d).v == 1) out.push_back(t);
    }
    return out;
}

inline uint64_t q_integer(uint64_t q, uint32_t n) {
    return (checked_pow_u64(q, n) - 1) / (q - 1); // 1 + q + ... + q^{n-1}
}

enum class GroupKind { GL, SL };

struct StabilizerViolation {
    MatFq g;
    std::vector<Fq> x;
};

struct PointOrbitReport {
    VarietyKind kind;
    GroupKind group;
    uint32_t n = 0;
    uint32_t m = 0;
    uint64_t point_count = 0;
    uint64_t group_order = 0;
    std::vector<uint64_t> orbit_sizes; // ascending
    std::vector<StabilizerViolation> violations;
    bool closed_under_action = true;
    bool scalar_action_commutes = true; // (g x) mu = g (x mu) for mu in mu_{q(n)}
};

/// Closure, orbit sizes and stabilizers of the GL/SL subgroup action on a
/// locus. Freeness (empty violation list) is the claim for (Q, SL) and
/// (Qprime, GL); for X1 only closure and orbit sizes are reported. Also
/// checks that the left group action commutes with the right scalar action
/// of mu_{q(n)}.
inline PointOrbitReport check_action(const FieldCtx& k, VarietyKind kind, uint32_t n,
                                     GroupKind group, bool sign_variant = false) {
    PointOrbitReport rep;
    rep.kind = kind;
    rep.group = group;
    rep.n = n;
    rep.m = k.m();
    auto pts = enumerate_variety(k, kind, n, sign_variant);
    rep.point_count = pts.size();
    auto mats = group == GroupKind::GL ? enumerate_gl_subfield(k, n) : enumerate_sl_subfield(k, n);
    rep.group_order = mats.size();

    std::set<std::vector<uint32_t>> index;
    auto code = [](const std::vector<Fq>& x) {
        std::vector<uint32_t> c(x.size());
        for (size_t i = 0; i < x.size(); ++i) c[i] = x[i].v;
        return c;
    };
    for (const auto& x : pts) index.insert(code(x));

    MatFq id = MatFq::identity(k, n);
    for (const auto& x : pts) {
        for (const auto& g : mats) {
            auto gx = mat_vec(g, x);
            if (!index.count(code(gx))) rep.closed_under_action = false;
            if (!(g == id) && gx == x) rep.violations.push_back({g, x});
        }
    }

    // orbit partition
    std::set<std::vector<uint32_t>> seen;
    for (const auto& x : pts) {
        if (seen.count(code(x))) continue;
        std::set<std::vector<uint32_t>> orbit;
        for (const auto& g : mats) orbit.insert(code(mat_vec(g, x)));
        for (const auto& c : orbit) seen.insert(c);
        rep.orbit_sizes.push_back(orbit.size());
    }
    std::sort(rep.orbit_sizes.begin(), rep.orbit_sizes.end());

    // commuting scalar action, checked literally on all triples
    auto mus = roots_of_unity(k, q_integer(k.q(), n));
    for (const auto& x : pts)
        for (const auto& g : mats)
            for (Fq mu : mus) {
                std::vector<Fq> lhs = mat_vec(g, x), rhs = x;
                for (auto& c : lhs) c = k.mul(c, mu);
                for (auto& c : rhs) c = k.mul(c, mu);
                if (mat_vec(g, rhs) != lhs) rep.scalar_action_commutes = false;
            }
    return rep;
}

/// Dickson tuple (c_{n,1}, ..., c_{n,n-1}) of a point of Qprime; exactly
/// constant on GL_n(F_q)-orbits.
inline std::vector<Fq> quotient_map(const FieldCtx& k, const std::vector<Fq>& x,
                                    bool sign_variant = false) {
    if (!on_variety(k, VarietyKind::Qprime, x, sign_variant))
        throw error(errc::not_on_variety, "quotient_map: point not on Qprime");
    DicksonVector dv = dickson_vector(k, x);
    return std::vector<Fq>(dv.c.begin() + 1, dv.c.end());
}

struct CoverEntry {
    std::vector<Fq> y;   // point of X1 over the base field
    uint32_t ladder = 0; // least m' <= M with a scaling witness over F_{q^{m m'}}
};

struct ScalingCoverReport {
    uint32_t n = 0;
    uint64_t exponent = 0;   // q(n) for the Q cover, q^n - 1 for the Qprime cover
    std::vector<CoverEntry> entries;
    uint32_t max_ladder = 0;
    uint32_t splitting_step = 0;  // first m' where mu_exponent has full order
    uint64_t fiber_multiplicity = 0;
    bool fiber_is_single_orbit = false;
    bool pass = false;
};

namespace detail {

/// Shared engine for the two scaling covers: for every y in X1(F_{q^m}) find
/// the least ladder step m' and t over F_{q^{m m'}} with t^expo = target(y);
/// then x = t^{-1} y lies on the covering locus. At the first step whose
/// field splits every fiber, each fiber is enumerated in full and asserted to
/// be a single mu_expo-orbit of expo pairs {(s x, s^{-1} t) : s in mu_expo}.
inline ScalingCoverReport scaling_cover_engine(const FieldCtx& base, uint32_t n, uint32_t M,
                                               VarietyKind cover_kind) {
    ScalingCoverReport rep;
    rep.n = n;
    const uint64_t q = base.q();
    rep.exponent = cover_kind == VarietyKind::Q ? q_integer(q, n) : checked_pow_u64(q, n) - 1;
    auto ys = enumerate_variety(base, VarietyKind::X1, n);
    if (ys.empty()) { // nothing to cover
        rep.pass = true;
        return rep;
    }

    auto solutions = [&](const FieldCtx& big, Fq target) {
        std::vector<Fq> ts;
        for (uint64_t c = 1; c < big.size(); ++c) {
            Fq t{static_cast<uint32_t>(c)};
            if (big.pow(t, rep.exponent) == target) ts.push_back(t);
        }
        return ts;
    };

    std::vector<std::optional<uint32_t>> found(ys.size());
    bool fiber_done = false;
    for (uint32_t step = 1; step <= M; ++step) {
        FieldCtx big(FieldSpec{base.p(), base.s(), base.m() * step}, base.enum_bound());
        FieldEmbedding up(base, big);
        bool splitting = (big.size() - 1) % rep.exponent == 0;
        std::vector<std::vector<Fq>> fibers(ys.size());
        bool all_solvable = true;
        for (size_t yi = 0; yi < ys.size(); ++yi) {
            Fq ey = moore_det(base, ys[yi]);
            Fq target = cover_kind == VarietyKind::Q ? up(ey) : big.pow(up(ey), q - 1);
            fibers[yi] = solutions(big, target);
            if (fibers[yi].empty()) {
                all_solvable = false;
                continue;
            }
            if (found[yi]) continue;
            found[yi] = step;
            // witness: x = t^{-1} y lies on the covering locus
            std::vector<Fq> x(n);
            Fq tinv = big.inv(fibers[yi][0]);
            for (uint32_t i = 0; i < n; ++i) x[i] = big.mul(tinv, up(ys[yi][i]));
            if (!on_variety(big, cover_kind, x))
                throw error(errc::not_on_variety, "scaling cover witness off the locus");
        }
        if (splitting && all_solvable && !fiber_done) {
            rep.splitting_step = step;
            fiber_done = true;
            rep.fiber_is_single_orbit = true;
            for (size_t yi = 0; yi < ys.size(); ++yi) {
                rep.fiber_multiplicity = fibers[yi].size();
                if (fibers[yi].size() != rep.exponent) rep.fiber_is_single_orbit = false;
                for (Fq t : fibers[yi]) {
                    Fq s = big.div(fibers[yi][0], t);
                    if (big.pow(s, rep.exponent).v != 1) rep.fiber_is_single_orbit = false;
                }
            }
        }
        if (fiber_done && std::all_of(found.begin(), found.end(), [](auto& f) { return bool(f); }))
            break;
    }
    for (size_t yi = 0; yi < ys.size(); ++yi) {
        if (!found[yi])
            throw error(errc::ladder_exhausted,
                        "scaling cover: ladder cap " + std::to_string(M) + " reached");
        rep.entries.push_back({ys[yi], *found[yi]});
        rep.max_ladder = std::max(rep.max_ladder, *found[yi]);
    }
    if (!fiber_done)
        throw error(errc::ladder_exhausted, "scaling cover: no splitting step within the ladder");
    rep.pass = rep.fiber_multiplicity == rep.exponent && rep.fiber_is_single_orbit;
    return rep;
}

} // namespace detail

/// Cover of X1 by Q x G_m via (x, t) -> t x: witnesses t^{q(n)} = e(y).
inline ScalingCoverReport scaling_cover(const FieldCtx& base, uint32_t n, uint32_t M = 8) {
    return detail::scaling_cover_engine(base, n, M, VarietyKind::Q);
}

struct TorsorReport {
    bool mu_stable = true;        // mu_{q^n-1} maps Qprime to itself
    uint64_t mu_order = 0;        // order of mu_{q^n-1} in the base field
    ScalingCoverReport cover;     // X1 covered from Qprime, exponent q^n - 1
    bool pass = false;
};

/// Scalar mu_{q^n-1}-action on Qprime plus the Qprime -> X1 cover; the
/// fiber over y is one mu_{q^n-1}-orbit at the splitting step.
inline TorsorReport torsor_check(const FieldCtx& base, uint32_t n, uint32_t M = 8) {
    TorsorReport rep;
    uint64_t expo = checked_pow_u64(base.q(), n) - 1;
    auto mus = roots_of_unity(base, expo);
    rep.mu_order = mus.size();
    auto pts = enumerate_variety(base, VarietyKind::Qprime, n);
    for (const auto& x : pts)
        for (Fq t : mus) {
            std::vector<Fq> tx(x.size());
            for (size_t i = 0; i < x.size(); ++i) tx[i] = base.mul(t, x[i]);
            if (!on_variety(base, VarietyKind::Qprime, tx)) rep.mu_stable = false;
        }
    rep.cover = detail::scaling_cover_engine(base, n, M, VarietyKind::Qprime);
    rep.pass = rep.mu_stable && rep.cover.pass;
    return rep;
}

struct FiberCensus {
    std::vector<Fq> target;          // point of A^{n-1} over the base context
    uint32_t stabilized_at = 0;      // ladder step where the census stabilized
    uint64_t count = 0;              // distinct geometric fiber points found
    std::vector<uint64_t> cumulative; // running census per ladder step
    bool pass = false;
};

/// Census of the quotient_map fiber over a target c, across the extension
/// ladder F_{q^{m m'}}, m' = 1..M. Points are counted once by their exact
/// minimal field of definition, so the running census is monotone and the
/// stabilized value is the geometric fiber size, which must be |GL_n(F_q)|.
inline FiberCensus fiber_census(const FieldCtx& base, uint32_t n, const std::vector<Fq>& target,
                                uint32_t M = 8) {
    FiberCensus fc;
    fc.target = target;
    // minimal degree over F_q of the target tuple
    uint32_t dc = 1;
    for (Fq c : target) dc = std::lcm(dc, base.min_subfield_degree(c));
    const uint64_t expected = gl_order(n, base.q());
    std::set<uint32_t> counted;
    uint64_t cum = 0;
    for (uint32_t step = 1; step <= M; ++step) {
        uint32_t deg = base.m() * step;
        FieldCtx big(FieldSpec{base.p(), base.s(), deg}, base.enum_bound());
        FieldEmbedding up(base, big);
        std::vector<Fq> c_up(target.size());
        for (size_t i = 0; i < target.size(); ++i) c_up[i] = up(target[i]);
        // new exact degrees reachable at this step
        std::vector<uint32_t> fresh;
        for (uint32_t d = 1; d <= deg; ++d)
            if (deg % d == 0 && dc <= d && d % dc == 0 && !counted.count(d)) fresh.push_back(d);
        if (!fresh.empty()) {
            for_each_point(big, n, [&](const std::vector<Fq>& x) {
                if (!on_variety(big, VarietyKind::Qprime, x)) return;
                uint32_t dmin = 1;
                for (Fq xi : x) dmin = std::lcm(dmin, big.min_subfield_degree(xi));
                if (!std::count(fresh.begin(), fresh.end(), dmin)) return;
                DicksonVector dv = dickson_vector(big, x);
                for (uint32_t i = 1; i < n; ++i)
                    if (!(dv.c[i] == c_up[i - 1])) return;
                ++cum;
            });
            for (uint32_t d : fresh) counted.insert(d);
        }
        fc.cumulative.push_back(cum);
        // a zero census is always transient: the quotient map is onto, so the
        // fiber has points over some extension
        if (step >= 2 && cum > 0 && fc.cumulative[step - 1] == fc.cumulative[step - 2]) {
            fc.stabilized_at = step;
            fc.count = cum;
            if (cum != expected)
                throw error(errc::fiber_size_mismatch,
                            "fiber census " + std::to_string(cum) + " != group order " +
                                std::to_string(expected));
            fc.pass = cum > 0;
            return fc;
        }
    }
    throw error(errc::ladder_exhausted, "fiber census: ladder cap " + std::to_string(M) + " reached");
}

} // namespace qdl
