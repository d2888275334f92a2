#pragma once

#include <chrono>
#include <functional>

#include "qdl/jsonio.hpp"

namespace qdl {

/// One verification with a stable id, machine-readable parameters and a
/// witness on failure. The claims table in the README documents what each id
/// verifies.
struct CheckReport {
    std::string id;
    Json params;
    bool pass = false;
    Json witness; // null unless failed
    int64_t millis = 0;
    int64_t limit_ms = 0;
};

struct CheckOptions {
    uint64_t seed = 1;
    std::string profile = "desk";
};

namespace checks {

using Clock = std::chrono::steady_clock;

inline CheckReport run_one(const std::string& id, int64_t limit_ms, const Json& params,
                           const std::function<void(CheckReport&)>& body) {
    CheckReport rep;
    rep.id = id;
    rep.params = params;
    rep.limit_ms = limit_ms;
    auto start = Clock::now();
    try {
        rep.pass = true;
        body(rep);
    } catch (const std::exception& e) {
        rep.pass = false;
        if (rep.witness.is_null()) rep.witness = Json{{"error", e.what()}};
    }
    rep.millis = std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start).count();
    if (rep.millis > rep.limit_ms) {
        rep.pass = false;
        if (rep.witness.is_null()) rep.witness = Json{{"error", "time limit exceeded"}};
    }
    return rep;
}

inline void fail(CheckReport& rep, Json witness) {
    rep.pass = false;
    if (rep.witness.is_null()) rep.witness = std::move(witness);
}

/// The hypersurfaces e = 1 and e^{q-1} = 1 have no points over F_q itself.
inline CheckReport rational_point_emptiness() {
    Json params{{"cases", {"n=2 q=2", "n=2 q=3", "n=3 q=2", "n=3 q=3"}}};
    return run_one("rational-point-emptiness", 1000, params, [](CheckReport& rep) {
        for (auto [p, n] : std::vector<std::pair<uint32_t, uint32_t>>{{2, 2}, {3, 2}, {2, 3}, {3, 3}}) {
            FieldCtx k(FieldSpec{p, 1, 1});
            auto q_pts = enumerate_variety(k, VarietyKind::Q, n);
            auto qp_pts = enumerate_variety(k, VarietyKind::Qprime, n);
            if (!q_pts.empty() || !qp_pts.empty())
                fail(rep, Json{{"q", p}, {"n", n}, {"Q_count", q_pts.size()},
                               {"Qprime_count", qp_pts.size()}});
        }
    });
}

/// x^{-1} F(x) is the companion matrix built from the Dickson values (sign
/// ledger applied) at every point with e != 0, and the values extracted from
/// the last column equal the product-expansion oracle's.
inline CheckReport companion_last_column() {
    struct Case {
        uint32_t p, s, n, mmax;
    };
    std::vector<Case> cases{{2, 1, 2, 4}, {2, 1, 3, 2}, {3, 1, 2, 2}};
    Json params = Json::array();
    for (auto c : cases)
        params.push_back(Json{{"n", c.n}, {"q", checked_pow_u64(c.p, c.s)}, {"m_max", c.mmax}});
    return run_one("companion-last-column", 30000, Json{{"cases", params}}, [&](CheckReport& rep) {
        for (auto c : cases) {
            for (uint32_t m = 1; m <= c.mmax; ++m) {
                FieldCtx k(FieldSpec{c.p, c.s, m});
                uint64_t points = 0;
                std::vector<Fq> x(c.n, Fq{0});
                while (true) {
                    if (moore_det(k, x).v != 0) {
                        ++points;
                        auto res = dl_companion(k, x); // asserts the shape internally
                        auto oracle = dickson_from_product(k, x);
                        if (res.dv.c != oracle.c)
                            fail(rep, Json{{"n", c.n}, {"m", m}, {"x", point_to_json(k, x)}});
                    }
                    uint32_t ci = 0;
                    while (ci < c.n && ++x[ci].v == k.size()) x[ci++].v = 0;
                    if (ci == c.n) break;
                }
                // the count of usable points is itself pinned
                uint64_t expect = 1;
                for (uint32_t j = 0; j < c.n; ++j)
                    expect *= k.size() - checked_pow_u64(k.q(), j);
                if (points != expect)
                    fail(rep, Json{{"n", c.n}, {"m", m}, {"points", points}, {"expected", expect}});
            }
        }
    });
}

/// c_{n,i}(g x) = c_{n,i}(x) and e(g x) = det(g) e(x) for every group element
/// (exhaustive) and seeded points.
inline CheckReport dickson_invariance(uint64_t seed) {
    struct Case {
        uint32_t p, n;
    };
    std::vector<Case> cases{{2, 2}, {3, 2}, {2, 3}};
    return run_one("dickson-invariance", 60000, Json{{"trials_per_case", 1000}, {"seed", seed}},
                   [&](CheckReport& rep) {
        for (auto c : cases) {
            SplitMix64 rng(seed ^ (c.p * 31 + c.n));
            for (uint32_t m = 1; m <= 3; ++m) {
                FieldCtx k(FieldSpec{c.p, 1, m});
                auto group = enumerate_gl_subfield(k, c.n);
                if (group.size() != gl_order(c.n, k.q()))
                    fail(rep, Json{{"group_size", group.size()}});
                for (int t = 0; t < 334; ++t) {
                    std::vector<Fq> x(c.n);
                    for (auto& e : x) e = Fq{static_cast<uint32_t>(rng.below(k.size()))};
                    auto dx = dickson_vector(k, x);
                    Fq ex = moore_det(k, x);
                    for (const auto& g : group) {
                        auto gx = mat_vec(g, x);
                        if (moore_det(k, gx) != k.mul(det(g), ex)) {
                            fail(rep, Json{{"claim", "e(gx) = det(g) e(x)"}, {"n", c.n}, {"m", m},
                                           {"x", point_to_json(k, x)}, {"g", matrix_to_json(g)}});
                            return;
                        }
                        auto dgx = dickson_vector(k, gx);
                        for (uint32_t i = 1; i < c.n; ++i)
                            if (!(dgx.c[i] == dx.c[i])) {
                                fail(rep, Json{{"claim", "c_i(gx) = c_i(x)"}, {"n", c.n}, {"m", m},
                                               {"i", i}, {"x", point_to_json(k, x)}});
                                return;
                            }
                        if (!(dgx.c[0] == k.pow(k.mul(det(g), ex), k.q() - 1))) {
                            fail(rep, Json{{"claim", "c_0 = e^{q-1}"}, {"n", c.n}, {"m", m}});
                            return;
                        }
                    }
                }
            }
        }
    });
}

/// Exhaustive corank histograms match gauss(n,i,q) * prod_{j<n-i} (q^m - q^j).
inline CheckReport strata_census_check() {
    return run_one("strata-census", 60000, Json{{"n_max", 3}, {"q", {2, 3}}, {"m_max", 3}},
                   [](CheckReport& rep) {
        for (uint32_t n = 1; n <= 3; ++n)
            for (uint32_t p : {2u, 3u})
                for (uint32_t m = 1; m <= 3; ++m) {
                    if (checked_pow_u64(checked_pow_u64(p, m), n) > (1u << 20)) continue;
                    FieldCtx k(FieldSpec{p, 1, m});
                    auto sc = strata_census(k, n);
                    if (!sc.pass)
                        fail(rep, Json{{"n", n}, {"q", p}, {"m", m}, {"counts", sc.counts},
                                       {"predictions", sc.predictions}});
                }
    });
}

/// The PS-ratio polynomial evaluated at t = 1 equals |SL_n(F_q)|.
inline CheckReport rank_ledger() {
    return run_one("rank-ledger", 1000, Json{{"n_max", 5}, {"q", {2, 3, 4}}}, [](CheckReport& rep) {
        for (uint32_t n = 1; n <= 5; ++n)
            for (uint64_t q : {2ull, 3ull, 4ull}) {
                auto rl = dickson_rank_check(n, q);
                if (!rl.pass)
                    fail(rep, Json{{"n", n}, {"q", q}, {"value", rl.value_at_1},
                                   {"expected", rl.expected}});
            }
    });
}

/// The stratification recurrence reproduces the closed-form series
/// coefficientwise to degree 40.
inline CheckReport series_recurrence() {
    std::vector<std::pair<uint64_t, uint64_t>> pairs{{2, 3}, {2, 7}, {4, 3}, {3, 13}};
    return run_one("series-recurrence", 1000, Json{{"pairs", pairs}, {"n_max", 6}, {"degree", 40}},
                   [&](CheckReport& rep) {
        for (auto [q, ell] : pairs)
            for (uint32_t n = 1; n <= 6; ++n) {
                auto rec = inductive_series(n, q, ell, 40);
                auto closed = presentation_series(quillen_presentation(n, q, ell), 40);
                if (!(rec == closed))
                    fail(rep, Json{{"q", q}, {"ell", ell}, {"n", n}, {"recurrence", rec.a},
                                   {"closed_form", closed.a}});
                for (int64_t c : rec.a)
                    if (c < 0) fail(rep, Json{{"q", q}, {"ell", ell}, {"n", n},
                                              {"negative_coefficient", true}});
            }
    });
}

/// prod_{i<r} (X - q^i t) = X^r - t^r mod ell, and the k-fold products only
/// involve r-th powers.
inline CheckReport root_identity() {
    return run_one("root-identity", 1000, Json{{"q_max", 9}, {"ell_max", 13}},
                   [](CheckReport& rep) {
        for (uint64_t q : {2ull, 3ull, 4ull, 5ull, 7ull, 8ull, 9ull})
            for (uint64_t ell : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull}) {
                auto [p, s] = prime_power_split(q);
                if (ell == p) continue;
                auto rr = root_identity_check(q, ell);
                if (!rr.pass)
                    fail(rep, Json{{"q", q}, {"ell", ell}, {"witness", rr.witness}});
            }
    });
}

/// Trivial stabilizers on the free loci, plus stabilized fiber censuses of
/// the quotient map equal to the group order.
inline CheckReport free_action_and_fibers() {
    return run_one("free-action-and-fibers", 120000,
                   Json{{"stabilizers", {"n=2 q=2 m<=4", "n=3 q=2 m=2"}},
                        {"fiber_targets", {"F_2", "F_4"}},
                        {"ladder", 6}},
                   [](CheckReport& rep) {
        for (uint32_t m = 1; m <= 4; ++m) {
            FieldCtx k(FieldSpec{2, 1, m});
            auto repQ = check_action(k, VarietyKind::Q, 2, GroupKind::SL);
            auto repQp = check_action(k, VarietyKind::Qprime, 2, GroupKind::GL);
            if (!repQ.violations.empty() || !repQp.violations.empty() ||
                !repQ.closed_under_action || !repQp.closed_under_action)
                fail(rep, Json{{"m", m}, {"violations_Q", repQ.violations.size()},
                               {"violations_Qprime", repQp.violations.size()}});
        }
        {
            FieldCtx k(FieldSpec{2, 1, 2});
            auto rep3 = check_action(k, VarietyKind::Q, 3, GroupKind::SL);
            auto rep3p = check_action(k, VarietyKind::Qprime, 3, GroupKind::GL);
            if (!rep3.violations.empty() || !rep3p.violations.empty())
                fail(rep, Json{{"case", "n=3 q=2 m=2"}});
        }
        {
            FieldCtx f2(FieldSpec{2, 1, 1});
            for (Fq c : f2.elements()) {
                auto fc = fiber_census(f2, 2, {c}, 6);
                if (!fc.pass || fc.count != 6)
                    fail(rep, Json{{"target_field", "F_2"}, {"c", c.v}, {"count", fc.count}});
            }
            FieldCtx f4(FieldSpec{2, 1, 2});
            for (Fq c : f4.elements()) {
                auto fc = fiber_census(f4, 2, {c}, 6);
                if (!fc.pass || fc.count != 6)
                    fail(rep, Json{{"target_field", "F_4"}, {"c", c.v}, {"count", fc.count}});
            }
        }
    });
}

/// Idempotence, last-column shape and twisted-orbit invariance of the
/// normal form on seeded unitriangular matrices.
inline CheckReport normal_form_trials(uint64_t seed) {
    return run_one("normal-form", 30000, Json{{"trials", 1200}, {"n", {3, 4}}, {"seed", seed}},
                   [&](CheckReport& rep) {
        struct Conf {
            FieldSpec fs;
            uint32_t n;
            int trials;
        };
        std::vector<Conf> confs = {
            {{2, 1, 2}, 3, 200}, {{3, 1, 2}, 3, 200}, {{2, 2, 2}, 3, 200},
            {{2, 1, 3}, 4, 200}, {{2, 3, 2}, 4, 200}, {{2, 1, 6}, 4, 200},
        };
        for (const auto& conf : confs) {
            FieldCtx k(conf.fs);
            SplitMix64 rng(seed ^ (conf.fs.degree() * 1315423911ULL + conf.n));
            const uint32_t cap = conf.n * (conf.n - 1) / 2 - (conf.n - 1);
            for (int t = 0; t < conf.trials; ++t) {
                MatFq v = MatFq::identity(k, conf.n);
                for (uint32_t i = 0; i < conf.n; ++i)
                    for (uint32_t j = i + 1; j < conf.n; ++j)
                        v.at(i, j) = Fq{static_cast<uint32_t>(rng.below(k.size()))};
                MatFq u = MatFq::identity(k, conf.n);
                for (uint32_t i = 1; i < conf.n; ++i)
                    for (uint32_t j = i + 1; j < conf.n; ++j)
                        u.at(i, j) = Fq{static_cast<uint32_t>(rng.below(k.size()))};
                auto nf = normal_form(v);
                bool ok = nf.steps <= cap;
                auto nf2 = normal_form(nf.reduced);
                ok = ok && nf2.steps == 0 && nf2.d == nf.d;
                ok = ok && normal_form(rho(u, v)).d == nf.d;
                if (!ok) {
                    fail(rep, Json{{"field", conf.fs.to_string()}, {"n", conf.n},
                                   {"input", matrix_to_json(v)}});
                    return;
                }
            }
        }
    });
}

/// Twisted-torus fixed-point orders by enumeration: the cycle-type product
/// formula for GL, and (q^n-1)/(q-1) for the SL full cycle.
inline CheckReport torus_orders() {
    return run_one("torus-orders", 10000, Json{{"n_max", 3}, {"q", {2, 3}}}, [](CheckReport& rep) {
        for (uint32_t q : {2u, 3u})
            for (uint32_t n = 1; n <= 3; ++n) {
                std::vector<PermWord> words;
                if (n == 1) words = {PermWord::from_cycles(1, {})};
                if (n == 2)
                    words = {PermWord::from_cycles(2, {}), PermWord::from_cycles(2, {{1, 2}})};
                if (n == 3)
                    words = {PermWord::from_cycles(3, {}), PermWord::from_cycles(3, {{1, 2}}),
                             PermWord::from_cycles(3, {{1, 3}}), PermWord::from_cycles(3, {{2, 3}}),
                             PermWord::from_cycles(3, {{1, 2, 3}}),
                             PermWord::from_cycles(3, {{1, 3, 2}})};
                for (const auto& w : words) {
                    auto gl = torus_fixed(q, 1, w, TorusVariant::GL);
                    if (!gl.pass)
                        fail(rep, Json{{"q", q}, {"n", n}, {"order", gl.order},
                                       {"predicted", gl.predicted}});
                }
                auto sl = torus_fixed(q, 1, PermWord::full_cycle(n), TorusVariant::SL);
                uint64_t qn = (checked_pow_u64(q, n) - 1) / (q - 1);
                if (sl.order != qn || !sl.pass)
                    fail(rep, Json{{"q", q}, {"n", n}, {"sl_order", sl.order}, {"expected", qn}});
            }
    });
}

/// Over GL_2(F_4) with q = 2: the Lang-map kernel is exactly GL_2(F_2), and
/// L is constant on GL_2(F_2)-cosets.
inline CheckReport lang_fiber() {
    return run_one("lang-fiber", 5000, Json{{"group", "GL_2(F_4)"}, {"matrices", 180}},
                   [](CheckReport& rep) {
        FieldCtx f4(FieldSpec{2, 1, 2});
        auto gl = enumerate_gl(f4, 2);
        if (gl.size() != 180) fail(rep, Json{{"gl_size", gl.size()}});
        auto gammas = enumerate_gl_subfield(f4, 2);
        if (gammas.size() != 6) fail(rep, Json{{"kernel_expected", 6}});
        MatFq id = MatFq::identity(f4, 2);
        uint64_t kernel = 0;
        for (const auto& g : gl) {
            bool fixed = true;
            for (Fq e : g.a) fixed = fixed && (f4.frob(e) == e);
            bool in_kernel = lang_map(g) == id;
            if (in_kernel != fixed) {
                fail(rep, Json{{"claim", "kernel = GL_2(F_2)"}, {"g", matrix_to_json(g)}});
                return;
            }
            if (in_kernel) ++kernel;
            for (const auto& gamma : gammas)
                if (!(lang_map(mat_mul(gamma, g)) == lang_map(g))) {
                    fail(rep, Json{{"claim", "L(gamma g) = L(g)"}, {"g", matrix_to_json(g)}});
                    return;
                }
        }
        if (kernel != 6) fail(rep, Json{{"kernel", kernel}});
    });
}

} // namespace checks

/// The full acceptance battery in a fixed order.
inline std::vector<CheckReport> run_all_checks(const CheckOptions& opts = {}) {
    std::vector<CheckReport> out;
    out.push_back(checks::rational_point_emptiness());
    out.push_back(checks::companion_last_column());
    out.push_back(checks::dickson_invariance(opts.seed));
    out.push_back(checks::strata_census_check());
    out.push_back(checks::rank_ledger());
    out.push_back(checks::series_recurrence());
    out.push_back(checks::root_identity());
    out.push_back(checks::free_action_and_fibers());
    out.push_back(checks::normal_form_trials(opts.seed));
    out.push_back(checks::torus_orders());
    out.push_back(checks::lang_fiber());
    return out;
}

inline Json checks_to_json(const std::vector<CheckReport>& reports, const CheckOptions& opts,
                           bool with_timings) {
    Json j;
    j["schema"] = kSchemaVersion;
    j["command"] = "verify-all";
    j["profile"] = opts.profile;
    j["seed"] = opts.seed;
    Json arr = Json::array();
    bool all = true;
    for (const auto& r : reports) {
        Json one;
        one["id"] = r.id;
        one["params"] = r.params;
        one["pass"] = r.pass;
        if (!r.pass) one["witness"] = r.witness;
        if (with_timings) one["millis"] = r.millis;
        arr.push_back(one);
        all = all && r.pass;
    }
    j["checks"] = arr;
    j["pass"] = all;
    return j;
}

} // namespace qdl
