#pragma once

#include "qdl/matrix.hpp"

namespace qdl {

namespace detail {

inline uint32_t modinv_u32(uint32_t a, uint32_t p) {
    uint32_t r = 1;
    for (uint32_t e = p - 2; e; e >>= 1) {
        if (e & 1) r = (r * a) % p;
        a = (a * a) % p;
    }
    return r;
}

inline uint32_t leading_index(const std::vector<uint32_t>& v) {
    for (uint32_t i = 0; i < v.size(); ++i)
        if (v[i] != 0) return i;
    return static_cast<uint32_t>(v.size());
}

// Incremental echelon basis over F_p; insert() reduces and returns true when
// the vector enlarged the span.
struct FpEchelon {
    uint32_t p;
    std::vector<std::vector<uint32_t>> rows; // sorted by leading index

    explicit FpEchelon(uint32_t prime) : p(prime) {}

    bool insert(std::vector<uint32_t> v) {
        for (const auto& r : rows) {
            uint32_t lead = leading_index(r);
            if (lead < v.size() && v[lead] != 0) {
                uint32_t f = (v[lead] * modinv_u32(r[lead], p)) % p;
                for (uint32_t t = lead; t < v.size(); ++t)
                    v[t] = (v[t] + p - (f * r[t]) % p) % p;
            }
        }
        if (leading_index(v) == v.size()) return false;
        rows.push_back(std::move(v));
        std::sort(rows.begin(), rows.end(),
                  [](const auto& a, const auto& b) { return leading_index(a) < leading_index(b); });
        return true;
    }
};

} // namespace detail

/// corank(x) = dim_{F_q} { lambda in F_q^n : sum lambda_i x_i = 0 }, by brute
/// scan over all q^n linear forms. x lies in stratum F(i) iff corank >= i.
inline uint32_t corank_brute(const FieldCtx& k, const std::vector<Fq>& x) {
    const auto& fq = k.subfield();
    const uint32_t n = static_cast<uint32_t>(x.size());
    uint64_t solutions = 0;
    std::vector<uint32_t> lambda(n, 0);
    while (true) {
        Fq acc = k.zero();
        for (uint32_t i = 0; i < n; ++i) acc = k.add(acc, k.mul(fq[lambda[i]], x[i]));
        if (acc.v == 0) ++solutions;
        uint32_t ci = 0;
        while (ci < n && ++lambda[ci] == fq.size()) lambda[ci++] = 0;
        if (ci == n) break;
    }
    // solutions = q^corank
    uint32_t corank = 0;
    while (solutions > 1) {
        solutions /= fq.size();
        ++corank;
    }
    return corank;
}

/// Same value by F_q-linear algebra: corank = n - dim_{F_q} span(x_i). The
/// F_q-span of the coordinates equals the F_p-span of {x_i f_j} for an
/// F_p-basis {f_j} of the embedded F_q, and the F_p-dimension divides by s.
inline uint32_t corank_rank(const FieldCtx& k, const std::vector<Fq>& x) {
    const uint32_t n = static_cast<uint32_t>(x.size());
    const uint32_t s = k.s();
    detail::FpEchelon sub(k.p());
    std::vector<Fq> basis;
    for (Fq b : k.subfield()) {
        if (sub.insert(k.coeffs(b))) {
            basis.push_back(b);
            if (basis.size() == s) break;
        }
    }
    detail::FpEchelon span(k.p());
    uint32_t rank = 0;
    for (uint32_t i = 0; i < n; ++i)
        for (Fq f : basis)
            if (span.insert(k.coeffs(k.mul(x[i], f)))) ++rank;
    if (rank % s != 0) throw error(errc::config_error, "corank_rank: F_p rank not divisible by s");
    return n - rank / s;
}

struct StrataCensus {
    uint32_t n = 0;
    uint64_t q = 0;
    uint32_t m = 0;
    std::vector<uint64_t> counts;      // counts[i] = #{x : corank(x) = i}, i = 0..n
    std::vector<uint64_t> predictions; // gauss(n,i,q) * prod_{j<n-i}(q^m - q^j)
    bool pass = false;
};

/// Exhaustive corank histogram over F_{q^m}^n with the closed-form counts
/// attached. Both corank routes are evaluated on every point and must agree.
inline StrataCensus strata_census(const FieldCtx& k, uint32_t n) {
    uint64_t total = checked_pow_u64(k.size(), n);
    if (total > k.enum_bound()) throw error(errc::degree_overflow, "census over bound");
    StrataCensus sc;
    sc.n = n;
    sc.q = k.q();
    sc.m = k.m();
    sc.counts.assign(n + 1, 0);
    std::vector<Fq> x(n, Fq{0});
    while (true) {
        uint32_t cb = corank_brute(k, x);
        uint32_t cr = corank_rank(k, x);
        if (cb != cr) throw error(errc::config_error, "corank routes disagree");
        ++sc.counts[cb];
        uint32_t ci = 0;
        while (ci < n && ++x[ci].v == k.size()) x[ci++].v = 0;
        if (ci == n) break;
    }
    uint64_t qm = k.size();
    sc.predictions.assign(n + 1, 0);
    for (uint32_t i = 0; i <= n; ++i) {
        uint64_t pred = gauss_binomial(n, i, sc.q);
        uint64_t qj = 1;
        for (uint32_t j = 0; j + i < n; ++j) {
            pred = checked_mul_u64(pred, qm - qj);
            qj = checked_mul_u64(qj, sc.q);
        }
        sc.predictions[i] = pred;
    }
    uint64_t sum = 0;
    for (auto c : sc.counts) sum += c;
    sc.pass = (sc.counts == sc.predictions) && (sum == total);
    return sc;
}

} // namespace qdl
