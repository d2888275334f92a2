#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace qdl {

/// Error codes shared by all modules. Operations throw qdl::error with a
/// code from this list instead of module-specific exception classes.
enum class errc {
    non_prime,
    degree_overflow,
    zero_element,
    not_coprime,
    ell_equals_p,
    bad_field_spec,
    incompatible_fields,
    singular_matrix,
    singular_moore,
    order_overflow,
    not_unitriangular,
    membership_violation,
    non_termination,
    not_on_variety,
    ladder_exhausted,
    fiber_size_mismatch,
    companion_mismatch,
    non_additive_expansion,
    truncation_too_small,
    config_error,
};

class error : public std::runtime_error {
  public:
    error(errc c, const std::string& what) : std::runtime_error(what), code_(c) {}
    errc code() const { return code_; }

  private:
    errc code_;
};

/// An element of a finite field, encoded as an index into its FieldCtx.
/// Meaningless without the context that produced it.
struct Fq {
    uint32_t v = 0;
    friend bool operator==(Fq a, Fq b) { return a.v == b.v; }
    friend bool operator!=(Fq a, Fq b) { return a.v != b.v; }
    friend bool operator<(Fq a, Fq b) { return a.v < b.v; }
};

inline bool is_prime_u64(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

/// Prime factorization by trial division; adequate for the word-sized
/// group orders this library works with.
inline std::vector<std::pair<uint64_t, uint32_t>> factorize_u64(uint64_t n) {
    std::vector<std::pair<uint64_t, uint32_t>> out;
    for (uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            uint32_t e = 0;
            while (n % d == 0) n /= d, ++e;
            out.emplace_back(d, e);
        }
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

/// Writes q = p^s with p prime; throws if q is not a prime power.
inline std::pair<uint64_t, uint32_t> prime_power_split(uint64_t q) {
    if (q < 2) throw error(errc::bad_field_spec, "not a prime power: " + std::to_string(q));
    auto f = factorize_u64(q);
    if (f.size() != 1)
        throw error(errc::bad_field_spec, "not a prime power: " + std::to_string(q));
    return {f[0].first, f[0].second};
}

inline uint64_t checked_mul_u64(uint64_t a, uint64_t b) {
    uint64_t r;
    if (__builtin_mul_overflow(a, b, &r))
        throw error(errc::order_overflow, "64-bit overflow in product");
    return r;
}

inline uint64_t checked_pow_u64(uint64_t b, uint32_t e) {
    uint64_t r = 1;
    for (uint32_t i = 0; i < e; ++i) r = checked_mul_u64(r, b);
    return r;
}

inline uint64_t pow_mod_u64(uint64_t b, uint64_t e, uint64_t m) {
    uint64_t r = 1 % m;
    b %= m;
    while (e) {
        if (e & 1) r = (r * b) % m;
        b = (b * b) % m;
        e >>= 1;
    }
    return r;
}

/// Multiplicative order of q modulo ell. Requires gcd(q, ell) = 1.
inline uint64_t ord_mod(uint64_t q, uint64_t ell) {
    if (ell < 2 || std::gcd(q, ell) != 1)
        throw error(errc::not_coprime, "ord_mod: arguments not coprime");
    uint64_t r = 1, x = q % ell;
    while (x != 1) {
        x = (x * q) % ell;
        ++r;
        if (r > ell) throw error(errc::not_coprime, "ord_mod: no order found");
    }
    return r;
}

/// splitmix64; the single PRNG used for every seeded trial so that a seed
/// fully determines a run.
struct SplitMix64 {
    uint64_t state = 0;
    explicit SplitMix64(uint64_t seed = 0) : state(seed) {}
    uint64_t next() {
        uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    // uniform in [0, n); n > 0
    uint64_t below(uint64_t n) { return next() % n; }
};

} // namespace qdl
