#pragma once

#include <algorithm>
#include <cassert>
#include <memory>
#include <optional>
#include <sstream>

#include "qdl/base.hpp"

namespace qdl {

/// Tower parameters: F_p < F_q < F_{q^m} with q = p^s. The context built
/// from a spec represents the top field F_{q^m}; the middle field F_q is
/// recovered inside it as the fixed set of the q-power Frobenius.
struct FieldSpec {
    uint32_t p = 2;
    uint32_t s = 1;
    uint32_t m = 1;

    uint32_t degree() const { return s * m; } // over F_p
    uint64_t q() const { return checked_pow_u64(p, s); }

    /// Accepts "p", "p^s" or "p^s:m".
    static FieldSpec parse(const std::string& text) {
        FieldSpec fs;
        char caret = 0, colon = 0;
        std::istringstream in(text);
        if (!(in >> fs.p)) throw error(errc::bad_field_spec, "bad field spec: " + text);
        if (in >> caret) {
            if (caret == '^') {
                if (!(in >> fs.s)) throw error(errc::bad_field_spec, "bad field spec: " + text);
                if (in >> colon) {
                    if (colon != ':' || !(in >> fs.m))
                        throw error(errc::bad_field_spec, "bad field spec: " + text);
                }
            } else if (caret == ':') {
                if (!(in >> fs.m)) throw error(errc::bad_field_spec, "bad field spec: " + text);
            } else {
                throw error(errc::bad_field_spec, "bad field spec: " + text);
            }
        }
        if (fs.s == 0 || fs.m == 0) throw error(errc::bad_field_spec, "bad field spec: " + text);
        return fs;
    }

    std::string to_string() const {
        return std::to_string(p) + "^" + std::to_string(s) + ":" + std::to_string(m);
    }

    friend bool operator==(const FieldSpec& a, const FieldSpec& b) {
        return a.p == b.p && a.s == b.s && a.m == b.m;
    }
};

namespace detail {

// Dense polynomials over F_p, lowest coefficient first, used only for modulus
// discovery and for arithmetic in contexts too large for tables.
using PolyFp = std::vector<uint32_t>;

inline void poly_trim(PolyFp& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

inline PolyFp poly_mul(const PolyFp& a, const PolyFp& b, uint32_t p) {
    if (a.empty() || b.empty()) return {};
    PolyFp c(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j)
            c[i + j] = (c[i + j] + a[i] * b[j]) % p;
    }
    poly_trim(c);
    return c;
}

// remainder of a modulo monic m
inline PolyFp poly_mod(PolyFp a, const PolyFp& m, uint32_t p) {
    poly_trim(a);
    const size_t dm = m.size() - 1;
    while (a.size() > dm) {
        uint32_t lead = a.back();
        size_t shift = a.size() - 1 - dm;
        if (lead != 0) {
            for (size_t i = 0; i < m.size(); ++i) {
                uint32_t s = (lead * m[i]) % p;
                uint32_t& c = a[shift + i];
                c = (c + p - s % p) % p;
            }
        }
        poly_trim(a);
        if (a.size() <= dm) break;
    }
    return a;
}

inline bool poly_divides(const PolyFp& d, const PolyFp& f, uint32_t p) {
    return poly_mod(f, d, p).empty();
}

// Candidate coefficient vectors in lexicographic order, c0 compared first.
inline PolyFp nth_monic(uint64_t index, uint32_t deg, uint32_t p) {
    PolyFp f(deg + 1, 0);
    f[deg] = 1;
    for (uint32_t i = deg; i-- > 0;) {
        // digits big-endian: c0 is the most significant digit of `index`
        f[deg - 1 - i] = static_cast<uint32_t>((index / checked_pow_u64(p, i)) % p);
    }
    return f;
}

inline bool is_irreducible(const PolyFp& f, uint32_t p) {
    const uint32_t deg = static_cast<uint32_t>(f.size()) - 1;
    if (deg == 1) return true;
    if (f[0] == 0) return false; // divisible by x
    for (uint32_t d = 1; 2 * d <= deg; ++d) {
        uint64_t count = checked_pow_u64(p, d);
        for (uint64_t idx = 0; idx < count; ++idx) {
            PolyFp g = nth_monic(idx, d, p);
            if (poly_divides(g, f, p)) return false;
        }
    }
    return true;
}

} // namespace detail

constexpr uint64_t kDefaultEnumBound = uint64_t(1) << 24;
constexpr uint64_t kTableLimit = uint64_t(1) << 20;

/// A constructed finite field F_{q^m} = F_p[x]/(modulus). Elements are codes
/// 0..size-1 whose base-p digits are the coefficient vector of the residue,
/// lowest degree first; element order is plain code order. Immutable after
/// construction and safe to share across threads.
class FieldCtx {
  public:
    explicit FieldCtx(FieldSpec spec, uint64_t enum_bound = kDefaultEnumBound)
        : spec_(spec), enum_bound_(enum_bound) {
        if (!is_prime_u64(spec_.p)) throw error(errc::non_prime, "p is not prime: " + std::to_string(spec_.p));
        deg_ = spec_.degree();
        size_ = checked_pow_u64(spec_.p, deg_);
        if (size_ > enum_bound_)
            throw error(errc::degree_overflow,
                        "field size " + std::to_string(size_) + " exceeds enumeration bound " +
                            std::to_string(enum_bound_));
        q_ = spec_.q();
        find_modulus();
        if (size_ <= kTableLimit) build_tables();
    }

    FieldCtx(const FieldCtx&) = delete;
    FieldCtx& operator=(const FieldCtx&) = delete;
    FieldCtx(FieldCtx&&) = default;

    const FieldSpec& spec() const { return spec_; }
    uint32_t p() const { return spec_.p; }
    uint32_t s() const { return spec_.s; }
    uint32_t m() const { return spec_.m; }
    uint64_t q() const { return q_; }
    uint32_t degree() const { return deg_; }
    uint64_t size() const { return size_; }
    bool tabled() const { return !exp_.empty(); }

    /// Modulus coefficients over F_p, constant term first, length degree()+1.
    const std::vector<uint32_t>& modulus() const { return modulus_; }

    std::string modulus_string() const {
        std::string out;
        for (size_t i = 0; i < modulus_.size(); ++i) {
            if (i) out += ',';
            out += std::to_string(modulus_[i]);
        }
        return out;
    }

    Fq zero() const { return Fq{0}; }
    Fq one() const { return Fq{1}; }

    /// The constant c mod p as a field element.
    Fq from_int(uint64_t c) const { return Fq{static_cast<uint32_t>(c % spec_.p)}; }

    Fq from_coeffs(const std::vector<uint32_t>& cs) const {
        uint64_t code = 0, pw = 1;
        for (uint32_t i = 0; i < deg_; ++i) {
            uint32_t c = i < cs.size() ? cs[i] % spec_.p : 0;
            code += c * pw;
            pw *= spec_.p;
        }
        return Fq{static_cast<uint32_t>(code)};
    }

    std::vector<uint32_t> coeffs(Fq a) const {
        std::vector<uint32_t> cs(deg_);
        uint64_t v = a.v;
        for (uint32_t i = 0; i < deg_; ++i) {
            cs[i] = static_cast<uint32_t>(v % spec_.p);
            v /= spec_.p;
        }
        return cs;
    }

    Fq add(Fq a, Fq b) const {
        if (spec_.p == 2) return Fq{a.v ^ b.v};
        if (!addtab_.empty()) return Fq{addtab_[size_t(a.v) * size_ + b.v]};
        return Fq{digits_add(a.v, b.v)};
    }

    Fq neg(Fq a) const {
        if (spec_.p == 2) return a;
        uint32_t out = 0, pw = 1, v = a.v;
        for (uint32_t i = 0; i < deg_; ++i) {
            uint32_t d = v % spec_.p;
            out += (d ? spec_.p - d : 0) * pw;
            v /= spec_.p;
            pw *= spec_.p;
        }
        return Fq{out};
    }

    Fq sub(Fq a, Fq b) const { return add(a, neg(b)); }

    Fq mul(Fq a, Fq b) const {
        if (a.v == 0 || b.v == 0) return Fq{0};
        if (tabled()) {
            uint64_t e = log_[a.v] + log_[b.v];
            uint64_t n = size_ - 1;
            return Fq{exp_[e >= n ? e - n : e]};
        }
        return mul_slow(a, b);
    }

    Fq inv(Fq a) const {
        if (a.v == 0) throw error(errc::zero_element, "inverse of zero");
        if (tabled()) {
            uint64_t n = size_ - 1;
            uint64_t e = (n - log_[a.v]) % n;
            return Fq{exp_[e]};
        }
        return pow(a, size_ - 2); // a^(size-2) = a^{-1}
    }

    Fq div(Fq a, Fq b) const { return mul(a, inv(b)); }

    Fq pow(Fq a, uint64_t e) const {
        if (a.v == 0) return e == 0 ? one() : zero();
        if (tabled()) {
            uint64_t n = size_ - 1;
            return Fq{exp_[(static_cast<unsigned __int128>(log_[a.v]) * (e % n)) % n]};
        }
        Fq r = one(), b = a;
        while (e) {
            if (e & 1) r = mul(r, b);
            b = mul(b, b);
            e >>= 1;
        }
        return r;
    }

    /// q-power Frobenius a -> a^q. Fixes the embedded F_q pointwise; applying
    /// it m times is the identity.
    Fq frob(Fq a) const {
        if (tabled()) return Fq{frob_[a.v]};
        return pow(a, q_);
    }

    Fq frob_iter(Fq a, uint32_t k) const {
        for (uint32_t i = 0; i < k % spec_.m; ++i) a = frob(a);
        return a;
    }

    /// Smallest d >= 1 with a in F_{q^d}; divides m.
    uint32_t min_subfield_degree(Fq a) const {
        Fq x = a;
        for (uint32_t d = 1; d <= spec_.m; ++d) {
            x = frob(x);
            if (x == a && spec_.m % d == 0) return d;
        }
        return spec_.m;
    }

    uint64_t mult_order(Fq a) const {
        if (a.v == 0) throw error(errc::zero_element, "mult_order of zero");
        uint64_t n = size_ - 1;
        if (tabled()) return n / std::gcd(n, static_cast<uint64_t>(log_[a.v]));
        uint64_t ord = n;
        for (auto [f, e] : factorize_u64(n))
            for (uint32_t i = 0; i < e && pow(a, ord / f).v == 1; ++i) ord /= f;
        return ord;
    }

    /// All elements in deterministic code order; first element is 0.
    std::vector<Fq> elements() const {
        if (size_ > enum_bound_)
            throw error(errc::degree_overflow, "enumeration over bound");
        std::vector<Fq> out(size_);
        for (uint64_t i = 0; i < size_; ++i) out[i] = Fq{static_cast<uint32_t>(i)};
        return out;
    }

    /// The embedded F_q: fixed points of frob, in code order. Size q.
    const std::vector<Fq>& subfield() const {
        if (!tabled()) throw error(errc::degree_overflow, "subfield listing needs a tabled context");
        return subfield_;
    }

    /// A fixed generator of the multiplicative group (smallest code).
    Fq generator() const {
        if (!tabled()) throw error(errc::degree_overflow, "no generator table");
        return Fq{exp_[size_ == 2 ? 0 : 1]};
    }

    uint64_t enum_bound() const { return enum_bound_; }

  private:
    void find_modulus() {
        const uint64_t count = checked_pow_u64(spec_.p, deg_);
        for (uint64_t idx = 0; idx < count; ++idx) {
            detail::PolyFp f = detail::nth_monic(idx, deg_, spec_.p);
            if (detail::is_irreducible(f, spec_.p)) {
                modulus_ = f;
                return;
            }
        }
        throw error(errc::config_error, "no irreducible polynomial found"); // unreachable
    }

    uint32_t digits_add(uint32_t a, uint32_t b) const {
        uint32_t out = 0, pw = 1;
        for (uint32_t i = 0; i < deg_; ++i) {
            out += ((a % spec_.p) + (b % spec_.p)) % spec_.p * pw;
            a /= spec_.p;
            b /= spec_.p;
            pw *= spec_.p;
        }
        return out;
    }

    Fq mul_slow(Fq a, Fq b) const {
        detail::PolyFp fa = to_poly(a), fb = to_poly(b);
        detail::PolyFp prod = detail::poly_mul(fa, fb, spec_.p);
        prod = detail::poly_mod(prod, modulus_, spec_.p);
        return from_poly(prod);
    }

    detail::PolyFp to_poly(Fq a) const {
        detail::PolyFp f = coeffs(a);
        detail::poly_trim(f);
        return f;
    }

    Fq from_poly(const detail::PolyFp& f) const {
        std::vector<uint32_t> cs(f.begin(), f.end());
        return from_coeffs(cs);
    }

    void build_tables() {
        const uint64_t n = size_ - 1;
        // addition table for small odd-characteristic fields
        if (spec_.p != 2 && size_ <= 1024) {
            addtab_.resize(size_ * size_);
            for (uint64_t a = 0; a < size_; ++a)
                for (uint64_t b = 0; b < size_; ++b)
                    addtab_[a * size_ + b] = digits_add(uint32_t(a), uint32_t(b));
        }
        // multiplicative generator by order test
        auto factors = factorize_u64(n);
        Fq g{1};
        if (n > 1) {
            for (uint32_t c = 2; c < size_; ++c) {
                Fq cand{c};
                bool ok = true;
                for (auto [f, e] : factors) {
                    if (pow_slow(cand, n / f).v == 1) {
                        ok = false;
                        break;
                    }
                }
                if (ok) {
                    g = cand;
                    break;
                }
            }
        }
        exp_.assign(n, 0);
        log_.assign(size_, 0);
        Fq x{1};
        for (uint64_t i = 0; i < n; ++i) {
            exp_[i] = x.v;
            log_[x.v] = static_cast<uint32_t>(i);
            x = mul_slow(x, g);
        }
        assert(x.v == 1);
        frob_.assign(size_, 0);
        for (uint64_t a = 1; a < size_; ++a)
            frob_[a] = exp_[(static_cast<unsigned __int128>(log_[a]) * (q_ % n)) % n];
        subfield_.clear();
        for (uint64_t a = 0; a < size_; ++a)
            if (frob_[a] == a) subfield_.push_back(Fq{static_cast<uint32_t>(a)});
        assert(subfield_.size() == q_);
    }

    Fq pow_slow(Fq a, uint64_t e) const {
        Fq r{1}, b = a;
        while (e) {
            if (e & 1) r = mul_slow(r, b);
            b = mul_slow(b, b);
            e >>= 1;
        }
        return r;
    }

    FieldSpec spec_;
    uint64_t enum_bound_;
    uint32_t deg_ = 0;
    uint64_t size_ = 0;
    uint64_t q_ = 0;
    std::vector<uint32_t> modulus_;
    std::vector<uint32_t> exp_, log_, frob_;
    std::vector<uint32_t> addtab_;
    std::vector<Fq> subfield_;
};

inline FieldCtx make_field(const FieldSpec& spec, uint64_t enum_bound = kDefaultEnumBound) {
    return FieldCtx(spec, enum_bound);
}

/// Re-encoding of one context's elements inside a larger one. The image of
/// the source generator x is the first root of the source modulus in the
/// destination, so the map is deterministic; it is a field embedding that
/// commutes with the q-Frobenius and any two choices differ by Galois.
class FieldEmbedding {
  public:
    FieldEmbedding(const FieldCtx& src, const FieldCtx& dst) : src_(&src), dst_(&dst) {
        if (src.p() != dst.p() || src.s() != dst.s() || dst.m() % src.m() != 0)
            throw error(errc::incompatible_fields,
                        "no embedding " + src.spec().to_string() + " -> " + dst.spec().to_string());
        Fq beta = find_root();
        powers_.resize(src.degree());
        Fq x = dst.one();
        for (uint32_t i = 0; i < src.degree(); ++i) {
            powers_[i] = x;
            x = dst.mul(x, beta);
        }
    }

    Fq operator()(Fq a) const {
        auto cs = src_->coeffs(a);
        Fq out = dst_->zero();
        for (uint32_t i = 0; i < cs.size(); ++i) {
            if (cs[i] == 0) continue;
            Fq term = powers_[i];
            for (uint32_t rep = 1; rep < cs[i]; ++rep) term = dst_->add(term, powers_[i]);
            out = dst_->add(out, term);
        }
        return out;
    }

    const FieldCtx& src() const { return *src_; }
    const FieldCtx& dst() const { return *dst_; }

  private:
    Fq find_root() const {
        const auto& mod = src_->modulus();
        for (uint64_t c = 0; c < dst_->size(); ++c) {
            Fq x{static_cast<uint32_t>(c)};
            // Horner, highest coefficient first
            Fq acc = dst_->zero();
            for (size_t i = mod.size(); i-- > 0;) {
                acc = dst_->mul(acc, x);
                acc = dst_->add(acc, dst_->from_int(mod[i]));
            }
            if (acc.v == 0) return x;
        }
        throw error(errc::incompatible_fields, "modulus has no root in destination field");
    }

    const FieldCtx* src_;
    const FieldCtx* dst_;
    std::vector<Fq> powers_;
};

} // namespace qdl
