#pragma once

// Finite field F_{p^e} in discrete-log form, with a distinguished subfield
// tower F_p ⊂ F_q ⊂ F_{q^n}, q = p^s, e = s*n.

#include <compare>
#include <cstdint>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gabrank/error.hpp"

namespace gabrank {

inline constexpr std::uint64_t kDefaultFieldBudget = std::uint64_t{1} << 24;

struct FieldSpec {
    std::uint32_t p = 2;
    std::uint32_t s = 1;
    std::uint32_t n = 1;
    /// Monic modulus over F_p, highest degree first; size s*n + 1.
    std::vector<std::uint32_t> modulus;

    std::uint32_t degree() const noexcept { return s * n; }
    bool operator==(const FieldSpec&) const = default;
};

/// Parses "p=2 s=1 n=4 mod=10011". The modulus is a digit string, highest
/// degree first; for p > 10 a comma separated list ("mod=1,0,3,7,2") is used.
FieldSpec parse_field_spec(std::string_view text);
std::string format_field_spec(const FieldSpec& spec);
std::string modulus_digits(const FieldSpec& spec);
/// Human form, e.g. "x^4+x+1" or "x^4-x^3-1" (coefficient p-1 printed as minus).
std::string modulus_polynomial(const FieldSpec& spec);

/// Field element: zero, or eta^k with k in [0, Q-2].
class Elem {
   public:
    constexpr Elem() noexcept = default;

    static constexpr Elem zero() noexcept { return Elem{}; }
    /// Caller guarantees 0 <= k < Q-1; use FieldCtx::exp for unreduced exponents.
    static constexpr Elem from_log(std::int32_t k) noexcept { return Elem{k}; }

    constexpr bool is_zero() const noexcept { return log_ < 0; }
    /// -1 for zero.
    constexpr std::int32_t log() const noexcept { return log_; }

    constexpr auto operator<=>(const Elem&) const noexcept = default;

   private:
    constexpr explicit Elem(std::int32_t k) noexcept : log_(k) {}
    std::int32_t log_ = -1;
};

/// Arithmetic of F_q on small indices. Index 0 is zero, index m+1 is
/// eta^(m * (Q-1)/(q-1)); in particular index 1 is the unit.
class Subfield {
   public:
    std::uint32_t size() const noexcept { return q_; }
    std::uint8_t add(std::uint8_t a, std::uint8_t b) const noexcept { return add_[a * q_ + b]; }
    std::uint8_t sub(std::uint8_t a, std::uint8_t b) const noexcept { return add_[a * q_ + neg_[b]]; }
    std::uint8_t mul(std::uint8_t a, std::uint8_t b) const noexcept { return mul_[a * q_ + b]; }
    std::uint8_t neg(std::uint8_t a) const noexcept { return neg_[a]; }
    /// inv(0) is 0; callers check.
    std::uint8_t inv(std::uint8_t a) const noexcept { return inv_[a]; }
    Elem elem(std::uint8_t index) const noexcept { return elems_[index]; }

   private:
    friend class FieldCtx;
    std::uint32_t q_ = 0;
    std::vector<std::uint8_t> add_, mul_, neg_, inv_;
    std::vector<Elem> elems_;
};

class FieldCtx;
using FieldHandle = std::shared_ptr<const FieldCtx>;

/// Immutable after construction; all queries are thread-safe. Lazily built
/// tables (subfield arithmetic, F_q coordinates) are guarded by call_once.
class FieldCtx {
   public:
    FieldCtx(const FieldCtx&) = delete;
    FieldCtx& operator=(const FieldCtx&) = delete;

    const FieldSpec& spec() const noexcept { return spec_; }
    std::uint32_t p() const noexcept { return spec_.p; }
    std::uint32_t q() const noexcept { return q_; }
    std::uint32_t n() const noexcept { return spec_.n; }
    /// Q = q^n.
    std::uint32_t size() const noexcept { return size_; }
    /// Q - 1, the order of eta.
    std::uint32_t order() const noexcept { return order_; }
    /// (Q-1)/(q-1); eta^fq_gen_exp generates F_q^*.
    std::uint32_t fq_gen_exp() const noexcept { return fq_gen_exp_; }

    Elem one() const noexcept { return Elem::from_log(0); }
    Elem eta() const noexcept { return Elem::from_log(order_ > 1 ? 1 : 0); }
    Elem exp(std::int64_t k) const noexcept;
    Elem minus_one() const noexcept;

    Elem add(Elem a, Elem b) const noexcept {
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        std::int32_t d = b.log() - a.log();
        if (d < 0) d += static_cast<std::int32_t>(order_);
        const std::int32_t z = zech_[static_cast<std::size_t>(d)];
        if (z < 0) return Elem::zero();
        std::int32_t r = a.log() + z;
        if (r >= static_cast<std::int32_t>(order_)) r -= static_cast<std::int32_t>(order_);
        return Elem::from_log(r);
    }
    Elem mul(Elem a, Elem b) const noexcept {
        if (a.is_zero() || b.is_zero()) return Elem::zero();
        std::int32_t r = a.log() + b.log();
        if (r >= static_cast<std::int32_t>(order_)) r -= static_cast<std::int32_t>(order_);
        return Elem::from_log(r);
    }
    Elem neg(Elem a) const noexcept { return mul(a, minus_one_); }
    Elem sub(Elem a, Elem b) const noexcept { return add(a, neg(b)); }
    /// Throws DivisionByZero on zero.
    Elem inv(Elem a) const;
    Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
    /// a^e for e >= 0 (0^0 = 1).
    Elem pow(Elem a, std::uint64_t e) const noexcept;
    /// a^e for any e; negative exponents throw DivisionByZero on zero.
    Elem pow_signed(Elem a, std::int64_t e) const;

    /// x^(q^times).
    Elem frob(Elem x, std::uint32_t times = 1) const noexcept;
    /// Relative trace F_{q^n} -> F_q.
    Elem trace(Elem x) const noexcept;
    /// Relative norm x^((Q-1)/(q-1)).
    Elem norm(Elem x) const noexcept { return pow(x, fq_gen_exp_); }

    bool in_subfield(Elem x) const noexcept { return frob(x) == x; }
    /// x in F_{q^d}, i.e. x^(q^d) = x.
    bool in_subfield_degree(Elem x, std::uint32_t d) const noexcept { return frob(x, d) == x; }
    std::vector<Elem> fq_elements() const;

    /// Base-p packed polynomial representation: sum c_i p^i for c_i the coefficient of x^i.
    std::uint32_t to_poly(Elem x) const noexcept {
        return x.is_zero() ? 0u : antilog_[static_cast<std::size_t>(x.log())];
    }
    Elem from_poly(std::uint32_t v) const noexcept { return Elem::from_log(log_[v]); }

    /// F_q arithmetic on indices; requires q <= 256 (BudgetExceeded otherwise).
    const Subfield& fq() const;
    /// F_q-index of x, or -1 if x is not in F_q.
    int fq_index(Elem x) const noexcept;

    /// Fixed F_q-basis of F_{q^n}: greedy scan of 1, eta, eta^2, ...
    std::span<const Elem> fq_basis() const;
    /// n coordinates (F_q indices) of x over fq_basis().
    std::span<const std::uint8_t> coords(Elem x) const;
    Elem from_coords(std::span<const std::uint8_t> c) const;

   private:
    friend FieldHandle build_field(const FieldSpec&, std::uint64_t);
    FieldCtx() = default;
    void build_subfield() const;
    void build_coords() const;

    FieldSpec spec_;
    std::uint32_t q_ = 0, size_ = 0, order_ = 0, fq_gen_exp_ = 0;
    Elem minus_one_;
    std::vector<std::int32_t> zech_;      // log(1 + eta^k), -1 for zero
    std::vector<std::uint32_t> antilog_;  // k -> packed poly
    std::vector<std::int32_t> log_;       // packed poly -> k, -1 for zero
    std::vector<std::uint64_t> qpow_;     // q^t mod (Q-1), t < n

    mutable std::once_flag subfield_once_, coords_once_;
    mutable Subfield subfield_;
    mutable std::vector<Elem> basis_;
    mutable std::vector<std::uint8_t> coords_;  // (log+1)*n
};

/// Builds the field; verifies irreducibility and primitivity of the modulus.
/// Errors: BadParameters, ReducibleModulus, NotPrimitiveRoot, BudgetExceeded.
FieldHandle build_field(const FieldSpec& spec, std::uint64_t budget = kDefaultFieldBudget);

/// Deterministic default modulus: the reference-dataset polynomial when one exists
/// for (p, s, n), else the lexicographically smallest primitive polynomial.
FieldSpec default_field_spec(std::uint32_t q, std::uint32_t n);
/// Decomposes q = p^s; throws BadParameters when q is not a prime power.
std::pair<std::uint32_t, std::uint32_t> prime_power(std::uint32_t q);
bool is_prime(std::uint64_t v) noexcept;

namespace polyfp {
// Dense polynomials over F_p, lowest degree first. Exposed for tests.
bool is_irreducible(const std::vector<std::uint32_t>& monic_low_first, std::uint32_t p);
bool is_primitive(const std::vector<std::uint32_t>& monic_low_first, std::uint32_t p);
}  // namespace polyfp

}  // namespace gabrank
