#pragma once

// q-linearized polynomials f(x) = sum_{i<n} f_i x^{q^i} over F_{q^n}, i.e. the
// F_q-algebra End_{F_q}(F_{q^n}) with composition modulo x^{q^n} - x.

#include <cstdint>
#include <span>
#include <vector>

#include "gabrank/field.hpp"

namespace gabrank {

/// Coordinates over F_q (Subfield indices).
using FqVector = std::vector<std::uint8_t>;

class LinPoly {
   public:
    /// Zero polynomial.
    explicit LinPoly(const FieldCtx& ctx);
    /// Throws BadParameters unless coeffs.size() == n.
    LinPoly(const FieldCtx& ctx, std::vector<Elem> coeffs);

    static LinPoly identity(const FieldCtx& ctx);
    /// c * x^{q^i}, i taken modulo n.
    static LinPoly monomial(const FieldCtx& ctx, std::uint32_t i, Elem c);

    const FieldCtx& ctx() const noexcept { return *ctx_; }
    std::span<const Elem> coeffs() const noexcept { return coeffs_; }
    Elem operator[](std::size_t i) const noexcept { return coeffs_[i]; }
    std::size_t size() const noexcept { return coeffs_.size(); }
    bool is_zero() const noexcept;

    /// Same context and same coefficients.
    friend bool operator==(const LinPoly& a, const LinPoly& b) noexcept {
        return a.ctx_ == b.ctx_ && a.coeffs_ == b.coeffs_;
    }

   private:
    const FieldCtx* ctx_;
    std::vector<Elem> coeffs_;
};

Elem lp_eval(const LinPoly& f, Elem x);
LinPoly lp_add(const LinPoly& f, const LinPoly& g);
LinPoly lp_sub(const LinPoly& f, const LinPoly& g);
LinPoly lp_scale(const LinPoly& f, Elem c);
/// f o g; h_k = sum_{i+j = k mod n} f_i g_j^{q^i}.
LinPoly lp_compose(const LinPoly& f, const LinPoly& g);
/// Rank of x -> f(x) as an F_q-linear map of F_{q^n}.
std::uint32_t lp_rank(const LinPoly& f);
/// n x n matrix over F_q (row-major): column c holds the coordinates of f(b_c).
FqVector eval_matrix(const LinPoly& f);

/// alpha * Tr(beta x), coefficients alpha * beta^{q^i}. Throws ZeroParameter.
LinPoly trace_poly(const FieldCtx& ctx, Elem alpha, Elem beta);
/// a * f(b x), coefficients a * f_i * b^{q^i}.
LinPoly lp_twist(const LinPoly& f, Elem a, Elem b);
/// Adjoint with respect to the trace form: sum f_i^{q^{n-i}} x^{q^{n-i}}.
LinPoly lp_adjoint(const LinPoly& f);

/// Concatenated F_q-coordinates of the n coefficients; length n^2.
FqVector lp_to_vec(const LinPoly& f);
LinPoly vec_to_lp(const FieldCtx& ctx, std::span<const std::uint8_t> v);

namespace fqla {
/// Rank of a rows x cols matrix over F_q (row-major, destroyed).
std::uint32_t rank_in_place(const Subfield& fq, std::span<std::uint8_t> m, std::size_t rows, std::size_t cols);
inline std::uint32_t rank(const Subfield& fq, FqVector m, std::size_t rows, std::size_t cols) {
    return rank_in_place(fq, m, rows, cols);
}
}  // namespace fqla

}  // namespace gabrank
