#pragma once

// F_q-linear rank-metric codes inside L_{n,q}.

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "gabrank/linpoly.hpp"

namespace gabrank {

inline constexpr std::uint64_t kDefaultElementBudget = std::uint64_t{1} << 24;

/// F_q-subspace of F_q^len kept in reduced row echelon form (pivots are 1,
/// pivot columns are zero in every other row, rows sorted by pivot), so two
/// spaces are equal iff their rows are equal.
class EchelonSpace {
   public:
    EchelonSpace(const Subfield& fq, std::size_t length);

    std::size_t dim() const noexcept { return rows_.size(); }
    std::size_t length() const noexcept { return length_; }
    const std::vector<FqVector>& rows() const noexcept { return rows_; }
    const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }
    const Subfield& fq() const noexcept { return *fq_; }

    /// Residual of v after elimination against the rows; zero iff v is in the space.
    FqVector reduce(FqVector v) const;
    void reduce_in_place(std::span<std::uint8_t> v) const;
    bool contains(const FqVector& v) const;
    /// Adds v; returns true when the dimension grew.
    bool insert(FqVector v);

    friend bool operator==(const EchelonSpace& a, const EchelonSpace& b) noexcept {
        return a.length_ == b.length_ && a.rows_ == b.rows_;
    }

   private:
    const Subfield* fq_;
    std::size_t length_;
    std::vector<FqVector> rows_;
    std::vector<std::size_t> pivots_;
};

EchelonSpace space_of(const FieldCtx& ctx, std::span<const LinPoly> gens);
EchelonSpace space_sum(const EchelonSpace& a, const EchelonSpace& b);
bool contains(const EchelonSpace& space, const LinPoly& f);
inline std::size_t dim(const EchelonSpace& space) { return space.dim(); }

struct Code {
    const FieldCtx* ctx;
    /// F_q-basis.
    std::vector<LinPoly> basis;
    EchelonSpace space;
    std::size_t h;
};

/// Code spanned by the given generators; dependent generators are dropped.
Code make_code(const FieldCtx& ctx, std::span<const LinPoly> generators);
/// Generalized Gabidulin code G_{k,s} = <x, x^{q^s}, ..., x^{q^{s(k-1)}}>_{F_{q^n}}.
/// Errors: BadParameters unless 1 <= k <= n and gcd(s, n) = 1.
Code gabidulin(const FieldCtx& ctx, std::uint32_t k, std::uint32_t s = 1);

/// Calls visit(coefficients, element) for every F_q-combination of `vectors`
/// (including zero) in modular q-ary Gray-code order; each step adds one
/// vector. Stops early when visit returns false. Coefficients are indices.
void gray_enumerate(const Subfield& fq, std::span<const FqVector> vectors,
                    const std::function<bool(std::span<const std::uint8_t>, std::span<const std::uint8_t>)>& visit);

/// Minimum rank over all nonzero codewords. Errors: BudgetExceeded when q^h > budget.
std::uint32_t min_distance(const Code& code, std::uint64_t budget = kDefaultElementBudget);
/// Singleton-like equality q^h = q^{n(n-d+1)}.
bool is_mrd(const Code& code, std::uint64_t budget = kDefaultElementBudget);

struct Equivalence {
    LinPoly left;
    LinPoly right;
    bool adjoint = false;
};

/// {left o f' o right : f in code}, f' = adjoint(f) when requested.
/// Errors: NotInvertible.
Code apply_equiv(const Code& code, const Equivalence& e);

/// Random invertible linearized polynomial (rejection sampling).
template <class Rng>
LinPoly random_invertible(const FieldCtx& ctx, Rng& rng) {
    std::uniform_int_distribution<std::int32_t> dist(-1, static_cast<std::int32_t>(ctx.order()) - 1);
    for (;;) {
        std::vector<Elem> c(ctx.n());
        for (auto& e : c) {
            const std::int32_t k = dist(rng);
            e = k < 0 ? Elem::zero() : Elem::from_log(k);
        }
        LinPoly f(ctx, std::move(c));
        if (lp_rank(f) == ctx.n()) return f;
    }
}

}  // namespace gabrank
