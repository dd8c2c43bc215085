#pragma once

// Numeric certificates for the structure of G_{2,1} in L_{4,q}: the extension
// system for a third trace function, the quartic in (c1, c2), the classes of
// solutions of the (Y, Z) system, and the matrices built from N(lambda) and
// D(lambda). Every routine requires n = 4 (BadParameters otherwise).

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gabrank/rankcode.hpp"

namespace gabrank {

struct ExtParams {
    Elem a1, b1, a2, b2;
};

struct YZPair {
    Elem Y, Z;
};

/// G_{2,1} + <a1 Tr(b1 x), a2 Tr(b2 x)>_{F_q}.
Code extension_space(const FieldCtx& ctx, const ExtParams& p);

/// (alpha3, beta3) with alpha3 Tr(beta3 x) in the extension space for the
/// given c1, c2 in F_q^*, or nullopt when the norm condition fails.
/// beta3 is the solution of beta^(q-1) = A with the smallest exponent.
/// Errors: ZeroParameter (c1 c2 = 0), DegenerateDenominator (N = D = 0).
std::optional<std::pair<Elem, Elem>> extension_candidate(const FieldCtx& ctx, const ExtParams& p, Elem c1, Elem c2);
/// The last two equations of the system (the first two fix gamma and delta).
bool verify_system1(const FieldCtx& ctx, const ExtParams& p, Elem c1, Elem c2, Elem a3, Elem b3);

/// C[k] is the coefficient of c1^k c2^(4-k) in LHS - RHS of the quartic.
std::array<Elem, 5> numden_coeffs(const FieldCtx& ctx, const ExtParams& p);
/// LHS - RHS of the quartic evaluated directly from its eight linear factors.
Elem numden_eval(const FieldCtx& ctx, const ExtParams& p, Elem c1, Elem c2);
Elem eval_binary_quartic(const FieldCtx& ctx, const std::array<Elem, 5>& C, Elem c1, Elem c2);

enum class SistClass { C1, C2, C3, None };
std::string to_string(SistClass c);

/// f1, f2, f3 in y_i = Y^(q^i), z_i = Z^(q^i).
std::array<Elem, 3> sistemone_values(const FieldCtx& ctx, YZPair yz);
bool sistemone_satisfied(const FieldCtx& ctx, YZPair yz);
/// Labels that apply; more than one means the classes overlap.
std::vector<SistClass> sistemone_labels(const FieldCtx& ctx, YZPair yz);
/// Errors: ZeroInput (Y or Z zero), WrongClass (overlapping labels).
SistClass sistemone_classify(const FieldCtx& ctx, YZPair yz);

/// N(lambda) = lambda Z^(q^2) Y^q + 1, D(lambda) = lambda Z^(q^2) Y + 1.
Elem n_of(const FieldCtx& ctx, YZPair yz, Elem lambda);
Elem d_of(const FieldCtx& ctx, YZPair yz, Elem lambda);

/// Dense matrix over F_{q^n}, row-major.
struct BigMatrix {
    std::size_t rows = 0, cols = 0;
    std::vector<Elem> a;
    Elem& at(std::size_t r, std::size_t c) { return a[r * cols + c]; }
    Elem at(std::size_t r, std::size_t c) const { return a[r * cols + c]; }
    BigMatrix block(std::size_t r0, std::size_t nr, std::size_t c0, std::size_t nc) const;
};

std::uint32_t rank_over_big(const FieldCtx& ctx, BigMatrix m);
/// Errors: BadParameters when not square.
Elem det_over_big(const FieldCtx& ctx, BigMatrix m);
/// dim over F_q of {mu in F_q^cols : M mu = 0}.
std::uint32_t fq_nullity(const FieldCtx& ctx, const BigMatrix& m);

/// Ten rows, columns lambda_1..lambda_k then mu9, mu10 (k = lambdas.size()).
/// Errors: BadLambda (lambda not in F_q^*), DegenerateDenominator.
BigMatrix m10_columns(const FieldCtx& ctx, YZPair yz, std::span<const Elem> lambdas);
/// Errors: NeedsBiggerField (q < 9), BadLambda (not 8 distinct in F_q^*),
/// DegenerateDenominator.
BigMatrix build_M10(const FieldCtx& ctx, YZPair yz, std::span<const Elem> lambdas);

struct DetS6 {
    /// The stated product formula.
    Elem closedForm;
    /// det of the 6 x 6 block as displayed (entries are fractions in N).
    Elem eliminationValue;
    /// Same block with each lambda column multiplied by Norm(N(lambda)),
    /// which clears its denominators.
    Elem clearedValue;
};
/// Columns lambda5..lambda8, mu9, mu10 and the first six rows.
/// Errors: WrongClass unless class C2 or C3.
DetS6 det_S6(const FieldCtx& ctx, YZPair yz, std::span<const Elem> lambda5to8);
/// Columns lambda4..lambda8, mu9, mu10 and the first seven rows.
/// Errors: WrongClass for pairs that do not solve the system.
bool det_S7_zero(const FieldCtx& ctx, YZPair yz, std::span<const Elem> lambda4to8);

/// 16 x 11 matrix with Y = 1/Z^(q^2+q), Z' = Z^q, lambda_i = lambda1^i.
/// Errors: NeedsBiggerField (q < 5), BadLambda, BadZ, DegenerateDenominator.
BigMatrix build_M16(const FieldCtx& ctx, Elem Z, Elem lambda1);
/// Closed-form factorization of the 16 x 11 determinant claim.
Elem detM_formula(const FieldCtx& ctx, Elem Z, Elem lambda1);

/// F_lambda = alpha2 beta2 D^(q^2+q+1)/N^(q+1) x + alpha2 beta2^q D^(q^2+q)/N^q x^q
///          + alpha2 beta2^(q^2) D^(q^2) x^(q^2) + alpha2 beta2^(q^3) N^(q^2) x^(q^3).
LinPoly f_lambda(const FieldCtx& ctx, const ExtParams& p, Elem lambda);

/// Element of F_q^* with the given index (1 .. q-1).
inline Elem fq_unit(const FieldCtx& ctx, std::uint32_t m) {
    return Elem::from_log(static_cast<std::int32_t>((m - 1) * ctx.fq_gen_exp()));
}

enum class ClaimStatus { Pass, Fail, Vacuous };
std::string to_string(ClaimStatus s);

struct ClaimResult {
    std::string claimId;
    std::uint32_t q = 0;
    ClaimStatus status = ClaimStatus::Pass;
    std::optional<std::string> counterexample;
    std::string detail;
};

struct TheoremOptions {
    std::uint64_t seed = 1;
    /// Random instances per class for the rank and determinant claims.
    std::uint32_t instances = 50;
    /// Random parameter sets for the quartic identity.
    std::uint32_t quarticParams = 100;
    /// Exhaustive (Y, Z) enumeration up to this many pairs, sampling beyond.
    std::uint64_t exhaustiveLimit = 20'000'000;
    std::uint64_t samples = 1'000'000;
};

ClaimResult check_sistemone(const FieldCtx& ctx, const TheoremOptions& opt = {});
ClaimResult check_quartic(const FieldCtx& ctx, const TheoremOptions& opt = {});
ClaimResult check_numden_vanishing(const FieldCtx& ctx, const TheoremOptions& opt = {});
ClaimResult check_extension_candidates(const FieldCtx& ctx, const TheoremOptions& opt = {});
ClaimResult check_f_lambda(const FieldCtx& ctx, const TheoremOptions& opt = {});
/// Rank of M10 per class (2 / 6 / 6); vacuous for q < 9.
ClaimResult check_ranghi(const FieldCtx& ctx, const TheoremOptions& opt = {});
ClaimResult check_frobenius_nullspace(const FieldCtx& ctx, const TheoremOptions& opt = {});
ClaimResult check_det_s6_s7(const FieldCtx& ctx, const TheoremOptions& opt = {});
/// Existence of a full-rank M16 and agreement of detM_formula with the rank.
ClaimResult check_m16(const FieldCtx& ctx, const TheoremOptions& opt = {});

/// All claims at one q (field built with the default modulus for n = 4).
std::vector<ClaimResult> verify_theorems(std::uint32_t q, const TheoremOptions& opt = {});

}  // namespace gabrank
