#pragma once

// Tensor rank of a code C inside L_{n,q} through the rank-one cover criterion:
// trk(C) is the least r such that some r-dimensional space spanned by trace
// functions contains C.

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gabrank/rankcode.hpp"

namespace gabrank {

/// eta^i Tr(eta^j x). Canonical iff 0 <= i, j < (Q-1)/(q-1).
struct RankOneLine {
    std::uint32_t i = 0;
    std::uint32_t j = 0;
    auto operator<=>(const RankOneLine&) const = default;
};

RankOneLine canonical_line(const FieldCtx& ctx, std::uint64_t i, std::uint64_t j);
LinPoly line_poly(const FieldCtx& ctx, RankOneLine line);
/// The canonical line through f when lp_rank(f) == 1, else nullopt.
std::optional<RankOneLine> line_of(const LinPoly& f);
/// All ((Q-1)/(q-1))^2 canonical lines in lexicographic order.
std::vector<RankOneLine> all_rank_one_lines(const FieldCtx& ctx);
inline std::size_t line_index(const FieldCtx& ctx, RankOneLine l) {
    return std::size_t{l.i} * ctx.fq_gen_exp() + l.j;
}

/// h + d - 1.
std::uint32_t kruskal_bound(const Code& code, std::uint64_t budget = kDefaultElementBudget);

struct SpanResult {
    std::size_t spanDim = 0;
    /// Independent rank-one elements found (all spanDim of them).
    std::vector<RankOneLine> witnesses;
    std::uint64_t visited = 0;
};

/// Span of the rank-one elements of U by Gray-code enumeration of all q^dim
/// elements, stopping once the span fills U (unless earlyExit is false).
/// Errors: BudgetExceeded when q^dim U > budget.
SpanResult rank_ones_spanning(const FieldCtx& ctx, const EchelonSpace& U, std::uint64_t budget = kDefaultElementBudget,
                              bool earlyExit = true);
/// Same quantity by testing every canonical line for membership in U.
SpanResult rank_ones_spanning_lines(const FieldCtx& ctx, const EchelonSpace& U);

enum class CheckMethod {
    /// Lines bucketed by their normalized residual modulo the code.
    Buckets,
    /// Gray-code enumeration of U for every candidate (slow; cross-check).
    Enumerate,
};

struct SearchConfig {
    /// Largest extension size tried; negative means n^2 - h.
    int tMax = -1;
    /// Max q^{dim U} elements per enumeration check.
    std::uint64_t elementBudget = kDefaultElementBudget;
    bool useSymmetry = true;
    unsigned threads = 1;
    std::uint64_t seed = 1;
    CheckMethod method = CheckMethod::Buckets;
    /// A level whose estimated cost (candidates * q^{h+t}) exceeds this is
    /// skipped and the result becomes an interval. 0 means unlimited.
    long double maxLevelWork = 0;
    /// Seconds; 0 means no limit. Exceeding it throws Timeout.
    double timeLimit = 0;
    /// Upper bound basis known in advance (e.g. from the reference table);
    /// the search stops once the lower bound meets it.
    std::vector<RankOneLine> knownUpperBasis;
};

enum class SearchStatus { Exact, LowerBoundOnly, UpperBoundOnly, Interval };
std::string to_string(SearchStatus s);

struct SearchResult {
    SearchStatus status = SearchStatus::LowerBoundOnly;
    std::uint32_t trkLow = 0;
    std::uint32_t trkHigh = 0;
    std::vector<RankOneLine> basis;
    std::uint64_t nodes = 0;
    double ms = 0;
    /// Extension sizes proved impossible.
    std::vector<std::uint32_t> refutedLevels;
    /// Extension sizes skipped by the work cap.
    std::vector<std::uint32_t> skippedLevels;
};

/// Precomputed per-code data shared by all checks: line vectors and the
/// residual buckets. Read-only after construction.
class LineIndex {
   public:
    LineIndex(const Code& code, std::uint64_t maxLines = kDefaultElementBudget);

    const Code& code() const noexcept { return *code_; }
    const std::vector<RankOneLine>& lines() const noexcept { return lines_; }
    const FqVector& vec(std::size_t idx) const noexcept { return vecs_[idx]; }
    /// Residual of the line modulo the code in the non-pivot coordinates.
    const FqVector& residual(std::size_t idx) const noexcept { return res_[idx]; }
    /// Lines already inside the code.
    const std::vector<std::uint32_t>& inside() const noexcept { return inside_; }
    /// Lines whose normalized residual equals the normalized v (v != 0).
    std::span<const std::uint32_t> bucket(const FqVector& normalizedResidual) const;
    std::uint64_t key(const FqVector& normalizedResidual) const;
    /// Scales v so its first nonzero coordinate is 1; false when v = 0.
    bool normalize(FqVector& v) const;

   private:
    const Code* code_;
    std::vector<RankOneLine> lines_;
    std::vector<FqVector> vecs_;
    std::vector<FqVector> res_;
    std::vector<std::uint32_t> inside_;
    std::vector<std::uint64_t> keys_;       // sorted distinct keys
    std::vector<std::uint32_t> offsets_;    // bucket k is order_[offsets_[k], offsets_[k+1])
    std::vector<std::uint32_t> order_;
};

/// Extension check with the precomputed index: dim(C + <gens>) = h + t and
/// the rank-one elements of that space span it. On success `basis` (if given)
/// receives h + t independent lines.
bool check_extension(const LineIndex& index, std::span<const std::uint32_t> gens,
                     std::vector<RankOneLine>* basis = nullptr);
/// Convenience overload on lines; `method` selects the checker.
bool check_extension(const Code& code, std::span<const RankOneLine> gens, std::uint64_t budget = kDefaultElementBudget,
                     CheckMethod method = CheckMethod::Buckets, std::vector<RankOneLine>* basis = nullptr);

/// Whether f -> a f(bx) maps the code to itself for all a, b != 0; checked on
/// the generators (eta, 1) and (1, eta) of that group.
bool twist_stabilizes(const Code& code);
/// [(0,0)] when twist_stabilizes, else all lines.
std::vector<RankOneLine> canonical_first_gens(const Code& code);

/// Estimated enumeration cost of level t: candidates * q^{h+t}.
long double level_work(const Code& code, std::uint32_t t, bool symmetric);

/// Errors: BudgetExceeded, Timeout.
SearchResult exact_tensor_rank(const Code& code, const SearchConfig& cfg = {});

enum class RandomStrategy {
    /// Every trial draws R - h random lines.
    Plain,
    /// Every trial draws R - h - 1 random lines and tries all completions.
    Completion,
};

SearchResult random_upper_bound(const Code& code, std::uint32_t R, std::uint64_t trials, std::uint64_t seed,
                                RandomStrategy strategy = RandomStrategy::Completion);

struct BasisReport {
    bool rankOne = true;
    bool independent = true;
    bool containsCode = true;
    std::size_t size = 0;
    std::uint32_t kruskal = 0;
    bool mtr = false;
    std::vector<std::string> failures;
    bool ok() const noexcept { return failures.empty(); }
};

BasisReport verify_perfect_basis(const Code& code, std::span<const RankOneLine> basis,
                                 std::uint64_t budget = kDefaultElementBudget);

}  // namespace gabrank
