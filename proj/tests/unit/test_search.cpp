#include <gtest/gtest.h>

#include <random>
#include <set>

#include "gabrank/search.hpp"
#include "gabrank/table1.hpp"

using namespace gabrank;

namespace {

std::vector<RankOneLine> random_lines(const FieldCtx& ctx, std::size_t t, std::mt19937_64& rng) {
    std::uniform_int_distribution<std::uint32_t> d(0, ctx.fq_gen_exp() - 1);
    std::set<RankOneLine> s;
    while (s.size() < t) s.insert({d(rng), d(rng)});
    return {s.begin(), s.end()};
}

}  // namespace

TEST(Lines, CanonicalFormsAndCount) {
    auto f = build_field(default_field_spec(3, 3));
    const FieldCtx& ctx = *f;
    const auto all = all_rank_one_lines(ctx);
    const std::size_t g = ctx.fq_gen_exp();
    ASSERT_EQ(all.size(), g * g);
    for (std::size_t k = 0; k < all.size(); ++k) EXPECT_EQ(line_index(ctx, all[k]), k);
    // eta^i Tr(eta^j x) and its F_q multiples map to one line
    for (std::uint64_t i = 0; i < ctx.order(); i += 5) {
        for (std::uint64_t j = 0; j < ctx.order(); j += 7) {
            const RankOneLine l = canonical_line(ctx, i, j);
            const auto back = line_of(trace_poly(ctx, ctx.exp(static_cast<std::int64_t>(i)), ctx.exp(static_cast<std::int64_t>(j))));
            ASSERT_TRUE(back.has_value());
            EXPECT_EQ(*back, l);
        }
    }
    EXPECT_FALSE(line_of(LinPoly::identity(ctx)).has_value());
}

TEST(Lines, DistinctLinesAreNotProportional) {
    auto f = build_field(default_field_spec(2, 3));
    const FieldCtx& ctx = *f;
    std::set<FqVector> seen;
    for (RankOneLine l : all_rank_one_lines(ctx)) EXPECT_TRUE(seen.insert(lp_to_vec(line_poly(ctx, l))).second);
    EXPECT_EQ(seen.size(), 49u);
}

TEST(Kruskal, BoundValues) {
    auto f2 = build_field(default_field_spec(2, 4));
    EXPECT_EQ(kruskal_bound(gabidulin(*f2, 2, 1)), 10u);
    EXPECT_EQ(kruskal_bound(gabidulin(*f2, 3, 1)), 13u);
    auto f3 = build_field(default_field_spec(2, 3));
    EXPECT_EQ(kruskal_bound(gabidulin(*f3, 2, 1)), 7u);
}

TEST(Spanning, EnumerationAgreesWithLineScan) {
    auto f = build_field(default_field_spec(2, 4));
    const FieldCtx& ctx = *f;
    std::mt19937_64 rng(5);
    const Code c = gabidulin(ctx, 2, 1);
    for (int it = 0; it < 8; ++it) {
        EchelonSpace U = c.space;
        for (RankOneLine l : random_lines(ctx, 1 + it % 4, rng)) U.insert(lp_to_vec(line_poly(ctx, l)));
        const SpanResult a = rank_ones_spanning(ctx, U, kDefaultElementBudget, false);
        const SpanResult b = rank_ones_spanning_lines(ctx, U);
        EXPECT_EQ(a.spanDim, b.spanDim);
    }
    EXPECT_THROW(rank_ones_spanning(ctx, gabidulin(ctx, 4, 1).space, 100), Error);
}

TEST(Spanning, TableExtensionOfTwoTwo) {
    const Table1Row* row = find_row(4, 2, 2);
    ASSERT_NE(row, nullptr);
    auto f = build_field(row->field);
    const FieldCtx& ctx = *f;
    EchelonSpace U = gabidulin(ctx, 2, 1).space;
    for (RankOneLine l : row_lines(ctx, *row)) U.insert(lp_to_vec(line_poly(ctx, l)));
    EXPECT_EQ(rank_ones_spanning(ctx, U).spanDim, 12u);
}

TEST(CheckExtension, BucketsAgreeWithEnumeration) {
    for (std::uint32_t q : {2u, 3u}) {
        auto f = build_field(default_field_spec(q, q == 2 ? 4 : 3));
        const FieldCtx& ctx = *f;
        const Code c = gabidulin(ctx, 2, 1);
        std::mt19937_64 rng(q);
        for (int it = 0; it < 40; ++it) {
            const auto gens = random_lines(ctx, 1 + it % 3, rng);
            std::vector<RankOneLine> b1, b2;
            const bool x = check_extension(c, gens, kDefaultElementBudget, CheckMethod::Buckets, &b1);
            const bool y = check_extension(c, gens, kDefaultElementBudget, CheckMethod::Enumerate, &b2);
            EXPECT_EQ(x, y);
            if (x) EXPECT_TRUE(verify_perfect_basis(c, b1).ok());
        }
    }
}

TEST(CheckExtension, TableRowThreeTwoTwo) {
    const Table1Row* row = find_row(3, 2, 2);
    auto f = build_field(row->field);
    const FieldCtx& ctx = *f;
    const Code c = gabidulin(ctx, 2, 1);
    const auto lines = row_lines(ctx, *row);
    // any single listed line completes G_{2,1} to its 7-dimensional cover
    for (RankOneLine l : lines) {
        if (contains(c.space, line_poly(ctx, l))) continue;
        const RankOneLine gens[] = {l};
        EXPECT_TRUE(check_extension(c, gens));
    }
}

TEST(Symmetry, GabidulinIsTwistStable) {
    auto f = build_field(default_field_spec(3, 4));
    const FieldCtx& ctx = *f;
    for (std::uint32_t k = 1; k <= 3; ++k) EXPECT_TRUE(twist_stabilizes(gabidulin(ctx, k, 1)));
    std::vector<LinPoly> gens{LinPoly::identity(ctx)};
    EXPECT_FALSE(twist_stabilizes(make_code(ctx, gens)));
    EXPECT_EQ(canonical_first_gens(gabidulin(ctx, 2, 1)).size(), 1u);
}

TEST(ExactRank, SmallCodes) {
    auto f3 = build_field(default_field_spec(2, 3));
    const auto r7 = exact_tensor_rank(gabidulin(*f3, 2, 1));
    EXPECT_EQ(r7.status, SearchStatus::Exact);
    EXPECT_EQ(r7.trkLow, 7u);
    EXPECT_TRUE(verify_perfect_basis(gabidulin(*f3, 2, 1), r7.basis).ok());

    auto f4 = build_field(default_field_spec(2, 4));
    const Code g21 = gabidulin(*f4, 2, 1);
    const auto r12 = exact_tensor_rank(g21);
    EXPECT_EQ(r12.status, SearchStatus::Exact);
    EXPECT_EQ(r12.trkLow, 12u);
    EXPECT_EQ(r12.refutedLevels, (std::vector<std::uint32_t>{2, 3}));
    EXPECT_EQ(r12.basis.size(), 12u);
    EXPECT_TRUE(verify_perfect_basis(g21, r12.basis).ok());
}

TEST(ExactRank, ThreadCountDoesNotChangeResult) {
    auto f = build_field(default_field_spec(2, 4));
    const Code c = gabidulin(*f, 2, 1);
    SearchConfig one, four;
    four.threads = 4;
    const auto a = exact_tensor_rank(c, one), b = exact_tensor_rank(c, four);
    EXPECT_EQ(a.trkLow, b.trkLow);
    EXPECT_EQ(a.basis, b.basis);
    EXPECT_EQ(a.nodes, b.nodes);
}

TEST(ExactRank, SymmetryOffAgrees) {
    auto f = build_field(default_field_spec(2, 3));
    const Code c = gabidulin(*f, 2, 1);
    SearchConfig cfg;
    cfg.useSymmetry = false;
    EXPECT_EQ(exact_tensor_rank(c, cfg).trkLow, 7u);
    cfg.method = CheckMethod::Enumerate;
    EXPECT_EQ(exact_tensor_rank(c, cfg).trkLow, 7u);
}

TEST(ExactRank, WorkCapGivesInterval) {
    auto f = build_field(default_field_spec(2, 4));
    const Code c = gabidulin(*f, 2, 1);
    SearchConfig cfg;
    cfg.maxLevelWork = 1;
    const auto r = exact_tensor_rank(c, cfg);
    EXPECT_EQ(r.status, SearchStatus::LowerBoundOnly);
    EXPECT_EQ(r.trkLow, 10u);
    EXPECT_EQ(r.trkHigh, 16u);
    const Table1Row* row = find_row(4, 2, 2);
    cfg.knownUpperBasis = row_lines(*f, *row);
    const auto r2 = exact_tensor_rank(c, cfg);
    EXPECT_EQ(r2.status, SearchStatus::Interval);
    EXPECT_EQ(r2.trkHigh, 12u);
}

TEST(ExactRank, TimeoutAndBudget) {
    auto f = build_field(default_field_spec(2, 4));
    const Code c = gabidulin(*f, 2, 1);
    SearchConfig cfg;
    cfg.elementBudget = 10;
    try {
        exact_tensor_rank(c, cfg);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::BudgetExceeded);
    }
    SearchConfig slow;
    slow.timeLimit = 1e-9;
    slow.method = CheckMethod::Enumerate;
    try {
        exact_tensor_rank(c, slow);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::Timeout);
    }
}

TEST(RandomBound, FindsCoverAndIsDeterministic) {
    auto f = build_field(default_field_spec(2, 4));
    const Code c = gabidulin(*f, 2, 1);
    const auto a = random_upper_bound(c, 12, 100000, 9);
    const auto b = random_upper_bound(c, 12, 100000, 9);
    ASSERT_EQ(a.status, SearchStatus::UpperBoundOnly);
    EXPECT_EQ(a.trkHigh, 12u);
    EXPECT_EQ(a.basis, b.basis);
    EXPECT_TRUE(verify_perfect_basis(c, a.basis).ok());
    // below the true rank nothing can be found
    EXPECT_TRUE(random_upper_bound(c, 11, 200, 9).basis.empty());
    EXPECT_TRUE(random_upper_bound(c, 11, 200, 9, RandomStrategy::Plain).basis.empty());
}

TEST(PerfectBasis, DetectsBadBases) {
    auto f = build_field(default_field_spec(2, 3));
    const FieldCtx& ctx = *f;
    const Code c = gabidulin(ctx, 2, 1);
    const Table1Row* row = find_row(3, 2, 2);
    auto good = row_lines(*build_field(row->field), *row);
    EXPECT_TRUE(verify_perfect_basis(c, good).ok());
    auto dup = good;
    dup.back() = dup.front();
    const auto rep = verify_perfect_basis(c, dup);
    EXPECT_FALSE(rep.independent);
    EXPECT_FALSE(rep.ok());
    good.pop_back();
    EXPECT_FALSE(verify_perfect_basis(c, good).containsCode);
}

// Tensor rank is invariant under code equivalence.
TEST(Properties, EquivalenceInvariance) {
    auto f = build_field(default_field_spec(2, 3));
    const FieldCtx& ctx = *f;
    const Code c = gabidulin(ctx, 2, 1);
    std::mt19937_64 rng(2024);
    const std::uint32_t base = exact_tensor_rank(c).trkLow;
    for (int it = 0; it < 5; ++it) {
        const Equivalence e{random_invertible(ctx, rng), random_invertible(ctx, rng), it % 2 == 0};
        const Code d = apply_equiv(c, e);
        const auto r = exact_tensor_rank(d);
        EXPECT_EQ(r.status, SearchStatus::Exact);
        EXPECT_EQ(r.trkLow, base);
        EXPECT_GE(r.trkLow, kruskal_bound(d));
    }
}

TEST(Properties, KruskalBelowRank) {
    for (std::uint32_t n : {2u, 3u}) {
        for (std::uint32_t q : {2u, 3u}) {
            auto f = build_field(default_field_spec(q, n));
            for (std::uint32_t k = 1; k <= n; ++k) {
                const Code c = gabidulin(*f, k, 1);
                const auto r = exact_tensor_rank(c);
                EXPECT_EQ(r.status, SearchStatus::Exact);
                EXPECT_LE(kruskal_bound(c), r.trkLow) << q << " " << n << " " << k;
            }
        }
    }
}

TEST(Properties, SymmetryOnOffAgreeOnLargerCode) {
    auto f = build_field(default_field_spec(2, 4));
    const Code c = gabidulin(*f, 3, 1);
    SearchConfig off;
    off.useSymmetry = false;
    EXPECT_EQ(exact_tensor_rank(c).trkLow, 13u);
    EXPECT_EQ(exact_tensor_rank(c, off).trkLow, 13u);
}

TEST(Properties, SpanningMatchesFullEnumeration) {
    auto f = build_field(default_field_spec(2, 3));
    const FieldCtx& ctx = *f;
    std::mt19937_64 rng(21);
    for (int it = 0; it < 20; ++it) {
        EchelonSpace U(ctx.fq(), ctx.n() * ctx.n());
        for (RankOneLine l : random_lines(ctx, 1 + it % 6, rng)) U.insert(lp_to_vec(line_poly(ctx, l)));
        U.insert(lp_to_vec(random_invertible(ctx, rng)));
        ASSERT_LE(U.dim(), 12u);
        EXPECT_EQ(rank_ones_spanning(ctx, U).spanDim, rank_ones_spanning(ctx, U, kDefaultElementBudget, false).spanDim);
        EXPECT_EQ(rank_ones_spanning_lines(ctx, U).spanDim, rank_ones_spanning(ctx, U, kDefaultElementBudget, false).spanDim);
    }
}

TEST(Properties, MrdCodesHoldNoRankOneElement) {
    for (const auto& row : table1_rows()) {
        auto f = build_field(row.field);
        const Code c = gabidulin(*f, row.k, 1);
        for (RankOneLine l : all_rank_one_lines(*f)) ASSERT_FALSE(contains(c.space, line_poly(*f, l)));
    }
}

TEST(ExactRank, FullSpaceIsItsOwnCover) {
    auto f = build_field(default_field_spec(3, 2));
    const auto r = exact_tensor_rank(gabidulin(*f, 2, 1));
    EXPECT_EQ(r.status, SearchStatus::Exact);
    EXPECT_EQ(r.trkLow, 4u);
    EXPECT_EQ(r.refutedLevels.size(), 0u);
}
