#include <gtest/gtest.h>

#include <numeric>
#include <random>
#include <set>

#include "gabrank/rankcode.hpp"

using namespace gabrank;

TEST(Echelon, InsertReduceContains) {
    auto f = build_field(default_field_spec(3, 2));
    const FieldCtx& ctx = *f;
    EchelonSpace s(ctx.fq(), 4);
    EXPECT_TRUE(s.insert({1, 2, 0, 0}));
    EXPECT_TRUE(s.insert({0, 1, 1, 0}));
    EXPECT_FALSE(s.insert({1, 0, 1, 0}));  // index 2 is -1, so this is the sum of the two rows
    EXPECT_EQ(s.dim(), 2u);
    for (const auto& row : s.rows()) EXPECT_TRUE(s.contains(row));
    EXPECT_TRUE(s.contains({0, 0, 0, 0}));
}

TEST(Echelon, SumDimension) {
    auto f = build_field(default_field_spec(2, 3));
    const FieldCtx& ctx = *f;
    const Code a = gabidulin(ctx, 1, 1);
    std::vector<LinPoly> g;
    for (Elem b : ctx.fq_basis()) g.push_back(LinPoly::monomial(ctx, 1, b));
    const EchelonSpace s = space_sum(a.space, space_of(ctx, g));
    EXPECT_EQ(s.dim(), 6u);
    EXPECT_EQ(s, gabidulin(ctx, 2, 1).space);
}

TEST(GrayEnumerate, VisitsEveryCombinationOnce) {
    auto f = build_field(default_field_spec(3, 2));
    const FieldCtx& ctx = *f;
    const Subfield& fq = ctx.fq();
    std::vector<FqVector> vecs{{1, 0, 2}, {0, 1, 1}, {2, 2, 0}};
    std::set<std::vector<std::uint8_t>> digits;
    std::uint64_t visits = 0;
    gray_enumerate(fq, vecs, [&](std::span<const std::uint8_t> d, std::span<const std::uint8_t> e) {
        ++visits;
        digits.insert(std::vector<std::uint8_t>(d.begin(), d.end()));
        // element equals the combination of the digits
        FqVector want(3, 0);
        for (std::size_t k = 0; k < vecs.size(); ++k)
            for (std::size_t i = 0; i < 3; ++i) want[i] = fq.add(want[i], fq.mul(d[k], vecs[k][i]));
        EXPECT_EQ(FqVector(e.begin(), e.end()), want);
        return true;
    });
    EXPECT_EQ(visits, 27u);
    EXPECT_EQ(digits.size(), 27u);
}

struct GabParam {
    std::uint32_t q, n;
};

class GabidulinAll : public ::testing::TestWithParam<GabParam> {};

TEST_P(GabidulinAll, DimensionAndDistance) {
    const auto [q, n] = GetParam();
    auto f = build_field(default_field_spec(q, n));
    const FieldCtx& ctx = *f;
    for (std::uint32_t k = 1; k <= n; ++k) {
        for (std::uint32_t s = 1; s < n || s == 1; ++s) {
            if (std::gcd(s, n) != 1) continue;
            const Code c = gabidulin(ctx, k, s);
            EXPECT_EQ(c.h, std::size_t{k} * n);
            long double words = 1;
            for (std::size_t i = 0; i < c.h; ++i) words *= q;
            if (words > 1e7L) continue;
            EXPECT_EQ(min_distance(c), n - k + 1) << "q=" << q << " n=" << n << " k=" << k << " s=" << s;
            EXPECT_TRUE(is_mrd(c));
        }
    }
}

INSTANTIATE_TEST_SUITE_P(Small, GabidulinAll,
                         ::testing::Values(GabParam{2, 2}, GabParam{2, 3}, GabParam{2, 4}, GabParam{3, 2}, GabParam{3, 3},
                                           GabParam{3, 4}, GabParam{4, 2}, GabParam{4, 3}, GabParam{5, 2}, GabParam{5, 3},
                                           GabParam{7, 2}, GabParam{4, 4}, GabParam{5, 4}));

TEST(Gabidulin, Errors) {
    auto f = build_field(default_field_spec(2, 4));
    EXPECT_THROW(gabidulin(*f, 0, 1), Error);
    EXPECT_THROW(gabidulin(*f, 5, 1), Error);
    EXPECT_THROW(gabidulin(*f, 2, 2), Error);
    const Code big = gabidulin(*f, 4, 1);
    EXPECT_THROW(min_distance(big, 1000), Error);
}

TEST(Gabidulin, NoRankOneWordsInMrdWithDistanceTwo) {
    auto f = build_field(default_field_spec(2, 4));
    const FieldCtx& ctx = *f;
    const Code c = gabidulin(ctx, 3, 1);
    for (std::uint32_t i = 0; i < ctx.order(); ++i) {
        for (std::uint32_t j = 0; j < ctx.order(); ++j) {
            EXPECT_FALSE(contains(c.space, trace_poly(ctx, ctx.exp(i), ctx.exp(j))));
        }
    }
}

TEST(Equivalence, PreservesDimensionAndDistance) {
    auto f = build_field(default_field_spec(2, 3));
    const FieldCtx& ctx = *f;
    std::mt19937_64 rng(3);
    const Code c = gabidulin(ctx, 2, 1);
    for (int it = 0; it < 10; ++it) {
        const Equivalence e{random_invertible(ctx, rng), random_invertible(ctx, rng), it % 2 == 1};
        const Code d = apply_equiv(c, e);
        EXPECT_EQ(d.h, c.h);
        EXPECT_EQ(min_distance(d), min_distance(c));
    }
    const Equivalence bad{LinPoly(ctx), LinPoly::identity(ctx), false};
    try {
        apply_equiv(c, bad);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NotInvertible);
    }
}
