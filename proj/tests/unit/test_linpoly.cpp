#include <gtest/gtest.h>

#include <random>

#include "gabrank/linpoly.hpp"
#include "gabrank/rankcode.hpp"

using namespace gabrank;

namespace {

struct Fixture : ::testing::Test {
    FieldHandle f = build_field(default_field_spec(3, 4));
    const FieldCtx& ctx = *f;
    std::mt19937_64 rng{11};

    Elem rand_elem() {
        std::uniform_int_distribution<std::int32_t> d(-1, static_cast<std::int32_t>(ctx.order()) - 1);
        const auto k = d(rng);
        return k < 0 ? Elem::zero() : Elem::from_log(k);
    }
    LinPoly rand_poly() {
        std::vector<Elem> c(ctx.n());
        for (auto& e : c) e = rand_elem();
        return LinPoly(ctx, std::move(c));
    }
};

}  // namespace

TEST_F(Fixture, EvaluationIsFqLinear) {
    for (int it = 0; it < 200; ++it) {
        const LinPoly f = rand_poly();
        const Elem x = rand_elem(), y = rand_elem();
        EXPECT_EQ(lp_eval(f, ctx.add(x, y)), ctx.add(lp_eval(f, x), lp_eval(f, y)));
        for (Elem c : ctx.fq_elements()) EXPECT_EQ(lp_eval(f, ctx.mul(c, x)), ctx.mul(c, lp_eval(f, x)));
    }
}

TEST_F(Fixture, CompositionAndArithmetic) {
    for (int it = 0; it < 100; ++it) {
        const LinPoly f = rand_poly(), g = rand_poly();
        const Elem x = rand_elem(), c = rand_elem();
        EXPECT_EQ(lp_eval(lp_compose(f, g), x), lp_eval(f, lp_eval(g, x)));
        EXPECT_EQ(lp_eval(lp_add(f, g), x), ctx.add(lp_eval(f, x), lp_eval(g, x)));
        EXPECT_TRUE(lp_sub(f, f).is_zero());
        EXPECT_EQ(lp_eval(lp_scale(f, c), x), ctx.mul(c, lp_eval(f, x)));
        EXPECT_EQ(lp_adjoint(lp_adjoint(f)).coeffs().size(), f.size());
        EXPECT_TRUE(lp_sub(lp_adjoint(lp_adjoint(f)), f).is_zero());
        EXPECT_TRUE(lp_sub(vec_to_lp(ctx, lp_to_vec(f)), f).is_zero());
        EXPECT_TRUE(lp_sub(lp_compose(LinPoly::identity(ctx), f), f).is_zero());
    }
}

TEST_F(Fixture, AdjointIsTraceDual) {
    // Tr(f(x) y) = Tr(x f*(y))
    for (int it = 0; it < 100; ++it) {
        const LinPoly f = rand_poly();
        const Elem x = rand_elem(), y = rand_elem();
        EXPECT_EQ(ctx.trace(ctx.mul(lp_eval(f, x), y)), ctx.trace(ctx.mul(x, lp_eval(lp_adjoint(f), y))));
    }
}

TEST_F(Fixture, TraceFunctionsHaveRankOne) {
    for (int it = 0; it < 100; ++it) {
        Elem a = rand_elem(), b = rand_elem();
        if (a.is_zero() || b.is_zero()) continue;
        const LinPoly t = trace_poly(ctx, a, b);
        EXPECT_EQ(lp_rank(t), 1u);
        const Elem x = rand_elem();
        EXPECT_EQ(lp_eval(t, x), ctx.mul(a, ctx.trace(ctx.mul(b, x))));
    }
    EXPECT_EQ(lp_rank(LinPoly::identity(ctx)), ctx.n());
    EXPECT_EQ(lp_rank(LinPoly(ctx)), 0u);
}

TEST_F(Fixture, RankMatchesKernelSize) {
    for (int it = 0; it < 50; ++it) {
        const LinPoly f = rand_poly();
        std::uint32_t kernel = 0;
        for (std::uint32_t v = 0; v < ctx.size(); ++v) kernel += lp_eval(f, ctx.from_poly(v)).is_zero();
        std::uint32_t dimKer = 0;
        for (std::uint32_t s = 1; s < kernel; s *= ctx.q()) ++dimKer;
        EXPECT_EQ(lp_rank(f), ctx.n() - dimKer);
    }
}

TEST_F(Fixture, TwistMatchesDefinition) {
    for (int it = 0; it < 50; ++it) {
        const LinPoly f = rand_poly();
        const Elem a = ctx.exp(1 + it), b = ctx.exp(3 * it + 2), x = rand_elem();
        EXPECT_EQ(lp_eval(lp_twist(f, a, b), x), ctx.mul(a, lp_eval(f, ctx.mul(b, x))));
    }
}

TEST_F(Fixture, MismatchedContexts) {
    auto other = build_field(default_field_spec(2, 4));
    const LinPoly g = LinPoly::identity(*other);
    EXPECT_THROW(lp_add(LinPoly::identity(ctx), g), Error);
}
