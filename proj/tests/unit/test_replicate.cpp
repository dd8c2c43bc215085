#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "gabrank/replicate.hpp"
#include "gabrank/search.hpp"

using namespace gabrank;

namespace {

Elem random_nonzero(const FieldCtx& ctx, std::mt19937_64& rng) {
    return Elem::from_log(static_cast<std::int32_t>(std::uniform_int_distribution<std::uint32_t>(0, ctx.order() - 1)(rng)));
}

Elem random_outside(const FieldCtx& ctx, std::uint32_t d, std::mt19937_64& rng) {
    for (;;) {
        const Elem x = random_nonzero(ctx, rng);
        if (!ctx.in_subfield_degree(x, d)) return x;
    }
}

Elem random_unit(const FieldCtx& ctx, std::mt19937_64& rng) {
    return fq_unit(ctx, std::uniform_int_distribution<std::uint32_t>(1, ctx.q() - 1)(rng));
}

YZPair c2_pair(const FieldCtx& ctx, std::mt19937_64& rng) {
    const Elem Y = random_outside(ctx, 2, rng);
    return {Y, ctx.mul(random_unit(ctx, rng), ctx.pow(Y, ctx.q() + 1))};
}

YZPair c3_pair(const FieldCtx& ctx, std::mt19937_64& rng) {
    const Elem Z = random_outside(ctx, 2, rng);
    const std::uint64_t q = ctx.q();
    return {ctx.div(random_unit(ctx, rng), ctx.pow(Z, q * q + q)), Z};
}

ExtParams random_params(const FieldCtx& ctx, std::mt19937_64& rng) {
    return {random_nonzero(ctx, rng), random_nonzero(ctx, rng), random_nonzero(ctx, rng), random_nonzero(ctx, rng)};
}

std::vector<Elem> units(const FieldCtx& ctx, std::uint32_t from, std::uint32_t count) {
    std::vector<Elem> out;
    for (std::uint32_t m = from; m < from + count; ++m) out.push_back(fq_unit(ctx, m));
    return out;
}

// Z = alpha1/alpha2 and Y = beta1/beta2.
ExtParams params_of(const FieldCtx& ctx, YZPair yz, std::mt19937_64& rng) {
    const Elem a2 = random_nonzero(ctx, rng), b2 = random_nonzero(ctx, rng);
    return {ctx.mul(yz.Z, a2), ctx.mul(yz.Y, b2), a2, b2};
}

}  // namespace

TEST(Sistemone, ClassificationMatchesBruteForce) {
    for (std::uint32_t q : {2u, 3u}) {
        auto f = build_field(default_field_spec(q, 4));
        const FieldCtx& ctx = *f;
        std::uint64_t solved = 0, pairs = 0;
        for (std::uint32_t a = 0; a < ctx.order(); ++a) {
            for (std::uint32_t b = 0; b < ctx.order(); ++b) {
                const YZPair yz{Elem::from_log(static_cast<std::int32_t>(a)), Elem::from_log(static_cast<std::int32_t>(b))};
                const auto v = sistemone_values(ctx, yz);
                const bool zero = v[0].is_zero() && v[1].is_zero() && v[2].is_zero();
                ASSERT_EQ(zero, sistemone_satisfied(ctx, yz));
                ASSERT_LE(sistemone_labels(ctx, yz).size(), 1u);
                ASSERT_EQ(zero, sistemone_classify(ctx, yz) != SistClass::None);
                solved += zero;
                ++pairs;
            }
        }
        EXPECT_EQ(pairs, q == 2 ? 225u : 6400u);
        EXPECT_GT(solved, 0u);
    }
}

TEST(Sistemone, NamedCases) {
    auto f = build_field(default_field_spec(3, 4));
    const FieldCtx& ctx = *f;
    EXPECT_EQ(sistemone_classify(ctx, {ctx.one(), ctx.eta()}), SistClass::C1);
    const Elem Y = ctx.eta();
    EXPECT_EQ(sistemone_classify(ctx, {Y, ctx.pow(Y, 4)}), SistClass::C2);
    EXPECT_TRUE(sistemone_satisfied(ctx, {Y, ctx.pow(Y, 4)}));
    EXPECT_THROW(sistemone_classify(ctx, {Elem::zero(), ctx.eta()}), Error);
    EXPECT_FALSE(sistemone_satisfied(ctx, {ctx.eta(), ctx.eta()}));
}

TEST(Quartic, CoefficientsInterpolateDirectEvaluation) {
    for (std::uint32_t q : {3u, 5u}) {
        auto f = build_field(default_field_spec(q, 4));
        const FieldCtx& ctx = *f;
        std::mt19937_64 rng(q);
        const auto fq = ctx.fq_elements();
        bool nonzeroSeen = false;
        for (int it = 0; it < 100; ++it) {
            const ExtParams p = random_params(ctx, rng);
            const auto C = numden_coeffs(ctx, p);
            EXPECT_TRUE(C[0].is_zero());
            EXPECT_TRUE(C[4].is_zero());
            for (Elem c1 : fq) {
                for (Elem c2 : fq) {
                    const Elem v = numden_eval(ctx, p, c1, c2);
                    ASSERT_EQ(eval_binary_quartic(ctx, C, c1, c2), v);
                    nonzeroSeen = nonzeroSeen || !v.is_zero();
                }
            }
        }
        EXPECT_TRUE(nonzeroSeen);
    }
}

TEST(Quartic, VanishesOnSubfieldParameters) {
    auto f = build_field(default_field_spec(3, 4));
    const FieldCtx& ctx = *f;
    std::mt19937_64 rng(1);
    for (int it = 0; it < 10; ++it) {
        const ExtParams p = params_of(ctx, {random_unit(ctx, rng), random_nonzero(ctx, rng)}, rng);
        for (Elem c1 : ctx.fq_elements())
            for (Elem c2 : ctx.fq_elements()) EXPECT_TRUE(numden_eval(ctx, p, c1, c2).is_zero());
    }
    EXPECT_TRUE(numden_eval(ctx, random_params(ctx, rng), Elem::zero(), Elem::zero()).is_zero());
}

TEST(Extension, CandidatesSolveTheSystemAndLieInTheSpace) {
    auto f = build_field(default_field_spec(3, 4));
    const FieldCtx& ctx = *f;
    std::mt19937_64 rng(3);
    for (int it = 0; it < 10; ++it) {
        const YZPair yz = it % 2 ? c2_pair(ctx, rng) : c3_pair(ctx, rng);
        const ExtParams p = params_of(ctx, yz, rng);
        const Code H = extension_space(ctx, p);
        EXPECT_EQ(H.h, 10u);
        for (std::uint32_t m1 = 1; m1 < 3; ++m1) {
            for (std::uint32_t m2 = 1; m2 < 3; ++m2) {
                const Elem lambda = ctx.div(fq_unit(ctx, m1), fq_unit(ctx, m2));
                if (n_of(ctx, yz, lambda).is_zero() || d_of(ctx, yz, lambda).is_zero()) continue;
                const auto r = extension_candidate(ctx, p, fq_unit(ctx, m1), fq_unit(ctx, m2));
                ASSERT_TRUE(r.has_value());
                EXPECT_TRUE(verify_system1(ctx, p, fq_unit(ctx, m1), fq_unit(ctx, m2), r->first, r->second));
                EXPECT_FALSE(verify_system1(ctx, p, fq_unit(ctx, m1), fq_unit(ctx, m2), ctx.mul(r->first, ctx.eta()), r->second));
                EXPECT_TRUE(contains(H.space, trace_poly(ctx, r->first, r->second)));
            }
        }
    }
    EXPECT_THROW(extension_candidate(ctx, random_params(ctx, rng), Elem::zero(), ctx.one()), Error);
}

TEST(Extension, NormConditionFailsGivesNothing) {
    auto f = build_field(default_field_spec(5, 4));
    const FieldCtx& ctx = *f;
    std::mt19937_64 rng(8);
    int none = 0;
    for (int it = 0; it < 50; ++it) {
        const ExtParams p = random_params(ctx, rng);
        try {
            if (!extension_candidate(ctx, p, ctx.one(), ctx.one())) ++none;
        } catch (const Error&) {
        }
    }
    EXPECT_GT(none, 0);
}

TEST(FLambda, RankOneMemberOfTheSpace) {
    auto f = build_field(default_field_spec(5, 4));
    const FieldCtx& ctx = *f;
    std::mt19937_64 rng(4);
    for (int it = 0; it < 6; ++it) {
        const YZPair yz = it % 2 ? c2_pair(ctx, rng) : c3_pair(ctx, rng);
        const ExtParams p = params_of(ctx, yz, rng);
        const Code H = extension_space(ctx, p);
        for (Elem l : units(ctx, 1, 4)) {
            if (n_of(ctx, yz, l).is_zero() || d_of(ctx, yz, l).is_zero()) continue;
            const LinPoly F = f_lambda(ctx, p, l);
            EXPECT_EQ(lp_rank(F), 1u);
            EXPECT_TRUE(contains(H.space, F));
        }
    }
}

TEST(Ranghi, RanksPerClassAtEleven) {
    auto f = build_field(default_field_spec(11, 4));
    const FieldCtx& ctx = *f;
    std::mt19937_64 rng(11);
    const auto lambdas = units(ctx, 1, 8);
    const YZPair c1{random_unit(ctx, rng), random_outside(ctx, 1, rng)};
    EXPECT_EQ(rank_over_big(ctx, build_M10(ctx, c1, lambdas)), 2u);
    for (int it = 0; it < 5; ++it) {
        EXPECT_EQ(rank_over_big(ctx, build_M10(ctx, c2_pair(ctx, rng), lambdas)), 6u);
        EXPECT_EQ(rank_over_big(ctx, build_M10(ctx, c3_pair(ctx, rng), lambdas)), 6u);
    }
}

TEST(Ranghi, NullspaceIsDefinedOverFq) {
    auto f = build_field(default_field_spec(11, 4));
    const FieldCtx& ctx = *f;
    std::mt19937_64 rng(12);
    const auto lambdas = units(ctx, 3, 8);
    for (int it = 0; it < 4; ++it) {
        const YZPair yz = it % 2 ? c2_pair(ctx, rng) : c3_pair(ctx, rng);
        const BigMatrix M = build_M10(ctx, yz, lambdas);
        EXPECT_EQ(fq_nullity(ctx, M), 10u - rank_over_big(ctx, M));
    }
}

TEST(Ranghi, PreconditionsRejected) {
    auto f9 = build_field(default_field_spec(7, 4));
    std::mt19937_64 rng(1);
    const YZPair yz = c2_pair(*f9, rng);
    try {
        build_M10(*f9, yz, units(*f9, 1, 6));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NeedsBiggerField);
    }
    auto f = build_field(default_field_spec(11, 4));
    auto lambdas = units(*f, 1, 8);
    lambdas[7] = lambdas[0];
    EXPECT_THROW(build_M10(*f, c2_pair(*f, rng), lambdas), Error);
}

// The product formula is a polynomial, so it is compared with the block
// whose lambda columns are cleared of denominators.
TEST(DetS6, ClassTwoClosedForm) {
    auto f = build_field(default_field_spec(11, 4));
    const FieldCtx& ctx = *f;
    std::mt19937_64 rng(7);
    for (int it = 0; it < 10; ++it) {
        const auto r = det_S6(ctx, c2_pair(ctx, rng), units(ctx, 1 + it % 5, 4));
        EXPECT_FALSE(r.eliminationValue.is_zero());
        EXPECT_EQ(r.closedForm, r.clearedValue);
    }
}

TEST(DetS6, ClassThreeClosedForm) {
    auto f = build_field(default_field_spec(11, 4));
    const FieldCtx& ctx = *f;
    std::mt19937_64 rng(6);
    for (int it = 0; it < 10; ++it) {
        const auto r = det_S6(ctx, c3_pair(ctx, rng), units(ctx, 1 + it % 5, 4));
        EXPECT_FALSE(r.eliminationValue.is_zero());
        EXPECT_EQ(r.closedForm, r.clearedValue);
    }
}

// What the class C3 determinant actually is: the stated product times Norm(Z)^4.
TEST(DetS6, ClassThreeWithNormFactor) {
    auto f = build_field(default_field_spec(11, 4));
    const FieldCtx& ctx = *f;
    std::mt19937_64 rng(16);
    for (int it = 0; it < 20; ++it) {
        const YZPair yz = c3_pair(ctx, rng);
        auto ls = units(ctx, 1 + it % 7, 4);
        std::shuffle(ls.begin(), ls.end(), rng);
        const auto r = det_S6(ctx, yz, ls);
        EXPECT_EQ(ctx.mul(r.closedForm, ctx.pow(ctx.norm(yz.Z), 4)), r.clearedValue);
    }
}

TEST(DetS6, RepeatedLambdaAndWrongClass) {
    auto f = build_field(default_field_spec(11, 4));
    const FieldCtx& ctx = *f;
    std::mt19937_64 rng(9);
    auto ls = units(ctx, 1, 4);
    ls[3] = ls[2];
    EXPECT_TRUE(det_S6(ctx, c3_pair(ctx, rng), ls).closedForm.is_zero());
    EXPECT_THROW(det_S6(ctx, {ctx.one(), ctx.eta()}, units(ctx, 1, 4)), Error);
}

TEST(DetS7, VanishesInClassesTwoAndThree) {
    auto f = build_field(default_field_spec(11, 4));
    const FieldCtx& ctx = *f;
    std::mt19937_64 rng(10);
    for (int it = 0; it < 6; ++it) {
        EXPECT_TRUE(det_S7_zero(ctx, c2_pair(ctx, rng), units(ctx, 2, 5)));
        EXPECT_TRUE(det_S7_zero(ctx, c3_pair(ctx, rng), units(ctx, 2, 5)));
    }
}

TEST(M16, FullRankExistsAndFormulaTracksRank) {
    for (std::uint32_t q : {5u, 7u}) {
        auto f = build_field(default_field_spec(q, 4));
        const FieldCtx& ctx = *f;
        const std::uint64_t qq = q;
        bool full = false;
        for (std::uint64_t k = 0; k < qq * qq + 1; ++k) {
            const Elem Z = ctx.exp(static_cast<std::int64_t>(k * (qq * qq - 1)));
            if (ctx.in_subfield_degree(Z, 2)) continue;
            for (Elem l : ctx.fq_elements()) {
                if (l.is_zero() || ctx.pow(l, 2) == ctx.one() || ctx.pow(l, 3) == ctx.one()) continue;
                std::uint32_t r = 0;
                try {
                    r = rank_over_big(ctx, build_M16(ctx, Z, l));
                } catch (const Error& e) {
                    ASSERT_EQ(e.code(), ErrorCode::DegenerateDenominator);
                    continue;
                }
                EXPECT_EQ(!detM_formula(ctx, Z, l).is_zero(), r == 11u) << "q=" << q << " k=" << k;
                full = full || r == 11u;
            }
        }
        EXPECT_TRUE(full) << q;
    }
}

TEST(M16, BadInputs) {
    auto f = build_field(default_field_spec(5, 4));
    const FieldCtx& ctx = *f;
    const Elem lam = fq_unit(ctx, 2);
    try {
        build_M16(ctx, ctx.exp(ctx.fq_gen_exp()), lam);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::BadZ);
    }
    const Elem Z = ctx.exp(24);
    try {
        build_M16(ctx, Z, ctx.minus_one());
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::BadLambda);
    }
    auto f3 = build_field(default_field_spec(3, 4));
    EXPECT_THROW(build_M16(*f3, f3->exp(8), f3->minus_one()), Error);
}

TEST(Report, SmallFieldStatuses) {
    TheoremOptions opt;
    opt.quarticParams = 10;
    opt.instances = 5;
    const auto claims = verify_theorems(3, opt);
    ASSERT_EQ(claims.size(), 9u);
    for (const auto& c : claims) {
        EXPECT_EQ(c.q, 3u);
        if (c.claimId == "ranghi-rank" || c.claimId == "frobenius-nullspace" || c.claimId == "ranghi-det-s6-s7" ||
            c.claimId == "m16-full-rank")
            EXPECT_EQ(c.status, ClaimStatus::Vacuous) << c.claimId;
        else
            EXPECT_EQ(c.status, ClaimStatus::Pass) << c.claimId << ": " << c.detail;
    }
}

TEST(Report, NonQuarticFieldRejected) {
    auto f = build_field(default_field_spec(2, 3));
    EXPECT_THROW(check_sistemone(*f), Error);
}
