#include "cohomolab/cocycle_lab.hpp"

#include <gtest/gtest.h>

using namespace cohomolab;

namespace {

const Ring R2 = Ring::single(2);

Poly P(const std::string& s) { return parse_poly(R2, s); }
VectorFieldSymbol F(const std::string& s) { return VectorFieldSymbol(P(s)); }

}  // namespace

TEST(OneCocycle, DegreeContract) {
    const OneCocycle bad{"bad", 2, 2, 2, [](const VectorFieldSymbol&) { return divergence_operator(2); }};
    EXPECT_THROW(bad(F("xi1")), DomainError);
    EXPECT_THROW(builtin_c1(2, 2)(VectorFieldSymbol(parse_poly(Ring::single(3), "xi1"))), StructuralError);
}

TEST(OneCocycle, BuiltinDomains) {
    EXPECT_THROW(builtin_c1(2, 1), DomainError);
    EXPECT_THROW(builtin_by_name("c7", 2, 2), DomainError);
    EXPECT_EQ(builtin_by_name("div", 3, 1).target_degree, 1);
    EXPECT_THROW(builtin_div(1, OneForm{{P("-x2"), P("x1")}}, 1), DomainError);
}

TEST(CocycleCheck, BuiltinsHold) {
    const OneForm w{{P("x2"), P("x1 + 1")}};
    for (const OneCocycle& c : {builtin_div(frac(1, 3), w, 2), builtin_c1(2, 2), builtin_c2(2, 3), builtin_gamma1_flat(2, 3)}) {
        const auto r = cocycle_check(c, 3);
        EXPECT_TRUE(r.holds) << c.name;
        EXPECT_GT(r.pairs_checked, 0u);
    }
    EXPECT_THROW(cocycle_check(builtin_c1(2, 2), 1), DomainError);
}

TEST(CocycleCheck, NonClosedFormFails) {
    // i_X ω is a cocycle only for closed ω
    const auto r = cocycle_check(contraction_map(OneForm{{P("-x2"), P("x1")}}, 1), 2);
    EXPECT_FALSE(r.holds);
    ASSERT_TRUE(r.counterexample.has_value());
    EXPECT_FALSE(r.counterexample->defect.is_zero());
}

TEST(CocycleCheck, PairCount) {
    // 12 monomial fields of degree <= 2 in two variables: C(12, 2) pairs
    EXPECT_EQ(cocycle_check(builtin_c1(2, 2), 2).pairs_checked, 66u);
}

TEST(Vanishing, OnSubalgebras) {
    EXPECT_TRUE(vanishes_on_sl(builtin_c1(2, 3)));
    EXPECT_TRUE(vanishes_on_sl(builtin_c2(3, 2)));
    EXPECT_TRUE(vanishes_on_affine(builtin_gamma1_flat(2, 2)));
    EXPECT_FALSE(vanishes_on_sl(builtin_gamma1_flat(2, 2)));
    EXPECT_FALSE(vanishes_on_affine(builtin_div(1, OneForm::zero(2), 1)));
}

TEST(Coboundary, ExactContractionIsTrivial) {
    // X.f = X(f) = i_X df, so the contraction with df is the coboundary of f
    const Poly f = P("x1^2*x2 + 3*x1");
    const OneForm df{{partial_derivative(f, x_var(0)), partial_derivative(f, x_var(1))}};
    const OneCocycle c = contraction_map(df, 2);
    auto [cands, desc] = default_candidates(2, 2, 2);
    const auto r = coboundary_solve(c, cands, desc);
    ASSERT_TRUE(r.witness.has_value());
    for (const auto& x : default_test_fields(2)) EXPECT_EQ(module_action(x, *r.witness, 2, 2), c(x));
    EXPECT_EQ(r.verdict(), "coboundary");
}

TEST(Coboundary, CoboundaryOfDivergenceIsFound) {
    const OneCocycle c = coboundary_of(Rational(5) * divergence_operator(2), 3, 2);
    EXPECT_TRUE(cocycle_check(c, 3).holds);
    auto [cands, desc] = default_candidates(2, 3, 2);
    const auto r = coboundary_solve(c, cands, desc);
    ASSERT_TRUE(r.witness.has_value());
    EXPECT_EQ(proportionality(*r.witness, restrict_to_degree(divergence_operator(2), 3)), Rational(5));
}

TEST(Coboundary, NonTrivialBuiltins) {
    for (const OneCocycle& c : {builtin_c1(2, 3), builtin_c2(2, 2), builtin_div(1, OneForm::zero(2), 2)}) {
        auto [cands, desc] = default_candidates(2, c.source_degree, c.target_degree);
        const auto r = coboundary_solve(c, cands, desc);
        EXPECT_FALSE(r.witness.has_value()) << c.name;
        EXPECT_EQ(r.verdict(), "none within candidate space");
        EXPECT_EQ(r.candidate_count, cands.size());
    }
}

TEST(Decompose, RecoversMultipleAndWitness) {
    // 3 c1 + X.(2D) decomposes as t = 3, B = 2D
    const int k = 3;
    const OneCocycle c1 = builtin_c1(2, k);
    const OneCocycle shifted{"mix", 2, k, k - 1, [c1](const VectorFieldSymbol& x) {
                                 return Rational(3) * c1(x) +
                                        module_action(x, Rational(2) * divergence_operator(2), k, k - 1);
                             }};
    const auto d = decompose_class(shifted, {c1}, {divergence_operator(2)});
    ASSERT_TRUE(d.has_value());
    EXPECT_EQ(d->multiples, (Vector{3}));
    EXPECT_EQ(d->witness, restrict_to_degree(Rational(2) * divergence_operator(2), k));
    EXPECT_THROW(decompose_class(shifted, {builtin_c1(2, 2)}, {}), StructuralError);
}

TEST(Difference, SelfDifferenceIsZero) {
    const OneCocycle c = builtin_c2(2, 3);
    const OneCocycle z = difference(c, c);
    for (const auto& x : default_test_fields(2, 2)) EXPECT_TRUE(z(x).is_zero());
    EXPECT_THROW(difference(c, builtin_c1(2, 3)), StructuralError);
}

TEST(Report, FullReportForC1) {
    const auto r = full_report(builtin_c1(2, 2), 3);
    EXPECT_TRUE(r.check.holds);
    EXPECT_TRUE(r.vanishes_on_sl);
    EXPECT_FALSE(r.coboundary.witness.has_value());
    EXPECT_EQ(r.source_degree, 2);
    EXPECT_EQ(r.target_degree, 1);
}

TEST(Evaluator, LinearExtensionMatchesDirect) {
    const OneCocycle c = builtin_c2(2, 3);
    CocycleEvaluator ev(c);
    const auto x = F("x1^3*xi2 - 2*x1*x2*xi1 + xi2");
    EXPECT_EQ(ev.value(x), c(x));
}
