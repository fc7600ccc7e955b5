#include "cohomolab/cocycle_lab.hpp"
#include "cohomolab/equivariance_solver.hpp"

#include <gtest/gtest.h>

using namespace cohomolab;

namespace {

const Ring R2 = Ring::single(2);

Poly P(const std::string& s) { return parse_poly(R2, s); }
VectorFieldSymbol F(const std::string& s) { return VectorFieldSymbol(P(s)); }

AnsatzCoefficients scaled(const SolutionSpace& s) {
    EXPECT_EQ(s.dimension(), 1u);
    return AnsatzCoefficients::from_flat(s.p, s.k, primitive_integer(s.basis.front().flatten()));
}

}  // namespace

TEST(Ansatz, Shape) {
    const auto c = AnsatzCoefficients::zero(2, 4);
    EXPECT_EQ(c.alpha.size(), 4u);
    EXPECT_EQ(c.beta.size(), 3u);
    EXPECT_EQ(c.gamma.size(), 3u);
    EXPECT_EQ(c.labels().front(), "alpha_0");
    EXPECT_EQ(c.labels()[4], "beta_1");
    EXPECT_EQ(c.gamma_index(0), 7);
    EXPECT_EQ(c.beta_index(0), -1);
    // alpha terms vanish on S_1 x S_k when k = p
    const auto d = AnsatzCoefficients::zero(2, 2);
    EXPECT_FALSE(d.has_alpha());
    EXPECT_EQ(d.alpha_index(2), -1);
    EXPECT_EQ(d.alpha_at(2), 0);
    EXPECT_THROW(AnsatzCoefficients::zero(3, 2), DomainError);
    EXPECT_THROW(AnsatzCoefficients::from_flat(1, 2, {1, 2}), StructuralError);
}

TEST(Ansatz, FlatRoundTrip) {
    AnsatzCoefficients c = AnsatzCoefficients::zero(2, 3);
    c.alpha[3] = 5;
    c.beta[1] = frac(-1, 2);
    c.gamma[2] = 7;
    EXPECT_EQ(AnsatzCoefficients::from_flat(2, 3, c.flatten()), c);
    EXPECT_EQ(c.relative_part(), (Vector{0, 5, frac(-1, 2), 0, 7}));
}

TEST(Bilinear, SingleTermsByHand) {
    const auto x = F("x1^2*xi1 + x2*xi2");
    const Poly p = P("x2*xi1");
    // p = 0, beta_1 = 1: D_(x,xi) on X only, i.e. div X * P
    AnsatzCoefficients b = AnsatzCoefficients::zero(0, 1);
    b.beta[0] = 1;
    EXPECT_EQ(build_bilinear(b, 2).apply(x, p), divergence(x) * p);
    // p = 0, gamma_0 = 1: X^i d_i P
    AnsatzCoefficients g = AnsatzCoefficients::zero(0, 1);
    g.gamma[0] = 1;
    EXPECT_EQ(build_bilinear(g, 2).apply(x, p), P("x2*xi1"));
}

TEST(Bilinear, PartialMatchesApply) {
    AnsatzCoefficients c = AnsatzCoefficients::zero(2, 3);
    c.alpha = {1, 2, 3, 4};
    c.beta = {frac(1, 2), 0, -1};
    c.gamma = {0, 1, 5};
    const BilinearOp op = build_bilinear(c, 2);
    for (const auto& x : {F("x1^3*xi2"), F("x1*x2^2*xi1 + xi2"), F("x2^2*xi2")})
        for (const auto& p : {P("x1*xi1^3"), P("x2^2*xi1*xi2^2"), P("xi2^3")})
            EXPECT_EQ(apply(op.partial(x), p), op.apply(x, p));
}

TEST(Recurrence, P1LineFromZeroEquation) {
    // affine vanishing leaves alpha_2, beta_2; (k - 1) alpha_2 + (n + 1) beta_2 = 0
    for (int n : {2, 3, 4})
        for (int k : {2, 3, 5}) {
            const auto c = scaled(recurrence_solutions(n, k, 1));
            const Rational t = c.alpha_at(2);
            ASSERT_NE(t, 0);
            EXPECT_EQ(c.beta_at(2) / t, frac(-(k - 1), n + 1)) << n << " " << k;
            EXPECT_EQ(c.gamma_at(0), 0);
            EXPECT_EQ(c.gamma_at(1), 0);
        }
}

TEST(Recurrence, DimensionsByCase) {
    const std::map<std::string, std::size_t> expected = {{"a", 0}, {"b", 1}, {"c", 2}, {"d", 1}};
    for (int n : {2, 3})
        for (int k = 0; k <= 6; ++k)
            for (int p = 0; p <= k; ++p)
                EXPECT_EQ(recurrence_solutions(n, k, p).dimension(), expected.at(case_label(k, p)))
                    << n << " " << k << " " << p;
}

TEST(Recurrence, FourthRelationOnSolutions) {
    for (int k = 2; k <= 6; ++k)
        for (int p = 2; p <= k; ++p)
            for (const auto& b : recurrence_solutions(2, k, p).basis)
                for (int s = 1; s <= p; ++s) EXPECT_EQ(evaluate_row(fourth_recurrence(2, k, p, s), b.flatten()), 0);
}

TEST(Recurrence, DomainChecks) {
    EXPECT_THROW(recurrence_solutions(1, 2, 1), DomainError);
    EXPECT_THROW(recurrence_solutions(2, 2, 3), DomainError);
}

TEST(Direct, AgreesWithRecurrenceOnSmallCells) {
    for (int k = 0; k <= 3; ++k)
        for (int p = 0; p <= k; ++p)
            EXPECT_TRUE(same_solution_space(recurrence_solutions(2, k, p), solve_equivariant_direct(2, k, p)))
                << k << " " << p;
}

TEST(Cocycle, P2Line) {
    // (alpha_2, alpha_3, beta_2, beta_3, gamma_2) = (2, 2k+n+1, 1, 2, -(2k+n-3))
    for (int n : {2, 3})
        for (int k : {3, 4}) {
            const auto c = scaled(impose_cocycle(recurrence_solutions(n, k, 2)));
            const Vector want{2, 2 * k + n + 1, 1, 2, -(2 * k + n - 3)};
            EXPECT_EQ(c.relative_part(), want) << n << " " << k;
        }
    // k = p = 2: no alpha terms, (beta_2, beta_3, gamma_2) = (1, 2, -(n+1))
    EXPECT_EQ(scaled(impose_cocycle(recurrence_solutions(2, 2, 2))).relative_part(), (Vector{1, 2, -3}));
}

TEST(Cocycle, NothingBeyondP2) {
    for (int k = 3; k <= 5; ++k)
        for (int p = 3; p <= k; ++p) EXPECT_EQ(impose_cocycle(recurrence_solutions(2, k, p)).dimension(), 0u) << k;
}

TEST(Cocycle, P1LineIsAlreadyCocycle) {
    const auto s = recurrence_solutions(3, 4, 1);
    EXPECT_TRUE(same_solution_space(impose_cocycle(s), s));
}

TEST(Builtins, C1IsTwiceTheUnitLine) {
    // builtin_c1 in ansatz form has alpha_2 = 2; evaluate both on fields
    for (int k : {2, 3}) {
        AnsatzCoefficients unit = AnsatzCoefficients::zero(1, k);
        unit.alpha[2] = 1;
        unit.beta[1] = frac(-(k - 1), 3);
        const BilinearOp line = build_bilinear(unit, 2);
        const OneCocycle c1 = builtin_c1(2, k);
        for (const auto& x : monomial_fields(2, 3, 2))
            EXPECT_EQ(c1(x), Rational(2) * restrict_to_degree(line.partial(x), k)) << to_string(x.poly());
        Vector twice = unit.flatten();
        for (auto& q : twice) q *= 2;
        EXPECT_EQ(c1_coefficients(2, k).flatten(), twice);
    }
}

TEST(Builtins, C2OnSolverLine) {
    for (int k : {2, 3, 4}) {
        const auto space = impose_cocycle(recurrence_solutions(2, k, 2));
        std::vector<Vector> both = space.flat_basis();
        both.push_back(c2_coefficients(2, k).flatten());
        EXPECT_EQ(rank_of(both), 1u) << k;
    }
}

TEST(Cases, Labels) {
    EXPECT_EQ(case_label(3, 0), "a");
    EXPECT_EQ(case_label(1, 1), "a");
    EXPECT_EQ(case_label(3, 1), "b");
    EXPECT_EQ(case_label(4, 2), "c");
    EXPECT_EQ(case_label(3, 3), "d");
}
