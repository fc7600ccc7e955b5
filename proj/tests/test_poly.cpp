#include "cohomolab/poly.hpp"

#include <gtest/gtest.h>

using namespace cohomolab;

namespace {

const Ring R2 = Ring::single(2);

Poly P(const std::string& s) { return parse_poly(R2, s); }

}  // namespace

TEST(Rational, FracIsCanonical) {
    EXPECT_EQ(to_string(frac(-4, 2)), "-2");
    EXPECT_EQ(to_string(frac(3, 3)), "1");
    EXPECT_EQ(to_string(frac(2, -6)), "-1/3");
    EXPECT_EQ(frac(6, 4), parse_rational("3/2"));
    EXPECT_THROW(frac(1, 0), std::invalid_argument);
}

TEST(Rational, Parse) {
    EXPECT_EQ(parse_rational(" +4/6 "), frac(2, 3));
    EXPECT_EQ(parse_rational("-7"), Rational(-7));
    EXPECT_THROW(parse_rational(""), StructuralError);
    EXPECT_THROW(parse_rational("1/0"), StructuralError);
    EXPECT_THROW(parse_rational("abc"), StructuralError);
}

TEST(Rational, Combinatorics) {
    EXPECT_EQ(factorial(5), Rational(120));
    EXPECT_EQ(binomial(6, 2), Rational(15));
    EXPECT_EQ(falling_factorial(5, 2), Rational(20));
    EXPECT_EQ(falling_factorial(2, 3), Rational(0));
}

TEST(Poly, ZeroPrintsAsZero) {
    EXPECT_EQ(to_string(Poly(R2)), "0");
    EXPECT_EQ(to_string(P("x1 - x1")), "0");
}

TEST(Poly, TextRoundTrip) {
    for (const std::string s : {"x1^2 + 2*x1*xi2 - 3/2*xi2^2", "-xi1", "7", "x1*x2*xi1*xi2"}) {
        const Poly p = P(s);
        EXPECT_EQ(P(to_string(p)), p) << s;
    }
}

TEST(Poly, MultiplicationByHand) {
    // (x1 + xi1)(x1 - xi1) = x1^2 - xi1^2
    EXPECT_EQ(P("x1 + xi1") * P("x1 - xi1"), P("x1^2 - xi1^2"));
    EXPECT_EQ(P("1/2*x2") * P("4*x2^2"), P("2*x2^3"));
}

TEST(Poly, PartialDerivatives) {
    const Poly p = P("x1^3*xi2^2 + 5*x2");
    EXPECT_EQ(partial_derivative(p, x_var(0)), P("3*x1^2*xi2^2"));
    EXPECT_EQ(partial_derivative(p, xi_var(1)), P("2*x1^3*xi2"));
    EXPECT_EQ(partial_derivative(p, x_var(1)), P("5"));
    Exponents idx{};
    idx[slot(R2, x_var(0))] = 2;
    idx[slot(R2, xi_var(1))] = 1;
    EXPECT_EQ(derivative(p, idx), P("12*x1*xi2"));
}

TEST(Poly, DegreesAndDecomposition) {
    const Poly p = P("x1*xi1 + xi2^2 + x2");
    EXPECT_EQ(p.homogeneous_xi_degree(), -2);
    EXPECT_EQ(Poly(R2).homogeneous_xi_degree(), -1);
    EXPECT_EQ(p.max_x_degree(), 1);
    const auto parts = xi_degree_decompose(p);
    ASSERT_EQ(parts.size(), 3u);
    EXPECT_EQ(parts[0].degree(), 0);
    EXPECT_EQ(parts[1].poly(), P("x1*xi1"));
    EXPECT_EQ(parts[2].poly(), P("xi2^2"));
}

TEST(Poly, SymbolSectionRejectsMixedDegree) {
    EXPECT_THROW(SymbolSection(P("xi1 + xi1^2"), 1), StructuralError);
    EXPECT_THROW(SymbolSection(P("xi1"), -1), DomainError);
    EXPECT_NO_THROW(SymbolSection(P("x1*xi1*xi2"), 2));
}

TEST(Poly, RingChecks) {
    EXPECT_THROW(Ring::single(0), DomainError);
    EXPECT_THROW(P("x1") + parse_poly(Ring::single(3), "x1"), StructuralError);
    EXPECT_THROW(P("x3"), StructuralError);
}

TEST(Poly, MonomialCount) {
    // C(d + m - 1, m - 1) monomials of degree d in m variables
    EXPECT_EQ(monomials_of_degree(0, 2, 3).size(), 4u);
    EXPECT_EQ(monomials_of_degree(0, 3, 2).size(), 6u);
    EXPECT_EQ(monomials_of_degree(0, 4, 0).size(), 1u);
}

TEST(Poly, DoubledRingDiagonal) {
    const Ring d = Ring::doubled(2);
    // x1 * y1 * eta2 restricts to x1^2 * xi2
    const Poly p = parse_poly(d, "x1*y1*eta2 + xi1");
    EXPECT_EQ(restrict_diagonal(p), P("x1^2*xi2 + xi1"));
    EXPECT_EQ(restrict_diagonal(embed_doubled(P("x2*xi1"), true)), P("x2*xi1"));
}
