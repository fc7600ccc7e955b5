#pragma once

#include "diff_operator.hpp"
#include "quantization.hpp"
#include "symbol_calculus.hpp"

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

namespace cohomolab {

/// Random inputs drawn from a fixed-seed generator: small polynomials with
/// small rational coefficients, so exact arithmetic stays cheap.
class RandomSource {
public:
    explicit RandomSource(std::uint64_t seed) : rng_(seed) {}

    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

    Rational rational() {
        int num = integer(-5, 5);
        if (num == 0) num = 1;
        return frac(num, integer(1, 3));
    }

    /// Up to `terms` monomials with x-degree <= xdeg and ξ-degree <= xideg.
    Poly poly(const Ring& ring, int terms, int xdeg, int xideg) {
        Poly p(ring);
        const int n = ring.dim;
        for (int t = 0; t < terms; ++t) {
            Exponents e{};
            const int dx = integer(0, xdeg), dxi = integer(0, xideg);
            for (int i = 0; i < dx; ++i) e[integer(0, n - 1)] += 1;
            for (int i = 0; i < dxi; ++i) e[n + integer(0, n - 1)] += 1;
            p.add_term(e, rational());
        }
        return p;
    }

    /// Homogeneous of ξ-degree k.
    Poly symbol(const Ring& ring, int terms, int xdeg, int k) {
        Poly p(ring);
        const int n = ring.dim;
        for (int t = 0; t < terms; ++t) {
            Exponents e{};
            const int dx = integer(0, xdeg);
            for (int i = 0; i < dx; ++i) e[integer(0, n - 1)] += 1;
            for (int i = 0; i < k; ++i) e[n + integer(0, n - 1)] += 1;
            p.add_term(e, rational());
        }
        return p;
    }

    VectorFieldSymbol field(int n, int terms, int max_degree) {
        const Ring ring = Ring::single(n);
        Poly p = symbol(ring, terms, max_degree, 1);
        if (p.is_zero()) p = Poly::variable(ring, xi_var(0));
        return VectorFieldSymbol(std::move(p));
    }

    PolyDiffOp op(const Ring& ring, int terms, int order, int xdeg, int xideg) {
        PolyDiffOp a(ring);
        const int n = ring.dim;
        for (int t = 0; t < terms; ++t) {
            Exponents idx{};
            const int d = integer(0, order);
            for (int i = 0; i < d; ++i) idx[integer(0, 2 * n - 1)] += 1;
            a.add_term(idx, poly(ring, 2, xdeg, xideg));
        }
        return a;
    }

private:
    std::mt19937_64 rng_;
};

struct PropertyResult {
    std::string name;
    int instances = 0;
    int failures = 0;
    std::string first_failure;

    bool passed() const { return failures == 0; }
};

namespace detail {

inline PropertyResult run_property(const std::string& name, int instances, RandomSource& rs,
                                   const std::function<std::string(RandomSource&, int)>& body) {
    PropertyResult r{name, instances, 0, {}};
    for (int i = 0; i < instances; ++i) {
        const std::string failure = body(rs, i);
        if (!failure.empty()) {
            if (r.failures++ == 0) r.first_failure = "instance " + std::to_string(i) + ": " + failure;
        }
    }
    return r;
}

}  // namespace detail

/// Ring axioms, Leibniz rules, Jacobi, the module-action axiom, the section
/// property σ_k∘τ = id, [E, D] = −D, composition versus iterated application,
/// and X ↦ L^λ_X being a morphism. Deterministic for a given seed.
inline std::vector<PropertyResult> run_property_suite(std::uint64_t seed, int instances = 100) {
    RandomSource rs(seed);
    std::vector<PropertyResult> out;
    auto dim = [](RandomSource& r) { return r.integer(2, 3); };

    out.push_back(detail::run_property("ring axioms", instances, rs, [&](RandomSource& r, int) -> std::string {
        const Ring ring = Ring::single(dim(r));
        const Poly a = r.poly(ring, 4, 2, 2), b = r.poly(ring, 4, 2, 2), c = r.poly(ring, 4, 2, 2);
        if (!((a + b) + c == a + (b + c))) return "addition is not associative";
        if (!(a + b == b + a)) return "addition is not commutative";
        if (!((a * b) * c == a * (b * c))) return "multiplication is not associative";
        if (!(a * b == b * a)) return "multiplication is not commutative";
        if (!(a * (b + c) == a * b + a * c)) return "distributivity fails";
        if (!((a - a).is_zero())) return "a - a is not zero";
        if (!(a * Poly::constant(ring, 1) == a)) return "1 is not a unit";
        return {};
    }));

    out.push_back(detail::run_property("Leibniz", instances, rs, [&](RandomSource& r, int) -> std::string {
        const int n = dim(r);
        const Ring ring = Ring::single(n);
        const Poly a = r.poly(ring, 4, 3, 2), b = r.poly(ring, 4, 3, 2), f = r.poly(ring, 3, 2, 2);
        const Var v = var_at(ring, r.integer(0, 2 * n - 1));
        if (!(partial_derivative(a * b, v) == partial_derivative(a, v) * b + a * partial_derivative(b, v)))
            return "partial derivative is not a derivation";
        if (!(schouten_bracket(f, a * b) == schouten_bracket(f, a) * b + a * schouten_bracket(f, b)))
            return "bracket is not a derivation";
        return {};
    }));

    out.push_back(detail::run_property("Jacobi", instances, rs, [&](RandomSource& r, int) -> std::string {
        const Ring ring = Ring::single(dim(r));
        const Poly f = r.poly(ring, 3, 2, 2), g = r.poly(ring, 3, 2, 2), h = r.poly(ring, 3, 2, 2);
        const Poly j = schouten_bracket(f, schouten_bracket(g, h)) + schouten_bracket(g, schouten_bracket(h, f)) +
                       schouten_bracket(h, schouten_bracket(f, g));
        if (!j.is_zero()) return "Jacobi defect " + to_string(j);
        if (!(schouten_bracket(f, g) == Rational(-1) * schouten_bracket(g, f))) return "bracket is not antisymmetric";
        return {};
    }));

    out.push_back(detail::run_property("module-action axiom", instances, rs, [&](RandomSource& r, int) -> std::string {
        const int n = dim(r);
        const int k = r.integer(1, 3), l = r.integer(0, k);
        const VectorFieldSymbol x = r.field(n, 2, 3), y = r.field(n, 2, 3);
        // a random operator S_k → S_l: coefficients of ξ-degree l times ξ-derivatives of order k
        const Ring ring = Ring::single(n);
        PolyDiffOp a(ring);
        for (int t = 0; t < 3; ++t) {
            Exponents idx{};
            for (int i = r.integer(0, 2); i > 0; --i) idx[r.integer(0, n - 1)] += 1;
            for (int i = 0; i < k; ++i) idx[n + r.integer(0, n - 1)] += 1;
            a.add_term(idx, r.symbol(ring, 2, 2, l));
        }
        const PolyDiffOp lhs = module_action(x, module_action(y, a, k, l), k, l) -
                               module_action(y, module_action(x, a, k, l), k, l);
        const PolyDiffOp rhs = module_action(lie_bracket(x, y), a, k, l);
        if (!(lhs == rhs)) return "X.(Y.A) - Y.(X.A) differs from [X,Y].A";
        return {};
    }));

    out.push_back(detail::run_property("section property", instances, rs, [&](RandomSource& r, int) -> std::string {
        const int n = dim(r), k = r.integer(0, 4);
        const Rational lambda = r.rational();
        const SymbolSection p(r.symbol(Ring::single(n), 3, 3, k), k);
        if (!(principal_symbol(normal_order_section(p, lambda), k) == p)) return "sigma_k(tau(P)) != P (normal)";
        if (!(principal_symbol(symmetrized_section(p, lambda), k) == p)) return "sigma_k(tau(P)) != P (symmetrized)";
        return {};
    }));

    out.push_back(detail::run_property("[E, D] = -D", instances, rs, [&](RandomSource& r, int i) -> std::string {
        const int n = 2 + i % 2;
        const PolyDiffOp e = euler_operator(n), d = divergence_operator(n);
        if (!(commutator(e, d) == Rational(-1) * d)) return "operator identity fails";
        const Poly p = r.poly(Ring::single(n), 5, 3, 3);
        if (!(euler_op(div_op(p)) - div_op(euler_op(p)) == Rational(-1) * div_op(p))) return "fails on " + to_string(p);
        return {};
    }));

    out.push_back(detail::run_property("compose vs apply", instances, rs, [&](RandomSource& r, int) -> std::string {
        const Ring ring = Ring::single(dim(r));
        const PolyDiffOp a = r.op(ring, 3, 2, 2, 1), b = r.op(ring, 3, 2, 2, 1);
        const Poly p = r.poly(ring, 4, 3, 3);
        if (!(apply(compose(a, b), p) == apply(a, apply(b, p)))) return "apply(AB) != A(B(P))";
        return {};
    }));

    out.push_back(detail::run_property("weighted Lie derivative is a morphism", instances, rs,
                                       [&](RandomSource& r, int) -> std::string {
                                           const int n = dim(r);
                                           const Rational lambda = r.rational();
                                           const VectorFieldSymbol x = r.field(n, 2, 3), y = r.field(n, 2, 3);
                                           const DensityOperator lhs = commutator(weighted_lie_derivative(x, lambda),
                                                                                  weighted_lie_derivative(y, lambda));
                                           if (!(lhs == weighted_lie_derivative(lie_bracket(x, y), lambda)))
                                               return "[L_X, L_Y] != L_[X,Y]";
                                           return {};
                                       }));
    return out;
}

}  // namespace cohomolab
