#pragma once

#include "cocycle_lab.hpp"
#include "diff_operator.hpp"
#include "symbol_calculus.hpp"

#include <functional>
#include <string>
#include <utility>

namespace cohomolab {

/// A differential operator on λ-densities of R^n. Densities are represented
/// by their coefficient against the flat volume form, so only x-derivatives
/// and ξ-free coefficients occur.
class DensityOperator {
public:
    DensityOperator(PolyDiffOp op, Rational weight) : op_(std::move(op)), weight_(std::move(weight)) {
        if (op_.ring().mode != RingMode::single) throw StructuralError("density operators live over the single ring");
        const int n = op_.dim();
        for (const auto& [idx, c] : op_.terms()) {
            for (int i = n; i < 2 * n; ++i)
                if (idx[i] != 0) throw StructuralError("density operators only differentiate in x");
            if (c.homogeneous_xi_degree() > 0 || c.homogeneous_xi_degree() == -2)
                throw StructuralError("density operator coefficients must be xi-free");
        }
    }

    const PolyDiffOp& op() const { return op_; }
    const Rational& weight() const { return weight_; }
    int dim() const { return op_.dim(); }
    int order() const { return op_.x_order(); }
    bool is_zero() const { return op_.is_zero(); }

    bool operator==(const DensityOperator& o) const { return weight_ == o.weight_ && op_ == o.op_; }

private:
    PolyDiffOp op_;
    Rational weight_;
};

inline void require_same_weight(const DensityOperator& a, const DensityOperator& b) {
    if (a.weight() != b.weight()) throw StructuralError("density operators of different weights");
}

inline DensityOperator operator+(const DensityOperator& a, const DensityOperator& b) {
    require_same_weight(a, b);
    return {a.op() + b.op(), a.weight()};
}
inline DensityOperator operator-(const DensityOperator& a, const DensityOperator& b) {
    require_same_weight(a, b);
    return {a.op() - b.op(), a.weight()};
}
inline DensityOperator operator*(const Rational& s, const DensityOperator& a) { return {s * a.op(), a.weight()}; }

inline DensityOperator compose(const DensityOperator& a, const DensityOperator& b) {
    require_same_weight(a, b);
    return {compose(a.op(), b.op()), a.weight()};
}
inline DensityOperator commutator(const DensityOperator& a, const DensityOperator& b) {
    require_same_weight(a, b);
    return {commutator(a.op(), b.op()), a.weight()};
}

/// L^λ_X = X^i ∂_i + λ div X
inline DensityOperator weighted_lie_derivative(const VectorFieldSymbol& x, const Rational& lambda) {
    const Ring ring = x.ring();
    PolyDiffOp op = PolyDiffOp::multiplication(lambda * divergence(x));
    for (int i = 0; i < x.dim(); ++i)
        op += compose(PolyDiffOp::multiplication(x.component(i)), PolyDiffOp::partial(ring, x_var(i)));
    return {std::move(op), lambda};
}

/// σ_j(A) = Σ_{|α|=j} a_α ξ^α
inline SymbolSection principal_symbol(const DensityOperator& a, int j) {
    if (a.order() > j)
        throw DomainError("principal_symbol: order " + std::to_string(a.order()) + " exceeds " + std::to_string(j));
    const Ring ring = a.op().ring();
    const int n = ring.dim;
    Poly s(ring);
    for (const auto& [idx, c] : a.op().terms()) {
        if (detail::block_sum(idx, 0, n) != j) continue;
        Exponents xi{};
        for (int i = 0; i < n; ++i) xi[n + i] = idx[i];
        s += c * Poly::monomial(ring, xi);
    }
    return SymbolSection(std::move(s), j);
}

namespace detail {

/// Split x^a ξ^b into (x^a, ∂_x^b).
inline std::pair<Exponents, Exponents> split_symbol_monomial(const Exponents& e, int n) {
    Exponents xs{}, ds{};
    for (int i = 0; i < n; ++i) {
        xs[i] = e[i];
        ds[i] = e[n + i];
    }
    return {xs, ds};
}

}  // namespace detail

/// ξ^b ↦ ∂^b with the coefficient kept on the left.
inline DensityOperator normal_order_section(const SymbolSection& p, const Rational& lambda) {
    const Ring ring = p.poly().ring();
    PolyDiffOp op(ring);
    for (const auto& [e, c] : p.poly().terms()) {
        auto [xs, ds] = detail::split_symbol_monomial(e, ring.dim);
        op.add_term(ds, Poly::monomial(ring, xs, c));
    }
    return {std::move(op), lambda};
}

/// ξ^b ↦ ∂^b with the coefficient on the right, i.e. ∂^b ∘ a(x).
inline DensityOperator right_order_section(const SymbolSection& p, const Rational& lambda) {
    const Ring ring = p.poly().ring();
    PolyDiffOp op(ring);
    for (const auto& [e, c] : p.poly().terms()) {
        auto [xs, ds] = detail::split_symbol_monomial(e, ring.dim);
        op += compose(PolyDiffOp::term(Poly::constant(ring, 1), ds),
                      PolyDiffOp::multiplication(Poly::monomial(ring, xs, c)));
    }
    return {std::move(op), lambda};
}

/// Average of the left and right orderings.
inline DensityOperator symmetrized_section(const SymbolSection& p, const Rational& lambda) {
    return frac(1, 2) * (normal_order_section(p, lambda) + right_order_section(p, lambda));
}

/// A right inverse of the principal symbol S_k → D^k_λ.
struct Section {
    std::string name;
    Rational weight;
    std::function<DensityOperator(const SymbolSection&)> map;

    DensityOperator operator()(const SymbolSection& p) const { return map(p); }
};

inline Section normal_ordering(const Rational& lambda) {
    return {"normal", lambda, [lambda](const SymbolSection& p) { return normal_order_section(p, lambda); }};
}

inline Section symmetrized_ordering(const Rational& lambda) {
    return {"symmetrized", lambda, [lambda](const SymbolSection& p) { return symmetrized_section(p, lambda); }};
}

/// P ↦ τ(P) − τ(B(P)), for B : S_k → S_{k-1} in canonical form on S_k.
inline Section corrected_section(const Section& tau, const PolyDiffOp& b, int k) {
    const PolyDiffOp canon = restrict_to_degree(b, k);
    if (!maps_degree(canon, k, k - 1)) throw DomainError("section correction must map S_k to S_{k-1}");
    return {tau.name + "-corrected", tau.weight, [tau, canon, k](const SymbolSection& p) {
                if (p.degree() != k) throw DomainError("corrected section is only defined on S_k");
                return tau(p) - tau(SymbolSection(apply(canon, p.poly()), k - 1));
            }};
}

/// γ^τ(X)(P) = L^λ_X ∘ τ(P) − τ(P) ∘ L^λ_X − τ(L_X P)
inline DensityOperator sequence_cocycle(const VectorFieldSymbol& x, const SymbolSection& p, const Section& tau) {
    if (p.degree() < 1) throw DomainError("sequence_cocycle needs symbols of degree >= 1");
    const DensityOperator lx = weighted_lie_derivative(x, tau.weight);
    return commutator(lx, tau(p)) - tau(hamiltonian_action(x, p));
}

inline DensityOperator sequence_cocycle(const VectorFieldSymbol& x, const SymbolSection& p, const Rational& lambda) {
    return sequence_cocycle(x, p, normal_ordering(lambda));
}

/// X ↦ (P ↦ σ_{k-drop}(γ^τ(X)(P))) as a cocycle with values in
/// D(S_k, S_{k-drop}). The value is rebuilt from its action on monomials,
/// assuming x-order <= x_order (checked one degree higher).
inline OneCocycle symbol_cocycle(int n, int k, const Section& tau, int drop = 1, int x_order = 1) {
    if (k < drop || drop < 1) throw DomainError("symbol_cocycle needs 1 <= drop <= k");
    std::string name = "quantization(" + tau.name + ", lambda=" + to_string(tau.weight) + ", sigma_" +
                       std::to_string(k - drop) + ")";
    return {std::move(name), n, k, k - drop, [=](const VectorFieldSymbol& x) {
                return operator_from_action(n, k, x_order, [&](const Poly& p) {
                    return principal_symbol(sequence_cocycle(x, SymbolSection(p, k), tau), k - drop).poly();
                });
            }};
}

/// σ_{k-1} ∘ γ^τ for normal ordering.
inline OneCocycle quantization_first_cocycle(int n, int k, const Rational& lambda) {
    return symbol_cocycle(n, k, normal_ordering(lambda));
}

/// For λ = 1/2 the first cocycle is X ↦ X.B. Correcting normal ordering by B
/// kills the σ_{k-1} part; the σ_{k-2} part of the corrected cocycle remains.
inline OneCocycle quantization_second_cocycle(int n, int k, const Rational& lambda, const PolyDiffOp& splitting) {
    if (k < 2) throw DomainError("the second quantization cocycle needs k >= 2");
    return symbol_cocycle(n, k, corrected_section(normal_ordering(lambda), splitting, k), 2, 3);
}

}  // namespace cohomolab
