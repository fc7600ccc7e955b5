#pragma once

#include "poly.hpp"

#include <string>
#include <vector>

namespace cohomolab {

/// A polynomial vector field X = X^i ∂_i, stored as its degree-1 symbol X^i ξ_i.
class VectorFieldSymbol {
public:
    explicit VectorFieldSymbol(Poly symbol) : symbol_(std::move(symbol)) {
        if (symbol_.ring().mode != RingMode::single) throw StructuralError("vector fields live in the single ring");
        const int d = symbol_.homogeneous_xi_degree();
        if (d != -1 && d != 1) throw StructuralError("a vector field symbol must have xi-degree exactly 1");
    }

    /// Σ_i components[i] ξ_i, with ξ-free components.
    static VectorFieldSymbol from_components(const std::vector<Poly>& components) {
        if (components.empty()) throw StructuralError("no components");
        const Ring ring = components.front().ring();
        Poly s(ring);
        for (int i = 0; i < static_cast<int>(components.size()); ++i) {
            if (components[i].homogeneous_xi_degree() > 0 || components[i].homogeneous_xi_degree() == -2)
                throw StructuralError("vector field components must be xi-free");
            s += components[i] * Poly::variable(ring, xi_var(i));
        }
        return VectorFieldSymbol(std::move(s));
    }

    const Poly& poly() const { return symbol_; }
    const Ring& ring() const { return symbol_.ring(); }
    int dim() const { return symbol_.dim(); }

    /// X^i = ∂X/∂ξ_i
    Poly component(int i) const { return partial_derivative(symbol_, xi_var(i)); }

    bool operator==(const VectorFieldSymbol&) const = default;

private:
    Poly symbol_;
};

inline VectorFieldSymbol operator+(const VectorFieldSymbol& a, const VectorFieldSymbol& b) {
    return VectorFieldSymbol(a.poly() + b.poly());
}
inline VectorFieldSymbol operator*(const Rational& s, const VectorFieldSymbol& a) {
    return VectorFieldSymbol(s * a.poly());
}

/// Canonical Poisson bracket {F, G} = ∂F/∂ξ_i ∂G/∂x^i − ∂F/∂x^i ∂G/∂ξ_i.
/// Restricted to vector fields this is the Lie bracket.
inline Poly schouten_bracket(const Poly& f, const Poly& g) {
    f.require_same_ring(g);
    if (f.ring().mode != RingMode::single) throw StructuralError("schouten_bracket needs the single ring");
    Poly r(f.ring());
    for (int i = 0; i < f.dim(); ++i) {
        r += partial_derivative(f, xi_var(i)) * partial_derivative(g, x_var(i));
        r -= partial_derivative(f, x_var(i)) * partial_derivative(g, xi_var(i));
    }
    return r;
}

inline VectorFieldSymbol lie_bracket(const VectorFieldSymbol& a, const VectorFieldSymbol& b) {
    return VectorFieldSymbol(schouten_bracket(a.poly(), b.poly()));
}

/// L_X P for the cotangent lift of X acting on a symbol. Written in
/// vector-field form, X^i ∂_i P − (∂_i X^j) ξ_j ∂P/∂ξ_i, independently of the
/// generic bracket.
inline Poly hamiltonian_action(const VectorFieldSymbol& x, const Poly& p) {
    x.poly().require_same_ring(p);
    const Ring ring = p.ring();
    const int n = ring.dim;
    Poly r(ring);
    for (int i = 0; i < n; ++i) {
        const Poly xi_comp = x.component(i);
        r += xi_comp * partial_derivative(p, x_var(i));
        const Poly dp = partial_derivative(p, xi_var(i));
        if (dp.is_zero()) continue;
        Poly lifted(ring);
        for (int j = 0; j < n; ++j) lifted += partial_derivative(x.component(j), x_var(i)) * Poly::variable(ring, xi_var(j));
        r -= lifted * dp;
    }
    return r;
}

inline SymbolSection hamiltonian_action(const VectorFieldSymbol& x, const SymbolSection& p) {
    return SymbolSection(hamiltonian_action(x, p.poly()), p.degree());
}

/// E = ξ_i ∂/∂ξ_i
inline Poly euler_op(const Poly& p) {
    Poly r(p.ring());
    for (const auto& [e, c] : p.terms()) r.add_term(e, c * p.xi_degree_of(e));
    return r;
}

/// D = Σ_i ∂/∂x^i ∂/∂ξ_i
inline Poly div_op(const Poly& p) {
    if (p.ring().mode != RingMode::single) throw StructuralError("div_op needs the single ring");
    Poly r(p.ring());
    for (int i = 0; i < p.dim(); ++i) r += partial_derivative(partial_derivative(p, xi_var(i)), x_var(i));
    return r;
}

/// Euclidean divergence ∂_i X^i.
inline Poly divergence(const VectorFieldSymbol& x) {
    Poly r(x.ring());
    for (int i = 0; i < x.dim(); ++i) r += partial_derivative(x.component(i), x_var(i));
    return r;
}

// ---------------------------------------------------------------------------
// Generators of sl(n+1) acting projectively on R^n.

enum class GeneratorKind { translation, linear, quadratic };

struct LabeledField {
    std::string label;  // "T i", "L i j", "Q i" (1-based)
    GeneratorKind kind;
    VectorFieldSymbol field;
};

struct GeneratorFamily {
    int dim;
    std::vector<LabeledField> members;

    std::vector<LabeledField> of_kind(GeneratorKind k) const {
        std::vector<LabeledField> out;
        for (const auto& m : members)
            if (m.kind == k) out.push_back(m);
        return out;
    }
    std::vector<LabeledField> affine() const {
        std::vector<LabeledField> out;
        for (const auto& m : members)
            if (m.kind != GeneratorKind::quadratic) out.push_back(m);
        return out;
    }
    const LabeledField& find(const std::string& label) const {
        for (const auto& m : members)
            if (m.label == label) return m;
        throw StructuralError("no generator labeled '" + label + "'");
    }
};

/// Euler field x^i ξ_i.
inline VectorFieldSymbol euler_field(int n) {
    const Ring ring = Ring::single(n);
    Poly e(ring);
    for (int i = 0; i < n; ++i) e += Poly::variable(ring, x_var(i)) * Poly::variable(ring, xi_var(i));
    return VectorFieldSymbol(e);
}

/// X_i = ξ_i, X_ij = x^i ξ_j, X̄_i = x^i (x^j ξ_j).
inline GeneratorFamily sl_generators(int n) {
    if (n < 2) throw DomainError("sl(n+1) generators need n >= 2");
    const Ring ring = Ring::single(n);
    GeneratorFamily fam{n, {}};
    for (int i = 0; i < n; ++i)
        fam.members.push_back({"T " + std::to_string(i + 1), GeneratorKind::translation,
                               VectorFieldSymbol(Poly::variable(ring, xi_var(i)))});
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            fam.members.push_back({"L " + std::to_string(i + 1) + " " + std::to_string(j + 1), GeneratorKind::linear,
                                   VectorFieldSymbol(Poly::variable(ring, x_var(i)) * Poly::variable(ring, xi_var(j)))});
    const Poly euler = euler_field(n).poly();
    for (int i = 0; i < n; ++i)
        fam.members.push_back({"Q " + std::to_string(i + 1), GeneratorKind::quadratic,
                               VectorFieldSymbol(Poly::variable(ring, x_var(i)) * euler)});
    return fam;
}

/// All monomial fields x^a ξ_j with min_degree <= |a| <= max_degree, ordered by
/// degree, then descending lexicographically, then by j.
inline std::vector<VectorFieldSymbol> monomial_fields(int n, int max_degree, int min_degree = 0) {
    const Ring ring = Ring::single(n);
    std::vector<VectorFieldSymbol> out;
    for (int d = min_degree; d <= max_degree; ++d)
        for (const auto& a : monomials_of_degree(0, n, d))
            for (int j = 0; j < n; ++j) {
                Exponents e = a;
                e[slot(ring, xi_var(j))] = 1;
                out.emplace_back(Poly::monomial(ring, e));
            }
    return out;
}

// ---------------------------------------------------------------------------
// Closed polynomial 1-forms and the cocycle a·div X + i_X ω.

/// ω = ω_i dx^i with ξ-free polynomial components.
struct OneForm {
    std::vector<Poly> components;

    int dim() const { return static_cast<int>(components.size()); }

    static OneForm zero(int n) { return OneForm{std::vector<Poly>(n, Poly(Ring::single(n)))}; }
};

inline void validate_form(const OneForm& w) {
    if (w.components.empty()) throw StructuralError("empty 1-form");
    for (const auto& c : w.components) {
        if (c.ring() != Ring::single(w.dim())) throw StructuralError("1-form components must share the single ring");
        if (c.homogeneous_xi_degree() > 0 || c.homogeneous_xi_degree() == -2)
            throw StructuralError("1-form components must be xi-free");
    }
}

/// dω = 0, i.e. the Jacobian ∂_j ω_i is symmetric.
inline bool is_closed(const OneForm& w) {
    validate_form(w);
    for (int i = 0; i < w.dim(); ++i)
        for (int j = i + 1; j < w.dim(); ++j)
            if (!(partial_derivative(w.components[i], x_var(j)) == partial_derivative(w.components[j], x_var(i))))
                return false;
    return true;
}

/// f with df = ω, vanishing at the origin (radial homotopy formula).
inline Poly primitive(const OneForm& w) {
    if (!is_closed(w)) throw DomainError("1-form is not closed");
    const Ring ring = Ring::single(w.dim());
    Poly f(ring);
    for (int i = 0; i < w.dim(); ++i)
        for (const auto& [e, c] : w.components[i].terms()) {
            Exponents g = e;
            g[slot(ring, x_var(i))] += 1;
            f.add_term(g, c / (f.x_degree_of(e) + 1));
        }
    return f;
}

/// a·div X + i_X ω: a function, acting on every S_k by multiplication.
inline Poly divergence_cocycle(const Rational& a, const OneForm& w, const VectorFieldSymbol& x) {
    if (!is_closed(w)) throw DomainError("divergence_cocycle needs a closed 1-form");
    if (w.dim() != x.dim()) throw StructuralError("dimension mismatch between 1-form and vector field");
    Poly r = a * divergence(x);
    for (int i = 0; i < x.dim(); ++i) r += x.component(i) * w.components[i];
    return r;
}

}  // namespace cohomolab
