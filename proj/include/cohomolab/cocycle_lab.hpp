#pragma once

#include "diff_operator.hpp"
#include "equivariance_solver.hpp"
#include "linear_system.hpp"
#include "symbol_calculus.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace cohomolab {

/// A linear map X ↦ c(X) from polynomial vector fields to D(S_k, S_ℓ).
struct OneCocycle {
    std::string name;
    int dim = 2;
    int source_degree = 0;
    int target_degree = 0;
    std::function<PolyDiffOp(const VectorFieldSymbol&)> rule;

    /// c(X) in canonical form on S_k; throws when the (k, ℓ) contract fails.
    PolyDiffOp operator()(const VectorFieldSymbol& x) const {
        if (x.dim() != dim) throw StructuralError("vector field dimension does not match the cocycle");
        PolyDiffOp v = restrict_to_degree(rule(x), source_degree);
        for (const auto& [idx, c] : v.terms())
            if (c.homogeneous_xi_degree() != target_degree)
                throw DomainError(name + ": value does not map S_" + std::to_string(source_degree) + " to S_" +
                                  std::to_string(target_degree));
        return v;
    }
};

/// Evaluates a cocycle by linearity from cached values on monomial fields,
/// and caches the Hamiltonian operators used by the module action.
class CocycleEvaluator {
public:
    explicit CocycleEvaluator(const OneCocycle& c) : c_(c) {}

    const OneCocycle& cocycle() const { return c_; }

    PolyDiffOp value(const VectorFieldSymbol& x) {
        PolyDiffOp r(Ring::single(c_.dim));
        for (const auto& [e, coeff] : x.poly().terms()) {
            auto it = cache_.find(e);
            if (it == cache_.end())
                it = cache_.emplace(e, c_(VectorFieldSymbol(Poly::monomial(x.ring(), e)))).first;
            r += coeff * it->second;
        }
        return r;
    }

    /// X.A for A already in canonical form on S_k.
    PolyDiffOp act(const VectorFieldSymbol& x, const PolyDiffOp& a) {
        auto it = hamiltonians_.find(x.poly());
        if (it == hamiltonians_.end()) it = hamiltonians_.emplace(x.poly(), hamiltonian_operator(x)).first;
        return restrict_to_degree(commutator(it->second, a), c_.source_degree);
    }

private:
    const OneCocycle& c_;
    std::map<Exponents, PolyDiffOp, std::greater<>> cache_;
    std::map<Poly, PolyDiffOp> hamiltonians_;
};

struct Counterexample {
    VectorFieldSymbol x;
    VectorFieldSymbol y;
    PolyDiffOp defect;  // c([X,Y]) − X.c(Y) + Y.c(X)
};

struct CocycleCheck {
    bool holds = true;
    int max_vf_degree = 0;
    std::size_t pairs_checked = 0;
    std::optional<Counterexample> counterexample;
};

/// c([X,Y]) = X.c(Y) − Y.c(X) on all pairs of monomial fields of degree <= d.
/// The first failing pair in canonical order is reported.
inline CocycleCheck cocycle_check(const OneCocycle& c, int d) {
    if (d < 2) throw DomainError("cocycle_check needs max vector-field degree >= 2");
    CocycleEvaluator ev(c);
    const auto fields = monomial_fields(c.dim, d);
    std::vector<PolyDiffOp> values;
    for (const auto& f : fields) values.push_back(ev.value(f));
    CocycleCheck out{true, d, 0, std::nullopt};
    for (std::size_t i = 0; i < fields.size(); ++i)
        for (std::size_t j = i + 1; j < fields.size(); ++j) {
            ++out.pairs_checked;
            PolyDiffOp defect = ev.value(lie_bracket(fields[i], fields[j]));
            defect -= ev.act(fields[i], values[j]);
            defect += ev.act(fields[j], values[i]);
            if (!defect.is_zero()) {
                out.holds = false;
                out.counterexample = Counterexample{fields[i], fields[j], std::move(defect)};
                return out;
            }
        }
    return out;
}

inline std::vector<VectorFieldSymbol> default_test_fields(int n, int max_degree = 3) {
    std::vector<VectorFieldSymbol> out;
    for (const auto& g : sl_generators(n).members) out.push_back(g.field);
    for (const auto& f : monomial_fields(n, max_degree)) out.push_back(f);
    return out;
}

/// c = Σ_i t_i c_i + (X ↦ X.B) with B in the span of the candidates.
struct ClassDecomposition {
    Vector multiples;
    PolyDiffOp witness;
};

/// Solve c(X) = Σ_i t_i c_i(X) + X.B exactly on every field of `fields`
/// (sl(n+1) generators and monomial fields of degree <= 3 by default).
inline std::optional<ClassDecomposition> decompose_class(const OneCocycle& c, const std::vector<OneCocycle>& classes,
                                                         const std::vector<PolyDiffOp>& candidates,
                                                         std::vector<VectorFieldSymbol> fields = {}) {
    const int n = c.dim, k = c.source_degree, l = c.target_degree;
    for (const auto& other : classes)
        if (other.dim != n || other.source_degree != k || other.target_degree != l)
            throw StructuralError("class representatives must share (n, k, l) with the cocycle");
    std::vector<PolyDiffOp> canon;
    for (const auto& b : candidates) {
        canon.push_back(restrict_to_degree(b, k));
        if (!maps_degree(canon.back(), k, l)) throw DomainError("candidate does not map S_k to S_l");
    }
    if (fields.empty()) fields = default_test_fields(n);

    CocycleEvaluator ev(c);
    std::vector<CocycleEvaluator> others;
    for (const auto& o : classes) others.emplace_back(o);
    const std::size_t r = classes.size(), m = canon.size();
    // unknowns: [u0, t_1..t_r, b_1..b_m] with u0·c − Σ t_i c_i − Σ b_j X.B_j = 0
    LinearSystem sys(1 + r + m);
    for (const auto& x : fields) {
        std::vector<PolyDiffOp> cols;
        cols.push_back(ev.value(x));
        for (auto& o : others) cols.push_back(Rational(-1) * o.value(x));
        for (const auto& b : canon) cols.push_back(Rational(-1) * ev.act(x, b));
        detail::add_operator_equations(sys, cols);
    }
    for (const auto& v : sys.nullspace()) {
        if (v[0] == 0) continue;
        ClassDecomposition d{Vector(r), PolyDiffOp(Ring::single(n))};
        for (std::size_t i = 0; i < r; ++i) d.multiples[i] = v[1 + i] / v[0];
        for (std::size_t j = 0; j < m; ++j)
            if (v[1 + r + j] != 0) d.witness += (v[1 + r + j] / v[0]) * canon[j];
        return d;
    }
    return std::nullopt;
}

struct CoboundaryResult {
    std::optional<PolyDiffOp> witness;
    std::size_t candidate_count = 0;
    std::string candidate_space;

    std::string verdict() const { return witness ? "coboundary" : "none within candidate space"; }
};

/// Solve c(X) = X.B exactly for B in the span of the candidates.
inline CoboundaryResult coboundary_solve(const OneCocycle& c, const std::vector<PolyDiffOp>& candidates,
                                         std::string description = "custom") {
    CoboundaryResult out{std::nullopt, candidates.size(), std::move(description)};
    if (auto d = decompose_class(c, {}, candidates)) out.witness = std::move(d->witness);
    return out;
}

inline bool vanishes_on(const OneCocycle& c, const std::vector<LabeledField>& gens) {
    for (const auto& g : gens)
        if (!c(g.field).is_zero()) return false;
    return true;
}

inline bool vanishes_on_sl(const OneCocycle& c) { return vanishes_on(c, sl_generators(c.dim).members); }
inline bool vanishes_on_affine(const OneCocycle& c) { return vanishes_on(c, sl_generators(c.dim).affine()); }

/// Candidates for cobounding a cocycle with values in D(S_k, S_ℓ): the
/// affine-equivariant operators of x-order <= max(4, k − ℓ) when k > ℓ, and
/// multiplications by x-monomials of degree <= 3 when k = ℓ.
inline std::pair<std::vector<PolyDiffOp>, std::string> default_candidates(int n, int k, int l) {
    if (k == l) {
        std::vector<PolyDiffOp> out;
        const Ring ring = Ring::single(n);
        for (int d = 0; d <= 3; ++d)
            for (const auto& a : monomials_of_degree(0, n, d))
                out.push_back(PolyDiffOp::multiplication(Poly::monomial(ring, a)));
        return {out, "multiplication by x-monomials of degree <= 3"};
    }
    const int r = std::max(4, k - l);
    return {affine_equivariant_basis(n, k, l, r), "affine-equivariant, x-order <= " + std::to_string(r)};
}

// ---------------------------------------------------------------------------
// Built-in cocycles.

namespace detail {

inline void check_builtin(int n, int k, int min_k) {
    if (n < 2 || n > kMaxDimension) throw DomainError("built-in cocycles need 2 <= n <= 8");
    if (k < min_k) throw DomainError("built-in cocycle needs k >= " + std::to_string(min_k));
}

/// Σ_{i,j} coeff(i,j) ∂/∂ξ_i ∂/∂ξ_j
template <class F>
PolyDiffOp second_xi_order(int n, F&& coeff) {
    const Ring ring = Ring::single(n);
    PolyDiffOp op(ring);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Exponents e{};
            e[slot(ring, xi_var(i))] += 1;
            e[slot(ring, xi_var(j))] += 1;
            op.add_term(e, coeff(i, j));
        }
    return op;
}

}  // namespace detail

/// ⟨P, ∂_i∂_j X^ℓ⟩ = ∂_i∂_j X^ℓ ξ_ℓ ∂²P/∂ξ_i∂ξ_j: the Hessian of the symbol of X.
inline PolyDiffOp hessian_contraction(const VectorFieldSymbol& x) {
    return detail::second_xi_order(x.dim(), [&](int i, int j) {
        return partial_derivative(partial_derivative(x.poly(), x_var(i)), x_var(j));
    });
}

/// ξ_j ∂_i(div X) ∂²P/∂ξ_i∂ξ_j
inline PolyDiffOp trace_contraction(const VectorFieldSymbol& x) {
    const Poly div = divergence(x);
    return detail::second_xi_order(x.dim(), [&](int i, int j) {
        return partial_derivative(div, x_var(i)) * Poly::variable(x.ring(), xi_var(j));
    });
}

inline OneCocycle builtin_gamma1_flat(int n, int k) {
    detail::check_builtin(n, k, 2);
    return {"gamma1", n, k, k - 1, [](const VectorFieldSymbol& x) { return hessian_contraction(x); }};
}

/// Contraction with ∂_i∂_j X^ℓ − (2/(n+1)) δ^ℓ_j ∂_i div X, the Lie
/// derivative of the flat projective connection. Vanishes on sl(n+1).
inline OneCocycle builtin_c1(int n, int k) {
    detail::check_builtin(n, k, 2);
    const Rational w = frac(2, n + 1);
    return {"c1", n, k, k - 1, [w](const VectorFieldSymbol& x) {
                return hessian_contraction(x) - w * trace_contraction(x);
            }};
}

/// builtin_c1 in ansatz form: α2 = 2, β2 = −2(k−1)/(n+1), i.e. twice the
/// line with α2 = 1.
inline AnsatzCoefficients c1_coefficients(int n, int k) {
    detail::check_builtin(n, k, 2);
    AnsatzCoefficients c = AnsatzCoefficients::zero(1, k);
    c.alpha[2] = 2;
    c.beta[1] = frac(-2 * (k - 1), n + 1);
    return c;
}

/// (α2, α3, β2, β3, γ2) = (2, 2k+n+1, 1, 2, −(2k+n−3)); α dropped when k = 2.
inline AnsatzCoefficients c2_coefficients(int n, int k) {
    detail::check_builtin(n, k, 2);
    AnsatzCoefficients c = AnsatzCoefficients::zero(2, k);
    if (c.has_alpha()) {
        c.alpha[2] = 2;
        c.alpha[3] = 2 * k + n + 1;
    }
    c.beta[1] = 1;
    c.beta[2] = 2;
    c.gamma[2] = -(2 * k + n - 3);
    return c;
}

inline OneCocycle cocycle_from_bilinear(std::string name, const BilinearOp& op) {
    return {std::move(name), op.dim(), op.source_degree(), op.target_degree(),
            [op](const VectorFieldSymbol& x) { return op.partial(x); }};
}

inline OneCocycle builtin_c2(int n, int k) {
    return cocycle_from_bilinear("c2", build_bilinear(c2_coefficients(n, k), n));
}

/// X ↦ multiplication by a·div X + i_X ω on S_k.
inline OneCocycle builtin_div(const Rational& a, const OneForm& w, int k) {
    if (!is_closed(w)) throw DomainError("builtin_div needs a closed 1-form");
    detail::check_builtin(w.dim(), k, 0);
    return {"div", w.dim(), k, k, [a, w](const VectorFieldSymbol& x) {
                return PolyDiffOp::multiplication(divergence_cocycle(a, w, x));
            }};
}

/// X ↦ multiplication by i_X ω, with no closedness requirement on ω. A
/// cocycle exactly when ω is closed.
inline OneCocycle contraction_map(const OneForm& w, int k) {
    validate_form(w);
    return {"contraction", w.dim(), k, k, [w](const VectorFieldSymbol& x) {
                Poly r(x.ring());
                for (int i = 0; i < x.dim(); ++i) r += x.component(i) * w.components[i];
                return PolyDiffOp::multiplication(r);
            }};
}

inline OneCocycle zero_cocycle(int n, int k, int l) {
    return {"zero", n, k, l, [n](const VectorFieldSymbol&) { return PolyDiffOp(Ring::single(n)); }};
}

/// X ↦ X.B
inline OneCocycle coboundary_of(const PolyDiffOp& b, int k, int l) {
    const PolyDiffOp canon = restrict_to_degree(b, k);
    if (!maps_degree(canon, k, l)) throw DomainError("operator does not map S_k to S_l");
    return {"coboundary", b.dim(), k, l,
            [canon](const VectorFieldSymbol& x) { return commutator(hamiltonian_operator(x), canon); }};
}

inline OneCocycle difference(const OneCocycle& a, const OneCocycle& b) {
    if (a.dim != b.dim || a.source_degree != b.source_degree || a.target_degree != b.target_degree)
        throw StructuralError("cocycles with different (n, k, l)");
    return {a.name + " - " + b.name, a.dim, a.source_degree, a.target_degree,
            [a, b](const VectorFieldSymbol& x) { return a(x) - b(x); }};
}

/// c1, c2, div (a = 1, ω = 0) or gamma1, by name.
inline OneCocycle builtin_by_name(const std::string& name, int n, int k) {
    if (name == "c1") return builtin_c1(n, k);
    if (name == "c2") return builtin_c2(n, k);
    if (name == "gamma1") return builtin_gamma1_flat(n, k);
    if (name == "div") return builtin_div(1, OneForm::zero(n), k);
    throw DomainError("unknown cocycle '" + name + "' (expected c1, c2, div or gamma1)");
}

struct CocycleReport {
    std::string name;
    int dim = 2;
    int source_degree = 0;
    int target_degree = 0;
    CocycleCheck check;
    bool vanishes_on_sl = false;
    CoboundaryResult coboundary;
};

inline CocycleReport full_report(const OneCocycle& c, int d) {
    auto [cands, description] = default_candidates(c.dim, c.source_degree, c.target_degree);
    return {c.name, c.dim, c.source_degree, c.target_degree, cocycle_check(c, d), vanishes_on_sl(c),
            coboundary_solve(c, cands, description)};
}

}  // namespace cohomolab
