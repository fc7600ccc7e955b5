#pragma once

#include "linear_system.hpp"
#include "poly.hpp"
#include "symbol_calculus.hpp"

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace cohomolab {

/// Differential operator Σ c(x,ξ) ∂^idx with polynomial coefficients, kept in
/// normal form: coefficients on the left, one term per derivative multi-index.
///
/// The multi-index runs over all variables of the ring, so the same type
/// covers operators on C[x,ξ] and bidifferential operators on C[x,ξ,y,η].
class PolyDiffOp {
public:
    using TermMap = std::map<Exponents, Poly, std::greater<Exponents>>;

    explicit PolyDiffOp(Ring ring = Ring{}) : ring_(ring) {}

    static PolyDiffOp identity(Ring ring) { return multiplication(Poly::constant(ring, 1)); }
    static PolyDiffOp multiplication(const Poly& c) { return term(c, Exponents{}); }
    static PolyDiffOp term(const Poly& c, const Exponents& idx) {
        PolyDiffOp op(c.ring());
        op.add_term(idx, c);
        return op;
    }
    /// ∂/∂v
    static PolyDiffOp partial(Ring ring, Var v) {
        Exponents idx{};
        idx[slot(ring, v)] = 1;
        return term(Poly::constant(ring, 1), idx);
    }

    const Ring& ring() const { return ring_; }
    int dim() const { return ring_.dim; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    void add_term(const Exponents& idx, const Poly& c) {
        if (!(c.ring() == ring_)) throw StructuralError("operator coefficient from a different ring");
        if (c.is_zero()) return;
        auto [it, inserted] = terms_.try_emplace(idx, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    PolyDiffOp& operator+=(const PolyDiffOp& o) {
        require_same_ring(o);
        for (const auto& [idx, c] : o.terms_) add_term(idx, c);
        return *this;
    }
    PolyDiffOp& operator-=(const PolyDiffOp& o) {
        require_same_ring(o);
        for (const auto& [idx, c] : o.terms_) add_term(idx, -c);
        return *this;
    }
    PolyDiffOp& operator*=(const Rational& s) {
        if (s == 0) terms_.clear();
        for (auto& [idx, c] : terms_) c *= s;
        return *this;
    }
    friend PolyDiffOp operator+(PolyDiffOp a, const PolyDiffOp& b) { return a += b; }
    friend PolyDiffOp operator-(PolyDiffOp a, const PolyDiffOp& b) { return a -= b; }
    friend PolyDiffOp operator*(const Rational& s, PolyDiffOp a) { return a *= s; }

    bool operator==(const PolyDiffOp& o) const { return ring_ == o.ring_ && terms_ == o.terms_; }

    void require_same_ring(const PolyDiffOp& o) const {
        if (!(ring_ == o.ring_)) throw StructuralError("operators act on different rings");
    }

    /// Maximal total derivative order; -1 for the zero operator.
    int order() const {
        int r = -1;
        for (const auto& [idx, c] : terms_) r = std::max(r, detail::block_sum(idx, 0, ring_.variable_count()));
        return r;
    }
    /// Maximal order in the x (and y) derivatives.
    int x_order() const {
        int r = -1;
        const int n = ring_.dim;
        for (const auto& [idx, c] : terms_) {
            int o = detail::block_sum(idx, 0, n);
            if (ring_.mode == RingMode::doubled) o += detail::block_sum(idx, 2 * n, n);
            r = std::max(r, o);
        }
        return r;
    }

private:
    Ring ring_;
    TermMap terms_;
};

inline Poly apply(const PolyDiffOp& a, const Poly& p) {
    if (!(a.ring() == p.ring())) throw StructuralError("operator and polynomial live in different rings");
    Poly r(p.ring());
    for (const auto& [idx, c] : a.terms()) {
        const Poly d = derivative(p, idx);
        if (!d.is_zero()) r += c * d;
    }
    return r;
}

namespace detail {

/// Calls f(g) for every multi-index g <= a that is also <= bound.
inline void for_each_sub_index(const Exponents& a, const Exponents& bound,
                               const std::function<void(const Exponents&)>& f) {
    std::vector<std::pair<int, int>> slots;
    for (int i = 0; i < kMaxVariables; ++i)
        if (a[i] != 0 && bound[i] != 0) slots.emplace_back(i, std::min(a[i], bound[i]));
    Exponents g{};
    std::function<void(std::size_t)> rec = [&](std::size_t pos) {
        if (pos == slots.size()) {
            f(g);
            return;
        }
        const auto [s, top] = slots[pos];
        for (int v = 0; v <= top; ++v) {
            g[s] = static_cast<std::uint8_t>(v);
            rec(pos + 1);
        }
        g[s] = 0;
    };
    rec(0);
}

inline void for_each_sub_index(const Exponents& a, const std::function<void(const Exponents&)>& f) {
    for_each_sub_index(a, a, f);
}

/// Componentwise maximum of the exponents of p.
inline Exponents exponent_envelope(const Poly& p) {
    Exponents m{};
    for (const auto& [e, c] : p.terms())
        for (int i = 0; i < kMaxVariables; ++i) m[i] = std::max(m[i], e[i]);
    return m;
}

inline Rational multi_binomial(const Exponents& a, const Exponents& g) {
    Rational b = 1;
    for (int i = 0; i < kMaxVariables; ++i)
        if (g[i] != 0 && g[i] != a[i]) b *= binomial(a[i], g[i]);
    return b;
}

}  // namespace detail

/// A∘B, re-normalized through the Leibniz expansion
/// (c ∂^a)(d ∂^b) = Σ_{g<=a} C(a,g) c (∂^g d) ∂^{a-g+b}.
inline PolyDiffOp compose(const PolyDiffOp& a, const PolyDiffOp& b) {
    a.require_same_ring(b);
    PolyDiffOp r(a.ring());
    std::vector<Exponents> envelopes;
    for (const auto& [ib, cb] : b.terms()) envelopes.push_back(detail::exponent_envelope(cb));
    for (const auto& [ia, ca] : a.terms()) {
        const bool scalar = ca.is_constant();
        const Rational cv = scalar ? ca.constant_value() : Rational(0);
        std::size_t j = 0;
        for (const auto& [ib, cb] : b.terms())
            detail::for_each_sub_index(ia, envelopes[j++], [&](const Exponents& g) {
                const Poly dcb = derivative(cb, g);
                if (dcb.is_zero()) return;
                const Rational b = detail::multi_binomial(ia, g);
                r.add_term(detail::add(detail::sub(ia, g), ib), scalar ? (b * cv) * dcb : b * (ca * dcb));
            });
    }
    detail::check_term_budget(r.size());
    return r;
}

inline PolyDiffOp commutator(const PolyDiffOp& a, const PolyDiffOp& b) { return compose(a, b) - compose(b, a); }

/// L_X = (∂X/∂ξ_i) ∂/∂x^i − (∂X/∂x^i) ∂/∂ξ_i
inline PolyDiffOp hamiltonian_operator(const VectorFieldSymbol& x) {
    const Ring ring = x.ring();
    PolyDiffOp op(ring);
    for (int i = 0; i < x.dim(); ++i) {
        op += compose(PolyDiffOp::multiplication(partial_derivative(x.poly(), xi_var(i))),
                      PolyDiffOp::partial(ring, x_var(i)));
        op -= compose(PolyDiffOp::multiplication(partial_derivative(x.poly(), x_var(i))),
                      PolyDiffOp::partial(ring, xi_var(i)));
    }
    return op;
}

/// E = ξ_i ∂/∂ξ_i
inline PolyDiffOp euler_operator(int n) {
    const Ring ring = Ring::single(n);
    PolyDiffOp op(ring);
    for (int i = 0; i < n; ++i)
        op += compose(PolyDiffOp::multiplication(Poly::variable(ring, xi_var(i))), PolyDiffOp::partial(ring, xi_var(i)));
    return op;
}

/// D = Σ_i ∂/∂x^i ∂/∂ξ_i
inline PolyDiffOp divergence_operator(int n) {
    const Ring ring = Ring::single(n);
    PolyDiffOp op(ring);
    for (int i = 0; i < n; ++i) op += compose(PolyDiffOp::partial(ring, x_var(i)), PolyDiffOp::partial(ring, xi_var(i)));
    return op;
}

inline PolyDiffOp power(const PolyDiffOp& a, int m) {
    PolyDiffOp r = PolyDiffOp::identity(a.ring());
    for (int i = 0; i < m; ++i) r = compose(r, a);
    return r;
}

// ---------------------------------------------------------------------------
// Operators restricted to one symbol space S_k.
//
// On S_k every operator has a unique form Σ C_{α,b}(x,ξ) ∂_x^α ∂_ξ^b with
// |b| = k: the ξ-derivative merely extracts the ξ^b component. Two operators
// agree on S_k iff these forms coincide.

/// ξ-multi-indices of degree k, as exponent vectors of the single ring.
inline std::vector<Exponents> xi_monomials(int n, int k) { return monomials_of_degree(n, n, k); }

/// Canonical form of `a` as an operator on S_k.
inline PolyDiffOp restrict_to_degree(const PolyDiffOp& a, int k) {
    if (a.ring().mode != RingMode::single) throw StructuralError("restrict_to_degree needs the single ring");
    const int n = a.dim();
    const Ring ring = a.ring();
    const auto bs = xi_monomials(n, k);
    PolyDiffOp r(ring);
    for (const auto& [idx, c] : a.terms()) {
        Exponents alpha = idx, beta{};
        for (int i = 0; i < n; ++i) {
            beta[n + i] = idx[n + i];
            alpha[n + i] = 0;
        }
        if (detail::block_sum(beta, n, n) > k) continue;
        for (const auto& b : bs) {
            if (!detail::divides(beta, b)) continue;
            const Exponents rest = detail::sub(b, beta);
            r.add_term(detail::add(alpha, b), c * Poly::monomial(ring, rest, 1 / detail::multi_factorial(rest)));
        }
    }
    return r;
}

/// Whether the canonical form on S_k maps into S_ℓ.
inline bool maps_degree(const PolyDiffOp& a, int k, int l) {
    const PolyDiffOp canon = restrict_to_degree(a, k);
    for (const auto& [idx, c] : canon.terms())
        if (c.homogeneous_xi_degree() != l) return false;
    return true;
}

inline bool equal_on_degree(const PolyDiffOp& a, const PolyDiffOp& b, int k) {
    return restrict_to_degree(a - b, k).is_zero();
}

/// X.A = L_X∘A − A∘L_X on D(S_k, S_ℓ), returned in canonical form on S_k.
inline PolyDiffOp module_action(const VectorFieldSymbol& x, const PolyDiffOp& a, int k, int l) {
    const PolyDiffOp canon = restrict_to_degree(a, k);
    for (const auto& [idx, c] : canon.terms())
        if (c.homogeneous_xi_degree() != l)
            throw DomainError("operator does not map S_" + std::to_string(k) + " to S_" + std::to_string(l));
    const PolyDiffOp lx = hamiltonian_operator(x);
    return restrict_to_degree(commutator(lx, canon), k);
}

/// Ratio t with a = t·b, if any (b nonzero).
inline std::optional<Rational> proportionality(const PolyDiffOp& a, const PolyDiffOp& b) {
    if (b.is_zero()) return std::nullopt;
    const auto& [idx, coeff] = *b.terms().begin();
    auto it = a.terms().find(idx);
    if (it == a.terms().end()) {
        if (a.is_zero()) return Rational(0);
        return std::nullopt;
    }
    const auto& [mono, c] = *coeff.terms().begin();
    const Rational t = it->second.coefficient(mono) / c;
    if (!(a == t * b)) return std::nullopt;
    return t;
}

// ---------------------------------------------------------------------------

/// Basis of the operators S_k → S_ℓ of x-order <= r commuting with every
/// affine generator, in canonical form on S_k.
///
/// Translation invariance forces x-independent canonical coefficients, so by
/// default only constant coefficients are enumerated; a positive
/// `x_coefficient_degree` enlarges the candidate space to coefficients of that
/// x-degree and lets the translation constraints do the pruning.
inline std::vector<PolyDiffOp> affine_equivariant_basis(int n, int k, int l, int r, int x_coefficient_degree = 0) {
    if (k < l || l < 0) throw DomainError("affine_equivariant_basis needs k >= l >= 0");
    if (r < 0 || x_coefficient_degree < 0) throw DomainError("negative order bound");
    const Ring ring = Ring::single(n);
    const auto targets = xi_monomials(n, l);
    const auto sources = xi_monomials(n, k);
    std::vector<Exponents> alphas, coeff_x;
    for (int d = 0; d <= r; ++d)
        for (const auto& a : monomials_of_degree(0, n, d)) alphas.push_back(a);
    for (int d = 0; d <= x_coefficient_degree; ++d)
        for (const auto& a : monomials_of_degree(0, n, d)) coeff_x.push_back(a);
    const std::size_t unknowns = targets.size() * sources.size() * alphas.size() * coeff_x.size();
    if (unknowns > detail::term_limit() || unknowns > 2'000'000)
        throw ResourceError("affine_equivariant_basis: " + std::to_string(unknowns) + " unknowns is infeasible");

    std::vector<PolyDiffOp> candidates;
    candidates.reserve(unknowns);
    for (const auto& bt : targets)
        for (const auto& m : coeff_x)
            for (const auto& a : alphas)
                for (const auto& b : sources)
                    candidates.push_back(PolyDiffOp::term(Poly::monomial(ring, detail::add(bt, m)), detail::add(a, b)));

    LinearSystem sys(candidates.size());
    for (const auto& gen : sl_generators(n).affine()) {
        const PolyDiffOp lx = hamiltonian_operator(gen.field);
        std::map<std::pair<Exponents, Exponents>, SparseRow> rows;
        for (std::size_t u = 0; u < candidates.size(); ++u) {
            const PolyDiffOp defect = restrict_to_degree(commutator(lx, candidates[u]), k);
            for (const auto& [idx, c] : defect.terms())
                for (const auto& [mono, v] : c.terms()) rows[{idx, mono}].emplace(u, v);
        }
        for (auto& [key, row] : rows) sys.add_equation(std::move(row));
    }
    std::vector<PolyDiffOp> basis;
    for (const auto& v : sys.nullspace()) {
        PolyDiffOp op(ring);
        for (std::size_t u = 0; u < v.size(); ++u)
            if (v[u] != 0) op += v[u] * candidates[u];
        basis.push_back(std::move(op));
    }
    return basis;
}

/// Rebuild the canonical form on S_k of a linear map given only by its
/// action, assuming x-order at most `x_order`. The assumption is checked on
/// monomials one x-degree higher.
inline PolyDiffOp operator_from_action(int n, int k, int x_order, const std::function<Poly(const Poly&)>& action) {
    const Ring ring = Ring::single(n);
    PolyDiffOp canon(ring);
    for (const auto& b : xi_monomials(n, k)) {
        const Rational bfact = detail::multi_factorial(b);
        std::vector<std::pair<Exponents, Poly>> found;  // (α, C_{α,b})
        for (int d = 0; d <= x_order + 1; ++d)
            for (const auto& a : monomials_of_degree(0, n, d)) {
                Poly value = action(Poly::monomial(ring, detail::add(a, b)));
                value *= 1 / bfact;
                for (const auto& [alpha, c] : found) {
                    if (!detail::divides(alpha, a)) continue;
                    value -= c * Poly::monomial(ring, detail::sub(a, alpha), detail::falling(a, alpha));
                }
                if (d <= x_order) {
                    value *= 1 / detail::multi_factorial(a);
                    if (!value.is_zero()) found.emplace_back(a, value);
                } else if (!value.is_zero()) {
                    throw DomainError("operator_from_action: x-order exceeds " + std::to_string(x_order));
                }
            }
        for (const auto& [alpha, c] : found) canon.add_term(detail::add(alpha, b), c);
    }
    return canon;
}

/// [L_{X̄_i}, D] = (2E + (n+1)) ∘ ∂/∂ξ_i, compared as normalized operators and
/// on every monomial in (x, ξ) of total degree <= max_degree.
struct RelationCheck {
    int dim = 2;
    int index = 0;  // 1-based
    bool operators_equal = false;
    std::size_t monomials_checked = 0;
    std::size_t mismatches = 0;

    bool holds() const { return operators_equal && mismatches == 0; }
};

inline RelationCheck commutation_relation_check(int n, int i, int max_degree = 6) {
    if (i < 1 || i > n) throw DomainError("generator index out of range");
    const Ring ring = Ring::single(n);
    const VectorFieldSymbol bar = sl_generators(n).find("Q " + std::to_string(i)).field;
    const PolyDiffOp d = divergence_operator(n);
    const PolyDiffOp lhs = commutator(hamiltonian_operator(bar), d);
    const PolyDiffOp rhs = compose(Rational(2) * euler_operator(n) + PolyDiffOp::multiplication(Poly::constant(ring, n + 1)),
                                   PolyDiffOp::partial(ring, xi_var(i - 1)));
    RelationCheck out{n, i, lhs == rhs, 0, 0};
    for (int deg = 0; deg <= max_degree; ++deg)
        for (const auto& e : monomials_of_degree(0, 2 * n, deg)) {
            const Poly m = Poly::monomial(ring, e);
            ++out.monomials_checked;
            // left side applied as L(D m) − D(L m), independently of the composed form
            const Poly left = hamiltonian_action(bar, div_op(m)) - div_op(hamiltonian_action(bar, m));
            if (!(left == apply(rhs, m))) ++out.mismatches;
        }
    return out;
}

// ---------------------------------------------------------------------------
// Canonical text form: "(x1 - xi2) * dx1^2 * dxi1 + (3)", zero prints as "0".

inline std::string to_string(const PolyDiffOp& a) {
    if (a.is_zero()) return "0";
    std::string out;
    for (const auto& [idx, c] : a.terms()) {
        if (!out.empty()) out += " + ";
        out += '(' + to_string(c) + ')';
        for (int i = 0; i < a.ring().variable_count(); ++i) {
            if (idx[i] == 0) continue;
            out += " * d" + var_name(var_at(a.ring(), i));
            if (idx[i] > 1) out += '^' + std::to_string(idx[i]);
        }
    }
    return out;
}

inline PolyDiffOp parse_operator(const Ring& ring, std::string_view text) {
    text = detail::trim(text);
    PolyDiffOp op(ring);
    if (text == "0") return op;
    std::size_t pos = 0;
    while (pos < text.size()) {
        if (text[pos] != '(') throw StructuralError("operator term must start with '('");
        const std::size_t close = text.find(')', pos);
        if (close == std::string_view::npos) throw StructuralError("unbalanced parenthesis in operator text");
        const Poly coeff = parse_poly(ring, text.substr(pos + 1, close - pos - 1));
        std::size_t end = text.find(" + (", close);
        if (end == std::string_view::npos) end = text.size();
        Exponents idx{};
        std::string_view rest = detail::trim(text.substr(close + 1, end - close - 1));
        while (!rest.empty()) {
            if (rest.front() != '*') throw StructuralError("expected '*' in operator term");
            rest = detail::trim(rest.substr(1));
            std::size_t stop = rest.find('*');
            std::string_view factor = detail::trim(rest.substr(0, stop));
            if (factor.size() < 2 || factor.front() != 'd') throw StructuralError("expected a derivative factor");
            Rational dummy = 1;
            detail::parse_factor(ring, factor.substr(1), idx, dummy);
            rest = stop == std::string_view::npos ? std::string_view{} : rest.substr(stop);
        }
        op.add_term(idx, coeff);
        pos = end == text.size() ? end : end + 3;
    }
    return op;
}

}  // namespace cohomolab
