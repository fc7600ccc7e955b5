#pragma once

#include "diff_operator.hpp"
#include "linear_system.hpp"
#include "symbol_calculus.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace cohomolab {

/// Coefficients α_s (s = 0..p+1), β_s (s = 1..p+1), γ_s (s = 0..p) of the
/// bilinear ansatz S_1 ⊗ S_k → S_{k-p}. When k = p the α terms vanish
/// identically on S_1 ⊗ S_k and the α array is empty.
struct AnsatzCoefficients {
    int p = 0;
    int k = 0;
    Vector alpha;
    Vector beta;
    Vector gamma;

    static AnsatzCoefficients zero(int p, int k) {
        if (p < 0 || k < p) throw DomainError("ansatz needs 0 <= p <= k");
        AnsatzCoefficients c{p, k, {}, {}, {}};
        if (k != p) c.alpha.assign(p + 2, Rational(0));
        c.beta.assign(p + 1, Rational(0));
        c.gamma.assign(p + 1, Rational(0));
        return c;
    }

    bool has_alpha() const { return !alpha.empty(); }

    // Out-of-range indices read as zero.
    Rational alpha_at(int s) const { return has_alpha() && s >= 0 && s <= p + 1 ? alpha[s] : Rational(0); }
    Rational beta_at(int s) const { return s >= 1 && s <= p + 1 ? beta[s - 1] : Rational(0); }
    Rational gamma_at(int s) const { return s >= 0 && s <= p ? gamma[s] : Rational(0); }

    /// Canonical (α, β, γ) order used for flat vectors.
    Vector flatten() const {
        Vector v = alpha;
        v.insert(v.end(), beta.begin(), beta.end());
        v.insert(v.end(), gamma.begin(), gamma.end());
        return v;
    }
    std::size_t size() const { return alpha.size() + beta.size() + gamma.size(); }

    static AnsatzCoefficients from_flat(int p, int k, const Vector& v) {
        AnsatzCoefficients c = zero(p, k);
        if (v.size() != c.size()) throw StructuralError("ansatz vector has the wrong length");
        std::size_t i = 0;
        for (auto& a : c.alpha) a = v[i++];
        for (auto& b : c.beta) b = v[i++];
        for (auto& g : c.gamma) g = v[i++];
        return c;
    }

    /// Flat position of α_s / β_s / γ_s, or -1 when that unknown does not exist.
    int alpha_index(int s) const { return has_alpha() && s >= 0 && s <= p + 1 ? s : -1; }
    int beta_index(int s) const { return s >= 1 && s <= p + 1 ? static_cast<int>(alpha.size()) + s - 1 : -1; }
    int gamma_index(int s) const {
        return s >= 0 && s <= p ? static_cast<int>(alpha.size() + beta.size()) + s : -1;
    }

    /// Names in flat order: "alpha_0", ..., "beta_1", ..., "gamma_0", ...
    std::vector<std::string> labels() const {
        std::vector<std::string> out;
        for (std::size_t s = 0; s < alpha.size(); ++s) out.push_back("alpha_" + std::to_string(s));
        for (std::size_t s = 0; s < beta.size(); ++s) out.push_back("beta_" + std::to_string(s + 1));
        for (std::size_t s = 0; s < gamma.size(); ++s) out.push_back("gamma_" + std::to_string(s));
        return out;
    }

    /// The coefficients with s >= 2 in flat order, e.g. (α2, α3, β2, β3, γ2) for p = 2.
    Vector relative_part() const {
        Vector out;
        for (std::size_t s = 2; s < alpha.size(); ++s) out.push_back(alpha[s]);
        for (std::size_t s = 1; s < beta.size(); ++s) out.push_back(beta[s]);
        for (std::size_t s = 2; s < gamma.size(); ++s) out.push_back(gamma[s]);
        return out;
    }

    bool operator==(const AnsatzCoefficients&) const = default;
};

/// A bilinear map S_1 ⊗ S_k → S_{k-p}, realized as a constant-coefficient
/// operator on C[x,ξ,y,η] followed by the diagonal restriction y = x, η = ξ.
/// The vector field goes in (x, ξ), the symbol in (y, η).
class BilinearOp {
public:
    BilinearOp(PolyDiffOp op, int k, int p) : op_(std::move(op)), k_(k), p_(p) {
        if (op_.ring().mode != RingMode::doubled) throw StructuralError("bilinear operators act on the doubled ring");
    }

    const PolyDiffOp& op() const { return op_; }
    int dim() const { return op_.dim(); }
    int source_degree() const { return k_; }
    int target_degree() const { return k_ - p_; }

    Poly apply(const VectorFieldSymbol& x, const Poly& p) const {
        const Poly lifted = embed_doubled(x.poly(), false) * embed_doubled(p, true);
        return restrict_diagonal(cohomolab::apply(op_, lifted));
    }

    /// P ↦ C(X, P) as an operator on the single ring.
    PolyDiffOp partial(const VectorFieldSymbol& x) const {
        const int n = dim();
        const Ring single = Ring::single(n);
        PolyDiffOp r(single);
        for (const auto& [idx, coeff] : op_.terms()) {
            Exponents first{}, second{};
            for (int i = 0; i < 2 * n; ++i) {
                first[i] = idx[i];
                second[i] = idx[i + 2 * n];
            }
            const Poly dx = derivative(x.poly(), first);
            if (dx.is_zero()) continue;
            r.add_term(second, restrict_diagonal(coeff * embed_doubled(dx, false)));
        }
        return r;
    }

private:
    PolyDiffOp op_;
    int k_;
    int p_;
};

namespace detail {

/// Σ_i ∂/∂u^i ∂/∂v_i between two of the blocks x, ξ, y, η of the doubled ring.
inline PolyDiffOp block_contraction(int n, VarKind u, VarKind v) {
    const Ring ring = Ring::doubled(n);
    PolyDiffOp op(ring);
    for (int i = 0; i < n; ++i) op += compose(PolyDiffOp::partial(ring, Var{u, i}), PolyDiffOp::partial(ring, Var{v, i}));
    return op;
}

}  // namespace detail

/// D_(x,ξ), D_(x,η), D_(y,ξ), D_(y,η)
struct BilinearGenerators {
    PolyDiffOp x_xi, x_eta, y_xi, y_eta;

    explicit BilinearGenerators(int n)
        : x_xi(detail::block_contraction(n, VarKind::x, VarKind::xi)),
          x_eta(detail::block_contraction(n, VarKind::x, VarKind::eta)),
          y_xi(detail::block_contraction(n, VarKind::y, VarKind::xi)),
          y_eta(detail::block_contraction(n, VarKind::y, VarKind::eta)) {}
};

/// One operator per flat ansatz unknown, including the factorial weights.
inline std::vector<PolyDiffOp> ansatz_term_operators(int n, int k, int p) {
    const BilinearGenerators g(n);
    const AnsatzCoefficients shape = AnsatzCoefficients::zero(p, k);
    std::vector<PolyDiffOp> xeta{PolyDiffOp::identity(Ring::doubled(n))}, yeta{xeta.front()};
    for (int i = 1; i <= p + 1; ++i) {
        xeta.push_back(compose(xeta.back(), g.x_eta));
        yeta.push_back(compose(yeta.back(), g.y_eta));
    }
    std::vector<PolyDiffOp> out;
    if (shape.has_alpha())
        for (int s = 0; s <= p + 1; ++s)
            out.push_back((1 / (factorial(s) * factorial(p - s + 1))) * compose(xeta[s], yeta[p - s + 1]));
    for (int s = 1; s <= p + 1; ++s)
        out.push_back((1 / (factorial(s - 1) * factorial(p - s + 1))) *
                      compose(g.x_xi, compose(xeta[s - 1], yeta[p - s + 1])));
    for (int s = 0; s <= p; ++s)
        out.push_back((1 / (factorial(s) * factorial(p - s))) * compose(g.y_xi, compose(xeta[s], yeta[p - s])));
    return out;
}

inline BilinearOp build_bilinear(const AnsatzCoefficients& c, int n) {
    const auto terms = ansatz_term_operators(n, c.k, c.p);
    const Vector flat = c.flatten();
    if (flat.size() != terms.size()) throw StructuralError("ansatz coefficient arrays do not match (p, k)");
    PolyDiffOp op(Ring::doubled(n));
    for (std::size_t i = 0; i < flat.size(); ++i)
        if (flat[i] != 0) op += flat[i] * terms[i];
    return BilinearOp(std::move(op), c.k, c.p);
}

struct SolutionSpace {
    int n = 2;
    int k = 0;
    int p = 0;
    std::vector<AnsatzCoefficients> basis;

    std::size_t dimension() const { return basis.size(); }

    std::vector<Vector> flat_basis() const {
        std::vector<Vector> out;
        for (const auto& b : basis) out.push_back(b.flatten());
        return out;
    }
};

inline bool same_solution_space(const SolutionSpace& a, const SolutionSpace& b) {
    if (a.dimension() != b.dimension()) return false;
    if (a.dimension() == 0) return true;
    return same_span(a.flat_basis(), b.flat_basis());
}

namespace detail {

inline void check_solver_domain(int n, int k, int p) {
    if (n < 2) throw DomainError("the equivariance problem needs n >= 2");
    if (p < 0 || k < p) throw DomainError("need 0 <= p <= k");
}

inline SolutionSpace space_from_nullspace(int n, int k, int p, const std::vector<Vector>& null) {
    SolutionSpace space{n, k, p, {}};
    for (const auto& v : null) space.basis.push_back(AnsatzCoefficients::from_flat(p, k, v));
    return space;
}

inline void add_coeff(SparseRow& row, int index, const Rational& c) {
    if (index < 0 || c == 0) return;
    row[static_cast<std::size_t>(index)] += c;
}

/// Feed the coefficients of Σ_j u_j ops[j] into `sys`, one equation per
/// (derivative index, coefficient monomial).
inline void add_operator_equations(LinearSystem& sys, const std::vector<PolyDiffOp>& ops) {
    std::map<std::pair<Exponents, Exponents>, SparseRow> rows;
    for (std::size_t j = 0; j < ops.size(); ++j)
        for (const auto& [idx, c] : ops[j].terms())
            for (const auto& [mono, v] : c.terms()) rows[{idx, mono}][j] += v;
    for (auto& [key, row] : rows) sys.add_equation(std::move(row));
}

}  // namespace detail

/// (k-p) α_{s+1} + (n+1) β_{s+1} + (p-s) γ_{s+1} + (k-p+s) γ_s
inline SparseRow fourth_recurrence(int n, int k, int p, int s) {
    const AnsatzCoefficients shape = AnsatzCoefficients::zero(p, k);
    SparseRow r;
    detail::add_coeff(r, shape.alpha_index(s + 1), k - p);
    detail::add_coeff(r, shape.beta_index(s + 1), n + 1);
    detail::add_coeff(r, shape.gamma_index(s + 1), p - s);
    detail::add_coeff(r, shape.gamma_index(s), k - p + s);
    return r;
}

/// Vanishing on the affine subalgebra (s < 2), vanishing on the quadratic
/// generators, and the closed-form recurrences for 2 <= s <= p, dropping the
/// α recurrence when k = p.
inline std::vector<SparseRow> recurrence_equations(int n, int k, int p, bool include_fourth = false) {
    const AnsatzCoefficients shape = AnsatzCoefficients::zero(p, k);
    std::vector<SparseRow> rows;
    auto unit = [](int index) {
        SparseRow r;
        if (index >= 0) r[static_cast<std::size_t>(index)] = 1;
        return r;
    };
    for (int s = 0; s < 2; ++s) {
        rows.push_back(unit(shape.alpha_index(s)));
        rows.push_back(unit(shape.beta_index(s)));
        rows.push_back(unit(shape.gamma_index(s)));
    }
    SparseRow zero;
    detail::add_coeff(zero, shape.alpha_index(2), k - p);
    detail::add_coeff(zero, shape.beta_index(2), n + 1);
    detail::add_coeff(zero, shape.gamma_index(2), p - 1);
    rows.push_back(zero);
    for (int s = 2; s <= p; ++s) {
        const Rational shift = 2 * k + n - p + s - 1;
        if (k != p) {
            SparseRow r1;
            detail::add_coeff(r1, shape.alpha_index(s + 1), s - 1);
            detail::add_coeff(r1, shape.alpha_index(s), -shift);
            detail::add_coeff(r1, shape.gamma_index(s), -1);
            rows.push_back(r1);
        }
        SparseRow r2;
        detail::add_coeff(r2, shape.beta_index(s + 1), s - 1);
        detail::add_coeff(r2, shape.beta_index(s), -shift);
        detail::add_coeff(r2, shape.gamma_index(s), -1);
        rows.push_back(r2);
        SparseRow r3;
        detail::add_coeff(r3, shape.gamma_index(s), s - 2);
        detail::add_coeff(r3, shape.gamma_index(s - 1), -shift);
        rows.push_back(r3);
        if (include_fourth) rows.push_back(fourth_recurrence(n, k, p, s));
    }
    return rows;
}

inline Rational evaluate_row(const SparseRow& row, const Vector& v) {
    Rational acc = 0;
    for (const auto& [c, a] : row) acc += a * v[c];
    return acc;
}

inline SolutionSpace recurrence_solutions(int n, int k, int p) {
    detail::check_solver_domain(n, k, p);
    LinearSystem sys(AnsatzCoefficients::zero(p, k).size());
    for (auto& row : recurrence_equations(n, k, p)) sys.add_equation(std::move(row));
    return detail::space_from_nullspace(n, k, p, sys.nullspace());
}

/// Equivariance imposed from scratch: c vanishes on every sl(n+1) generator
/// and X.c(Y) = c([X, Y]) for every generator X and monomial field Y. For the
/// quadratic generator X̄_1 Y runs over all monomial fields of degree <= p + 2
/// (c(Y) involves at most p + 1 derivatives of Y, so this family is complete).
/// The affine fields and X̄_1 generate sl(n+1), so the other X̄_i add nothing.
/// Each ansatz term commutes with the affine action on its own, so affine
/// generators are only checked against fields of degree <= 1, as a guard.
/// Operators are compared in canonical form on S_k.
inline SolutionSpace solve_equivariant_direct(int n, int k, int p) {
    detail::check_solver_domain(n, k, p);
    const auto terms = ansatz_term_operators(n, k, p);
    std::vector<BilinearOp> ops;
    for (const auto& t : terms) ops.emplace_back(t, k, p);
    LinearSystem sys(ops.size());
    const auto gens = sl_generators(n);

    auto partials = [&](const VectorFieldSymbol& y) {
        std::vector<PolyDiffOp> out;
        for (const auto& op : ops) out.push_back(restrict_to_degree(op.partial(y), k));
        return out;
    };

    for (const auto& g : gens.members) detail::add_operator_equations(sys, partials(g.field));

    const auto fields = monomial_fields(n, p + 2);
    std::vector<std::vector<PolyDiffOp>> at_field;
    for (const auto& y : fields) at_field.push_back(partials(y));

    for (const auto& g : gens.members) {
        const PolyDiffOp lx = hamiltonian_operator(g.field);
        if (g.kind == GeneratorKind::quadratic && g.label != "Q 1") continue;
        const bool affine = g.kind != GeneratorKind::quadratic;
        for (std::size_t f = 0; f < fields.size(); ++f) {
            if (affine && fields[f].poly().max_x_degree() > 1) continue;
            const auto bracket = partials(lie_bracket(g.field, fields[f]));
            std::vector<PolyDiffOp> defect;
            for (std::size_t j = 0; j < ops.size(); ++j)
                defect.push_back(restrict_to_degree(commutator(lx, at_field[f][j]), k) - bracket[j]);
            detail::add_operator_equations(sys, defect);
        }
        if (sys.rank() == sys.unknowns()) break;
    }
    return detail::space_from_nullspace(n, k, p, sys.nullspace());
}

/// Restrict a space of equivariant maps to the 1-cocycles among them. The
/// identity c([X,Y]) = X.c(Y) − Y.c(X) is imposed on pairs of sl(n+1)
/// generators with cubic monomial fields and on all pairs of cubic fields.
inline SolutionSpace impose_cocycle(const SolutionSpace& space) {
    SolutionSpace out{space.n, space.k, space.p, {}};
    const std::size_t d = space.dimension();
    if (d == 0) return out;
    const int n = space.n, k = space.k;
    std::vector<BilinearOp> ops;
    for (const auto& b : space.basis) ops.push_back(build_bilinear(b, n));

    std::vector<VectorFieldSymbol> family;
    for (const auto& g : sl_generators(n).members) family.push_back(g.field);
    const std::size_t first_monomial = family.size();
    for (const auto& f : monomial_fields(n, 3, 3)) family.push_back(f);

    std::vector<std::vector<PolyDiffOp>> values;
    std::vector<PolyDiffOp> hamiltonians;
    for (const auto& f : family) {
        std::vector<PolyDiffOp> row;
        for (const auto& op : ops) row.push_back(restrict_to_degree(op.partial(f), k));
        values.push_back(std::move(row));
        hamiltonians.push_back(hamiltonian_operator(f));
    }
    LinearSystem sys(d);
    for (std::size_t a = 0; a < family.size() && sys.rank() < d; ++a)
        for (std::size_t b = std::max(a + 1, first_monomial); b < family.size(); ++b) {
            const VectorFieldSymbol z = lie_bracket(family[a], family[b]);
            std::vector<PolyDiffOp> defect;
            for (std::size_t j = 0; j < d; ++j) {
                PolyDiffOp e = restrict_to_degree(ops[j].partial(z), k);
                e -= restrict_to_degree(commutator(hamiltonians[a], values[b][j]), k);
                e += restrict_to_degree(commutator(hamiltonians[b], values[a][j]), k);
                defect.push_back(std::move(e));
            }
            detail::add_operator_equations(sys, defect);
            if (sys.rank() == d) break;
        }
    for (const auto& v : sys.nullspace()) {
        Vector combo(space.basis.front().size(), Rational(0));
        for (std::size_t j = 0; j < d; ++j) {
            const Vector b = space.basis[j].flatten();
            for (std::size_t i = 0; i < combo.size(); ++i) combo[i] += v[j] * b[i];
        }
        out.basis.push_back(AnsatzCoefficients::from_flat(space.p, space.k, primitive_integer(combo)));
    }
    return out;
}

/// Case label a/b/c/d of the (k, p) cell: a = nothing survives, b = p = 1,
/// c = p >= 2 with k > p, d = k = p >= 2.
inline std::string case_label(int k, int p) {
    if (p == 0 || (p == 1 && k == 1)) return "a";
    if (p == 1) return "b";
    if (k > p) return "c";
    return "d";
}

}  // namespace cohomolab
