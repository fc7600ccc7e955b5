#pragma once

#include "rational.hpp"

#include <cstddef>
#include <map>
#include <utility>
#include <vector>

namespace cohomolab {

/// Sparse row: column -> nonzero coefficient.
using SparseRow = std::map<std::size_t, Rational>;
using Vector = std::vector<Rational>;

/// Homogeneous linear system over the rationals, reduced incrementally.
///
/// Rows are kept in echelon form keyed by pivot column, each pivot
/// normalized to 1. The pivot of a new row is its first nonzero column after
/// reduction, so the final basis does not depend on anything but the order
/// of the columns.
class LinearSystem {
public:
    explicit LinearSystem(std::size_t unknowns) : unknowns_(unknowns) {}

    std::size_t unknowns() const { return unknowns_; }
    std::size_t rank() const { return rows_.size(); }

    /// Returns true when the row was independent of the rows seen so far.
    bool add_equation(SparseRow row) {
        reduce(row, row.begin());
        if (row.empty()) return false;
        const Rational lead = row.begin()->second;
        for (auto& [c, v] : row) v /= lead;
        rows_.emplace(row.begin()->first, std::move(row));
        return true;
    }

    /// Basis of the solution space; one vector per free column, with that
    /// column set to 1 and the other free columns 0.
    std::vector<Vector> nullspace() const {
        // back-substitute into reduced echelon form
        std::map<std::size_t, SparseRow> reduced;
        for (auto it = rows_.rbegin(); it != rows_.rend(); ++it) {
            SparseRow row = it->second;
            reduce(row, std::next(row.begin()), reduced);
            reduced.emplace(it->first, std::move(row));
        }
        std::vector<Vector> basis;
        for (std::size_t free = 0; free < unknowns_; ++free) {
            if (reduced.count(free)) continue;
            Vector v(unknowns_, Rational(0));
            v[free] = 1;
            for (const auto& [p, row] : reduced) {
                auto e = row.find(free);
                if (e != row.end()) v[p] = -e->second;
            }
            basis.push_back(std::move(v));
        }
        return basis;
    }

private:
    void reduce(SparseRow& row, SparseRow::iterator from) const { reduce(row, from, rows_); }

    /// Eliminate every pivot column of `pivots` from `row`, starting at `from`.
    /// Pivot rows only touch columns at or after their pivot, so one forward
    /// sweep suffices.
    static void reduce(SparseRow& row, SparseRow::iterator it, const std::map<std::size_t, SparseRow>& pivots) {
        while (it != row.end()) {
            if (it->second == 0) {
                it = row.erase(it);
                continue;
            }
            auto piv = pivots.find(it->first);
            if (piv == pivots.end()) {
                ++it;
                continue;
            }
            const Rational factor = it->second;
            for (const auto& [c, v] : piv->second) {
                if (c == it->first) continue;
                auto [slot, inserted] = row.try_emplace(c, -factor * v);
                if (!inserted) slot->second -= factor * v;
            }
            it = row.erase(it);
        }
    }

    std::size_t unknowns_;
    std::map<std::size_t, SparseRow> rows_;
};

/// Rank of a list of dense vectors.
inline std::size_t rank_of(const std::vector<Vector>& vectors) {
    if (vectors.empty()) return 0;
    LinearSystem sys(vectors.front().size());
    for (const auto& v : vectors) {
        SparseRow row;
        for (std::size_t i = 0; i < v.size(); ++i)
            if (v[i] != 0) row.emplace(i, v[i]);
        sys.add_equation(std::move(row));
    }
    return sys.rank();
}

/// True when the two lists span the same subspace.
inline bool same_span(const std::vector<Vector>& a, const std::vector<Vector>& b) {
    const std::size_t ra = rank_of(a);
    if (ra != rank_of(b)) return false;
    std::vector<Vector> both = a;
    both.insert(both.end(), b.begin(), b.end());
    return rank_of(both) == ra;
}

/// Rescale to a primitive integer vector whose first nonzero entry is positive.
inline Vector primitive_integer(Vector v) {
    mpz_class den_lcm = 1, num_gcd = 0;
    for (const auto& q : v) {
        if (q == 0) continue;
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), q.get_den_mpz_t());
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), q.get_num_mpz_t());
    }
    if (num_gcd == 0) return v;
    Rational scale(den_lcm, num_gcd);
    scale.canonicalize();
    for (const auto& q : v)
        if (q != 0) {
            if (q < 0) scale = -scale;
            break;
        }
    for (auto& q : v) q *= scale;
    return v;
}

}  // namespace cohomolab
