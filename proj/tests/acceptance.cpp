// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include "cohomolab/cohomolab.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace cohomolab;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

struct Criterion {
    int id;
    std::string title;
    double budget_seconds;  // 0 = no budget
    std::function<Outcome()> run;
};

void fail(Outcome& o, const std::string& why) {
    if (o.pass) o.detail = why;
    else if (o.detail.size() < 400) o.detail += "; " + why;
    o.pass = false;
}

std::string cell(int n, int k, int p) {
    return "n=" + std::to_string(n) + " k=" + std::to_string(k) + " p=" + std::to_string(p);
}

std::string vec_text(const Vector& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + to_string(v[i]);
    return s + ")";
}

/// Scale so that the first nonzero flat coefficient equals `target`.
AnsatzCoefficients normalize_first(const AnsatzCoefficients& c, const Rational& target) {
    const Vector flat = c.flatten();
    for (const auto& q : flat)
        if (q != 0) {
            Vector scaled = flat;
            for (auto& v : scaled) v *= target / q;
            return AnsatzCoefficients::from_flat(c.p, c.k, scaled);
        }
    return c;
}

Outcome commutation_relation() {
    Outcome o;
    std::size_t monomials = 0;
    for (int n : {2, 3})
        for (int i = 1; i <= n; ++i) {
            const RelationCheck r = commutation_relation_check(n, i, 6);
            monomials += r.monomials_checked;
            if (!r.holds())
                fail(o, "n=" + std::to_string(n) + " i=" + std::to_string(i) + ": " + std::to_string(r.mismatches) +
                            " mismatches" + (r.operators_equal ? "" : ", operators differ"));
        }
    if (o.pass) o.detail = std::to_string(monomials) + " monomial evaluations agree";
    return o;
}

Outcome weyl_commutant() {
    Outcome o;
    int cases = 0;
    for (int n : {2, 3})
        for (auto [k, l] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {3, 2}, {4, 2}}) {
            const PolyDiffOp dpow = restrict_to_degree(power(divergence_operator(n), k - l), k);
            for (int r = k - l; r <= 4; ++r) {
                ++cases;
                const auto basis = affine_equivariant_basis(n, k, l, r);
                const std::string where = "n=" + std::to_string(n) + " (k,l)=(" + std::to_string(k) + "," +
                                          std::to_string(l) + ") r=" + std::to_string(r);
                if (basis.size() != 1) fail(o, where + ": dimension " + std::to_string(basis.size()));
                else if (!proportionality(basis.front(), dpow)) fail(o, where + ": not a multiple of D^(k-l)");
            }
        }
    if (o.pass) o.detail = std::to_string(cases) + " (n, k, l, r) cases span{D^(k-l)}";
    return o;
}

Outcome solver_equivalence() {
    Outcome o;
    int cells = 0;
    for (int n : {2, 3})
        for (int k = 0; k <= 5; ++k)
            for (int p = 0; p <= k; ++p) {
                ++cells;
                const auto a = recurrence_solutions(n, k, p);
                const auto b = solve_equivariant_direct(n, k, p);
                if (!same_solution_space(a, b))
                    fail(o, cell(n, k, p) + ": dims " + std::to_string(a.dimension()) + " vs " +
                                std::to_string(b.dimension()));
            }
    if (o.pass) o.detail = std::to_string(cells) + " cells agree in dimension and span";
    return o;
}

Outcome classification_table() {
    Outcome o;
    int entries = 0;
    for (int n : {2, 3}) {
        RunConfig rc;
        rc.dim = n;
        rc.k_min = 0;
        rc.k_max = 5;
        const CohomologyTable t = cohomology_table(rc);
        for (const auto& e : t.entries) {
            ++entries;
            const std::string where = "n=" + std::to_string(n) + " (k,l)=(" + std::to_string(e.k) + "," +
                                      std::to_string(e.l) + ")";
            if (!e.gap.empty()) fail(o, where + ": gap " + e.gap);
            else if (!e.matches())
                fail(o, where + ": dim " + std::to_string(e.relative_dimension) + ", expected " +
                            std::to_string(e.expected_dimension));
            else if (e.relative_dimension == 1 && !e.witness_verified)
                fail(o, where + ": witness not verified");
        }
    }
    if (o.pass) o.detail = std::to_string(entries) + " entries match, nonzero ones carry verified witnesses";
    return o;
}

Outcome explicit_solutions() {
    Outcome o;
    int compared = 0;
    for (int n : {2, 3})
        for (int k = 2; k <= 5; ++k) {
            // p = 1: (1/2) D_(x,eta)^2 + ((k-1)/(n+1)) D_(x,xi) D_(x,eta), i.e. alpha_2 = 1, beta_2 = (k-1)/(n+1)
            const auto line1 = impose_cocycle(recurrence_solutions(n, k, 1));
            ++compared;
            if (line1.dimension() != 1) {
                fail(o, cell(n, k, 1) + ": dimension " + std::to_string(line1.dimension()));
            } else {
                const auto got = normalize_first(line1.basis.front(), 1);
                const Rational want = frac(k - 1, n + 1);
                if (got.alpha_at(2) != 1 || got.beta_at(2) != want)
                    fail(o, cell(n, k, 1) + ": (alpha_2, beta_2) = (" + to_string(got.alpha_at(2)) + ", " +
                                to_string(got.beta_at(2)) + "), expected (1, " + to_string(want) + ")");
            }
            // p = 2: (alpha_2, alpha_3, beta_2, beta_3, gamma_2) = (2, 2k+n+1, 1, 2, -(2k+n-3))
            const auto line2 = impose_cocycle(recurrence_solutions(n, k, 2));
            ++compared;
            Vector want2 = {2, 2 * k + n + 1, 1, 2, -(2 * k + n - 3)};
            if (k == 2) want2 = {1, 2, -(2 * k + n - 3)};
            if (line2.dimension() != 1) {
                fail(o, cell(n, k, 2) + ": dimension " + std::to_string(line2.dimension()));
            } else {
                const auto got = normalize_first(line2.basis.front(), want2.front()).relative_part();
                if (got != want2) fail(o, cell(n, k, 2) + ": " + vec_text(got) + ", expected " + vec_text(want2));
            }
        }
    if (o.pass) o.detail = std::to_string(compared) + " lines match";
    return o;
}

Outcome non_triviality() {
    Outcome o;
    int cases = 0;
    for (int n : {2, 3})
        for (int k = 2; k <= 4; ++k)
            for (const OneCocycle& c : {builtin_c1(n, k), builtin_c2(n, k)}) {
                ++cases;
                auto [cands, description] = default_candidates(n, k, c.target_degree);
                const auto r = coboundary_solve(c, cands, description);
                if (r.witness) fail(o, c.name + " n=" + std::to_string(n) + " k=" + std::to_string(k) + " is cobounded");
            }
    if (o.pass) o.detail = std::to_string(cases) + " cocycles have no witness in their candidate space";
    return o;
}

Outcome cocycle_identities() {
    Outcome o;
    const int n = 2, d = 4;
    std::vector<OneCocycle> all;
    const Ring ring = Ring::single(n);
    // ω = d(x1^2 x2) + x1 dx1, closed
    const Poly x1 = Poly::variable(ring, x_var(0)), x2 = Poly::variable(ring, x_var(1));
    const OneForm w{{Rational(2) * x1 * x2 + x1, x1 * x1}};
    for (int k = 0; k <= 4; ++k) {
        all.push_back(builtin_div(frac(3, 2), w, k));
        if (k >= 1)
            for (const Rational& lambda : {Rational(0), frac(1, 2), frac(1, 3)})
                all.push_back(quantization_first_cocycle(n, k, lambda));
        if (k >= 2) {
            all.push_back(builtin_c1(n, k));
            all.push_back(builtin_c2(n, k));
            all.push_back(builtin_gamma1_flat(n, k));
        }
    }
    for (const auto& c : all) {
        const auto r = cocycle_check(c, d);
        if (!r.holds)
            fail(o, c.name + " k=" + std::to_string(c.source_degree) + " fails on (" + to_string(r.counterexample->x.poly()) +
                        ", " + to_string(r.counterexample->y.poly()) + ")");
    }
    if (o.pass) o.detail = std::to_string(all.size()) + " cocycles hold on all field pairs of degree <= 4";
    return o;
}

Outcome quantization_sequence() {
    Outcome o;
    const int n = 2;
    for (int k : {2, 3}) {
        auto [cands1, desc1] = default_candidates(n, k, k - 1);
        auto [cands2, desc2] = default_candidates(n, k, k - 2);
        for (const Rational& lambda : {Rational(0), Rational(1), frac(1, 3)}) {
            const std::string where = "k=" + std::to_string(k) + " lambda=" + to_string(lambda);
            const OneCocycle g = quantization_first_cocycle(n, k, lambda);
            if (coboundary_solve(g, cands1, desc1).witness) fail(o, where + ": first cocycle is trivial");
            const auto dec = decompose_class(g, {builtin_c1(n, k)}, cands1);
            if (!dec) fail(o, where + ": not in the class of c1");
            else if (dec->multiples[0] == 0) fail(o, where + ": zero multiple of c1");
        }
        const std::string where = "k=" + std::to_string(k) + " lambda=1/2";
        const OneCocycle g = quantization_first_cocycle(n, k, frac(1, 2));
        const auto split = coboundary_solve(g, cands1, desc1);
        if (!split.witness) {
            fail(o, where + ": no splitting found");
            continue;
        }
        const OneCocycle second = quantization_second_cocycle(n, k, frac(1, 2), *split.witness);
        if (coboundary_solve(second, cands2, desc2).witness) fail(o, where + ": projected cocycle is trivial");
    }
    if (o.pass) o.detail = "non-split for lambda in {0, 1, 1/3}, split with non-trivial projection at 1/2";
    return o;
}

Outcome fourth_relation() {
    Outcome o;
    int checked = 0;
    for (int n : {2, 3})
        for (int k = 0; k <= 5; ++k)
            for (int p = 0; p <= k; ++p)
                for (const auto& b : recurrence_solutions(n, k, p).basis)
                    for (int s = 1; s <= p; ++s) {
                        ++checked;
                        const Rational v = evaluate_row(fourth_recurrence(n, k, p, s), b.flatten());
                        if (v != 0) fail(o, cell(n, k, p) + " s=" + std::to_string(s) + ": " + to_string(v));
                    }
    if (o.pass) o.detail = std::to_string(checked) + " evaluations vanish";
    return o;
}

Outcome property_suite() {
    Outcome o;
    int total = 0;
    for (const auto& r : run_property_suite(20240611)) {
        total += r.instances;
        if (!r.passed()) fail(o, r.name + ": " + r.first_failure);
    }
    if (o.pass) o.detail = std::to_string(total) + " randomized instances";
    return o;
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1, "commutation relation [L_Xbar_i, D] = (2E+n+1) d/dxi_i", 5, commutation_relation},
        {2, "affine commutant is span{D^(k-l)}", 30, weyl_commutant},
        {3, "recurrence and direct solvers agree", 120, solver_equivalence},
        {4, "relative cohomology table", 180, classification_table},
        {5, "explicit p=1 and p=2 solution lines", 0, explicit_solutions},
        {6, "c1 and c2 are not coboundaries", 60, non_triviality},
        {7, "cocycle identities at degree 4", 0, cocycle_identities},
        {8, "quantization sequence split/non-split behavior", 120, quantization_sequence},
        {9, "fourth recurrence holds on all solutions", 0, fourth_relation},
        {10, "property suite", 60, property_suite},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (c.budget_seconds > 0 && secs > c.budget_seconds) {
            std::ostringstream s;
            s << "over budget (" << c.budget_seconds << " s)";
            fail(o, s.str());
        }
        if (!o.pass) ++failures;
        char timing[32];
        std::snprintf(timing, sizeof timing, "%.2fs", secs);
        std::cout << (o.pass ? "PASS" : "FAIL") << "  criterion " << c.id << ": " << c.title << " [" << timing << "] "
                  << o.detail << std::endl;
    }
    std::cout << (criteria.size() - failures) << "/" << criteria.size() << " criteria passed" << std::endl;
    return failures == 0 ? 0 : 1;
}
