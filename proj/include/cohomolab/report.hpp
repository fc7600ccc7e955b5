#pragma once

#include "cocycle_lab.hpp"
#include "diff_operator.hpp"
#include "equivariance_solver.hpp"

#include <json.hpp>

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

namespace cohomolab {

inline constexpr const char* kToolVersion = "1.0.0";

using Json = nlohmann::ordered_json;

struct RunConfig {
    int dim = 2;
    int k_min = 0;
    int k_max = 3;
    std::vector<Rational> lambdas{Rational(0), frac(1, 2)};
    int max_vf_degree = 4;
    std::string format = "json";
    std::uint64_t seed = 20240611;
    bool timing = false;

    void validate() const {
        if (dim < 2) throw DomainError("n >= 2 is required");
        if (dim > kMaxDimension) throw DomainError("n <= 8 is supported");
        if (k_min < 0 || k_max < k_min) throw DomainError("invalid k range");
        if (max_vf_degree < 2) throw DomainError("max vector-field degree must be >= 2");
        if (format != "json" && format != "text") throw DomainError("format must be json or text");
    }
};

/// Relative H^1 dimension for S_k → S_ℓ: 1 if k−ℓ = 2, 1 if k−ℓ = 1 and ℓ ≠ 0, 0 otherwise.
inline int expected_relative_dimension(int k, int l) {
    if (k - l == 2) return 1;
    if (k - l == 1 && l != 0) return 1;
    return 0;
}

/// Dimension of the equivariant (not yet cocycle) solution space per case.
inline int expected_equivariant_dimension(int k, int p) {
    const std::string c = case_label(k, p);
    if (c == "a") return 0;
    if (c == "b" || c == "d") return 1;
    return 2;
}

struct TableEntry {
    int k = 0;
    int l = 0;
    int relative_dimension = 0;
    int expected_dimension = 0;
    std::string case_label;
    std::string provenance;  // "solver", or "builtin:<name>" once a built-in witness verified the line
    std::vector<AnsatzCoefficients> basis;
    bool witness_verified = false;
    std::string note;
    std::string gap;  // nonempty when the cell could not be computed
    double millis = 0;  // not part of the value

    bool matches() const { return gap.empty() && relative_dimension == expected_dimension; }

    bool operator==(const TableEntry& o) const {
        return k == o.k && l == o.l && relative_dimension == o.relative_dimension &&
               expected_dimension == o.expected_dimension && case_label == o.case_label &&
               provenance == o.provenance && basis == o.basis && witness_verified == o.witness_verified &&
               note == o.note && gap == o.gap;
    }
};

struct CohomologyTable {
    int dim = 2;
    int k_min = 0;
    int k_max = 0;
    int max_vf_degree = 4;
    std::vector<TableEntry> entries;

    bool all_match() const {
        for (const auto& e : entries)
            if (!e.matches() || (e.relative_dimension == 1 && !e.witness_verified)) return false;
        return true;
    }
    const TableEntry& at(int k, int l) const {
        for (const auto& e : entries)
            if (e.k == k && e.l == l) return e;
        throw StructuralError("no table entry for (k, l) = (" + std::to_string(k) + ", " + std::to_string(l) + ")");
    }
    bool operator==(const CohomologyTable&) const = default;
};

namespace detail {

inline bool in_span(const std::vector<AnsatzCoefficients>& basis, const AnsatzCoefficients& v) {
    std::vector<Vector> b;
    for (const auto& e : basis) b.push_back(e.flatten());
    const std::size_t r = rank_of(b);
    b.push_back(v.flatten());
    return rank_of(b) == r;
}

/// For a one-dimensional cell: the matching built-in lies on the solver line,
/// satisfies the cocycle identity up to degree d and is not a coboundary.
inline bool verify_witness(int n, int k, int p, const SolutionSpace& space, int d, std::string& provenance) {
    if (p != 1 && p != 2) return false;
    const OneCocycle c = p == 1 ? builtin_c1(n, k) : builtin_c2(n, k);
    const AnsatzCoefficients coeffs = p == 1 ? c1_coefficients(n, k) : c2_coefficients(n, k);
    if (!in_span(space.basis, coeffs)) return false;
    if (!cocycle_check(c, d).holds) return false;
    auto [cands, description] = default_candidates(n, k, k - p);
    if (coboundary_solve(c, cands, description).witness) return false;
    provenance = "builtin:" + c.name;
    return true;
}

}  // namespace detail

inline CohomologyTable cohomology_table(const RunConfig& config) {
    config.validate();
    const int n = config.dim;
    CohomologyTable table{n, config.k_min, config.k_max, config.max_vf_degree, {}};
    for (int k = config.k_min; k <= config.k_max; ++k)
        for (int l = k; l >= 0; --l) {
            const int p = k - l;
            const auto start = std::chrono::steady_clock::now();
            TableEntry e;
            e.k = k;
            e.l = l;
            e.expected_dimension = expected_relative_dimension(k, l);
            e.case_label = case_label(k, p);
            e.provenance = "solver";
            try {
                const SolutionSpace space = impose_cocycle(recurrence_solutions(n, k, p));
                e.relative_dimension = static_cast<int>(space.dimension());
                e.basis = space.basis;
                if (space.dimension() == 1)
                    e.witness_verified = detail::verify_witness(n, k, p, space, config.max_vf_degree, e.provenance);
            } catch (const ResourceError& err) {
                e.gap = err.what();
            }
            if (p == 0)
                e.note = "relative H^1 is 0; the full H^1 on R^n is the divergence line (the de Rham summand vanishes)";
            e.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
            table.entries.push_back(std::move(e));
        }
    return table;
}

// ---------------------------------------------------------------------------
// JSON. Rationals are "num/den" strings; polynomials and operators use their
// canonical text forms.

inline Json to_json(const Rational& q) { return to_string(q); }
inline Rational rational_from_json(const Json& j) { return parse_rational(j.get<std::string>()); }

inline Json to_json(const Vector& v) {
    Json a = Json::array();
    for (const auto& q : v) a.push_back(to_json(q));
    return a;
}
inline Vector vector_from_json(const Json& j) {
    Vector v;
    for (const auto& q : j) v.push_back(rational_from_json(q));
    return v;
}

inline Json to_json(const Poly& p) { return to_string(p); }
inline Json to_json(const PolyDiffOp& a) { return to_string(a); }

inline Json to_json(const AnsatzCoefficients& c) {
    Json j;
    j["p"] = c.p;
    j["k"] = c.k;
    if (c.has_alpha()) j["alpha"] = to_json(c.alpha);
    j["beta"] = to_json(c.beta);
    j["gamma"] = to_json(c.gamma);
    j["coefficients"] = to_json(c.relative_part());
    return j;
}
inline AnsatzCoefficients ansatz_from_json(const Json& j) {
    AnsatzCoefficients c = AnsatzCoefficients::zero(j.at("p").get<int>(), j.at("k").get<int>());
    if (j.contains("alpha")) c.alpha = vector_from_json(j.at("alpha"));
    c.beta = vector_from_json(j.at("beta"));
    c.gamma = vector_from_json(j.at("gamma"));
    if (c.alpha.size() != AnsatzCoefficients::zero(c.p, c.k).alpha.size() || c.beta.size() != c.gamma.size())
        throw StructuralError("ansatz arrays do not match (p, k)");
    return c;
}

inline Json to_json(const SolutionSpace& s) {
    Json j;
    j["n"] = s.n;
    j["k"] = s.k;
    j["p"] = s.p;
    j["dimension"] = s.dimension();
    Json b = Json::array();
    for (const auto& c : s.basis) b.push_back(to_json(c));
    j["basis"] = b;
    return j;
}
inline SolutionSpace solution_space_from_json(const Json& j) {
    SolutionSpace s{j.at("n").get<int>(), j.at("k").get<int>(), j.at("p").get<int>(), {}};
    for (const auto& c : j.at("basis")) s.basis.push_back(ansatz_from_json(c));
    return s;
}

inline Json to_json(const CocycleCheck& c) {
    Json j;
    j["holds"] = c.holds;
    j["max_vf_degree"] = c.max_vf_degree;
    j["pairs_checked"] = c.pairs_checked;
    if (c.counterexample) {
        j["counterexample"] = {{"x", to_string(c.counterexample->x.poly())},
                               {"y", to_string(c.counterexample->y.poly())},
                               {"defect", to_string(c.counterexample->defect)}};
    }
    return j;
}
inline CocycleCheck cocycle_check_from_json(const Json& j, int n) {
    CocycleCheck c{j.at("holds").get<bool>(), j.at("max_vf_degree").get<int>(), j.at("pairs_checked").get<std::size_t>(),
                   std::nullopt};
    if (j.contains("counterexample")) {
        const Ring ring = Ring::single(n);
        const Json& ce = j.at("counterexample");
        c.counterexample = Counterexample{VectorFieldSymbol(parse_poly(ring, ce.at("x").get<std::string>())),
                                          VectorFieldSymbol(parse_poly(ring, ce.at("y").get<std::string>())),
                                          parse_operator(ring, ce.at("defect").get<std::string>())};
    }
    return c;
}

inline Json to_json(const CoboundaryResult& r) {
    Json j;
    j["verdict"] = r.verdict();
    j["witness"] = r.witness ? Json(to_string(*r.witness)) : Json(nullptr);
    j["candidate_count"] = r.candidate_count;
    j["candidate_space"] = r.candidate_space;
    return j;
}
inline CoboundaryResult coboundary_from_json(const Json& j, int n) {
    CoboundaryResult r{std::nullopt, j.at("candidate_count").get<std::size_t>(), j.at("candidate_space").get<std::string>()};
    if (!j.at("witness").is_null()) r.witness = parse_operator(Ring::single(n), j.at("witness").get<std::string>());
    return r;
}

inline Json to_json(const CocycleReport& r) {
    Json j;
    j["name"] = r.name;
    j["n"] = r.dim;
    j["k"] = r.source_degree;
    j["l"] = r.target_degree;
    j["cocycle_identity"] = to_json(r.check);
    j["vanishes_on_sl"] = r.vanishes_on_sl;
    j["coboundary"] = to_json(r.coboundary);
    return j;
}
inline CocycleReport cocycle_report_from_json(const Json& j) {
    const int n = j.at("n").get<int>();
    return {j.at("name").get<std::string>(), n, j.at("k").get<int>(), j.at("l").get<int>(),
            cocycle_check_from_json(j.at("cocycle_identity"), n), j.at("vanishes_on_sl").get<bool>(),
            coboundary_from_json(j.at("coboundary"), n)};
}

inline bool operator==(const CocycleCheck& a, const CocycleCheck& b) {
    if (a.holds != b.holds || a.max_vf_degree != b.max_vf_degree || a.pairs_checked != b.pairs_checked) return false;
    if (a.counterexample.has_value() != b.counterexample.has_value()) return false;
    return !a.counterexample || (a.counterexample->x == b.counterexample->x && a.counterexample->y == b.counterexample->y &&
                                 a.counterexample->defect == b.counterexample->defect);
}
inline bool operator==(const CoboundaryResult& a, const CoboundaryResult& b) {
    return a.witness == b.witness && a.candidate_count == b.candidate_count && a.candidate_space == b.candidate_space;
}
inline bool operator==(const CocycleReport& a, const CocycleReport& b) {
    return a.name == b.name && a.dim == b.dim && a.source_degree == b.source_degree &&
           a.target_degree == b.target_degree && a.check == b.check && a.vanishes_on_sl == b.vanishes_on_sl &&
           a.coboundary == b.coboundary;
}

inline Json to_json(const TableEntry& e, bool timing = false) {
    Json j;
    j["k"] = e.k;
    j["l"] = e.l;
    j["relative_dimension"] = e.relative_dimension;
    j["expected_dimension"] = e.expected_dimension;
    j["matched_paper_case"] = e.case_label;
    j["provenance"] = e.provenance;
    Json b = Json::array();
    for (const auto& c : e.basis) b.push_back(to_json(c));
    j["basis"] = b;
    j["witness_verified"] = e.witness_verified;
    if (!e.note.empty()) j["note"] = e.note;
    if (!e.gap.empty()) j["gap"] = e.gap;
    if (timing) j["millis"] = e.millis;
    return j;
}
inline TableEntry table_entry_from_json(const Json& j) {
    TableEntry e;
    e.k = j.at("k").get<int>();
    e.l = j.at("l").get<int>();
    e.relative_dimension = j.at("relative_dimension").get<int>();
    e.expected_dimension = j.at("expected_dimension").get<int>();
    e.case_label = j.at("matched_paper_case").get<std::string>();
    e.provenance = j.at("provenance").get<std::string>();
    for (const auto& c : j.at("basis")) e.basis.push_back(ansatz_from_json(c));
    e.witness_verified = j.at("witness_verified").get<bool>();
    e.note = j.value("note", "");
    e.gap = j.value("gap", "");
    e.millis = j.value("millis", 0.0);
    return e;
}

inline Json to_json(const CohomologyTable& t, bool timing = false) {
    Json j;
    j["n"] = t.dim;
    j["k_min"] = t.k_min;
    j["k_max"] = t.k_max;
    j["max_vf_degree"] = t.max_vf_degree;
    Json a = Json::array();
    for (const auto& e : t.entries) a.push_back(to_json(e, timing));
    j["entries"] = a;
    j["all_match"] = t.all_match();
    return j;
}
inline CohomologyTable table_from_json(const Json& j) {
    CohomologyTable t{j.at("n").get<int>(), j.at("k_min").get<int>(), j.at("k_max").get<int>(),
                      j.at("max_vf_degree").get<int>(), {}};
    for (const auto& e : j.at("entries")) t.entries.push_back(table_entry_from_json(e));
    return t;
}

inline Json to_json(const RelationCheck& r) {
    return {{"n", r.dim}, {"i", r.index}, {"operators_equal", r.operators_equal},
            {"monomials_checked", r.monomials_checked}, {"mismatches", r.mismatches}, {"holds", r.holds()}};
}
inline RelationCheck relation_check_from_json(const Json& j) {
    return {j.at("n").get<int>(), j.at("i").get<int>(), j.at("operators_equal").get<bool>(),
            j.at("monomials_checked").get<std::size_t>(), j.at("mismatches").get<std::size_t>()};
}
inline bool operator==(const RelationCheck& a, const RelationCheck& b) {
    return a.dim == b.dim && a.index == b.index && a.operators_equal == b.operators_equal &&
           a.monomials_checked == b.monomials_checked && a.mismatches == b.mismatches;
}

inline Json to_json(const RunConfig& c) {
    Json l = Json::array();
    for (const auto& q : c.lambdas) l.push_back(to_json(q));
    return {{"n", c.dim},           {"k_min", c.k_min},   {"k_max", c.k_max}, {"lambdas", l},
            {"max_vf_degree", c.max_vf_degree}, {"format", c.format}, {"seed", c.seed}, {"timing", c.timing}};
}
inline RunConfig run_config_from_json(const Json& j) {
    RunConfig c;
    c.dim = j.at("n").get<int>();
    c.k_min = j.at("k_min").get<int>();
    c.k_max = j.at("k_max").get<int>();
    c.lambdas.clear();
    for (const auto& q : j.at("lambdas")) c.lambdas.push_back(rational_from_json(q));
    c.max_vf_degree = j.at("max_vf_degree").get<int>();
    c.format = j.at("format").get<std::string>();
    c.seed = j.at("seed").get<std::uint64_t>();
    c.timing = j.at("timing").get<bool>();
    return c;
}
inline bool operator==(const RunConfig& a, const RunConfig& b) {
    return a.dim == b.dim && a.k_min == b.k_min && a.k_max == b.k_max && a.lambdas == b.lambdas &&
           a.max_vf_degree == b.max_vf_degree && a.format == b.format && a.seed == b.seed && a.timing == b.timing;
}

/// Envelope shared by every command: tool, version, command, config echo, result.
inline Json envelope(const std::string& command, const Json& config, const Json& result) {
    Json j;
    j["tool"] = "cohomolab";
    j["version"] = kToolVersion;
    j["command"] = command;
    j["config"] = config;
    j["result"] = result;
    return j;
}

/// Plain-text rendering of the table, one line per (k, l) cell.
inline std::string to_text(const CohomologyTable& t) {
    std::string out = "n = " + std::to_string(t.dim) + ", cocycle identity checked up to vector-field degree " +
                      std::to_string(t.max_vf_degree) + "\n";
    out += "  k  l  p  case  dim  expected  witness\n";
    for (const auto& e : t.entries) {
        char line[128];
        std::snprintf(line, sizeof line, "%3d%3d%3d  %-4s  %3d  %8d  %s", e.k, e.l, e.k - e.l, e.case_label.c_str(),
                      e.relative_dimension, e.expected_dimension,
                      e.relative_dimension == 1 ? (e.witness_verified ? e.provenance.c_str() : "unverified") : "-");
        out += line;
        if (!e.gap.empty()) out += "  gap: " + e.gap;
        out += "\n";
    }
    out += t.all_match() ? "all entries match\n" : "MISMATCH\n";
    return out;
}

}  // namespace cohomolab
