// cohomolab: command-line front end.
//
// Exit codes: 0 every check passed, 1 a result differs from the expected
// value, 2 bad configuration (or a resource limit was hit).

#include "cohomolab/cohomolab.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace cohomolab;

namespace {

struct Options {
    int dim = 2;
    int order = 2;
    int delta = 1;
    int k_min = 0;
    int k_max = 3;
    std::string lambda = "0";
    int max_vf_degree = 4;
    std::string format = "json";
    std::uint64_t seed = 20240611;
    std::string name = "c1";
    std::string candidates = "affine";
    std::string solver = "recurrence";
    bool cocycle = false;
    bool timing = false;
};

class Timer {
public:
    double lap() {
        const auto now = std::chrono::steady_clock::now();
        const double ms = std::chrono::duration<double, std::milli>(now - last_).count();
        last_ = now;
        return ms;
    }

private:
    std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
};

Json base_config(const Options& o) {
    Json c;
    c["n"] = o.dim;
    c["format"] = o.format;
    return c;
}

int emit(const Options& o, const std::string& command, Json config, Json result, const std::string& text, bool ok,
         Timer& timer) {
    if (o.timing) result["millis"] = timer.lap();
    result["ok"] = ok;
    if (o.format == "text") {
        std::cout << text;
        if (!ok) std::cout << "MISMATCH\n";
    } else {
        std::cout << envelope(command, config, result).dump(2) << "\n";
    }
    return ok ? 0 : 1;
}

int check_relation(const Options& o) {
    Timer t;
    Json checks = Json::array();
    std::ostringstream text;
    bool ok = true;
    for (int i = 1; i <= o.dim; ++i) {
        const RelationCheck r = commutation_relation_check(o.dim, i, 6);
        ok = ok && r.holds();
        checks.push_back(to_json(r));
        text << "i=" << i << ": operators " << (r.operators_equal ? "equal" : "DIFFER") << ", " << r.mismatches
             << " mismatches on " << r.monomials_checked << " monomials\n";
    }
    Json config = base_config(o);
    config["max_total_degree"] = 6;
    return emit(o, "check-relation", config, {{"checks", checks}}, text.str(), ok, t);
}

int classify(const Options& o) {
    Timer t;
    const int k = o.order, p = o.delta;
    SolutionSpace space = o.solver == "direct" ? solve_equivariant_direct(o.dim, k, p) : recurrence_solutions(o.dim, k, p);
    bool ok = true;
    Json result;
    if (o.solver == "both") {
        const bool same = same_solution_space(space, solve_equivariant_direct(o.dim, k, p));
        result["solvers_agree"] = same;
        ok = ok && same;
    }
    if (o.cocycle) space = impose_cocycle(space);
    const int expected = o.cocycle ? expected_relative_dimension(k, k - p) : expected_equivariant_dimension(k, p);
    ok = ok && static_cast<int>(space.dimension()) == expected;
    // reported with integer-normalized basis vectors
    SolutionSpace shown = space;
    for (auto& b : shown.basis) b = AnsatzCoefficients::from_flat(p, k, primitive_integer(b.flatten()));
    result["dimension"] = space.dimension();
    result["expected_dimension"] = expected;
    result["basis"] = to_json(shown)["basis"];
    result["matched_paper_case"] = case_label(k, p);
    std::ostringstream text;
    text << "n=" << o.dim << " k=" << k << " p=" << p << (o.cocycle ? " (cocycles)" : "") << ": dimension "
         << space.dimension() << ", case " << case_label(k, p) << "\n";
    for (const auto& b : shown.basis) {
        text << " ";
        const auto labels = b.labels();
        const Vector flat = b.flatten();
        for (std::size_t i = 0; i < flat.size(); ++i)
            if (flat[i] != 0) text << " " << labels[i] << "=" << to_string(flat[i]);
        text << "\n";
    }
    Json config = base_config(o);
    config["k"] = k;
    config["p"] = p;
    config["cocycle"] = o.cocycle;
    config["solver"] = o.solver;
    return emit(o, "classify-equivariant", config, result, text.str(), ok, t);
}

int table(const Options& o) {
    RunConfig rc;
    rc.dim = o.dim;
    rc.k_min = o.k_min;
    rc.k_max = o.k_max;
    rc.max_vf_degree = o.max_vf_degree;
    rc.format = o.format;
    rc.seed = o.seed;
    rc.timing = o.timing;
    rc.validate();
    const CohomologyTable tab = cohomology_table(rc);
    const bool ok = tab.all_match();
    if (o.format == "text") {
        std::cout << to_text(tab);
    } else {
        Json result = to_json(tab, o.timing);
        result["ok"] = ok;
        std::cout << envelope("cohomology-table", to_json(rc), result).dump(2) << "\n";
    }
    return ok ? 0 : 1;
}

std::vector<PolyDiffOp> read_candidates(const std::string& path, int n) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open candidate file '" + path + "'");
    std::vector<PolyDiffOp> out;
    std::string line;
    while (std::getline(in, line)) {
        const auto t = detail::trim(line);
        if (t.empty() || t.front() == '#') continue;
        out.push_back(parse_operator(Ring::single(n), t));
    }
    return out;
}

int verify(const Options& o) {
    Timer t;
    const OneCocycle c = builtin_by_name(o.name, o.dim, o.order);
    const CocycleReport r = full_report(c, o.max_vf_degree);
    // c1 and c2 must vanish on sl(n+1) and be non-trivial; gamma1 and div are
    // only required to satisfy the identity
    bool ok = r.check.holds;
    if (o.name == "c1" || o.name == "c2") ok = ok && r.vanishes_on_sl && !r.coboundary.witness;
    std::ostringstream text;
    text << c.name << " on S_" << c.source_degree << " -> S_" << c.target_degree << ", n=" << c.dim << "\n"
         << "  cocycle identity: " << (r.check.holds ? "holds" : "FAILS") << " (" << r.check.pairs_checked
         << " pairs, degree <= " << r.check.max_vf_degree << ")\n"
         << "  vanishes on sl(n+1): " << (r.vanishes_on_sl ? "yes" : "no") << "\n"
         << "  coboundary: " << r.coboundary.verdict() << " [" << r.coboundary.candidate_space << "]\n";
    if (r.check.counterexample) text << "  defect: " << to_string(r.check.counterexample->defect) << "\n";
    Json config = base_config(o);
    config["name"] = o.name;
    config["k"] = o.order;
    config["max_vf_degree"] = o.max_vf_degree;
    return emit(o, "verify-cocycle", config, to_json(r), text.str(), ok, t);
}

int coboundary(const Options& o) {
    Timer t;
    const OneCocycle c = builtin_by_name(o.name, o.dim, o.order);
    CoboundaryResult r;
    if (o.candidates == "affine") {
        auto [cands, description] = default_candidates(o.dim, c.source_degree, c.target_degree);
        r = coboundary_solve(c, cands, description);
    } else {
        r = coboundary_solve(c, read_candidates(o.candidates, o.dim), "file " + o.candidates);
    }
    // the built-ins are all non-trivial
    const bool ok = !r.witness;
    std::ostringstream text;
    text << c.name << ": " << r.verdict() << " (" << r.candidate_count << " candidates, " << r.candidate_space << ")\n";
    if (r.witness) text << "  witness: " << to_string(*r.witness) << "\n";
    Json config = base_config(o);
    config["name"] = o.name;
    config["k"] = o.order;
    config["candidates"] = o.candidates;
    return emit(o, "coboundary-test", config, to_json(r), text.str(), ok, t);
}

int quantization(const Options& o) {
    Timer t;
    const int n = o.dim, k = o.order;
    if (k < 2) throw DomainError("quantization-cocycle needs k >= 2");
    const Rational lambda = parse_rational(o.lambda);
    const OneCocycle first = quantization_first_cocycle(n, k, lambda);
    const PolyDiffOp d = divergence_operator(n);
    const CocycleCheck check = cocycle_check(first, o.max_vf_degree);
    const auto split = coboundary_solve(first, {d}, "span{D}");
    const auto dec = decompose_class(first, {builtin_c1(n, k)}, {d});
    Json result;
    result["first"] = {{"cocycle_identity", to_json(check)},
                       {"vanishes_on_affine", vanishes_on_affine(first)},
                       {"c1_multiple", dec ? Json(to_string(dec->multiples[0])) : Json(nullptr)},
                       {"coboundary", to_json(split)}};
    const bool half = lambda == frac(1, 2);
    bool ok = check.holds && dec.has_value() && (half ? split.witness.has_value() : !split.witness.has_value());
    std::ostringstream text;
    text << "sigma_" << k - 1 << " cocycle, lambda=" << to_string(lambda) << ": identity "
         << (check.holds ? "holds" : "FAILS") << "; " << split.verdict();
    if (dec) text << "; equals " << to_string(dec->multiples[0]) << " * c1 + coboundary";
    text << "\n";
    if (half && split.witness) {
        const OneCocycle second = quantization_second_cocycle(n, k, lambda, *split.witness);
        const PolyDiffOp d2 = compose(d, d);
        const CocycleCheck check2 = cocycle_check(second, o.max_vf_degree);
        const auto triv2 = coboundary_solve(second, {d2}, "span{D^2}");
        const auto dec2 = decompose_class(second, {builtin_c2(n, k)}, {d2});
        result["splitting"] = to_string(*split.witness);
        result["second"] = {{"cocycle_identity", to_json(check2)},
                            {"c2_multiple", dec2 ? Json(to_string(dec2->multiples[0])) : Json(nullptr)},
                            {"coboundary", to_json(triv2)}};
        ok = ok && check2.holds && !triv2.witness;
        text << "sigma_" << k - 2 << " cocycle after splitting: identity " << (check2.holds ? "holds" : "FAILS") << "; "
             << triv2.verdict();
        if (dec2) text << "; equals " << to_string(dec2->multiples[0]) << " * c2 + coboundary";
        text << "\n";
    }
    Json config = base_config(o);
    config["k"] = k;
    config["lambda"] = to_string(lambda);
    config["max_vf_degree"] = o.max_vf_degree;
    return emit(o, "quantization-cocycle", config, result, text.str(), ok, t);
}

int properties(const Options& o) {
    Timer t;
    const auto results = run_property_suite(o.seed);
    Json arr = Json::array();
    std::ostringstream text;
    bool ok = true;
    for (const auto& r : results) {
        ok = ok && r.passed();
        Json j = {{"name", r.name}, {"instances", r.instances}, {"failures", r.failures}};
        if (!r.passed()) j["first_failure"] = r.first_failure;
        arr.push_back(j);
        text << (r.passed() ? "ok   " : "FAIL ") << r.name << " (" << r.instances << ")";
        if (!r.passed()) text << ": " << r.first_failure;
        text << "\n";
    }
    Json config = base_config(o);
    config["seed"] = o.seed;
    return emit(o, "properties", config, {{"properties", arr}}, text.str(), ok, t);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact first-cohomology computations for vector fields acting on symbol spaces"};
    app.require_subcommand(1);
    Options o;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--dim,-n", o.dim, "dimension n (>= 2)")->capture_default_str();
        sub->add_option("--format", o.format, "json or text")
            ->check(CLI::IsMember({"json", "text"}))
            ->capture_default_str();
        sub->add_flag("--timing", o.timing, "include wall-clock timings in the report");
    };

    auto* rel = app.add_subcommand("check-relation", "verify [L_{Xbar_i}, D] = (2E + n + 1) d/dxi_i");
    common(rel);

    auto* cls = app.add_subcommand("classify-equivariant", "solve the equivariant bilinear problem for (k, p)");
    common(cls);
    cls->add_option("--order,-k", o.order, "symbol degree k")->required();
    cls->add_option("--delta,-p", o.delta, "degree drop p = k - l")->required();
    cls->add_flag("--cocycle", o.cocycle, "also impose the cocycle condition");
    cls->add_option("--solver", o.solver, "recurrence, direct or both")
        ->check(CLI::IsMember({"recurrence", "direct", "both"}))
        ->capture_default_str();

    auto* tab = app.add_subcommand("cohomology-table", "relative H^1 dimensions for a range of k");
    common(tab);
    tab->add_option("--kmin", o.k_min, "smallest k")->capture_default_str();
    tab->add_option("--kmax,--order,-k", o.k_max, "largest k")->capture_default_str();
    tab->add_option("--max-vf-degree,-d", o.max_vf_degree, "field degree for witness verification")
        ->capture_default_str();
    tab->add_option("--seed", o.seed, "random seed (recorded in the config echo)")->capture_default_str();

    auto* ver = app.add_subcommand("verify-cocycle", "check a built-in cocycle");
    common(ver);
    ver->add_option("--name", o.name, "c1, c2, div or gamma1")
        ->check(CLI::IsMember({"c1", "c2", "div", "gamma1"}))
        ->capture_default_str();
    ver->add_option("--order,-k", o.order, "source degree k")->required();
    ver->add_option("--max-vf-degree,-d", o.max_vf_degree, "largest vector-field degree")->capture_default_str();

    auto* cob = app.add_subcommand("coboundary-test", "look for B with c(X) = X.B");
    common(cob);
    cob->add_option("--name", o.name, "c1, c2, div or gamma1")
        ->check(CLI::IsMember({"c1", "c2", "div", "gamma1"}))
        ->capture_default_str();
    cob->add_option("--order,-k", o.order, "source degree k")->required();
    cob->add_option("--candidates", o.candidates, "'affine' or a file with one operator per line")
        ->capture_default_str();

    auto* qz = app.add_subcommand("quantization-cocycle", "cocycles of the symbol sequence for D_lambda");
    common(qz);
    qz->add_option("--order,-k", o.order, "symbol degree k")->required();
    qz->add_option("--lambda", o.lambda, "density weight, e.g. 1/2")->capture_default_str();
    qz->add_option("--max-vf-degree,-d", o.max_vf_degree, "largest vector-field degree")->capture_default_str();

    auto* prop = app.add_subcommand("properties", "randomized identity checks at a fixed seed");
    common(prop);
    prop->add_option("--seed", o.seed, "random seed")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (o.dim < 2) throw DomainError("n >= 2 is required");
        if (o.dim > kMaxDimension) throw DomainError("n <= 8 is supported");
        if (*rel) return check_relation(o);
        if (*cls) return classify(o);
        if (*tab) return table(o);
        if (*ver) return verify(o);
        if (*cob) return coboundary(o);
        if (*qz) return quantization(o);
        if (*prop) return properties(o);
    } catch (const std::invalid_argument& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const ResourceError& e) {
        std::cerr << "resource limit: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
