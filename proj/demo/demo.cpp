// A short tour: the p = 1 and p = 2 cocycle lines, a check that the built-in
// cocycles are non-trivial, and the symbol sequence of D_λ at λ = 0 and 1/2.

#include "cohomolab/cohomolab.hpp"

#include <iostream>

using namespace cohomolab;

namespace {

void print_line(const SolutionSpace& s) {
    std::cout << "  k=" << s.k << " p=" << s.p << " (case " << case_label(s.k, s.p) << "):";
    if (s.basis.empty()) std::cout << " no cocycles";
    for (const auto& b : s.basis) {
        const auto labels = b.labels();
        const Vector flat = b.flatten();
        for (std::size_t i = 0; i < flat.size(); ++i)
            if (flat[i] != 0) std::cout << " " << labels[i] << "=" << to_string(flat[i]);
    }
    std::cout << "\n";
}

}  // namespace

int main() {
    const int n = 2;

    std::cout << "Equivariant cocycle lines on R^" << n << ":\n";
    for (int k = 2; k <= 4; ++k)
        for (int p = 1; p <= 3 && p <= k; ++p) print_line(impose_cocycle(recurrence_solutions(n, k, p)));

    std::cout << "\nBuilt-in cocycles, k = 3:\n";
    for (const OneCocycle& c : {builtin_c1(n, 3), builtin_c2(n, 3)}) {
        const CocycleReport r = full_report(c, 3);
        std::cout << "  " << c.name << ": identity " << (r.check.holds ? "holds" : "fails") << " on "
                  << r.check.pairs_checked << " pairs, " << (r.vanishes_on_sl ? "vanishes" : "does not vanish")
                  << " on sl(3), coboundary search: " << r.coboundary.verdict() << "\n";
    }

    std::cout << "\nSymbol sequence of D_lambda, k = 2:\n";
    const PolyDiffOp d = divergence_operator(n);
    for (const Rational& lambda : {Rational(0), frac(1, 2)}) {
        const OneCocycle g = quantization_first_cocycle(n, 2, lambda);
        const auto dec = decompose_class(g, {builtin_c1(n, 2)}, {d});
        std::cout << "  lambda=" << to_string(lambda) << ": sigma_1 cocycle = " << to_string(dec->multiples[0])
                  << " * c1 + X.(" << to_string(dec->witness) << ")\n";
    }
    const auto split = coboundary_solve(quantization_first_cocycle(n, 2, frac(1, 2)), {d});
    const OneCocycle second = quantization_second_cocycle(n, 2, frac(1, 2), *split.witness);
    const auto dec2 = decompose_class(second, {builtin_c2(n, 2)}, {power(d, 2)});
    std::cout << "  lambda=1/2 after splitting: sigma_0 cocycle = " << to_string(dec2->multiples[0])
              << " * c2 + coboundary\n";
}
