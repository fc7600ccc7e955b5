#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace cohomolab {

/// Exact rational scalar. GMP keeps every value canonical (lowest terms,
/// positive denominator) after each arithmetic operation.
using Rational = mpq_class;

/// Raised when operands live in incompatible rings or a variable is unknown.
struct StructuralError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Raised for unsupported dimensions or parameters outside a routine's domain.
struct DomainError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Raised when a computation would exceed the configured term budget.
struct ResourceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// num/den in lowest terms. (The two-argument mpq_class constructor does not
/// canonicalize, and non-canonical values break equality.)
inline Rational frac(long num, long den) {
    if (den == 0) throw std::invalid_argument("zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline std::string to_string(const Rational& q) {
    // mpq_class::get_str omits the denominator when it is 1.
    return q.get_str();
}

inline Rational parse_rational(std::string_view text) {
    std::string s(text);
    while (!s.empty() && s.front() == ' ') s.erase(s.begin());
    while (!s.empty() && s.back() == ' ') s.pop_back();
    if (s.empty()) throw StructuralError("empty rational literal");
    if (s.front() == '+') s.erase(s.begin());
    Rational q;
    if (q.set_str(s, 10) != 0) throw StructuralError("malformed rational literal '" + s + "'");
    if (q.get_den() == 0) throw StructuralError("zero denominator in '" + s + "'");
    q.canonicalize();
    return q;
}

inline Rational factorial(unsigned m) {
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), m);
    return Rational(f);
}

inline Rational binomial(unsigned top, unsigned bottom) {
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), top, bottom);
    return Rational(b);
}

/// m (m-1) ... (m-r+1)
inline Rational falling_factorial(unsigned m, unsigned r) {
    if (r > m) return Rational(0);
    mpz_class f = 1;
    for (unsigned i = 0; i < r; ++i) f *= (m - i);
    return Rational(f);
}

}  // namespace cohomolab
