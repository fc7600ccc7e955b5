#pragma once

#include "rational.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace cohomolab {

inline constexpr int kMaxVariables = 32;
inline constexpr int kMaxDimension = kMaxVariables / 4;

/// Exponent vector over the concatenated variables x, xi (and y, eta in the
/// doubled ring). Unused trailing slots stay zero.
using Exponents = std::array<std::uint8_t, kMaxVariables>;

enum class RingMode : std::uint8_t { single, doubled };

struct Ring {
    int dim = 2;
    RingMode mode = RingMode::single;

    int variable_count() const { return mode == RingMode::single ? 2 * dim : 4 * dim; }
    bool operator==(const Ring&) const = default;

    static Ring single(int n) { return checked(n, RingMode::single); }
    static Ring doubled(int n) { return checked(n, RingMode::doubled); }

private:
    static Ring checked(int n, RingMode m) {
        if (n < 1 || n > kMaxDimension)
            throw DomainError("dimension must lie in [1, " + std::to_string(kMaxDimension) + "]");
        return Ring{n, m};
    }
};

enum class VarKind : std::uint8_t { x, xi, y, eta };

/// A coordinate: kind plus 0-based index (printed 1-based).
struct Var {
    VarKind kind;
    int index;
};

inline Var x_var(int i) { return {VarKind::x, i}; }
inline Var xi_var(int i) { return {VarKind::xi, i}; }
inline Var y_var(int i) { return {VarKind::y, i}; }
inline Var eta_var(int i) { return {VarKind::eta, i}; }

/// Position of a variable in the exponent vector of `ring`.
inline int slot(const Ring& ring, Var v) {
    if (v.index < 0 || v.index >= ring.dim)
        throw StructuralError("variable index " + std::to_string(v.index + 1) + " out of range for n=" +
                              std::to_string(ring.dim));
    const int block = static_cast<int>(v.kind);
    if (ring.mode == RingMode::single && block >= 2)
        throw StructuralError("y/eta variables do not exist in the single ring");
    return block * ring.dim + v.index;
}

inline Var var_at(const Ring& ring, int s) {
    return Var{static_cast<VarKind>(s / ring.dim), s % ring.dim};
}

inline std::string var_name(Var v) {
    static constexpr std::array<const char*, 4> prefix{"x", "xi", "y", "eta"};
    return prefix[static_cast<int>(v.kind)] + std::to_string(v.index + 1);
}

namespace detail {

inline std::size_t term_limit() {
    static const std::size_t limit = [] {
        if (const char* env = std::getenv("COHOMOLAB_MAX_TERMS")) {
            char* end = nullptr;
            const unsigned long long v = std::strtoull(env, &end, 10);
            if (end != env && v > 0) return static_cast<std::size_t>(v);
        }
        return std::size_t{5'000'000};
    }();
    return limit;
}

inline void check_term_budget(std::size_t count) {
    if (count > term_limit())
        throw ResourceError("term count " + std::to_string(count) + " exceeds COHOMOLAB_MAX_TERMS=" +
                            std::to_string(term_limit()));
}

inline int block_sum(const Exponents& e, int from, int count) {
    int s = 0;
    for (int i = from; i < from + count; ++i) s += e[i];
    return s;
}

inline Exponents add(const Exponents& a, const Exponents& b) {
    Exponents r{};
    for (int i = 0; i < kMaxVariables; ++i) {
        const int v = a[i] + b[i];
        if (v > 255) throw ResourceError("exponent overflow");
        r[i] = static_cast<std::uint8_t>(v);
    }
    return r;
}

inline bool divides(const Exponents& a, const Exponents& b) {
    for (int i = 0; i < kMaxVariables; ++i)
        if (a[i] > b[i]) return false;
    return true;
}

inline Exponents sub(const Exponents& a, const Exponents& b) {
    Exponents r{};
    for (int i = 0; i < kMaxVariables; ++i) r[i] = static_cast<std::uint8_t>(a[i] - b[i]);
    return r;
}

/// prod_i a_i! / (a_i - b_i)!  (zero unless b <= a)
inline Rational falling(const Exponents& a, const Exponents& b) {
    Rational f = 1;
    for (int i = 0; i < kMaxVariables; ++i) {
        if (b[i] == 0) continue;
        if (b[i] > a[i]) return 0;
        f *= falling_factorial(a[i], b[i]);
    }
    return f;
}

inline Rational multi_factorial(const Exponents& a) {
    Rational f = 1;
    for (auto v : a)
        if (v > 1) f *= factorial(v);
    return f;
}

}  // namespace detail

/// Exponent vectors of total degree `degree` over `count` variables starting at
/// slot `from`, in descending lexicographic order.
inline std::vector<Exponents> monomials_of_degree(int from, int count, int degree) {
    std::vector<Exponents> out;
    Exponents cur{};
    std::function<void(int, int)> rec = [&](int pos, int left) {
        if (pos == from + count - 1) {
            cur[pos] = static_cast<std::uint8_t>(left);
            out.push_back(cur);
            cur[pos] = 0;
            return;
        }
        for (int e = left; e >= 0; --e) {
            cur[pos] = static_cast<std::uint8_t>(e);
            rec(pos + 1, left - e);
        }
        cur[pos] = 0;
    };
    if (count == 0) {
        if (degree == 0) out.push_back(cur);
        return out;
    }
    rec(from, degree);
    return out;
}

/// Exact sparse multivariate polynomial over the rationals.
///
/// Terms are kept in a map ordered descending-lexicographically on the
/// exponent vector; zero coefficients are never stored, so structural
/// equality of the maps is polynomial equality.
class Poly {
public:
    using TermMap = std::map<Exponents, Rational, std::greater<Exponents>>;

    explicit Poly(Ring ring = Ring{}) : ring_(ring) {}

    static Poly constant(Ring ring, const Rational& c) {
        Poly p(ring);
        p.add_term(Exponents{}, c);
        return p;
    }
    static Poly variable(Ring ring, Var v) {
        Exponents e{};
        e[slot(ring, v)] = 1;
        return monomial(ring, e);
    }
    static Poly monomial(Ring ring, const Exponents& e, const Rational& c = 1) {
        for (int i = ring.variable_count(); i < kMaxVariables; ++i)
            if (e[i] != 0) throw StructuralError("exponent outside the ring's variables");
        Poly p(ring);
        p.add_term(e, c);
        return p;
    }

    const Ring& ring() const { return ring_; }
    int dim() const { return ring_.dim; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Exponents{}); }
    Rational constant_value() const { return terms_.empty() ? Rational(0) : coefficient(Exponents{}); }
    std::size_t size() const { return terms_.size(); }

    Rational coefficient(const Exponents& e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    void add_term(const Exponents& e, const Rational& c) {
        if (c == 0) return;
        auto [it, inserted] = terms_.try_emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    Poly& operator+=(const Poly& o) {
        require_same_ring(o);
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }
    Poly& operator-=(const Poly& o) {
        require_same_ring(o);
        for (const auto& [e, c] : o.terms_) add_term(e, -c);
        return *this;
    }
    Poly& operator*=(const Rational& s) {
        if (s == 0) {
            terms_.clear();
            return *this;
        }
        for (auto& [e, c] : terms_) c *= s;
        return *this;
    }

    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator-(Poly a) { return a *= Rational(-1); }
    friend Poly operator*(Poly a, const Rational& s) { return a *= s; }
    friend Poly operator*(const Rational& s, Poly a) { return a *= s; }

    friend Poly operator*(const Poly& a, const Poly& b) {
        a.require_same_ring(b);
        Poly r(a.ring_);
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) r.add_term(detail::add(ea, eb), ca * cb);
        detail::check_term_budget(r.size());
        return r;
    }

    bool operator==(const Poly& o) const { return ring_ == o.ring_ && terms_ == o.terms_; }
    bool operator<(const Poly& o) const {
        if (ring_.dim != o.ring_.dim) return ring_.dim < o.ring_.dim;
        if (ring_.mode != o.ring_.mode) return ring_.mode < o.ring_.mode;
        return std::lexicographical_compare(
            terms_.begin(), terms_.end(), o.terms_.begin(), o.terms_.end(), [](const auto& l, const auto& r) {
                if (l.first != r.first) return l.first > r.first;
                return l.second < r.second;
            });
    }

    void require_same_ring(const Poly& o) const {
        if (!(ring_ == o.ring_)) throw StructuralError("polynomials live in different rings");
    }

    /// Total exponent in the xi block (or eta block when `second` is set).
    int xi_degree_of(const Exponents& e, bool second = false) const {
        return detail::block_sum(e, (second ? 3 : 1) * ring_.dim, ring_.dim);
    }
    int x_degree_of(const Exponents& e) const { return detail::block_sum(e, 0, ring_.dim); }

    /// -1 for the zero polynomial.
    int max_x_degree() const {
        int d = -1;
        for (const auto& [e, c] : terms_) d = std::max(d, x_degree_of(e));
        return d;
    }

    /// ξ-degree if every term has the same one, -1 for zero, -2 if mixed.
    int homogeneous_xi_degree() const {
        int d = -1;
        for (const auto& [e, c] : terms_) {
            const int k = xi_degree_of(e);
            if (d == -1) d = k;
            else if (d != k) return -2;
        }
        return d;
    }

private:
    Ring ring_;
    TermMap terms_;
};

/// ∂/∂v p
inline Poly partial_derivative(const Poly& p, Var v) {
    const int s = slot(p.ring(), v);
    Poly r(p.ring());
    for (const auto& [e, c] : p.terms()) {
        if (e[s] == 0) continue;
        Exponents d = e;
        d[s] -= 1;
        r.add_term(d, c * e[s]);
    }
    return r;
}

/// ∂^idx p for a multi-index over all ring variables.
inline Poly derivative(const Poly& p, const Exponents& idx) {
    Poly r(p.ring());
    for (const auto& [e, c] : p.terms()) {
        if (!detail::divides(idx, e)) continue;
        r.add_term(detail::sub(e, idx), c * detail::falling(e, idx));
    }
    return r;
}

/// Substitute y := x, eta := xi; the result lives in the single ring.
inline Poly restrict_diagonal(const Poly& p) {
    if (p.ring().mode != RingMode::doubled) throw StructuralError("restrict_diagonal needs a doubled-ring polynomial");
    const int n = p.dim();
    const Ring target = Ring::single(n);
    Poly r(target);
    for (const auto& [e, c] : p.terms()) {
        Exponents f{};
        for (int i = 0; i < 2 * n; ++i) {
            const int v = e[i] + e[i + 2 * n];
            if (v > 255) throw ResourceError("exponent overflow");
            f[i] = static_cast<std::uint8_t>(v);
        }
        r.add_term(f, c);
    }
    return r;
}

/// Copy a single-ring polynomial into the doubled ring, either onto (x, xi)
/// or, with `second`, onto (y, eta).
inline Poly embed_doubled(const Poly& p, bool second) {
    if (p.ring().mode != RingMode::single) throw StructuralError("embed_doubled needs a single-ring polynomial");
    const int n = p.dim();
    Poly r(Ring::doubled(n));
    for (const auto& [e, c] : p.terms()) {
        Exponents f{};
        for (int i = 0; i < 2 * n; ++i) f[i + (second ? 2 * n : 0)] = e[i];
        r.add_term(f, c);
    }
    return r;
}

/// A polynomial homogeneous of ξ-degree `degree` (an element of S_k).
class SymbolSection {
public:
    SymbolSection(Poly p, int degree) : poly_(std::move(p)), degree_(degree) {
        if (poly_.ring().mode != RingMode::single) throw StructuralError("symbols live in the single ring");
        if (degree_ < 0) throw DomainError("negative symbol degree");
        for (const auto& [e, c] : poly_.terms())
            if (poly_.xi_degree_of(e) != degree_)
                throw StructuralError("term of xi-degree " + std::to_string(poly_.xi_degree_of(e)) +
                                      " in a degree-" + std::to_string(degree_) + " symbol");
    }

    const Poly& poly() const { return poly_; }
    int degree() const { return degree_; }
    bool operator==(const SymbolSection&) const = default;

private:
    Poly poly_;
    int degree_;
};

/// Split into ξ-homogeneous components, ascending in degree; zero parts are omitted.
inline std::vector<SymbolSection> xi_degree_decompose(const Poly& p) {
    if (p.ring().mode != RingMode::single) throw StructuralError("xi_degree_decompose needs the single ring");
    std::map<int, Poly> parts;
    for (const auto& [e, c] : p.terms()) {
        auto [it, _] = parts.try_emplace(p.xi_degree_of(e), p.ring());
        it->second.add_term(e, c);
    }
    std::vector<SymbolSection> out;
    for (auto& [k, q] : parts) out.emplace_back(std::move(q), k);
    return out;
}

// ---------------------------------------------------------------------------
// Canonical text form: "x1^2 + 2*x1*xi2 - 3/2*xi2^2", zero prints as "0".

inline std::string monomial_text(const Ring& ring, const Exponents& e) {
    std::string s;
    for (int i = 0; i < ring.variable_count(); ++i) {
        if (e[i] == 0) continue;
        if (!s.empty()) s += '*';
        s += var_name(var_at(ring, i));
        if (e[i] > 1) s += '^' + std::to_string(e[i]);
    }
    return s;
}

inline std::string to_string(const Poly& p) {
    if (p.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [e, c] : p.terms()) {
        const std::string mono = monomial_text(p.ring(), e);
        Rational mag = abs(c);
        if (first) {
            if (c < 0) out += '-';
        } else {
            out += c < 0 ? " - " : " + ";
        }
        first = false;
        if (mono.empty()) {
            out += to_string(mag);
        } else {
            if (mag != 1) out += to_string(mag) + '*';
            out += mono;
        }
    }
    return out;
}

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

inline void parse_factor(const Ring& ring, std::string_view f, Exponents& e, Rational& c) {
    f = trim(f);
    if (f.empty()) throw StructuralError("empty factor in polynomial text");
    if (std::isdigit(static_cast<unsigned char>(f.front()))) {
        c *= parse_rational(f);
        return;
    }
    std::size_t i = 0;
    while (i < f.size() && std::isalpha(static_cast<unsigned char>(f[i]))) ++i;
    const std::string_view name = f.substr(0, i);
    VarKind kind;
    if (name == "x") kind = VarKind::x;
    else if (name == "xi") kind = VarKind::xi;
    else if (name == "y") kind = VarKind::y;
    else if (name == "eta") kind = VarKind::eta;
    else throw StructuralError("unknown variable '" + std::string(f) + "'");
    std::size_t j = i;
    while (j < f.size() && std::isdigit(static_cast<unsigned char>(f[j]))) ++j;
    if (j == i) throw StructuralError("variable without index in '" + std::string(f) + "'");
    const int index = std::stoi(std::string(f.substr(i, j - i))) - 1;
    int power = 1;
    if (j < f.size()) {
        if (f[j] != '^') throw StructuralError("unexpected character in '" + std::string(f) + "'");
        power = std::stoi(std::string(f.substr(j + 1)));
        if (power < 0) throw StructuralError("negative exponent");
    }
    const int s = slot(ring, Var{kind, index});
    if (e[s] + power > 255) throw ResourceError("exponent overflow");
    e[s] = static_cast<std::uint8_t>(e[s] + power);
}

}  // namespace detail

/// Inverse of to_string(Poly).
inline Poly parse_poly(const Ring& ring, std::string_view text) {
    text = detail::trim(text);
    if (text.empty()) throw StructuralError("empty polynomial text");
    Poly p(ring);
    std::size_t pos = 0;
    int sign = 1;
    if (text.front() == '-' || text.front() == '+') {
        sign = text.front() == '-' ? -1 : 1;
        pos = 1;
    }
    while (pos <= text.size()) {
        std::size_t next = text.find_first_of("+-", pos);
        const std::string_view term = text.substr(pos, next == std::string_view::npos ? next : next - pos);
        Exponents e{};
        Rational c = sign;
        std::size_t fpos = 0;
        while (true) {
            const std::size_t star = term.find('*', fpos);
            detail::parse_factor(ring, term.substr(fpos, star == std::string_view::npos ? star : star - fpos), e, c);
            if (star == std::string_view::npos) break;
            fpos = star + 1;
        }
        p.add_term(e, c);
        if (next == std::string_view::npos) break;
        sign = text[next] == '-' ? -1 : 1;
        pos = next + 1;
    }
    return p;
}

}  // namespace cohomolab
