#pragma once

// Closed-form density bounds and a comparator that checks exact densities
// against them. Exponentials are enclosed between rationals, so no check
// depends on floating-point rounding.

#include "liedensity/numeric.hpp"
#include "liedensity/root_system.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>

namespace liedensity {

struct RationalInterval {
    Rational lo;
    Rational hi;
};

/// [lo, hi] containing exp(x). For y = |x| the Taylor partial sum S_N is a
/// lower bound for exp(y), and the tail is at most y^{N+1}/(N+1)! / (1 - y/(N+2)).
inline RationalInterval exp_enclosure(const Rational& x, unsigned min_terms = 40) {
    const Rational y = abs(x);
    const double approx = y.convert_to<double>();
    const unsigned n = std::max<unsigned>(min_terms, static_cast<unsigned>(4 * approx) + 10);
    Rational term = 1, sum = 1;
    for (unsigned k = 1; k <= n; ++k) {
        term *= y / k;
        sum += term;
    }
    const Rational next = term * y / (n + 1);
    const Rational tail = next / (1 - y / (n + 2));
    if (x >= 0) return {sum, sum + tail};
    return {1 / (sum + tail), 1 / sum};
}

/// coefficient * exp(exponent), coefficient >= 0.
struct ExpBound {
    Rational coefficient;
    Rational exponent;

    RationalInterval enclosure() const {
        const auto e = exp_enclosure(exponent);
        return {coefficient * e.lo, coefficient * e.hi};
    }

    double approx() const {
        return coefficient.convert_to<double>() * std::exp(exponent.convert_to<double>());
    }

    /// "2*exp(-5/16)"
    std::string str() const {
        std::ostringstream os;
        if (coefficient == 0) return "0";
        if (coefficient != 1) os << to_string(coefficient) << "*";
        os << "exp(" << to_string(exponent) << ")";
        return os.str();
    }

    friend bool operator==(const ExpBound&, const ExpBound&) = default;
};

enum class Verdict { Holds, Violated, Undecided };

/// Whether value <= bound, decided with certified arithmetic. `strict`
/// reports value < bound when Holds.
struct UpperCheck {
    Verdict verdict = Verdict::Undecided;
    bool strict = false;
};

inline UpperCheck check_upper(const Rational& value, const ExpBound& bound) {
    const auto e = bound.enclosure();
    if (value <= e.lo) return {Verdict::Holds, value < e.lo};
    if (value > e.hi) return {Verdict::Violated, false};
    return {Verdict::Undecided, false};
}

inline Rational factorial(unsigned n) {
    BigInt f = 1;
    for (unsigned i = 2; i <= n; ++i) f *= i;
    return Rational(f);
}

namespace detail {

inline Rational omega_of(std::uint64_t m) { return Rational(factorize(m).omega()); }

inline Rational gl_lower(unsigned n, std::uint64_t m) {
    return factorial(n) / Rational(ipow(BigInt(m) * n, n));
}

/// omega(m) exp(-n / (divisor * m)).
inline ExpBound exp_bound(std::uint64_t m, unsigned n, unsigned divisor, Rational scale = 1) {
    return {scale * omega_of(m), -Rational(n) / Rational(BigInt(divisor) * m)};
}

} // namespace detail

struct GlBounds {
    Rational lower;
    /// Absent for n = 1, where the Vandermonde estimate needs n >= 2.
    std::optional<ExpBound> upper;
};

/// n!/(mn)^n <= d_m(gl_n) <= omega(m) exp(-n/4m).
inline GlBounds bound_gl(unsigned n, std::uint64_t m) {
    if (n < 1 || m < 2) throw std::invalid_argument("bound_gl: requires n >= 1 and m >= 2");
    GlBounds b{detail::gl_lower(n, m), std::nullopt};
    if (n >= 2) b.upper = detail::exp_bound(m, n, 4);
    return b;
}

/// omega(m) exp(-n/8m) for types B_n, C_n, D_n.
inline ExpBound bound_classical(Family family, unsigned n, std::uint64_t m) {
    if (family != Family::SO_odd && family != Family::SP && family != Family::SO_even)
        throw std::invalid_argument("bound_classical: family must be B, C or D");
    if (n < 2 || m < 1) throw std::invalid_argument("bound_classical: requires n >= 2 and m >= 1");
    return detail::exp_bound(m, n, 8);
}

/// Self-dual bounds for sl_n (omega exp(-n/36m)) and so_2n with n odd
/// (omega exp(-n/16m)); the orthogonal versions are doubled.
inline ExpBound bound_selfdual(const AlgebraId& id, std::uint64_t m, bool orthogonal = false) {
    if (m < 1) throw std::invalid_argument("bound_selfdual: m must be positive");
    const Rational scale = orthogonal ? 2 : 1;
    if (id.family == Family::SL && id.n >= 2) return detail::exp_bound(m, id.n, 36, scale);
    if (id.family == Family::SO_even && id.n % 2 == 1 && id.n >= 3) return detail::exp_bound(m, id.n, 16, scale);
    throw std::invalid_argument("bound_selfdual: unsupported algebra " + id.label());
}

/// Upper bound for d_m of an algebra, where one applies.
inline std::optional<ExpBound> bound_algebra_upper(const AlgebraId& id, std::uint64_t m) {
    switch (id.family) {
        case Family::GL:
        case Family::SL:
            if (id.n < 2) return std::nullopt;
            return detail::exp_bound(m, id.n, 4);
        default:
            if (id.n < 2) return std::nullopt;
            return bound_classical(id.family, id.n, m);
    }
}

/// SO_n: 2 omega exp(-n/8m); PGL_n: n omega exp(-n/4m); simply connected:
/// the algebra bound. n is the matrix size.
inline std::optional<ExpBound> bound_group(const GroupId& g, std::uint64_t m) {
    switch (g.kind) {
        case GroupKind::SO: return detail::exp_bound(m, g.n, 8, 2);
        case GroupKind::PGL: return detail::exp_bound(m, g.n, 4, Rational(g.n));
        case GroupKind::SimplyConnected: return bound_algebra_upper(g.lie_algebra(), m);
    }
    return std::nullopt;
}

struct VandermondeTail {
    /// (period)_n / period^n.
    Rational exact;
    /// exp(-n^2 / (4 period)).
    ExpBound bound;
};

inline VandermondeTail vandermonde_tail(std::uint64_t period, unsigned n) {
    if (n < 2 || period < 1) throw std::invalid_argument("vandermonde_tail: requires n >= 2 and period >= 1");
    Rational exact = 1;
    for (unsigned i = 0; i < n; ++i) exact *= Rational(BigInt(period) - i, BigInt(period));
    if (exact < 0) exact = 0;
    VandermondeTail t{exact, {1, -Rational(BigInt(n) * n, BigInt(4) * period)}};
    if (check_upper(t.exact, t.bound).verdict != Verdict::Holds)
        throw std::logic_error("vandermonde_tail: falling-factorial ratio exceeds its bound");
    return t;
}

struct BoundReport {
    std::string variant;
    std::uint64_t m = 1;
    std::optional<Rational> lower;
    std::optional<ExpBound> upper;
    std::optional<Rational> exact;
    bool satisfied = true;
    /// Every applicable comparison is strict.
    bool strict = true;
    /// m = 1: every degree is divisible, bounds carry no information.
    bool vacuous = false;
};

/// Collects the applicable bounds for a variant and compares them with an
/// exact density, if one is supplied.
inline BoundReport bound_report(const VariantSpec& v, std::uint64_t m, std::optional<Rational> exact = std::nullopt) {
    if (m < 1) throw std::invalid_argument("bound_report: m must be positive");
    BoundReport r;
    r.variant = v.label();
    r.m = m;
    r.exact = exact;
    r.vacuous = (m == 1);
    const AlgebraId& id = v.algebra;
    const bool type_a = id.family == Family::GL || id.family == Family::SL;
    const bool d_odd = id.family == Family::SO_even && id.n % 2 == 1;

    switch (v.kind) {
        case VariantKind::Algebra:
            if (type_a && m >= 2) r.lower = detail::gl_lower(id.n, m);
            r.upper = bound_algebra_upper(id, m);
            break;
        case VariantKind::Group: r.upper = bound_group(*v.group, m); break;
        case VariantKind::SelfDual:
            if (type_a || d_odd) r.upper = bound_selfdual(id, m);
            else r.upper = bound_algebra_upper(id, m);
            break;
        case VariantKind::Orthogonal:
            if (type_a || d_odd) r.upper = bound_selfdual(id, m, true);
            else if (auto b = bound_algebra_upper(id, m)) r.upper = ExpBound{2 * b->coefficient, b->exponent};
            break;
    }

    if (exact) {
        if (r.lower) {
            r.satisfied = r.satisfied && (*r.lower <= *exact);
            r.strict = r.strict && (*r.lower < *exact);
        }
        if (r.upper) {
            const auto c = check_upper(*exact, *r.upper);
            r.satisfied = r.satisfied && c.verdict == Verdict::Holds;
            r.strict = r.strict && c.strict;
        }
    }
    return r;
}

} // namespace liedensity
