#pragma once

// Exact integer and rational primitives: factorization, p-adic valuation,
// polynomial binomials over negative arguments.

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdio>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace liedensity {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Thrown when an enumeration would exceed the configured point budget.
class BudgetExceeded : public std::runtime_error {
public:
    BudgetExceeded(const std::string& what, BigInt required)
        : std::runtime_error(what + " (requires " + required.str() + " points)"),
          required_(std::move(required)) {}

    const BigInt& required_points() const noexcept { return required_; }

private:
    BigInt required_;
};

inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (std::uint64_t d = 3; d <= n / d; d += 2)
        if (n % d == 0) return false;
    return true;
}

/// Integer power with overflow detection.
inline std::optional<std::uint64_t> checked_pow(std::uint64_t base, unsigned exp) {
    std::uint64_t result = 1;
    for (unsigned i = 0; i < exp; ++i) {
        if (base != 0 && result > std::numeric_limits<std::uint64_t>::max() / base)
            return std::nullopt;
        result *= base;
    }
    return result;
}

struct PrimePower {
    std::uint64_t prime = 2;
    unsigned exponent = 1;

    std::uint64_t value() const {
        auto v = checked_pow(prime, exponent);
        if (!v) throw std::overflow_error("prime power overflows 64 bits");
        return *v;
    }

    friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// m written as an increasing product of prime powers q_i = p_i^{s_i}.
class PrimePowerFactorization {
public:
    PrimePowerFactorization() = default;

    /// Validates the invariants; throws std::invalid_argument otherwise.
    PrimePowerFactorization(std::uint64_t m, std::vector<PrimePower> factors)
        : m_(m), factors_(std::move(factors)) {
        if (m_ == 0) throw std::invalid_argument("factorization of 0 is undefined");
        BigInt product = 1;
        std::uint64_t previous = 1;
        for (const auto& f : factors_) {
            if (!is_prime(f.prime) || f.exponent == 0 || f.prime <= previous)
                throw std::invalid_argument("malformed prime-power factorization");
            previous = f.prime;
            product *= boost::multiprecision::pow(BigInt(f.prime), f.exponent);
        }
        if (product != m_) throw std::invalid_argument("factors do not multiply to m");
    }

    std::uint64_t value() const noexcept { return m_; }
    const std::vector<PrimePower>& factors() const noexcept { return factors_; }
    /// Number of distinct prime divisors.
    std::size_t omega() const noexcept { return factors_.size(); }

    friend bool operator==(const PrimePowerFactorization&, const PrimePowerFactorization&) = default;

private:
    std::uint64_t m_ = 1;
    std::vector<PrimePower> factors_;
};

/// Trial division; m is expected to be small.
inline PrimePowerFactorization factorize(std::uint64_t m) {
    if (m == 0) throw std::invalid_argument("factorize: m must be positive");
    std::vector<PrimePower> factors;
    std::uint64_t rest = m;
    for (std::uint64_t p = 2; p <= rest / p; p += (p == 2 ? 1 : 2)) {
        unsigned e = 0;
        while (rest % p == 0) {
            rest /= p;
            ++e;
        }
        if (e > 0) factors.push_back({p, e});
    }
    if (rest > 1) factors.push_back({rest, 1});
    return PrimePowerFactorization(m, std::move(factors));
}

/// p-adic valuation, with a distinguished infinite value for zero.
class Valuation {
public:
    constexpr Valuation() = default;
    constexpr explicit Valuation(unsigned v) : finite_(true), value_(v) {}

    static constexpr Valuation infinite() { return Valuation{}; }

    constexpr bool is_infinite() const noexcept { return !finite_; }
    /// Only meaningful when finite.
    constexpr unsigned value() const {
        if (!finite_) throw std::logic_error("value() of infinite valuation");
        return value_;
    }

    constexpr bool operator==(const Valuation& o) const noexcept {
        return finite_ == o.finite_ && (!finite_ || value_ == o.value_);
    }
    constexpr std::strong_ordering operator<=>(const Valuation& o) const noexcept {
        if (!finite_ || !o.finite_) return o.finite_ <=> finite_;
        return value_ <=> o.value_;
    }

    constexpr Valuation operator+(const Valuation& o) const noexcept {
        if (!finite_ || !o.finite_) return infinite();
        return Valuation{value_ + o.value_};
    }

    std::string str() const { return finite_ ? std::to_string(value_) : "inf"; }

private:
    bool finite_ = false;
    unsigned value_ = 0;
};

inline Valuation valuation(std::int64_t x, std::uint64_t p) {
    if (x == 0) return Valuation::infinite();
    // Magnitude as unsigned so INT64_MIN is representable.
    std::uint64_t u = x < 0 ? std::uint64_t(0) - std::uint64_t(x) : std::uint64_t(x);
    if (p == 2) return Valuation(static_cast<unsigned>(__builtin_ctzll(u)));
    unsigned e = 0;
    while (u % p == 0) {
        u /= p;
        ++e;
    }
    return Valuation(e);
}

inline Valuation valuation(const BigInt& x, std::uint64_t p) {
    if (x == 0) return Valuation::infinite();
    BigInt u = boost::multiprecision::abs(x);
    if (p == 2) return Valuation(static_cast<unsigned>(boost::multiprecision::lsb(u)));
    unsigned e = 0;
    BigInt q, r;
    for (;;) {
        boost::multiprecision::divide_qr(u, BigInt(p), q, r);
        if (r != 0) break;
        u = q;
        ++e;
    }
    return Valuation(e);
}

/// Binomial coefficient as the polynomial x(x-1)...(x-k+1)/k!, defined for
/// every integer x including negatives.
inline BigInt binomial(const BigInt& x, unsigned k) {
    BigInt num = 1, den = 1;
    for (unsigned i = 0; i < k; ++i) {
        num *= x - i;
        den *= i + 1;
    }
    return num / den;
}

/// Checks C(n + p^{s+r}, k) == C(n, k) mod p^r with exact arithmetic.
/// Precondition: p prime, r >= 1, p^s <= k < p^{s+1}.
inline bool fray_congruence_holds(const BigInt& n, unsigned k, std::uint64_t p, unsigned r, unsigned s) {
    if (!is_prime(p)) throw std::invalid_argument("fray_congruence_holds: p must be prime");
    if (r == 0 || k == 0) throw std::invalid_argument("fray_congruence_holds: r and k must be positive");
    const BigInt ps = boost::multiprecision::pow(BigInt(p), s);
    if (!(ps <= k && k < ps * p))
        throw std::invalid_argument("fray_congruence_holds: requires p^s <= k < p^(s+1)");
    const BigInt shift = boost::multiprecision::pow(BigInt(p), s + r);
    const BigInt modulus = boost::multiprecision::pow(BigInt(p), r);
    const BigInt diff = binomial(n + shift, k) - binomial(n, k);
    return diff % modulus == 0;
}

inline BigInt ipow(const BigInt& base, unsigned exp) { return boost::multiprecision::pow(base, exp); }

inline Rational make_rational(const BigInt& num, const BigInt& den) {
    if (den == 0) throw std::domain_error("zero denominator");
    return Rational(num, den);
}

inline std::string to_string(const Rational& r) {
    const BigInt& num = boost::multiprecision::numerator(r);
    const BigInt& den = boost::multiprecision::denominator(r);
    return den == 1 ? num.str() : num.str() + "/" + den.str();
}

/// Six significant digits, e.g. "0.375000".
inline std::string to_decimal(const Rational& r) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%#.6g", r.convert_to<double>());
    return buf;
}

} // namespace liedensity
