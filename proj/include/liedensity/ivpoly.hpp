#pragma once

// Integer-valued polynomials kept as products of integer affine forms over a
// positive denominator, with exact, valuation and mod-q evaluation and the
// prime-power period formula.

#include "liedensity/lattice_map.hpp"
#include "liedensity/numeric.hpp"

#include <cstdint>
#include <functional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace liedensity {

/// Raised when a product of forms is not divisible by the denominator, which
/// means the polynomial was not integer-valued.
class IntegralityError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

struct LinearForm {
    IntVector coefficients;
    std::int64_t constant = 0;

    std::size_t rank() const noexcept { return coefficients.size(); }

    /// Evaluates in 64 bits; returns false on overflow.
    bool try_eval(std::span<const std::int64_t> x, std::int64_t& out) const {
        std::int64_t acc = constant;
        for (std::size_t i = 0; i < coefficients.size(); ++i) {
            std::int64_t term;
            if (__builtin_mul_overflow(coefficients[i], x[i], &term)) return false;
            if (__builtin_add_overflow(acc, term, &acc)) return false;
        }
        out = acc;
        return true;
    }

    BigInt eval_big(std::span<const std::int64_t> x) const {
        BigInt acc = constant;
        for (std::size_t i = 0; i < coefficients.size(); ++i) acc += BigInt(coefficients[i]) * x[i];
        return acc;
    }

    bool is_constant() const {
        for (auto c : coefficients)
            if (c != 0) return false;
        return true;
    }

    friend bool operator==(const LinearForm&, const LinearForm&) = default;
};

class FactoredPolynomial {
public:
    FactoredPolynomial() = default;

    FactoredPolynomial(std::size_t rank, std::vector<LinearForm> forms, BigInt denominator = 1)
        : rank_(rank), forms_(std::move(forms)), denominator_(std::move(denominator)) {
        if (denominator_ <= 0) throw std::invalid_argument("FactoredPolynomial: denominator must be positive");
        for (const auto& f : forms_)
            if (f.rank() != rank_) throw std::invalid_argument("FactoredPolynomial: form has wrong rank");
    }

    std::size_t rank() const noexcept { return rank_; }
    const std::vector<LinearForm>& forms() const noexcept { return forms_; }
    const BigInt& denominator() const noexcept { return denominator_; }

    /// Degree in the i-th variable: the number of forms that involve it.
    unsigned degree_in(std::size_t i) const {
        unsigned d = 0;
        for (const auto& f : forms_)
            if (f.coefficients[i] != 0) ++d;
        return d;
    }

    /// max_i degree_in(i); 0 for a constant polynomial.
    unsigned deg_bullet() const {
        unsigned d = 0;
        for (std::size_t i = 0; i < rank_; ++i) d = std::max(d, degree_in(i));
        return d;
    }

    BigInt eval_exact(std::span<const std::int64_t> x) const {
        check_length(x);
        BigInt product = 1;
        for (const auto& f : forms_) product *= f.eval_big(x);
        BigInt q, r;
        boost::multiprecision::divide_qr(product, denominator_, q, r);
        if (r != 0) throw IntegralityError("FactoredPolynomial: value is not an integer");
        return q;
    }

    /// Sum of form valuations minus the denominator's; infinite when a form
    /// vanishes. Never forms the full product.
    Valuation eval_valuation(std::span<const std::int64_t> x, std::uint64_t p) const {
        check_length(x);
        unsigned total = 0;
        for (const auto& f : forms_) {
            std::int64_t v;
            const Valuation val = f.try_eval(x, v) ? valuation(v, p) : valuation(f.eval_big(x), p);
            if (val.is_infinite()) return val;
            total += val.value();
        }
        const unsigned den = valuation(denominator_, p).value();
        if (total < den) throw IntegralityError("FactoredPolynomial: negative valuation");
        return Valuation(total - den);
    }

    /// Value reduced into [0, modulus).
    std::uint64_t eval_mod(std::span<const std::int64_t> x, std::uint64_t modulus) const {
        BigInt r = eval_exact(x) % modulus;
        if (r < 0) r += modulus;
        return static_cast<std::uint64_t>(r);
    }

    /// The polynomial x -> f(map(x)) on the map's source lattice.
    FactoredPolynomial pulled_back(const LatticeMap& map) const {
        if (map.target_dim() != rank_) throw std::invalid_argument("pulled_back: map target is not this rank");
        std::vector<LinearForm> out;
        out.reserve(forms_.size());
        for (const auto& f : forms_) {
            LinearForm g{IntVector(map.source_rank(), 0), f.constant};
            for (std::size_t i = 0; i < rank_; ++i) {
                g.constant += f.coefficients[i] * map.offset()[i];
                for (std::size_t j = 0; j < map.source_rank(); ++j)
                    g.coefficients[j] += f.coefficients[i] * map.matrix()[i][j];
            }
            out.push_back(std::move(g));
        }
        return FactoredPolynomial(map.source_rank(), std::move(out), denominator_);
    }

    /// Stable textual identity of the factored representation.
    std::string fingerprint() const {
        std::ostringstream os;
        os << "k" << rank_ << "/d" << denominator_;
        for (const auto& f : forms_) {
            os << "|";
            for (auto c : f.coefficients) os << c << ",";
            os << "+" << f.constant;
        }
        const auto h = std::hash<std::string>{}(os.str());
        std::ostringstream hex;
        hex << std::hex << h;
        return hex.str();
    }

    friend bool operator==(const FactoredPolynomial&, const FactoredPolynomial&) = default;

private:
    void check_length(std::span<const std::int64_t> x) const {
        if (x.size() != rank_) throw std::invalid_argument("FactoredPolynomial: argument has wrong length");
    }

    std::size_t rank_ = 0;
    std::vector<LinearForm> forms_;
    BigInt denominator_ = 1;
};

struct PeriodCertificate {
    PrimePower modulus;
    std::uint64_t period = 1;
    std::string fingerprint;
    /// Set for constant polynomials, whose period is 1 by convention.
    bool degenerate = false;
};

/// floor(log_p(n)) for n >= 1.
inline unsigned floor_log(std::uint64_t n, std::uint64_t p) {
    unsigned e = 0;
    while (n >= p) {
        n /= p;
        ++e;
    }
    return e;
}

/// p^(floor(log_p deg) + s), the q-period of an integer-valued polynomial
/// with q = p^s.
inline PeriodCertificate period_prime_power(const FactoredPolynomial& f, PrimePower q) {
    PeriodCertificate cert{q, 1, f.fingerprint(), false};
    const unsigned deg = f.deg_bullet();
    if (deg == 0) {
        cert.degenerate = true;
        return cert;
    }
    const auto period = checked_pow(q.prime, floor_log(deg, q.prime) + q.exponent);
    if (!period) throw std::overflow_error("period_prime_power: period overflows 64 bits");
    cert.period = *period;
    return cert;
}

/// Product of the prime-power periods; an m-period because the q_i are coprime.
inline std::uint64_t period_composite(const FactoredPolynomial& f, const PrimePowerFactorization& m) {
    std::uint64_t period = 1;
    for (const auto& q : m.factors()) {
        const auto p = period_prime_power(f, q).period;
        if (__builtin_mul_overflow(period, p, &period))
            throw std::overflow_error("period_composite: period overflows 64 bits");
    }
    return period;
}

} // namespace liedensity
