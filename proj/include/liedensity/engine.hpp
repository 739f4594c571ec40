#pragma once

// Exact d_m for a variant: certify a period per prime power q | m, count
// points of the period box where q does not divide the polynomial, and
// combine the prime powers.

#include "liedensity/cache.hpp"
#include "liedensity/density.hpp"
#include "liedensity/ivpoly.hpp"
#include "liedensity/numeric.hpp"
#include "liedensity/parallel.hpp"
#include "liedensity/root_system.hpp"

#include <chrono>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

namespace liedensity {

inline constexpr const char* kEngineVersion = "1";

struct EngineOptions {
    EnumerationOptions enumeration;
    /// Not owned; nullptr disables caching.
    DensityCache* cache = nullptr;
};

struct PrimePowerDensity {
    std::uint64_t q = 1;
    Rational density;
    std::uint64_t period = 1;
    std::uint64_t points = 0;
};

enum class CombinationRule { Trivial, Product };

struct ExactDensity {
    std::string variant;
    std::uint64_t m = 1;
    Rational value;
    std::vector<PrimePowerDensity> per_prime_power;
    CombinationRule rule = CombinationRule::Product;
    double seconds = 0;
    bool from_cache = false;

    std::uint64_t points() const {
        std::uint64_t total = 0;
        for (const auto& d : per_prime_power) total += d.points;
        return total;
    }
};

namespace detail {

/// Depth-first walk of {0..period-1}^k. A form is evaluated as soon as the
/// last coordinate it depends on is fixed; the subtree is pruned once the
/// accumulated p-adic valuation reaches the threshold, and counted in bulk
/// once no forms remain. Value is int64_t or BigInt.
template <typename Value>
class NondivisibleCounter {
public:
    NondivisibleCounter(const FactoredPolynomial& f, std::uint64_t p, unsigned threshold, std::uint64_t period)
        : k_(f.rank()), p_(p), threshold_(threshold), period_(static_cast<std::int64_t>(period)) {
        forms_by_level_.resize(k_);
        for (const auto& form : f.forms()) {
            std::size_t last = k_;
            for (std::size_t i = 0; i < k_; ++i)
                if (form.coefficients[i] != 0) last = i;
            if (last == k_) {
                base_valuation_ = base_valuation_ + valuation(form.constant, p_);
                continue;
            }
            forms_by_level_[last].push_back(forms_.size());
            forms_.push_back(form);
        }
        forms_remaining_after_.assign(k_, 0);
        std::size_t remaining = forms_.size();
        for (std::size_t i = 0; i < k_; ++i) {
            remaining -= forms_by_level_[i].size();
            forms_remaining_after_[i] = remaining;
        }
        bulk_.assign(k_ + 1, 1);
        for (std::size_t i = k_; i-- > 0;) bulk_[i] = bulk_[i + 1] * static_cast<std::uint64_t>(period);
    }

    /// Count with the first coordinate fixed to `first`.
    std::uint64_t count_slice(std::int64_t first) const {
        if (base_valuation_ >= Valuation(threshold_)) return 0;
        if (k_ == 0) return 1;
        std::vector<Value> partial(forms_.size());
        for (std::size_t t = 0; t < forms_.size(); ++t) partial[t] = Value(forms_[t].constant);
        const unsigned base = base_valuation_.value();
        return visit(0, first, base, partial);
    }

    std::uint64_t count_all() const {
        std::uint64_t total = 0;
        if (k_ == 0) return count_slice(0);
        for (std::int64_t x = 0; x < period_; ++x) total += count_slice(x);
        return total;
    }

private:
    std::uint64_t visit(std::size_t level, std::int64_t x, unsigned acc, std::vector<Value>& partial) const {
        // Add coordinate `level` = x into every form that involves it.
        for (std::size_t t = 0; t < forms_.size(); ++t)
            if (forms_[t].coefficients[level] != 0) partial[t] += Value(forms_[t].coefficients[level]) * Value(x);
        std::uint64_t result = 0;
        unsigned total = acc;
        bool divisible = false;
        for (auto t : forms_by_level_[level]) {
            const auto v = valuation(partial[t], p_);
            if (v.is_infinite() || total + v.value() >= threshold_) {
                divisible = true;
                break;
            }
            total += v.value();
        }
        if (!divisible) {
            if (forms_remaining_after_[level] == 0) {
                result = bulk_[level + 1];
            } else {
                for (std::int64_t y = 0; y < period_; ++y) result += visit(level + 1, y, total, partial);
            }
        }
        for (std::size_t t = 0; t < forms_.size(); ++t)
            if (forms_[t].coefficients[level] != 0) partial[t] -= Value(forms_[t].coefficients[level]) * Value(x);
        return result;
    }

    std::size_t k_;
    std::uint64_t p_;
    unsigned threshold_;
    std::int64_t period_;
    Valuation base_valuation_{0};
    std::vector<LinearForm> forms_;
    std::vector<std::vector<std::size_t>> forms_by_level_;
    std::vector<std::size_t> forms_remaining_after_;
    std::vector<std::uint64_t> bulk_;
};

/// True when every partial sum of every form stays within 62 bits on the box.
inline bool fits_machine_word(const FactoredPolynomial& f, std::uint64_t period) {
    const BigInt limit = BigInt(1) << 62;
    for (const auto& form : f.forms()) {
        BigInt bound = abs(BigInt(form.constant));
        for (auto c : form.coefficients) bound += abs(BigInt(c)) * (period - 1);
        if (bound >= limit) return false;
    }
    return true;
}

} // namespace detail

/// Number of x in {0, ..., period-1}^k with q not dividing f(x).
inline std::uint64_t count_nondivisible(const FactoredPolynomial& f, std::uint64_t period, PrimePower q,
                                        const EnumerationOptions& opts = {}) {
    if (period == 0) throw std::invalid_argument("count_nondivisible: period must be positive");
    const BigInt points = ipow(BigInt(period), static_cast<unsigned>(f.rank()));
    if (points > opts.budget_points) throw BudgetExceeded("count_nondivisible", points);
    const unsigned threshold = q.exponent + valuation(f.denominator(), q.prime).value();

    auto run = [&]<typename Value>(std::type_identity<Value>) {
        const detail::NondivisibleCounter<Value> counter(f, q.prime, threshold, period);
        if (f.rank() == 0) return counter.count_slice(0);
        return parallel_slice_sum(period, opts.resolved_workers(), [&](std::uint64_t first) {
            return counter.count_slice(static_cast<std::int64_t>(first));
        });
    };
    if (detail::fits_machine_word(f, period)) return run(std::type_identity<std::int64_t>{});
    return run(std::type_identity<BigInt>{});
}

/// The polynomial whose values on Z^k are the degrees counted by a variant.
/// For the full weight lattice this is the ρ-shifted polynomial (a
/// translate, which leaves the density unchanged); for sublattices it is the
/// dimension polynomial pulled back through the variant's map.
inline FactoredPolynomial variant_polynomial(const VariantSpec& v) {
    const auto datum = build_root_datum(v.algebra);
    if (v.kind == VariantKind::Algebra) return shifted_polynomial(datum);
    return dimension_polynomial(datum).pulled_back(v.map);
}

/// d_m of the set {x : m does not divide f(x)}, via 1 - prod(1 - d_q).
inline ExactDensity density_of_polynomial(const FactoredPolynomial& f, std::uint64_t m,
                                          const EnumerationOptions& opts = {}) {
    if (m == 0) throw std::invalid_argument("density: m must be positive");
    ExactDensity out;
    out.m = m;
    if (m == 1) {
        out.value = 0;
        out.rule = CombinationRule::Trivial;
        return out;
    }
    const auto factorization = factorize(m);
    Rational all_divide = 1;
    for (const auto& q : factorization.factors()) {
        const auto cert = period_prime_power(f, q);
        const auto count = count_nondivisible(f, cert.period, q, opts);
        const auto points = static_cast<std::uint64_t>(ipow(BigInt(cert.period), static_cast<unsigned>(f.rank())));
        PrimePowerDensity d{q.value(), make_rational(count, points), cert.period, points};
        all_divide *= 1 - d.density;
        out.per_prime_power.push_back(std::move(d));
    }
    out.value = 1 - all_divide;
    out.rule = CombinationRule::Product;
    return out;
}

/// Direct count over the composite period box, without the product rule.
/// Kept as an independent check of density_of_polynomial.
inline Rational density_direct_composite(const FactoredPolynomial& f, std::uint64_t m,
                                         const EnumerationOptions& opts = {}) {
    if (m == 1) return 0;
    const auto factorization = factorize(m);
    const auto period = period_composite(f, factorization);
    PeriodicSetSpec set{f.rank(),
                        [&](std::span<const std::int64_t> x) {
                            for (const auto& q : factorization.factors())
                                if (f.eval_valuation(x, q.prime) < Valuation(q.exponent)) return true;
                            return false;
                        },
                        period};
    return density_fundamental(set, opts);
}

inline ExactDensity density_for(const VariantSpec& v, std::uint64_t m, const EngineOptions& opts = {}) {
    const auto label = v.label();
    if (opts.cache)
        if (auto hit = opts.cache->lookup(label, m, kEngineVersion)) {
            ExactDensity out;
            out.variant = label;
            out.m = m;
            out.value = make_rational(hit->numerator, hit->denominator);
            out.from_cache = true;
            for (const auto& p : hit->periods) out.per_prime_power.push_back({p.q, make_rational(p.numerator, p.denominator), p.period, p.points});
            return out;
        }
    const auto start = std::chrono::steady_clock::now();
    auto out = density_of_polynomial(variant_polynomial(v), m, opts.enumeration);
    out.variant = label;
    out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (opts.cache) {
        CacheRecord rec{label, m, boost::multiprecision::numerator(out.value), boost::multiprecision::denominator(out.value), {}, out.points(), kEngineVersion};
        for (const auto& d : out.per_prime_power)
            rec.periods.push_back({d.q, d.period, d.points, boost::multiprecision::numerator(d.density), boost::multiprecision::denominator(d.density)});
        opts.cache->store(rec);
    }
    return out;
}

inline ExactDensity density_for(const AlgebraId& id, std::uint64_t m, const EngineOptions& opts = {}) {
    return density_for(algebra_variant(id), m, opts);
}

/// d_m(G) over Λ^G; checks d_m(G) <= |C^G| d_m(g).
inline ExactDensity density_group(const GroupId& g, std::uint64_t m, const EngineOptions& opts = {}) {
    const auto v = group_sublattice(g);
    auto out = density_for(v, m, opts);
    const auto algebra = density_for(v.algebra, m, opts);
    if (out.value > Rational(g.center_order()) * algebra.value)
        throw std::logic_error("density_group: group density exceeds |C^G| times the algebra density");
    return out;
}

inline ExactDensity density_selfdual(const AlgebraId& id, std::uint64_t m, const EngineOptions& opts = {}) {
    return density_for(selfdual_embedding(id), m, opts);
}

/// Checks d^orth <= 2 d^sd.
inline ExactDensity density_orthogonal(const AlgebraId& id, std::uint64_t m, const EngineOptions& opts = {}) {
    auto out = density_for(orthogonal_sublattice(id), m, opts);
    const auto sd = density_selfdual(id, m, opts);
    if (out.value > 2 * sd.value)
        throw std::logic_error("density_orthogonal: orthogonal density exceeds twice the self-dual density");
    return out;
}

} // namespace liedensity
