#pragma once

// Densities of subsets of Z^k: exact fundamental-domain counts for periodic
// sets, and ball-enumeration estimates under sup-type norms, which serve as
// an independent check of the exact values.

#include "liedensity/lattice_map.hpp"
#include "liedensity/numeric.hpp"
#include "liedensity/parallel.hpp"

#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace liedensity {

using Predicate = std::function<bool(std::span<const std::int64_t>)>;

/// A subset of Z^rank invariant under translation by period * Z^rank.
struct PeriodicSetSpec {
    std::size_t rank = 0;
    Predicate contains;
    std::uint64_t period = 1;
};

namespace detail {

inline BigInt box_points(std::uint64_t side, std::size_t rank) { return ipow(BigInt(side), static_cast<unsigned>(rank)); }

inline void check_budget(const BigInt& points, const EnumerationOptions& opts, const char* what) {
    if (points > opts.budget_points) throw BudgetExceeded(what, points);
}

/// Visits every x with lo[i] <= x[i] <= hi[i] for i >= 1, x[0] fixed.
template <typename Visit>
void for_each_in_box(std::vector<std::int64_t>& x, std::span<const std::int64_t> lo, std::span<const std::int64_t> hi,
                     Visit&& visit) {
    const std::size_t k = x.size();
    for (std::size_t i = 1; i < k; ++i) {
        if (lo[i] > hi[i]) return;
        x[i] = lo[i];
    }
    for (;;) {
        visit(std::span<const std::int64_t>(x));
        std::size_t i = k;
        while (i > 1) {
            --i;
            if (x[i] < hi[i]) {
                ++x[i];
                break;
            }
            x[i] = lo[i];
            if (i == 1) return;
        }
        if (k <= 1) return;
    }
}

} // namespace detail

/// |F ∩ A| / |F| for the box F = {0, ..., period-1}^rank.
inline Rational density_fundamental(const PeriodicSetSpec& set, const EnumerationOptions& opts = {}) {
    if (set.period == 0) throw std::invalid_argument("density_fundamental: period must be positive");
    const BigInt total = detail::box_points(set.period, set.rank);
    detail::check_budget(total, opts, "density_fundamental");
    if (set.rank == 0) return set.contains({}) ? Rational(1) : Rational(0);

    const std::int64_t top = static_cast<std::int64_t>(set.period) - 1;
    const std::vector<std::int64_t> lo(set.rank, 0), hi(set.rank, top);
    const auto members = parallel_slice_sum(set.period, opts.resolved_workers(), [&](std::uint64_t first) {
        std::vector<std::int64_t> x(set.rank, 0);
        x[0] = static_cast<std::int64_t>(first);
        std::uint64_t count = 0;
        detail::for_each_in_box(x, lo, hi, [&](std::span<const std::int64_t> v) { count += set.contains(v); });
        return count;
    });
    return make_rational(members, total);
}

/// The sup norm, optionally precomposed with an invertible integer matrix:
/// N(v) = max_i |(T v)_i|.
class Norm {
public:
    static Norm sup(std::size_t rank) { return Norm(identity_matrix(rank)); }

    static Norm sheared(IntMatrix transform) {
        if (!rational_inverse(transform)) throw std::invalid_argument("Norm: transform is singular");
        return Norm(std::move(transform));
    }

    std::size_t rank() const noexcept { return transform_.size(); }
    const IntMatrix& transform() const noexcept { return transform_; }

    std::int64_t operator()(std::span<const std::int64_t> v) const {
        std::int64_t best = 0;
        for (const auto& row : transform_) {
            std::int64_t s = 0;
            for (std::size_t j = 0; j < row.size(); ++j) s += row[j] * v[j];
            best = std::max(best, s < 0 ? -s : s);
        }
        return best;
    }

    double operator()(std::span<const double> v) const {
        double best = 0;
        for (const auto& row : transform_) {
            double s = 0;
            for (std::size_t j = 0; j < row.size(); ++j) s += double(row[j]) * v[j];
            best = std::max(best, std::abs(s));
        }
        return best;
    }

    /// Half-widths h with {N(v) < r} inside the box |v_i| <= h_i.
    std::vector<std::int64_t> bounding_box(std::int64_t radius) const {
        const auto inv = *rational_inverse(transform_);
        std::vector<std::int64_t> h(rank());
        for (std::size_t i = 0; i < rank(); ++i) {
            Rational s = 0;
            for (const auto& e : inv[i]) s += abs(e);
            const Rational bound = s * radius;
            h[i] = static_cast<std::int64_t>(boost::multiprecision::numerator(bound) /
                                             boost::multiprecision::denominator(bound));
        }
        return h;
    }

    /// Integer inverse of the transform when it is unimodular.
    std::optional<IntMatrix> unimodular_inverse() const {
        const auto inv = *rational_inverse(transform_);
        IntMatrix out(rank(), IntVector(rank()));
        for (std::size_t i = 0; i < rank(); ++i)
            for (std::size_t j = 0; j < rank(); ++j) {
                if (boost::multiprecision::denominator(inv[i][j]) != 1) return std::nullopt;
                out[i][j] = static_cast<std::int64_t>(boost::multiprecision::numerator(inv[i][j]));
            }
        return out;
    }

private:
    explicit Norm(IntMatrix t) : transform_(std::move(t)) {}
    IntMatrix transform_;
};

struct EmpiricalDensity {
    Rational value;
    std::uint64_t members = 0;
    std::uint64_t total = 0;
    std::int64_t radius = 0;

    double as_double() const { return value.convert_to<double>(); }
};

/// #{a : restrict(a), contains(a), N(a) < r} / #{v : restrict(v), N(v) < r},
/// with v ranging over the source lattice of the map and predicates applied
/// to map(v).
inline EmpiricalDensity density_empirical_restricted(const Predicate& contains, const Predicate& restrict_to,
                                                     const LatticeMap& lattice, const Norm& norm, std::int64_t radius,
                                                     const EnumerationOptions& opts = {}) {
    if (radius <= 0) throw std::invalid_argument("density_empirical: radius must be positive");
    const std::size_t k = lattice.source_rank();
    if (norm.rank() != k) throw std::invalid_argument("density_empirical: norm rank differs from lattice rank");
    if (k == 0) throw std::invalid_argument("density_empirical: rank 0 lattice");

    // A unimodular transform is a bijection of Z^k, so the ball is the
    // image of the cube |w_i| < r; otherwise filter a bounding box.
    const auto inverse = norm.unimodular_inverse();
    std::vector<std::int64_t> half;
    if (inverse) half.assign(k, radius - 1);
    else half = norm.bounding_box(radius);
    BigInt points = 1;
    for (auto h : half) points *= 2 * h + 1;
    detail::check_budget(points, opts, "density_empirical");

    std::vector<std::int64_t> lo(k), hi(k);
    for (std::size_t i = 0; i < k; ++i) {
        lo[i] = -half[i];
        hi[i] = half[i];
    }
    const bool identity_lattice = lattice.is_square() && lattice == LatticeMap::identity(k);
    struct Counts {
        std::uint64_t members = 0, total = 0;
    };
    std::vector<Counts> slices(static_cast<std::size_t>(2 * half[0] + 1));
    parallel_slice_sum(slices.size(), opts.resolved_workers(), [&](std::uint64_t s) {
        std::vector<std::int64_t> x(k, 0), v(k, 0), image;
        x[0] = lo[0] + static_cast<std::int64_t>(s);
        Counts c;
        detail::for_each_in_box(x, lo, hi, [&](std::span<const std::int64_t> w) {
            std::span<const std::int64_t> point = w;
            if (inverse) {
                for (std::size_t i = 0; i < k; ++i) {
                    v[i] = 0;
                    for (std::size_t j = 0; j < k; ++j) v[i] += (*inverse)[i][j] * w[j];
                }
                point = v;
            } else if (norm(w) >= radius) {
                return;
            }
            std::span<const std::int64_t> target = point;
            if (!identity_lattice) {
                image = lattice.apply(point);
                target = image;
            }
            if (restrict_to && !restrict_to(target)) return;
            ++c.total;
            if (contains(target)) ++c.members;
        });
        slices[s] = c;
        return std::uint64_t{0};
    });
    EmpiricalDensity out;
    out.radius = radius;
    for (const auto& c : slices) {
        out.members += c.members;
        out.total += c.total;
    }
    if (out.total == 0) throw std::domain_error("density_empirical: ball contains no lattice points");
    out.value = make_rational(out.members, out.total);
    return out;
}

inline EmpiricalDensity density_empirical(const Predicate& contains, const LatticeMap& lattice, const Norm& norm,
                                          std::int64_t radius, const EnumerationOptions& opts = {}) {
    return density_empirical_restricted(contains, nullptr, lattice, norm, radius, opts);
}

inline EmpiricalDensity density_empirical_cone(const Predicate& contains, const Predicate& dominant,
                                               const LatticeMap& lattice, const Norm& norm, std::int64_t radius,
                                               const EnumerationOptions& opts = {}) {
    if (!dominant) throw std::invalid_argument("density_empirical_cone: dominance predicate required");
    return density_empirical_restricted(contains, dominant, lattice, norm, radius, opts);
}

/// Exact density of A ∩ L' inside L' together with the ambient density of A in L.
struct RestrictedDensity {
    Rational restricted;
    Rational ambient;
    /// [L : L'] when L' has full rank and the map is linear.
    std::optional<BigInt> index;
};

/// Pulls the predicate back through the map and reuses the same period:
/// the map has an integer matrix, so period translations on the source land
/// on period translations of the target. When L' is a full-rank sublattice,
/// d(A ∩ L' | L') <= [L : L'] d(A | L) is checked and a violation throws
/// std::logic_error.
inline RestrictedDensity density_restricted(const PeriodicSetSpec& set, const LatticeMap& sublattice,
                                            const EnumerationOptions& opts = {}) {
    if (sublattice.target_dim() != set.rank)
        throw std::invalid_argument("density_restricted: sublattice target is not the set's rank");
    PeriodicSetSpec pulled{sublattice.source_rank(),
                           [&](std::span<const std::int64_t> x) { return set.contains(sublattice.apply(x)); },
                           set.period};
    RestrictedDensity out;
    out.restricted = density_fundamental(pulled, opts);
    out.ambient = density_fundamental(set, opts);
    if (sublattice.is_square() && sublattice.is_linear()) {
        out.index = sublattice.index();
        if (out.restricted > Rational(*out.index) * out.ambient)
            throw std::logic_error("density_restricted: sublattice density exceeds index times ambient density");
    }
    return out;
}

/// Membership in the image of a square linear map, as a periodic set whose
/// period is the last invariant factor.
inline PeriodicSetSpec sublattice_membership(const LatticeMap& sublattice) {
    if (!sublattice.is_square()) throw std::invalid_argument("sublattice_membership: map is not full rank");
    const auto snf = smith_normal_form(sublattice.matrix());
    return PeriodicSetSpec{sublattice.target_dim(),
                           [sublattice](std::span<const std::int64_t> y) { return sublattice.preimage(y).has_value(); },
                           static_cast<std::uint64_t>(snf.invariant_factors.back())};
}

} // namespace liedensity
