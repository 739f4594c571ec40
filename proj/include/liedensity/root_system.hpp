#pragma once

// Classical root data (types A, B, C, D) in standard coordinates, the Weyl
// dimension polynomial in a chosen basis of the weight lattice, and the
// sublattices used for groups and for self-dual/orthogonal representations.
//
// Weights are stored doubled (2λ) so that spin weights of B and D are
// integral. Coroots are integral in standard coordinates, and the pairing
// <λ, α∨> = (2λ · α∨) / 2 is always an integer on the weight lattice.

#include "liedensity/ivpoly.hpp"
#include "liedensity/lattice_map.hpp"
#include "liedensity/numeric.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace liedensity {

enum class Family { GL, SL, SO_odd, SP, SO_even };

/// Uses the matrix-size convention: gl_n, sl_n, so_{2n+1}, sp_{2n}, so_{2n}.
struct AlgebraId {
    Family family = Family::GL;
    unsigned n = 1;

    /// Rank of the weight lattice.
    unsigned rank() const { return family == Family::SL ? n - 1 : n; }

    /// Size of the defining matrices.
    unsigned matrix_size() const {
        switch (family) {
            case Family::GL:
            case Family::SL: return n;
            case Family::SO_odd: return 2 * n + 1;
            case Family::SP:
            case Family::SO_even: return 2 * n;
        }
        return n;
    }

    /// "gl:3", "so:7", "sp:6", "so:8".
    std::string label() const {
        switch (family) {
            case Family::GL: return "gl:" + std::to_string(n);
            case Family::SL: return "sl:" + std::to_string(n);
            case Family::SO_odd:
            case Family::SO_even: return "so:" + std::to_string(matrix_size());
            case Family::SP: return "sp:" + std::to_string(matrix_size());
        }
        return "?";
    }

    /// Cartan type letter, "A" for both gl and sl.
    char cartan_letter() const {
        switch (family) {
            case Family::GL:
            case Family::SL: return 'A';
            case Family::SO_odd: return 'B';
            case Family::SP: return 'C';
            case Family::SO_even: return 'D';
        }
        return '?';
    }

    bool semisimple() const { return family != Family::GL; }

    friend bool operator==(const AlgebraId&, const AlgebraId&) = default;
};

inline AlgebraId gl(unsigned n) { return {Family::GL, n}; }
inline AlgebraId sl(unsigned n) { return {Family::SL, n}; }
inline AlgebraId so_odd(unsigned n) { return {Family::SO_odd, n}; }
inline AlgebraId sp(unsigned n) { return {Family::SP, n}; }
inline AlgebraId so_even(unsigned n) { return {Family::SO_even, n}; }

/// so_N by matrix size N (odd N >= 3, even N >= 6).
inline AlgebraId so(unsigned matrix_size) {
    if (matrix_size % 2 == 1) {
        if (matrix_size < 3) throw std::invalid_argument("so_N requires N >= 3");
        return so_odd((matrix_size - 1) / 2);
    }
    if (matrix_size < 6) throw std::invalid_argument("so_N for even N requires N >= 6 (so_2 and so_4 are excluded)");
    return so_even(matrix_size / 2);
}

/// x -> (signs[i] * x[perm[i]])_i
struct SignedPermutation {
    std::vector<std::size_t> perm;
    std::vector<int> signs;

    IntVector apply(std::span<const std::int64_t> x) const {
        IntVector y(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) y[i] = signs[i] * x[perm[i]];
        return y;
    }
};

enum class Parity { Even, Odd };

class RootDatum {
public:
    AlgebraId id;
    /// Number of standard coordinates.
    std::size_t dim = 0;
    /// Integer standard coordinates.
    std::vector<IntVector> positive_coroots;
    /// 2ρ in standard coordinates.
    IntVector rho_doubled;
    /// Sum of positive coroots.
    IntVector two_rho_check;
    SignedPermutation w0;
    /// Z^rank -> doubled standard coordinates; its image is the weight lattice.
    LatticeMap weight_basis;
    /// Standard coordinates are only defined modulo (1, ..., 1) (type sl).
    bool modulo_trace = false;

    std::size_t rank() const { return weight_basis.source_rank(); }

    /// <λ, α∨> for doubled λ.
    std::int64_t pairing(std::span<const std::int64_t> weight_doubled, std::span<const std::int64_t> coroot) const {
        std::int64_t s = 0;
        for (std::size_t i = 0; i < dim; ++i) s += weight_doubled[i] * coroot[i];
        if (s % 2 != 0) throw std::domain_error("RootDatum::pairing: weight is not in the weight lattice");
        return s / 2;
    }

    /// Canonical representative: for sl, shifted so the last coordinate is 0.
    IntVector normalize(std::span<const std::int64_t> weight_doubled) const {
        IntVector w(weight_doubled.begin(), weight_doubled.end());
        if (modulo_trace) {
            const auto last = w.back();
            for (auto& v : w) v -= last;
        }
        return w;
    }

    IntVector weight(std::span<const std::int64_t> coords) const { return weight_basis.apply(coords); }

    /// Coordinates in the weight basis, or nullopt when not a weight.
    std::optional<IntVector> coordinates_of(std::span<const std::int64_t> weight_doubled) const {
        return weight_basis.preimage(normalize(weight_doubled));
    }

    bool is_dominant(std::span<const std::int64_t> weight_doubled) const {
        const auto w = normalize(weight_doubled);
        const std::size_t d = w.size();
        for (std::size_t i = 0; i + 1 < d; ++i)
            if (w[i] < w[i + 1]) return false;
        if (id.family == Family::SO_even) {
            const auto last = w[d - 1] < 0 ? -w[d - 1] : w[d - 1];
            return d < 2 || w[d - 2] >= last;
        }
        return w[d - 1] >= 0;
    }

    bool is_self_dual(std::span<const std::int64_t> weight_doubled) const {
        auto image = w0.apply(weight_doubled);
        IntVector neg(weight_doubled.begin(), weight_doubled.end());
        for (auto& v : neg) v = -v;
        return normalize(image) == normalize(neg);
    }
};

namespace detail {

inline IntVector unit(std::size_t dim, std::size_t i, std::int64_t scale = 1) {
    IntVector v(dim, 0);
    v[i] = scale;
    return v;
}

inline IntVector combo(std::size_t dim, std::size_t i, int si, std::size_t j, int sj) {
    IntVector v(dim, 0);
    v[i] += si;
    v[j] += sj;
    return v;
}

/// Builds any classical datum, including so_4 which is excluded from the
/// public surface because it is not simple.
inline RootDatum build_classical(Family family, unsigned n) {
    RootDatum d;
    d.id = {family, n};
    d.dim = n;
    const std::size_t dim = n;

    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = i + 1; j < dim; ++j) d.positive_coroots.push_back(combo(dim, i, 1, j, -1));
    if (family == Family::SO_odd || family == Family::SP || family == Family::SO_even)
        for (std::size_t i = 0; i < dim; ++i)
            for (std::size_t j = i + 1; j < dim; ++j) d.positive_coroots.push_back(combo(dim, i, 1, j, 1));
    if (family == Family::SO_odd)
        for (std::size_t i = 0; i < dim; ++i) d.positive_coroots.push_back(unit(dim, i, 2));
    if (family == Family::SP)
        for (std::size_t i = 0; i < dim; ++i) d.positive_coroots.push_back(unit(dim, i, 1));

    d.rho_doubled.assign(dim, 0);
    for (std::size_t i = 0; i < dim; ++i) {
        const auto k = static_cast<std::int64_t>(dim - 1 - i);
        switch (family) {
            case Family::GL:
            case Family::SL:
            case Family::SO_even: d.rho_doubled[i] = 2 * k; break;
            case Family::SO_odd: d.rho_doubled[i] = 2 * k + 1; break;
            case Family::SP: d.rho_doubled[i] = 2 * k + 2; break;
        }
    }

    d.two_rho_check.assign(dim, 0);
    for (const auto& c : d.positive_coroots)
        for (std::size_t i = 0; i < dim; ++i) d.two_rho_check[i] += c[i];

    d.w0.perm.resize(dim);
    d.w0.signs.assign(dim, 1);
    for (std::size_t i = 0; i < dim; ++i) d.w0.perm[i] = i;
    switch (family) {
        case Family::GL:
        case Family::SL:
            for (std::size_t i = 0; i < dim; ++i) d.w0.perm[i] = dim - 1 - i;
            break;
        case Family::SO_odd:
        case Family::SP: d.w0.signs.assign(dim, -1); break;
        case Family::SO_even:
            d.w0.signs.assign(dim, -1);
            if (n % 2 == 1) d.w0.signs[dim - 1] = 1;
            break;
    }

    std::vector<IntVector> columns;
    switch (family) {
        case Family::GL:
        case Family::SP:
            for (std::size_t i = 0; i < dim; ++i) columns.push_back(unit(dim, i, 2));
            break;
        case Family::SL:
            d.modulo_trace = true;
            for (std::size_t i = 0; i + 1 < dim; ++i) columns.push_back(unit(dim, i, 2));
            break;
        case Family::SO_odd:
        case Family::SO_even:
            // e_1, ..., e_{n-1} and the spin vector (1/2, ..., 1/2).
            for (std::size_t i = 0; i + 1 < dim; ++i) columns.push_back(unit(dim, i, 2));
            columns.push_back(IntVector(dim, 1));
            break;
    }
    d.weight_basis = LatticeMap::from_columns(columns, dim);
    return d;
}

} // namespace detail

inline RootDatum build_root_datum(const AlgebraId& id) {
    switch (id.family) {
        case Family::GL:
        case Family::SO_odd:
        case Family::SP:
            if (id.n < 1) throw std::invalid_argument("build_root_datum: rank must be at least 1");
            break;
        case Family::SL:
            if (id.n < 2) throw std::invalid_argument("build_root_datum: sl_n requires n >= 2");
            break;
        case Family::SO_even:
            if (id.n < 3) throw std::invalid_argument("build_root_datum: so_2n requires n >= 3 (so_2, so_4 excluded)");
            break;
    }
    return detail::build_classical(id.family, id.n);
}

namespace detail {

inline FactoredPolynomial weyl_polynomial(const RootDatum& d, bool shifted) {
    const std::size_t k = d.rank();
    std::vector<IntVector> basis;
    for (std::size_t j = 0; j < k; ++j) basis.push_back(d.weight_basis.column(j));
    std::vector<LinearForm> forms;
    BigInt denominator = 1;
    for (const auto& coroot : d.positive_coroots) {
        LinearForm f{IntVector(k), 0};
        for (std::size_t j = 0; j < k; ++j) f.coefficients[j] = d.pairing(basis[j], coroot);
        const auto rho_pairing = d.pairing(d.rho_doubled, coroot);
        if (rho_pairing < 1) throw std::logic_error("weyl_polynomial: <rho, coroot> must be positive");
        f.constant = shifted ? 0 : rho_pairing;
        denominator *= rho_pairing;
        forms.push_back(std::move(f));
    }
    return FactoredPolynomial(k, std::move(forms), denominator);
}

} // namespace detail

/// λ -> prod <λ + ρ, α∨> / prod <ρ, α∨> in weight-basis coordinates; the
/// degree of the irreducible representation with highest weight λ.
inline FactoredPolynomial dimension_polynomial(const RootDatum& d) { return detail::weyl_polynomial(d, false); }

/// λ -> D(λ - ρ), i.e. prod <λ, α∨> / prod <ρ, α∨>.
inline FactoredPolynomial shifted_polynomial(const RootDatum& d) { return detail::weyl_polynomial(d, true); }

inline Parity orthogonal_parity(const RootDatum& d, std::span<const std::int64_t> weight_doubled) {
    return d.pairing(weight_doubled, d.two_rho_check) % 2 == 0 ? Parity::Even : Parity::Odd;
}

// ---------------------------------------------------------------------------
// Variants: sublattices of the weight lattice.

enum class GroupKind { SimplyConnected, SO, PGL };

struct GroupId {
    GroupKind kind = GroupKind::SimplyConnected;
    /// Matrix size for SO and PGL.
    unsigned n = 0;
    /// The algebra, for the simply connected case.
    std::optional<AlgebraId> algebra;

    AlgebraId lie_algebra() const {
        switch (kind) {
            case GroupKind::SO: return so(n);
            case GroupKind::PGL: return sl(n);
            case GroupKind::SimplyConnected:
                if (!algebra) throw std::invalid_argument("GroupId: simply connected group without algebra");
                return *algebra;
        }
        return *algebra;
    }

    /// |C^G|, the order of the kernel of the simply connected cover.
    std::uint64_t center_order() const {
        switch (kind) {
            case GroupKind::SO: return 2;
            case GroupKind::PGL: return n;
            case GroupKind::SimplyConnected: return 1;
        }
        return 1;
    }

    std::string label() const {
        switch (kind) {
            case GroupKind::SO: return "group:so:" + std::to_string(n);
            case GroupKind::PGL: return "group:pgl:" + std::to_string(n);
            case GroupKind::SimplyConnected: return "group:sc:" + lie_algebra().label();
        }
        return "?";
    }
};

enum class VariantKind { Algebra, Group, SelfDual, Orthogonal };

/// A sublattice of the weight lattice over which degrees are counted, given
/// by a map into weight-basis coordinates.
struct VariantSpec {
    VariantKind kind = VariantKind::Algebra;
    AlgebraId algebra;
    std::optional<GroupId> group;
    LatticeMap map;
    /// [Λ : image] for full-rank variants, [Λ_sd : Λ_orth] for orthogonal ones.
    std::uint64_t index = 1;

    std::string label() const {
        switch (kind) {
            case VariantKind::Algebra: return algebra.label();
            case VariantKind::Group: return group->label();
            case VariantKind::SelfDual: return "sd:" + algebra.label();
            case VariantKind::Orthogonal: return "orth:" + algebra.label();
        }
        return "?";
    }
};

inline VariantSpec algebra_variant(const AlgebraId& id) {
    const auto d = build_root_datum(id);
    return {VariantKind::Algebra, id, std::nullopt, LatticeMap::identity(d.rank()), 1};
}

/// Λ^G ⊆ Λ, with its index checked against |C^G|.
inline VariantSpec group_sublattice(const GroupId& g) {
    const AlgebraId id = g.lie_algebra();
    if (!id.semisimple()) throw std::invalid_argument("group_sublattice: unsupported group");
    const auto d = build_root_datum(id);
    const std::size_t k = d.rank();
    std::vector<IntVector> columns;
    switch (g.kind) {
        case GroupKind::SimplyConnected:
            for (std::size_t i = 0; i < k; ++i) columns.push_back(detail::unit(k, i));
            break;
        case GroupKind::SO:
            // Integer standard coordinates: the spin coordinate must be even.
            for (std::size_t i = 0; i + 1 < k; ++i) columns.push_back(detail::unit(k, i));
            columns.push_back(detail::unit(k, k - 1, 2));
            break;
        case GroupKind::PGL: {
            // Root lattice: coordinate sum divisible by n.
            if (g.n < 2) throw std::invalid_argument("group_sublattice: PGL_n requires n >= 2");
            columns.push_back(detail::unit(k, 0, static_cast<std::int64_t>(g.n)));
            for (std::size_t i = 1; i < k; ++i) {
                auto c = detail::unit(k, i);
                c[0] = -1;
                columns.push_back(c);
            }
            break;
        }
    }
    VariantSpec v{VariantKind::Group, id, g, LatticeMap::from_columns(columns, k), g.center_order()};
    if (v.map.index() != g.center_order())
        throw std::logic_error("group_sublattice: index differs from the order of the center");
    return v;
}

/// The map (x_1..x_k) -> (x_1, ..., x_k, [0,] -x_k, ..., -x_1) into sl_n, in
/// weight-basis coordinates. Its image is all self-dual weights for odd n and
/// an index-2 sublattice of them for even n.
inline LatticeMap sharp_map(unsigned n) {
    if (n < 2) throw std::invalid_argument("sharp_map: requires n >= 2");
    const std::size_t k = n / 2;
    std::vector<IntVector> columns;
    for (std::size_t i = 0; i < k; ++i) {
        IntVector v(n, 0);
        v[i] = 1;
        v[n - 1 - i] = -1;
        IntVector reduced(n - 1);
        for (std::size_t t = 0; t + 1 < n; ++t) reduced[t] = v[t] - v[n - 1];
        columns.push_back(reduced);
    }
    return LatticeMap::from_columns(columns, n - 1);
}

/// Λ_sd = {λ : w0 λ = -λ} as a map into weight-basis coordinates.
inline VariantSpec selfdual_embedding(const AlgebraId& id) {
    if (!id.semisimple()) throw std::invalid_argument("selfdual_embedding: unsupported algebra");
    const auto d = build_root_datum(id);
    const std::size_t k = d.rank();
    VariantSpec v{VariantKind::SelfDual, id, std::nullopt, LatticeMap::identity(k), 1};
    if (id.family == Family::SL) {
        const unsigned n = id.n;
        v.map = sharp_map(n);
        if (n % 2 == 0) {
            // Replace the last sharp column by the fundamental weight ω_{n/2},
            // which restores the missing coset.
            std::vector<IntVector> columns;
            for (std::size_t j = 0; j + 1 < v.map.source_rank(); ++j) columns.push_back(v.map.column(j));
            IntVector omega(n - 1, 0);
            for (std::size_t t = 0; t < n / 2; ++t) omega[t] = 1;
            columns.push_back(omega);
            v.map = LatticeMap::from_columns(columns, n - 1);
        }
    } else if (id.family == Family::SO_even && id.n % 2 == 1) {
        // Last standard coordinate zero: spin coordinate zero.
        std::vector<IntVector> columns;
        for (std::size_t i = 0; i + 1 < k; ++i) columns.push_back(detail::unit(k, i));
        v.map = LatticeMap::from_columns(columns, k);
    }
    return v;
}

/// Λ_orth ⊆ Λ_sd: self-dual weights with <λ, 2ρ∨> even.
inline VariantSpec orthogonal_sublattice(const AlgebraId& id) {
    auto v = selfdual_embedding(id);
    const auto d = build_root_datum(id);
    const std::size_t k = v.map.source_rank();
    std::vector<int> odd(k);
    std::optional<std::size_t> pivot;
    for (std::size_t j = 0; j < k; ++j) {
        const auto w = d.weight(v.map.column(j));
        odd[j] = orthogonal_parity(d, w) == Parity::Odd;
        if (odd[j] && !pivot) pivot = j;
    }
    std::vector<IntVector> columns;
    for (std::size_t j = 0; j < k; ++j) {
        auto c = detail::unit(k, j);
        if (pivot && j == *pivot) c[j] = 2;
        else if (pivot && odd[j]) c[*pivot] = 1;
        columns.push_back(c);
    }
    const auto inner = LatticeMap::from_columns(columns, k);
    v.kind = VariantKind::Orthogonal;
    v.map = v.map.compose(inner);
    v.index = pivot ? 2 : 1;
    return v;
}

} // namespace liedensity
