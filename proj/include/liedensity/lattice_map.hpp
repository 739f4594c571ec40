#pragma once

// Integer matrices, injective affine lattice maps, and Smith normal form.

#include "liedensity/numeric.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace liedensity {

using IntVector = std::vector<std::int64_t>;
/// Row-major; every row has the same length.
using IntMatrix = std::vector<IntVector>;

inline IntMatrix identity_matrix(std::size_t n) {
    IntMatrix m(n, IntVector(n, 0));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

/// Square matrix over the rationals, inverted by Gauss-Jordan.
/// Returns nullopt when singular.
inline std::optional<std::vector<std::vector<Rational>>> rational_inverse(const IntMatrix& a) {
    const std::size_t n = a.size();
    std::vector<std::vector<Rational>> m(n, std::vector<Rational>(2 * n));
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i].size() != n) throw std::invalid_argument("rational_inverse: matrix not square");
        for (std::size_t j = 0; j < n; ++j) m[i][j] = a[i][j];
        m[i][n + i] = 1;
    }
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && m[pivot][col] == 0) ++pivot;
        if (pivot == n) return std::nullopt;
        std::swap(m[pivot], m[col]);
        const Rational inv = 1 / m[col][col];
        for (auto& v : m[col]) v *= inv;
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || m[r][col] == 0) continue;
            const Rational factor = m[r][col];
            for (std::size_t j = 0; j < 2 * n; ++j) m[r][j] -= factor * m[col][j];
        }
    }
    std::vector<std::vector<Rational>> inv(n, std::vector<Rational>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv[i][j] = m[i][n + j];
    return inv;
}

/// Smith normal form data of a nonsingular square integer matrix.
struct SmithNormalForm {
    /// a_1 | a_2 | ... | a_n, all positive.
    std::vector<BigInt> invariant_factors;

    BigInt index() const {
        BigInt prod = 1;
        for (const auto& a : invariant_factors) prod *= a;
        return prod;
    }
};

/// Diagonalizes by unimodular row and column operations. Throws
/// std::invalid_argument when the matrix is singular or not square.
inline SmithNormalForm smith_normal_form(const IntMatrix& input) {
    const std::size_t n = input.size();
    std::vector<std::vector<BigInt>> a(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (input[i].size() != n) throw std::invalid_argument("smith_normal_form: matrix not square");
        a[i].assign(input[i].begin(), input[i].end());
    }

    for (std::size_t t = 0; t < n; ++t) {
        for (;;) {
            // Move the smallest nonzero entry of the trailing block to (t, t).
            std::optional<std::pair<std::size_t, std::size_t>> best;
            for (std::size_t i = t; i < n; ++i)
                for (std::size_t j = t; j < n; ++j)
                    if (a[i][j] != 0 &&
                        (!best || abs(a[i][j]) < abs(a[best->first][best->second])))
                        best = {i, j};
            if (!best) throw std::invalid_argument("smith_normal_form: matrix is singular");
            std::swap(a[t], a[best->first]);
            for (auto& row : a) std::swap(row[t], row[best->second]);

            bool clean = true;
            for (std::size_t i = t + 1; i < n; ++i) {
                const BigInt q = a[i][t] / a[t][t];
                if (q != 0)
                    for (std::size_t j = t; j < n; ++j) a[i][j] -= q * a[t][j];
                if (a[i][t] != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < n; ++j) {
                const BigInt q = a[t][j] / a[t][t];
                if (q != 0)
                    for (std::size_t i = t; i < n; ++i) a[i][j] -= q * a[i][t];
                if (a[t][j] != 0) clean = false;
            }
            if (!clean) continue;

            // Divisibility: fold any entry not divisible by the pivot into row t.
            std::optional<std::size_t> offender;
            for (std::size_t i = t + 1; i < n && !offender; ++i)
                for (std::size_t j = t + 1; j < n; ++j)
                    if (a[i][j] % a[t][t] != 0) {
                        offender = i;
                        break;
                    }
            if (!offender) break;
            for (std::size_t j = t; j < n; ++j) a[t][j] += a[*offender][j];
        }
    }

    SmithNormalForm snf;
    for (std::size_t i = 0; i < n; ++i) snf.invariant_factors.push_back(abs(a[i][i]));
    return snf;
}

/// [L : L'] for a full-rank sublattice whose basis vectors, written in a
/// basis of L, are the columns of the matrix.
inline BigInt sublattice_index(const IntMatrix& basis_columns) {
    return smith_normal_form(basis_columns).index();
}

/// Injective affine map x -> matrix * x + offset from Z^source into Z^target.
class LatticeMap {
public:
    LatticeMap() = default;

    LatticeMap(IntMatrix matrix, IntVector offset, std::size_t source_rank)
        : matrix_(std::move(matrix)), offset_(std::move(offset)), source_rank_(source_rank) {
        if (matrix_.size() != offset_.size())
            throw std::invalid_argument("LatticeMap: offset length differs from target dimension");
        for (const auto& row : matrix_)
            if (row.size() != source_rank_)
                throw std::invalid_argument("LatticeMap: row length differs from source rank");
        if (rank() != source_rank_) throw std::invalid_argument("LatticeMap: matrix is not injective");
    }

    static LatticeMap identity(std::size_t n) {
        return LatticeMap(identity_matrix(n), IntVector(n, 0), n);
    }

    /// Columns are the images of the standard basis vectors.
    static LatticeMap from_columns(const std::vector<IntVector>& columns, std::size_t target_dim) {
        IntMatrix m(target_dim, IntVector(columns.size(), 0));
        for (std::size_t j = 0; j < columns.size(); ++j) {
            if (columns[j].size() != target_dim)
                throw std::invalid_argument("LatticeMap::from_columns: column length mismatch");
            for (std::size_t i = 0; i < target_dim; ++i) m[i][j] = columns[j][i];
        }
        return LatticeMap(std::move(m), IntVector(target_dim, 0), columns.size());
    }

    std::size_t source_rank() const noexcept { return source_rank_; }
    std::size_t target_dim() const noexcept { return matrix_.size(); }
    const IntMatrix& matrix() const noexcept { return matrix_; }
    const IntVector& offset() const noexcept { return offset_; }
    bool is_linear() const {
        return std::all_of(offset_.begin(), offset_.end(), [](auto v) { return v == 0; });
    }
    bool is_square() const noexcept { return source_rank_ == target_dim(); }

    IntVector column(std::size_t j) const {
        IntVector c(target_dim());
        for (std::size_t i = 0; i < target_dim(); ++i) c[i] = matrix_[i][j];
        return c;
    }

    IntVector apply(std::span<const std::int64_t> x) const {
        if (x.size() != source_rank_) throw std::invalid_argument("LatticeMap::apply: wrong length");
        IntVector y = offset_;
        for (std::size_t i = 0; i < y.size(); ++i)
            for (std::size_t j = 0; j < source_rank_; ++j) y[i] += matrix_[i][j] * x[j];
        return y;
    }

    /// this ∘ inner.
    LatticeMap compose(const LatticeMap& inner) const {
        if (inner.target_dim() != source_rank_)
            throw std::invalid_argument("LatticeMap::compose: dimension mismatch");
        IntMatrix m(target_dim(), IntVector(inner.source_rank(), 0));
        for (std::size_t i = 0; i < target_dim(); ++i)
            for (std::size_t j = 0; j < inner.source_rank(); ++j)
                for (std::size_t t = 0; t < source_rank_; ++t) m[i][j] += matrix_[i][t] * inner.matrix_[t][j];
        return LatticeMap(std::move(m), apply(inner.offset_), inner.source_rank());
    }

    LatticeMap with_offset(IntVector offset) const {
        return LatticeMap(matrix_, std::move(offset), source_rank_);
    }

    /// The unique integer preimage of y, if y lies in the image.
    std::optional<IntVector> preimage(std::span<const std::int64_t> y) const {
        if (y.size() != target_dim()) throw std::invalid_argument("LatticeMap::preimage: wrong length");
        // Solve via the normal equations (M^T M) x = M^T (y - b); M^T M is
        // nonsingular because M is injective.
        const std::size_t k = source_rank_;
        IntMatrix gram(k, IntVector(k, 0));
        std::vector<Rational> rhs(k);
        for (std::size_t a = 0; a < k; ++a) {
            for (std::size_t b = 0; b < k; ++b)
                for (std::size_t i = 0; i < target_dim(); ++i) gram[a][b] += matrix_[i][a] * matrix_[i][b];
            for (std::size_t i = 0; i < target_dim(); ++i) rhs[a] += Rational(matrix_[i][a]) * (y[i] - offset_[i]);
        }
        const auto inv = rational_inverse(gram);
        IntVector x(k);
        for (std::size_t a = 0; a < k; ++a) {
            Rational v = 0;
            for (std::size_t b = 0; b < k; ++b) v += (*inv)[a][b] * rhs[b];
            if (boost::multiprecision::denominator(v) != 1) return std::nullopt;
            x[a] = static_cast<std::int64_t>(boost::multiprecision::numerator(v));
        }
        if (apply(x) != IntVector(y.begin(), y.end())) return std::nullopt;
        return x;
    }

    /// [Z^target : image] for a square linear map.
    BigInt index() const {
        if (!is_square()) throw std::invalid_argument("LatticeMap::index: map is not full rank in its target");
        return sublattice_index(matrix_);
    }

    friend bool operator==(const LatticeMap&, const LatticeMap&) = default;

private:
    std::size_t rank() const {
        std::vector<std::vector<Rational>> m(target_dim(), std::vector<Rational>(source_rank_));
        for (std::size_t i = 0; i < target_dim(); ++i)
            for (std::size_t j = 0; j < source_rank_; ++j) m[i][j] = matrix_[i][j];
        std::size_t r = 0;
        for (std::size_t col = 0; col < source_rank_ && r < target_dim(); ++col) {
            std::size_t pivot = r;
            while (pivot < target_dim() && m[pivot][col] == 0) ++pivot;
            if (pivot == target_dim()) continue;
            std::swap(m[pivot], m[r]);
            for (std::size_t i = r + 1; i < target_dim(); ++i) {
                if (m[i][col] == 0) continue;
                const Rational f = m[i][col] / m[r][col];
                for (std::size_t j = col; j < source_rank_; ++j) m[i][j] -= f * m[r][j];
            }
            ++r;
        }
        return r;
    }

    IntMatrix matrix_;
    IntVector offset_;
    std::size_t source_rank_ = 0;
};

} // namespace liedensity
