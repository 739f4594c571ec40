#include "liedensity/root_system.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

using namespace liedensity;

namespace {

std::vector<AlgebraId> public_algebras(unsigned max_rank) {
    std::vector<AlgebraId> out;
    for (unsigned n = 1; n <= max_rank; ++n) out.push_back(gl(n));
    for (unsigned n = 2; n <= max_rank + 1; ++n) out.push_back(sl(n));
    for (unsigned n = 1; n <= max_rank; ++n) out.push_back(so_odd(n));
    for (unsigned n = 1; n <= max_rank; ++n) out.push_back(sp(n));
    for (unsigned n = 3; n <= max_rank; ++n) out.push_back(so_even(n));
    return out;
}

std::size_t expected_positive_roots(const AlgebraId& id) {
    const std::size_t n = id.n;
    switch (id.family) {
        case Family::GL:
        case Family::SL: return n * (n - 1) / 2;
        case Family::SO_odd:
        case Family::SP: return n * n;
        case Family::SO_even: return n * (n - 1);
    }
    return 0;
}

// Classical dimensions: gl_n n^2, sl_n n^2 - 1, B_n and C_n 2n^2 + n, D_n 2n^2 - n.
std::int64_t algebra_dimension(const AlgebraId& id) {
    const std::int64_t n = id.n;
    switch (id.family) {
        case Family::GL: return n * n;
        case Family::SL: return n * n - 1;
        case Family::SO_odd:
        case Family::SP: return 2 * n * n + n;
        case Family::SO_even: return 2 * n * n - n;
    }
    return 0;
}

BigInt degree(const RootDatum& d, const IntVector& doubled) {
    const auto c = d.coordinates_of(doubled);
    if (!c) throw std::logic_error("not a weight");
    return dimension_polynomial(d).eval_exact(*c);
}

} // namespace

TEST(AlgebraId, LabelsAndRanks) {
    EXPECT_EQ(gl(3).label(), "gl:3");
    EXPECT_EQ(so(7).label(), "so:7");
    EXPECT_EQ(so(8).label(), "so:8");
    EXPECT_EQ(sp(3).label(), "sp:6");
    EXPECT_EQ(sl(4).rank(), 3u);
    EXPECT_EQ(so_odd(2).matrix_size(), 5u);
    EXPECT_EQ(so(9).cartan_letter(), 'B');
    EXPECT_FALSE(gl(2).semisimple());
    EXPECT_THROW(so(4), std::invalid_argument);
    EXPECT_THROW(so(2), std::invalid_argument);
    EXPECT_THROW(so(1), std::invalid_argument);
    EXPECT_THROW(build_root_datum(so_even(2)), std::invalid_argument);
    EXPECT_THROW(build_root_datum(sl(1)), std::invalid_argument);
    EXPECT_THROW(build_root_datum(gl(0)), std::invalid_argument);
}

TEST(RootDatum, Examples) {
    const auto g2 = build_root_datum(gl(2));
    EXPECT_EQ(g2.positive_coroots.size(), 1u);
    EXPECT_EQ(g2.rho_doubled, (IntVector{2, 0}));
    EXPECT_EQ(build_root_datum(so(5)).positive_coroots.size(), 4u);
    const auto s2 = build_root_datum(sl(2));
    EXPECT_EQ(s2.rank(), 1u);
    EXPECT_EQ(s2.positive_coroots.size(), 1u);
}

TEST(RootDatum, Invariants) {
    for (const auto& id : public_algebras(6)) {
        const auto d = build_root_datum(id);
        SCOPED_TRACE(id.label());
        EXPECT_EQ(d.positive_coroots.size(), expected_positive_roots(id));
        IntVector sum(d.dim, 0);
        for (const auto& c : d.positive_coroots) {
            EXPECT_GE(d.pairing(d.rho_doubled, c), 1);
            for (std::size_t i = 0; i < d.dim; ++i) sum[i] += c[i];
            // Integral pairing with every basis weight.
            for (std::size_t j = 0; j < d.rank(); ++j) EXPECT_NO_THROW((void)d.pairing(d.weight_basis.column(j), c));
        }
        EXPECT_EQ(sum, d.two_rho_check);
        // w0 is an involution and sends rho to -rho (modulo the trace for sl).
        const auto twice = d.w0.apply(d.w0.apply(d.rho_doubled));
        EXPECT_EQ(twice, d.rho_doubled);
        EXPECT_TRUE(d.is_self_dual(IntVector(d.dim, 0)));
        auto neg = d.rho_doubled;
        for (auto& v : neg) v = -v;
        if (id.family == Family::GL) {
            // gl_n: w0 rho = -rho + (n-1)(1,...,1)
            const auto w = d.w0.apply(d.rho_doubled);
            for (std::size_t i = 0; i < d.dim; ++i) EXPECT_EQ(w[i], neg[i] + 2 * (static_cast<std::int64_t>(id.n) - 1));
        } else {
            EXPECT_EQ(d.normalize(d.w0.apply(d.rho_doubled)), d.normalize(neg));
        }
        // w0 maps positive coroots to negatives of positive coroots.
        for (const auto& c : d.positive_coroots) {
            auto image = d.w0.apply(c);
            for (auto& v : image) v = -v;
            bool found = false;
            for (const auto& other : d.positive_coroots) found = found || other == image;
            EXPECT_TRUE(found);
        }
    }
}

TEST(RootDatum, DominanceOfRho) {
    for (const auto& id : public_algebras(5)) {
        const auto d = build_root_datum(id);
        EXPECT_TRUE(d.is_dominant(d.rho_doubled)) << id.label();
        auto neg = d.rho_doubled;
        for (auto& v : neg) v = -v;
        if (d.dim > 1) EXPECT_FALSE(d.is_dominant(neg)) << id.label();
    }
}

TEST(DimensionPolynomial, Anchors) {
    for (const auto& id : public_algebras(6)) {
        const auto d = build_root_datum(id);
        SCOPED_TRACE(id.label());
        const std::int64_t n = id.n;
        EXPECT_EQ(degree(d, IntVector(d.dim, 0)), 1);
        IntVector e1(d.dim, 0);
        e1[0] = 2;
        EXPECT_EQ(degree(d, e1), static_cast<std::int64_t>(id.matrix_size()));

        IntVector adjoint(d.dim, 0);
        switch (id.family) {
            case Family::GL:
            case Family::SL:
                if (n == 1) continue;
                adjoint[0] = 2;
                adjoint[d.dim - 1] = -2;
                break;
            case Family::SO_odd:
                adjoint[0] = 2;
                if (n > 1) adjoint[1] = 2;
                break;
            case Family::SP: adjoint[0] = 4; break;
            case Family::SO_even:
                adjoint[0] = 2;
                adjoint[1] = 2;
                break;
        }
        const std::int64_t expected = algebra_dimension(id) - (id.family == Family::GL ? 1 : 0);
        EXPECT_EQ(degree(d, adjoint), expected);
        if (id.family == Family::GL) EXPECT_EQ(degree(d, adjoint) + degree(d, IntVector(d.dim, 0)), n * n);
    }
}

TEST(DimensionPolynomial, SpinAndSmallRepresentations) {
    const auto b2 = build_root_datum(so(5));
    EXPECT_EQ(degree(b2, IntVector{2, 0}), 5);
    EXPECT_EQ(degree(b2, IntVector{1, 1}), 4);  // spin
    const auto c2 = build_root_datum(sp(2));
    EXPECT_EQ(degree(c2, IntVector{2, 0}), 4);
    EXPECT_EQ(degree(c2, IntVector{2, 2}), 5);
    const auto d4 = build_root_datum(so(8));
    EXPECT_EQ(degree(d4, IntVector{1, 1, 1, 1}), 8);
    EXPECT_EQ(degree(d4, IntVector{1, 1, 1, -1}), 8);
    const auto b3 = build_root_datum(so(7));
    EXPECT_EQ(degree(b3, IntVector{1, 1, 1}), 8);
    // sl_3 symmetric square.
    EXPECT_EQ(degree(build_root_datum(sl(3)), IntVector{4, 0, 0}), 6);
}

TEST(DimensionPolynomial, IntegerValuedOnTheWeightLattice) {
    std::mt19937_64 rng(12);
    std::uniform_int_distribution<std::int64_t> c(-25, 25);
    for (const auto& id : public_algebras(5)) {
        const auto D = dimension_polynomial(build_root_datum(id));
        const auto f = shifted_polynomial(build_root_datum(id));
        for (int t = 0; t < 500; ++t) {
            IntVector x(D.rank());
            for (auto& v : x) v = c(rng);
            ASSERT_NO_THROW((void)D.eval_exact(x)) << id.label();
            ASSERT_NO_THROW((void)f.eval_exact(x)) << id.label();
        }
    }
}

TEST(ShiftedPolynomial, GlFormAndEvaluationAtRho) {
    for (unsigned n = 1; n <= 6; ++n) {
        const auto d = build_root_datum(gl(n));
        const auto f = shifted_polynomial(d);
        for (const auto& form : f.forms()) EXPECT_EQ(form.constant, 0);
        IntVector rho(n);
        for (unsigned i = 0; i < n; ++i) rho[i] = n - 1 - i;
        EXPECT_EQ(f.eval_exact(rho), 1);
        // f(λ) = D(λ - ρ)
        const auto D = dimension_polynomial(d);
        IntVector x{};
        for (unsigned i = 0; i < n; ++i) x.push_back(3 * i * i + 1);
        auto shifted = x;
        for (unsigned i = 0; i < n; ++i) shifted[i] -= rho[i];
        EXPECT_EQ(f.eval_exact(x), D.eval_exact(shifted));
    }
}

TEST(ShiftedPolynomial, VanishesOnCoordinateCollisions) {
    std::mt19937_64 rng(13);
    std::uniform_int_distribution<std::int64_t> c(-30, 30);
    for (const auto& id : public_algebras(6)) {
        const auto d = build_root_datum(id);
        if (d.dim < 2) continue;
        const auto f = shifted_polynomial(d);
        const bool half = id.family == Family::SO_odd || id.family == Family::SO_even;
        for (int t = 0; t < 200; ++t) {
            IntVector w(d.dim);
            const std::int64_t parity = half ? static_cast<std::int64_t>(rng() & 1) : 0;
            for (auto& v : w) v = 2 * c(rng) + parity;
            const std::size_t i = rng() % d.dim, j = (i + 1 + rng() % (d.dim - 1)) % d.dim;
            w[j] = w[i];
            const auto x = d.coordinates_of(w);
            ASSERT_TRUE(x.has_value());
            ASSERT_EQ(f.eval_exact(*x), 0) << id.label();
        }
    }
}

TEST(ShiftedPolynomial, DegreeInStandardCoordinatesForBCD) {
    // In standard coordinates each coordinate appears in 2n-1 (B, C) or 2n-2 (D) coroots.
    for (unsigned n = 2; n <= 6; ++n) {
        for (const auto& id : {so_odd(n), sp(n), so_even(n)}) {
            if (id.family == Family::SO_even && n < 3) continue;
            const auto d = build_root_datum(id);
            unsigned max_count = 0;
            for (std::size_t i = 0; i < d.dim; ++i) {
                unsigned count = 0;
                for (const auto& c : d.positive_coroots) count += c[i] != 0;
                max_count = std::max(max_count, count);
            }
            EXPECT_EQ(max_count, id.family == Family::SO_even ? 2 * n - 2 : 2 * n - 1) << id.label();
        }
    }
}

TEST(OrthogonalParity, Examples) {
    const auto s2 = build_root_datum(sl(2));
    EXPECT_EQ(orthogonal_parity(s2, IntVector{0, 0}), Parity::Even);
    for (std::int64_t k = 0; k < 10; ++k)
        EXPECT_EQ(orthogonal_parity(s2, s2.weight(IntVector{k})), k % 2 ? Parity::Odd : Parity::Even);
    const auto d3 = build_root_datum(so(6));
    const auto sd = selfdual_embedding(so(6));
    for (std::int64_t a = -3; a <= 3; ++a)
        for (std::int64_t b = -3; b <= 3; ++b)
            EXPECT_NO_THROW((void)orthogonal_parity(d3, d3.weight(sd.map.apply(IntVector{a, b}))));
}

TEST(GroupSublattice, Indices) {
    for (unsigned n = 2; n <= 7; ++n) {
        const auto v = group_sublattice({GroupKind::PGL, n, std::nullopt});
        EXPECT_EQ(v.map.index(), n);
        EXPECT_EQ(v.label(), "group:pgl:" + std::to_string(n));
    }
    for (unsigned n : {3u, 5u, 6u, 7u, 8u, 9u}) {
        const auto v = group_sublattice({GroupKind::SO, n, std::nullopt});
        EXPECT_EQ(v.map.index(), 2);
    }
    const auto sc = group_sublattice({GroupKind::SimplyConnected, 0, sp(3)});
    EXPECT_EQ(sc.map.index(), 1);
    EXPECT_EQ(sc.label(), "group:sc:sp:6");
    EXPECT_THROW(group_sublattice({GroupKind::SimplyConnected, 0, gl(3)}), std::invalid_argument);
}

TEST(GroupSublattice, PglIsTheRootLattice) {
    // Every image point has coordinate sum divisible by n in standard coordinates.
    for (unsigned n = 2; n <= 5; ++n) {
        const auto v = group_sublattice({GroupKind::PGL, n, std::nullopt});
        const auto d = build_root_datum(sl(n));
        for (std::size_t j = 0; j < v.map.source_rank(); ++j) {
            const auto w = d.normalize(d.weight(v.map.column(j)));
            std::int64_t sum = 0;
            for (auto c : w) sum += c / 2;
            EXPECT_EQ(sum % static_cast<std::int64_t>(n), 0);
        }
    }
}

TEST(GroupSublattice, SoExcludesSpinWeights) {
    const auto v = group_sublattice({GroupKind::SO, 7, std::nullopt});
    const auto d = build_root_datum(so(7));
    for (std::size_t j = 0; j < v.map.source_rank(); ++j)
        for (auto c : d.weight(v.map.column(j))) EXPECT_EQ(c % 2, 0);
}

TEST(SelfDual, SharpMapShapes) {
    // sl_4: (x1, x2) -> (x1, x2, -x2, -x1), normalized to last coordinate 0.
    const auto sharp = sharp_map(4);
    EXPECT_EQ(sharp.source_rank(), 2u);
    const auto d = build_root_datum(sl(4));
    const auto w = d.weight(sharp.apply(IntVector{3, 1}));
    EXPECT_EQ(d.normalize(w), d.normalize(IntVector{6, 2, -2, -6}));
    EXPECT_EQ(sharp_map(5).source_rank(), 2u);
    EXPECT_EQ(selfdual_embedding(so(6)).map.source_rank(), 2u);
    EXPECT_EQ(selfdual_embedding(sp(3)).map, LatticeMap::identity(3));
    EXPECT_EQ(selfdual_embedding(so(7)).map, LatticeMap::identity(3));
    EXPECT_EQ(selfdual_embedding(so(8)).map, LatticeMap::identity(4));
}

TEST(SelfDual, ImageIsExactlyTheSelfDualWeights) {
    for (const auto& id : {sl(2), sl(3), sl(4), sl(5), sl(6), so(6), so(10), sp(2), so(7)}) {
        const auto d = build_root_datum(id);
        const auto v = selfdual_embedding(id);
        const auto o = orthogonal_sublattice(id);
        SCOPED_TRACE(id.label());
        // Every self-dual weight in a box is hit, and every image is self-dual.
        const std::size_t k = d.rank();
        std::vector<std::int64_t> x(k, -3);
        std::size_t selfdual = 0;
        for (;;) {
            const auto w = d.weight(x);
            if (d.is_self_dual(w)) {
                ++selfdual;
                ASSERT_TRUE(v.map.preimage(x).has_value()) << "missing self-dual weight";
                const bool even = orthogonal_parity(d, w) == Parity::Even;
                ASSERT_EQ(o.map.preimage(x).has_value(), even);
            }
            std::size_t i = 0;
            while (i < k && x[i] == 3) x[i++] = -3;
            if (i == k) break;
            ++x[i];
        }
        EXPECT_GT(selfdual, 0u);
        for (std::int64_t a = -4; a <= 4; ++a) {
            IntVector y(v.map.source_rank(), a);
            y[0] = 1 - a;
            EXPECT_TRUE(d.is_self_dual(d.weight(v.map.apply(y))));
            IntVector z(o.map.source_rank(), a);
            EXPECT_EQ(orthogonal_parity(d, d.weight(o.map.apply(z))), Parity::Even);
        }
    }
}

TEST(SelfDual, SharpMapMissesACosetForEvenN) {
    // ω_{n/2} (first n/2 coordinates 1 up to trace) is self-dual but not in the sharp image.
    for (unsigned n : {2u, 4u, 6u}) {
        IntVector omega(n - 1, 0);
        for (unsigned t = 0; t < n / 2; ++t) omega[t] = 1;
        EXPECT_FALSE(sharp_map(n).preimage(omega).has_value());
        EXPECT_TRUE(selfdual_embedding(sl(n)).map.preimage(omega).has_value());
        EXPECT_EQ(selfdual_embedding(sl(n)).map.source_rank(), n / 2);
    }
}

TEST(Orthogonal, IndexInSelfDual) {
    EXPECT_EQ(orthogonal_sublattice(sl(2)).index, 2u);
    EXPECT_EQ(orthogonal_sublattice(sl(3)).index, 1u);  // 2ρ∨ pairs evenly with every self-dual weight
    EXPECT_EQ(orthogonal_sublattice(sp(2)).index, 2u);
    // Spin representations: symplectic for so_5, orthogonal for so_7.
    EXPECT_EQ(orthogonal_sublattice(so(5)).index, 2u);
    EXPECT_EQ(orthogonal_sublattice(so(7)).index, 1u);
}
