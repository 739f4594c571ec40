#pragma once

// Oracle suites run by `lie-density verify` and the acceptance binary. Each
// suite checks one family of properties against an independent computation
// and reports the first failing input as a witness.

#include "liedensity/bounds.hpp"
#include "liedensity/density.hpp"
#include "liedensity/engine.hpp"
#include "liedensity/ivpoly.hpp"
#include "liedensity/lattice_map.hpp"
#include "liedensity/numeric.hpp"
#include "liedensity/root_system.hpp"

#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace liedensity {

struct SuiteReport {
    std::string name;
    bool passed = true;
    std::vector<std::string> lines;
    std::optional<std::string> witness;

    explicit SuiteReport(std::string suite) : name(std::move(suite)) {}

    void note(std::string line) { lines.push_back(std::move(line)); }

    /// Records a failure; only the first witness is kept.
    void fail(std::string what) {
        if (passed) witness = what;
        passed = false;
        lines.push_back("FAIL " + std::move(what));
    }

    void expect(bool ok, const std::string& what) {
        if (!ok) fail(what);
    }
};

struct VerifyOptions {
    EnumerationOptions enumeration;
    /// Outer radius for the counterexample suite.
    std::int64_t radius = 1000;
    std::uint64_t samples = 10'000;
    std::uint64_t seed = 0x5eed'1234'abcdULL;
};

namespace detail {

inline std::string vec_str(std::span<const std::int64_t> x) {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < x.size(); ++i) os << (i ? "," : "") << x[i];
    os << ')';
    return os.str();
}

inline std::string fixed(double v, int digits = 6) {
    std::ostringstream os;
    os.precision(digits);
    os << std::fixed << v;
    return os.str();
}

/// x -> m does not divide f(x), decided with valuations.
inline Predicate nondivisible(const FactoredPolynomial& f, std::uint64_t m) {
    const auto factors = factorize(m).factors();
    return [f, factors](std::span<const std::int64_t> x) {
        for (const auto& q : factors)
            if (f.eval_valuation(x, q.prime) < Valuation(q.exponent)) return true;
        return false;
    };
}

/// λ_1 >= ... >= λ_n >= 0 in gl_n coordinates.
inline bool gl_dominant(std::span<const std::int64_t> x) {
    for (std::size_t i = 0; i + 1 < x.size(); ++i)
        if (x[i] < x[i + 1]) return false;
    return x.back() >= 0;
}

/// Lower-triangular all-ones-below-diagonal shear, which is unimodular.
inline IntMatrix shear(std::size_t k) {
    IntMatrix t = identity_matrix(k);
    for (std::size_t i = 1; i < k; ++i) t[i][i - 1] = 1;
    return t;
}

inline double relative_gap(const Rational& empirical, const Rational& exact) {
    const double e = exact.convert_to<double>();
    return std::abs(empirical.convert_to<double>() - e) / e;
}

/// Classical algebras with rank at most `max_rank`, including so_4 through
/// the internal constructor when `include_d2` is set.
inline std::vector<RootDatum> small_data(unsigned max_rank, bool include_d2 = false) {
    std::vector<RootDatum> out;
    for (unsigned n = 1; n <= max_rank; ++n) out.push_back(build_root_datum(gl(n)));
    for (unsigned n = 2; n <= max_rank + 1; ++n) out.push_back(build_root_datum(sl(n)));
    for (unsigned n = 1; n <= max_rank; ++n) out.push_back(build_root_datum(so_odd(n)));
    for (unsigned n = 1; n <= max_rank; ++n) out.push_back(build_root_datum(sp(n)));
    if (include_d2) out.push_back(build_classical(Family::SO_even, 2));
    for (unsigned n = 3; n <= max_rank; ++n) out.push_back(build_root_datum(so_even(n)));
    return out;
}

} // namespace detail

/// {xy >= 0} under N0 = max(|x|,|y|) and N1 = max(|x|,|x+y|) at growing radii.
inline SuiteReport verify_counterexample(const VerifyOptions& opts = {}) {
    SuiteReport rep{"counterexample"};
    const Predicate quadrants = [](std::span<const std::int64_t> v) { return v[0] * v[1] >= 0; };
    const auto lattice = LatticeMap::identity(2);
    const auto n0 = Norm::sup(2);
    const auto n1 = Norm::sheared({{1, 0}, {1, 1}});
    std::vector<std::int64_t> radii;
    for (std::int64_t r = std::max<std::int64_t>(1, opts.radius / 100); r < opts.radius; r *= 10) radii.push_back(r);
    radii.push_back(opts.radius);
    for (auto r : radii) {
        const auto d0 = density_empirical(quadrants, lattice, n0, r, opts.enumeration);
        const auto d1 = density_empirical(quadrants, lattice, n1, r, opts.enumeration);
        rep.note("r=" + std::to_string(r) + "  N0 " + detail::fixed(d0.as_double()) + "  N1 " +
                 detail::fixed(d1.as_double()));
        if (r == opts.radius) {
            const double g0 = std::abs(d0.as_double() - 0.5) / 0.5, g1 = std::abs(d1.as_double() - 0.25) / 0.25;
            rep.note("relative gaps at r=" + std::to_string(r) + ": N0 " + detail::fixed(g0) + ", N1 " +
                     detail::fixed(g1));
            rep.expect(g0 <= 0.01, "N0 density " + detail::fixed(d0.as_double()) + " not within 1% of 1/2");
            rep.expect(g1 <= 0.01, "N1 density " + detail::fixed(d1.as_double()) + " not within 1% of 1/4");
        }
    }
    return rep;
}

/// Dominant-cone densities of {2 does not divide D(λ)} for gl_2, gl_3 at
/// radii 5, 10, 25, 50 times the period.
inline SuiteReport verify_cone(const VerifyOptions& opts = {}) {
    SuiteReport rep{"cone"};
    const std::uint64_t m = 2;
    for (unsigned n : {2u, 3u}) {
        const auto datum = build_root_datum(gl(n));
        const auto f = dimension_polynomial(datum);
        const auto exact = density_for(gl(n), m, {opts.enumeration, nullptr}).value;
        const auto period = static_cast<std::int64_t>(period_composite(f, factorize(m)));
        const auto contains = detail::nondivisible(f, m);
        std::vector<double> gaps;
        for (std::int64_t mult : {5, 10, 25, 50}) {
            const auto d = density_empirical_cone(contains, detail::gl_dominant, LatticeMap::identity(n),
                                                  Norm::sup(n), mult * period, opts.enumeration);
            const double gap = detail::relative_gap(d.value, exact);
            gaps.push_back(gap);
            rep.note("gl:" + std::to_string(n) + " r=" + std::to_string(mult) + "*" + std::to_string(period) + "  " +
                     detail::fixed(d.as_double()) + "  exact " + to_string(exact) + "  gap " + detail::fixed(gap));
        }
        rep.expect(gaps.back() <= 0.10, "gl:" + std::to_string(n) + " cone density not within 10% at r=50*period");
        int shrinking = 0;
        for (std::size_t i = 1; i < gaps.size(); ++i) shrinking += gaps[i] < gaps[i - 1];
        rep.note("gl:" + std::to_string(n) + " gap shrinks in " + std::to_string(shrinking) + " of " +
                 std::to_string(gaps.size() - 1) + " steps");
        rep.expect(shrinking >= 2, "gl:" + std::to_string(n) + " gap shrinks in fewer than 2 steps");
    }
    return rep;
}

/// Norm and basis independence for periodic sets: N0 and a sheared norm at
/// r = 50 * period, translation invariance, period doubling and sublattice
/// densities.
inline SuiteReport verify_norms(const VerifyOptions& opts = {}) {
    SuiteReport rep{"norms"};
    struct Case {
        std::string label;
        FactoredPolynomial f;
        std::uint64_t m;
    };
    std::vector<Case> cases;
    cases.push_back({"even integers", FactoredPolynomial(1, {LinearForm{{1}, 1}}), 2});
    cases.push_back({"gl:2 m=3", shifted_polynomial(build_root_datum(gl(2))), 3});
    cases.push_back({"gl:3 m=2", shifted_polynomial(build_root_datum(gl(3))), 2});
    std::mt19937_64 rng(opts.seed);
    for (const auto& c : cases) {
        const std::size_t k = c.f.rank();
        const auto period = period_composite(c.f, factorize(c.m));
        const auto contains = detail::nondivisible(c.f, c.m);
        const auto exact = density_fundamental({k, contains, period}, opts.enumeration);
        const auto r = static_cast<std::int64_t>(50 * period);
        const auto d0 = density_empirical(contains, LatticeMap::identity(k), Norm::sup(k), r, opts.enumeration);
        const auto d1 =
            density_empirical(contains, LatticeMap::identity(k), Norm::sheared(detail::shear(k)), r, opts.enumeration);
        const double g0 = detail::relative_gap(d0.value, exact), g1 = detail::relative_gap(d1.value, exact);
        rep.note(c.label + "  exact " + to_string(exact) + "  N0 " + detail::fixed(d0.as_double()) + "  sheared " +
                 detail::fixed(d1.as_double()) + "  r=" + std::to_string(r));
        rep.expect(g0 <= 0.10, c.label + ": sup-norm density off by " + detail::fixed(g0));
        rep.expect(g1 <= 0.10, c.label + ": sheared-norm density off by " + detail::fixed(g1));

        const auto doubled = density_fundamental({k, contains, 2 * period}, opts.enumeration);
        rep.expect(doubled == exact, c.label + ": period 2*" + std::to_string(period) + " gives " + to_string(doubled));

        std::uniform_int_distribution<std::int64_t> coord(-1000, 1000);
        std::vector<std::int64_t> shift(k);
        for (auto& s : shift) s = coord(rng);
        const Predicate translated = [&](std::span<const std::int64_t> x) {
            std::vector<std::int64_t> y(x.begin(), x.end());
            for (std::size_t i = 0; i < k; ++i) y[i] += shift[i];
            return contains(y);
        };
        const auto moved = density_fundamental({k, translated, period}, opts.enumeration);
        rep.expect(moved == exact, c.label + ": translate by " + detail::vec_str(shift) + " gives " + to_string(moved));
    }

    // The image of L' inside L has density 1/[L : L'].
    const std::vector<std::pair<std::string, IntMatrix>> sublattices{
        {"2I", {{2, 0}, {0, 2}}}, {"sl:3 roots", {{2, -1}, {-1, 2}}}, {"shear 3", {{1, 1}, {0, 3}}}};
    for (const auto& [label, cols] : sublattices) {
        const auto map = LatticeMap::from_columns(cols, 2);
        const auto membership = sublattice_membership(map);
        const auto d = density_fundamental(membership, opts.enumeration);
        const Rational expected(BigInt(1), map.index());
        rep.note("sublattice " + label + "  index " + map.index().str() + "  density " + to_string(d));
        rep.expect(d == expected, "sublattice " + label + " has density " + to_string(d));
    }
    return rep;
}

/// Product rule against a direct count over the composite period.
inline SuiteReport verify_product_rule(const VerifyOptions& opts = {}) {
    SuiteReport rep{"product-rule"};
    for (unsigned n : {2u, 3u})
        for (std::uint64_t m : {6u, 12u}) {
            const auto f = shifted_polynomial(build_root_datum(gl(n)));
            const auto product = density_of_polynomial(f, m, opts.enumeration).value;
            const auto direct = density_direct_composite(f, m, opts.enumeration);
            const auto period = period_composite(f, factorize(m));
            rep.note("gl:" + std::to_string(n) + " m=" + std::to_string(m) + "  product " + to_string(product) +
                     "  direct " + to_string(direct) + "  (period " + std::to_string(period) + ")");
            rep.expect(product == direct, "gl:" + std::to_string(n) + " m=" + std::to_string(m) + ": product " +
                                              to_string(product) + " != direct " + to_string(direct));
        }
    return rep;
}

/// Exceptional low-rank coincidences of classical algebras.
inline SuiteReport verify_isomorphisms(const VerifyOptions& opts = {}) {
    SuiteReport rep{"isomorphisms"};
    const EngineOptions eo{opts.enumeration, nullptr};
    const std::vector<std::pair<AlgebraId, AlgebraId>> pairs{
        {so(3), sl(2)}, {sp(1), sl(2)}, {so(5), sp(2)}, {so(6), sl(4)}};
    for (std::uint64_t m : {2u, 3u})
        for (const auto& [a, b] : pairs) {
            const auto da = density_for(a, m, eo).value, db = density_for(b, m, eo).value;
            rep.note(a.label() + " = " + b.label() + "  m=" + std::to_string(m) + "  " + to_string(da) + "  " +
                     to_string(db));
            rep.expect(da == db, a.label() + " vs " + b.label() + " at m=" + std::to_string(m) + ": " + to_string(da) +
                                     " != " + to_string(db));
        }
    // so_4 = sl_2 x sl_2: degrees are products of two sl_2 degrees.
    const auto d2 = shifted_polynomial(detail::build_classical(Family::SO_even, 2));
    for (std::uint64_t p : {2u, 3u, 5u, 7u}) {
        const auto d = density_of_polynomial(d2, p, opts.enumeration).value;
        const Rational expected = Rational(p - 1, p) * Rational(p - 1, p);
        rep.note("so:4 m=" + std::to_string(p) + "  " + to_string(d) + "  expected " + to_string(expected));
        rep.expect(d == expected, "so:4 at m=" + std::to_string(p) + ": " + to_string(d));
    }
    return rep;
}

/// C(n + p^(s+r), k) = C(n, k) mod p^r on random admissible tuples.
inline SuiteReport verify_fray(const VerifyOptions& opts = {}) {
    SuiteReport rep{"fray"};
    std::mt19937_64 rng(opts.seed ^ 0xf7a9ULL);
    const std::uint64_t primes[] = {2, 3, 5, 7, 11};
    std::uniform_int_distribution<std::size_t> pick(0, std::size(primes) - 1);
    std::uniform_int_distribution<unsigned> pick_r(1, 4);
    std::uniform_int_distribution<std::int64_t> pick_n(-1'000'000, 1'000'000);
    std::uint64_t checked = 0;
    for (std::uint64_t i = 0; i < opts.samples; ++i) {
        const auto p = primes[pick(rng)];
        // Keep k below 128 so the binomials stay cheap.
        unsigned smax = 0;
        while (ipow(BigInt(p), smax + 2) <= 128) ++smax;
        const unsigned s = std::uniform_int_distribution<unsigned>(0, smax)(rng);
        const auto lo = static_cast<unsigned>(ipow(BigInt(p), s));
        const auto k = std::uniform_int_distribution<unsigned>(lo, lo * static_cast<unsigned>(p) - 1)(rng);
        const unsigned r = pick_r(rng);
        const BigInt n = pick_n(rng);
        ++checked;
        if (!fray_congruence_holds(n, k, p, r, s)) {
            rep.fail("n=" + n.str() + " k=" + std::to_string(k) + " p=" + std::to_string(p) +
                     " r=" + std::to_string(r) + " s=" + std::to_string(s));
            break;
        }
    }
    rep.note(std::to_string(checked) + " tuples checked");
    return rep;
}

/// Period soundness, the deg-based period sandwich, valuation agreement and
/// reuse of periods through sublattice maps.
inline SuiteReport verify_periods(const VerifyOptions& opts = {}) {
    SuiteReport rep{"periods"};
    std::mt19937_64 rng(opts.seed ^ 0x9e41ULL);
    std::uniform_int_distribution<std::int64_t> coord(-60, 60);

    std::vector<std::pair<std::string, FactoredPolynomial>> polys;
    for (const AlgebraId& id : {gl(2), gl(3), gl(4), sl(3), so(5), sp(4), so(7), so(8)}) {
        const auto d = build_root_datum(id);
        polys.emplace_back(id.label() + " shifted", shifted_polynomial(d));
        polys.emplace_back(id.label(), dimension_polynomial(d));
    }
    for (const auto& v : {selfdual_embedding(sl(4)), orthogonal_sublattice(sl(5)), selfdual_embedding(so(6)),
                          group_sublattice({GroupKind::PGL, 3, std::nullopt}),
                          group_sublattice({GroupKind::SO, 7, std::nullopt})})
        polys.emplace_back(v.label(), variant_polynomial(v));

    const std::vector<PrimePower> moduli{{2, 1}, {2, 2}, {2, 3}, {3, 1}, {3, 2}, {5, 1}};
    std::uint64_t certificates = 0, samples = 0;
    for (const auto& [label, f] : polys) {
        const std::size_t k = f.rank();
        std::uniform_int_distribution<std::size_t> pick_j(0, k - 1);
        for (const auto& q : moduli) {
            const auto cert = period_prime_power(f, q);
            ++certificates;
            const std::string where = label + " q=" + std::to_string(q.value()) + " period=" + std::to_string(cert.period);
            // (q/p) deg <= period <= q deg
            const auto deg = f.deg_bullet();
            rep.expect(q.value() / q.prime * deg <= cert.period && cert.period <= q.value() * deg,
                       where + ": period outside the deg sandwich");
            bool ok = true;
            for (std::uint64_t t = 0; t < opts.samples && ok; ++t) {
                std::vector<std::int64_t> x(k);
                for (auto& v : x) v = coord(rng);
                const auto j = pick_j(rng);
                auto y = x;
                y[j] += static_cast<std::int64_t>(cert.period);
                ++samples;
                if (f.eval_mod(x, q.value()) != f.eval_mod(y, q.value())) {
                    rep.fail(where + ": f(x) != f(x + period e_" + std::to_string(j) + ") at x=" + detail::vec_str(x));
                    ok = false;
                }
            }
        }
    }
    rep.note(std::to_string(certificates) + " certificates, " + std::to_string(samples) + " (x, j) samples");

    // Valuation from the factored form against the valuation of the exact value.
    std::uint64_t agreements = 0;
    const std::uint64_t primes[] = {2, 3, 5, 7};
    for (std::uint64_t t = 0; t < opts.samples; ++t) {
        const auto& f = polys[t % polys.size()].second;
        std::vector<std::int64_t> x(f.rank());
        for (auto& v : x) v = coord(rng);
        const auto p = primes[t % std::size(primes)];
        const auto fast = f.eval_valuation(x, p);
        const auto slow = valuation(f.eval_exact(x), p);
        if (fast != slow) {
            rep.fail(polys[t % polys.size()].first + " at " + detail::vec_str(x) + " p=" + std::to_string(p) +
                     ": valuation " + fast.str() + " vs exact " + slow.str());
            break;
        }
        ++agreements;
    }
    rep.note(std::to_string(agreements) + " valuation agreements");

    // A period of f on L remains a period of f pulled back to a sublattice.
    for (const auto& v : {group_sublattice({GroupKind::PGL, 4, std::nullopt}), selfdual_embedding(sl(6)),
                          orthogonal_sublattice(sl(4))}) {
        const auto base = shifted_polynomial(build_root_datum(v.algebra));
        const auto pulled = base.pulled_back(v.map);
        for (const auto& q : moduli) {
            const auto period = period_prime_power(base, q).period;
            std::uniform_int_distribution<std::size_t> pick_j(0, pulled.rank() - 1);
            for (std::uint64_t t = 0; t < opts.samples / 10; ++t) {
                std::vector<std::int64_t> x(pulled.rank());
                for (auto& c : x) c = coord(rng);
                auto y = x;
                const auto j = pick_j(rng);
                y[j] += static_cast<std::int64_t>(period);
                if (pulled.eval_mod(x, q.value()) != pulled.eval_mod(y, q.value())) {
                    rep.fail(v.label() + " q=" + std::to_string(q.value()) + ": pulled-back period fails at " +
                             detail::vec_str(x));
                    break;
                }
            }
        }
    }
    return rep;
}

/// Degrees of the trivial, defining and adjoint representations, and
/// vanishing of the shifted polynomial on coordinate collisions.
inline SuiteReport verify_anchors(const VerifyOptions& opts = {}) {
    SuiteReport rep{"anchors"};
    std::mt19937_64 rng(opts.seed ^ 0xa11cULL);
    std::uniform_int_distribution<std::int64_t> coord(-20, 20);
    std::uint64_t anchors = 0, collisions = 0;
    for (const auto& d : detail::small_data(6)) {
        const auto D = dimension_polynomial(d);
        const auto f = shifted_polynomial(d);
        const auto n = static_cast<std::int64_t>(d.id.n);
        const std::size_t dim = d.dim;
        const std::string label = d.id.label();

        auto degree_at = [&](const IntVector& doubled) -> std::optional<BigInt> {
            const auto c = d.coordinates_of(doubled);
            if (!c) return std::nullopt;
            return D.eval_exact(*c);
        };
        auto anchor = [&](const std::string& what, const IntVector& doubled, BigInt expected) {
            ++anchors;
            const auto got = degree_at(doubled);
            if (!got) rep.fail(label + " " + what + ": weight not in the lattice");
            else rep.expect(*got == expected, label + " " + what + ": degree " + got->str() + ", expected " + expected.str());
        };

        anchor("trivial", IntVector(dim, 0), 1);
        IntVector e1(dim, 0);
        e1[0] = 2;
        IntVector adjoint(dim, 0);
        BigInt defining = 0, adjoint_dim = 0;
        switch (d.id.family) {
            case Family::GL:
            case Family::SL:
                defining = n;
                adjoint_dim = n * n - 1;
                adjoint[0] = 2;
                adjoint[dim - 1] -= 2;
                break;
            case Family::SO_odd:
                defining = 2 * n + 1;
                adjoint_dim = 2 * n * n + n;
                adjoint[0] = 2;
                if (dim > 1) adjoint[1] = 2;
                break;
            case Family::SP:
                defining = 2 * n;
                adjoint_dim = 2 * n * n + n;
                adjoint[0] = 4;
                break;
            case Family::SO_even:
                defining = 2 * n;
                adjoint_dim = 2 * n * n - n;
                adjoint[0] = 2;
                adjoint[1] = 2;
                break;
        }
        anchor("defining", e1, defining);
        // gl_1 has no roots; its "adjoint" weight is 0.
        if (!(d.id.family == Family::GL && n == 1)) anchor("adjoint", adjoint, adjoint_dim);

        // Collisions: λ_i = λ_j in standard coordinates kills the form e_i - e_j.
        if (dim < 2) continue;
        const bool half_integral = d.id.family == Family::SO_odd || d.id.family == Family::SO_even;
        std::uniform_int_distribution<std::size_t> pick(0, dim - 1);
        for (std::uint64_t t = 0; t < opts.samples / 100; ++t) {
            IntVector w(dim);
            const std::int64_t parity = half_integral ? (rng() & 1) : 0;
            for (auto& v : w) v = 2 * coord(rng) + parity;
            const auto i = pick(rng);
            auto j = pick(rng);
            if (i == j) j = (i + 1) % dim;
            w[j] = w[i];
            const auto c = d.coordinates_of(w);
            if (!c) {
                rep.fail(label + ": collision weight " + detail::vec_str(w) + " not in the lattice");
                break;
            }
            ++collisions;
            if (f.eval_exact(*c) != 0) {
                rep.fail(label + ": shifted polynomial nonzero at collision " + detail::vec_str(w) + " (doubled)");
                break;
            }
        }
    }
    rep.note(std::to_string(anchors) + " degree anchors, " + std::to_string(collisions) + " collision points");
    return rep;
}

inline const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"periods", "norms", "product-rule", "cone", "counterexample",
                                                "isomorphisms", "fray", "anchors"};
    return names;
}

inline SuiteReport run_suite(const std::string& name, const VerifyOptions& opts = {}) {
    if (name == "periods") return verify_periods(opts);
    if (name == "norms") return verify_norms(opts);
    if (name == "product-rule") return verify_product_rule(opts);
    if (name == "cone") return verify_cone(opts);
    if (name == "counterexample") return verify_counterexample(opts);
    if (name == "isomorphisms") return verify_isomorphisms(opts);
    if (name == "fray") return verify_fray(opts);
    if (name == "anchors") return verify_anchors(opts);
    throw std::invalid_argument("unknown suite '" + name + "'");
}

} // namespace liedensity
