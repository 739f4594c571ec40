#include "liedensity/numeric.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace liedensity;

namespace {

// Pascal's triangle, independent of the falling-factorial formula.
std::vector<std::vector<BigInt>> pascal(unsigned rows) {
    std::vector<std::vector<BigInt>> t(rows + 1);
    for (unsigned n = 0; n <= rows; ++n) {
        t[n].assign(n + 1, 1);
        for (unsigned k = 1; k < n; ++k) t[n][k] = t[n - 1][k - 1] + t[n - 1][k];
    }
    return t;
}

BigInt pascal_binomial(const std::vector<std::vector<BigInt>>& t, std::int64_t n, unsigned k) {
    if (n >= 0) return k > static_cast<std::uint64_t>(n) ? BigInt(0) : t[n][k];
    // C(-a, k) = (-1)^k C(a + k - 1, k)
    const auto a = static_cast<std::uint64_t>(-n);
    const BigInt v = t[a + k - 1][k];
    return k % 2 ? BigInt(-v) : v;
}

} // namespace

TEST(Factorize, Examples) {
    const auto f12 = factorize(12);
    ASSERT_EQ(f12.factors().size(), 2u);
    EXPECT_EQ(f12.factors()[0].prime, 2u);
    EXPECT_EQ(f12.factors()[0].exponent, 2u);
    EXPECT_EQ(f12.factors()[1].prime, 3u);
    EXPECT_EQ(f12.factors()[1].exponent, 1u);
    EXPECT_EQ(f12.omega(), 2u);

    EXPECT_TRUE(factorize(1).factors().empty());
    EXPECT_EQ(factorize(1).omega(), 0u);

    const auto f360 = factorize(360);
    ASSERT_EQ(f360.omega(), 3u);
    EXPECT_EQ(f360.factors()[0].exponent, 3u);
    EXPECT_EQ(f360.factors()[1].exponent, 2u);
    EXPECT_EQ(f360.factors()[2].prime, 5u);
}

TEST(Factorize, RejectsZero) { EXPECT_THROW(factorize(0), std::invalid_argument); }

TEST(Factorize, ReconstructsEveryM) {
    for (std::uint64_t m = 1; m <= 5000; ++m) {
        const auto f = factorize(m);
        std::uint64_t product = 1, last = 1;
        for (const auto& q : f.factors()) {
            EXPECT_GT(q.prime, last);
            EXPECT_GE(q.exponent, 1u);
            last = q.prime;
            // primality by brute force
            for (std::uint64_t d = 2; d < q.prime; ++d) ASSERT_NE(q.prime % d, 0u) << m;
            product *= q.value();
        }
        EXPECT_EQ(product, m);
    }
}

TEST(Factorize, LargeValue) {
    const std::uint64_t m = 1'000'000'007ULL * 4;
    const auto f = factorize(m);
    ASSERT_EQ(f.omega(), 2u);
    EXPECT_EQ(f.factors()[1].prime, 1'000'000'007ULL);
}

TEST(Valuation, Examples) {
    EXPECT_EQ(valuation(std::int64_t{12}, 2), Valuation(2));
    EXPECT_TRUE(valuation(std::int64_t{0}, 7).is_infinite());
    EXPECT_EQ(valuation(std::int64_t{-8}, 2), Valuation(3));
    EXPECT_EQ(valuation(BigInt(-8), 2), Valuation(3));
    EXPECT_TRUE(valuation(BigInt(0), 3).is_infinite());
    EXPECT_EQ(valuation(std::numeric_limits<std::int64_t>::min(), 2), Valuation(63));
}

TEST(Valuation, Ordering) {
    EXPECT_LT(Valuation(3), Valuation::infinite());
    EXPECT_LT(Valuation(2), Valuation(3));
    EXPECT_TRUE((Valuation(2) + Valuation::infinite()).is_infinite());
    EXPECT_EQ(Valuation(2) + Valuation(5), Valuation(7));
    EXPECT_THROW((void)Valuation::infinite().value(), std::logic_error);
}

TEST(Valuation, DividesExactlyOnRandomInputs) {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<std::int64_t> value(-1'000'000'000'000LL, 1'000'000'000'000LL);
    for (int t = 0; t < 20000; ++t) {
        std::int64_t x = value(rng);
        if (x == 0) continue;
        for (std::uint64_t p : {2u, 3u, 5u, 7u, 13u}) {
            const auto v = valuation(x, p).value();
            const BigInt pv = ipow(BigInt(p), v);
            ASSERT_EQ(BigInt(x) % pv, 0) << x << " " << p;
            ASSERT_NE(BigInt(x) % (pv * p), 0) << x << " " << p;
            ASSERT_EQ(valuation(BigInt(x) * ipow(BigInt(p), 40), p), Valuation(v + 40));
        }
    }
}

TEST(Binomial, MatchesPascalIncludingNegativeArguments) {
    const auto t = pascal(80);
    for (std::int64_t n = -30; n <= 40; ++n)
        for (unsigned k = 0; k <= 30; ++k) ASSERT_EQ(binomial(BigInt(n), k), pascal_binomial(t, n, k)) << n << " " << k;
}

TEST(Fray, Examples) {
    EXPECT_TRUE(fray_congruence_holds(5, 3, 2, 2, 1));
    EXPECT_EQ(binomial(13, 3), 286);
    EXPECT_EQ(binomial(5, 3), 10);
    EXPECT_TRUE(fray_congruence_holds(0, 1, 3, 1, 0));
    EXPECT_TRUE(fray_congruence_holds(-4, 4, 2, 3, 2));
}

TEST(Fray, RejectsInadmissibleTuples) {
    EXPECT_THROW(fray_congruence_holds(1, 4, 2, 1, 0), std::invalid_argument);  // k >= p^(s+1)
    EXPECT_THROW(fray_congruence_holds(1, 3, 4, 1, 0), std::invalid_argument);  // p not prime
    EXPECT_THROW(fray_congruence_holds(1, 1, 2, 0, 0), std::invalid_argument);  // r = 0
}

TEST(Fray, RandomAdmissibleTuples) {
    std::mt19937_64 rng(2);
    for (int i = 0; i < 10000; ++i) {
        const std::uint64_t p = std::array<std::uint64_t, 4>{2, 3, 5, 7}[rng() % 4];
        const unsigned s = p == 2 ? rng() % 5 : p == 3 ? rng() % 3 : rng() % 2;
        const auto lo = static_cast<unsigned>(ipow(BigInt(p), s));
        const unsigned k = lo + static_cast<unsigned>(rng() % (lo * (p - 1)));
        const unsigned r = 1 + rng() % 3;
        const std::int64_t n = static_cast<std::int64_t>(rng() % 2001) - 1000;
        ASSERT_TRUE(fray_congruence_holds(n, k, p, r, s)) << n << " " << k << " " << p << " " << r << " " << s;
    }
    // A tuple violating the precondition can break the congruence: C(n+2,2) vs C(n,2) mod 2 with s = 0.
    EXPECT_NE((binomial(1 + 2, 2) - binomial(1, 2)) % 2, 0);
}

TEST(RationalArithmetic, CrossMultiplication) {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<std::int64_t> num(-100000, 100000), den(1, 100000);
    for (int i = 0; i < 10000; ++i) {
        const BigInt a = num(rng), b = den(rng), c = num(rng), d = den(rng);
        const Rational x = make_rational(a, b), y = make_rational(c, d);
        const Rational sum = x + y, prod = x * y;
        ASSERT_EQ(numerator(sum) * (b * d), (a * d + c * b) * denominator(sum));
        ASSERT_EQ(numerator(prod) * (b * d), (a * c) * denominator(prod));
        ASSERT_EQ(gcd(numerator(sum), denominator(sum)), 1);
        ASSERT_GT(denominator(prod), 0);
    }
    EXPECT_THROW(make_rational(1, 0), std::domain_error);
}

TEST(Rendering, FractionAndDecimal) {
    EXPECT_EQ(to_string(make_rational(6, 16)), "3/8");
    EXPECT_EQ(to_string(Rational(1)), "1");
    EXPECT_EQ(to_string(Rational(0)), "0");
    EXPECT_EQ(to_decimal(make_rational(3, 8)), "0.375000");
    EXPECT_EQ(to_decimal(make_rational(315, 131072)), "0.00240326");
}

TEST(CheckedPow, Overflow) {
    EXPECT_EQ(checked_pow(3, 4), 81u);
    EXPECT_FALSE(checked_pow(2, 64).has_value());
    EXPECT_EQ(checked_pow(2, 63), std::uint64_t{1} << 63);
    EXPECT_THROW((void)(PrimePower{2, 70}.value()), std::overflow_error);
}
