// Acceptance checks, one [PASS]/[FAIL] line per criterion.

#include "liedensity/liedensity.hpp"

#include <chrono>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

namespace ld = liedensity;

namespace {

struct Check {
    bool ok = true;
    std::string witness;

    void expect(bool cond, const std::string& what) {
        if (!cond && ok) witness = what;
        ok = ok && cond;
    }
};

struct Computed {
    ld::VariantSpec variant;
    std::uint64_t m;
    ld::Rational value;
};

// Every exact density produced along the way, for the bound check.
std::vector<Computed> g_computed;

ld::Rational record(const ld::VariantSpec& v, std::uint64_t m) {
    const auto value = ld::density_for(v, m).value;
    g_computed.push_back({v, m, value});
    return value;
}

Check merge(const ld::SuiteReport& rep) {
    Check c;
    c.expect(rep.passed, rep.name + ": " + rep.witness.value_or(""));
    return c;
}

Check table_reproduction() {
    const std::vector<std::vector<std::string>> expected{
        {"1", "1/2", "3/8", "3/32", "15/128", "45/1024", "315/16384", "315/131072"},
        {"1", "2/3", "2/9", "8/27", "40/243", "80/2187", "560/19683", "4480/531441"}};
    const std::vector<std::uint64_t> ms{2, 3};
    const auto table = ld::compute_table("gl", 8, ms);
    Check c;
    for (std::size_t r = 0; r < ms.size(); ++r)
        for (unsigned n = 1; n <= 8; ++n) {
            const auto& value = table.cells[r][n - 1];
            g_computed.push_back({ld::algebra_variant(ld::gl(n)), ms[r], value});
            const auto got = ld::to_string(value);
            c.expect(got == expected[r][n - 1], "gl:" + std::to_string(n) + " m=" + std::to_string(ms[r]) + ": got " +
                                                    got + ", expected " + expected[r][n - 1]);
        }
    return c;
}

Check gl2_closed_form() {
    Check c;
    for (std::uint64_t m = 2; m <= 12; ++m) {
        const auto v = record(ld::algebra_variant(ld::gl(2)), m);
        const ld::Rational expected(m - 1, m);
        c.expect(v == expected, "gl:2 m=" + std::to_string(m) + ": " + ld::to_string(v));
    }
    return c;
}

Check sl_equals_gl() {
    Check c;
    for (unsigned n = 2; n <= 5; ++n)
        for (std::uint64_t m : {2u, 3u, 4u}) {
            const auto s = record(ld::algebra_variant(ld::sl(n)), m);
            const auto g = record(ld::algebra_variant(ld::gl(n)), m);
            c.expect(s == g, "n=" + std::to_string(n) + " m=" + std::to_string(m) + ": sl " + ld::to_string(s) +
                                 " != gl " + ld::to_string(g));
        }
    return c;
}

Check product_rule() {
    auto c = merge(ld::verify_product_rule());
    for (unsigned n : {2u, 3u})
        for (std::uint64_t m : {6u, 12u}) record(ld::algebra_variant(ld::gl(n)), m);
    // Also over larger boxes that are common multiples of the prime-power periods.
    const auto f = ld::shifted_polynomial(ld::build_root_datum(ld::gl(3)));
    for (auto [m, side] : {std::pair<std::uint64_t, std::uint64_t>{6, 36}, {12, 72}}) {
        const ld::PeriodicSetSpec set{3, ld::detail::nondivisible(f, m), side};
        const auto direct = ld::density_fundamental(set);
        const auto product = ld::density_for(ld::gl(3), m).value;
        c.expect(direct == product, "gl:3 m=" + std::to_string(m) + " over " + std::to_string(side) + "^3: " +
                                        ld::to_string(direct) + " != " + ld::to_string(product));
    }
    return c;
}

Check bound_sandwiches() {
    for (unsigned n = 2; n <= 4; ++n)
        for (std::uint64_t m : {2u, 3u}) {
            record(ld::algebra_variant(ld::so_odd(n)), m);
            record(ld::algebra_variant(ld::sp(n)), m);
            if (n >= 3) record(ld::algebra_variant(ld::so_even(n)), m);
        }
    Check c;
    for (const auto& x : g_computed) {
        const auto r = ld::bound_report(x.variant, x.m, x.value);
        const std::string where = x.variant.label() + " m=" + std::to_string(x.m) + " exact " + ld::to_string(x.value);
        c.expect(r.lower || r.upper, where + ": no bound applies");
        c.expect(r.satisfied, where + ": bound violated");
        c.expect(r.strict, where + ": comparison not strict");
    }
    return c;
}

} // namespace

int main() {
    const std::vector<std::pair<std::string, Check (*)()>> criteria{
        {"1 table reproduction", table_reproduction},
        {"2 gl2 closed form", gl2_closed_form},
        {"3 sl equals gl", sl_equals_gl},
        {"4 product rule vs direct count", product_rule},
        {"5 bound sandwiches", bound_sandwiches},
        {"6 low-rank isomorphisms", [] { return merge(ld::verify_isomorphisms()); }},
        {"7 counterexample norms", [] { return merge(ld::verify_counterexample()); }},
        {"8 cone density", [] { return merge(ld::verify_cone()); }},
        {"9 property suites",
         [] {
             Check c;
             for (const char* s : {"fray", "periods", "anchors"}) {
                 const auto rep = ld::run_suite(s);
                 c.expect(rep.passed, rep.name + ": " + rep.witness.value_or(""));
             }
             return c;
         }},
    };
    int failures = 0;
    for (const auto& [name, run] : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Check c;
        try {
            c = run();
        } catch (const std::exception& e) {
            c.expect(false, std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("[%s] %s  (%.1f s)\n", c.ok ? "PASS" : "FAIL", name.c_str(), secs);
        if (!c.ok) {
            std::printf("       %s\n", c.witness.c_str());
            ++failures;
        }
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
