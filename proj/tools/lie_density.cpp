// lie-density: exact densities of representation degrees not divisible by m.
//
//   lie-density density --algebra gl:3 --m 2
//   lie-density table --nmax 8 --m 2,3 --format markdown
//   lie-density bounds --variant sd:sl:4 --m 2
//   lie-density verify counterexample --r 1000

#include "liedensity/liedensity.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace ld = liedensity;

namespace {

struct Common {
    unsigned workers = 0;
    std::uint64_t budget = 100'000'000;
    std::string cache_dir;
    bool no_cache = false;
    std::string format = "text";
};

void add_common(CLI::App* cmd, Common& c, bool with_format) {
    cmd->add_option("--workers", c.workers, "Worker threads (0 = hardware concurrency)");
    cmd->add_option("--budget-points", c.budget, "Maximum number of lattice points per enumeration");
    cmd->add_option("--cache-dir", c.cache_dir, "Directory for the density cache (default: $LIEDENSITY_CACHE_DIR)");
    cmd->add_flag("--no-cache", c.no_cache, "Do not read or write the cache");
    if (with_format)
        cmd->add_option("--format", c.format, "Output format")
            ->check(CLI::IsMember({"text", "markdown", "csv", "json"}));
}

ld::EnumerationOptions enumeration(const Common& c) { return {c.workers, c.budget}; }

std::unique_ptr<ld::DensityCache> open_cache(const Common& c) {
    if (c.no_cache) return nullptr;
    std::string dir = c.cache_dir;
    if (dir.empty())
        if (const char* env = std::getenv("LIEDENSITY_CACHE_DIR")) dir = env;
    if (dir.empty()) return nullptr;
    return std::make_unique<ld::DensityCache>(std::filesystem::path(dir));
}

int cmd_density(const std::vector<std::string>& variants, const std::vector<std::uint64_t>& ms, bool with_bounds,
                const Common& c) {
    auto cache = open_cache(c);
    const ld::EngineOptions opts{enumeration(c), cache.get()};
    nlohmann::json all = nlohmann::json::array();
    if (c.format == "csv") std::cout << "family,rank,m,numerator,denominator,decimal\n";
    for (const auto& spec : variants) {
        const auto v = ld::parse_variant(spec);
        for (auto m : ms) {
            const auto d = ld::density_for(v, m, opts);
            auto rec = ld::make_output_record(v, d);
            if (!d.from_cache) rec.seconds = d.seconds;
            if (with_bounds) rec.bounds = ld::bound_report(v, m, d.value);
            if (c.format == "json") {
                all.push_back(ld::to_json(rec));
            } else if (c.format == "csv") {
                std::cout << rec.family << ',' << rec.rank << ',' << m << ','
                          << boost::multiprecision::numerator(d.value) << ','
                          << boost::multiprecision::denominator(d.value) << ',' << ld::to_decimal(d.value) << '\n';
            } else {
                std::cout << rec.variant << "  m=" << m << "  " << ld::to_string(d.value) << "  (~"
                          << ld::to_decimal(d.value) << ")";
                if (d.from_cache) std::cout << "  [cached]";
                else std::cout << "  " << d.points() << " points, " << ld::detail::fixed(d.seconds, 3) << " s";
                std::cout << '\n';
                if (c.format == "markdown" || with_bounds)
                    for (const auto& p : d.per_prime_power)
                        std::cout << "    q=" << p.q << "  period " << p.period << "  " << ld::to_string(p.density)
                                  << '\n';
                if (rec.bounds) std::cout << ld::render_bound_report(*rec.bounds);
            }
        }
    }
    if (c.format == "json") std::cout << all.dump(2) << '\n';
    return 0;
}

int cmd_table(const std::string& family, unsigned nmax, const std::vector<std::uint64_t>& ms, const Common& c) {
    auto cache = open_cache(c);
    const auto table = ld::compute_table(family, nmax, ms, {enumeration(c), cache.get()});
    if (c.format == "csv") std::cout << ld::render_csv(table);
    else if (c.format == "json") std::cout << ld::table_json(table).dump(2) << '\n';
    else std::cout << ld::render_markdown(table);
    return 0;
}

int cmd_bounds(const std::vector<std::string>& variants, const std::vector<std::uint64_t>& ms, const Common& c) {
    auto cache = open_cache(c);
    const ld::EngineOptions opts{enumeration(c), cache.get()};
    bool ok = true;
    nlohmann::json all = nlohmann::json::array();
    for (const auto& spec : variants) {
        const auto v = ld::parse_variant(spec);
        for (auto m : ms) {
            const auto d = ld::density_for(v, m, opts);
            const auto report = ld::bound_report(v, m, d.value);
            ok = ok && report.satisfied;
            if (c.format == "json") {
                auto j = ld::bound_json(report);
                j["variant"] = report.variant;
                j["m"] = m;
                j["exact"] = ld::to_string(d.value);
                all.push_back(j);
            } else {
                std::cout << ld::render_bound_report(report);
            }
        }
    }
    if (c.format == "json") std::cout << all.dump(2) << '\n';
    if (!ok) std::cerr << "bound violated: this indicates an engine error\n";
    return ok ? 0 : 1;
}

int cmd_verify(const std::vector<std::string>& suites, std::int64_t radius, std::uint64_t samples, const Common& c) {
    ld::VerifyOptions opts;
    opts.enumeration = enumeration(c);
    opts.radius = radius;
    opts.samples = samples;
    int failures = 0;
    for (const auto& name : suites) {
        const auto rep = ld::run_suite(name, opts);
        std::cout << "== " << rep.name << '\n';
        for (const auto& line : rep.lines) std::cout << "  " << line << '\n';
        std::cout << (rep.passed ? "[PASS] " : "[FAIL] ") << rep.name << '\n';
        if (!rep.passed) {
            ++failures;
            std::cerr << rep.name << ": witness " << *rep.witness << '\n';
        }
    }
    return failures == 0 ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact densities of irreducible representations whose degree is not divisible by m"};
    app.require_subcommand(1);
    Common common;

    std::vector<std::string> variants;
    std::vector<std::uint64_t> ms;
    bool with_bounds = false;
    auto* density = app.add_subcommand("density", "Exact density for one or more variants");
    density->add_option("--algebra,--variant", variants,
                        "gl:4, sl:5, so:7, sp:6, so_even:8, group:pgl:4, group:so:7, group:sc:sp:6, sd:sl:6, orth:sl:6")
        ->required()
        ->delimiter(',');
    density->add_option("--m", ms, "Modulus m (comma separated list allowed)")->required()->delimiter(',');
    density->add_flag("--bounds", with_bounds, "Also compare with the closed-form bounds");
    add_common(density, common, true);

    std::string family = "gl";
    unsigned nmax = 8;
    std::vector<std::uint64_t> table_ms{2, 3};
    auto* table = app.add_subcommand("table", "Density table, rows m and columns n = 1..nmax");
    table->add_option("--family", family, "Family: gl or sl (sl columns start at n = 2)")->check(CLI::IsMember({"gl", "sl"}));
    table->add_option("--nmax", nmax, "Largest n")->check(CLI::Range(1u, 64u));
    table->add_option("--m", table_ms, "Rows (comma separated; empty for a header-only table)")->delimiter(',');
    add_common(table, common, true);

    auto* bounds = app.add_subcommand("bounds", "Exact density against its bounds");
    bounds->add_option("--algebra,--variant", variants, "Variant spec")->required()->delimiter(',');
    bounds->add_option("--m", ms, "Modulus m")->required()->delimiter(',');
    add_common(bounds, common, true);

    std::vector<std::string> suites;
    std::int64_t radius = 1000;
    std::uint64_t samples = 10'000;
    auto* verify = app.add_subcommand("verify", "Run oracle suites");
    verify->add_option("suite", suites, "Suites (default: all)")->check(CLI::IsMember(ld::suite_names()));
    verify->add_option("--r", radius, "Outer radius for the counterexample suite")->check(CLI::PositiveNumber);
    verify->add_option("--samples", samples, "Random samples per property");
    add_common(verify, common, false);

    CLI11_PARSE(app, argc, argv);

    for (auto m : ms)
        if (m == 0) {
            std::cerr << "error: m must be positive\n";
            return 2;
        }
    try {
        if (*density) return cmd_density(variants, ms, with_bounds, common);
        if (*table) return cmd_table(family, nmax, table_ms, common);
        if (*bounds) return cmd_bounds(variants, ms, common);
        if (*verify) return cmd_verify(suites.empty() ? ld::suite_names() : suites, radius, samples, common);
    } catch (const ld::BudgetExceeded& e) {
        std::cerr << "error: " << e.what() << " (raise --budget-points to at least " << e.required_points() << ")\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
