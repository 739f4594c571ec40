#pragma once

// Variant-spec parsing and the machine-readable renderings used by the CLI:
// output records, density tables (markdown, CSV, JSON) and bound reports.

#include "liedensity/bounds.hpp"
#include "liedensity/cache.hpp"
#include "liedensity/engine.hpp"
#include "liedensity/root_system.hpp"

#include <nlohmann/json.hpp>

#include <charconv>
#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace liedensity {

namespace detail {

inline std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    for (;;) {
        const auto pos = s.find(sep, start);
        parts.emplace_back(s.substr(start, pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return parts;
}

inline unsigned parse_unsigned(const std::string& s, std::string_view context) {
    unsigned v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty())
        throw std::invalid_argument("expected a positive integer in '" + std::string(context) + "'");
    return v;
}

inline AlgebraId parse_algebra(const std::vector<std::string>& parts, std::size_t at, std::string_view spec) {
    if (parts.size() != at + 2) throw std::invalid_argument("malformed variant '" + std::string(spec) + "'");
    const auto& family = parts[at];
    const unsigned n = parse_unsigned(parts[at + 1], spec);
    if (family == "gl") {
        if (n < 1) throw std::invalid_argument("gl_n requires n >= 1");
        return gl(n);
    }
    if (family == "sl") {
        if (n < 2) throw std::invalid_argument("sl_n requires n >= 2");
        return sl(n);
    }
    if (family == "so") return so(n);
    if (family == "so_even") {
        if (n % 2 != 0) throw std::invalid_argument("so_even:N requires even N");
        return so(n);
    }
    if (family == "so_odd") {
        if (n % 2 != 1) throw std::invalid_argument("so_odd:N requires odd N");
        return so(n);
    }
    if (family == "sp") {
        if (n < 2 || n % 2 != 0) throw std::invalid_argument("sp:N requires even N >= 2");
        return sp(n / 2);
    }
    throw std::invalid_argument("unknown family '" + family + "' in '" + std::string(spec) + "'");
}

} // namespace detail

/// Parses gl:4, sl:5, so:7, sp:6, so_even:8, group:pgl:4, group:so:7,
/// group:sc:sp:6, sd:sl:6, orth:sl:6.
inline VariantSpec parse_variant(std::string_view spec) {
    const auto parts = detail::split(spec, ':');
    if (parts.empty() || parts[0].empty()) throw std::invalid_argument("empty variant");
    if (parts[0] == "group") {
        if (parts.size() < 3) throw std::invalid_argument("malformed group variant '" + std::string(spec) + "'");
        if (parts[1] == "pgl" && parts.size() == 3) {
            const unsigned n = detail::parse_unsigned(parts[2], spec);
            if (n < 2) throw std::invalid_argument("PGL_n requires n >= 2");
            return group_sublattice({GroupKind::PGL, n, std::nullopt});
        }
        if (parts[1] == "so" && parts.size() == 3) {
            const unsigned n = detail::parse_unsigned(parts[2], spec);
            (void)so(n); // validates n
            return group_sublattice({GroupKind::SO, n, std::nullopt});
        }
        if (parts[1] == "sc") {
            const auto id = detail::parse_algebra(parts, 2, spec);
            return group_sublattice({GroupKind::SimplyConnected, 0, id});
        }
        throw std::invalid_argument("unsupported group '" + std::string(spec) + "'");
    }
    if (parts[0] == "sd") return selfdual_embedding(detail::parse_algebra(parts, 1, spec));
    if (parts[0] == "orth") return orthogonal_sublattice(detail::parse_algebra(parts, 1, spec));
    return algebra_variant(detail::parse_algebra(parts, 0, spec));
}

/// Family tag used in CSV/JSON, e.g. "gl", "so", "sd:sl".
inline std::string family_tag(const VariantSpec& v) {
    std::string base;
    switch (v.algebra.family) {
        case Family::GL: base = "gl"; break;
        case Family::SL: base = "sl"; break;
        case Family::SO_odd:
        case Family::SO_even: base = "so"; break;
        case Family::SP: base = "sp"; break;
    }
    switch (v.kind) {
        case VariantKind::Algebra: return base;
        case VariantKind::Group: {
            const auto& g = *v.group;
            if (g.kind == GroupKind::PGL) return "group:pgl";
            if (g.kind == GroupKind::SO) return "group:so";
            return "group:sc:" + base;
        }
        case VariantKind::SelfDual: return "sd:" + base;
        case VariantKind::Orthogonal: return "orth:" + base;
    }
    return base;
}

struct OutputRecord {
    std::string variant;
    std::string family;
    unsigned rank = 0;
    std::uint64_t m = 1;
    Rational value;
    std::vector<PrimePowerDensity> periods;
    std::optional<BoundReport> bounds;
    std::optional<double> seconds;
};

inline OutputRecord make_output_record(const VariantSpec& v, const ExactDensity& d) {
    OutputRecord r;
    r.variant = v.label();
    r.family = family_tag(v);
    // The size parameter shown in the label: n for gl_n and sl_n, the matrix
    // size otherwise.
    const bool type_a = v.algebra.family == Family::GL || v.algebra.family == Family::SL;
    r.rank = type_a ? v.algebra.n : v.algebra.matrix_size();
    r.m = d.m;
    r.value = d.value;
    r.periods = d.per_prime_power;
    return r;
}

inline nlohmann::json bound_json(const BoundReport& b) {
    nlohmann::json j;
    j["lower"] = b.lower ? nlohmann::json(to_string(*b.lower)) : nlohmann::json(nullptr);
    j["upper"] = b.upper ? nlohmann::json(b.upper->str()) : nlohmann::json(nullptr);
    j["upper_approx"] = b.upper ? nlohmann::json(b.upper->approx()) : nlohmann::json(nullptr);
    j["satisfied"] = b.satisfied;
    j["vacuous"] = b.vacuous;
    return j;
}

inline nlohmann::json to_json(const OutputRecord& r) {
    nlohmann::json periods = nlohmann::json::array();
    for (const auto& p : r.periods)
        periods.push_back({{"q", p.q},
                           {"period", p.period},
                           {"points", p.points},
                           {"numerator", boost::multiprecision::numerator(p.density).str()},
                           {"denominator", boost::multiprecision::denominator(p.density).str()}});
    nlohmann::json j{{"variant", r.variant},
                     {"family", r.family},
                     {"rank", r.rank},
                     {"m", r.m},
                     {"numerator", boost::multiprecision::numerator(r.value).str()},
                     {"denominator", boost::multiprecision::denominator(r.value).str()},
                     {"decimal", to_decimal(r.value)},
                     {"periods", periods}};
    if (r.bounds) j["bounds"] = bound_json(*r.bounds);
    if (r.seconds) j["seconds"] = *r.seconds;
    return j;
}

/// The cache representation of a JSON output record.
inline CacheRecord cache_record_from_output(const nlohmann::json& j) {
    CacheRecord c;
    c.variant = j.at("variant").get<std::string>();
    c.m = j.at("m").get<std::uint64_t>();
    c.numerator = BigInt(j.at("numerator").get<std::string>());
    c.denominator = BigInt(j.at("denominator").get<std::string>());
    c.engine_version = kEngineVersion;
    for (const auto& p : j.at("periods")) {
        c.periods.push_back({p.at("q").get<std::uint64_t>(), p.at("period").get<std::uint64_t>(),
                             p.at("points").get<std::uint64_t>(), BigInt(p.at("numerator").get<std::string>()),
                             BigInt(p.at("denominator").get<std::string>())});
        c.points += c.periods.back().points;
    }
    return c;
}

// ---------------------------------------------------------------------------
// Tables: rows indexed by m, columns by n.

struct DensityTable {
    std::string family = "gl";
    unsigned nmax = 0;
    std::vector<std::uint64_t> ms;
    /// cells[row][n - first_n]
    std::vector<std::vector<Rational>> cells;
    /// 1 for gl, 2 for sl.
    unsigned first_n = 1;
};

inline VariantSpec table_variant(const std::string& family, unsigned n) {
    return parse_variant(family + ":" + std::to_string(n));
}

inline DensityTable compute_table(const std::string& family, unsigned nmax, const std::vector<std::uint64_t>& ms,
                                  const EngineOptions& opts = {}) {
    if (family != "gl" && family != "sl") throw std::invalid_argument("table: family must be gl or sl");
    DensityTable t{family, nmax, ms, {}, family == "sl" ? 2u : 1u};
    for (auto m : ms) {
        std::vector<Rational> row;
        for (unsigned n = t.first_n; n <= nmax; ++n) row.push_back(density_for(table_variant(family, n), m, opts).value);
        t.cells.push_back(std::move(row));
    }
    return t;
}

inline std::string render_markdown(const DensityTable& t) {
    std::ostringstream os;
    os << "|   |";
    for (unsigned n = t.first_n; n <= t.nmax; ++n) os << ' ' << n << " |";
    os << "\n|---|";
    for (unsigned n = t.first_n; n <= t.nmax; ++n) os << "---|";
    os << '\n';
    for (std::size_t r = 0; r < t.ms.size(); ++r) {
        os << "| m=" << t.ms[r] << " |";
        for (const auto& v : t.cells[r]) os << ' ' << to_string(v) << " |";
        os << '\n';
    }
    return os.str();
}

inline std::string render_csv(const DensityTable& t) {
    std::ostringstream os;
    os << "family,rank,m,numerator,denominator,decimal\n";
    for (std::size_t r = 0; r < t.ms.size(); ++r)
        for (unsigned n = t.first_n; n <= t.nmax; ++n) {
            const auto& v = t.cells[r][n - t.first_n];
            os << t.family << ',' << n << ',' << t.ms[r] << ',' << boost::multiprecision::numerator(v) << ','
               << boost::multiprecision::denominator(v) << ',' << to_decimal(v) << '\n';
        }
    return os.str();
}

inline nlohmann::json table_json(const DensityTable& t) {
    nlohmann::json arr = nlohmann::json::array();
    for (std::size_t r = 0; r < t.ms.size(); ++r)
        for (unsigned n = t.first_n; n <= t.nmax; ++n) {
            const auto& v = t.cells[r][n - t.first_n];
            arr.push_back({{"variant", t.family + ":" + std::to_string(n)},
                           {"family", t.family},
                           {"rank", n},
                           {"m", t.ms[r]},
                           {"numerator", boost::multiprecision::numerator(v).str()},
                           {"denominator", boost::multiprecision::denominator(v).str()},
                           {"decimal", to_decimal(v)}});
        }
    return arr;
}

inline std::string render_bound_report(const BoundReport& b) {
    std::ostringstream os;
    os << b.variant << "  m=" << b.m << '\n';
    if (b.exact) os << "  exact  " << to_string(*b.exact) << "  (~" << to_decimal(*b.exact) << ")\n";
    if (b.lower) os << "  lower  " << to_string(*b.lower) << "  (~" << to_decimal(*b.lower) << ")\n";
    if (b.upper) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%#.6g", b.upper->approx());
        os << "  upper  " << b.upper->str() << "  (~" << buf << ")\n";
    }
    if (!b.lower && !b.upper) os << "  no applicable bound\n";
    if (b.vacuous) os << "  m = 1: every degree is divisible; bounds are vacuous\n";
    if (b.exact) os << "  status " << (b.satisfied ? "ok" : "VIOLATED") << '\n';
    return os.str();
}

} // namespace liedensity
