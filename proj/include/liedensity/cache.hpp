#pragma once

// Persistent store of computed densities: one JSON object per line in
// <dir>/densities.jsonl, keyed by (variant, m, engine_version).

#include "liedensity/numeric.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace liedensity {

struct CachedPeriod {
    std::uint64_t q = 1;
    std::uint64_t period = 1;
    std::uint64_t points = 0;
    BigInt numerator;
    BigInt denominator = 1;

    friend bool operator==(const CachedPeriod&, const CachedPeriod&) = default;
};

struct CacheRecord {
    std::string variant;
    std::uint64_t m = 1;
    BigInt numerator;
    BigInt denominator = 1;
    std::vector<CachedPeriod> periods;
    std::uint64_t points = 0;
    std::string engine_version;

    friend bool operator==(const CacheRecord&, const CacheRecord&) = default;
};

// Big integers travel as decimal strings.
inline nlohmann::json to_json(const CacheRecord& r) {
    nlohmann::json periods = nlohmann::json::array();
    for (const auto& p : r.periods)
        periods.push_back({{"q", p.q},
                           {"period", p.period},
                           {"points", p.points},
                           {"numerator", p.numerator.str()},
                           {"denominator", p.denominator.str()}});
    return {{"variant", r.variant},
            {"m", r.m},
            {"numerator", r.numerator.str()},
            {"denominator", r.denominator.str()},
            {"periods", periods},
            {"points", r.points},
            {"engine_version", r.engine_version}};
}

inline CacheRecord cache_record_from_json(const nlohmann::json& j) {
    CacheRecord r;
    r.variant = j.at("variant").get<std::string>();
    r.m = j.at("m").get<std::uint64_t>();
    r.numerator = BigInt(j.at("numerator").get<std::string>());
    r.denominator = BigInt(j.at("denominator").get<std::string>());
    r.points = j.at("points").get<std::uint64_t>();
    r.engine_version = j.at("engine_version").get<std::string>();
    for (const auto& p : j.at("periods"))
        r.periods.push_back({p.at("q").get<std::uint64_t>(), p.at("period").get<std::uint64_t>(),
                             p.at("points").get<std::uint64_t>(), BigInt(p.at("numerator").get<std::string>()),
                             BigInt(p.at("denominator").get<std::string>())});
    if (r.denominator <= 0) throw std::invalid_argument("cache record: denominator must be positive");
    return r;
}

class DensityCache {
public:
    explicit DensityCache(std::filesystem::path dir) : path_(std::move(dir) / "densities.jsonl") {
        std::filesystem::create_directories(path_.parent_path());
        std::ifstream in(path_);
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            try {
                auto rec = cache_record_from_json(nlohmann::json::parse(line));
                records_[key(rec.variant, rec.m, rec.engine_version)] = std::move(rec);
            } catch (const std::exception&) {
                // A torn trailing line from an interrupted run; skip it.
            }
        }
    }

    const std::filesystem::path& path() const noexcept { return path_; }

    std::optional<CacheRecord> lookup(const std::string& variant, std::uint64_t m, const std::string& version) const {
        std::lock_guard lock(mutex_);
        auto it = records_.find(key(variant, m, version));
        if (it == records_.end()) return std::nullopt;
        return it->second;
    }

    void store(const CacheRecord& rec) {
        std::lock_guard lock(mutex_);
        const auto k = key(rec.variant, rec.m, rec.engine_version);
        if (records_.contains(k)) return;
        std::ofstream out(path_, std::ios::app);
        if (!out) throw std::runtime_error("DensityCache: cannot write " + path_.string());
        out << to_json(rec).dump() << '\n';
        records_[k] = rec;
    }

    std::size_t size() const {
        std::lock_guard lock(mutex_);
        return records_.size();
    }

private:
    using Key = std::tuple<std::string, std::uint64_t, std::string>;
    static Key key(const std::string& v, std::uint64_t m, const std::string& ver) { return {v, m, ver}; }

    std::filesystem::path path_;
    mutable std::mutex mutex_;
    std::map<Key, CacheRecord> records_;
};

} // namespace liedensity
