#ifndef MARKOFF_CACHE_HPP
#define MARKOFF_CACHE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "markoff/action.hpp"
#include "markoff/surface.hpp"

namespace markoff::cache {

/// Point-table cache: magic "MKXT", version u16, p u64, t u64, count u64,
/// then the packed keys as little-endian u64.
void save_table(const std::string& path, const surface::PointTable& table);
/// nullopt on missing, corrupt, or mismatched header (caller recomputes).
std::optional<surface::PointTable> load_table(const std::string& path, std::uint32_t p, std::int64_t t);

struct OrbitSummary {
    std::string generator_set_id;
    std::vector<std::pair<std::uint64_t, std::uint64_t>> reps_sizes;
};

/// Orbit cache: magic "MKOR", version u16, p u64, t u64, id-length u16 +
/// generator-set id bytes, count u64, then (representative, size) u64 pairs.
void save_orbits(const std::string& path, std::uint32_t p, std::uint32_t t,
                 const action::OrbitDecomposition& dec);
std::optional<OrbitSummary> load_orbits(const std::string& path, std::uint32_t p, std::uint32_t t,
                                        const std::string& generator_set_id);

std::string table_cache_name(std::uint32_t p, std::uint32_t t);
std::string orbit_cache_name(std::uint32_t p, std::uint32_t t, const std::string& generator_set_id);

}  // namespace markoff::cache

#endif
