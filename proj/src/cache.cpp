#include "markoff/cache.hpp"

#include <fstream>

namespace markoff::cache {

namespace {

void put_u16(std::ostream& out, std::uint16_t v) {
    char b[2] = {char(v & 0xff), char(v >> 8)};
    out.write(b, 2);
}

void put_u64(std::ostream& out, std::uint64_t v) {
    char b[8];
    for (int i = 0; i < 8; ++i) b[i] = char((v >> (8 * i)) & 0xff);
    out.write(b, 8);
}

bool get_u16(std::istream& in, std::uint16_t& v) {
    unsigned char b[2];
    if (!in.read(reinterpret_cast<char*>(b), 2)) return false;
    v = std::uint16_t(b[0]) | (std::uint16_t(b[1]) << 8);
    return true;
}

bool get_u64(std::istream& in, std::uint64_t& v) {
    unsigned char b[8];
    if (!in.read(reinterpret_cast<char*>(b), 8)) return false;
    v = 0;
    for (int i = 0; i < 8; ++i) v |= std::uint64_t(b[i]) << (8 * i);
    return true;
}

constexpr std::uint16_t kVersion = 1;

}  // namespace

void save_table(const std::string& path, const surface::PointTable& table) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out.write("MKXT", 4);
    put_u16(out, kVersion);
    put_u64(out, table.p());
    put_u64(out, table.t());
    put_u64(out, table.size());
    for (std::uint64_t k : table.keys()) put_u64(out, k);
}

std::optional<surface::PointTable> load_table(const std::string& path, std::uint32_t p, std::int64_t t) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    char magic[4];
    if (!in.read(magic, 4) || std::string(magic, 4) != "MKXT") return std::nullopt;
    std::uint16_t version;
    std::uint64_t fp, ft, count;
    if (!get_u16(in, version) || version != kVersion) return std::nullopt;
    if (!get_u64(in, fp) || !get_u64(in, ft) || !get_u64(in, count)) return std::nullopt;
    arith::PrimeField F(p);
    if (fp != p || ft != F.reduce(t)) return std::nullopt;
    std::vector<std::uint64_t> keys(count);
    for (std::uint64_t& k : keys)
        if (!get_u64(in, k)) return std::nullopt;
    try {
        return surface::PointTable::from_keys(p, t, std::move(keys));
    } catch (const std::exception&) {
        return std::nullopt;  // corrupt payload: caller recomputes
    }
}

void save_orbits(const std::string& path, std::uint32_t p, std::uint32_t t,
                 const action::OrbitDecomposition& dec) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out.write("MKOR", 4);
    put_u16(out, kVersion);
    put_u64(out, p);
    put_u64(out, t);
    std::string gsid = dec.generator_set_id();
    put_u16(out, static_cast<std::uint16_t>(gsid.size()));
    out.write(gsid.data(), static_cast<std::streamsize>(gsid.size()));
    put_u64(out, dec.orbits.size());
    for (const auto& orb : dec.orbits) {
        put_u64(out, orb.rep_key);
        put_u64(out, orb.size);
    }
}

std::optional<OrbitSummary> load_orbits(const std::string& path, std::uint32_t p, std::uint32_t t,
                                        const std::string& generator_set_id) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    char magic[4];
    if (!in.read(magic, 4) || std::string(magic, 4) != "MKOR") return std::nullopt;
    std::uint16_t version;
    if (!get_u16(in, version) || version != kVersion) return std::nullopt;
    std::uint64_t fp, ft;
    if (!get_u64(in, fp) || !get_u64(in, ft) || fp != p || ft != t) return std::nullopt;
    std::uint16_t idlen;
    if (!get_u16(in, idlen)) return std::nullopt;
    std::string gsid(idlen, '\0');
    if (!in.read(gsid.data(), idlen) || gsid != generator_set_id) return std::nullopt;
    std::uint64_t count;
    if (!get_u64(in, count)) return std::nullopt;
    OrbitSummary sum;
    sum.generator_set_id = gsid;
    sum.reps_sizes.resize(count);
    for (auto& [rep, size] : sum.reps_sizes)
        if (!get_u64(in, rep) || !get_u64(in, size)) return std::nullopt;
    return sum;
}

std::string table_cache_name(std::uint32_t p, std::uint32_t t) {
    return "table_p" + std::to_string(p) + "_t" + std::to_string(t) + ".mkxt";
}

std::string orbit_cache_name(std::uint32_t p, std::uint32_t t, const std::string& gsid) {
    std::string safe;
    for (char c : gsid) safe += (c == '/' ? '_' : c);
    return "orbits_p" + std::to_string(p) + "_t" + std::to_string(t) + "_" + safe + ".mkor";
}

}  // namespace markoff::cache
