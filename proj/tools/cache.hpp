#pragma once

// Content-addressed table cache. Keys hash the canonical input, the bounds and
// the engine version; payloads are BigradedTable JSON written via rename.

#include <cstdint>
#include <optional>
#include <string>

#include "hhalg/table.hpp"

namespace hhalg::cli {

inline constexpr const char* kEngineVersion = "hhalg-engine-1";

std::uint64_t fnv1a(const std::string& text);
// 16 lowercase hex digits of fnv1a(engine version + '\n' + material).
std::string cache_key(const std::string& material);

class Cache {
public:
    // An empty directory disables the cache.
    explicit Cache(std::string dir) : dir_(std::move(dir)) {}
    bool enabled() const { return !dir_.empty(); }

    std::optional<BigradedTable> load(const std::string& key) const;
    void store(const std::string& key, const BigradedTable& table) const;
    std::string path(const std::string& key) const;

private:
    std::string dir_;
};

} // namespace hhalg::cli
