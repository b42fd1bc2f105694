#include "cache.hpp"

#include <atomic>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include <unistd.h>

namespace hhalg::cli {

namespace fs = std::filesystem;

std::uint64_t fnv1a(const std::string& text) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string cache_key(const std::string& material) {
    static const char* hex = "0123456789abcdef";
    std::uint64_t h = fnv1a(std::string(kEngineVersion) + "\n" + material);
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i, h >>= 4) out[static_cast<std::size_t>(i)] = hex[h & 15];
    return out;
}

std::string Cache::path(const std::string& key) const { return (fs::path(dir_) / (key + ".json")).string(); }

std::optional<BigradedTable> Cache::load(const std::string& key) const {
    if (!enabled()) return std::nullopt;
    std::ifstream in(path(key));
    if (!in) return std::nullopt;
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return BigradedTable::from_json(ss.str());
    } catch (const std::exception&) {
        // A corrupt entry is recomputed and overwritten.
        return std::nullopt;
    }
}

void Cache::store(const std::string& key, const BigradedTable& table) const {
    if (!enabled()) return;
    static std::atomic<unsigned> counter{0};
    std::error_code ec;
    fs::create_directories(dir_, ec);
    std::ostringstream tmp_name;
    tmp_name << key << ".tmp." << ::getpid() << "." << std::hash<std::thread::id>{}(std::this_thread::get_id()) << "."
             << counter++;
    fs::path tmp = fs::path(dir_) / tmp_name.str();
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) return;
        out << table.to_json();
        if (!out) {
            fs::remove(tmp, ec);
            return;
        }
    }
    fs::rename(tmp, path(key), ec);
    if (ec) fs::remove(tmp, ec);
}

} // namespace hhalg::cli
