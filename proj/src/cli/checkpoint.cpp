#include "twinsmooth/cli/checkpoint.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "json.hpp"

namespace twinsmooth::cli {

std::string config_digest(std::string_view canonical) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : canonical) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

void write_checkpoint(const std::filesystem::path& path, const Checkpoint& cp) {
    nlohmann::ordered_json j;
    j["strategy"] = cp.strategy;
    j["cursor"] = cp.cursor;
    j["items_done"] = cp.items_done;
    j["shard_id"] = cp.shard_id;
    j["shard_count"] = cp.shard_count;
    j["config_digest"] = cp.config_digest;
    j["timestamp"] = cp.timestamp;
    j["out_bytes"] = cp.out_bytes;

    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        out << j.dump() << '\n';
        if (!out.flush()) throw std::runtime_error("cannot write " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

std::optional<Checkpoint> read_checkpoint(const std::filesystem::path& path) {
    if (!std::filesystem::exists(path)) return std::nullopt;
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    try {
        const auto j = nlohmann::json::parse(in);
        Checkpoint cp;
        cp.strategy = j.at("strategy").get<std::string>();
        cp.cursor = j.at("cursor").get<std::string>();
        cp.items_done = j.at("items_done").get<std::uint64_t>();
        cp.shard_id = j.at("shard_id").get<unsigned>();
        cp.shard_count = j.at("shard_count").get<unsigned>();
        cp.config_digest = j.at("config_digest").get<std::string>();
        cp.timestamp = j.at("timestamp").get<std::string>();
        cp.out_bytes = j.at("out_bytes").get<std::uint64_t>();
        return cp;
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error("corrupt checkpoint " + path.string() + ": " + e.what());
    }
}

}  // namespace twinsmooth::cli
