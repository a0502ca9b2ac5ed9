#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

namespace twinsmooth::cli {

/// Progress marker of one shard. `items_done` counts completed work items in the
/// shard's deterministic item order; `out_bytes` is the size of the results file
/// once those items were flushed, so a resume can cut off anything written later.
struct Checkpoint {
    std::string strategy;
    std::string cursor;  // last finished item, human readable
    std::uint64_t items_done = 0;
    unsigned shard_id = 0;
    unsigned shard_count = 1;
    std::string config_digest;
    std::string timestamp;
    std::uint64_t out_bytes = 0;
};

/// FNV-1a 64 of the canonical configuration text, as 16 hex digits.
std::string config_digest(std::string_view canonical);

/// Write to a sibling temporary file, then rename over the target.
void write_checkpoint(const std::filesystem::path& path, const Checkpoint& cp);

/// Empty when the file does not exist; throws std::runtime_error when unreadable.
std::optional<Checkpoint> read_checkpoint(const std::filesystem::path& path);

}  // namespace twinsmooth::cli
