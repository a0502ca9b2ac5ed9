#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "twinsmooth/search.hpp"

namespace twinsmooth::cli {

using ordered_json = nlohmann::ordered_json;

/// ISO-8601 UTC, second resolution.
std::string utc_timestamp();

/// One result line. Big integers are decimal strings.
ordered_json record_to_json(const TwinRecord& rec, std::string_view timestamp);
std::string record_to_line(const TwinRecord& rec, std::string_view timestamp);

/// Throws std::invalid_argument on a malformed line.
TwinRecord record_from_json(const nlohmann::json& j);
TwinRecord record_from_line(std::string_view line);

/// Every parseable record of a JSONL file; blank lines are skipped.
std::vector<TwinRecord> read_records(const std::filesystem::path& path);

}  // namespace twinsmooth::cli
