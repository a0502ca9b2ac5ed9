#include "twinsmooth/cli/records.hpp"

#include <chrono>
#include <ctime>
#include <fstream>
#include <stdexcept>

namespace twinsmooth::cli {

namespace {

ordered_json factors_to_json(const Factorization& f) {
    ordered_json arr = ordered_json::array();
    for (const auto& [p, e] : f.factors) arr.push_back({p, e});
    return arr;
}

Factorization factors_from_json(const nlohmann::json& arr) {
    if (!arr.is_array()) throw std::invalid_argument("factor list must be an array");
    Factorization f;
    for (const auto& pe : arr) {
        if (!pe.is_array() || pe.size() != 2) throw std::invalid_argument("factor entries are [prime, exponent]");
        f.factors.push_back({pe[0].get<std::uint64_t>(), pe[1].get<unsigned>()});
    }
    return f;
}

mpz_class big_from_json(const nlohmann::json& j, const char* key) {
    const auto& v = j.at(key);
    if (!v.is_string()) throw std::invalid_argument(std::string(key) + " must be a decimal string");
    mpz_class out;
    if (out.set_str(v.get<std::string>(), 10) != 0) throw std::invalid_argument(std::string(key) + " is not a decimal integer");
    return out;
}

}  // namespace

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

ordered_json record_to_json(const TwinRecord& rec, std::string_view timestamp) {
    ordered_json j;
    j["m"] = rec.m.get_str();
    j["bits"] = rec.bits;
    j["smoothness"] = rec.smoothness;
    j["delta"] = rec.delta.get_str();
    j["x"] = rec.x.get_str();
    j["y"] = rec.y.get_str();
    j["n"] = rec.n;
    j["m_factors"] = factors_to_json(rec.m_factors);
    j["m1_factors"] = factors_to_json(rec.m1_factors);
    j["sum_prime"] = rec.sum_prime;
    j["strategy"] = to_string(rec.strategy);
    j["under_range"] = rec.under_range;
    j["timestamp"] = timestamp;
    return j;
}

std::string record_to_line(const TwinRecord& rec, std::string_view timestamp) {
    return record_to_json(rec, timestamp).dump();
}

TwinRecord record_from_json(const nlohmann::json& j) {
    try {
        TwinRecord rec;
        rec.m = big_from_json(j, "m");
        rec.bits = j.at("bits").get<std::size_t>();
        rec.smoothness = j.at("smoothness").get<std::uint64_t>();
        rec.delta = big_from_json(j, "delta");
        rec.x = big_from_json(j, "x");
        rec.y = big_from_json(j, "y");
        rec.n = j.at("n").get<unsigned long>();
        rec.m_factors = factors_from_json(j.at("m_factors"));
        rec.m1_factors = factors_from_json(j.at("m1_factors"));
        rec.sum_prime = j.at("sum_prime").get<bool>();
        const auto tag = strategy_from_string(j.at("strategy").get<std::string>());
        if (!tag) throw std::invalid_argument("unknown strategy tag");
        rec.strategy = *tag;
        rec.under_range = j.value("under_range", false);
        return rec;
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(e.what());
    }
}

TwinRecord record_from_line(std::string_view line) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(e.what());
    }
    return record_from_json(j);
}

std::vector<TwinRecord> read_records(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::vector<TwinRecord> out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        out.push_back(record_from_line(line));
    }
    return out;
}

}  // namespace twinsmooth::cli
