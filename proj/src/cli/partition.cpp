#include "twinsmooth/cli/partition.hpp"

#include <charconv>
#include <stdexcept>
#include <string>

namespace twinsmooth::cli {

Shard parse_shard(std::string_view text) {
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) throw std::invalid_argument("shard must look like <i>/<n>");
    Shard s;
    const auto id_part = text.substr(0, slash);
    const auto count_part = text.substr(slash + 1);
    auto r1 = std::from_chars(id_part.data(), id_part.data() + id_part.size(), s.id);
    auto r2 = std::from_chars(count_part.data(), count_part.data() + count_part.size(), s.count);
    if (r1.ec != std::errc{} || r1.ptr != id_part.data() + id_part.size() || r2.ec != std::errc{} ||
        r2.ptr != count_part.data() + count_part.size())
        throw std::invalid_argument("shard must look like <i>/<n>");
    if (s.count == 0 || s.id >= s.count) throw std::invalid_argument("shard index out of range");
    return s;
}

std::optional<Range> partition(const Range& total, unsigned shard_id, unsigned shard_count) {
    if (shard_count == 0 || shard_id >= shard_count)
        throw std::invalid_argument("shard " + std::to_string(shard_id) + "/" + std::to_string(shard_count) +
                                    " out of range");
    const mpz_class size = total.size();
    const mpz_class q = size / shard_count;
    const mpz_class r = size % shard_count;
    const mpz_class extra = (r > shard_id) ? mpz_class(shard_id) : r;
    const mpz_class lo = total.lo + q * shard_id + extra;
    const mpz_class len = q + (r > shard_id ? 1 : 0);
    if (len == 0) return std::nullopt;
    return Range{lo, lo + len - 1};
}

}  // namespace twinsmooth::cli
