#pragma once

#include <optional>
#include <string_view>

#include <gmpxx.h>

namespace twinsmooth::cli {

/// Inclusive integer range.
struct Range {
    mpz_class lo;
    mpz_class hi;

    mpz_class size() const { return hi < lo ? mpz_class(0) : mpz_class(hi - lo + 1); }
    friend bool operator==(const Range&, const Range&) = default;
};

struct Shard {
    unsigned id = 0;
    unsigned count = 1;
};

/// "<i>/<n>" with 0 <= i < n. Throws std::invalid_argument otherwise.
Shard parse_shard(std::string_view text);

/// Contiguous split of `total` into `shard_count` pieces. The first size % count
/// shards get one extra element, so [1,7] over 3 shards is [1,3], [4,5], [6,7].
/// Empty when the shard receives nothing.
std::optional<Range> partition(const Range& total, unsigned shard_id, unsigned shard_count);

}  // namespace twinsmooth::cli
