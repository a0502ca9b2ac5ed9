#pragma once

#include <optional>
#include <string>
#include <vector>

#include "twinsmooth/arith.hpp"
#include "twinsmooth/search.hpp"

namespace twinsmooth::cli {

struct Check {
    std::string name;
    bool ok = false;
    std::string detail;  // set on failure
};

struct Verdict {
    std::vector<Check> checks;
    std::optional<CoefficientTriple> triple;  // recomputed from m when m(m+1) is smooth

    bool ok() const;
    std::vector<std::string> failed() const;
};

/// Recheck a record from scratch: factorizations, smoothness, bit length, the Pell
/// identity, the bijection round trip, the solution index and the prime-sum flag.
/// Without an explicit bound the record's own smoothness value is used.
Verdict verify_record(const TwinRecord& rec, const std::optional<SmoothnessBound>& bound = std::nullopt);

}  // namespace twinsmooth::cli
