#pragma once

#include <stdexcept>
#include <string>

namespace twinsmooth {

enum class Errc {
    invalid_argument,
    invalid_bound,
    empty_range,
    coefficient_mismatch,
    invalid_index,
    invalid_triple,
    not_in_twin_set,
    invalid_seed,
    invalid_config,
};

const char* to_string(Errc code) noexcept;

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

}  // namespace twinsmooth
