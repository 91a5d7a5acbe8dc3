#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace csrc {

using index_t = std::int32_t;
using count_t = std::int64_t;

/// Thrown on invalid inputs (bad dimensions, asymmetric matrices where
/// symmetry is required, malformed files).
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

using Vector = std::vector<double>;

}  // namespace csrc
