#pragma once

#include <stdexcept>
#include <string>

namespace otto {

// Input violates a documented invariant (positivity, normalization, ...).
class ValidationError : public std::invalid_argument {
public:
    explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

// Operands have incompatible or unsupported dimensions.
class DimensionError : public std::invalid_argument {
public:
    explicit DimensionError(const std::string& what) : std::invalid_argument(what) {}
};

// Malformed or inconsistent scenario / sweep / grid description.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace otto
