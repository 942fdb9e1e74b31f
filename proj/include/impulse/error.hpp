#pragma once

#include <stdexcept>
#include <string>

namespace impulse {

/// Raised for out-of-range row/column coordinates.
class CoordinateError : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

/// Raised when two rasters that must agree in size do not.
class ShapeError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised for invalid detector, noise or pipeline parameters. `field()` names
/// the offending parameter (e.g. "d", "schedule") so front ends can report it.
class ConfigError : public std::invalid_argument {
public:
    ConfigError(std::string field, const std::string& message)
        : std::invalid_argument(message), field_(std::move(field)) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

/// Raised by the image codecs.
class IoError : public std::runtime_error {
public:
    enum class Kind { Read, Write };

    IoError(Kind kind, const std::string& message) : std::runtime_error(message), kind_(kind) {}

    Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

}  // namespace impulse
