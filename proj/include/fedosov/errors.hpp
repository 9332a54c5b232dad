#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fedosov {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Mismatched phase-space dimensions, coordinate index out of range, bad form degree.
struct DimensionError : Error {
    using Error::Error;
};

// Division by h requested while the h^0 part is nonzero.
struct DivisionByH : Error {
    using Error::Error;
};

struct ParseError : Error {
    std::size_t position;  // byte offset into the source string

    ParseError(const std::string& what, std::size_t pos)
        : Error(what + " (at offset " + std::to_string(pos) + ")"), position(pos) {}
};

struct ConfigError : Error {
    using Error::Error;
};

}  // namespace fedosov
