#pragma once

#include <stdexcept>
#include <string>

namespace spdc {

// Registry file could not be parsed (malformed syntax, missing keys, wrong types).
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// Registry content violates an invariant (pole inside validity range, missing axis, ...).
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// Wavelength outside a record's declared validity range. Extrapolation is never silent.
class RangeError : public std::out_of_range {
public:
    explicit RangeError(const std::string& what) : std::out_of_range(what) {}
};

// A computation could not produce a result (no root in window, flat trace, ...).
class ComputeError : public std::runtime_error {
public:
    explicit ComputeError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace spdc
