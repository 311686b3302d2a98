#pragma once

#include <stdexcept>
#include <string>

namespace tfd {

// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed or inconsistent configuration input.
class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& what) : Error(what) {}
};

// Dimension/index mismatches and basis-size overflow.
class DimensionError : public Error {
public:
    explicit DimensionError(const std::string& what) : Error(what) {}
};

// A requested computation is not supported (e.g. fermionic loop kernels).
class UnsupportedError : public Error {
public:
    explicit UnsupportedError(const std::string& what) : Error(what) {}
};

// Numerical failure: step-size underflow, non-convergent root solve, ...
class NumericsError : public Error {
public:
    explicit NumericsError(const std::string& what) : Error(what) {}
};

}  // namespace tfd
