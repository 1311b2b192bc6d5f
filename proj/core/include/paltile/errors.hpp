#pragma once

#include <stdexcept>
#include <string>

namespace paltile {

// Malformed or inconsistent input data (files, shapes, parameter ranges).
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

// Non-finite values or other breakdowns during optimization.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace paltile
