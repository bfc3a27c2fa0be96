#pragma once

#include <stdexcept>

namespace tvclass {

/// A parameter is outside its documented domain (bad order grid, unknown
/// model id, nonpositive grid size, ...).
class ArgumentError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Input data cannot be used: series too short for the requested orders,
/// constant series, malformed files, empty class cohorts.
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A numerical routine failed beyond its fallbacks: singular population
/// covariance, non-finite intermediates, unsalvageable design matrix.
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The two classes have identical median features, so no threshold can tell
/// them apart; the classifier refuses to guess.
class IndeterminateClassesError : public DataError {
public:
    using DataError::DataError;
};

} // namespace tvclass
