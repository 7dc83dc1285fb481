/*
 * (C) Copyright 2026 fracwave developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */

#ifndef FRACWAVE_ERRORS_HPP
#define FRACWAVE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace fracwave {

// Quadrature or series evaluation failed to reach the requested tolerance.
class AccuracyError : public std::runtime_error {
  public:
    AccuracyError(const std::string& msg, double achieved)
        : std::runtime_error(msg), achieved_tol(achieved) {}
    double achieved_tol;
};

// Operation invoked outside the regime it supports (e.g. k' for alpha <= 1).
class UnsupportedError : public std::runtime_error {
  public:
    explicit UnsupportedError(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed input samples (non-finite values, mismatched sizes).
class DataError : public std::invalid_argument {
  public:
    explicit DataError(const std::string& msg) : std::invalid_argument(msg) {}
};

class FitDomainError : public std::invalid_argument {
  public:
    explicit FitDomainError(const std::string& msg) : std::invalid_argument(msg) {}
};

}  // namespace fracwave

#endif
