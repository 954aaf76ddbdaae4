/// @file errors.hpp
/// @brief Exception types shared by all flowlab modules.
#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace flowlab {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Grid too small for the stencils, or mismatched array lengths.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
public:
    using Error::Error;
};

/// A loop sample needs a masked grid value for interpolation.
class MaskedPathError : public Error {
public:
    MaskedPathError(const std::string& what, std::vector<std::array<double, 2>> samples)
        : Error(what), samples_(std::move(samples)) {}

    const std::vector<std::array<double, 2>>& samples() const noexcept { return samples_; }

private:
    std::vector<std::array<double, 2>> samples_;
};

/// The wave function vanishes at a sampled loop point.
class ZeroOnPathError : public Error {
public:
    using Error::Error;
};

/// Accumulated phase is not close to an integer multiple of 2*pi.
class WindingError : public Error {
public:
    WindingError(const std::string& what, double turns) : Error(what), turns_(turns) {}
    double turns() const noexcept { return turns_; }

private:
    double turns_;
};

class NoNodeError : public Error {
public:
    using Error::Error;
};

class InconsistencyError : public Error {
public:
    using Error::Error;
};

/// Model parameters describe no vortex or no penalty.
class DegenerateModelError : public Error {
public:
    using Error::Error;
};

/// Malformed input file or JSON document.
class FormatError : public Error {
public:
    using Error::Error;
};

}  // namespace flowlab
