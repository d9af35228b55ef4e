#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

#include "greenkernel/geometry.hpp"

namespace greenkernel {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A point lies outside the region an operation accepts.
class DomainError : public Error {
public:
    using Error::Error;
};

/// A derivative (or operator) was requested that the function cannot supply.
class UnsupportedFunctionError : public Error {
public:
    using Error::Error;
};

/// Malformed user input: duplicate sites, unknown names, bad CSV.
class InputError : public Error {
public:
    using Error::Error;
};

/// Quadrature hit a non-finite integrand value.
class IntegrandError : public Error {
public:
    IntegrandError(const Point& where, double value);
    [[nodiscard]] const Point& where() const { return where_; }

private:
    Point where_;
};

/// A derivative of a kinked kernel was evaluated exactly on its diagonal.
class KinkError : public Error {
public:
    using Error::Error;
};

/// Gram-Schmidt met a candidate whose projected B-norm vanished.
class DegeneracyError : public Error {
public:
    DegeneracyError(std::size_t index, double norm);
    [[nodiscard]] std::size_t index() const { return index_; }

private:
    std::size_t index_;
};

class DecompositionError : public Error {
public:
    using Error::Error;
};

class SolverError : public Error {
public:
    using Error::Error;
};

class PreconditionError : public Error {
public:
    using Error::Error;
};

}  // namespace greenkernel
