#pragma once

#include <stdexcept>
#include <string>

namespace otreg {

// Root of every error the library raises.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A cost or field returned NaN/Inf at a point it was asked to evaluate.
class NonFiniteSample : public Error {
public:
    using Error::Error;
};

// The query point lies outside the region where a cost (or chart) is defined.
class DomainError : public Error {
public:
    using Error::Error;
};

class CutLocus : public DomainError {
public:
    using DomainError::DomainError;
};

class OutOfChart : public DomainError {
public:
    using DomainError::DomainError;
};

class SingularMatrix : public Error {
public:
    using Error::Error;
};

class NoConvergence : public Error {
public:
    NoConvergence(int iterations, double last_residual, const std::string& what)
        : Error(what), iterations_(iterations), last_residual_(last_residual) {}

    int iterations() const noexcept { return iterations_; }
    double last_residual() const noexcept { return last_residual_; }

private:
    int iterations_;
    double last_residual_;
};

class UnknownCost : public Error {
public:
    using Error::Error;
};

class BadParam : public Error {
public:
    using Error::Error;
};

// A2 fails at the requested base pair.
class SingularBasePair : public Error {
public:
    using Error::Error;
};

class OrthogonalityError : public Error {
public:
    using Error::Error;
};

class InconclusiveError : public Error {
public:
    using Error::Error;
};

// Malformed run configuration or sample plan.
class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace otreg
