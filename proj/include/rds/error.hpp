#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rds {

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input: bad file contents, out-of-range vertex ids, mismatched lengths.
class InputError : public Error {
public:
    using Error::Error;
};

/// Invalid model or estimator parameters.
class ParameterError : public Error {
public:
    using Error::Error;
};

/// The graph lacks a property an operation requires (e.g. strong connectivity).
class StructuralError : public Error {
public:
    using Error::Error;
};

/// A measure is undefined on the given input (e.g. directedness of an edgeless graph).
class UndefinedMeasureError : public Error {
public:
    using Error::Error;
};

class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& what, std::size_t iterations, double residual)
        : Error(what), iterations_(iterations), residual_(residual) {}

    std::size_t iterations() const noexcept { return iterations_; }
    double residual() const noexcept { return residual_; }

private:
    std::size_t iterations_;
    double residual_;
};

class GenerationError : public Error {
public:
    GenerationError(const std::string& what, std::size_t attempts)
        : Error(what), attempts_(attempts) {}

    std::size_t attempts() const noexcept { return attempts_; }

private:
    std::size_t attempts_;
};

class AllocationError : public Error {
public:
    using Error::Error;
};

class NumericDomainError : public Error {
public:
    using Error::Error;
};

/// A sampled vertex has no entry in a selection-probability estimate.
class CoverageError : public Error {
public:
    using Error::Error;
};

/// The moment estimator for alpha has a zero denominator (m == 2 * sum).
class DegenerateEstimateError : public Error {
public:
    DegenerateEstimateError(const std::string& what, double revisits, double inverse_sum)
        : Error(what), revisits_(revisits), inverse_sum_(inverse_sum) {}

    double revisits() const noexcept { return revisits_; }
    double inverse_sum() const noexcept { return inverse_sum_; }

private:
    double revisits_;
    double inverse_sum_;
};

}  // namespace rds
