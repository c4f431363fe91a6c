#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace flatfront {

/// Root of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid user input: configuration files, expressions, Weierstrass data.
/// The CLI maps these to exit status 2.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// A numerical precondition or invariant failed. The CLI maps these to exit status 3.
class NumericalError : public Error {
public:
    using Error::Error;
};

class HermitianError : public NumericalError {
public:
    HermitianError(const std::string& what, double asymmetry)
        : NumericalError(what), asymmetry_(asymmetry) {}
    double asymmetry() const noexcept { return asymmetry_; }

private:
    double asymmetry_;
};

class TagError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class SingularPointError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// Pole or branch-cut proximity while evaluating an expression.
class EvaluationError : public NumericalError {
public:
    EvaluationError(const std::string& what, std::complex<double> where)
        : NumericalError(what), where_(where) {}
    std::complex<double> where() const noexcept { return where_; }

private:
    std::complex<double> where_;
};

class IntegrationError : public NumericalError {
public:
    IntegrationError(const std::string& what, std::complex<double> worst)
        : NumericalError(what), worst_(worst) {}
    std::complex<double> worst_point() const noexcept { return worst_; }

private:
    std::complex<double> worst_;
};

class PathError : public NumericalError {
public:
    PathError(const std::string& what, std::complex<double> where)
        : NumericalError(what), where_(where) {}
    std::complex<double> where() const noexcept { return where_; }

private:
    std::complex<double> where_;
};

class BranchError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class SignatureError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class StencilError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class InsufficientSamplesError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class MixedClassificationError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

}  // namespace flatfront
