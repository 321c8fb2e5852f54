#pragma once

#include <stdexcept>
#include <string>

namespace cramer {

/// Base class for all errors thrown by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Shape mismatch: wrong matrix dimensions, wrong point size, etc.
class DimensionError : public Error {
public:
    explicit DimensionError(const std::string& what) : Error(what) {}
};

/// A matrix required to be invertible has determinant zero.
class SingularMatrixError : public Error {
public:
    explicit SingularMatrixError(const std::string& what) : Error(what) {}
};

/// Random sampling exhausted its retry budget.
class SamplingError : public Error {
public:
    explicit SamplingError(const std::string& what) : Error(what) {}
};

/// Two polynomials (or a polynomial and a point) belong to different
/// variable tables.
class TableMismatchError : public Error {
public:
    explicit TableMismatchError(const std::string& what) : Error(what) {}
};

/// Invalid (r, s) or other out-of-range construction parameter.
class ParameterError : public Error {
public:
    explicit ParameterError(const std::string& what) : Error(what) {}
};

/// An operation's stated precondition does not hold for the given input.
class PreconditionError : public Error {
public:
    explicit PreconditionError(const std::string& what) : Error(what) {}
};

/// A point lies outside the domain of the requested chart.
class ChartDomainError : public Error {
public:
    explicit ChartDomainError(const std::string& what) : Error(what) {}
};

/// A one-parameter family has entries with negative powers of the
/// deformation variable, so its limit at zero does not exist.
class LimitError : public Error {
public:
    explicit LimitError(const std::string& what) : Error(what) {}
};

/// Missing or inconsistent run configuration (CLI level).
class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& what) : Error(what) {}
};

} // namespace cramer
