#pragma once

#include <stdexcept>
#include <string>

namespace walkocc {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Step-law validation failures.
class NegativeProbabilityError : public Error { public: using Error::Error; };
class MassError : public Error { public: using Error::Error; };
class MeanError : public Error { public: using Error::Error; };
class PeriodicError : public Error { public: using Error::Error; };
class SublatticeError : public Error { public: using Error::Error; };

/// A requested computation exceeds a configured table/length cap.
class ResourceError : public Error { public: using Error::Error; };

/// Argument outside an operation's documented domain.
class DomainError : public Error { public: using Error::Error; };

/// Roundoff exceeded the tolerance that separates noise from bugs.
class NumericalError : public Error { public: using Error::Error; };

/// Adaptive quadrature failed to reach its target accuracy.
class QuadratureError : public Error { public: using Error::Error; };

/// Bad study configuration (file or programmatic).
class ConfigError : public Error { public: using Error::Error; };

/// Malformed input file (CSV, walk file, ...).
class ParseError : public Error { public: using Error::Error; };

} // namespace walkocc
