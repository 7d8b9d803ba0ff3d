#pragma once

#include <stdexcept>
#include <string>

namespace gvar {

// Every error thrown by this library derives from Error, so callers that do
// not care about the taxonomy can catch one type.  The subclasses exist
// because the CLI maps them onto distinct exit codes (see tools/):
//
//   ConfigError / DomainError / RangeError / ContractError / SingularFitError  -> 2
//   IngestError / IoError                                                      -> 3
//   InsufficientHistoryError                                                   -> 4

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid configuration: bad option values, malformed config files,
/// numerically unstable grid settings.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// A mathematical-domain violation: probabilities outside [0,1], non-finite
/// inputs, sigma ordering violations, and similar.
class DomainError : public Error {
public:
    using Error::Error;
};

/// A value outside the region where a numerical result is trustworthy,
/// e.g. evaluating a PDE grid beyond its spatial domain.
class RangeError : public Error {
public:
    using Error::Error;
};

/// Caller broke an API contract that is not a plain domain issue:
/// misaligned array lengths, empty inputs where data is required.
class ContractError : public Error {
public:
    using Error::Error;
};

/// Least-squares system is singular (degenerate regressor).
class SingularFitError : public Error {
public:
    using Error::Error;
};

/// Malformed input data file; messages carry the 1-based line number.
class IngestError : public Error {
public:
    using Error::Error;
};

/// Filesystem-level failure (missing file, unwritable destination).
class IoError : public Error {
public:
    using Error::Error;
};

/// The requested computation needs more history than the series provides.
/// Messages state the exact minimum required.
class InsufficientHistoryError : public Error {
public:
    using Error::Error;
};

} // namespace gvar
