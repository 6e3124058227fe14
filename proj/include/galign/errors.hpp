#pragma once

#include <stdexcept>
#include <string>

namespace galign {

/// Base class for all galign errors.
class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid argument to an operation (size mismatch, out-of-range vertex, ...).
class argument_error : public error {
public:
    using error::error;
};

/// Invalid configuration (e.g. a noise level violating the p_add bound).
class config_error : public error {
public:
    using error::error;
};

/// Malformed input file; message carries the offending line number.
class parse_error : public error {
public:
    using error::error;
};

/// A loaded object violates a type invariant.
class validation_error : public error {
public:
    using error::error;
};

/// Numeric failure (non-finite value, no convergence).
class numeric_error : public error {
public:
    using error::error;
};

/// Filesystem failure.
class io_error : public error {
public:
    using error::error;
};

} // namespace galign
