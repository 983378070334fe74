#pragma once

#include <stdexcept>
#include <string>

namespace sbgd {

/// Base class for every error raised by this library.
class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A value passed to an operation violates its domain (q <= 0, J = 0, ...).
class param_error : public error {
public:
    using error::error;
};

/// The swarm is in a state the operation cannot work with (no active agents,
/// zero total mass, fewer than two active agents, ...).
class invalid_swarm_error : public error {
public:
    using error::error;
};

/// Backtracking exhausted its shrink budget, or an exact Lipschitz bound was
/// contradicted by the accepted step. Signals a non-smooth or mis-scaled
/// objective.
class line_search_error : public error {
public:
    using error::error;
};

/// A config file or CLI invocation is malformed; the message names the field.
class config_error : public error {
public:
    using error::error;
};

/// A file could not be read or written.
class io_error : public error {
public:
    using error::error;
};

/// A request would exceed a hard resource cap (oracle grid too large).
class resource_error : public error {
public:
    using error::error;
};

} // namespace sbgd
