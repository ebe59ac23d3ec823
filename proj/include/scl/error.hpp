#pragma once

#include <stdexcept>
#include <string>

namespace scl {

/// Base class for every error raised by the runtime.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input: bad path, bad citation, schema violation.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// A write arrived out of clock order. Always a loop bug.
class OrderingError : public Error {
public:
    using Error::Error;
};

/// Episode, tool or manifest configuration is unusable.
class ConfigError : public Error {
public:
    using Error::Error;
};

class UnknownEpisodeError : public Error {
public:
    using Error::Error;
};

/// Operation not allowed in the current episode lifecycle state.
class LifecycleError : public Error {
public:
    using Error::Error;
};

/// Trace hash chain or canonical form does not verify.
class TamperError : public Error {
public:
    TamperError(std::string what, long long event_index)
        : Error(std::move(what)), event_index_(event_index) {}

    /// Zero-based line index of the first bad event.
    [[nodiscard]] long long event_index() const noexcept { return event_index_; }

private:
    long long event_index_;
};

}  // namespace scl
