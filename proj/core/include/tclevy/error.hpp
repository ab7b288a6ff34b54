#pragma once

#include <stdexcept>
#include <string>

namespace tclevy {

/// Base of every error raised by the library. what() is prefixed with the
/// module that raised it, e.g. "time-change: t outside [0, T]".
class Error : public std::runtime_error {
public:
    Error(std::string module, const std::string& message)
        : std::runtime_error(module + ": " + message), module_(std::move(module)) {}

    const std::string& module() const noexcept { return module_; }

private:
    std::string module_;
};

/// An argument lies outside the domain required by an operation.
class DomainError : public Error {
public:
    using Error::Error;
};

/// An iterative procedure (Newton, quadrature) failed to converge.
class ConvergenceError : public Error {
public:
    using Error::Error;
};

/// A safety cap on path length or grid size was exceeded.
class ResourceError : public Error {
public:
    using Error::Error;
};

}  // namespace tclevy
