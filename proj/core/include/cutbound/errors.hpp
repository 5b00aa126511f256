#pragma once

#include <stdexcept>
#include <string>

namespace cutbound {

/// Base class for all recoverable errors raised by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Model parameters cannot produce any graph (e.g. regular with d >= n).
class InfeasibleModelError : public Error {
public:
    using Error::Error;
};

/// The connectivity rejection-resampling loop hit its retry bound.
class ConnectivityExhaustedError : public Error {
public:
    using Error::Error;
};

/// Malformed text input; carries a 1-based line number when known.
class ParseError : public Error {
public:
    ParseError(const std::string& msg, long line = 0) : Error(msg), line_(line) {}
    long line() const { return line_; }

private:
    long line_;
};

class SelfLoopError : public Error {
public:
    using Error::Error;
};

/// Instance exceeds the statevector ceiling (n > 24).
class TooLargeError : public Error {
public:
    using Error::Error;
};

class LengthMismatchError : public Error {
public:
    using Error::Error;
};

class NoEdgesError : public Error {
public:
    using Error::Error;
};

class InvalidParamsError : public Error {
public:
    using Error::Error;
};

class InvalidInitError : public Error {
public:
    using Error::Error;
};

class MissingColumnError : public Error {
public:
    using Error::Error;
};

class NoViolationsError : public Error {
public:
    using Error::Error;
};

class UndefinedFeatureError : public Error {
public:
    using Error::Error;
};

} // namespace cutbound
