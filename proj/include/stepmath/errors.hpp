#pragma once

#include <stdexcept>
#include <string>

namespace stepmath {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input that does not match the expected grammar (chain strings, enum names, records).
class ParseError : public Error {
public:
    using Error::Error;
};

/// Operation is not defined for the given inputs (missing reference answer, unknown module combination).
class UnsupportedError : public Error {
public:
    using Error::Error;
};

/// Parsed JSON does not have the shape of the expected verdict.
class ShapeError : public Error {
public:
    using Error::Error;
};

/// No recoverable JSON object in model output. Keeps the raw text for audit.
class ExtractionError : public Error {
public:
    ExtractionError(const std::string& what, std::string raw)
        : Error(what), raw_(std::move(raw)) {}

    const std::string& raw_text() const noexcept { return raw_; }

private:
    std::string raw_;
};

/// Failures while talking to a completion backend.
class BackendError : public Error {
public:
    BackendError(const std::string& what, int retry_count)
        : Error(what), retry_count_(retry_count) {}

    int retry_count() const noexcept { return retry_count_; }

private:
    int retry_count_;
};

class TransportError : public BackendError {
public:
    using BackendError::BackendError;
};

class AuthError : public BackendError {
public:
    using BackendError::BackendError;
};

/// Non-retryable request rejection other than auth (4xx).
class RequestError : public BackendError {
public:
    using BackendError::BackendError;
};

class EmptyResponseError : public BackendError {
public:
    using BackendError::BackendError;
};

/// Mock backend ran out of scripted responses.
class ScriptExhaustedError : public BackendError {
public:
    explicit ScriptExhaustedError(const std::string& what) : BackendError(what, 0) {}
};

}  // namespace stepmath
