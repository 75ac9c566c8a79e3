#pragma once

#include <stdexcept>
#include <string>

namespace mfxpf {

// Failure categories, mapped one-to-one onto CLI exit codes.
enum class ErrorKind {
    Parameter,  // invalid arguments or configuration
    Data,       // bad or degenerate input data
    Fit,        // regression could not be performed
    Tolerance,  // a comparison exceeded its configured tolerance
    Model       // model ill-posed (e.g. covariance not PSD)
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

    int exit_code() const noexcept {
        switch (kind_) {
        case ErrorKind::Parameter: return 2;
        case ErrorKind::Data: return 3;
        case ErrorKind::Fit: return 4;
        case ErrorKind::Tolerance: return 5;
        case ErrorKind::Model: return 6;
        }
        return 1;
    }

private:
    ErrorKind kind_;
};

struct ParameterError : Error {
    explicit ParameterError(const std::string& what) : Error(ErrorKind::Parameter, what) {}
};

struct DataError : Error {
    explicit DataError(const std::string& what) : Error(ErrorKind::Data, what) {}
};

struct FitError : Error {
    explicit FitError(const std::string& what) : Error(ErrorKind::Fit, what) {}
};

struct ToleranceError : Error {
    explicit ToleranceError(const std::string& what) : Error(ErrorKind::Tolerance, what) {}
};

struct ModelError : Error {
    explicit ModelError(const std::string& what) : Error(ErrorKind::Model, what) {}
};

} // namespace mfxpf
