#pragma once

#include <stdexcept>
#include <string>

namespace segway {

// Error taxonomy for the whole library. Every throwing operation documents
// which of these it can raise; nothing else escapes the public headers.
enum class ErrorCode {
    InvalidArgument,     // precondition violated by the caller
    SingularMatrix,      // pivot below tolerance or residual check failed
    NoConvergence,       // iterative root refinement missed its residual bound
    Uncontrollable,      // controllability matrix rank-deficient
    VerificationFailed,  // synthesized gains do not reproduce the requested poles
    NonFinite,           // NaN/Inf produced where a finite value is required
    IoError,             // file could not be opened or written
    ConfigError,         // config file or key/value rejected
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void raise(ErrorCode code, const std::string& message) {
    throw Error(code, message);
}

}  // namespace segway
