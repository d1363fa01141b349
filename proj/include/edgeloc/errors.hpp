#pragma once

#include <stdexcept>
#include <string>

namespace edgeloc {

// Base for everything thrown by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Bad configuration, bad geometry, bad file: the caller's input is wrong.
// CLI maps this to exit code 1.
class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& msg) : Error(msg) {}
};

// The pipeline looked at the data and refused it (no detectable wavefront,
// fit RMSE above threshold, degenerate geometry, ambiguous azimuth, ...).
// Expected outcome on poor data; CLI maps this to exit code 2.
class RejectionError : public Error {
public:
    enum class Kind { NoDetection, LowSnr, FitRmse, Degenerate, Ambiguity, Inconsistency };

    RejectionError(Kind kind, const std::string& msg) : Error(msg), kind_(kind) {}
    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

} // namespace edgeloc
