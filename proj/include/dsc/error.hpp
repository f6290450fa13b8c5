#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dsc {

enum class ErrorKind {
    InvalidArgument,
    SpheroidNonConvergence,
    UnsupportedManifold,
    Disconnected,
    NoConnectedLength,
    EmptyInput,
    TriangleInequalityViolated,
    RootNotFound,
    NoCandidate,
    TooFewAccepted,
    DegenerateFit,
    LevelTooLarge,
    SamplingStalled,
    NonPositiveCurvature,
    InternalError,
    Io,
};

std::string_view error_kind_name(ErrorKind kind);

// Single exception type for the library; callers branch on kind().
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

} // namespace dsc
