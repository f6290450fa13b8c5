#include "dsc/error.hpp"

namespace dsc {

std::string_view error_kind_name(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::InvalidArgument: return "InvalidArgument";
        case ErrorKind::SpheroidNonConvergence: return "SpheroidNonConvergence";
        case ErrorKind::UnsupportedManifold: return "UnsupportedManifold";
        case ErrorKind::Disconnected: return "Disconnected";
        case ErrorKind::NoConnectedLength: return "NoConnectedLength";
        case ErrorKind::EmptyInput: return "EmptyInput";
        case ErrorKind::TriangleInequalityViolated: return "TriangleInequalityViolated";
        case ErrorKind::RootNotFound: return "RootNotFound";
        case ErrorKind::NoCandidate: return "NoCandidate";
        case ErrorKind::TooFewAccepted: return "TooFewAccepted";
        case ErrorKind::DegenerateFit: return "DegenerateFit";
        case ErrorKind::LevelTooLarge: return "LevelTooLarge";
        case ErrorKind::SamplingStalled: return "SamplingStalled";
        case ErrorKind::NonPositiveCurvature: return "NonPositiveCurvature";
        case ErrorKind::InternalError: return "InternalError";
        case ErrorKind::Io: return "Io";
    }
    return "Unknown";
}

} // namespace dsc
