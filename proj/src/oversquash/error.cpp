#include "oversquash/error.hpp"

namespace oversquash {

const char* error_code_name(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::SelfLoop: return "SelfLoop";
        case ErrorCode::DuplicateEdge: return "DuplicateEdge";
        case ErrorCode::Disconnected: return "Disconnected";
        case ErrorCode::NodeOutOfRange: return "NodeOutOfRange";
        case ErrorCode::EmptyGraph: return "EmptyGraph";
        case ErrorCode::TooLarge: return "TooLarge";
        case ErrorCode::InvalidDistance: return "InvalidDistance";
        case ErrorCode::NegativeCoefficient: return "NegativeCoefficient";
        case ErrorCode::NotSymmetric: return "NotSymmetric";
        case ErrorCode::NoConvergence: return "NoConvergence";
        case ErrorCode::SingularSystem: return "SingularSystem";
        case ErrorCode::SameNode: return "SameNode";
        case ErrorCode::ShapeMismatch: return "ShapeMismatch";
        case ErrorCode::DistanceMismatch: return "DistanceMismatch";
        case ErrorCode::ModePreconditionViolated: return "ModePreconditionViolated";
        case ErrorCode::BipartiteGraph: return "BipartiteGraph";
        case ErrorCode::EdgeAlreadyPresent: return "EdgeAlreadyPresent";
        case ErrorCode::BudgetExceeded: return "BudgetExceeded";
        case ErrorCode::DivergedLoss: return "DivergedLoss";
        case ErrorCode::InsufficientGraphs: return "InsufficientGraphs";
        case ErrorCode::EmptyVector: return "EmptyVector";
        case ErrorCode::Overflow: return "Overflow";
        case ErrorCode::Io: return "Io";
        case ErrorCode::Parse: return "Parse";
    }
    return "Unknown";
}

bool is_numerical(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::NoConvergence:
        case ErrorCode::SingularSystem:
        case ErrorCode::DivergedLoss:
        case ErrorCode::Overflow:
            return true;
        default:
            return false;
    }
}

}  // namespace oversquash
