#pragma once

#include <stdexcept>
#include <string>

namespace oversquash {

enum class ErrorCode {
    InvalidArgument,
    SelfLoop,
    DuplicateEdge,
    Disconnected,
    NodeOutOfRange,
    EmptyGraph,
    TooLarge,
    InvalidDistance,
    NegativeCoefficient,
    NotSymmetric,
    NoConvergence,
    SingularSystem,
    SameNode,
    ShapeMismatch,
    DistanceMismatch,
    ModePreconditionViolated,
    BipartiteGraph,
    EdgeAlreadyPresent,
    BudgetExceeded,
    DivergedLoss,
    InsufficientGraphs,
    EmptyVector,
    Overflow,
    Io,
    Parse,
};

const char* error_code_name(ErrorCode code) noexcept;

// Numerical failures map to CLI exit code 3; everything else is a
// validation error (exit code 2).
bool is_numerical(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
    throw Error(code, what);
}

inline void require(bool cond, ErrorCode code, const std::string& what) {
    if (!cond) throw Error(code, what);
}

}  // namespace oversquash
