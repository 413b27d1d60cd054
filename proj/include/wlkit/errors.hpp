#pragma once

#include <stdexcept>
#include <string>

namespace wlkit {

enum class ErrorCode {
    kMalformedLine,
    kVertexOutOfRange,
    kSelfLoop,
    kInvalidGraph6,
    kInvalidArgument,
    kKZero,
    kKTooSmall,
    kTableMismatch,
    kResourceGuard,
    kOrderMismatch,
    kColorNotDiagonal,
    kNotStable,
    kDiagonalRelation,
    kPreconditionFailed,
    kTheoremViolation,
    kEmptyLabelSet,
    kMinDegree,
    kNotConnected,
    kTwistNotEdge,
    kNTooSmall,
    kBaseMismatch,
};

inline const char* error_code_name(ErrorCode c) {
    switch (c) {
        case ErrorCode::kMalformedLine: return "MALFORMED_LINE";
        case ErrorCode::kVertexOutOfRange: return "VERTEX_OUT_OF_RANGE";
        case ErrorCode::kSelfLoop: return "SELF_LOOP";
        case ErrorCode::kInvalidGraph6: return "INVALID_GRAPH6";
        case ErrorCode::kInvalidArgument: return "INVALID_ARGUMENT";
        case ErrorCode::kKZero: return "K_ZERO";
        case ErrorCode::kKTooSmall: return "K_TOO_SMALL";
        case ErrorCode::kTableMismatch: return "TABLE_MISMATCH";
        case ErrorCode::kResourceGuard: return "RESOURCE_GUARD";
        case ErrorCode::kOrderMismatch: return "ORDER_MISMATCH";
        case ErrorCode::kColorNotDiagonal: return "COLOR_NOT_DIAGONAL";
        case ErrorCode::kNotStable: return "NOT_STABLE";
        case ErrorCode::kDiagonalRelation: return "DIAGONAL_RELATION";
        case ErrorCode::kPreconditionFailed: return "PRECONDITION_FAILED";
        case ErrorCode::kTheoremViolation: return "THEOREM_VIOLATION";
        case ErrorCode::kEmptyLabelSet: return "EMPTY_LABEL_SET";
        case ErrorCode::kMinDegree: return "MIN_DEGREE";
        case ErrorCode::kNotConnected: return "NOT_CONNECTED";
        case ErrorCode::kTwistNotEdge: return "TWIST_NOT_EDGE";
        case ErrorCode::kNTooSmall: return "N_TOO_SMALL";
        case ErrorCode::kBaseMismatch: return "BASE_MISMATCH";
    }
    return "UNKNOWN";
}

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + message), code_(code) {}

    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

}  // namespace wlkit
