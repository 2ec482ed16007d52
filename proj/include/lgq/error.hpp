#pragma once

#include <stdexcept>
#include <string>

namespace lgq {

/// Error codes carried by lgq::Error. Each operation documents which of
/// these it can raise.
enum class ErrorCode {
    NON_ORTHONORMAL,
    WRONG_ORIENTATION,
    TIME_REVERSING,
    NOT_UNIT_SPHERE,
    NOT_ON_QUADRIC,
    NOT_ORTHONORMAL,
    DEGENERATE_PAIR,
    DEGENERATE_METRIC,
    A_ON_QUADRIC,
    OUT_OF_DOMAIN,
    INDETERMINATE,
    POLE_HIT,
    PERIOD_OBSTRUCTION,
    FAMILY_PRECONDITION_FAILED,
    UNKNOWN_EXAMPLE,
    CONTOUR_THROUGH_ZERO,
    NOT_ISOLATED,
    DEGENERATE_NONDISCRETE,
    BUDGET_EXCEEDED,
    NONCOPRIME,
    PARSE_ERROR,
    DEGENERATE_INPUT,
};

const char* to_string(ErrorCode c);

class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}
    ErrorCode code() const { return code_; }

  private:
    ErrorCode code_;
};

inline const char* to_string(ErrorCode c) {
    switch (c) {
        case ErrorCode::NON_ORTHONORMAL: return "NON_ORTHONORMAL";
        case ErrorCode::WRONG_ORIENTATION: return "WRONG_ORIENTATION";
        case ErrorCode::TIME_REVERSING: return "TIME_REVERSING";
        case ErrorCode::NOT_UNIT_SPHERE: return "NOT_UNIT_SPHERE";
        case ErrorCode::NOT_ON_QUADRIC: return "NOT_ON_QUADRIC";
        case ErrorCode::NOT_ORTHONORMAL: return "NOT_ORTHONORMAL";
        case ErrorCode::DEGENERATE_PAIR: return "DEGENERATE_PAIR";
        case ErrorCode::DEGENERATE_METRIC: return "DEGENERATE_METRIC";
        case ErrorCode::A_ON_QUADRIC: return "A_ON_QUADRIC";
        case ErrorCode::OUT_OF_DOMAIN: return "OUT_OF_DOMAIN";
        case ErrorCode::INDETERMINATE: return "INDETERMINATE";
        case ErrorCode::POLE_HIT: return "POLE_HIT";
        case ErrorCode::PERIOD_OBSTRUCTION: return "PERIOD_OBSTRUCTION";
        case ErrorCode::FAMILY_PRECONDITION_FAILED: return "FAMILY_PRECONDITION_FAILED";
        case ErrorCode::UNKNOWN_EXAMPLE: return "UNKNOWN_EXAMPLE";
        case ErrorCode::CONTOUR_THROUGH_ZERO: return "CONTOUR_THROUGH_ZERO";
        case ErrorCode::NOT_ISOLATED: return "NOT_ISOLATED";
        case ErrorCode::DEGENERATE_NONDISCRETE: return "DEGENERATE_NONDISCRETE";
        case ErrorCode::BUDGET_EXCEEDED: return "BUDGET_EXCEEDED";
        case ErrorCode::NONCOPRIME: return "NONCOPRIME";
        case ErrorCode::PARSE_ERROR: return "PARSE_ERROR";
        case ErrorCode::DEGENERATE_INPUT: return "DEGENERATE_INPUT";
    }
    return "UNKNOWN";
}

} // namespace lgq
