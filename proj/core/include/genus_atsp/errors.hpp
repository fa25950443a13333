#ifndef GENUS_ATSP_ERRORS_HPP
#define GENUS_ATSP_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace genus_atsp {

enum class ErrorCode {
    MalformedInstance,
    MalformedRotation,
    NotStronglyConnected,
    NegativeCost,
    ContractLoop,
    EmptyRibbon,
    NoRibbons,
    CutConditionViolated,
    LpInfeasible,
    SolverStall,
    NegativeWeight,
    InvariantBroken,
    InfeasibleCirculation,
    NotEulerian,
    MissingArc,
    TooManyComponents,
    TooLarge,
    DegenerateCut,
    Internal,
};

const char* error_code_name(ErrorCode code);

// Every failure surfaced by the library carries one of the codes above, so
// callers can branch on code() instead of parsing messages.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
          code_(code) {}

    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
    throw Error(code, message);
}

inline void require(bool ok, ErrorCode code, const std::string& message) {
    if (!ok) fail(code, message);
}

}  // namespace genus_atsp

#endif
