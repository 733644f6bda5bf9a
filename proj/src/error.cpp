#include "attopt/error.hpp"

namespace attopt {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::NotSkew: return "NotSkew";
        case ErrorCode::NearPiRotation: return "NearPiRotation";
        case ErrorCode::NoConvergence: return "NoConvergence";
        case ErrorCode::StepTooLarge: return "StepTooLarge";
        case ErrorCode::SingularMatrix: return "SingularMatrix";
        case ErrorCode::SingularArcSuspected: return "SingularArcSuspected";
        case ErrorCode::NotConverged: return "NotConverged";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::ValidationError: return "ValidationError";
    }
    return "Unknown";
}

namespace {

std::string format_message(ErrorCode code, const std::string& message,
                           std::optional<std::size_t> step_index) {
    std::string out(to_string(code));
    out += ": ";
    out += message;
    if (step_index) {
        out += " (step ";
        out += std::to_string(*step_index);
        out += ")";
    }
    return out;
}

}  // namespace

Error::Error(ErrorCode code, const std::string& message, std::optional<std::size_t> step_index)
    : std::runtime_error(format_message(code, message, step_index)),
      code_(code),
      step_index_(step_index),
      bare_message_(message) {}

Error Error::at_step(std::size_t index) const { return Error(code_, bare_message_, index); }

}  // namespace attopt
