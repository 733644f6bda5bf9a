#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace attopt {

enum class ErrorCode {
    NotSkew,
    NearPiRotation,
    NoConvergence,
    StepTooLarge,
    SingularMatrix,
    SingularArcSuspected,
    NotConverged,
    ParseError,
    ValidationError,
};

std::string_view to_string(ErrorCode code);

/// Single exception type for the library; the code identifies the failure
/// class, and integration failures carry the step index where they occurred.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message,
          std::optional<std::size_t> step_index = std::nullopt);

    ErrorCode code() const noexcept { return code_; }
    std::optional<std::size_t> step_index() const noexcept { return step_index_; }

    /// Same error re-tagged with the index of the integration step that raised it.
    Error at_step(std::size_t index) const;

private:
    ErrorCode code_;
    std::optional<std::size_t> step_index_;
    std::string bare_message_;
};

}  // namespace attopt
