// error.hpp: error codes shared by every crc module

#pragma once

#include <stdexcept>
#include <string>

namespace crc {

enum class ErrorCode {
    ShapeMismatch,
    NotHermitian,
    InconsistentSpan,
    BadDimension,
    DimensionBudgetExceeded,
    DegenerateAngle,
    OutOfRange,
    RankMismatch,
    LiftCollapse,
    UnknownBlock,
    NotDensity,
    BlockLeakage,
    ParseError,
    IoError,
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace crc
