#include "crc/error.hpp"
#include "crc/half_integer.hpp"

#include <charconv>

namespace crc {

const char* to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::ShapeMismatch: return "ShapeMismatch";
        case ErrorCode::NotHermitian: return "NotHermitian";
        case ErrorCode::InconsistentSpan: return "InconsistentSpan";
        case ErrorCode::BadDimension: return "BadDimension";
        case ErrorCode::DimensionBudgetExceeded: return "DimensionBudgetExceeded";
        case ErrorCode::DegenerateAngle: return "DegenerateAngle";
        case ErrorCode::OutOfRange: return "OutOfRange";
        case ErrorCode::RankMismatch: return "RankMismatch";
        case ErrorCode::LiftCollapse: return "LiftCollapse";
        case ErrorCode::UnknownBlock: return "UnknownBlock";
        case ErrorCode::NotDensity: return "NotDensity";
        case ErrorCode::BlockLeakage: return "BlockLeakage";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::IoError: return "IoError";
    }
    return "Unknown";
}

namespace {

int parse_int(std::string_view text, std::string_view whole) {
    int value = 0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    if (!text.empty() && *first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last || first == last) {
        throw Error(ErrorCode::ParseError, "not a half-integer: '" + std::string(whole) + "'");
    }
    return value;
}

}  // namespace

HalfInt HalfInt::parse(std::string_view text) {
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) {
        return from_int(parse_int(text, text));
    }
    const int num = parse_int(text.substr(0, slash), text);
    const int den = parse_int(text.substr(slash + 1), text);
    if (den == 1) return from_int(num);
    if (den != 2 || num % 2 == 0) {
        throw Error(ErrorCode::ParseError, "not a half-integer: '" + std::string(text) + "'");
    }
    return from_twice(num);
}

std::string HalfInt::to_string() const {
    if (is_integer()) return std::to_string(twice_ / 2);
    return std::to_string(twice_) + "/2";
}

}  // namespace crc
