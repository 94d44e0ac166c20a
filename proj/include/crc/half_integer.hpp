// half_integer.hpp: exact half-integer labels stored as twice-values

#pragma once

#include <compare>
#include <string>
#include <string_view>

namespace crc {

/// A value in (1/2)Z, stored as the integer 2x so that labels never go through
/// floating-point comparison.
class HalfInt {
public:
    constexpr HalfInt() = default;

    static constexpr HalfInt from_twice(int twice) noexcept { return HalfInt(twice); }
    static constexpr HalfInt from_int(int value) noexcept { return HalfInt(2 * value); }

    /// Parses "3", "-2", "1/2", "-3/2". Throws Error(ParseError) otherwise.
    static HalfInt parse(std::string_view text);

    constexpr int twice() const noexcept { return twice_; }
    constexpr double value() const noexcept { return 0.5 * twice_; }
    constexpr bool is_integer() const noexcept { return twice_ % 2 == 0; }

    /// "1/2", "-3/2", "2".
    std::string to_string() const;

    constexpr HalfInt operator-() const noexcept { return HalfInt(-twice_); }
    constexpr HalfInt operator+(HalfInt o) const noexcept { return HalfInt(twice_ + o.twice_); }
    constexpr HalfInt operator-(HalfInt o) const noexcept { return HalfInt(twice_ - o.twice_); }
    constexpr HalfInt& operator+=(HalfInt o) noexcept { twice_ += o.twice_; return *this; }

    constexpr auto operator<=>(const HalfInt&) const = default;

private:
    constexpr explicit HalfInt(int twice) noexcept : twice_(twice) {}
    int twice_ = 0;
};

}  // namespace crc
