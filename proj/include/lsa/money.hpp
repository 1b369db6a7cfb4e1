#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace lsa {

/// Monetary amount in integer US cents. All revenue arithmetic stays exact.
struct Cents {
    std::int64_t value = 0;

    static constexpr Cents from_dollars(std::int64_t dollars) { return Cents{dollars * 100}; }

    constexpr double dollars() const { return static_cast<double>(value) / 100.0; }

    friend constexpr Cents operator+(Cents a, Cents b) { return Cents{a.value + b.value}; }
    friend constexpr Cents operator-(Cents a, Cents b) { return Cents{a.value - b.value}; }
    friend constexpr Cents operator*(std::int64_t n, Cents c) { return Cents{n * c.value}; }
    friend constexpr Cents operator*(Cents c, std::int64_t n) { return Cents{n * c.value}; }
    Cents& operator+=(Cents o) {
        value += o.value;
        return *this;
    }

    friend constexpr auto operator<=>(Cents, Cents) = default;
};

/// Renders numerator/denominator rounded half away from zero to `decimals`
/// fractional digits, using integer arithmetic only.
std::string format_ratio(std::int64_t numerator, std::int64_t denominator, int decimals);

/// Fixed-point rendering of a double ("%.Nf").
std::string format_fixed(double value, int decimals);

}  // namespace lsa
