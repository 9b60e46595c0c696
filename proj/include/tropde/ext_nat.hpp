#pragma once

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>

#include "tropde/errors.hpp"

namespace tropde {

/// A non-negative integer or infinity: the tropical value domain.
///
/// Infinity is absorbing under addition and the identity of min. Sums of
/// finite values are overflow-checked and throw OverflowError instead of
/// wrapping.
class ExtNat {
public:
    constexpr ExtNat() noexcept = default;
    constexpr ExtNat(std::uint64_t value) noexcept : value_(value) {}  // NOLINT(implicit)

    static constexpr ExtNat infinity() noexcept {
        ExtNat x;
        x.infinite_ = true;
        return x;
    }

    constexpr bool is_infinite() const noexcept { return infinite_; }
    constexpr bool is_finite() const noexcept { return !infinite_; }

    std::uint64_t value() const {
        if (infinite_) throw ContractError("value() called on infinity");
        return value_;
    }

    friend constexpr bool operator==(const ExtNat&, const ExtNat&) = default;

    friend constexpr std::strong_ordering operator<=>(const ExtNat& a, const ExtNat& b) noexcept {
        if (a.infinite_ || b.infinite_) return a.infinite_ <=> b.infinite_;
        return a.value_ <=> b.value_;
    }

    friend ExtNat operator+(const ExtNat& a, const ExtNat& b) {
        if (a.infinite_ || b.infinite_) return infinity();
        std::uint64_t sum = 0;
        if (__builtin_add_overflow(a.value_, b.value_, &sum)) {
            throw OverflowError("ExtNat addition overflow");
        }
        return ExtNat(sum);
    }

    ExtNat& operator+=(const ExtNat& other) { return *this = *this + other; }

    std::string to_string() const { return infinite_ ? "inf" : std::to_string(value_); }

    friend std::ostream& operator<<(std::ostream& os, const ExtNat& x) { return os << x.to_string(); }

private:
    // value_ is kept at 0 for infinity so defaulted equality is structural.
    std::uint64_t value_ = 0;
    bool infinite_ = false;
};

inline constexpr ExtNat kInfinity = ExtNat::infinity();

inline ExtNat min(const ExtNat& a, const ExtNat& b) noexcept { return b < a ? b : a; }

/// a - b for finite a >= b.
inline std::uint64_t finite_difference(const ExtNat& a, const ExtNat& b) {
    if (a.is_infinite() || b.is_infinite() || a < b) throw ContractError("finite_difference outside domain");
    return a.value() - b.value();
}

namespace checked {

inline std::uint64_t add(std::uint64_t a, std::uint64_t b) {
    std::uint64_t out = 0;
    if (__builtin_add_overflow(a, b, &out)) throw OverflowError("integer addition overflow");
    return out;
}

inline std::uint64_t mul(std::uint64_t a, std::uint64_t b) {
    std::uint64_t out = 0;
    if (__builtin_mul_overflow(a, b, &out)) throw OverflowError("integer multiplication overflow");
    return out;
}

}  // namespace checked

}  // namespace tropde
