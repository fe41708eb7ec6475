#pragma once

#include <cstdint>
#include <compare>
#include <optional>
#include <string>

namespace sigmatree {

/// A positive integer or OMEGA (countably infinite).
///
/// OMEGA absorbs multiplication by any positive value and dominates every
/// finite value in comparisons.
class Multiplicity {
 public:
  static constexpr Multiplicity finite(std::int64_t n) { return Multiplicity(n); }
  static constexpr Multiplicity omega() { return Multiplicity(kOmega); }

  constexpr bool is_omega() const noexcept { return value_ == kOmega; }
  constexpr bool is_finite() const noexcept { return !is_omega(); }

  /// Finite value; OMEGA has none.
  constexpr std::optional<std::int64_t> value() const noexcept {
    if (is_omega()) return std::nullopt;
    return value_;
  }

  /// min(value, cap), with OMEGA counting as infinite.
  constexpr std::int64_t capped(std::int64_t cap) const noexcept {
    return value_ < cap ? value_ : cap;
  }

  /// True when this counts at least `k` items.
  constexpr bool at_least(std::int64_t k) const noexcept { return is_omega() || value_ >= k; }

  friend constexpr Multiplicity operator*(Multiplicity a, Multiplicity b) {
    if (a.is_omega() || b.is_omega()) return omega();
    return finite(a.value_ * b.value_);
  }
  friend constexpr Multiplicity operator+(Multiplicity a, Multiplicity b) {
    if (a.is_omega() || b.is_omega()) return omega();
    return finite(a.value_ + b.value_);
  }

  friend constexpr bool operator==(Multiplicity, Multiplicity) = default;
  friend constexpr auto operator<=>(Multiplicity a, Multiplicity b) { return a.value_ <=> b.value_; }

  std::string to_string() const { return is_omega() ? "omega" : std::to_string(value_); }

 private:
  static constexpr std::int64_t kOmega = INT64_MAX;
  constexpr explicit Multiplicity(std::int64_t v) : value_(v) {}

  std::int64_t value_;
};

}  // namespace sigmatree
