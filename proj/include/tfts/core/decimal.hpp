#pragma once
// Exact fixed-point decimals. A Decimal is units * 10^-places, stored as a
// signed 64-bit integer plus a small place count, so equality, rounding and
// serialization are identical on every platform.

#include <cstdint>
#include <compare>
#include <stdexcept>
#include <string>

namespace tfts {

class Decimal {
public:
  Decimal() = default;
  Decimal(std::int64_t units, int places) : units_(units), places_(places) {
    if (places < 0 || places > kMaxPlaces) {
      throw std::invalid_argument("decimal places out of range");
    }
  }

  static Decimal from_int(std::int64_t v) { return Decimal(v, 0); }

  // Parses "-17", "34.2", "0.0000001". The textual precision is kept.
  static Decimal parse(const std::string& text);

  std::int64_t units() const { return units_; }
  int places() const { return places_; }
  bool negative() const { return units_ < 0; }
  bool is_zero() const { return units_ == 0; }

  // Exact string form, e.g. {342,1} -> "34.2", {-5,1} -> "-0.5".
  std::string to_string() const;

  // Widens to more places (exact). Throws if asked to narrow.
  Decimal rescale(int new_places) const;

  // Rounds half away from zero to the requested number of places.
  Decimal round_half_away(int new_places) const;

  Decimal abs() const { return Decimal(units_ < 0 ? -units_ : units_, places_); }
  Decimal negated() const { return Decimal(-units_, places_); }

  Decimal plus(const Decimal& other) const;
  Decimal minus(const Decimal& other) const { return plus(other.negated()); }
  Decimal times_int(std::int64_t k) const;

  // value / divisor, rounded half away from zero at `places` decimal places.
  Decimal divided_haz(std::int64_t divisor, int places) const;

  double to_double() const;

  std::strong_ordering operator<=>(const Decimal& other) const;
  bool operator==(const Decimal& other) const {
    return (*this <=> other) == std::strong_ordering::equal;
  }

  static constexpr int kMaxPlaces = 14;

private:
  std::int64_t units_ = 0;
  int places_ = 0;
};

// round_half_away_from_zero(num/den) as an integer; den must be positive.
std::int64_t rational_round_haz(std::int64_t num, std::int64_t den);

}  // namespace tfts
