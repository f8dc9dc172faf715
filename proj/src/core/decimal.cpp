#include "tfts/core/decimal.hpp"

#include <array>
#include <cctype>
#include <cstdlib>

namespace tfts {

namespace {

constexpr std::array<std::int64_t, 19> kPow10 = {
    1LL,
    10LL,
    100LL,
    1000LL,
    10000LL,
    100000LL,
    1000000LL,
    10000000LL,
    100000000LL,
    1000000000LL,
    10000000000LL,
    100000000000LL,
    1000000000000LL,
    10000000000000LL,
    100000000000000LL,
    1000000000000000LL,
    10000000000000000LL,
    100000000000000000LL,
    1000000000000000000LL,
};

std::int64_t pow10(int p) { return kPow10.at(static_cast<std::size_t>(p)); }

}  // namespace

std::int64_t rational_round_haz(std::int64_t num, std::int64_t den) {
  if (den <= 0) throw std::invalid_argument("rational_round_haz: den must be > 0");
  // Integer division in C++ truncates toward zero, so adding half the
  // denominator with the numerator's sign implements half-away-from-zero.
  __int128 n2 = static_cast<__int128>(num) * 2;
  __int128 adj = num >= 0 ? den : -den;
  __int128 q = (n2 + adj) / (static_cast<__int128>(den) * 2);
  return static_cast<std::int64_t>(q);
}

Decimal Decimal::parse(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty decimal");
  std::size_t i = 0;
  bool neg = false;
  if (text[i] == '-' || text[i] == '+') {
    neg = text[i] == '-';
    ++i;
  }
  std::int64_t units = 0;
  int places = 0;
  bool seen_digit = false;
  bool in_frac = false;
  for (; i < text.size(); ++i) {
    char c = text[i];
    if (c == '.') {
      if (in_frac) throw std::invalid_argument("malformed decimal: " + text);
      in_frac = true;
      continue;
    }
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      throw std::invalid_argument("malformed decimal: " + text);
    }
    seen_digit = true;
    if (units > (INT64_MAX - 9) / 10) throw std::out_of_range("decimal overflow: " + text);
    units = units * 10 + (c - '0');
    if (in_frac) ++places;
  }
  if (!seen_digit || places > kMaxPlaces) {
    throw std::invalid_argument("malformed decimal: " + text);
  }
  return Decimal(neg ? -units : units, places);
}

std::string Decimal::to_string() const {
  std::int64_t mag = units_ < 0 ? -units_ : units_;
  std::string digits = std::to_string(mag);
  std::string out;
  if (units_ < 0) out.push_back('-');
  if (places_ == 0) {
    out += digits;
    return out;
  }
  if (static_cast<int>(digits.size()) <= places_) {
    digits.insert(0, static_cast<std::size_t>(places_) + 1 - digits.size(), '0');
  }
  out += digits.substr(0, digits.size() - static_cast<std::size_t>(places_));
  out.push_back('.');
  out += digits.substr(digits.size() - static_cast<std::size_t>(places_));
  return out;
}

Decimal Decimal::rescale(int new_places) const {
  if (new_places < places_) throw std::invalid_argument("rescale would lose digits");
  __int128 scaled = static_cast<__int128>(units_) * pow10(new_places - places_);
  if (scaled > INT64_MAX || scaled < INT64_MIN) throw std::out_of_range("rescale overflow");
  return Decimal(static_cast<std::int64_t>(scaled), new_places);
}

Decimal Decimal::round_half_away(int new_places) const {
  if (new_places >= places_) return rescale(new_places);
  std::int64_t den = pow10(places_ - new_places);
  return Decimal(rational_round_haz(units_, den), new_places);
}

Decimal Decimal::plus(const Decimal& other) const {
  int p = places_ > other.places_ ? places_ : other.places_;
  Decimal a = rescale(p);
  Decimal b = other.rescale(p);
  return Decimal(a.units_ + b.units_, p);
}

Decimal Decimal::times_int(std::int64_t k) const {
  __int128 v = static_cast<__int128>(units_) * k;
  if (v > INT64_MAX || v < INT64_MIN) throw std::out_of_range("times_int overflow");
  return Decimal(static_cast<std::int64_t>(v), places_);
}

Decimal Decimal::divided_haz(std::int64_t divisor, int places) const {
  if (divisor <= 0) throw std::invalid_argument("divided_haz: divisor must be > 0");
  if (places >= places_) {
    Decimal wide = rescale(places);
    return Decimal(rational_round_haz(wide.units_, divisor), places);
  }
  // Narrowing target: fold the scale change into the divisor so there is a
  // single rounding step.
  __int128 den = static_cast<__int128>(divisor) * pow10(places_ - places);
  if (den > INT64_MAX) throw std::out_of_range("divided_haz overflow");
  return Decimal(rational_round_haz(units_, static_cast<std::int64_t>(den)), places);
}

double Decimal::to_double() const {
  return static_cast<double>(units_) / static_cast<double>(pow10(places_));
}

std::strong_ordering Decimal::operator<=>(const Decimal& other) const {
  int p = places_ > other.places_ ? places_ : other.places_;
  __int128 a = static_cast<__int128>(units_) * pow10(p - places_);
  __int128 b = static_cast<__int128>(other.units_) * pow10(p - other.places_);
  if (a < b) return std::strong_ordering::less;
  if (a > b) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

}  // namespace tfts
