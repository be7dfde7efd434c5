#pragma once

#include <compare>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace pgt {

using BigInt = boost::multiprecision::cpp_int;

/// Parses a non-negative decimal integer ("0", "42", ...). Throws
/// std::invalid_argument on anything else, including signs and whitespace.
BigInt parse_decimal(std::string_view text);

std::string to_decimal(const BigInt& value);

/// Edge capacity: a non-negative arbitrary-precision integer or infinity.
class Weight {
 public:
  Weight() = default;
  Weight(BigInt value);  // NOLINT: implicit on purpose, weights are numbers
  Weight(long long value) : Weight(BigInt(value)) {}  // NOLINT

  static Weight infinity();
  /// Accepts a decimal string or "inf".
  static Weight parse(std::string_view text);

  bool is_infinite() const noexcept { return !value_.has_value(); }
  bool is_finite() const noexcept { return value_.has_value(); }
  bool is_zero() const noexcept { return is_finite() && value_->is_zero(); }

  /// Precondition: is_finite().
  const BigInt& value() const;

  std::string to_string() const;

  Weight& operator+=(const Weight& other);
  friend Weight operator+(Weight lhs, const Weight& rhs) { return lhs += rhs; }

  /// Scaling by a repetition count. inf * anything = inf (including 0,
  /// parameters are positive so that case never arises in practice).
  Weight scaled(const BigInt& factor) const;

  friend bool operator==(const Weight& a, const Weight& b) = default;
  friend std::strong_ordering operator<=>(const Weight& a, const Weight& b);

 private:
  std::optional<BigInt> value_ = BigInt(0);
};

std::ostream& operator<<(std::ostream& os, const Weight& w);

}  // namespace pgt
