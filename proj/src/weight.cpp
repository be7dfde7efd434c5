#include "pgt/weight.hpp"

#include <stdexcept>

namespace pgt {

BigInt parse_decimal(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("empty integer literal");
  BigInt result = 0;
  for (char c : text) {
    if (c < '0' || c > '9') {
      throw std::invalid_argument("not a non-negative decimal integer: '" +
                                  std::string(text) + "'");
    }
    result *= 10;
    result += c - '0';
  }
  return result;
}

std::string to_decimal(const BigInt& value) { return value.str(); }

Weight::Weight(BigInt value) : value_(std::move(value)) {
  if (*value_ < 0) throw std::invalid_argument("negative weight");
}

Weight Weight::infinity() {
  Weight w;
  w.value_.reset();
  return w;
}

Weight Weight::parse(std::string_view text) {
  if (text == "inf") return infinity();
  return Weight(parse_decimal(text));
}

const BigInt& Weight::value() const {
  if (!value_) throw std::logic_error("value() of infinite weight");
  return *value_;
}

std::string Weight::to_string() const {
  return value_ ? to_decimal(*value_) : std::string("inf");
}

Weight& Weight::operator+=(const Weight& other) {
  if (!value_ || !other.value_) {
    value_.reset();
  } else {
    *value_ += *other.value_;
  }
  return *this;
}

Weight Weight::scaled(const BigInt& factor) const {
  if (!value_) return infinity();
  return Weight(*value_ * factor);
}

std::strong_ordering operator<=>(const Weight& a, const Weight& b) {
  if (a.is_infinite() || b.is_infinite()) {
    return a.is_infinite() <=> b.is_infinite();
  }
  if (*a.value_ < *b.value_) return std::strong_ordering::less;
  if (*a.value_ > *b.value_) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::ostream& operator<<(std::ostream& os, const Weight& w) {
  return os << w.to_string();
}

}  // namespace pgt
