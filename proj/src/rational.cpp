#include "affcone/rational.hpp"

#include "affcone/error.hpp"

#include <cctype>
#include <limits>
#include <ostream>

namespace affcone {

Rational::Rational(BigInt num, BigInt den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_ == 0) throw InputError("rational with zero denominator");
  normalize();
}

void Rational::normalize() {
  if (den_.sign() < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  if (num_ == 0) {
    den_ = 1;
    return;
  }
  BigInt g = boost::multiprecision::gcd(num_, den_);
  if (g != 1) {
    num_ /= g;
    den_ /= g;
  }
}

std::int64_t Rational::to_int64() const {
  if (!is_integer()) throw InputError("expected an integer, got " + to_string(*this));
  if (num_ > std::numeric_limits<std::int64_t>::max() ||
      num_ < std::numeric_limits<std::int64_t>::min())
    throw InputError("integer out of 64-bit range");
  return num_.convert_to<std::int64_t>();
}

Rational Rational::operator-() const {
  Rational r = *this;
  r.num_ = -r.num_;
  return r;
}

Rational& Rational::operator+=(const Rational& o) {
  if (den_ == o.den_) {
    num_ += o.num_;
  } else {
    num_ = num_ * o.den_ + o.num_ * den_;
    den_ *= o.den_;
  }
  normalize();
  return *this;
}

Rational& Rational::operator-=(const Rational& o) {
  if (den_ == o.den_) {
    num_ -= o.num_;
  } else {
    num_ = num_ * o.den_ - o.num_ * den_;
    den_ *= o.den_;
  }
  normalize();
  return *this;
}

Rational& Rational::operator*=(const Rational& o) {
  num_ *= o.num_;
  den_ *= o.den_;
  normalize();
  return *this;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.num_ == 0) throw std::domain_error("rational division by zero");
  num_ *= o.den_;
  den_ *= o.num_;
  normalize();
  return *this;
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  // Denominators are positive, so cross-multiplication preserves order.
  BigInt lhs = a.num_ * b.den_;
  BigInt rhs = b.num_ * a.den_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

std::string to_string(const Rational& r) {
  if (r.is_integer()) return r.num().str();
  return r.num().str() + "/" + r.den().str();
}

namespace {

BigInt parse_integer(std::string_view s, std::string_view whole) {
  std::size_t i = 0;
  bool negative = false;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
    negative = s[i] == '-';
    ++i;
  }
  if (i == s.size()) throw InputError("malformed rational: '" + std::string(whole) + "'");
  BigInt v = 0;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i])))
      throw InputError("malformed rational: '" + std::string(whole) + "'");
    v = v * 10 + (s[i] - '0');
  }
  return negative ? BigInt(-v) : v;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = trim(text);
  auto slash = s.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(s, text));
  BigInt num = parse_integer(trim(s.substr(0, slash)), text);
  BigInt den = parse_integer(trim(s.substr(slash + 1)), text);
  if (den == 0) throw InputError("rational with zero denominator: '" + std::string(text) + "'");
  return {num, den};
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << to_string(r); }

}  // namespace affcone
