#pragma once

#include <Eigen/Core>
#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace affcone {

using BigInt = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                             boost::multiprecision::et_off>;

/// Exact rational number, always kept in lowest terms with a positive
/// denominator. Used as the scalar of every lattice and polynomial type.
class Rational {
 public:
  Rational() = default;
  Rational(int v) : num_(v) {}  // NOLINT(google-explicit-constructor)
  Rational(long v) : num_(v) {}  // NOLINT(google-explicit-constructor)
  Rational(long long v) : num_(v) {}  // NOLINT(google-explicit-constructor)
  explicit Rational(BigInt v) : num_(std::move(v)) {}
  Rational(BigInt num, BigInt den);
  Rational(long long num, long long den) : Rational(BigInt(num), BigInt(den)) {}

  const BigInt& num() const { return num_; }
  const BigInt& den() const { return den_; }

  bool is_integer() const { return den_ == 1; }
  bool is_zero() const { return num_ == 0; }
  int sign() const { return num_.sign(); }

  /// Numerator as int64; throws if the value is not an integer or does not fit.
  std::int64_t to_int64() const;

  Rational operator-() const;
  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

 private:
  void normalize();

  BigInt num_{0};
  BigInt den_{1};
};

Rational abs(const Rational& r);

/// Renders "p/q" in lowest terms, or "p" when the denominator is 1.
std::string to_string(const Rational& r);

/// Accepts "p", "p/q", "-p/q" with optional surrounding whitespace.
/// Throws InputError on malformed text or a zero denominator.
Rational parse_rational(std::string_view text);

std::ostream& operator<<(std::ostream& os, const Rational& r);

}  // namespace affcone

namespace Eigen {

template <>
struct NumTraits<affcone::Rational> : GenericNumTraits<affcone::Rational> {
  using Real = affcone::Rational;
  using NonInteger = affcone::Rational;
  using Literal = affcone::Rational;
  using Nested = affcone::Rational;

  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 6,
    AddCost = 16,
    MulCost = 32
  };

  // Exact arithmetic: no rounding tolerance anywhere.
  static inline Real epsilon() { return 0; }
  static inline Real dummy_precision() { return 0; }
  static inline int digits10() { return 0; }
};

}  // namespace Eigen
