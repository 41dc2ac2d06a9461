#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

namespace fluctuaverse {

/// Exact rational number, always stored in lowest terms with a positive
/// denominator. Arithmetic throws std::overflow_error rather than wrap.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t num, std::int64_t den = 1);  // NOLINT(google-explicit-constructor)

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  bool is_integer() const { return den_ == 1; }
  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  Rational operator-() const;
  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  friend bool operator==(const Rational&, const Rational&) = default;

  /// "3", "-1/2"
  std::string to_string() const;

  /// Accepts "3", "-2", "1/2", "-3/2". Throws std::invalid_argument.
  static Rational parse(std::string_view text);

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

/// Exponent vector over the Gaussian-CGS base dimensions (g, cm, s).
/// Charge is derived: esu = g^1/2 cm^3/2 s^-1.
struct Dimension {
  Rational mass;
  Rational length;
  Rational time;

  static Dimension dimensionless() { return {}; }
  bool is_dimensionless() const { return mass.is_zero() && length.is_zero() && time.is_zero(); }

  Dimension operator*(const Dimension& o) const { return {mass + o.mass, length + o.length, time + o.time}; }
  Dimension operator/(const Dimension& o) const { return {mass - o.mass, length - o.length, time - o.time}; }
  Dimension pow(const Rational& r) const { return {mass * r, length * r, time * r}; }

  friend bool operator==(const Dimension&, const Dimension&) = default;

  /// Canonical text form in the override-file syntax, e.g. "g^1/2 cm^3/2 s^-1".
  /// The dimensionless element renders as the empty string.
  std::string to_string() const;

  /// Inverse of to_string; tokens may appear in any order and repeat.
  /// Throws std::invalid_argument on unknown units or bad exponents.
  static Dimension parse(std::string_view text);
};

namespace dims {
inline const Dimension kNone{};
inline const Dimension kMass{1, 0, 0};
inline const Dimension kLength{0, 1, 0};
inline const Dimension kTime{0, 0, 1};
inline const Dimension kArea{0, 2, 0};
inline const Dimension kInverseArea{0, -2, 0};
inline const Dimension kInverseTime{0, 0, -1};
inline const Dimension kInverseTimeSquared{0, 0, -2};
inline const Dimension kVelocity{0, 1, -1};
inline const Dimension kAcceleration{0, 1, -2};
inline const Dimension kEnergy{1, 2, -2};
inline const Dimension kAction{1, 2, -1};
inline const Dimension kAngularMomentum{1, 2, -1};
inline const Dimension kCharge{Rational(1, 2), Rational(3, 2), -1};
inline const Dimension kGravitational{-1, 3, -2};
}  // namespace dims

/// A finite real value tagged with its dimension. Immutable; every
/// operation that could leave the finite range throws NonFiniteError.
class Quantity {
 public:
  Quantity(double value, Dimension dim);

  double value() const { return value_; }
  const Dimension& dim() const { return dim_; }

  friend Quantity operator*(const Quantity& a, const Quantity& b);
  friend Quantity operator/(const Quantity& a, const Quantity& b);
  friend Quantity operator*(double s, const Quantity& q);
  friend Quantity operator*(const Quantity& q, double s) { return s * q; }
  friend Quantity operator/(const Quantity& q, double s);

  /// Both throw DimensionError naming the two dimensions on mismatch.
  friend Quantity operator+(const Quantity& a, const Quantity& b);
  friend Quantity operator-(const Quantity& a, const Quantity& b);

  friend bool operator==(const Quantity&, const Quantity&) = default;

 private:
  double value_;
  Dimension dim_;
};

inline Quantity dimensionless(double v) { return {v, dims::kNone}; }
inline Quantity grams(double v) { return {v, dims::kMass}; }
inline Quantity centimeters(double v) { return {v, dims::kLength}; }
inline Quantity seconds(double v) { return {v, dims::kTime}; }
inline Quantity per_second(double v) { return {v, dims::kInverseTime}; }

/// a^r. Negative bases are allowed only when r has an odd denominator.
Quantity pow(const Quantity& a, const Rational& r);
Quantity sqrt(const Quantity& a);

/// |log10(a/b)|. Requires equal dimensions and strictly positive values.
double dex_gap(const Quantity& a, const Quantity& b);

/// Throws DimensionError unless q has dimension `expected`; `what` names
/// the argument in the message.
void require_dimension(const Quantity& q, const Dimension& expected, std::string_view what);

std::ostream& operator<<(std::ostream& os, const Rational& r);
std::ostream& operator<<(std::ostream& os, const Dimension& d);
std::ostream& operator<<(std::ostream& os, const Quantity& q);

}  // namespace fluctuaverse
