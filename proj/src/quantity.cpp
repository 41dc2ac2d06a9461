#include "fluctuaverse/quantity.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <vector>

#include <fmt/format.h>

#include "fluctuaverse/errors.hpp"

namespace fluctuaverse {

namespace {

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out)) throw std::overflow_error("rational overflow");
  return out;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_add_overflow(a, b, &out)) throw std::overflow_error("rational overflow");
  return out;
}

std::int64_t parse_int(std::string_view s) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
    throw std::invalid_argument(fmt::format("bad integer '{}'", s));
  }
  return v;
}

Quantity checked(double v, Dimension d) {
  if (!std::isfinite(v)) throw NonFiniteError("arithmetic produced a non-finite value");
  return {v, d};
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  if (den < 0) {
    num = checked_mul(num, -1);
    den = checked_mul(den, -1);
  }
  const std::int64_t g = std::gcd(num, den);
  num_ = num / g;
  den_ = den / g;
}

Rational Rational::operator-() const { return {checked_mul(num_, -1), den_}; }

Rational operator+(const Rational& a, const Rational& b) {
  const std::int64_t g = std::gcd(a.den_, b.den_);
  const std::int64_t num = checked_add(checked_mul(a.num_, b.den_ / g), checked_mul(b.num_, a.den_ / g));
  return {num, checked_mul(a.den_ / g, b.den_)};
}

Rational operator*(const Rational& a, const Rational& b) {
  // cross-reduce first so intermediate products stay small
  const std::int64_t g1 = std::gcd(a.num_, b.den_);
  const std::int64_t g2 = std::gcd(b.num_, a.den_);
  return {checked_mul(a.num_ / g1, b.num_ / g2), checked_mul(a.den_ / g2, b.den_ / g1)};
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.is_zero()) throw std::domain_error("rational division by zero");
  return a * Rational(b.den_, b.num_);
}

std::string Rational::to_string() const {
  return den_ == 1 ? std::to_string(num_) : fmt::format("{}/{}", num_, den_);
}

Rational Rational::parse(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return {parse_int(text), 1};
  const std::int64_t den = parse_int(text.substr(slash + 1));
  if (den == 0) throw std::invalid_argument("zero denominator in exponent");
  return {parse_int(text.substr(0, slash)), den};
}

std::string Dimension::to_string() const {
  std::string out;
  const auto emit = [&out](std::string_view unit, const Rational& e) {
    if (e.is_zero()) return;
    if (!out.empty()) out += ' ';
    out += unit;
    if (e != Rational(1)) {
      out += '^';
      out += e.to_string();
    }
  };
  emit("g", mass);
  emit("cm", length);
  emit("s", time);
  return out;
}

Dimension Dimension::parse(std::string_view text) {
  Dimension d;
  std::istringstream in{std::string(text)};
  std::string token;
  while (in >> token) {
    std::string_view tok = token;
    Rational exp{1};
    if (const auto caret = tok.find('^'); caret != std::string_view::npos) {
      exp = Rational::parse(tok.substr(caret + 1));
      tok = tok.substr(0, caret);
    }
    if (tok == "g") {
      d.mass = d.mass + exp;
    } else if (tok == "cm") {
      d.length = d.length + exp;
    } else if (tok == "s") {
      d.time = d.time + exp;
    } else {
      throw std::invalid_argument(fmt::format("unknown unit '{}' (expected g, cm or s)", tok));
    }
  }
  return d;
}

Quantity::Quantity(double value, Dimension dim) : value_(value), dim_(dim) {
  if (!std::isfinite(value)) throw NonFiniteError("quantity value must be finite");
}

Quantity operator*(const Quantity& a, const Quantity& b) { return checked(a.value_ * b.value_, a.dim_ * b.dim_); }

Quantity operator/(const Quantity& a, const Quantity& b) {
  if (b.value_ == 0.0) throw NonFiniteError("division by zero quantity");
  return checked(a.value_ / b.value_, a.dim_ / b.dim_);
}

Quantity operator*(double s, const Quantity& q) { return checked(s * q.value_, q.dim_); }

Quantity operator/(const Quantity& q, double s) {
  if (s == 0.0) throw NonFiniteError("division by zero");
  return checked(q.value_ / s, q.dim_);
}

Quantity operator+(const Quantity& a, const Quantity& b) {
  if (a.dim_ != b.dim_) {
    throw DimensionError(fmt::format("cannot add [{}] and [{}]", a.dim_.to_string(), b.dim_.to_string()));
  }
  return checked(a.value_ + b.value_, a.dim_);
}

Quantity operator-(const Quantity& a, const Quantity& b) {
  if (a.dim_ != b.dim_) {
    throw DimensionError(fmt::format("cannot subtract [{}] and [{}]", a.dim_.to_string(), b.dim_.to_string()));
  }
  return checked(a.value_ - b.value_, a.dim_);
}

Quantity pow(const Quantity& a, const Rational& r) {
  if (r.is_zero()) return dimensionless(1.0);
  const double v = a.value();
  if (v < 0.0 && r.den() % 2 == 0) {
    throw DomainError(fmt::format("negative base {} with exponent {}", v, r.to_string()));
  }
  const double mag = std::abs(v);
  double root = mag;
  if (r.den() == 2) {
    root = std::sqrt(mag);
  } else if (r.den() == 3) {
    root = std::cbrt(mag);
  } else if (r.den() != 1) {
    root = std::pow(mag, 1.0 / static_cast<double>(r.den()));
  }
  double out = std::pow(root, static_cast<double>(r.num()));
  if (v < 0.0 && r.num() % 2 != 0) out = -out;
  if (mag == 0.0 && r.num() < 0) throw NonFiniteError("zero raised to a negative power");
  return checked(out, a.dim().pow(r));
}

Quantity sqrt(const Quantity& a) { return pow(a, Rational(1, 2)); }

double dex_gap(const Quantity& a, const Quantity& b) {
  if (a.dim() != b.dim()) {
    throw DimensionError(
        fmt::format("dex gap between [{}] and [{}] is undefined", a.dim().to_string(), b.dim().to_string()));
  }
  if (!(a.value() > 0.0) || !(b.value() > 0.0)) {
    throw DomainError(fmt::format("dex gap needs positive values, got {} and {}", a.value(), b.value()));
  }
  // log10 difference avoids overflow of a/b across ~600 decades
  return std::abs(std::log10(a.value()) - std::log10(b.value()));
}

void require_dimension(const Quantity& q, const Dimension& expected, std::string_view what) {
  if (q.dim() != expected) {
    throw DimensionError(
        fmt::format("{} must have dimension [{}], got [{}]", what, expected.to_string(), q.dim().to_string()));
  }
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

std::ostream& operator<<(std::ostream& os, const Dimension& d) {
  const auto s = d.to_string();
  return os << (s.empty() ? "1" : s);
}

std::ostream& operator<<(std::ostream& os, const Quantity& q) {
  os << q.value();
  if (!q.dim().is_dimensionless()) os << ' ' << q.dim();
  return os;
}

}  // namespace fluctuaverse
