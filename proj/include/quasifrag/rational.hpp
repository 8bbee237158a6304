#pragma once

#include <cstdint>
#include <numeric>
#include <string>

#include "quasifrag/errors.hpp"

namespace quasifrag {

// Exact rational, used for the subsystem fraction x = L_A/L so that
// floor(l*x) never misclassifies a cell boundary through round-off.
class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(std::int64_t num, std::int64_t den) : num_(num), den_(den) {
    if (den_ == 0) throw SpecError("Rational: zero denominator");
    if (den_ < 0) { num_ = -num_; den_ = -den_; }
    const std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
    if (g > 1) { num_ /= g; den_ /= g; }
  }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  double value() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  bool is_integer() const { return den_ == 1; }

  // floor(s * this) and the exact fractional remainder, via integer division.
  std::int64_t floor_scaled(std::int64_t s) const {
    const std::int64_t t = s * num_;
    std::int64_t q = t / den_;
    if (t % den_ != 0 && ((t < 0) != (den_ < 0))) --q;
    return q;
  }
  // (s * this) - floor(s * this), exact as a Rational.
  Rational frac_scaled(std::int64_t s) const {
    const std::int64_t t = s * num_;
    std::int64_t r = t % den_;
    if (r < 0) r += den_;
    return Rational(r, den_);
  }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator<(const Rational& a, const Rational& b) {
    return static_cast<__int128>(a.num_) * b.den_ < static_cast<__int128>(b.num_) * a.den_;
  }
  friend bool operator<=(const Rational& a, const Rational& b) { return a == b || a < b; }

  std::string str() const {
    return den_ == 1 ? std::to_string(num_)
                     : std::to_string(num_) + "/" + std::to_string(den_);
  }

 private:
  std::int64_t num_;
  std::int64_t den_;
};

}  // namespace quasifrag
