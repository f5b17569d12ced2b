#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <random>
#include <string>

#include "mshuffle/errors.hpp"

namespace mshuffle {

/// Exact rational scalar. Meant for small debugging runs only.
class Rational {
 public:
  Rational() = default;
  explicit Rational(std::int64_t x) : v_(static_cast<long>(x)) {}
  explicit Rational(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }

  const mpq_class& value() const { return v_; }

  bool is_zero() const { return sgn(v_) == 0; }
  bool is_one() const { return v_ == 1; }
  Rational like(std::int64_t x) const { return Rational(x); }

  Rational operator+(const Rational& o) const { return Rational(mpq_class(v_ + o.v_)); }
  Rational operator-(const Rational& o) const { return Rational(mpq_class(v_ - o.v_)); }
  Rational operator-() const { return Rational(mpq_class(-v_)); }
  Rational operator*(const Rational& o) const { return Rational(mpq_class(v_ * o.v_)); }
  Rational& operator+=(const Rational& o) {
    v_ += o.v_;
    return *this;
  }
  Rational& operator-=(const Rational& o) {
    v_ -= o.v_;
    return *this;
  }
  Rational& operator*=(const Rational& o) {
    v_ *= o.v_;
    return *this;
  }

  Rational inv() const {
    if (is_zero()) throw DivisionByExactZero();
    return Rational(mpq_class(1 / v_));
  }
  Rational operator/(const Rational& o) const { return *this * o.inv(); }
  Rational pow(std::int64_t e) const {
    Rational base = e < 0 ? inv() : *this;
    if (e < 0) e = -e;
    Rational acc(1);
    while (e > 0) {
      if (e & 1) acc *= base;
      base *= base;
      e >>= 1;
    }
    return acc;
  }

  bool operator==(const Rational& o) const { return v_ == o.v_; }
  bool operator!=(const Rational& o) const { return v_ != o.v_; }

  std::string str() const { return v_.get_str(); }

 private:
  mpq_class v_{0};
};

/// Factory and sampler for Q. Samples small nonzero integers over a wide range
/// so that accidental cancellations stay improbable while heights stay small.
struct RationalField {
  using Elem = Rational;

  Rational make(std::int64_t x) const { return Rational(x); }
  Rational random_nonzero(std::mt19937_64& rng) const {
    std::uniform_int_distribution<std::int64_t> num(1, 1000003);
    std::uniform_int_distribution<std::int64_t> den(1, 997);
    std::int64_t a = num(rng);
    if (rng() & 1) a = -a;
    return Rational(mpq_class(static_cast<long>(a), static_cast<unsigned long>(den(rng))));
  }
  std::uint64_t characteristic() const { return 0; }
  std::string name() const { return "Q"; }
};

}  // namespace mshuffle
