#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "mshuffle/errors.hpp"

namespace mshuffle {

inline constexpr std::uint64_t kMersenne61 = (std::uint64_t{1} << 61) - 1;

/// Element of the prime field F_p. The modulus travels with the value so that
/// several fields can coexist in one process.
class Fp {
 public:
  constexpr Fp() = default;
  constexpr Fp(std::uint64_t residue, std::uint64_t modulus)
      : v_(residue), p_(modulus) {}

  static Fp from_int(std::int64_t x, std::uint64_t modulus);

  std::uint64_t residue() const { return v_; }
  std::uint64_t modulus() const { return p_; }

  bool is_zero() const { return v_ == 0; }
  bool is_one() const { return v_ == 1; }

  Fp like(std::int64_t x) const { return from_int(x, p_); }

  Fp operator+(Fp o) const {
    std::uint64_t r = v_ + o.v_;
    if (r >= p_) r -= p_;
    return {r, p_};
  }
  Fp operator-(Fp o) const { return {v_ >= o.v_ ? v_ - o.v_ : v_ + p_ - o.v_, p_}; }
  Fp operator-() const { return {v_ == 0 ? 0 : p_ - v_, p_}; }
  Fp operator*(Fp o) const {
    unsigned __int128 prod = static_cast<unsigned __int128>(v_) * o.v_;
    if (p_ == kMersenne61) {
      std::uint64_t lo = static_cast<std::uint64_t>(prod) & kMersenne61;
      std::uint64_t hi = static_cast<std::uint64_t>(prod >> 61);
      std::uint64_t r = lo + hi;
      if (r >= kMersenne61) r -= kMersenne61;
      return {r, p_};
    }
    return {static_cast<std::uint64_t>(prod % p_), p_};
  }
  Fp& operator+=(Fp o) { return *this = *this + o; }
  Fp& operator-=(Fp o) { return *this = *this - o; }
  Fp& operator*=(Fp o) { return *this = *this * o; }

  /// Multiplicative inverse; throws DivisionByExactZero on zero.
  Fp inv() const;
  Fp operator/(Fp o) const { return *this * o.inv(); }
  Fp pow(std::int64_t e) const;

  bool operator==(const Fp& o) const { return v_ == o.v_; }
  bool operator!=(const Fp& o) const { return v_ != o.v_; }

  /// Decimal representative in [0, p).
  std::string str() const { return std::to_string(v_); }

 private:
  std::uint64_t v_ = 0;
  std::uint64_t p_ = kMersenne61;
};

/// Factory and sampler for F_p.
struct PrimeField {
  using Elem = Fp;
  std::uint64_t p = kMersenne61;

  Fp make(std::int64_t x) const { return Fp::from_int(x, p); }
  Fp random_nonzero(std::mt19937_64& rng) const {
    std::uniform_int_distribution<std::uint64_t> dist(1, p - 1);
    return Fp(dist(rng), p);
  }
  /// Characteristic, or 0 for characteristic zero.
  std::uint64_t characteristic() const { return p; }
  std::string name() const { return "F_" + std::to_string(p); }
};

/// Deterministic Miller-Rabin for 64-bit integers.
bool is_prime_u64(std::uint64_t n);

}  // namespace mshuffle
