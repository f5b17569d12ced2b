#include "mshuffle/fp.hpp"

namespace mshuffle {

Fp Fp::from_int(std::int64_t x, std::uint64_t modulus) {
  if (x >= 0) return {static_cast<std::uint64_t>(x) % modulus, modulus};
  // -x may overflow for INT64_MIN, so go through unsigned negation
  std::uint64_t mag = static_cast<std::uint64_t>(-(x + 1)) + 1;
  std::uint64_t r = mag % modulus;
  return {r == 0 ? 0 : modulus - r, modulus};
}

Fp Fp::inv() const {
  if (v_ == 0) throw DivisionByExactZero();
  // extended Euclid on signed 128-bit to stay clear of overflow
  __int128 a = v_, b = p_, x0 = 1, x1 = 0;
  while (b != 0) {
    __int128 qt = a / b;
    __int128 t = a - qt * b;
    a = b;
    b = t;
    t = x0 - qt * x1;
    x0 = x1;
    x1 = t;
  }
  __int128 r = x0 % static_cast<__int128>(p_);
  if (r < 0) r += p_;
  return {static_cast<std::uint64_t>(r), p_};
}

Fp Fp::pow(std::int64_t e) const {
  Fp base = *this;
  if (e < 0) {
    base = base.inv();
    e = -e;
  }
  Fp acc(1 % p_, p_);
  while (e > 0) {
    if (e & 1) acc *= base;
    base *= base;
    e >>= 1;
  }
  return acc;
}

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

}  // namespace

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t sp : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % sp == 0) return n == sp;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

}  // namespace mshuffle
