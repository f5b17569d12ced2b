#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "mshuffle/errors.hpp"
#include "mshuffle/family.hpp"
#include "mshuffle/shuffle.hpp"

namespace mshuffle {

/// Degree -> element; a missing degree is zero.
template <class E>
using Series = std::map<int, Family<E>>;

template <class E>
Family<E> zero_family(const GradedSpace& V, int k, Algebra tag = Algebra::Plus) {
  Family<E> out(
      V, k, [V, k](const Params<E>& p, const Point<E>&) { return Tensor<E>(V, k, p.elem(0)); }, 0, "0");
  out.algebra = tag;
  return out;
}

/// The product matching the common algebra tag.
template <class E>
Family<E> multiply(const Family<E>& a, const Family<E>& b) {
  switch (a.algebra) {
    case Algebra::Plus: return shuffle_product(a, b);
    case Algebra::Minus: return shuffle_product_minus(a, b);
    case Algebra::Prime: return shuffle_product_prime(a, b);
  }
  throw TagMismatch("unknown algebra tag");
}

namespace detail {

/// Ordered compositions of d into r positive parts drawn from the available degrees.
inline void compositions(int d, int r, const std::vector<int>& avail, std::vector<int>& cur,
                         std::vector<std::vector<int>>& out) {
  if (r == 0) {
    if (d == 0) out.push_back(cur);
    return;
  }
  for (int x : avail) {
    if (x > d) continue;
    cur.push_back(x);
    compositions(d - x, r - 1, avail, cur, out);
    cur.pop_back();
  }
}

inline void check_characteristic(std::uint64_t characteristic, int N) {
  if (characteristic != 0 && characteristic <= static_cast<std::uint64_t>(N))
    throw CharacteristicDivision("series truncated at order " + std::to_string(N) + " needs division by integers up to " +
                                 std::to_string(N));
}

/// Degree-d part of sum_r coef(r) Y^r, Y = sum_{d>=1} series[d], for d = 1..N.
template <class E, class Coef>
Series<E> power_series(const Series<E>& series, int N, const GradedSpace& V, Algebra tag, Coef&& coef) {
  std::vector<int> avail;
  for (const auto& [deg, el] : series) {
    if (deg < 1) throw ConfigError("series must start in degree 1");
    if (el.arity != deg) throw SpaceMismatch("series term of degree " + std::to_string(deg) + " has the wrong arity");
    avail.push_back(deg);
  }
  Series<E> out;
  for (int d = 1; d <= N; ++d) {
    Family<E> acc = zero_family<E>(V, d, tag);
    bool any = false;
    for (int r = 1; r <= d; ++r) {
      std::vector<std::vector<int>> comps;
      std::vector<int> cur;
      compositions(d, r, avail, cur, comps);
      for (const auto& comp : comps) {
        Family<E> term = series.at(comp[0]);
        for (size_t i = 1; i < comp.size(); ++i) term = multiply(term, series.at(comp[i]));
        auto [num, den] = coef(r);
        Family<E> scaled = term.scaled(
            [num, den](const Params<E>& p, const Point<E>&) { return p.c(num) * p.c(den).inv(); }, 0);
        acc = any ? acc + scaled : scaled;
        any = true;
      }
    }
    acc.name = "deg" + std::to_string(d);
    out.emplace(d, acc);
  }
  return out;
}

inline std::int64_t factorial(int r) {
  std::int64_t f = 1;
  for (int i = 2; i <= r; ++i) f *= i;
  return f;
}

}  // namespace detail

/// exp(sum_d series[d]) truncated at degree N, as a noncommutative power series
/// under the product of the tag; degree 0 is the unit.
template <class E>
Series<E> shuffle_exp(const Series<E>& series, int N, const GradedSpace& V, std::uint64_t characteristic,
                      Algebra tag = Algebra::Plus) {
  detail::check_characteristic(characteristic, N);
  Series<E> out = detail::power_series(series, N, V, tag, [](int r) {
    return std::pair<std::int64_t, std::int64_t>{1, detail::factorial(r)};
  });
  out.emplace(0, Family<E>::unit(V).tagged(tag));
  return out;
}

/// log(1 + sum_{d>=1} series[d]) truncated at degree N.
template <class E>
Series<E> shuffle_log(Series<E> series, int N, const GradedSpace& V, std::uint64_t characteristic,
                      Algebra tag = Algebra::Plus) {
  detail::check_characteristic(characteristic, N);
  series.erase(0);
  return detail::power_series(series, N, V, tag, [](int r) {
    return std::pair<std::int64_t, std::int64_t>{r % 2 ? 1 : -1, r};
  });
}

}  // namespace mshuffle
