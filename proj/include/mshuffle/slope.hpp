#pragma once

#include <string>
#include <vector>

#include "mshuffle/errors.hpp"
#include "mshuffle/family.hpp"
#include "mshuffle/identity.hpp"
#include "mshuffle/params.hpp"
#include "mshuffle/tensor.hpp"

namespace mshuffle {

namespace detail {

/// z_1..z_l unchanged, z_{l+1}..z_k divided by eps (so xi = 1/eps).
template <class E>
Point<E> scale_tail(const Params<E>& p, const Point<E>& z, int l) {
  Jet<E> inv_eps = Jet<E>::monomial(p.elem(1), -1, p.order);
  Point<E> out;
  for (int a = 0; a < static_cast<int>(z.size()); ++a) out.push_back(a < l ? z[a].with_order(p.order) : z[a] * inv_eps);
  return out;
}

/// sum over a > l of (j_a - i_a) for the entry at (row word i, column word j).
inline int tail_shift(const std::vector<int>& row, const std::vector<int>& col, int l) {
  int acc = 0;
  for (size_t a = l; a < row.size(); ++a) acc += col[a] - row[a];
  return acc;
}

/// Smallest eps-valuation allowed: deg_xi * nodes <= shift with deg_xi = -val.
inline int min_valuation(int shift, int nodes) {
  // val >= -shift / nodes, rounded up
  int num = -shift;
  return num >= 0 ? (num + nodes - 1) / nodes : -((-num) / nodes);
}

}  // namespace detail

/// Checks the slope-0 inequality for every l and every matrix-unit entry at random points.
/// The node count of the horizontal grading is n + m.
template <class Field, class E = typename Field::Elem>
IdentityResult slope0_test(const Family<E>& X, Sampler<Field>& sampler, int trials) {
  const int k = X.arity, nodes = X.space.dim();
  return run_trials(sampler, k, trials, X.degree_bound, [&](const Params<E>& p, const Point<E>& z) -> std::string {
    for (int l = 0; l <= k; ++l) {
      Tensor<E> v = X(p, detail::scale_tail(p, z, l));
      for (int r = 0; r < v.side(); ++r)
        for (int c = 0; c < v.side(); ++c) {
          const Jet<E>& x = v.at(r, c);
          if (x.is_exact_zero()) continue;
          int bound = detail::min_valuation(detail::tail_shift(v.word_of(r), v.word_of(c), l), nodes);
          if (x.is_zero() && x.precision() < bound)
            throw PrecisionExhausted("jet order too small to certify the slope inequality");
          if (!x.is_zero() && x.valuation() < bound)
            return "l = " + std::to_string(l) + ", entry [" + std::to_string(r) + "," + std::to_string(c) +
                   "]: xi-degree " + std::to_string(-x.valuation()) + " exceeds " + std::to_string(-bound);
        }
    }
    return "";
  });
}

/// lead_l(X) as a single k-factor family: the first l factors carry z_1..z_l,
/// the rest z_{l+1}..z_k. Throws NotSlopeZero when the inequality fails.
template <class E>
Family<E> lead(const Family<E>& X, int l) {
  const int k = X.arity, nodes = X.space.dim();
  if (l < 0 || l > k) throw PositionOutOfRange("lead index outside 0..k");
  Family<E> out(
      X.space, k,
      [X, l, nodes](const Params<E>& p, const Point<E>& z) {
        Tensor<E> v = X(p, detail::scale_tail(p, z, l));
        for (int r = 0; r < v.side(); ++r)
          for (int c = 0; c < v.side(); ++c) {
            Jet<E>& x = v.at(r, c);
            int shift = detail::tail_shift(v.word_of(r), v.word_of(c), l);
            int bound = detail::min_valuation(shift, nodes);
            if (!x.is_zero() && x.valuation() < bound) throw NotSlopeZero("lead of an element that is not slope 0");
            x = shift % nodes == 0 ? Jet<E>(x.coeff(-shift / nodes)) : Jet<E>(x.zero());
          }
        return v;
      },
      X.degree_bound, "lead" + std::to_string(l) + "(" + X.name + ")");
  out.algebra = X.algebra;
  return out;
}

}  // namespace mshuffle
