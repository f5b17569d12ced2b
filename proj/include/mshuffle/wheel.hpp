#pragma once

#include <numeric>
#include <string>
#include <vector>

#include "mshuffle/errors.hpp"
#include "mshuffle/family.hpp"
#include "mshuffle/params.hpp"
#include "mshuffle/rmatrix.hpp"
#include "mshuffle/tensor.hpp"

namespace mshuffle {

/// A composition lambda = (lambda_1, .., lambda_u) of k with block starts c_s.
struct Composition {
  std::vector<int> parts;

  Composition() = default;
  explicit Composition(std::vector<int> ps) : parts(std::move(ps)) {
    for (int x : parts)
      if (x < 1) throw ConfigError("composition parts must be positive");
  }

  int length() const { return static_cast<int>(parts.size()); }
  int size() const { return std::accumulate(parts.begin(), parts.end(), 0); }
  /// c_s for s = 1..u+1
  int c(int s) const {
    int acc = 1;
    for (int i = 0; i < s - 1; ++i) acc += parts[i];
    return acc;
  }
  std::string str() const {
    std::string out = "(";
    for (size_t i = 0; i < parts.size(); ++i) out += (i ? "," : "") + std::to_string(parts[i]);
    return out + ")";
  }
};

namespace detail {

/// The strings z_{c_s + e} = y_s q^e (1 + a_e eps), together with the product of
/// the dz/z normalizers (1 - q z_{c_s+e-1} / z_{c_s+e}).
template <class E>
struct WheelCurve {
  Point<E> z;
  Jet<E> normalizer;
};

template <class E>
WheelCurve<E> wheel_curve(const Composition& lam, const Params<E>& p, const Point<E>& y, int direction) {
  const int K = p.order;
  Jet<E> eps = Jet<E>::epsilon(p.elem(1), K);
  WheelCurve<E> out{{}, Jet<E>(p.elem(1), K)};
  for (int s = 0; s < lam.length(); ++s) {
    Jet<E> prev = y[s].with_order(K);
    out.z.push_back(prev);
    Jet<E> qe = Jet<E>(p.elem(1), K);
    for (int e = 1; e < lam.parts[s]; ++e) {
      qe *= p.q;
      // consecutive slopes must differ; both directions keep a_0 = 0
      long long a = direction == 0 ? e : static_cast<long long>(e) * (e + 3);
      Jet<E> cur = y[s] * qe * (Jet<E>(p.elem(1), K) + eps * p.elem(a));
      out.normalizer *= Jet<E>(p.elem(1), K) - p.q * prev / cur;
      out.z.push_back(cur);
      prev = cur;
    }
  }
  return out;
}

/// The iterated residue along one curve: the eps^0 coefficient of normalizer * X(curve).
template <class E>
Tensor<E> residue_along(const Family<E>& X, const Composition& lam, const Params<E>& p, const Point<E>& y,
                        int direction) {
  auto curve = wheel_curve(lam, p, y, direction);
  Tensor<E> v = X(p, curve.z) * curve.normalizer;
  return v.map([&](const Jet<E>& x) {
    if (!x.is_zero() && x.valuation() < 0)
      throw WheelViolation("pole of order " + std::to_string(-x.valuation()) + " along the wheel curve " + lam.str());
    return Jet<E>(x.coeff(0));
  });
}

template <class E>
Tensor<E> iterated_residue(const Family<E>& X, const Composition& lam, const Params<E>& p, const Point<E>& y) {
  Tensor<E> r0 = residue_along(X, lam, p, y, 0);
  Tensor<E> r1 = residue_along(X, lam, p, y, 1);
  if (!r0.agrees(r1)) throw WheelViolation("residue depends on the approach direction for " + lam.str());
  return r0;
}

/// (s - 1/s)^{k-u} times f(y_s q^d / (y_t q^e)) over unordered pairs of non-leading variables.
template <class E>
Jet<E> wheel_constant(const Composition& lam, const Params<E>& p, const Point<E>& y) {
  const int k = lam.size(), u = lam.length();
  Jet<E> acc = (p.s - p.s.inv()).pow(k - u);
  std::vector<Jet<E>> vars;
  for (int s = 0; s < u; ++s) {
    Jet<E> qe = p.one();
    for (int d = 1; d < lam.parts[s]; ++d) {
      qe *= p.q;
      vars.push_back(y[s] * qe);
    }
  }
  for (size_t a = 0; a < vars.size(); ++a)
    for (size_t b = a + 1; b < vars.size(); ++b) acc *= f_factor(p, vars[a] / vars[b]);
  return acc;
}

/// Reads Y as X_{slots} (x) id and returns X; WheelViolation if Y acts on other slots.
template <class E>
Tensor<E> extract_local(const Tensor<E>& Y, const std::vector<int>& slots, const Composition& lam) {
  const GradedSpace& V = Y.space();
  const int k = Y.arity(), u = static_cast<int>(slots.size());
  Tensor<E> x(V, u, Y.zero_elem());
  for (int r = 0; r < x.side(); ++r)
    for (int c = 0; c < x.side(); ++c) {
      auto rw = x.word_of(r), cw = x.word_of(c);
      std::vector<int> R(k, 1), C(k, 1);
      for (int s = 0; s < u; ++s) {
        R[slots[s] - 1] = rw[s];
        C[slots[s] - 1] = cw[s];
      }
      x.at(r, c) = Y.entry(R, C);
    }
  Tensor<E> rebuilt = Tensor<E>::identity(V, k, Y.zero_elem()).apply_left(x, slots);
  if (!rebuilt.agrees(Y))
    throw WheelViolation("stripped residue for " + lam.str() + " does not factor through the leading slots");
  return x;
}

}  // namespace detail

/// X^{(lambda)}(y_1..y_u): the iterated residue at the wheel strings with the
/// constant, the left and right R-products and the trailing flips stripped off.
template <class E>
Tensor<E> wheel_residue_at(const Family<E>& X, const Composition& lam, const Params<E>& p, const Point<E>& y) {
  const int k = lam.size(), u = lam.length();
  if (X.arity != k) throw PositionOutOfRange("composition size differs from the arity");
  if (static_cast<int>(y.size()) != u) throw PositionOutOfRange("one base point per block is needed");
  const GradedSpace& V = X.space;
  Tensor<E> res = detail::iterated_residue(X, lam, p, y) * detail::wheel_constant(lam, p, y).inv();
  auto lt = [&](int t) { return lam.parts[t - 1]; };
  auto qpow = [&](int e) { return p.q.pow(e); };
  // left product, inverted
  OperatorProduct<E> left_inv(V, k);
  for (int s = u; s >= 1; --s)
    for (int t = s; t <= u; ++t)
      for (int e = 1; e < lt(t); ++e)
        left_inv.left_multiply(r_matrix_inverse(V, p, y[s - 1] / (y[t - 1] * qpow(e))), {lam.c(s), lam.c(t) + e});
  // right product followed by the flips, inverted
  OperatorProduct<E> right_inv(V, k);
  for (int s = 1; s <= u; ++s)
    for (int t = u; t > s; --t)
      for (int e = lt(t) - 1; e >= 1; --e)
        right_inv.left_multiply(r_matrix_inverse(V, p, y[t - 1] * qpow(e) / (y[s - 1] * qpow(lt(s)))),
                                {lam.c(t) + e, lam.c(s)});
  Tensor<E> P = permutation_matrix(V, p);
  for (int s = 1; s <= u; ++s)
    for (int i = lam.c(s); i <= lam.c(s + 1) - 2; ++i) right_inv.left_multiply(P, {i, i + 1});
  Tensor<E> Y = right_inv.apply_right(left_inv.apply_left(res));
  std::vector<int> slots;
  for (int s = 1; s <= u; ++s) slots.push_back(lam.c(s));
  return detail::extract_local(Y, slots, lam);
}

/// lambda = (k) through the R-check form: Res = const R-check_1(q^{-1})..R-check_{k-1}(q^{1-k}) X_k(y).
template <class E>
Tensor<E> wheel_residue_single_block_at(const Family<E>& X, const Params<E>& p, const Jet<E>& y) {
  const int k = X.arity;
  const GradedSpace& V = X.space;
  Composition lam({k});
  Point<E> ys{y};
  Tensor<E> res = detail::iterated_residue(X, lam, p, ys) * detail::wheel_constant(lam, p, ys).inv();
  OperatorProduct<E> inv(V, k);
  for (int i = 1; i < k; ++i) inv.left_multiply(r_check_inverse(V, p, p.q.pow(-i)), {i, i + 1});
  return detail::extract_local(inv.apply_left(res), {k}, lam);
}

/// The wheel residue as a family in y_1..y_u.
template <class E>
Family<E> wheel_residue(const Family<E>& X, const Composition& lam) {
  return Family<E>(
      X.space, lam.length(), [X, lam](const Params<E>& p, const Point<E>& y) { return wheel_residue_at(X, lam, p, y); },
      X.degree_bound + 4 * lam.size() * lam.size(), "Res" + lam.str() + "(" + X.name + ")");
}

/// alpha_i(X): the E_ii coefficient of X^{(k)}(y). For k = 0 this is the scalar X itself.
template <class E>
Jet<E> alpha_at(const Family<E>& X, int i, const Params<E>& p, const Jet<E>& y) {
  X.space.check_label(i);
  const int k = X.arity;
  if (k == 0) return X(p, {}).at(0, 0);
  if (k == 1) return X(p, {y}).at(i - 1, i - 1);
  return wheel_residue_single_block_at(X, p, y).at(i - 1, i - 1);
}

}  // namespace mshuffle
