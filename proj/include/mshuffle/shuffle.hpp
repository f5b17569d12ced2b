#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "mshuffle/errors.hpp"
#include "mshuffle/family.hpp"
#include "mshuffle/identity.hpp"
#include "mshuffle/params.hpp"
#include "mshuffle/rmatrix.hpp"
#include "mshuffle/tensor.hpp"

namespace mshuffle {

/// One splitting {1..k+l} = a |_| b; both lists increasing and 1-based.
struct Splitting {
  std::vector<int> a;
  std::vector<int> b;
};

/// All splittings with |b| = l, in increasing order of the bitmask of b.
inline std::vector<Splitting> splittings(int k, int l) {
  const int N = k + l;
  std::vector<Splitting> out;
  for (std::uint32_t mask = 0; mask < (1u << N); ++mask) {
    if (std::popcount(mask) != l) continue;
    Splitting s;
    for (int x = 1; x <= N; ++x) (mask >> (x - 1) & 1u ? s.b : s.a).push_back(x);
    out.push_back(std::move(s));
  }
  return out;
}

namespace detail {

inline void check_pair(const GradedSpace& va, Algebra ta, const GradedSpace& vb, Algebra tb, Algebra want) {
  if (va != vb) throw SpaceMismatch("shuffle product of elements over different spaces");
  if (ta != want || tb != want)
    throw TagMismatch(std::string("product for ") + algebra_name(want) + " applied to " + algebra_name(ta) + " and " +
                      algebra_name(tb));
}

template <class E>
void push_family_value(OperatorProduct<E>& prod, const Tensor<E>& x, const std::vector<int>& slots) {
  prod.right_multiply(x, slots);
}

inline int product_degree(int da, int db, int k, int l) { return da + db + 8 * k * l + 8; }

/// The splitting sum with a pluggable middle factor. middle(p, z_b, z_a) is a
/// two-slot operator whose first leg sits on the b slot.
template <class E, class Middle>
Tensor<E> splitting_sum(const Family<E>& A, const Family<E>& B, const Params<E>& p, const Point<E>& z, Middle&& middle) {
  const int k = A.arity, l = B.arity, N = k + l;
  const GradedSpace& V = A.space;
  Tensor<E> total(V, N, p.elem(0));
  for (const auto& sp : splittings(k, l)) {
    Point<E> za, zb;
    for (int x : sp.a) za.push_back(z[x - 1]);
    for (int x : sp.b) zb.push_back(z[x - 1]);
    OperatorProduct<E> prod(V, N);
    for (int i = k; i >= 1; --i)
      for (int j = 1; j <= l; ++j) {
        int ai = sp.a[i - 1], bj = sp.b[j - 1];
        if (ai < bj) prod.right_multiply(r_matrix(V, p, za[i - 1] / zb[j - 1]), {ai, bj});
      }
    push_family_value(prod, A(p, za), sp.a);
    for (int i = 1; i <= k; ++i)
      for (int j = l; j >= 1; --j)
        prod.right_multiply(middle(p, zb[j - 1], za[i - 1]), {sp.b[j - 1], sp.a[i - 1]});
    push_family_value(prod, B(p, zb), sp.b);
    for (int i = k; i >= 1; --i)
      for (int j = 1; j <= l; ++j) {
        int ai = sp.a[i - 1], bj = sp.b[j - 1];
        if (ai > bj) prod.right_multiply(r_matrix(V, p, za[i - 1] / zb[j - 1]), {ai, bj});
      }
    total += prod.dense(p.elem(0));
  }
  return total;
}

/// Sum over cosets of f_sigma^{-1} R-check_{sigma^{-1}}(z_sigma) Gamma(z_sigma) R-check_sigma(z),
/// with sigma = (b.., a..) when b_first, else (a.., b..). The reversed product
/// R-check_{sigma^{-1}}(z_sigma) equals f_sigma times the inverse of R-check_sigma(z).
template <class E, class GammaFn>
Tensor<E> coset_sum(const GradedSpace& V, int k, int l, bool b_first, const Params<E>& p, const Point<E>& z,
                    GammaFn&& gamma) {
  const int N = k + l;
  Tensor<E> total(V, N, p.elem(0));
  for (const auto& sp : splittings(k, l)) {
    std::vector<int> sigma = b_first ? sp.b : sp.a;
    const auto& tail = b_first ? sp.a : sp.b;
    sigma.insert(sigma.end(), tail.begin(), tail.end());
    Point<E> zs = permute_point(z, sigma);
    Tensor<E> g = r_check_sigma(V, p, zs, inverse_permutation(sigma)).apply_left(gamma(zs));
    total += r_check_sigma(V, p, z, sigma).apply_right(g) * f_sigma(p, z, sigma).inv();
  }
  return total;
}

template <class E>
Family<E> make_product(const Family<E>& A, const Family<E>& B, typename Family<E>::Eval fn, const char* sym,
                       Algebra tag) {
  Family<E> out(A.space, A.arity + B.arity, std::move(fn), product_degree(A.degree_bound, B.degree_bound, A.arity, B.arity),
                "(" + A.name + sym + B.name + ")");
  out.algebra = tag;
  return out;
}

/// (D (x) 1) R(x) (D^{-1} (x) 1)
template <class E>
Tensor<E> d_conjugated_r(const GradedSpace& V, const Params<E>& p, const Jet<E>& x) {
  auto d = d_matrix_diagonal(V, p);
  Tensor<E> r = r_matrix(V, p, x);
  const int dim = V.dim();
  for (int row = 0; row < r.side(); ++row)
    for (int col = 0; col < r.side(); ++col)
      if (!r.at(row, col).is_exact_zero()) r.at(row, col) = r.at(row, col) * d[row / dim] / d[col / dim];
  return r;
}

inline void require_bosonic(const GradedSpace& V, const char* what) {
  if (V.m() != 0 || !V.is_standard())
    throw UnsupportedSuperMinus(std::string(what) + " is defined only for m = 0, got " + V.str());
}

}  // namespace detail

/// A * B through the splitting sum with R-matrices.
template <class E>
Family<E> shuffle_product(const Family<E>& A, const Family<E>& B) {
  detail::check_pair(A.space, A.algebra, B.space, B.algebra, Algebra::Plus);
  const GradedSpace V = A.space;
  auto fn = [A, B, V](const Params<E>& p, const Point<E>& z) {
    return detail::splitting_sum(A, B, p, z, [&V](const Params<E>& pp, const Jet<E>& zb, const Jet<E>& za) {
      return r_matrix(V, pp, zb / (za * pp.q));
    });
  };
  return detail::make_product(A, B, fn, "*", Algebra::Plus);
}

/// Gamma+_{A,B}(w) for |w| = k + l.
template <class E>
Tensor<E> gamma_plus(const Family<E>& A, const Family<E>& B, const Params<E>& p, const Point<E>& w) {
  const int k = A.arity, l = B.arity, N = k + l;
  const GradedSpace& V = A.space;
  Point<E> lo = slice(w, 0, l), hi = slice(w, l, k);
  OperatorProduct<E> prod(V, N);
  std::vector<int> aslots, bslots;
  for (int i = 1; i <= k; ++i) aslots.push_back(l + i);
  for (int i = 1; i <= l; ++i) bslots.push_back(k + i);
  detail::push_family_value(prod, A(p, hi), aslots);
  prod.right_multiply(crossing_block(V, p, scale_point(hi, p.q), lo));
  detail::push_family_value(prod, B(p, lo), bslots);
  prod.right_multiply(crossing_block(V, p, lo, hi));
  return prod.dense(p.elem(0));
}

/// Gamma-_{A,B}(w): the crossing block uses R-check-bullet with the q shift on the B side.
template <class E>
Tensor<E> gamma_minus(const Family<E>& A, const Family<E>& B, const Params<E>& p, const Point<E>& w) {
  const int k = A.arity, l = B.arity, N = k + l;
  const GradedSpace& V = A.space;
  Point<E> lo = slice(w, 0, l), hi = slice(w, l, k);
  OperatorProduct<E> prod(V, N);
  std::vector<int> aslots, bslots;
  for (int i = 1; i <= k; ++i) aslots.push_back(l + i);
  for (int i = 1; i <= l; ++i) bslots.push_back(k + i);
  detail::push_family_value(prod, A(p, hi), aslots);
  prod.right_multiply(crossing_block_bullet(V, p, hi, scale_point(lo, p.q)));
  detail::push_family_value(prod, B(p, lo), bslots);
  prod.right_multiply(crossing_block(V, p, lo, hi));
  return prod.dense(p.elem(0));
}

/// Gamma'_{A,B}(w): A on the first k slots, B on the first l slots after the crossing.
template <class E>
Tensor<E> gamma_prime(const Family<E>& A, const Family<E>& B, const Params<E>& p, const Point<E>& w) {
  const int k = A.arity, l = B.arity, N = k + l;
  const GradedSpace& V = A.space;
  Point<E> lo = slice(w, 0, k), hi = slice(w, k, l);
  OperatorProduct<E> prod(V, N);
  std::vector<int> aslots, bslots;
  for (int i = 1; i <= k; ++i) aslots.push_back(i);
  for (int i = 1; i <= l; ++i) bslots.push_back(i);
  detail::push_family_value(prod, A(p, lo), aslots);
  prod.right_multiply(crossing_block_bullet(V, p, hi, scale_point(lo, p.q)));
  detail::push_family_value(prod, B(p, hi), bslots);
  prod.right_multiply(crossing_block(V, p, lo, hi));
  return prod.dense(p.elem(0));
}

/// A * B as a sum over cosets conjugating Gamma+.
template <class E>
Family<E> shuffle_product_via_gamma(const Family<E>& A, const Family<E>& B) {
  detail::check_pair(A.space, A.algebra, B.space, B.algebra, Algebra::Plus);
  auto fn = [A, B](const Params<E>& p, const Point<E>& z) {
    return detail::coset_sum(A.space, A.arity, B.arity, true, p, z,
                             [&](const Point<E>& w) { return gamma_plus(A, B, p, w); });
  };
  return detail::make_product(A, B, fn, "*", Algebra::Plus);
}

/// The product of A-: middle factors D R(z_b q / (z_a t^n)) D^{-1}. Only for m = 0.
template <class E>
Family<E> shuffle_product_minus(const Family<E>& A, const Family<E>& B) {
  detail::check_pair(A.space, A.algebra, B.space, B.algebra, Algebra::Minus);
  detail::require_bosonic(A.space, "the product of A-");
  const GradedSpace V = A.space;
  const int n = V.n();
  auto fn = [A, B, V, n](const Params<E>& p, const Point<E>& z) {
    Jet<E> tn = p.t.pow(n);
    return detail::splitting_sum(A, B, p, z, [&](const Params<E>& pp, const Jet<E>& zb, const Jet<E>& za) {
      return detail::d_conjugated_r(V, pp, zb * pp.q / (za * tn));
    });
  };
  return detail::make_product(A, B, fn, "*-", Algebra::Minus);
}

/// The product of A- written with Gamma-.
template <class E>
Family<E> shuffle_product_minus_via_gamma(const Family<E>& A, const Family<E>& B) {
  detail::check_pair(A.space, A.algebra, B.space, B.algebra, Algebra::Minus);
  detail::require_bosonic(A.space, "the product of A-");
  auto fn = [A, B](const Params<E>& p, const Point<E>& z) {
    return detail::coset_sum(A.space, A.arity, B.arity, true, p, z,
                             [&](const Point<E>& w) { return gamma_minus(A, B, p, w); });
  };
  return detail::make_product(A, B, fn, "*-", Algebra::Minus);
}

/// A *' B: cosets sigma = (a.., b..) conjugating Gamma'.
template <class E>
Family<E> shuffle_product_prime(const Family<E>& A, const Family<E>& B) {
  detail::check_pair(A.space, A.algebra, B.space, B.algebra, Algebra::Prime);
  auto fn = [A, B](const Params<E>& p, const Point<E>& z) {
    return detail::coset_sum(A.space, A.arity, B.arity, false, p, z,
                             [&](const Point<E>& w) { return gamma_prime(A, B, p, w); });
  };
  return detail::make_product(A, B, fn, "*'", Algebra::Prime);
}

/// Reverse order of a k-fold tensor product; an involution.
inline std::vector<int> reversal(int k) {
  std::vector<int> r;
  for (int i = k; i >= 1; --i) r.push_back(i);
  return r;
}

template <class E>
Point<E> reversed(const Point<E>& z) {
  return Point<E>(z.rbegin(), z.rend());
}

/// Omega(X)(z_1..z_k) = X_{k..1}(z_k..z_1) at q -> 1/q, t -> 1/t. Swaps the tags of A- and A'.
template <class E>
Family<E> omega(const Family<E>& X) {
  const int k = X.arity;
  Family<E> out(
      X.space, k,
      [X, k](const Params<E>& p, const Point<E>& z) { return X(p.inverted(), reversed(z)).permute_factors(reversal(k)); },
      X.degree_bound, "Omega(" + X.name + ")");
  out.shifts_q = X.shifts_q;
  out.algebra = X.algebra == Algebra::Minus ? Algebra::Prime : X.algebra == Algebra::Prime ? Algebra::Minus : X.algebra;
  return out;
}

/// X -> D_1..D_k X |_{q -> q^{-1} t^n}, carrying the product of A+ to that of A-. Only for m = 0.
template <class E>
Family<E> plus_to_minus(const Family<E>& X) {
  detail::require_bosonic(X.space, "the map from A+ to A-");
  const int n = X.space.n(), k = X.arity;
  const GradedSpace V = X.space;
  Family<E> out(
      V, k,
      [X, V, n, k](const Params<E>& p, const Point<E>& z) {
        Params<E> shifted(p.q.inv() * p.t.pow(n), p.s, p.order);
        Tensor<E> y = X(shifted, z);
        Tensor<E> d = d_matrix(V, p);
        for (int i = 1; i <= k; ++i) y = y.apply_left(d, {i});
        return y;
      },
      X.degree_bound + 2 * k, "phi(" + X.name + ")");
  out.algebra = Algebra::Minus;
  return out;
}

/// Checks R-check_i(z_{i+1}/z_i) X(z) = X(z with z_i, z_{i+1} swapped) R-check_i(z_{i+1}/z_i)
/// for every adjacent i at random points.
template <class Field, class E = typename Field::Elem>
IdentityResult is_symmetric(const Family<E>& X, Sampler<Field>& sampler, int trials) {
  const int k = X.arity;
  const GradedSpace V = X.space;
  return run_trials(sampler, k, trials, X.degree_bound + 4, [&](const Params<E>& p, const Point<E>& z) -> std::string {
    Tensor<E> x = X(p, z);
    for (int i = 1; i < k; ++i) {
      Point<E> zs = z;
      std::swap(zs[i - 1], zs[i]);
      Tensor<E> r = r_check(V, p, z[i] / z[i - 1]);
      Tensor<E> lhs = x.apply_left(r, {i, i + 1});
      Tensor<E> rhs = X(p, zs).apply_right(r, {i, i + 1});
      if (!lhs.agrees(rhs)) return "transposition s_" + std::to_string(i) + ": " + detail::describe(lhs, rhs);
    }
    return "";
  });
}

/// Generator E_{ij} = E_{bar i, bar j} z^{floor((i-1)/d) - floor((j-1)/d)} with d = n + m
/// and bar i the label congruent to i modulo d.
template <class E>
Family<E> generator(const GradedSpace& V, long long i, long long j) {
  const long long d = V.dim();
  auto fl = [d](long long x) { return x >= 0 ? x / d : -((-x + d - 1) / d); };
  long long qi = fl(i - 1), qj = fl(j - 1);
  int bi = static_cast<int>(i - 1 - qi * d) + 1, bj = static_cast<int>(j - 1 - qj * d) + 1;
  int power = static_cast<int>(qi - qj);
  return Family<E>(
      V, 1,
      [V, bi, bj, power](const Params<E>& p, const Point<E>& z) {
        Tensor<E> t = Tensor<E>::matrix_unit(V, bi, bj, p.elem(0));
        return t * z[0].pow(power);
      },
      std::abs(power) + 1, "E" + std::to_string(i) + "," + std::to_string(j));
}

/// A constant (z-independent) element equal to the given tensor builder.
template <class E>
Family<E> constant_family(const GradedSpace& V, int k, std::function<Tensor<E>(const Params<E>&)> build,
                          std::string name, Algebra tag = Algebra::Plus) {
  Family<E> out(
      V, k, [build](const Params<E>& p, const Point<E>&) { return build(p); }, 2, std::move(name));
  out.algebra = tag;
  return out;
}

}  // namespace mshuffle
