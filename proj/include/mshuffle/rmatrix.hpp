#pragma once

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "mshuffle/errors.hpp"
#include "mshuffle/family.hpp"
#include "mshuffle/params.hpp"
#include "mshuffle/tensor.hpp"

namespace mshuffle {

/// f(x) = (1 - t x)(1 - x/t) / (1 - x)^2
template <class E>
Jet<E> f_factor(const Params<E>& p, const Jet<E>& x) {
  Jet<E> one = p.one();
  Jet<E> den = one - x;
  if (den.is_exact_zero()) throw PoleAtArgument("f has a pole at x = 1");
  return (one - p.t * x) * (one - x / p.t) / (den * den);
}

/// 1 / (1 - z), throwing PoleAtArgument at z = 1.
template <class E>
Jet<E> pole_factor(const Params<E>& p, const Jet<E>& z) {
  Jet<E> den = p.one() - z;
  if (den.is_exact_zero()) throw PoleAtArgument("R-matrix evaluated at z = 1");
  return den.inv();
}

/// R(z) of the graded space: diagonal weights eps_i (s^{-eps_i} - z s^{eps_i})/(1-z),
/// weight 1 on E_ii (x) E_jj for i != j, exchange weights (1/s - s) z^{[i<j]}/(1-z).
template <class E>
Tensor<E> r_matrix(const GradedSpace& V, const Params<E>& p, const Jet<E>& z) {
  const int d = V.dim();
  Tensor<E> r(V, 2, p.elem(0));
  Jet<E> inv = pole_factor(p, z);
  Jet<E> sinv = p.s.inv();
  Jet<E> exch = (sinv - p.s) * inv;
  Jet<E> exch_z = exch * z;
  Jet<E> one = p.one();
  Jet<E> bos = (sinv - z * p.s) * inv;
  Jet<E> fer = -(p.s - z * sinv) * inv;
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      int ij = i * d + j, ji = j * d + i;
      if (i == j) {
        r.at(ij, ij) = V.eps(i + 1) > 0 ? bos : fer;
      } else {
        r.at(ij, ij) = one;
        r.at(ij, ji) = i < j ? exch_z : exch;
      }
    }
  }
  return r;
}

/// The flip P of V (x) V.
template <class E>
Tensor<E> permutation_matrix(const GradedSpace& V, const Params<E>& p) {
  const int d = V.dim();
  Tensor<E> r(V, 2, p.elem(0));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) r.at(i * d + j, j * d + i) = p.one();
  return r;
}

/// Swaps the two column factors: (M P)_{(ab),(cd)} = M_{(ab),(dc)}.
template <class E>
Tensor<E> times_flip(const Tensor<E>& m) {
  const int d = m.dim();
  Tensor<E> r(m.space(), 2, m.zero_elem());
  for (int row = 0; row < d * d; ++row)
    for (int c = 0; c < d; ++c)
      for (int e = 0; e < d; ++e) r.at(row, c * d + e) = m.at(row, e * d + c);
  return r;
}

/// (P M)_{(ab),(cd)} = M_{(ba),(cd)}.
template <class E>
Tensor<E> flip_times(const Tensor<E>& m) {
  const int d = m.dim();
  Tensor<E> r(m.space(), 2, m.zero_elem());
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b)
      for (int col = 0; col < d * d; ++col) r.at(a * d + b, col) = m.at(b * d + a, col);
  return r;
}

template <class E>
Tensor<E> r_check(const GradedSpace& V, const Params<E>& p, const Jet<E>& z) {
  return times_flip(r_matrix(V, p, z));
}

/// The diagonal twist D = diag(1, t^-1, .., t^{1-n}, -t^{1-n}, -t^{2-n}, .., -t^{m-n}).
template <class E>
std::vector<Jet<E>> d_matrix_diagonal(const GradedSpace& V, const Params<E>& p) {
  if (!V.is_standard()) throw GradingMismatch("D is defined for the standard grading order only");
  std::vector<Jet<E>> d;
  Jet<E> tinv = p.t.inv();
  for (int i = 0; i < V.n(); ++i) d.push_back(tinv.pow(i));
  for (int j = 0; j < V.m(); ++j) d.push_back(-(p.t.pow(j) * tinv.pow(V.n() - 1)));
  return d;
}

template <class E>
Tensor<E> d_matrix(const GradedSpace& V, const Params<E>& p) {
  auto d = d_matrix_diagonal(V, p);
  Tensor<E> r(V, 1, p.elem(0));
  for (int i = 0; i < V.dim(); ++i) r.at(i, i) = d[i];
  return r;
}

/// R-check-bullet(z) = (D (x) id) R-check(z t^{m-n}) (id (x) D^{-1}).
template <class E>
Tensor<E> r_check_bullet(const GradedSpace& V, const Params<E>& p, const Jet<E>& z) {
  auto dg = d_matrix_diagonal(V, p);
  Tensor<E> r = r_check(V, p, z * p.t.pow(V.m() - V.n()));
  const int d = V.dim();
  std::vector<Jet<E>> dinv;
  for (auto& x : dg) dinv.push_back(x.inv());
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b)
      for (int c = 0; c < d; ++c)
        for (int e = 0; e < d; ++e) {
          auto& x = r.at(a * d + b, c * d + e);
          if (!x.is_exact_zero()) x = dg[a] * x * dinv[e];
        }
  return r;
}

/// R-check(z)^{-1} = R-check(1/z) / f(z).
template <class E>
Tensor<E> r_check_inverse(const GradedSpace& V, const Params<E>& p, const Jet<E>& z) {
  Jet<E> f = f_factor(p, z);
  if (f.is_exact_zero()) throw SingularAtArgument("R-check is singular where f vanishes");
  return r_check(V, p, z.inv()) * f.inv();
}

/// R(z)^{-1} = P R-check(1/z) / f(z).
template <class E>
Tensor<E> r_matrix_inverse(const GradedSpace& V, const Params<E>& p, const Jet<E>& z) {
  return flip_times(r_check_inverse(V, p, z));
}

/// R-check-bullet(z)^{-1} = (id (x) D) R-check(z t^{m-n})^{-1} (D^{-1} (x) id).
template <class E>
Tensor<E> r_check_bullet_inverse(const GradedSpace& V, const Params<E>& p, const Jet<E>& z) {
  auto dg = d_matrix_diagonal(V, p);
  Tensor<E> r = r_check_inverse(V, p, z * p.t.pow(V.m() - V.n()));
  const int d = V.dim();
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b)
      for (int c = 0; c < d; ++c)
        for (int e = 0; e < d; ++e) {
          auto& x = r.at(a * d + b, c * d + e);
          if (!x.is_exact_zero()) x = dg[b] * x / dg[c];
        }
  return r;
}

/// A two-slot operator placed on slots (i, j) of V^{(x)N}; its first leg sits on slot i.
template <class E>
Tensor<E> embed_pair(const Tensor<E>& op, int i, int j, int N) {
  if (i < 1 || j < 1 || i > N || j > N || i == j) throw SlotOutOfRange("bad slot pair");
  return Tensor<E>::identity(op.space(), N, op.zero_elem()).apply_left(op, {i, j});
}

/// R-check_i(z) in V^{(x)N}.
template <class E>
Tensor<E> r_check_embedded(const GradedSpace& V, const Params<E>& p, int i, int N, const Jet<E>& z) {
  if (i < 1 || i >= N) throw SlotOutOfRange("adjacent slot " + std::to_string(i) + " outside 1.." + std::to_string(N - 1));
  return embed_pair(r_check(V, p, z), i, i + 1, N);
}

/// R-check_{i,j}(z) in V^{(x)N} for i < j.
template <class E>
Tensor<E> r_check_pair(const GradedSpace& V, const Params<E>& p, int i, int j, int N, const Jet<E>& z) {
  if (!(1 <= i && i < j && j <= N)) throw SlotOutOfRange("pair slots must satisfy 1 <= i < j <= N");
  return embed_pair(r_check(V, p, z), i, j, N);
}

/// Number of inversions of a 1-based permutation.
inline int inversion_count(const std::vector<int>& sigma) {
  int c = 0;
  for (size_t i = 0; i < sigma.size(); ++i)
    for (size_t j = i + 1; j < sigma.size(); ++j) c += sigma[i] > sigma[j];
  return c;
}

inline void check_permutation(const std::vector<int>& sigma) {
  std::vector<bool> seen(sigma.size(), false);
  for (int s : sigma) {
    if (s < 1 || s > static_cast<int>(sigma.size()) || seen[s - 1]) throw BadPermutation("not a permutation");
    seen[s - 1] = true;
  }
}

/// Reduced word (i_1, .., i_L) for sigma, read as the sequence of adjacent
/// position swaps that carries (1..k) to (sigma(1)..sigma(k)); the first swap
/// performed is the last letter. With rng set, ties are broken at random.
inline std::vector<int> reduced_word(const std::vector<int>& sigma, std::mt19937_64* rng = nullptr) {
  check_permutation(sigma);
  const int k = static_cast<int>(sigma.size());
  std::vector<int> rank(k + 1);
  for (int j = 0; j < k; ++j) rank[sigma[j]] = j;
  std::vector<int> cur(k);
  for (int j = 0; j < k; ++j) cur[j] = j + 1;
  std::vector<int> swaps;
  while (true) {
    std::vector<int> cands;
    for (int j = 0; j + 1 < k; ++j)
      if (rank[cur[j]] > rank[cur[j + 1]]) cands.push_back(j);
    if (cands.empty()) break;
    int j = cands.front();
    if (rng) j = cands[std::uniform_int_distribution<size_t>(0, cands.size() - 1)(*rng)];
    std::swap(cur[j], cur[j + 1]);
    swaps.push_back(j + 1);
  }
  std::reverse(swaps.begin(), swaps.end());
  return swaps;
}

/// Permutation (as target order) produced by the word s_{i_1}..s_{i_L}.
inline std::vector<int> permutation_of_word(int k, const std::vector<int>& word) {
  std::vector<int> cur(k);
  for (int j = 0; j < k; ++j) cur[j] = j + 1;
  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    if (*it < 1 || *it >= k) throw SlotOutOfRange("word letter out of range");
    std::swap(cur[*it - 1], cur[*it]);
  }
  return cur;
}

/// R-check_sigma(z) for sigma = s_{i_1} .. s_{i_L}: the rightmost factor is
/// R-check_{i_L}(z_2'/z_1') on the initial order; each later factor uses the
/// variables in the order reached so far. Throws NonReducedWord unless the word
/// length equals the inversion count.
template <class E, bool Bullet = false>
OperatorProduct<E> r_check_sigma_word(const GradedSpace& V, const Params<E>& p, const Point<E>& z,
                                      const std::vector<int>& word) {
  const int k = static_cast<int>(z.size());
  auto sigma = permutation_of_word(k, word);
  if (inversion_count(sigma) != static_cast<int>(word.size())) throw NonReducedWord("word is not reduced");
  OperatorProduct<E> prod(V, k);
  std::vector<Jet<E>> w = z;
  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    int i = *it;
    Jet<E> arg = w[i] / w[i - 1];
    prod.left_multiply(Bullet ? r_check_bullet(V, p, arg) : r_check(V, p, arg), {i, i + 1});
    std::swap(w[i - 1], w[i]);
  }
  return prod;
}

template <class E>
OperatorProduct<E> r_check_sigma(const GradedSpace& V, const Params<E>& p, const Point<E>& z,
                                 const std::vector<int>& sigma, std::mt19937_64* rng = nullptr) {
  if (sigma.size() != z.size()) throw BadPermutation("permutation size differs from the number of variables");
  return r_check_sigma_word(V, p, z, reduced_word(sigma, rng));
}

/// Inverse of R-check_sigma: inverted factors in reverse order.
template <class E>
OperatorProduct<E> r_check_sigma_inverse(const GradedSpace& V, const Params<E>& p, const Point<E>& z,
                                         const std::vector<int>& sigma) {
  auto word = reduced_word(sigma);
  const int k = static_cast<int>(z.size());
  OperatorProduct<E> prod(V, k);
  std::vector<Jet<E>> w = z;
  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    int i = *it;
    prod.right_multiply(r_check_inverse(V, p, w[i] / w[i - 1]), {i, i + 1});
    std::swap(w[i - 1], w[i]);
  }
  return prod;
}

inline std::vector<int> inverse_permutation(const std::vector<int>& sigma) {
  check_permutation(sigma);
  std::vector<int> inv(sigma.size());
  for (size_t i = 0; i < sigma.size(); ++i) inv[sigma[i] - 1] = static_cast<int>(i) + 1;
  return inv;
}

/// z_sigma = (z_{sigma(1)}, ..).
template <class E>
Point<E> permute_point(const Point<E>& z, const std::vector<int>& sigma) {
  Point<E> out;
  for (int s : sigma) out.push_back(z[s - 1]);
  return out;
}

/// f_sigma(z) = prod over i < j with sigma(i) > sigma(j) of f(z_{sigma(j)} / z_{sigma(i)}).
template <class E>
Jet<E> f_sigma(const Params<E>& p, const Point<E>& z, const std::vector<int>& sigma) {
  Jet<E> acc = p.one();
  for (size_t i = 0; i < sigma.size(); ++i)
    for (size_t j = i + 1; j < sigma.size(); ++j)
      if (sigma[i] > sigma[j]) acc *= f_factor(p, z[sigma[j] - 1] / z[sigma[i] - 1]);
  return acc;
}

/// prod_{j=1..k} prod_{i=1..l} R-check_{l+j-i}(w_{l-i+1} / z_j), leftmost factor j = i = 1.
template <class E, bool Bullet = false>
OperatorProduct<E> crossing_block(const GradedSpace& V, const Params<E>& p, const Point<E>& z, const Point<E>& w) {
  const int k = static_cast<int>(z.size()), l = static_cast<int>(w.size());
  OperatorProduct<E> prod(V, k + l);
  for (int j = 1; j <= k; ++j)
    for (int i = 1; i <= l; ++i) {
      Jet<E> arg = w[l - i] / z[j - 1];
      int slot = l + j - i;
      prod.right_multiply(Bullet ? r_check_bullet(V, p, arg) : r_check(V, p, arg), {slot, slot + 1});
    }
  return prod;
}

template <class E>
OperatorProduct<E> crossing_block_bullet(const GradedSpace& V, const Params<E>& p, const Point<E>& z,
                                         const Point<E>& w) {
  return crossing_block<E, true>(V, p, z, w);
}

/// Concatenation of two points.
template <class E>
Point<E> concat(const Point<E>& a, const Point<E>& b) {
  Point<E> out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

/// Every entry multiplied by the scalar c.
template <class E>
Point<E> scale_point(const Point<E>& z, const Jet<E>& c) {
  Point<E> out;
  for (auto& x : z) out.push_back(x * c);
  return out;
}

template <class E>
Point<E> slice(const Point<E>& z, int from, int count) {
  return Point<E>(z.begin() + from, z.begin() + from + count);
}

}  // namespace mshuffle
