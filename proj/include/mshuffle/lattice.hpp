#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "mshuffle/commuting.hpp"
#include "mshuffle/errors.hpp"
#include "mshuffle/graded_space.hpp"
#include "mshuffle/params.hpp"
#include "mshuffle/tensor.hpp"

namespace mshuffle {

/// Boltzmann weight of a crossing with colors on its four edges and spectral
/// parameters x (carried left to right) and y (bottom to top). Color 1 is the empty edge.
template <class E>
Jet<E> vertex_weight(const GradedSpace& V, int left, int bottom, int top, int right, const Jet<E>& x, const Jet<E>& y,
                     const Params<E>& p) {
  for (int c : {left, bottom, top, right}) V.check_label(c);
  const Jet<E> r = x / y;
  const Jet<E> den = pole_factor(p, r);
  const Jet<E> sinv = p.s.inv();
  if (left == bottom) {
    if (!(top == left && right == left)) return p.zero();
    return V.eps(left) > 0 ? (sinv - p.s * r) * den : (sinv * r - p.s) * den;
  }
  // the two paths touch and turn
  if (left == top && bottom == right) return left < bottom ? (sinv - p.s) * r * den : (sinv - p.s) * den;
  // the two paths cross
  if (left == right && bottom == top) return p.one();
  return p.zero();
}

/// One crossing of the lattice: slots (slot, slot+1) of V^{(x)2N}, and the
/// indices (j, i) of its factor in the trace formula.
struct LatticeVertex {
  int slot = 0;
  int j = 0;
  int i = 0;
};

/// Crossings in the order they act on a state, rightmost factor first.
inline std::vector<LatticeVertex> lattice_vertices(int N) {
  std::vector<LatticeVertex> out;
  for (int j = N; j >= 1; --j)
    for (int i = N; i >= 1; --i) out.push_back({N + j - i, j, i});
  return out;
}

/// A colored path configuration. The state of the 2N slots is given before the
/// first crossing (beta then seam) and each crossing records whether its paths
/// cross or turn.
struct LatticeConfig {
  int N = 0;
  std::vector<int> alpha;
  std::vector<int> beta;
  std::vector<int> seam;
  std::vector<bool> crossed;
};

struct LoopData {
  std::vector<int> lambda;  // lambda[c-1] = loops of color c
  std::vector<int> seam;
  int seam_lines_in_loops = 0;
  bool loops_cross_seam_once = true;
};

/// Slot permutation traced by the paths: input slot -> output slot (0-based).
inline std::vector<int> path_permutation(int N, const std::vector<bool>& crossed) {
  auto verts = lattice_vertices(N);
  // at[slot] = input slot whose path is currently there
  std::vector<int> where(2 * N), at(2 * N);
  for (int s = 0; s < 2 * N; ++s) at[s] = s;
  for (size_t v = 0; v < verts.size(); ++v)
    if (crossed[v]) std::swap(at[verts[v].slot - 1], at[verts[v].slot]);
  for (int s = 0; s < 2 * N; ++s) where[at[s]] = s;
  return where;
}

/// Closes the paths through the seam and counts loops by color.
inline LoopData trace_loops(const GradedSpace& V, const LatticeConfig& c) {
  const int N = c.N;
  LoopData out;
  out.lambda.assign(V.dim(), 0);
  out.seam = c.seam;
  auto where = path_permutation(N, c.crossed);
  std::vector<bool> seen(N, false);
  for (int k = 0; k < N; ++k) {
    if (seen[k]) continue;
    // follow the path that leaves the seam at position k
    int cur = k, crossings = 0;
    bool closed = false;
    while (true) {
      seen[cur] = true;
      ++crossings;
      int o = where[N + cur];
      if (o < N) break;
      if (o - N == k) {
        closed = true;
        break;
      }
      cur = o - N;
    }
    if (closed) {
      ++out.lambda[c.seam[k] - 1];
      out.seam_lines_in_loops += crossings;
      if (crossings != 1) out.loops_cross_seam_once = false;
    }
  }
  return out;
}

/// The exponent vector attached to a configuration: u_c^{loops of color c} for c >= 2,
/// and u_1 once per empty seam line.
inline Monomial lattice_monomial(const LoopData& d) {
  Monomial m(d.lambda.size(), 0);
  for (size_t c = 1; c < d.lambda.size(); ++c) m[c] = d.lambda[c];
  for (int x : d.seam) m[0] += x == 1;
  return m;
}

struct LatticeBudget {
  std::int64_t max_configs = std::int64_t(1) << 22;
};

/// Upper bound on the number of partial configurations visited for one space and N.
inline std::int64_t lattice_search_size(int d, int N) {
  std::int64_t s = 1;
  for (int i = 0; i < 2 * N; ++i) s *= d;
  for (int i = 0; i < N * N; ++i) s *= 2;
  return s;
}

/// All nonzero-weight configurations with the given bottom boundary beta, any top boundary.
/// `visit(config, weight)` is called for each.
template <class E, class Visit>
void enumerate_lattice(const GradedSpace& V, int N, const std::vector<int>& beta, const Params<E>& p, const Point<E>& z,
                       Visit&& visit, LatticeBudget budget = {}) {
  const int d = V.dim();
  if (static_cast<int>(beta.size()) != N || static_cast<int>(z.size()) != N)
    throw PositionOutOfRange("lattice boundary and spectral point must both have N entries");
  for (int b : beta) V.check_label(b);
  if (lattice_search_size(d, N) > budget.max_configs)
    throw BudgetExceeded("lattice enumeration for N = " + std::to_string(N) + " over " + V.str() + " exceeds the cap");
  const auto verts = lattice_vertices(N);
  // spectral parameter carried by each line; lines are named by their input slot
  std::vector<Jet<E>> line_param(2 * N);
  for (int s = 0; s < N; ++s) line_param[s] = p.q * z[s];
  for (int s = 0; s < N; ++s) line_param[N + s] = z[s];

  std::vector<int> seam(N, 1);
  const int seams = [&] {
    int x = 1;
    for (int i = 0; i < N; ++i) x *= d;
    return x;
  }();
  for (int sw = 0; sw < seams; ++sw) {
    for (int i = N - 1, x = sw; i >= 0; --i, x /= d) seam[i] = x % d + 1;
    std::vector<int> color(2 * N), line(2 * N);
    for (int s = 0; s < N; ++s) color[s] = beta[s], color[N + s] = seam[s];
    for (int s = 0; s < 2 * N; ++s) line[s] = s;
    std::vector<bool> crossed;
    auto rec = [&](auto&& self, size_t v, const Jet<E>& w) -> void {
      if (v == verts.size()) {
        for (int s = 0; s < N; ++s)
          if (color[N + s] != seam[s]) return;
        LatticeConfig c{N, std::vector<int>(color.begin(), color.begin() + N), beta, seam, crossed};
        visit(c, w);
        return;
      }
      const int a = verts[v].slot - 1;
      // the line entering on the left of slot a carries y, the other carries x
      const Jet<E>& y = line_param[line[a]];
      const Jet<E>& x = line_param[line[a + 1]];
      const int in1 = color[a], in2 = color[a + 1];
      for (bool cross : {false, true}) {
        if (cross && in1 == in2) continue;
        int out1 = cross ? in2 : in1, out2 = cross ? in1 : in2;
        Jet<E> vw = vertex_weight(V, in1, in2, out1, out2, x, y, p);
        if (vw.is_zero()) continue;
        color[a] = out1;
        color[a + 1] = out2;
        std::swap(line[a], line[a + 1]);
        crossed.push_back(cross);
        self(self, v + 1, w * vw);
        crossed.pop_back();
        std::swap(line[a], line[a + 1]);
        color[a] = in1;
        color[a + 1] = in2;
      }
    };
    rec(rec, 0, p.one());
  }
}

/// Z_{alpha, beta} for all alpha, beta at once, split by u-monomial.
template <class E>
std::map<Monomial, Tensor<E>> lattice_partition_matrix(const GradedSpace& V, int N, const Params<E>& p,
                                                       const Point<E>& z, LatticeBudget budget = {}) {
  std::map<Monomial, Tensor<E>> out;
  if (N == 0) {
    out.emplace(Monomial(V.dim(), 0), Tensor<E>::identity(V, 0, p.elem(0)));
    return out;
  }
  Tensor<E> shape(V, N, p.elem(0));
  for (int b = 0; b < shape.side(); ++b) {
    auto beta = shape.word_of(b);
    enumerate_lattice(
        V, N, beta, p, z,
        [&](const LatticeConfig& c, const Jet<E>& w) {
          LoopData ld = trace_loops(V, c);
          Monomial m = lattice_monomial(ld);
          auto it = out.find(m);
          if (it == out.end()) it = out.emplace(m, Tensor<E>(V, N, p.elem(0))).first;
          it->second.at(shape.index_of(c.alpha), b) += w;
        },
        budget);
  }
  return out;
}

/// Z_{alpha, beta} as a polynomial in u.
template <class E>
std::map<Monomial, Jet<E>> partition_function(const GradedSpace& V, const std::vector<int>& alpha,
                                              const std::vector<int>& beta, const Params<E>& p, const Point<E>& z,
                                              LatticeBudget budget = {}) {
  if (alpha.size() != beta.size()) throw PositionOutOfRange("alpha and beta must have the same length");
  const int N = static_cast<int>(beta.size());
  std::map<Monomial, Jet<E>> out;
  if (N == 0) {
    out.emplace(Monomial(V.dim(), 0), p.one());
    return out;
  }
  for (int a : alpha) V.check_label(a);
  enumerate_lattice(
      V, N, beta, p, z,
      [&](const LatticeConfig& c, const Jet<E>& w) {
        if (c.alpha != alpha) return;
        LoopData ld = trace_loops(V, c);
        auto m = lattice_monomial(ld);
        auto it = out.find(m);
        if (it == out.end())
          out.emplace(m, w);
        else
          it->second += w;
      },
      budget);
  return out;
}

}  // namespace mshuffle
