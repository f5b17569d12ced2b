#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "mshuffle/errors.hpp"
#include "mshuffle/family.hpp"
#include "mshuffle/identity.hpp"
#include "mshuffle/params.hpp"
#include "mshuffle/rmatrix.hpp"
#include "mshuffle/shuffle.hpp"
#include "mshuffle/tensor.hpp"

namespace mshuffle {

namespace detail {

inline std::vector<int> slot_range(int from, int count) {
  std::vector<int> out;
  for (int i = 0; i < count; ++i) out.push_back(from + i);
  return out;
}

inline int trace_map_degree(int deg, int k) { return deg + 4 * k * k + 4; }

/// Partial trace of a 2k-factor tensor over slots k+1..2k, summing only traced
/// labels drawn from `allowed`.
template <class E>
Tensor<E> block_trace_tail(const Tensor<E>& T, int k, const std::vector<int>& allowed) {
  const GradedSpace& V = T.space();
  Tensor<E> out(V, k, T.zero_elem());
  std::vector<std::vector<int>> tails;
  // all words in allowed^k
  const int a = static_cast<int>(allowed.size());
  int total = 1;
  for (int i = 0; i < k; ++i) total *= a;
  for (int idx = 0; idx < total; ++idx) {
    std::vector<int> w(k);
    int x = idx;
    for (int i = k - 1; i >= 0; --i) {
      w[i] = allowed[x % a];
      x /= a;
    }
    tails.push_back(std::move(w));
  }
  for (int r = 0; r < out.side(); ++r)
    for (int c = 0; c < out.side(); ++c) {
      auto rw = out.word_of(r), cw = out.word_of(c);
      Jet<E> acc = out.zero_jet();
      for (const auto& tl : tails) {
        auto R = rw, C = cw;
        R.insert(R.end(), tl.begin(), tl.end());
        C.insert(C.end(), tl.begin(), tl.end());
        const Jet<E>& v = T.entry(R, C);
        if (!v.is_exact_zero()) acc += v;
      }
      out.at(r, c) = acc;
    }
  return out;
}

}  // namespace detail

/// Psi[X] = Tr_{k+1..2k}[ R-check_{omega^k}(qz, z) X_{k+1..2k}(z) ]. The result is tagged A+.
template <class E>
Family<E> psi(const Family<E>& X) {
  const int k = X.arity;
  const GradedSpace V = X.space;
  Family<E> out(
      V, k,
      [X, V, k](const Params<E>& p, const Point<E>& z) {
        Tensor<E> y = Tensor<E>::identity(V, k, p.elem(0)).kron(X(p, z));
        y = crossing_block(V, p, scale_point(z, p.q), z).apply_left(y);
        return y.partial_trace(detail::slot_range(k + 1, k));
      },
      detail::trace_map_degree(X.degree_bound, k), "Psi(" + X.name + ")");
  out.algebra = Algebra::Plus;
  return out;
}

/// Psi'[X] = Tr_{1..k}[ R-check-bullet_{omega^k}(z, qz) X_{1..k}(z) ]. The result is tagged A'.
template <class E>
Family<E> psi_prime(const Family<E>& X) {
  const int k = X.arity;
  const GradedSpace V = X.space;
  if (!V.is_standard()) throw GradingMismatch("Psi' needs the standard grading order");
  Family<E> out(
      V, k,
      [X, V, k](const Params<E>& p, const Point<E>& z) {
        Tensor<E> y = X(p, z).kron(Tensor<E>::identity(V, k, p.elem(0)));
        y = crossing_block_bullet(V, p, z, scale_point(z, p.q)).apply_left(y);
        return y.partial_trace(detail::slot_range(1, k));
      },
      detail::trace_map_degree(X.degree_bound, k), "Psi'(" + X.name + ")");
  out.algebra = Algebra::Prime;
  return out;
}

/// Coordinate embeddings iota: I -> I'' and iota': I' -> I''. The projections
/// pi, pi' are their partial inverses.
struct EmbeddingSpec {
  GradedSpace V{1, 0};
  GradedSpace Vp{1, 0};
  GradedSpace Vpp{1, 0};
  std::vector<int> iota;
  std::vector<int> iota_p;

  EmbeddingSpec() = default;
  EmbeddingSpec(GradedSpace v, GradedSpace vp, GradedSpace vpp, std::vector<int> i, std::vector<int> ip)
      : V(std::move(v)), Vp(std::move(vp)), Vpp(std::move(vpp)), iota(std::move(i)), iota_p(std::move(ip)) {
    validate();
  }

  /// Identity embeddings of V into itself.
  static EmbeddingSpec trivial(const GradedSpace& V) {
    std::vector<int> id;
    for (int i = 1; i <= V.dim(); ++i) id.push_back(i);
    return EmbeddingSpec(V, V, V, id, id);
  }

  void validate() const {
    check_map(V, iota, "iota");
    check_map(Vp, iota_p, "iota'");
    std::vector<bool> hit(Vpp.dim(), false);
    for (int x : iota) hit[x - 1] = true;
    for (int x : iota_p) hit[x - 1] = true;
    if (std::find(hit.begin(), hit.end(), false) != hit.end())
      throw GradingMismatch("iota(I) and iota'(I') must cover the labels of V''");
  }

 private:
  void check_map(const GradedSpace& src, const std::vector<int>& m, const char* what) const {
    if (static_cast<int>(m.size()) != src.dim()) throw GradingMismatch(std::string(what) + " has the wrong length");
    for (size_t i = 0; i < m.size(); ++i) {
      Vpp.check_label(m[i]);
      if (i > 0 && m[i] <= m[i - 1]) throw GradingMismatch(std::string(what) + " must be increasing");
      if (Vpp.eps(m[i]) != src.eps(static_cast<int>(i) + 1))
        throw GradingMismatch(std::string(what) + " does not preserve the grading at label " + std::to_string(i + 1));
    }
  }
};

/// pi^{(x)k} Tr_{k+1..2k}[ R''_{omega^k}(qz, z) (id (x) iota' X pi') ] iota^{(x)k}. The trace is
/// taken over all of V''; the result is checked against the trace over the iota'(V') block.
template <class E>
Family<E> psi_tilde(const Family<E>& X, const EmbeddingSpec& spec) {
  if (X.space != spec.Vp) throw SpaceMismatch("Psi-tilde input must live over V'");
  const int k = X.arity;
  Family<E> out(
      spec.V, k,
      [X, spec, k](const Params<E>& p, const Point<E>& z) {
        const GradedSpace& W = spec.Vpp;
        Tensor<E> y = Tensor<E>::identity(W, k, p.elem(0)).kron(X(p, z).embed(W, spec.iota_p));
        y = crossing_block(W, p, scale_point(z, p.q), z).apply_left(y);
        Tensor<E> full = y.partial_trace(detail::slot_range(k + 1, k));
        Tensor<E> block = detail::block_trace_tail(y, k, spec.iota_p);
        if (!full.agrees(block)) throw GradingMismatch("labels outside iota'(V') contribute to the trace");
        return full.project(spec.V, spec.iota);
      },
      detail::trace_map_degree(X.degree_bound, k), "Psi~(" + X.name + ")");
  out.algebra = Algebra::Plus;
  return out;
}

/// Psi[A *' B] = Psi[B] * Psi[A] at random points; A and B are tagged A'.
template <class Field, class E = typename Field::Elem>
IdentityResult check_anti_hom(const Family<E>& A, const Family<E>& B, Sampler<Field>& sampler, int trials) {
  Family<E> lhs = psi(shuffle_product_prime(A, B));
  Family<E> rhs = shuffle_product(psi(B), psi(A));
  return prob_equal(sampler, A.arity + B.arity, trials, std::max(lhs.degree_bound, rhs.degree_bound),
                    [&](const Params<E>& p, const Point<E>& z) { return lhs(p, z); },
                    [&](const Params<E>& p, const Point<E>& z) { return rhs(p, z); });
}

/// Gamma+_{Psi[A],Psi[B]}(w) = Psi[Gamma'_{B,A}](w) at random points.
template <class Field, class E = typename Field::Elem>
IdentityResult check_gamma_anti_hom(const Family<E>& A, const Family<E>& B, Sampler<Field>& sampler, int trials) {
  const int N = A.arity + B.arity;
  Family<E> pa = psi(A), pb = psi(B);
  Family<E> g(
      A.space, N, [A, B](const Params<E>& p, const Point<E>& w) { return gamma_prime(B, A, p, w); },
      detail::product_degree(A.degree_bound, B.degree_bound, A.arity, B.arity), "Gamma'");
  Family<E> rhs = psi(g);
  return prob_equal(sampler, N, trials, rhs.degree_bound,
                    [&](const Params<E>& p, const Point<E>& w) { return gamma_plus(pa, pb, p, w); },
                    [&](const Params<E>& p, const Point<E>& w) { return rhs(p, w); });
}

/// The two sides of Tr[F (x) G] = Tr[ R-bullet_{omega^k}(w, z) F_{1..l} R-check_{omega^l}(z, w) G_{1..k} ]
/// with F of arity l = |w| and G of arity k = |z|.
template <class E>
std::pair<Jet<E>, Jet<E>> trace_identity_sides(const Tensor<E>& F, const Tensor<E>& G, const Params<E>& p,
                                               const Point<E>& z, const Point<E>& w) {
  const int l = F.arity(), k = G.arity();
  if (static_cast<int>(z.size()) != k || static_cast<int>(w.size()) != l)
    throw PositionOutOfRange("trace identity needs |z| = arity(G) and |w| = arity(F)");
  const GradedSpace& V = F.space();
  Tensor<E> lhs = F.kron(G).partial_trace(detail::slot_range(1, k + l));
  Tensor<E> id = Tensor<E>::identity(V, k + l, p.elem(0));
  Tensor<E> y = id.apply_left(G, detail::slot_range(1, k));
  y = crossing_block(V, p, z, w).apply_left(y);
  y = y.apply_left(F, detail::slot_range(1, l));
  y = crossing_block_bullet(V, p, w, z).apply_left(y);
  Tensor<E> rhs = y.partial_trace(detail::slot_range(1, k + l));
  return {lhs.at(0, 0), rhs.at(0, 0)};
}

template <class E>
bool trace_identity_check(const Tensor<E>& F, const Tensor<E>& G, const Params<E>& p, const Point<E>& z,
                          const Point<E>& w) {
  auto [a, b] = trace_identity_sides(F, G, p, z, w);
  return detail::values_agree(a, b);
}

}  // namespace mshuffle
