#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "mshuffle/errors.hpp"
#include "mshuffle/family.hpp"
#include "mshuffle/params.hpp"
#include "mshuffle/rmatrix.hpp"
#include "mshuffle/series.hpp"
#include "mshuffle/shuffle.hpp"
#include "mshuffle/tensor.hpp"
#include "mshuffle/trace_maps.hpp"

namespace mshuffle {

/// Exponents of u_1..u_{n+m}.
using Monomial = std::vector<int>;

/// A polynomial in u with shuffle-element coefficients, and a series of those in v.
template <class E>
using UPoly = std::map<Monomial, Family<E>>;
template <class E>
using USeries = std::map<int, UPoly<E>>;

/// All exponent vectors of length d summing to N, in lexicographic order.
inline std::vector<Monomial> monomials(int d, int N) {
  std::vector<Monomial> out;
  Monomial cur(d, 0);
  auto rec = [&](auto&& self, int pos, int left) -> void {
    if (pos == d - 1) {
      cur[pos] = left;
      out.push_back(cur);
      return;
    }
    for (int x = left; x >= 0; --x) {
      cur[pos] = x;
      self(self, pos + 1, left - x);
    }
  };
  if (d == 0) {
    if (N == 0) out.push_back({});
    return out;
  }
  rec(rec, 0, N);
  return out;
}

inline std::string monomial_str(const Monomial& m) {
  std::string out;
  for (size_t i = 0; i < m.size(); ++i)
    if (m[i]) out += "u" + std::to_string(i + 1) + (m[i] > 1 ? "^" + std::to_string(m[i]) : "");
  return out.empty() ? "1" : out;
}

/// H_k^{(i)} = E_ii (x) .. (x) E_ii with k factors; the unit for k = 0.
template <class E>
Family<E> h_element(const GradedSpace& V, int i, int k, Algebra tag = Algebra::Plus) {
  V.check_label(i);
  if (k < 0) throw PositionOutOfRange("negative arity");
  if (k == 0) return Family<E>::unit(V).tagged(tag);
  std::string nm = std::string(tag == Algebra::Prime ? "H'" : "H") + std::to_string(k) + "^(" + std::to_string(i) + ")";
  return Family<E>::units(V, {{std::vector<int>(k, i), std::vector<int>(k, i)}}, nm).tagged(tag);
}

/// Sum of E_{l1 l1} (x) .. (x) E_{lN lN} over words l with multiplicities kappa.
template <class E>
Family<E> diagonal_word_sum(const GradedSpace& V, const Monomial& kappa, Algebra tag = Algebra::Plus) {
  if (static_cast<int>(kappa.size()) != V.dim()) throw SpaceMismatch("multiplicity vector of the wrong length");
  int N = 0;
  for (int x : kappa) N += x;
  Family<E> out(
      V, N,
      [V, kappa, N](const Params<E>& p, const Point<E>&) {
        Tensor<E> t(V, N, p.elem(0));
        for (int w = 0; w < t.side(); ++w) {
          auto word = t.word_of(w);
          Monomial m(V.dim(), 0);
          for (int x : word) ++m[x - 1];
          if (m == kappa) t.at(w, w) = p.one();
        }
        return t;
      },
      0, "D" + monomial_str(kappa));
  out.algebra = tag;
  return out;
}

namespace detail {

template <class E>
Jet<E> sum_of(const Params<E>& p, const Point<E>& z) {
  Jet<E> acc = p.zero();
  for (const auto& x : z) acc += x;
  if (acc.is_zero()) throw SumOfVariablesZero("z_1 + .. + z_k vanishes at the sample point");
  return acc;
}

/// (z_1 + .. + z_l) X
template <class E>
Family<E> times_sum(const Family<E>& X) {
  Family<E> out = X.scaled(
      [](const Params<E>& p, const Point<E>& z) {
        Jet<E> acc = p.zero();
        for (const auto& x : z) acc += x;
        return acc;
      },
      1);
  out.name = "zsum*" + X.name;
  return out;
}

template <class E>
Family<E> commutator(const Family<E>& A, const Family<E>& B) {
  return shuffle_product(A, B) - shuffle_product(B, A);
}

}  // namespace detail

/// S_1^{(i)} = -1/(1-q) diag(1 .. 1, q .. q) with i ones; i = 0 gives q S_1^{(n+m)}.
template <class E>
Family<E> s_initial(const GradedSpace& V, int i) {
  const int d = V.dim();
  if (i < 0 || i > d) throw LabelOutOfRange("S index " + std::to_string(i) + " outside 0.." + std::to_string(d));
  Family<E> out(
      V, 1,
      [V, i, d](const Params<E>& p, const Point<E>&) {
        Tensor<E> t(V, 1, p.elem(0));
        Jet<E> c = -(p.one() - p.q).inv();
        for (int j = 1; j <= d; ++j) t.at(j - 1, j - 1) = c * (i > 0 && j > i ? p.q : p.one()) * (i == 0 ? p.q : p.one());
        return t;
      },
      2, "S1^(" + std::to_string(i) + ")");
  return out;
}

/// S_k^{(i)} through (z_1 + .. + z_k) S_k = [S_{k-1}, z_1 S_1], divided pointwise by the sum.
/// S_0 is the unit; i = 0 is the alias q^k S_k^{(n+m)}.
template <class E>
Family<E> s_element(const GradedSpace& V, int i, int k) {
  if (k < 0) throw PositionOutOfRange("negative arity");
  if (k == 0) return Family<E>::unit(V);
  Family<E> s1 = s_initial<E>(V, i);
  Family<E> cur = s1;
  Family<E> zs1 = detail::times_sum(s1);
  for (int j = 2; j <= k; ++j) {
    Family<E> c = detail::commutator(cur, zs1);
    Family<E> next = c.scaled([](const Params<E>& p, const Point<E>& z) { return detail::sum_of(p, z).inv(); }, j);
    next.name = "S" + std::to_string(j) + "^(" + std::to_string(i) + ")";
    cur = next;
  }
  return cur;
}

/// The right side of (z_1 + .. + z_k) S_k = [S_{k-l}, (z_1 + .. + z_l) S_l] divided by the sum.
template <class E>
Family<E> s_element_split(const GradedSpace& V, int i, int k, int l) {
  if (!(1 <= l && l < k)) throw PositionOutOfRange("split index must satisfy 1 <= l < k");
  Family<E> c = detail::commutator(s_element<E>(V, i, k - l), detail::times_sum(s_element<E>(V, i, l)));
  return c.scaled([](const Params<E>& p, const Point<E>& z) { return detail::sum_of(p, z).inv(); }, k);
}

/// P_k^{(i)} = S_k^{(i-1)} - S_k^{(i)}, reading S^{(0)} as q^k S^{(n+m)}.
template <class E>
Family<E> p_element(const GradedSpace& V, int i, int k) {
  V.check_label(i);
  if (k < 1) throw PositionOutOfRange("P_k needs k >= 1");
  Family<E> out = s_element<E>(V, i - 1, k) - s_element<E>(V, i, k);
  out.name = "P" + std::to_string(k) + "^(" + std::to_string(i) + ")";
  return out;
}

/// Tr_{N+1..2N}[ prod_j prod_i R-check_{N+j-i}(z_{N-i+1} / (q z_j)) (id (x) X) ], the product
/// written out factor by factor.
template <class E>
Tensor<E> twisted_trace(const GradedSpace& V, const Params<E>& p, const Point<E>& z, const Tensor<E>& X) {
  const int N = static_cast<int>(z.size());
  Tensor<E> y = Tensor<E>::identity(V, N, p.elem(0)).kron(X);
  OperatorProduct<E> prod(V, 2 * N);
  for (int j = 1; j <= N; ++j)
    for (int i = 1; i <= N; ++i) {
      int a = N + j - i;
      prod.right_multiply(r_check(V, p, z[N - i] / (p.q * z[j - 1])), {a, a + 1});
    }
  y = prod.apply_left(y);
  std::vector<int> tail;
  for (int a = N + 1; a <= 2 * N; ++a) tail.push_back(a);
  return y.partial_trace(tail);
}

/// The coefficient of u^kappa in Z_N.
template <class E>
Family<E> z_trace_coefficient(const GradedSpace& V, const Monomial& kappa) {
  Family<E> d = diagonal_word_sum<E>(V, kappa);
  Family<E> out(
      V, d.arity, [V, d](const Params<E>& p, const Point<E>& z) { return twisted_trace(V, p, z, d(p, z)); },
      4 * d.arity * d.arity + 4, "Z[" + monomial_str(kappa) + "]");
  return out;
}

/// Z_N at numeric u: the twist u-hat^{(x)N} inserted literally.
template <class E>
Tensor<E> z_trace_at(const GradedSpace& V, const Params<E>& p, const Point<E>& z, const std::vector<Jet<E>>& u) {
  if (static_cast<int>(u.size()) != V.dim()) throw SpaceMismatch("one u per label is needed");
  Tensor<E> uhat(V, 1, p.elem(0));
  for (int i = 0; i < V.dim(); ++i) uhat.at(i, i) = u[i];
  Tensor<E> tw = Tensor<E>::identity(V, 0, p.elem(0));
  for (size_t a = 0; a < z.size(); ++a) tw = tw.kron(uhat);
  return twisted_trace(V, p, z, tw);
}

/// Z_N split by u-monomials.
template <class E>
UPoly<E> z_trace(const GradedSpace& V, int N) {
  UPoly<E> out;
  for (const auto& kappa : monomials(V.dim(), N)) out.emplace(kappa, z_trace_coefficient<E>(V, kappa));
  return out;
}

/// The embedding that inserts labels a+1 (even) and a+2 (odd) into V, with V' = gl(1|1) on them.
inline EmbeddingSpec s_trace_spec(const GradedSpace& V, int a) {
  const int d = V.dim();
  if (a < 0 || a > d) throw LabelOutOfRange("S index outside 0..n+m");
  std::vector<int> g;
  for (int j = 1; j <= a; ++j) g.push_back(V.eps(j));
  g.push_back(1);
  g.push_back(-1);
  for (int j = a + 1; j <= d; ++j) g.push_back(V.eps(j));
  std::vector<int> iota;
  for (int j = 1; j <= d; ++j) iota.push_back(j <= a ? j : j + 2);
  return EmbeddingSpec(V, GradedSpace(std::vector<int>{1, -1}), GradedSpace(g), iota, {a + 1, a + 2});
}

/// The embedding that inserts one label of grading eps at position a (1-based) into V, with V' one-dimensional.
inline EmbeddingSpec insertion_spec(const GradedSpace& V, int a, int eps) {
  const int d = V.dim();
  if (a < 1 || a > d + 1) throw LabelOutOfRange("insertion position outside 1..n+m+1");
  std::vector<int> g;
  for (int j = 1; j < a; ++j) g.push_back(V.eps(j));
  g.push_back(eps);
  for (int j = a; j <= d; ++j) g.push_back(V.eps(j));
  std::vector<int> iota;
  for (int j = 1; j <= d; ++j) iota.push_back(j < a ? j : j + 1);
  return EmbeddingSpec(V, GradedSpace(std::vector<int>{eps}), GradedSpace(g), iota, {a});
}

/// Sum over l in {1,2}^k of (-1)^{m_2} m_2 E_{l1 l1} (x) .. over gl(1|1).
template <class E>
Family<E> s_trace_weight(int k) {
  GradedSpace W(std::vector<int>{1, -1});
  Family<E> out(
      W, k,
      [W, k](const Params<E>& p, const Point<E>&) {
        Tensor<E> t(W, k, p.elem(0));
        for (int w = 0; w < t.side(); ++w) {
          int m2 = 0;
          for (int x : t.word_of(w)) m2 += x == 2;
          if (m2) t.at(w, w) = p.c(m2 % 2 ? -m2 : m2);
        }
        return t;
      },
      0, "weights");
  out.algebra = Algebra::Prime;
  return out;
}

/// S_k^{(a)} = -1/(t^{-k/2} - t^{k/2}) Psi-tilde[ weighted diagonal sum ] on gl(n+1|m+1).
template <class E>
Family<E> s_element_via_trace(const GradedSpace& V, int a, int k) {
  if (k < 1) throw PositionOutOfRange("trace formula needs k >= 1");
  Family<E> out = psi_tilde(s_trace_weight<E>(k), s_trace_spec(V, a))
                      .scaled([k](const Params<E>& p, const Point<E>&) { return -(p.s.pow(-k) - p.s.pow(k)).inv(); }, 2);
  out.name = "S" + std::to_string(k) + "^(" + std::to_string(a) + ")~";
  return out;
}

/// Degree-d parts of exp(sum_d series[d]) where coefficients are u-polynomials; degree 0 is the unit.
template <class E>
USeries<E> u_shuffle_exp(const USeries<E>& series, int N, const GradedSpace& V, std::uint64_t characteristic) {
  detail::check_characteristic(characteristic, N);
  const Monomial zero(V.dim(), 0);
  auto add_to = [](UPoly<E>& acc, const Monomial& m, const Family<E>& f) {
    auto it = acc.find(m);
    if (it == acc.end())
      acc.emplace(m, f);
    else
      it->second = it->second + f;
  };
  auto mono_add = [](Monomial a, const Monomial& b) {
    for (size_t i = 0; i < a.size(); ++i) a[i] += b[i];
    return a;
  };
  // powers[r][d] is the degree-d part of Y^r
  std::vector<std::map<int, UPoly<E>>> powers(N + 1);
  powers[0][0].emplace(zero, Family<E>::unit(V));
  for (int r = 1; r <= N; ++r)
    for (const auto& [d0, poly0] : powers[r - 1])
      for (const auto& [d1, poly1] : series) {
        if (d1 < 1) throw ConfigError("series must start in degree 1");
        if (d0 + d1 > N) continue;
        for (const auto& [m0, f0] : poly0)
          for (const auto& [m1, f1] : poly1) add_to(powers[r][d0 + d1], mono_add(m0, m1), shuffle_product(f0, f1));
      }
  USeries<E> out;
  out[0].emplace(zero, Family<E>::unit(V));
  for (int r = 1; r <= N; ++r) {
    std::int64_t fact = detail::factorial(r);
    for (const auto& [d, poly] : powers[r])
      for (const auto& [m, f] : poly)
        add_to(out[d], m, f.scaled([fact](const Params<E>& p, const Point<E>&) { return p.c(fact).inv(); }, 0));
  }
  return out;
}

namespace detail {

/// scaled by a function of the parameters only
template <class E, class Fn>
Family<E> times_const(const Family<E>& f, Fn&& c) {
  return f.scaled([c](const Params<E>& p, const Point<E>&) { return c(p); }, 0);
}

}  // namespace detail

/// Exponent of the H-series: degree k carries (-1)^{k-1}/k P_k^{(i)}.
template <class E>
Series<E> h_log_series(const GradedSpace& V, int i, int N) {
  Series<E> out;
  for (int k = 1; k <= N; ++k)
    out.emplace(k, detail::times_const(p_element<E>(V, i, k), [k](const Params<E>& p) {
                  return p.c(k % 2 ? 1 : -1) * p.c(k).inv();
                }));
  return out;
}

/// Exponent of Psi[H'^{(j)}(x)] written with P:
/// sum_i eps_j^k/k (t^{eps_j k/2} - q^{[i=j]k} t^{-eps_j k/2}) / (1 - q^k) q^{k[i>j]} P_k^{(i)}.
template <class E>
Series<E> psi_h_exponent_p(const GradedSpace& V, int j, int N) {
  V.check_label(j);
  const int ej = V.eps(j);
  Series<E> out;
  for (int k = 1; k <= N; ++k) {
    Family<E> acc;
    for (int i = 1; i <= V.dim(); ++i) {
      Family<E> term = detail::times_const(p_element<E>(V, i, k), [=](const Params<E>& p) {
        Jet<E> num = p.s.pow(ej * k) - (i == j ? p.q.pow(k) : p.one()) * p.s.pow(-ej * k);
        Jet<E> c = p.c(ej).pow(k) * p.c(k).inv() * num / (p.one() - p.q.pow(k));
        return i > j ? c * p.q.pow(k) : c;
      });
      acc = i == 1 ? term : acc + term;
    }
    out.emplace(k, acc);
  }
  return out;
}

/// The same exponent written with S: eps_j^k/k (t^{-eps_j k/2} S_k^{(j-1)} - t^{eps_j k/2} S_k^{(j)}).
template <class E>
Series<E> psi_h_exponent_s(const GradedSpace& V, int j, int N) {
  V.check_label(j);
  const int ej = V.eps(j);
  Series<E> out;
  for (int k = 1; k <= N; ++k) {
    auto pre = [=](const Params<E>& p) { return p.c(ej).pow(k) * p.c(k).inv(); };
    Family<E> a = detail::times_const(s_element<E>(V, j - 1, k), [=](const Params<E>& p) { return pre(p) * p.s.pow(-ej * k); });
    Family<E> b = detail::times_const(s_element<E>(V, j, k), [=](const Params<E>& p) { return pre(p) * p.s.pow(ej * k); });
    out.emplace(k, a - b);
  }
  return out;
}

/// Exponent of Z(v): v^k/k sum_i (w_{i+1}^k - t^{eps_i k} w_i^k) S_k^{(i)} with
/// w_i = t^{-eps_i/2} eps_i u_i and w_{n+m+1} = q w_1, split by u-monomial.
template <class E>
USeries<E> z_exponent(const GradedSpace& V, int N) {
  const int d = V.dim();
  USeries<E> out;
  for (int k = 1; k <= N; ++k) {
    UPoly<E>& poly = out[k];
    for (int i = 1; i <= d; ++i) {
      Family<E> s = s_element<E>(V, i, k);
      const int ei = V.eps(i);
      int nxt = i == d ? 1 : i + 1;
      const int en = V.eps(nxt);
      bool wrap = i == d;
      // w_{i+1}^k term
      Family<E> up = detail::times_const(s, [=](const Params<E>& p) {
        Jet<E> w = p.s.pow(-en * k) * p.c(en).pow(k) * p.c(k).inv();
        return wrap ? w * p.q.pow(k) : w;
      });
      // -t^{eps_i k} w_i^k term
      Family<E> down = detail::times_const(s, [=](const Params<E>& p) {
        return -(p.s.pow(ei * k) * p.c(ei).pow(k) * p.c(k).inv());
      });
      Monomial mu(d, 0), md(d, 0);
      mu[nxt - 1] = k;
      md[i - 1] = k;
      for (auto [m, f] : {std::pair{mu, up}, std::pair{md, down}}) {
        auto it = poly.find(m);
        if (it == poly.end())
          poly.emplace(m, f);
        else
          it->second = it->second + f;
      }
    }
  }
  return out;
}

/// Exponent for Psi-tilde[H'(x)] with one inserted label of grading eps at position a:
/// x^k/k eps^{k+1} (t^{-k/2} - t^{k/2}) S_k^{(a-1)}.
template <class E>
Series<E> tilde_insertion_exponent(const GradedSpace& V, int a, int eps, int N) {
  Series<E> out;
  for (int k = 1; k <= N; ++k)
    out.emplace(k, detail::times_const(s_element<E>(V, a - 1, k), [=](const Params<E>& p) {
                  return p.c(eps).pow(k + 1) * p.c(k).inv() * (p.s.pow(-k) - p.s.pow(k));
                }));
  return out;
}

/// Exponents for Psi-tilde[H'^{(1)}(x)] (sign = +1) and Psi-tilde[H'^{(2)}(x)] (sign = -1) on the
/// gl(1|1) block at a, a+1: x^k/k sign^{k+1} (t^{-k/2} - t^{k/2}) S_k^{(a-1)}.
template <class E>
Series<E> tilde_pair_exponent(const GradedSpace& V, int a, int sign, int N) {
  return tilde_insertion_exponent<E>(V, a, sign, N);
}

/// Coefficients b_0..b_N of exp(sum_{k>=1} a_k x^k); a[0] is ignored.
template <class E>
std::vector<Jet<E>> scalar_exp(const std::vector<Jet<E>>& a, int N, const Params<E>& p) {
  std::vector<Jet<E>> b(N + 1, p.zero());
  b[0] = p.one();
  for (int n = 1; n <= N; ++n) {
    Jet<E> acc = p.zero();
    for (int k = 1; k <= n && k < static_cast<int>(a.size()); ++k) acc += p.c(k) * a[k] * b[n - k];
    b[n] = acc * p.c(n).inv();
  }
  return b;
}

/// Exponent of the alpha_i generating series of Psi[H'^{(j)}(x)] up to x^N, index 0 unused.
template <class E>
std::vector<Jet<E>> alpha_psi_exponent(const GradedSpace& V, int i, int j, int N, const Params<E>& p) {
  const int ej = V.eps(j);
  std::vector<Jet<E>> a(N + 1, p.zero());
  for (int k = 1; k <= N; ++k) {
    Jet<E> num = p.s.pow(ej * k) - (i == j ? p.q.pow(k) : p.one()) * p.s.pow(-ej * k);
    a[k] = p.c(ej).pow(k) * p.c(k).inv() * num / (p.one() - p.q.pow(k));
    if (i > j) a[k] *= p.q.pow(k);
  }
  return a;
}

/// alpha_i(Psi[E_jj^{(x)k}]) in closed form.
template <class E>
Jet<E> alpha_psi_closed_form(const GradedSpace& V, int i, int j, int k, const Params<E>& p) {
  V.check_label(i);
  V.check_label(j);
  const int ej = V.eps(j);
  Jet<E> acc = p.one();
  for (int l = 1; l <= k; ++l) {
    Jet<E> ql = p.q.pow(i == j ? l : l - 1);
    acc *= p.c(ej) * (p.s.pow(ej) - ql * p.s.pow(-ej)) / (p.one() - p.q.pow(l));
  }
  if (i > j) acc *= p.q.pow(k);
  return acc;
}

}  // namespace mshuffle
