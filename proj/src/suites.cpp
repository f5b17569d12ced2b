#include "mshuffle/suites.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iterator>
#include <random>
#include <thread>
#include <utility>

#include "mshuffle/commuting.hpp"
#include "mshuffle/identity.hpp"
#include "mshuffle/lattice.hpp"
#include "mshuffle/residue.hpp"
#include "mshuffle/rmatrix.hpp"
#include "mshuffle/series.hpp"
#include "mshuffle/shuffle.hpp"
#include "mshuffle/trace_maps.hpp"
#include "mshuffle/wheel.hpp"

namespace mshuffle {

namespace {

using J = Jet<Fp>;
using T = Tensor<Fp>;
using Fam = Family<Fp>;
using P = Params<Fp>;
using Z = Point<Fp>;
using Smp = Sampler<PrimeField>;

constexpr int kReportVersion = 1;

/// Records checks for one suite.
class Runner {
 public:
  Runner(const RunConfig& cfg, std::string suite, std::vector<CheckResult>& out)
      : cfg_(cfg), suite_(std::move(suite)), out_(out) {}

  const RunConfig& cfg() const { return cfg_; }
  int trials() const { return cfg_.trials; }

  Smp sampler(const std::string& id) const {
    SampleConfig sc;
    sc.kmax = std::max(cfg_.kmax, 4);
    sc.jet_order = cfg_.jet_order;
    return Smp(PrimeField{cfg_.prime}, substream(cfg_.seed, id), sc);
  }

  /// fn(sampler) -> IdentityResult. A pass on a super space is reported as
  /// conjecture-supported when `conjectural` is set.
  void check(const std::string& id, const std::string& identity, bool conjectural,
             const std::function<IdentityResult(Smp&)>& fn) {
    CheckResult r;
    r.id = suite_ + "/" + id;
    r.suite = suite_;
    r.identity = identity;
    auto t0 = std::chrono::steady_clock::now();
    try {
      Smp smp = sampler(r.id);
      IdentityResult res = fn(smp);
      r.trials = res.trials;
      r.points = res.points;
      r.failure_bound = res.failure_bound;
      r.detail = res.detail;
      r.status = res.equal ? (conjectural ? "conjecture-supported" : "pass") : "fail";
    } catch (const std::exception& e) {
      r.status = "error";
      r.detail = e.what();
    }
    r.elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    out_.push_back(std::move(r));
  }

 private:
  const RunConfig& cfg_;
  std::string suite_;
  std::vector<CheckResult>& out_;
};

/// Folds b into a; the first failure wins.
void merge(IdentityResult& a, const IdentityResult& b) {
  if (a.trials == 0 && a.points == 0) {
    a = b;
    return;
  }
  a.trials += b.trials;
  a.points += b.points;
  a.failure_bound = std::max(a.failure_bound, b.failure_bound);
  if (a.equal && !b.equal) {
    a.equal = false;
    a.detail = b.detail;
  }
}

IdentityResult same(Smp& smp, const Fam& f, const Fam& g, int trials) {
  return prob_equal(smp, f.arity, trials, std::max(f.degree_bound, g.degree_bound),
                    [&](const P& p, const Z& z) { return f(p, z); }, [&](const P& p, const Z& z) { return g(p, z); });
}

IdentityResult zero(Smp& smp, const Fam& f, int trials) {
  return same(smp, f, zero_family<Fp>(f.space, f.arity, f.algebra), trials);
}

/// Adds the configured space to a list when it is small enough and not already present.
std::vector<GradedSpace> with_config_space(std::vector<GradedSpace> base, const RunConfig& cfg, int max_dim) {
  GradedSpace c = cfg.space();
  if (c.dim() <= max_dim && std::find(base.begin(), base.end(), c) == base.end()) base.push_back(c);
  return base;
}

/// gl(n|m), used as the last component of check ids.
std::string space_tag(const GradedSpace& V) {
  return "gl(" + std::to_string(V.n()) + "|" + std::to_string(V.m()) + ")";
}

std::string word_str(const std::vector<int>& w) {
  std::string s;
  for (int x : w) s += std::to_string(x);
  return s;
}

/// Entries a + sum_i b_i z_i + c / z_1 with coefficients fixed by the seed.
Fam random_family(const GradedSpace& V, int k, std::uint64_t seed, const PrimeField& F, Algebra tag) {
  std::mt19937_64 rng(seed);
  int side = 1;
  for (int i = 0; i < k; ++i) side *= V.dim();
  std::vector<Fp> coef;
  for (int i = 0; i < side * side * (k + 2); ++i) coef.push_back(F.random_nonzero(rng));
  Fam out(
      V, k,
      [V, k, side, coef](const P& p, const Z& z) {
        T t(V, k, p.elem(0));
        size_t c = 0;
        for (int r = 0; r < side; ++r)
          for (int col = 0; col < side; ++col) {
            J x(coef[c++], p.order);
            for (int i = 0; i < k; ++i) x += z[i] * coef[c++];
            if (k > 0) x += z[0].inv() * coef[c];
            ++c;
            t.at(r, col) = x;
          }
        return t;
      },
      k + 2, "rand");
  out.algebra = tag;
  return out;
}

T random_tensor(const GradedSpace& V, int k, std::mt19937_64& rng, const P& p, const PrimeField& F) {
  T t(V, k, p.elem(0));
  for (int r = 0; r < t.side(); ++r)
    for (int c = 0; c < t.side(); ++c) t.at(r, c) = J(F.random_nonzero(rng), p.order);
  return t;
}

Fam prime_gen(const GradedSpace& V, int i, int j) { return generator<Fp>(V, i, j).tagged(Algebra::Prime); }

// rmatrix

void suite_rmatrix(Runner& R) {
  auto spaces = with_config_space({GradedSpace(1, 0), GradedSpace(2, 0), GradedSpace(3, 0), GradedSpace(1, 1),
                                   GradedSpace(2, 1)},
                                  R.cfg(), 4);
  for (const auto& V : spaces) {
    R.check("yang-baxter/" + space_tag(V), "braid relation of R-check", false, [&](Smp& smp) {
      return prob_equal(
          smp, 3, R.trials(), 12,
          [&](const P& p, const Z& w) {
            return r_check_embedded(V, p, 1, 3, w[2] / w[1]) * r_check_embedded(V, p, 2, 3, w[2] / w[0]) *
                   r_check_embedded(V, p, 1, 3, w[1] / w[0]);
          },
          [&](const P& p, const Z& w) {
            return r_check_embedded(V, p, 2, 3, w[1] / w[0]) * r_check_embedded(V, p, 1, 3, w[2] / w[0]) *
                   r_check_embedded(V, p, 2, 3, w[2] / w[1]);
          });
    });
    R.check("unitarity/" + space_tag(V), "R-check(x/y) R-check(y/x) = f(x/y)", false, [&](Smp& smp) {
      return prob_equal(
          smp, 2, R.trials(), 8,
          [&](const P& p, const Z& w) { return r_check(V, p, w[0] / w[1]) * r_check(V, p, w[1] / w[0]); },
          [&](const P& p, const Z& w) { return T::identity(V, 2, p.elem(0)) * f_factor(p, w[0] / w[1]); });
    });
    R.check("residue/" + space_tag(V), "dz/z residue of R-check at coincident points", false, [&](Smp& smp) {
      return run_trials(smp, 1, R.trials(), 4, [&](const P& p, const Z& y) -> std::string {
        T res = residue_dz_over_z_tensor([&](const J& x) { return r_check(V, p, x / y[0]); }, y[0]);
        return res.agrees(T::identity(V, 2, p.elem(0)) * (p.s - p.s.inv())) ? "" : "residue differs from (s - 1/s) id";
      });
    });
    R.check("crossing-unitarity/" + space_tag(V), "crossing unitarity with R-check-bullet", false, [&](Smp& smp) {
      return prob_equal(
          smp, 1, R.trials(), 12,
          [&](const P& p, const Z& w) {
            T a = times_flip(r_check_bullet(V, p, w[0])).transpose_slot(2);
            T b = flip_times(r_check(V, p, w[0].inv())).transpose_slot(2);
            return a * b;
          },
          [&](const P& p, const Z&) { return T::identity(V, 2, p.elem(0)); });
    });
  }
}

// shuffle

void suite_shuffle(Runner& R) {
  for (const auto& V : with_config_space({GradedSpace(2, 0), GradedSpace(1, 1)}, R.cfg(), 3)) {
    const int d = V.dim();
    R.check("forms-1-1/" + space_tag(V), "R-check form = Gamma form on generator pairs", false, [&](Smp& smp) {
      IdentityResult acc;
      for (int i = 1; i <= d; ++i)
        for (int j = 1; j <= d; ++j)
          for (int k = 1; k <= d; ++k)
            for (int l = 1; l <= d; ++l) {
              Fam a = generator<Fp>(V, i, j), b = generator<Fp>(V, k, l);
              merge(acc, same(smp, shuffle_product(a, b), shuffle_product_via_gamma(a, b), R.trials()));
            }
      return acc;
    });
    if (d < 2) continue;
    R.check("forms-2-1/" + space_tag(V), "R-check form = Gamma form, arities (2,1)", false, [&](Smp& smp) {
      Fam ab = shuffle_product(generator<Fp>(V, 1, 2), generator<Fp>(V, 2, 1));
      Fam c = generator<Fp>(V, 2, 2);
      return same(smp, shuffle_product(ab, c), shuffle_product_via_gamma(ab, c), R.trials());
    });
    R.check("forms-1-2/" + space_tag(V), "R-check form = Gamma form, arities (1,2)", false, [&](Smp& smp) {
      Fam cd = shuffle_product(generator<Fp>(V, 1, 3), generator<Fp>(V, 2, 2));
      Fam a = generator<Fp>(V, 2, 1);
      return same(smp, shuffle_product(a, cd), shuffle_product_via_gamma(a, cd), R.trials());
    });
  }
}

// wheel

void suite_wheel(Runner& R) {
  for (const auto& V : with_config_space({GradedSpace(2, 0), GradedSpace(1, 1)}, R.cfg(), 2)) {
    Fam x2 = shuffle_product(generator<Fp>(V, 1, 2), generator<Fp>(V, 2, 3));
    Fam x3 = shuffle_product(x2, generator<Fp>(V, 2, 1));
    Fam y3 = shuffle_product(shuffle_product(generator<Fp>(V, 1, 2), generator<Fp>(V, 2, 1)), generator<Fp>(V, 1, 1));
    R.check("lambda-3-reconstruction/" + space_tag(V), "single-block residue through R-check inverses", false, [&](Smp& smp) {
      Fam general = wheel_residue(y3, Composition({3}));
      Fam fast(V, 1, [y3](const P& p, const Z& y) { return wheel_residue_single_block_at(y3, p, y[0]); });
      IdentityResult r = same(smp, general, fast, R.trials());
      auto p = smp.draw_params();
      if (r.equal && general(p, smp.draw_spectral(1)).is_zero()) {
        r.equal = false;
        r.detail = "residue vanishes identically, the comparison is vacuous";
      }
      return r;
    });
    for (const auto& [lam, X] : {std::pair{Composition({2}), x2}, std::pair{Composition({2, 1}), x3},
                                 std::pair{Composition({1, 2}), x3}}) {
      R.check("factorization-" + lam.str() + "/" + space_tag(V), "wheel factorization on a generator product", false,
              [&, lam = lam, X = X](Smp& smp) {
                Fam res = wheel_residue(X, lam);
                return run_trials(smp, lam.length(), R.trials(), res.degree_bound, [&](const P& p, const Z& y) {
                  res(p, y);
                  return std::string();
                });
              });
    }
  }
}

// psi

Fam conjugated(const Fam& X, const std::vector<int>& sigma) {
  const GradedSpace V = X.space;
  return Fam(
      V, X.arity,
      [X, V, sigma](const P& p, const Z& z) {
        T x = X(p, permute_point(z, sigma));
        x = r_check_sigma(V, p, z, sigma).apply_right(x);
        return r_check_sigma_inverse(V, p, z, sigma).apply_left(x);
      },
      X.degree_bound + 8, "conj");
}

void suite_psi(Runner& R) {
  const PrimeField F{R.cfg().prime};
  for (const auto& V : with_config_space({GradedSpace(1, 0), GradedSpace(2, 0), GradedSpace(1, 1)}, R.cfg(), 2)) {
    const int d = V.dim();
    R.check("exchange/" + space_tag(V), "Psi intertwines the exchange relations", false, [&](Smp& smp) {
      Fam X = random_family(V, 3, 11, F, Algebra::Prime);
      IdentityResult acc;
      for (const std::vector<int>& sigma : {std::vector<int>{2, 1, 3}, {3, 1, 2}, {3, 2, 1}}) {
        merge(acc, same(smp, conjugated(psi(X), sigma), psi(conjugated(X, sigma)), R.trials()));
        if (V.is_standard())
          merge(acc, same(smp, conjugated(psi_prime(X), sigma), psi_prime(conjugated(X, sigma)), R.trials()));
      }
      return acc;
    });
    R.check("inverse-pair/" + space_tag(V), "Psi' Psi = id and Psi Psi' = id", false, [&](Smp& smp) {
      IdentityResult acc;
      for (int k = 1; k <= 2; ++k) {
        Fam A = random_family(V, k, 100 + k, F, Algebra::Prime);
        merge(acc, same(smp, psi_prime(psi(A)), A, R.trials()));
        merge(acc, same(smp, psi(psi_prime(A)), A, R.trials()));
      }
      return acc;
    });
    R.check("anti-hom-1-1/" + space_tag(V), "Psi[A *' B] = Psi[B] * Psi[A] on generators", false, [&](Smp& smp) {
      IdentityResult acc;
      for (int a = 1; a <= 2 * d; ++a)
        for (int b = 1; b <= 2 * d; ++b)
          for (int c = 1; c <= d; ++c)
            merge(acc, check_anti_hom(prime_gen(V, a, b), prime_gen(V, c, (a + c) % (2 * d) + 1), smp, R.trials()));
      return acc;
    });
    if (d < 2) continue;
    R.check("anti-hom-2-2/" + space_tag(V), "Psi[A *' B] = Psi[B] * Psi[A], arity two factors", false, [&](Smp& smp) {
      Fam A = shuffle_product_prime(prime_gen(V, 1, 2), prime_gen(V, 2, 1));
      Fam B = shuffle_product_prime(prime_gen(V, 1, 1), prime_gen(V, 2, 3));
      return check_anti_hom(A, B, smp, R.trials());
    });
  }
}

// appendix-a

void suite_appendix_a(Runner& R) {
  const PrimeField F{R.cfg().prime};
  for (const auto& V : with_config_space({GradedSpace(1, 0), GradedSpace(2, 0), GradedSpace(1, 1)}, R.cfg(), 2))
    for (int k = 1; k <= 3; ++k)
      for (int l = 1; k + l <= 4; ++l) {
        R.check("trace-identity-" + std::to_string(k) + "-" + std::to_string(l) + "/" + space_tag(V),
                "Tr[F (x) G] through crossing unitarity", false, [&](Smp& smp) {
                  std::mt19937_64 rng(substream(R.cfg().seed, "dense" + std::to_string(k * 10 + l)));
                  return run_trials(smp, k + l, R.trials(), 4 * (k + l) * (k + l), [&](const P& p, const Z& zw) {
                    T Fm = random_tensor(V, l, rng, p, F), Gm = random_tensor(V, k, rng, p, F);
                    auto [a, b] = trace_identity_sides(Fm, Gm, p, slice(zw, 0, k), slice(zw, k, l));
                    return detail::values_agree(a, b) ? std::string() : detail::describe(a, b);
                  });
                });
      }
}

// appendix-b

void suite_appendix_b(Runner& R) {
  for (const auto& V : with_config_space({GradedSpace(2, 0), GradedSpace(1, 1)}, R.cfg(), 2)) {
    const int d = V.dim();
    for (int j = 1; j <= d; ++j)
      for (int k = 1; k <= R.cfg().kmax; ++k) {
        R.check("alpha-closed-form-j" + std::to_string(j) + "-k" + std::to_string(k) + "/" + space_tag(V),
                "alpha_i(Psi[E_jj^k]) closed form, all i", false, [&](Smp& smp) {
                  Fam x = psi(h_element<Fp>(V, j, k, Algebra::Prime));
                  return run_trials(smp, 1, R.trials(), x.degree_bound, [&](const P& p, const Z& y) -> std::string {
                    for (int i = 1; i <= d; ++i) {
                      J got = alpha_at(x, i, p, y[0]), want = alpha_psi_closed_form(V, i, j, k, p);
                      if (!got.agrees(want)) return "i=" + std::to_string(i) + ": " + detail::describe(got, want);
                    }
                    return "";
                  });
                });
      }
    R.check("q-binomial/" + space_tag(V), "closed form products as exponentials to order 6", false, [&](Smp& smp) {
      return run_trials(smp, 0, R.trials(), 24, [&](const P& p, const Z&) -> std::string {
        for (int i = 1; i <= d; ++i)
          for (int j = 1; j <= d; ++j) {
            auto b = scalar_exp(alpha_psi_exponent(V, i, j, 6, p), 6, p);
            for (int k = 0; k <= 6; ++k)
              if (!b[k].agrees(alpha_psi_closed_form(V, i, j, k, p)))
                return "i=" + std::to_string(i) + " j=" + std::to_string(j) + " k=" + std::to_string(k);
          }
        return "";
      });
    });
  }
}

// commuting

void suite_commuting(Runner& R) {
  const int kmax = R.cfg().kmax, N = R.cfg().order;
  const PrimeField F{R.cfg().prime};
  for (const auto& V : with_config_space({GradedSpace(2, 0), GradedSpace(1, 1)}, R.cfg(), 2)) {
    const int d = V.dim();
    const bool conj = V.m() > 0;
    R.check("s-commute/" + space_tag(V), "S_k^(i) * S_l^(j) = S_l^(j) * S_k^(i), k + l <= kmax + 1", conj, [&](Smp& smp) {
      IdentityResult acc;
      for (int k = 1; k <= kmax; ++k)
        for (int l = 1; k + l <= kmax + 1; ++l)
          for (int i = 1; i <= d; ++i)
            for (int j = 1; j <= d; ++j) {
              if (k == l && j < i) continue;
              Fam a = s_element<Fp>(V, i, k), b = s_element<Fp>(V, j, l);
              merge(acc, zero(smp, shuffle_product(a, b) - shuffle_product(b, a), R.trials()));
            }
      return acc;
    });
    if (kmax >= 3)
      R.check("s-split-recursion/" + space_tag(V), "general split of the S recursion at l = 2, k = 4", conj, [&](Smp& smp) {
        return same(smp, s_element_split<Fp>(V, 1, 4, 2), s_element<Fp>(V, 1, 4), R.trials());
      });
    R.check("p-degree-one/" + space_tag(V), "P_1^(i) = E_ii", conj, [&](Smp& smp) {
      IdentityResult acc;
      for (int i = 1; i <= d; ++i) merge(acc, same(smp, p_element<Fp>(V, i, 1), h_element<Fp>(V, i, 1), R.trials()));
      return acc;
    });
    R.check("p-first-label/" + space_tag(V), "P_k^(1) = q^k S_k^(n+m) - S_k^(1)", conj, [&](Smp& smp) {
      IdentityResult acc;
      for (int k = 1; k <= std::min(kmax, 3); ++k) {
        Fam alt = s_element<Fp>(V, d, k).scaled([k](const P& p, const Z&) { return p.q.pow(k); }, 0) -
                  s_element<Fp>(V, 1, k);
        merge(acc, same(smp, p_element<Fp>(V, 1, k), alt, R.trials()));
      }
      return acc;
    });
    R.check("p-normalization/" + space_tag(V), "alpha_j(P_k^(i)) = delta_ij", conj, [&](Smp& smp) {
      return run_trials(smp, 1, R.trials(), 24, [&](const P& p, const Z& y) -> std::string {
        for (int i = 1; i <= d; ++i)
          for (int k = 1; k <= kmax; ++k) {
            Fam pk = p_element<Fp>(V, i, k);
            for (int j = 1; j <= d; ++j) {
              J a = alpha_at(pk, j, p, y[0]);
              if (!a.agrees(p.c(i == j ? 1 : 0)))
                return "i=" + std::to_string(i) + " j=" + std::to_string(j) + " k=" + std::to_string(k) + ": " + a.dump();
            }
          }
        return "";
      });
    });
    R.check("h-exponential/" + space_tag(V), "H^(i)(x) = exp(sum (-1)^(k-1) P_k^(i) x^k / k)", conj, [&](Smp& smp) {
      IdentityResult acc;
      for (int i = 1; i <= d; ++i) {
        auto e = shuffle_exp(h_log_series<Fp>(V, i, N), N, V, F.characteristic());
        for (int k = 1; k <= N; ++k) merge(acc, same(smp, e.at(k), h_element<Fp>(V, i, k), R.trials()));
      }
      return acc;
    });
    R.check("h-product-expansion/" + space_tag(V), "H_k1^(1) * .. * H_kn^(n) = sum over words, both products", conj,
            [&](Smp& smp) {
              IdentityResult acc;
              for (int n = 1; n <= N; ++n)
                for (const auto& kappa : monomials(d, n))
                  for (Algebra a : {Algebra::Plus, Algebra::Prime}) {
                    Fam lhs = h_element<Fp>(V, 1, kappa[0], a);
                    for (int i = 2; i <= d; ++i) lhs = multiply(lhs, h_element<Fp>(V, i, kappa[i - 1], a));
                    merge(acc, same(smp, lhs, diagonal_word_sum<Fp>(V, kappa, a), R.trials()));
                  }
              return acc;
            });
  }
}

// theorem-1-1

void suite_theorem(Runner& R) {
  const int N = R.cfg().order;
  const PrimeField F{R.cfg().prime};
  for (const auto& V : with_config_space({GradedSpace(2, 0), GradedSpace(1, 1)}, R.cfg(), 2)) {
    const bool conj = V.m() > 0;
    const int d = V.dim();
    USeries<Fp> e;
    bool built = false;
    auto expected = [&]() -> const USeries<Fp>& {
      if (!built) e = u_shuffle_exp(z_exponent<Fp>(V, N), N, V, F.characteristic()), built = true;
      return e;
    };
    for (int n = 1; n <= N; ++n)
      R.check("z-exponential-N" + std::to_string(n) + "/" + space_tag(V),
              "coefficients of v^N u^mu in Z(v) and in the S exponential", conj, [&](Smp& smp) {
                IdentityResult acc;
                const UPoly<Fp>& en = expected().at(n);
                auto zn = z_trace<Fp>(V, n);
                for (const auto& [kappa, f] : zn) {
                  auto it = en.find(kappa);
                  IdentityResult r = it == en.end() ? zero(smp, f, R.trials()) : same(smp, f, it->second, R.trials());
                  if (!r.equal) r.detail = monomial_str(kappa) + ": " + r.detail;
                  merge(acc, r);
                }
                for (const auto& [kappa, f] : en)
                  if (!zn.count(kappa)) merge(acc, zero(smp, f, R.trials()));
                return acc;
              });
    R.check("z-is-psi/" + space_tag(V), "Z_N coefficient = Psi of the diagonal word sum", conj, [&](Smp& smp) {
      IdentityResult acc;
      for (int n = 1; n <= N; ++n)
        for (const auto& kappa : monomials(d, n))
          merge(acc, same(smp, z_trace_coefficient<Fp>(V, kappa), psi(diagonal_word_sum<Fp>(V, kappa, Algebra::Prime)),
                          R.trials()));
      return acc;
    });
    R.check("multiplicativity-chain/" + space_tag(V), "Z(v) = Psi[H'^(1)(v u_1)] * .. * Psi[H'^(n+m)(v u_n+m)]", conj,
            [&](Smp& smp) {
              IdentityResult acc;
              for (int n = 1; n <= N; ++n)
                for (const auto& kappa : monomials(d, n)) {
                  Fam chain = psi(h_element<Fp>(V, 1, kappa[0], Algebra::Prime));
                  for (int i = 2; i <= d; ++i)
                    chain = shuffle_product(chain, psi(h_element<Fp>(V, i, kappa[i - 1], Algebra::Prime)));
                  merge(acc, same(smp, z_trace_coefficient<Fp>(V, kappa), chain, R.trials()));
                }
              return acc;
            });
  }
}

// psi-series

void suite_psi_series(Runner& R) {
  const int N = R.cfg().order;
  const PrimeField F{R.cfg().prime};
  const GradedSpace W(std::vector<int>{1, -1});
  for (const auto& V : with_config_space({GradedSpace(2, 0), GradedSpace(1, 1)}, R.cfg(), 2)) {
    const int d = V.dim();
    const bool conj = V.m() > 0;
    R.check("psi-h-power-sums/" + space_tag(V), "Psi[H'^(j)(x)] as an exponential in P", conj, [&](Smp& smp) {
      IdentityResult acc;
      for (int j = 1; j <= d; ++j) {
        auto e = shuffle_exp(psi_h_exponent_p<Fp>(V, j, N), N, V, F.characteristic());
        for (int k = 1; k <= N; ++k) merge(acc, same(smp, psi(h_element<Fp>(V, j, k, Algebra::Prime)), e.at(k), R.trials()));
      }
      return acc;
    });
    R.check("psi-h-s-form/" + space_tag(V), "Psi[H'^(j)(x)] exponent written with S", conj, [&](Smp& smp) {
      IdentityResult acc;
      for (int j = 1; j <= d; ++j) {
        auto a = psi_h_exponent_p<Fp>(V, j, N), b = psi_h_exponent_s<Fp>(V, j, N);
        for (int k = 1; k <= N; ++k) merge(acc, same(smp, a.at(k), b.at(k), R.trials()));
      }
      return acc;
    });
    R.check("tilde-insertion/" + space_tag(V), "Psi-tilde of H'(x) with one inserted label", conj, [&](Smp& smp) {
      IdentityResult acc;
      for (int a = 1; a <= d + 1; ++a)
        for (int eps : {1, -1}) {
          EmbeddingSpec spec = insertion_spec(V, a, eps);
          auto e = shuffle_exp(tilde_insertion_exponent<Fp>(V, a, eps, 2), 2, V, F.characteristic());
          GradedSpace one = eps > 0 ? GradedSpace(1, 0) : GradedSpace(0, 1);
          for (int k = 1; k <= 2; ++k)
            merge(acc, same(smp, psi_tilde(h_element<Fp>(one, 1, k, Algebra::Prime), spec), e.at(k), R.trials()));
        }
      return acc;
    });
    R.check("tilde-pair/" + space_tag(V), "Psi-tilde of H'^(1)(x) and H'^(2)(x) over gl(1|1)", conj, [&](Smp& smp) {
      IdentityResult acc;
      for (int a = 0; a <= d; ++a) {
        EmbeddingSpec spec = s_trace_spec(V, a);
        for (int sign : {1, -1}) {
          auto e = shuffle_exp(tilde_pair_exponent<Fp>(V, a + 1, sign, 2), 2, V, F.characteristic());
          for (int k = 1; k <= 2; ++k)
            merge(acc, same(smp, psi_tilde(h_element<Fp>(W, sign > 0 ? 1 : 2, k, Algebra::Prime), spec), e.at(k),
                            R.trials()));
        }
      }
      return acc;
    });
    R.check("tilde-mixed-product/" + space_tag(V), "Psi-tilde[H'^(1)_1 *' H'^(2)_1] factorizes", conj, [&](Smp& smp) {
      IdentityResult acc;
      for (int a = 0; a <= d; ++a) {
        EmbeddingSpec spec = s_trace_spec(V, a);
        Fam h1 = h_element<Fp>(W, 1, 1, Algebra::Prime), h2 = h_element<Fp>(W, 2, 1, Algebra::Prime);
        merge(acc, same(smp, psi_tilde(shuffle_product_prime(h1, h2), spec),
                        shuffle_product(psi_tilde(h1, spec), psi_tilde(h2, spec)), R.trials()));
      }
      return acc;
    });
    R.check("tilde-weighted-sum/" + space_tag(V), "Psi-tilde of the signed H' sum gives S", conj, [&](Smp& smp) {
      IdentityResult acc;
      for (int a = 0; a <= d; ++a)
        for (int k = 1; k <= 2; ++k) {
          Fam sum = zero_family<Fp>(W, k, Algebra::Prime);
          for (int l = 1; l <= k; ++l) {
            Fam term = shuffle_product_prime(h_element<Fp>(W, 1, k - l, Algebra::Prime), h_element<Fp>(W, 2, l, Algebra::Prime));
            sum = sum + term.scaled(l % 2 ? -l : l);
          }
          Fam rhs = s_element<Fp>(V, a, k).scaled([k](const P& p, const Z&) { return -(p.s.pow(-k) - p.s.pow(k)); }, 0);
          merge(acc, same(smp, psi_tilde(sum, s_trace_spec(V, a)), rhs, R.trials()));
        }
      return acc;
    });
    R.check("s-trace-formula/" + space_tag(V), "trace formula for S_k^(a) against the recursion, k <= 2", conj,
            [&](Smp& smp) {
              IdentityResult acc;
              for (int a = 0; a <= d; ++a)
                for (int k = 1; k <= 2; ++k)
                  merge(acc, same(smp, s_element_via_trace<Fp>(V, a, k), s_element<Fp>(V, a, k), R.trials()));
              return acc;
            });
  }
}

// lattice

void suite_lattice(Runner& R) {
  for (const auto& V : {GradedSpace(2, 0), GradedSpace(1, 1), GradedSpace(0, 2)}) {
    R.check("vertex-weights/" + space_tag(V), "lattice vertex weights are R-check entries", false, [&](Smp& smp) {
      return run_trials(smp, 2, R.trials(), 4, [&](const P& p, const Z& xy) -> std::string {
        T r = r_check(V, p, xy[0] / xy[1]);
        T shape(V, 4, p.elem(0));
        for (int w = 0; w < shape.side(); ++w) {
          auto c = shape.word_of(w);
          J lhs = vertex_weight(V, c[0], c[1], c[2], c[3], xy[0], xy[1], p);
          if (!lhs.agrees(r.entry({c[2], c[3]}, {c[0], c[1]}))) return "pattern " + word_str(c);
        }
        return "";
      });
    });
    for (int N = 1; N <= R.cfg().lattice_max_n; ++N)
      R.check("partition-function-N" + std::to_string(N) + "/" + space_tag(V),
              "enumerated Z_alpha,beta equals the twisted trace", false, [&](Smp& smp) {
                return run_trials(smp, N, R.trials(), 4 * N * N + 4, [&](const P& p, const Z& z) -> std::string {
                  std::string bad;
                  auto lat = lattice_partition_matrix(V, N, p, z);
                  for (const auto& kappa : monomials(V.dim(), N)) {
                    T tr = z_trace_coefficient<Fp>(V, kappa)(p, z);
                    auto it = lat.find(kappa);
                    T lt = it == lat.end() ? T(V, N, p.elem(0)) : it->second;
                    if (!lt.agrees(tr)) return "u-monomial " + monomial_str(kappa);
                  }
                  for (const auto& [kappa, t] : lat) {
                    int deg = 0;
                    for (int x : kappa) deg += x;
                    if (deg != N) return "stray u-monomial " + monomial_str(kappa);
                  }
                  return bad;
                });
              });
    R.check("loops-cross-seam-once/" + space_tag(V), "every loop winds once and loops match seam colors", false,
            [&](Smp& smp) {
              return run_trials(smp, R.cfg().lattice_max_n, 1, 0, [&](const P& p, const Z& z) -> std::string {
                const int N = static_cast<int>(z.size());
                std::string bad;
                T shape(V, N, p.elem(0));
                for (int b = 0; b < shape.side() && bad.empty(); ++b)
                  enumerate_lattice(V, N, shape.word_of(b), p, z, [&](const LatticeConfig& c, const J&) {
                    if (!bad.empty()) return;
                    LoopData l = trace_loops(V, c);
                    if (!l.loops_cross_seam_once) bad = "multiply wound loop, seam " + word_str(c.seam);
                    for (int i = 2; i <= V.dim(); ++i) {
                      int on_seam = static_cast<int>(std::count(c.seam.begin(), c.seam.end(), i));
                      if (l.lambda[i - 1] != on_seam) bad = "loop count differs from seam count, seam " + word_str(c.seam);
                    }
                  });
                return bad;
              });
            });
  }
}

using SuiteFn = void (*)(Runner&);

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
  static const std::vector<std::pair<std::string, SuiteFn>> r{
      {"rmatrix", suite_rmatrix},         {"shuffle", suite_shuffle},         {"wheel", suite_wheel},
      {"psi", suite_psi},                 {"appendix-a", suite_appendix_a},   {"appendix-b", suite_appendix_b},
      {"commuting", suite_commuting},     {"theorem-1-1", suite_theorem},     {"psi-series", suite_psi_series},
      {"lattice", suite_lattice},
  };
  return r;
}

}  // namespace

void RunConfig::validate() const {
  auto fail = [](const std::string& msg) { throw ConfigError(msg); };
  if (n < 0 || m < 0 || n + m < 1) fail("need n, m >= 0 and n + m >= 1");
  if (n + m > 4) fail("n + m above 4 is outside the supported range");
  if (kmax < 1 || kmax > 4) fail("kmax must lie in 1..4");
  if (order < 1 || order > 4) fail("order must lie in 1..4");
  if (trials < 1) fail("trials must be at least 1");
  if (jet_order < 2 || jet_order > kJetCapacity) fail("jet order must lie in 2.." + std::to_string(kJetCapacity));
  if (lattice_max_n < 1 || lattice_max_n > 3) fail("lattice size must lie in 1..3");
  if (!is_prime_u64(prime)) fail("modulus " + std::to_string(prime) + " is not prime");
  if (prime <= static_cast<std::uint64_t>(2 * order * kmax)) fail("prime must exceed 2 * order * kmax");
  if (suite != "all") {
    const auto& names = suite_names();
    if (std::find(names.begin(), names.end(), suite) == names.end()) fail("unknown suite " + suite);
  }
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, fn] : registry()) out.push_back(name);
    return out;
  }();
  return names;
}

std::vector<CheckResult> run_suite(const std::string& name, const RunConfig& cfg) {
  cfg.validate();
  std::vector<std::pair<std::string, SuiteFn>> todo;
  for (const auto& entry : registry())
    if (name == "all" || name == entry.first) todo.push_back(entry);
  if (todo.empty()) throw ConfigError("unknown suite " + name);

  // suites run on a small worker pool; each fills its own slot
  std::vector<std::vector<CheckResult>> parts(todo.size());
  std::atomic<size_t> next{0};
  auto work = [&] {
    for (size_t i; (i = next++) < todo.size();) {
      Runner r(cfg, todo[i].first, parts[i]);
      todo[i].second(r);
    }
  };
  const size_t workers = std::clamp<size_t>(std::thread::hardware_concurrency(), 1, todo.size());
  std::vector<std::thread> pool;
  for (size_t w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();

  std::vector<CheckResult> out;
  for (auto& part : parts) std::move(part.begin(), part.end(), std::back_inserter(out));
  std::sort(out.begin(), out.end(), [](const CheckResult& a, const CheckResult& b) { return a.id < b.id; });
  return out;
}

nlohmann::json config_json(const RunConfig& cfg) {
  return {{"n", cfg.n},
          {"m", cfg.m},
          {"kmax", cfg.kmax},
          {"order", cfg.order},
          {"prime", std::to_string(cfg.prime)},
          {"seed", std::to_string(cfg.seed)},
          {"trials", cfg.trials},
          {"jet_order", cfg.jet_order},
          {"lattice_n", cfg.lattice_max_n},
          {"suite", cfg.suite}};
}

nlohmann::json report_json(const RunConfig& cfg, const std::vector<CheckResult>& checks) {
  nlohmann::json arr = nlohmann::json::array();
  int passed = 0, conj = 0, failed = 0;
  for (const auto& c : checks) {
    nlohmann::json j{{"id", c.id},         {"suite", c.suite},   {"identity", c.identity},
                     {"status", c.status}, {"trials", c.trials}, {"points", c.points}};
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", c.failure_bound);
    j["failure_bound"] = buf;
    if (cfg.timing) j["elapsed"] = c.elapsed;
    if (!c.detail.empty()) j["detail"] = c.detail;
    arr.push_back(std::move(j));
    if (c.status == "pass") ++passed;
    else if (c.status == "conjecture-supported") ++conj;
    else ++failed;
  }
  return {{"version", kReportVersion},
          {"config", config_json(cfg)},
          {"checks", arr},
          {"summary", {{"pass", passed}, {"conjecture_supported", conj}, {"failed", failed}}}};
}

}  // namespace mshuffle
