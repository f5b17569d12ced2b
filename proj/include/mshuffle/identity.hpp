#pragma once

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "mshuffle/errors.hpp"
#include "mshuffle/params.hpp"
#include "mshuffle/tensor.hpp"

namespace mshuffle {

/// Outcome of a randomized identity test.
struct IdentityResult {
  bool equal = true;
  int trials = 0;
  int points = 0;  // points drawn, including those rejected at poles
  double failure_bound = 0.0;
  std::string detail;
};

/// Upper bound on the chance that `trials` random points all miss a nonzero
/// rational function of total degree at most degree_bound.
inline double false_accept_bound(int degree_bound, int trials, std::uint64_t characteristic) {
  double size = characteristic ? static_cast<double>(characteristic) : 1.0e6;
  double per = std::min(1.0, static_cast<double>(degree_bound) / size);
  return std::pow(per, trials);
}

namespace detail {

template <class E>
inline bool values_agree(const Jet<E>& a, const Jet<E>& b) {
  return a.agrees(b);
}
template <class E>
inline bool values_agree(const Tensor<E>& a, const Tensor<E>& b) {
  return a.agrees(b);
}
template <class E>
inline std::string describe(const Jet<E>& a, const Jet<E>& b) {
  return a.str() + " vs " + b.str();
}
template <class E>
inline std::string describe(const Tensor<E>& a, const Tensor<E>& b) {
  if (a.space() != b.space() || a.arity() != b.arity()) return "shape mismatch";
  for (int i = 0; i < a.side(); ++i)
    for (int j = 0; j < a.side(); ++j)
      if (!a.at(i, j).agrees(b.at(i, j)))
        return "entry [" + std::to_string(i) + "," + std::to_string(j) + "]: " + a.at(i, j).str() + " vs " +
               b.at(i, j).str();
  return "";
}

}  // namespace detail

/// Runs `body(params, z)` at `trials` fresh generic points, redrawing when the
/// body hits a pole. body returns an empty string on agreement, otherwise a
/// description of the mismatch.
template <class Field, class Body>
IdentityResult run_trials(Sampler<Field>& sampler, int arity, int trials, int degree_bound, Body&& body) {
  if (trials < 1) throw ConfigError("trials must be at least 1");
  IdentityResult res;
  int retries = 0;
  while (res.trials < trials) {
    ++res.points;
    std::string mismatch;
    try {
      auto params = sampler.draw_params();
      auto z = sampler.draw_spectral(arity);
      mismatch = body(params, z);
    } catch (const PoleError& e) {
      if (++retries > sampler.config().retry_budget)
        throw EvaluationAtPole(std::string("retry budget exhausted: ") + e.what());
      continue;
    }
    ++res.trials;
    if (!mismatch.empty()) {
      res.equal = false;
      res.detail = mismatch;
      break;
    }
  }
  res.failure_bound = res.equal ? false_accept_bound(degree_bound, res.trials, sampler.field().characteristic()) : 0.0;
  return res;
}

/// Probabilistic equality of two black boxes of the spectral variables,
/// returning Jet or Tensor values.
template <class Field, class F, class G>
IdentityResult prob_equal(Sampler<Field>& sampler, int arity, int trials, int degree_bound, F&& f, G&& g) {
  return run_trials(sampler, arity, trials, degree_bound, [&](const auto& p, const auto& z) -> std::string {
    auto a = f(p, z);
    auto b = g(p, z);
    if (detail::values_agree(a, b)) return "";
    return detail::describe(a, b);
  });
}

}  // namespace mshuffle
