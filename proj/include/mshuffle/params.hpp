#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "mshuffle/errors.hpp"
#include "mshuffle/jet.hpp"

namespace mshuffle {

/// Values of the spectral variables z_1..z_k.
template <class E>
using Point = std::vector<Jet<E>>;

/// Values of the global parameters at one evaluation point. s is the square
/// root of t; both are kept so that half-integer powers of t stay exact.
template <class E>
struct Params {
  using J = Jet<E>;
  J q;
  J s;
  J t;
  int order = kDefaultJetOrder;

  Params() = default;
  Params(const J& q_, const J& s_, int order_ = kDefaultJetOrder) : q(q_), s(s_), t(s_ * s_), order(order_) {}

  E elem(std::int64_t x) const { return q.lead().like(x); }
  J c(std::int64_t x) const { return J(elem(x), order); }
  J one() const { return c(1); }
  J zero() const { return c(0); }
  J eps() const { return J::epsilon(elem(1), order); }

  /// The same point with q -> 1/q and s -> 1/s.
  Params inverted() const { return Params(q.inv(), s.inv(), order); }
};

/// 64-bit FNV-1a, used to derive independent substreams from check ids.
inline std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

inline std::mt19937_64 substream(std::uint64_t seed, std::string_view id) {
  std::uint64_t mix = seed ^ fnv1a(id);
  std::seed_seq seq{static_cast<std::uint32_t>(mix), static_cast<std::uint32_t>(mix >> 32)};
  return std::mt19937_64(seq);
}

struct SampleConfig {
  int kmax = 3;
  int jet_order = kDefaultJetOrder;
  int retry_budget = 32;
};

/// Draws evaluation points away from the locus where R-matrix denominators vanish:
/// q^a s^b != 1 for small (a, b) != 0, and z_i / z_j never of the form q^a s^b.
template <class Field>
class Sampler {
 public:
  using E = typename Field::Elem;
  using J = Jet<E>;

  Sampler(Field field, std::mt19937_64 rng, SampleConfig cfg = {})
      : field_(std::move(field)), rng_(std::move(rng)), cfg_(cfg) {}

  const Field& field() const { return field_; }
  const SampleConfig& config() const { return cfg_; }
  std::mt19937_64& rng() { return rng_; }

  Params<E> draw_params() {
    for (int attempt = 0; attempt < cfg_.retry_budget; ++attempt) {
      E q = field_.random_nonzero(rng_);
      E s = field_.random_nonzero(rng_);
      if (generic(q, s)) {
        Params<E> p(J(q, cfg_.jet_order), J(s, cfg_.jet_order), cfg_.jet_order);
        build_forbidden(q, s);
        return p;
      }
    }
    throw EvaluationAtPole("no generic q, t found within the retry budget");
  }

  /// k spectral parameters with pairwise generic ratios for the current params.
  std::vector<J> draw_spectral(int k) {
    std::vector<E> zs;
    std::vector<J> out;
    int failures = 0;
    while (static_cast<int>(zs.size()) < k) {
      E z = field_.random_nonzero(rng_);
      bool ok = true;
      for (const E& w : zs) {
        E r = z / w;
        for (const E& f : forbidden_) {
          if (r == f) {
            ok = false;
            break;
          }
        }
        if (!ok) break;
      }
      if (!ok) {
        if (++failures > cfg_.retry_budget) throw EvaluationAtPole("no generic spectral point within the retry budget");
        continue;
      }
      zs.push_back(z);
      out.emplace_back(z, cfg_.jet_order);
    }
    return out;
  }

  E draw_value() { return field_.random_nonzero(rng_); }

 private:
  int qrange() const { return 2 * cfg_.kmax + 4; }
  static constexpr int kSRange = 12;

  bool generic(const E& q, const E& s) const {
    for (int a = -qrange(); a <= qrange(); ++a) {
      for (int b = -kSRange; b <= kSRange; ++b) {
        if (a == 0 && b == 0) continue;
        if ((q.pow(a) * s.pow(b)).is_one()) return false;
      }
    }
    return true;
  }

  void build_forbidden(const E& q, const E& s) {
    forbidden_.clear();
    for (int a = -qrange(); a <= qrange(); ++a)
      for (int b = -kSRange; b <= kSRange; ++b) forbidden_.push_back(q.pow(a) * s.pow(b));
    for (auto& f : std::vector<E>(forbidden_)) forbidden_.push_back(-f);
  }

  Field field_;
  std::mt19937_64 rng_;
  SampleConfig cfg_;
  std::vector<E> forbidden_;
};

}  // namespace mshuffle
