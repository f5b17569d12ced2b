#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "mshuffle/errors.hpp"
#include "mshuffle/params.hpp"
#include "mshuffle/tensor.hpp"

namespace mshuffle {

/// Which shuffle product an element is meant for.
enum class Algebra { Plus, Minus, Prime };

inline const char* algebra_name(Algebra a) {
  switch (a) {
    case Algebra::Plus: return "A+";
    case Algebra::Minus: return "A-";
    case Algebra::Prime: return "A'";
  }
  return "?";
}

/// A tensor-valued function of spectral variables z_1..z_k and the global
/// parameters. Nothing is cached; each call evaluates afresh.
template <class E>
struct Family {
  using Eval = std::function<Tensor<E>(const Params<E>&, const Point<E>&)>;

  GradedSpace space{1, 0};
  int arity = 0;
  Eval eval;
  int degree_bound = 16;
  bool shifts_q = false;
  std::string name;
  Algebra algebra = Algebra::Plus;

  Family() = default;
  Family(GradedSpace sp, int k, Eval fn, int deg = 16, std::string nm = {})
      : space(std::move(sp)), arity(k), eval(std::move(fn)), degree_bound(deg), name(std::move(nm)) {}

  Tensor<E> operator()(const Params<E>& p, const Point<E>& z) const {
    if (static_cast<int>(z.size()) != arity)
      throw PositionOutOfRange("family " + name + " of arity " + std::to_string(arity) + " called with " +
                               std::to_string(z.size()) + " variables");
    Tensor<E> t = eval(p, z);
    if (t.space() != space || t.arity() != arity) throw SpaceMismatch("family " + name + " returned a wrong shape");
    return t;
  }

  /// Constant family equal to a fixed combination of matrix-unit words.
  static Family units(const GradedSpace& sp, const std::vector<std::pair<std::vector<int>, std::vector<int>>>& words,
                      std::string nm = {}) {
    int k = words.empty() ? 0 : static_cast<int>(words.front().first.size());
    return Family(
        sp, k,
        [sp, words, k](const Params<E>& p, const Point<E>&) {
          Tensor<E> t(sp, k, p.elem(0));
          for (const auto& [r, c] : words) t.at(t.index_of(r), t.index_of(c)) += p.one();
          return t;
        },
        0, std::move(nm));
  }

  /// The unit 1 in End(V^{(x)0}).
  static Family unit(const GradedSpace& sp) {
    return Family(
        sp, 0, [sp](const Params<E>& p, const Point<E>&) { return Tensor<E>::identity(sp, 0, p.elem(0)); }, 0,
        "1");
  }

  Family tagged(Algebra a) const {
    Family f = *this;
    f.algebra = a;
    return f;
  }

  Family operator+(const Family& o) const { return combine(o, 1); }
  Family operator-(const Family& o) const { return combine(o, -1); }

  Family scaled(std::function<Jet<E>(const Params<E>&, const Point<E>&)> c, int extra_degree = 4) const {
    Family self = *this;
    Family out(
        space, arity, [self, c](const Params<E>& p, const Point<E>& z) { return self(p, z) * c(p, z); },
        degree_bound + extra_degree, name);
    out.algebra = algebra;
    return out;
  }

  Family scaled(long long c) const {
    return scaled([c](const Params<E>& p, const Point<E>&) { return p.c(c); }, 0);
  }

 private:
  Family combine(const Family& o, int sign) const {
    if (space != o.space || arity != o.arity) throw SpaceMismatch("adding families of different shapes");
    if (algebra != o.algebra) throw TagMismatch("adding elements of different algebras");
    Family a = *this, b = o;
    Family out(
        space, arity,
        [a, b, sign](const Params<E>& p, const Point<E>& z) { return sign > 0 ? a(p, z) + b(p, z) : a(p, z) - b(p, z); },
        std::max(degree_bound, o.degree_bound), name + (sign > 0 ? "+" : "-") + o.name);
    out.algebra = algebra;
    return out;
  }
};

/// An ordered product of local operators, each acting on a list of slots of
/// V^{(x)N}. Factors are stored left to right.
template <class E>
class OperatorProduct {
 public:
  struct Factor {
    Tensor<E> op;
    std::vector<int> slots;
  };

  OperatorProduct(GradedSpace space, int arity) : space_(std::move(space)), arity_(arity) {}

  void right_multiply(Tensor<E> op, std::vector<int> slots) { factors_.push_back({std::move(op), std::move(slots)}); }
  void left_multiply(Tensor<E> op, std::vector<int> slots) {
    factors_.insert(factors_.begin(), Factor{std::move(op), std::move(slots)});
  }
  void right_multiply(const OperatorProduct& o) { factors_.insert(factors_.end(), o.factors_.begin(), o.factors_.end()); }
  void left_multiply(const OperatorProduct& o) { factors_.insert(factors_.begin(), o.factors_.begin(), o.factors_.end()); }

  const std::vector<Factor>& factors() const { return factors_; }
  int arity() const { return arity_; }
  bool empty() const { return factors_.empty(); }

  /// this * x
  Tensor<E> apply_left(Tensor<E> x) const {
    for (auto it = factors_.rbegin(); it != factors_.rend(); ++it) x = x.apply_left(it->op, it->slots);
    return x;
  }
  /// x * this
  Tensor<E> apply_right(Tensor<E> x) const {
    for (const auto& f : factors_) x = x.apply_right(f.op, f.slots);
    return x;
  }

  Tensor<E> dense(const E& any) const { return apply_right(Tensor<E>::identity(space_, arity_, any)); }

 private:
  GradedSpace space_;
  int arity_;
  std::vector<Factor> factors_;
};

}  // namespace mshuffle
