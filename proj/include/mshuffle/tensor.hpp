#pragma once

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

#include "mshuffle/errors.hpp"
#include "mshuffle/graded_space.hpp"
#include "mshuffle/jet.hpp"

namespace mshuffle {

/// Dense element of End(V^{(x)k}) with jet entries.
///
/// Rows index ket words, columns bra words. A word (w_1..w_k) of 1-based labels
/// maps to the index sum (w_i - 1) d^{k-i}: factor 1 is the most significant
/// digit. Slots are numbered from 1.
template <class E>
class Tensor {
 public:
  using J = Jet<E>;

  Tensor(GradedSpace space, int arity, const E& zero)
      : space_(std::move(space)), arity_(arity), side_(ipow(space_.dim(), arity)),
        data_(static_cast<size_t>(side_) * side_, J(zero.like(0))) {
    if (arity < 0) throw PositionOutOfRange("negative arity");
  }

  static Tensor zeros(const GradedSpace& space, int arity, const E& zero) {
    return Tensor(space, arity, zero);
  }

  static Tensor identity(const GradedSpace& space, int arity, const E& any) {
    Tensor t(space, arity, any);
    J one(any.like(1));
    for (int i = 0; i < t.side_; ++i) t.at(i, i) = one;
    return t;
  }

  /// E_{ij} on one factor (1-based labels).
  static Tensor matrix_unit(const GradedSpace& space, int i, int j, const E& any) {
    space.check_label(i);
    space.check_label(j);
    Tensor t(space, 1, any);
    t.at(i - 1, j - 1) = J(any.like(1));
    return t;
  }

  /// Tensor product of matrix units E_{row_1 col_1} (x) ... (1-based words).
  static Tensor word_unit(const GradedSpace& space, const std::vector<int>& row,
                          const std::vector<int>& col, const E& any) {
    if (row.size() != col.size()) throw PositionOutOfRange("row and column words differ in length");
    Tensor t(space, static_cast<int>(row.size()), any);
    t.at(t.index_of(row), t.index_of(col)) = J(any.like(1));
    return t;
  }

  const GradedSpace& space() const { return space_; }
  int dim() const { return space_.dim(); }
  int arity() const { return arity_; }
  int side() const { return side_; }

  J& at(int row, int col) { return data_[static_cast<size_t>(row) * side_ + col]; }
  const J& at(int row, int col) const { return data_[static_cast<size_t>(row) * side_ + col]; }

  /// Index of a 1-based word.
  int index_of(const std::vector<int>& word) const {
    if (static_cast<int>(word.size()) != arity_) throw PositionOutOfRange("word length differs from arity");
    int idx = 0;
    for (int w : word) {
      space_.check_label(w);
      idx = idx * dim() + (w - 1);
    }
    return idx;
  }
  /// 1-based word of an index.
  std::vector<int> word_of(int index) const {
    std::vector<int> w(arity_);
    for (int i = arity_ - 1; i >= 0; --i) {
      w[i] = index % dim() + 1;
      index /= dim();
    }
    return w;
  }

  const J& entry(const std::vector<int>& row, const std::vector<int>& col) const {
    return at(index_of(row), index_of(col));
  }

  E zero_elem() const { return data_.empty() ? E{} : data_[0].zero(); }
  J zero_jet() const { return J(zero_elem()); }

  Tensor operator+(const Tensor& o) const {
    check_same(o);
    Tensor r = *this;
    for (size_t i = 0; i < data_.size(); ++i) r.data_[i] += o.data_[i];
    return r;
  }
  Tensor operator-(const Tensor& o) const {
    check_same(o);
    Tensor r = *this;
    for (size_t i = 0; i < data_.size(); ++i) r.data_[i] -= o.data_[i];
    return r;
  }
  Tensor& operator+=(const Tensor& o) {
    check_same(o);
    for (size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
  }
  Tensor& operator-=(const Tensor& o) {
    check_same(o);
    for (size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
  }
  Tensor operator*(const J& s) const {
    Tensor r = *this;
    if (s.is_simple() && s.terms() == 1 && s.valuation() == 0 && s.lead().is_one()) return r;
    for (auto& x : r.data_) {
      if (!x.is_exact_zero()) x = x * s;
    }
    return r;
  }
  Tensor& operator*=(const J& s) { return *this = *this * s; }

  /// Matrix product in End(V^{(x)k}).
  Tensor operator*(const Tensor& o) const {
    check_same(o);
    Tensor r(space_, arity_, zero_elem());
    for (int i = 0; i < side_; ++i) {
      J* out = &r.data_[static_cast<size_t>(i) * side_];
      for (int t = 0; t < side_; ++t) {
        const J& x = at(i, t);
        if (x.is_exact_zero()) continue;
        const J* in = &o.data_[static_cast<size_t>(t) * side_];
        for (int j = 0; j < side_; ++j) {
          if (!in[j].is_exact_zero()) out[j] += x * in[j];
        }
      }
    }
    return r;
  }

  /// Every entry agrees to all known orders.
  bool agrees(const Tensor& o) const {
    if (space_ != o.space_ || arity_ != o.arity_) return false;
    for (size_t i = 0; i < data_.size(); ++i) {
      if (!data_[i].agrees(o.data_[i])) return false;
    }
    return true;
  }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const J& x) { return x.is_zero(); });
  }

  /// Entry-wise map.
  template <class Fn>
  Tensor map(Fn fn) const {
    Tensor r = *this;
    for (auto& x : r.data_) x = fn(x);
    return r;
  }

  /// op (acting on the listed slots, its factor t on slots[t]) times this.
  Tensor apply_left(const Tensor& op, const std::vector<int>& slots) const {
    auto plan = local_plan(op, slots);
    Tensor r(space_, arity_, zero_elem());
    const int lside = op.side_;
    for (int row = 0; row < side_; ++row) {
      int a = plan.local[row];
      int base = row - plan.offset[a];
      J* out = &r.data_[static_cast<size_t>(row) * side_];
      for (int b = 0; b < lside; ++b) {
        const J& c = op.at(a, b);
        if (c.is_exact_zero()) continue;
        const J* in = &data_[static_cast<size_t>(base + plan.offset[b]) * side_];
        for (int col = 0; col < side_; ++col) {
          if (!in[col].is_exact_zero()) out[col] += c * in[col];
        }
      }
    }
    return r;
  }

  /// This times op (acting on the listed slots).
  Tensor apply_right(const Tensor& op, const std::vector<int>& slots) const {
    auto plan = local_plan(op, slots);
    Tensor r(space_, arity_, zero_elem());
    const int lside = op.side_;
    for (int col = 0; col < side_; ++col) {
      int a = plan.local[col];
      int base = col - plan.offset[a];
      for (int b = 0; b < lside; ++b) {
        const J& c = op.at(b, a);
        if (c.is_exact_zero()) continue;
        int src = base + plan.offset[b];
        for (int row = 0; row < side_; ++row) {
          const J& x = at(row, src);
          if (!x.is_exact_zero()) r.at(row, col) += x * c;
        }
      }
    }
    return r;
  }

  /// Trace over the listed slots; the remaining factors keep their order.
  Tensor partial_trace(const std::vector<int>& positions) const {
    std::vector<bool> traced(arity_, false);
    for (int p : positions) {
      if (p < 1 || p > arity_ || traced[p - 1]) throw PositionOutOfRange("bad trace position " + std::to_string(p));
      traced[p - 1] = true;
    }
    const int d = dim();
    int kept = arity_ - static_cast<int>(positions.size());
    Tensor r(space_, kept, zero_elem());
    std::vector<int> wt(arity_);
    for (int i = 0; i < arity_; ++i) wt[i] = ipow(d, arity_ - 1 - i);
    // offsets of the traced and kept digit patterns
    std::vector<int> toff(ipow(d, arity_ - kept), 0), koff(r.side_, 0);
    fill_offsets(toff, traced, true, wt);
    fill_offsets(koff, traced, false, wt);
    for (int i = 0; i < r.side_; ++i) {
      for (int j = 0; j < r.side_; ++j) {
        J acc = zero_jet();
        for (int o : toff) {
          const J& x = at(koff[i] + o, koff[j] + o);
          if (!x.is_exact_zero()) acc += x;
        }
        r.at(i, j) = acc;
      }
    }
    return r;
  }

  /// The tensor whose slot sigma(i) carries factor i of this one.
  Tensor permute_factors(const std::vector<int>& sigma) const {
    check_perm(sigma);
    Tensor r(space_, arity_, zero_elem());
    std::vector<int> map(side_);
    for (int w = 0; w < side_; ++w) {
      auto word = word_of(w);
      std::vector<int> src(arity_);
      for (int i = 0; i < arity_; ++i) src[i] = word[sigma[i] - 1];
      map[w] = index_of(src);
    }
    for (int i = 0; i < side_; ++i)
      for (int j = 0; j < side_; ++j) r.at(i, j) = at(map[i], map[j]);
    return r;
  }

  /// Transpose of the given slot only.
  Tensor transpose_slot(int slot) const {
    if (slot < 1 || slot > arity_) throw PositionOutOfRange("bad transpose slot");
    const int d = dim();
    int wt = ipow(d, arity_ - slot);
    Tensor r(space_, arity_, zero_elem());
    for (int i = 0; i < side_; ++i) {
      int di = (i / wt) % d;
      for (int j = 0; j < side_; ++j) {
        int dj = (j / wt) % d;
        r.at(i, j) = at(i + (dj - di) * wt, j + (di - dj) * wt);
      }
    }
    return r;
  }

  /// Kronecker product; factors of this come first.
  Tensor kron(const Tensor& o) const {
    if (space_ != o.space_) throw SpaceMismatch("kron of tensors over different spaces");
    Tensor r(space_, arity_ + o.arity_, zero_elem());
    for (int i = 0; i < side_; ++i)
      for (int j = 0; j < side_; ++j) {
        const J& x = at(i, j);
        if (x.is_exact_zero()) continue;
        for (int a = 0; a < o.side_; ++a)
          for (int b = 0; b < o.side_; ++b) {
            const J& y = o.at(a, b);
            if (!y.is_exact_zero()) r.at(i * o.side_ + a, j * o.side_ + b) = x * y;
          }
      }
    return r;
  }

  /// Gauss-Jordan inverse; pivots on the lowest-valuation entry.
  Tensor inverse() const {
    Tensor a = *this;
    Tensor inv = identity(space_, arity_, zero_elem());
    const int n = side_;
    for (int c = 0; c < n; ++c) {
      int piv = -1;
      for (int r = c; r < n; ++r) {
        if (a.at(r, c).is_zero()) continue;
        if (piv < 0 || a.at(r, c).valuation() < a.at(piv, c).valuation()) piv = r;
      }
      if (piv < 0) throw DivisionByExactZero("singular tensor");
      if (piv != c) {
        for (int j = 0; j < n; ++j) {
          std::swap(a.at(piv, j), a.at(c, j));
          std::swap(inv.at(piv, j), inv.at(c, j));
        }
      }
      J pinv = a.at(c, c).inv();
      for (int j = 0; j < n; ++j) {
        a.at(c, j) = a.at(c, j) * pinv;
        inv.at(c, j) = inv.at(c, j) * pinv;
      }
      for (int r = 0; r < n; ++r) {
        if (r == c || a.at(r, c).is_exact_zero()) continue;
        J f = a.at(r, c);
        for (int j = 0; j < n; ++j) {
          if (!a.at(c, j).is_exact_zero()) a.at(r, j) -= f * a.at(c, j);
          if (!inv.at(c, j).is_exact_zero()) inv.at(r, j) -= f * inv.at(c, j);
        }
      }
    }
    return inv;
  }

  /// Maps every factor through label maps: entry (w, w') of this lands at
  /// (iota(w), iota(w')) in a tensor over the target space.
  Tensor embed(const GradedSpace& target, const std::vector<int>& iota) const {
    check_label_map(target, iota);
    Tensor r(target, arity_, zero_elem());
    std::vector<int> map(side_);
    for (int w = 0; w < side_; ++w) {
      auto word = word_of(w);
      for (auto& x : word) x = iota[x - 1];
      map[w] = r.index_of(word);
    }
    for (int i = 0; i < side_; ++i)
      for (int j = 0; j < side_; ++j) r.at(map[i], map[j]) = at(i, j);
    return r;
  }

  /// Restriction to the coordinates iota(V) of every factor, giving a tensor over source.
  Tensor project(const GradedSpace& source, const std::vector<int>& iota) const {
    Tensor r(source, arity_, zero_elem());
    r.check_label_map(space_, iota);
    std::vector<int> map(r.side_);
    for (int w = 0; w < r.side_; ++w) {
      auto word = r.word_of(w);
      for (auto& x : word) x = iota[x - 1];
      map[w] = index_of(word);
    }
    for (int i = 0; i < r.side_; ++i)
      for (int j = 0; j < r.side_; ++j) r.at(i, j) = at(map[i], map[j]);
    return r;
  }

  std::string str() const {
    std::string out;
    for (int i = 0; i < side_; ++i)
      for (int j = 0; j < side_; ++j)
        if (!at(i, j).is_exact_zero())
          out += "[" + std::to_string(i) + "," + std::to_string(j) + "] " + at(i, j).str() + "\n";
    return out;
  }

  static int ipow(int b, int e) {
    int r = 1;
    while (e-- > 0) r *= b;
    return r;
  }

 private:
  struct LocalPlan {
    std::vector<int> local;   // local index of each global index
    std::vector<int> offset;  // global offset of each local index
  };

  LocalPlan local_plan(const Tensor& op, const std::vector<int>& slots) const {
    if (op.space_ != space_) throw SpaceMismatch("local operator over a different space");
    if (static_cast<int>(slots.size()) != op.arity_) throw SlotOutOfRange("slot list does not match operator arity");
    std::vector<bool> seen(arity_, false);
    for (int s : slots) {
      if (s < 1 || s > arity_ || seen[s - 1]) throw SlotOutOfRange("bad slot " + std::to_string(s));
      seen[s - 1] = true;
    }
    const int d = dim();
    LocalPlan plan;
    plan.offset.assign(op.side_, 0);
    for (int a = 0; a < op.side_; ++a) {
      int rem = a;
      for (int t = op.arity_ - 1; t >= 0; --t) {
        plan.offset[a] += (rem % d) * ipow(d, arity_ - slots[t]);
        rem /= d;
      }
    }
    plan.local.assign(side_, 0);
    for (int g = 0; g < side_; ++g) {
      int a = 0;
      for (int t = 0; t < op.arity_; ++t) a = a * d + (g / ipow(d, arity_ - slots[t])) % d;
      plan.local[g] = a;
    }
    return plan;
  }

  void fill_offsets(std::vector<int>& out, const std::vector<bool>& traced, bool want,
                    const std::vector<int>& wt) const {
    const int d = dim();
    std::vector<int> pos;
    for (int i = 0; i < arity_; ++i)
      if (traced[i] == want) pos.push_back(i);
    for (size_t idx = 0; idx < out.size(); ++idx) {
      int rem = static_cast<int>(idx), off = 0;
      for (int t = static_cast<int>(pos.size()) - 1; t >= 0; --t) {
        off += (rem % d) * wt[pos[t]];
        rem /= d;
      }
      out[idx] = off;
    }
  }

  void check_same(const Tensor& o) const {
    if (space_ != o.space_) throw SpaceMismatch("tensors over different spaces");
    if (arity_ != o.arity_) throw SpaceMismatch("tensors of different arity");
  }

  void check_perm(const std::vector<int>& sigma) const {
    if (static_cast<int>(sigma.size()) != arity_) throw BadPermutation("permutation length differs from arity");
    std::vector<bool> seen(arity_, false);
    for (int s : sigma) {
      if (s < 1 || s > arity_ || seen[s - 1]) throw BadPermutation("not a permutation");
      seen[s - 1] = true;
    }
  }

  void check_label_map(const GradedSpace& target, const std::vector<int>& iota) const {
    if (static_cast<int>(iota.size()) != dim()) throw GradingMismatch("label map has the wrong length");
    for (int i = 1; i <= dim(); ++i) {
      target.check_label(iota[i - 1]);
      if (target.eps(iota[i - 1]) != space_.eps(i))
        throw GradingMismatch("label " + std::to_string(i) + " changes parity under the embedding");
    }
  }

  GradedSpace space_;
  int arity_;
  int side_;
  std::vector<J> data_;
};

template <class E>
Tensor<E> operator*(const Jet<E>& s, const Tensor<E>& t) {
  return t * s;
}

}  // namespace mshuffle
