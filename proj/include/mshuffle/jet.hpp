#pragma once

#include <algorithm>
#include <array>
#include <climits>
#include <cstdint>
#include <string>
#include <vector>

#include "mshuffle/errors.hpp"

namespace mshuffle {

inline constexpr int kJetCapacity = 12;
inline constexpr int kDefaultJetOrder = 6;
inline constexpr int kExactPrec = INT32_MAX;

/// Truncated Laurent series  sum_{i<n} c_i eps^{val+i} + O(eps^prec)  over E.
///
/// Terms between val+n and prec are known to vanish; prec == kExactPrec means
/// the value is exact. With n == 0 the jet is zero: exactly zero when prec is
/// exact, otherwise an O(eps^prec) remainder whose sign is unknown. At most
/// order() terms are kept after the valuation.
template <class E>
class Jet {
 public:
  Jet() = default;

  /// Exact constant c (may be zero).
  explicit Jet(const E& c, int order = kDefaultJetOrder) : order_(clamp_order(order)) {
    c_[0] = c;
    if (!c.is_zero()) n_ = 1;
  }

  static Jet monomial(const E& c, int exponent, int order = kDefaultJetOrder) {
    Jet j(c, order);
    if (j.n_) j.val_ = exponent;
    return j;
  }

  /// The infinitesimal itself, given the field's one.
  static Jet epsilon(const E& one, int order = kDefaultJetOrder) { return monomial(one, 1, order); }

  /// Zero known only up to O(eps^prec).
  static Jet approx_zero(const E& zero_like, int prec, int order = kDefaultJetOrder) {
    Jet j(zero_like.like(0), order);
    j.prec_ = prec;
    j.val_ = prec;
    return j;
  }

  /// Build from explicit coefficients starting at exponent val.
  static Jet from_coeffs(const std::vector<E>& cs, int val, int prec = kExactPrec,
                         int order = kDefaultJetOrder) {
    if (cs.empty()) throw Error("jet needs at least one coefficient for its field");
    Jet j(cs[0].like(0), order);
    j.prec_ = prec;
    std::vector<E> buf(cs);
    j.assign(buf.data(), static_cast<int>(buf.size()), val, prec);
    return j;
  }

  int order() const { return order_; }
  int terms() const { return n_; }
  int valuation() const { return n_ ? val_ : prec_; }
  int precision() const { return prec_; }
  bool is_exact() const { return prec_ == kExactPrec; }
  bool is_zero() const { return n_ == 0; }
  bool is_exact_zero() const { return n_ == 0 && prec_ == kExactPrec; }
  /// Single exact term: the common case of a plain field value.
  bool is_simple() const { return n_ <= 1 && prec_ == kExactPrec; }
  bool is_constant() const { return is_simple() && (n_ == 0 || val_ == 0); }

  /// Leading coefficient; zero for a zero jet.
  const E& lead() const { return c_[0]; }
  /// A zero of the coefficient field, carrying its identity.
  E zero() const { return c_[0].like(0); }
  E one() const { return c_[0].like(1); }

  /// Coefficient of eps^e; throws when e lies beyond the known precision.
  E coeff(int e) const {
    if (e >= prec_) throw PrecisionExhausted("coefficient of eps^" + std::to_string(e) + " is unknown");
    if (n_ == 0 || e < val_ || e >= val_ + n_) return zero();
    return c_[e - val_];
  }

  /// Value of a constant jet; throws unless the jet is an exact constant.
  E constant_value() const {
    if (!is_exact() || (n_ > 0 && (val_ != 0 || n_ != 1)))
      throw PrecisionExhausted("jet is not an exact constant");
    return n_ ? c_[0] : zero();
  }

  Jet with_order(int order) const {
    Jet r = *this;
    r.order_ = clamp_order(order);
    if (r.n_ > r.order_) {
      bool dropped = false;
      for (int i = r.order_; i < r.n_; ++i) dropped |= !r.c_[i].is_zero();
      r.n_ = r.order_;
      if (dropped) r.prec_ = std::min(r.prec_, r.val_ + r.order_);
      r.trim_tail();
    }
    return r;
  }

  Jet operator-() const {
    Jet r = *this;
    for (int i = 0; i < r.n_; ++i) r.c_[i] = -r.c_[i];
    return r;
  }

  Jet operator+(const Jet& b) const { return add(*this, b, false); }
  Jet operator-(const Jet& b) const { return add(*this, b, true); }

  Jet operator*(const Jet& b) const {
    const Jet& a = *this;
    int order = std::max(a.order_, b.order_);
    if (a.is_simple() && b.is_simple()) {
      Jet r(a.c_[0] * b.c_[0], order);
      if (r.n_) r.val_ = a.val_ + b.val_;
      return r;
    }
    if (a.is_exact_zero() || b.is_exact_zero()) {
      Jet r(a.zero(), order);
      return r;
    }
    int P = kExactPrec;
    if (!a.is_exact() && b.n_) P = std::min<long long>(P, (long long)a.prec_ + b.val_);
    if (!b.is_exact() && a.n_) P = std::min<long long>(P, (long long)b.prec_ + a.val_);
    if (a.n_ == 0 && b.n_ == 0) P = a.prec_ + b.prec_;
    if (a.n_ == 0 || b.n_ == 0) return approx_zero(a.zero(), P, order);
    int v = a.val_ + b.val_;
    int len = a.n_ + b.n_ - 1;
    if (P != kExactPrec) len = std::max(0, std::min(len, P - v));
    E buf[2 * kJetCapacity];
    for (int k = 0; k < len; ++k) buf[k] = a.zero();
    for (int i = 0; i < a.n_; ++i) {
      for (int j = 0; j < b.n_ && i + j < len; ++j) buf[i + j] += a.c_[i] * b.c_[j];
    }
    Jet r(a.zero(), order);
    r.assign(buf, len, v, P);
    return r;
  }

  /// Multiplicative inverse. Exact zero throws DivisionByExactZero; a zero known
  /// only up to truncation throws PrecisionExhausted.
  Jet inv() const {
    if (is_exact_zero()) throw DivisionByExactZero();
    if (n_ == 0) throw PrecisionExhausted("inverting a jet whose leading term was truncated away");
    if (is_simple()) {
      Jet r(c_[0].inv(), order_);
      r.val_ = -val_;
      return r;
    }
    int rel = order_;
    if (!is_exact()) rel = std::min(rel, prec_ - val_);
    E buf[kJetCapacity];
    E inv0 = c_[0].inv();
    buf[0] = inv0;
    for (int k = 1; k < rel; ++k) {
      E acc = zero();
      for (int i = 1; i <= k && i < n_; ++i) acc += c_[i] * buf[k - i];
      buf[k] = -(acc * inv0);
    }
    // an exact monomial has an exact inverse; anything longer is an infinite series
    int P = (is_exact() && n_ == 1) ? kExactPrec : -val_ + rel;
    Jet r(zero(), order_);
    r.assign(buf, rel, -val_, P);
    return r;
  }

  Jet operator/(const Jet& b) const {
    if (b.is_simple() && is_simple()) {
      if (b.n_ == 0) throw DivisionByExactZero();
      Jet r(c_[0] * b.c_[0].inv(), std::max(order_, b.order_));
      if (r.n_) r.val_ = val_ - b.val_;
      return r;
    }
    return *this * b.inv();
  }

  Jet& operator+=(const Jet& b) { return *this = *this + b; }
  Jet& operator-=(const Jet& b) { return *this = *this - b; }
  Jet& operator*=(const Jet& b) { return *this = *this * b; }
  Jet& operator/=(const Jet& b) { return *this = *this / b; }

  Jet operator*(const E& s) const {
    if (s.is_zero()) return Jet(zero(), order_);
    Jet r = *this;
    for (int i = 0; i < r.n_; ++i) r.c_[i] *= s;
    return r;
  }

  Jet pow(long long e) const {
    Jet base = e < 0 ? inv() : *this;
    if (e < 0) e = -e;
    Jet acc(one(), order_);
    while (e > 0) {
      if (e & 1) acc *= base;
      e >>= 1;
      if (e) base *= base;
    }
    return acc;
  }

  /// True when a - b is zero to every known order.
  bool agrees(const Jet& b) const {
    if (is_simple() && b.is_simple()) {
      if (n_ != b.n_) return false;
      return n_ == 0 || (val_ == b.val_ && c_[0] == b.c_[0]);
    }
    return (*this - b).is_zero();
  }

  /// Keeps only exponents below e, marking the rest unknown.
  Jet truncated_below(int e) const {
    if (e >= prec_) return *this;
    Jet r = *this;
    r.prec_ = e;
    if (r.n_ && r.val_ >= e) {
      r.n_ = 0;
      r.val_ = e;
    } else if (r.n_) {
      r.n_ = std::min(r.n_, e - r.val_);
      r.trim_tail();
      if (r.n_ == 0) r.val_ = e;
    }
    return r;
  }

  std::string str() const {
    if (n_ == 0) return is_exact() ? "0" : "O(eps^" + std::to_string(prec_) + ")";
    std::string out;
    for (int i = 0; i < n_; ++i) {
      if (c_[i].is_zero()) continue;
      if (!out.empty()) out += " + ";
      out += c_[i].str();
      int e = val_ + i;
      if (e != 0) out += "*eps^" + std::to_string(e);
    }
    if (!is_exact()) out += " + O(eps^" + std::to_string(prec_) + ")";
    return out;
  }

  /// Compact dump "jet:[v,c0,c1,...]" used in JSON output.
  std::string dump() const {
    if (is_constant()) return n_ ? c_[0].str() : std::string("0");
    std::string out = "jet:[" + std::to_string(valuation());
    for (int i = 0; i < n_; ++i) out += "," + c_[i].str();
    out += "]";
    return out;
  }

 private:
  static int clamp_order(int order) {
    if (order < 1 || order > kJetCapacity)
      throw ConfigError("jet order must lie in [1, " + std::to_string(kJetCapacity) + "]");
    return order;
  }

  void trim_tail() {
    while (n_ > 0 && c_[n_ - 1].is_zero()) --n_;
  }

  /// Loads buf[0..len) at exponent v with absolute precision P, then strips
  /// leading zeros and truncates to order_ terms.
  void assign(E* buf, int len, int v, int P) {
    int lead = 0;
    while (lead < len && buf[lead].is_zero()) ++lead;
    prec_ = P;
    if (lead >= len) {
      n_ = 0;
      c_[0] = zero();
      val_ = P == kExactPrec ? 0 : P;
      return;
    }
    val_ = v + lead;
    int avail = len - lead;
    int keep = std::min(avail, order_);
    bool dropped = false;
    for (int i = keep; i < avail; ++i) dropped |= !buf[lead + i].is_zero();
    for (int i = 0; i < keep; ++i) c_[i] = buf[lead + i];
    n_ = keep;
    if (dropped) prec_ = std::min(prec_, val_ + order_);
    trim_tail();
  }

  static Jet add(const Jet& a, const Jet& b, bool subtract) {
    int order = std::max(a.order_, b.order_);
    if (a.is_simple() && b.is_simple() && (a.n_ == 0 || b.n_ == 0 || a.val_ == b.val_)) {
      E x = a.n_ ? a.c_[0] : a.zero();
      E y = b.n_ ? b.c_[0] : a.zero();
      Jet r(subtract ? x - y : x + y, order);
      if (r.n_) r.val_ = a.n_ ? a.val_ : b.val_;
      return r;
    }
    int P = std::min(a.prec_, b.prec_);
    int lo = INT32_MAX, hi = INT32_MIN;
    if (a.n_) lo = std::min(lo, a.val_), hi = std::max(hi, a.val_ + a.n_);
    if (b.n_) lo = std::min(lo, b.val_), hi = std::max(hi, b.val_ + b.n_);
    if (lo == INT32_MAX) {
      if (P == kExactPrec) return Jet(a.zero(), order);
      return approx_zero(a.zero(), P, order);
    }
    if (P != kExactPrec) hi = std::min(hi, P);
    if (hi <= lo) return approx_zero(a.zero(), P, order);
    // collect from the first nonzero term onward, at most order + 1 terms
    E buf[kJetCapacity + 1];
    int first = INT32_MIN, len = 0;
    bool dropped = false;
    for (int e = lo; e < hi; ++e) {
      E x = a.zero();
      if (a.n_ && e >= a.val_ && e < a.val_ + a.n_) x = a.c_[e - a.val_];
      if (b.n_ && e >= b.val_ && e < b.val_ + b.n_) {
        if (subtract)
          x -= b.c_[e - b.val_];
        else
          x += b.c_[e - b.val_];
      }
      if (first == INT32_MIN) {
        if (x.is_zero()) continue;
        first = e;
      }
      if (len < order) {
        buf[len++] = x;
      } else if (!x.is_zero()) {
        dropped = true;
        break;
      }
    }
    Jet r(a.zero(), order);
    if (first == INT32_MIN) {
      if (P == kExactPrec) return r;
      return approx_zero(a.zero(), P, order);
    }
    r.assign(buf, len, first, dropped ? std::min(P, first + order) : P);
    return r;
  }

  int val_ = 0;
  int prec_ = kExactPrec;
  int n_ = 0;
  int order_ = kDefaultJetOrder;
  std::array<E, kJetCapacity> c_{};
};

template <class E>
Jet<E> operator*(const E& s, const Jet<E>& j) {
  return j * s;
}

}  // namespace mshuffle
