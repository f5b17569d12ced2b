#pragma once

#include <string>

#include "mshuffle/errors.hpp"
#include "mshuffle/jet.hpp"
#include "mshuffle/tensor.hpp"

namespace mshuffle {

namespace detail {

template <class E>
Jet<E> dz_over_z_coefficient(const Jet<E>& value, const Jet<E>& one_plus_eps_inv, int K) {
  if (!value.is_zero() && value.valuation() < -(K - 1))
    throw PoleOrderExceedsJet("pole of order " + std::to_string(-value.valuation()) + " needs jet order above " +
                              std::to_string(K));
  Jet<E> w = value * one_plus_eps_inv;
  return Jet<E>(w.coeff(-1));
}

}  // namespace detail

/// Residue of f(z) dz/z at z = point: the eps^{-1} coefficient of
/// f(point (1+eps)) / (1+eps).
template <class E, class Fn>
Jet<E> residue_dz_over_z(Fn&& f, const Jet<E>& point) {
  int K = point.order();
  Jet<E> one(point.one(), K);
  Jet<E> ope = one + Jet<E>::epsilon(point.one(), K);
  Jet<E> value = f(point * ope);
  return detail::dz_over_z_coefficient(value, ope.inv(), K);
}

/// Entrywise residue of a tensor-valued function.
template <class E, class Fn>
Tensor<E> residue_dz_over_z_tensor(Fn&& f, const Jet<E>& point) {
  int K = point.order();
  Jet<E> one(point.one(), K);
  Jet<E> ope = one + Jet<E>::epsilon(point.one(), K);
  Jet<E> inv = ope.inv();
  Tensor<E> value = f(point * ope);
  return value.map([&](const Jet<E>& x) { return detail::dz_over_z_coefficient(x, inv, K); });
}

}  // namespace mshuffle
