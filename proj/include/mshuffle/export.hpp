#pragma once

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "mshuffle/params.hpp"
#include "mshuffle/tensor.hpp"

namespace mshuffle {

/// Named evaluation point, in output order.
template <class E>
using NamedPoint = std::vector<std::pair<std::string, Jet<E>>>;

/// q, s and z_1..z_k as they appear in a dump.
template <class E>
NamedPoint<E> named_point(const Params<E>& p, const Point<E>& z) {
  NamedPoint<E> out{{"q", p.q}, {"s", p.s}};
  for (size_t i = 0; i < z.size(); ++i) out.emplace_back("z" + std::to_string(i + 1), z[i]);
  return out;
}

template <class E>
nlohmann::json point_json(const NamedPoint<E>& pt) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [name, v] : pt) j[name] = v.dump();
  return j;
}

/// {"space", "arity", "point", "entries": [[row, col, "coeff"]]}; exact zeros are skipped.
template <class E>
nlohmann::json tensor_json(const Tensor<E>& t, const NamedPoint<E>& pt) {
  nlohmann::json entries = nlohmann::json::array();
  for (int r = 0; r < t.side(); ++r)
    for (int c = 0; c < t.side(); ++c)
      if (!t.at(r, c).is_exact_zero()) entries.push_back({r, c, t.at(r, c).dump()});
  return {{"space", {{"n", t.space().n()}, {"m", t.space().m()}}},
          {"arity", t.arity()},
          {"point", point_json(pt)},
          {"entries", std::move(entries)}};
}

}  // namespace mshuffle
