#include "mshuffle/compute.hpp"

#include <cctype>

#include "mshuffle/commuting.hpp"
#include "mshuffle/export.hpp"
#include "mshuffle/lattice.hpp"

namespace mshuffle {

namespace {

using Fam = Family<Fp>;

nlohmann::json space_json(const GradedSpace& V) { return {{"n", V.n()}, {"m", V.m()}}; }

}  // namespace

std::vector<int> parse_labels(const std::string& s) {
  std::vector<int> out;
  for (char ch : s) {
    if (ch == ',' || ch == ' ') continue;
    if (!std::isdigit(static_cast<unsigned char>(ch)) || ch == '0')
      throw ConfigError("labels are digits 1..9, got '" + s + "'");
    out.push_back(ch - '0');
  }
  return out;
}

nlohmann::json compute_json(const ComputeRequest& req, const RunConfig& cfg) {
  cfg.validate();
  const GradedSpace V = cfg.space();
  const PrimeField F{cfg.prime};
  SampleConfig sc;
  sc.kmax = std::max(cfg.kmax, 4);
  sc.jet_order = cfg.jet_order;
  Sampler<PrimeField> smp(F, substream(cfg.seed, "compute/" + req.object), sc);
  const auto p = smp.draw_params();

  nlohmann::json head{{"object", req.object}, {"seed", std::to_string(cfg.seed)}, {"prime", std::to_string(cfg.prime)}};

  if (req.object == "S" || req.object == "P" || req.object == "H") {
    if (req.k < 1 || req.k > 4) throw ConfigError("k must lie in 1..4");
    const int lo = req.object == "S" ? 0 : 1;
    if (req.i < lo || req.i > V.dim()) throw ConfigError("label i out of range for " + V.str());
    Fam f = req.object == "S"   ? s_element<Fp>(V, req.i, req.k)
            : req.object == "P" ? p_element<Fp>(V, req.i, req.k)
                                : h_element<Fp>(V, req.i, req.k);
    const auto z = smp.draw_spectral(req.k);
    head["i"] = req.i;
    head["k"] = req.k;
    head["tensor"] = tensor_json(f(p, z), named_point(p, z));
    return head;
  }

  if (req.object == "Z") {
    if (req.N < 0 || req.N > 3) throw ConfigError("N must lie in 0..3");
    const auto z = smp.draw_spectral(req.N);
    const auto pt = named_point(p, z);
    nlohmann::json coeffs = nlohmann::json::array();
    for (const auto& [kappa, f] : z_trace<Fp>(V, req.N))
      coeffs.push_back({{"u_monomial", kappa}, {"tensor", tensor_json(f(p, z), pt)}});
    head["N"] = req.N;
    head["coefficients"] = std::move(coeffs);
    return head;
  }

  if (req.object == "lattice") {
    if (req.alpha.size() != req.beta.size()) throw ConfigError("alpha and beta must have the same length");
    const int N = static_cast<int>(req.beta.size());
    const auto z = smp.draw_spectral(N);
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [kappa, v] : partition_function(V, req.alpha, req.beta, p, z))
      if (!v.is_exact_zero()) terms.push_back({{"u_monomial", kappa}, {"value", v.dump()}});
    head["space"] = space_json(V);
    head["alpha"] = req.alpha;
    head["beta"] = req.beta;
    head["point"] = point_json(named_point(p, z));
    head["terms"] = std::move(terms);
    return head;
  }

  throw ConfigError("unknown object " + req.object + " (expected S, P, H, Z or lattice)");
}

}  // namespace mshuffle
