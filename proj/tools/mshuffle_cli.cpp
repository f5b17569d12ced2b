#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>

#include "mshuffle/compute.hpp"
#include "mshuffle/errors.hpp"
#include "mshuffle/suites.hpp"

using namespace mshuffle;

namespace {

constexpr int kExitCheckFailed = 2;
constexpr int kExitConfig = 3;

void add_config_flags(CLI::App* app, RunConfig& cfg) {
  app->add_option("--n", cfg.n, "even dimension")->capture_default_str();
  app->add_option("--m", cfg.m, "odd dimension")->capture_default_str();
  app->add_option("--kmax", cfg.kmax, "largest degree k in the S, P and alpha checks")->capture_default_str();
  app->add_option("--order", cfg.order, "largest N in the series checks")->capture_default_str();
  app->add_option("--prime", cfg.prime, "field characteristic")->capture_default_str();
  app->add_option("--seed", cfg.seed, "master seed")->capture_default_str();
  app->add_option("--trials", cfg.trials, "random points per check")->capture_default_str();
  app->add_option("--jet-order", cfg.jet_order, "terms kept in each jet")->capture_default_str();
  app->add_option("--out", cfg.out, "output file (default stdout)");
}

void emit(const nlohmann::json& j, const std::string& path) {
  const std::string text = j.dump(2) + "\n";
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw ConfigError("cannot write " + path);
  f << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact identity checks for the matrix shuffle algebra over F_p"};
  app.require_subcommand(1);

  RunConfig cfg;
  auto* verify = app.add_subcommand("verify", "run identity suites and print a JSON report");
  add_config_flags(verify, cfg);
  verify->add_option("suite,--suite", cfg.suite, "suite name or all")->capture_default_str();
  verify->add_option("--lattice-n", cfg.lattice_max_n, "largest lattice size")->capture_default_str();
  verify->add_flag("--no-timing{false}", cfg.timing, "omit elapsed times so reports are byte-identical");
  bool list = false;
  verify->add_flag("--list", list, "print suite names and exit");

  ComputeRequest req;
  std::string alpha, beta;
  auto* compute = app.add_subcommand("compute", "evaluate S, P, H, Z or the lattice sum at a seeded point");
  add_config_flags(compute, cfg);
  compute->add_option("object", req.object, "S, P, H, Z or lattice")->required();
  compute->add_option("--i", req.i, "label")->capture_default_str();
  compute->add_option("--k", req.k, "degree")->capture_default_str();
  compute->add_option("--N", req.N, "number of variables for Z and lattice")->capture_default_str();
  compute->add_option("--alpha", alpha, "top boundary labels, e.g. 12");
  compute->add_option("--beta", beta, "bottom boundary labels");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }

  try {
    if (verify->parsed()) {
      if (list) {
        for (const auto& s : suite_names()) std::cout << s << "\n";
        return 0;
      }
      auto checks = run_suite(cfg.suite, cfg);
      emit(report_json(cfg, checks), cfg.out);
      int bad = 0;
      for (const auto& c : checks) bad += !c.ok();
      std::fprintf(stderr, "%zu checks, %d failed\n", checks.size(), bad);
      return bad ? kExitCheckFailed : 0;
    }
    if (req.object == "lattice") {
      req.alpha = parse_labels(alpha.empty() ? std::string(req.N, '1') : alpha);
      req.beta = parse_labels(beta.empty() ? std::string(req.N, '1') : beta);
    }
    emit(compute_json(req, cfg), cfg.out);
    return 0;
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "configuration error: %s\n", e.what());
    return kExitConfig;
  } catch (const BudgetExceeded& e) {
    std::fprintf(stderr, "budget exceeded: %s\n", e.what());
    return kExitConfig;
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitConfig;
  }
}
