#include <gtest/gtest.h>

#include "mshuffle/commuting.hpp"
#include "mshuffle/fp.hpp"
#include "mshuffle/lattice.hpp"

using namespace mshuffle;
using J = Jet<Fp>;
using T = Tensor<Fp>;

namespace {

const PrimeField F{};

Sampler<PrimeField> sampler(const std::string& id) { return Sampler<PrimeField>(F, substream(99, id)); }

std::vector<std::vector<int>> words(int d, int N) {
  std::vector<std::vector<int>> out;
  T shape(GradedSpace(d, 0), N, F.make(0));
  for (int w = 0; w < shape.side(); ++w) out.push_back(shape.word_of(w));
  return out;
}

}  // namespace

TEST(VertexWeight, AgreesWithRCheckEntries) {
  for (const auto& V : {GradedSpace(2, 0), GradedSpace(1, 1), GradedSpace(2, 1), GradedSpace(1, 2)}) {
    auto smp = sampler("vw" + V.str());
    auto p = smp.draw_params();
    auto xy = smp.draw_spectral(2);
    T r = r_check(V, p, xy[0] / xy[1]);
    for (const auto& w : words(V.dim(), 4)) {
      J lhs = vertex_weight(V, w[0], w[1], w[2], w[3], xy[0], xy[1], p);
      J rhs = r.entry({w[2], w[3]}, {w[0], w[1]});
      EXPECT_TRUE(lhs.agrees(rhs)) << V.str() << " " << w[0] << w[1] << w[2] << w[3];
    }
  }
}

TEST(VertexWeight, TableValues) {
  GradedSpace V(2, 1);
  auto smp = sampler("table");
  auto p = smp.draw_params();
  auto xy = smp.draw_spectral(2);
  J r = xy[0] / xy[1];
  J den = (p.one() - r).inv();
  EXPECT_TRUE(vertex_weight(V, 2, 1, 1, 2, xy[0], xy[1], p).agrees(p.one()));
  EXPECT_TRUE(vertex_weight(V, 1, 1, 1, 1, xy[0], xy[1], p).agrees((p.s.inv() - p.s * r) * den));
  EXPECT_TRUE(vertex_weight(V, 3, 3, 3, 3, xy[0], xy[1], p).agrees((p.s.inv() * r - p.s) * den));
  EXPECT_TRUE(vertex_weight(V, 1, 2, 1, 2, xy[0], xy[1], p).agrees((p.s.inv() - p.s) * r * den));
  EXPECT_TRUE(vertex_weight(V, 2, 1, 2, 1, xy[0], xy[1], p).agrees((p.s.inv() - p.s) * den));
  EXPECT_TRUE(vertex_weight(V, 1, 2, 2, 2, xy[0], xy[1], p).is_zero());
  EXPECT_TRUE(vertex_weight(V, 1, 2, 3, 1, xy[0], xy[1], p).is_zero());
}

TEST(Lattice, EmptyLatticeIsOne) {
  GradedSpace V(1, 1);
  auto smp = sampler("n0");
  auto p = smp.draw_params();
  auto z = partition_function<Fp>(V, {}, {}, p, {});
  ASSERT_EQ(z.size(), 1u);
  EXPECT_TRUE(z.begin()->second.agrees(p.one()));
}

TEST(Lattice, SingleSiteGlOne) {
  GradedSpace V(1, 0);
  auto smp = sampler("n1");
  auto p = smp.draw_params();
  auto z = smp.draw_spectral(1);
  int count = 0;
  enumerate_lattice(V, 1, {1}, p, z, [&](const LatticeConfig&, const J&) { ++count; });
  EXPECT_EQ(count, 1);
  auto pf = partition_function(V, {1}, {1}, p, z);
  ASSERT_EQ(pf.size(), 1u);
  EXPECT_EQ(pf.begin()->first, Monomial{1});
  EXPECT_TRUE(pf.begin()->second.agrees((p.q / p.s - p.s) / (p.q - p.one())));
}

TEST(Lattice, SingleSiteTwoColors) {
  GradedSpace V(2, 0);
  auto smp = sampler("n1c2");
  auto p = smp.draw_params();
  auto z = smp.draw_spectral(1);
  std::vector<LoopData> loops;
  enumerate_lattice(V, 1, {1}, p, z, [&](const LatticeConfig& c, const J&) {
    if (c.alpha == std::vector<int>{1}) loops.push_back(trace_loops(V, c));
  });
  ASSERT_EQ(loops.size(), 2u);
  for (const auto& l : loops) EXPECT_EQ(l.lambda[1], l.seam[0] == 2 ? 1 : 0);
}

TEST(Lattice, LoopsMatchSeamColors) {
  for (const auto& V : {GradedSpace(2, 0), GradedSpace(1, 1), GradedSpace(3, 0)})
    for (int N = 1; N <= (V.dim() == 3 ? 2 : 3); ++N) {
      auto smp = sampler("loops");
      auto p = smp.draw_params();
      auto z = smp.draw_spectral(N);
      for (const auto& beta : words(V.dim(), N))
        enumerate_lattice(V, N, beta, p, z, [&](const LatticeConfig& c, const J&) {
          LoopData l = trace_loops(V, c);
          EXPECT_TRUE(l.loops_cross_seam_once);
          int nonempty = 0;
          for (int i = 2; i <= V.dim(); ++i) {
            int on_seam = 0;
            for (int x : c.seam) on_seam += x == i;
            EXPECT_EQ(l.lambda[i - 1], on_seam) << V.str() << " color " << i;
            nonempty += on_seam;
          }
          EXPECT_LE(nonempty, N);
          EXPECT_EQ(lattice_monomial(l)[0], N - nonempty);
        });
    }
}

TEST(Lattice, PartitionFunctionEqualsTraceFormula) {
  for (const auto& V : {GradedSpace(2, 0), GradedSpace(1, 1), GradedSpace(0, 2)})
    for (int N = 1; N <= 3; ++N) {
      auto smp = sampler("pf" + V.str() + std::to_string(N));
      auto p = smp.draw_params();
      auto z = smp.draw_spectral(N);
      auto lat = lattice_partition_matrix(V, N, p, z);
      for (const auto& kappa : monomials(V.dim(), N)) {
        T tr = z_trace_coefficient<Fp>(V, kappa)(p, z);
        auto it = lat.find(kappa);
        T lt = it == lat.end() ? T(V, N, p.elem(0)) : it->second;
        EXPECT_TRUE(lt.agrees(tr)) << V.str() << " N=" << N << " " << monomial_str(kappa);
      }
      for (const auto& [kappa, t] : lat) {
        int deg = 0;
        for (int x : kappa) deg += x;
        EXPECT_EQ(deg, N);
      }
    }
}

TEST(Lattice, SingleEntryMatchesMatrix) {
  GradedSpace V(2, 0);
  auto smp = sampler("entry");
  auto p = smp.draw_params();
  auto z = smp.draw_spectral(2);
  auto lat = lattice_partition_matrix(V, 2, p, z);
  auto pf = partition_function(V, {2, 1}, {1, 2}, p, z);
  for (const auto& [kappa, val] : pf) EXPECT_TRUE(val.agrees(lat.at(kappa).entry({2, 1}, {1, 2})));
}

TEST(Lattice, VacuumSectorGlOne) {
  GradedSpace V(1, 0);
  auto smp = sampler("vac");
  auto p = smp.draw_params();
  auto z = smp.draw_spectral(2);
  auto pf = partition_function(V, {1, 1}, {1, 1}, p, z);
  ASSERT_EQ(pf.size(), 1u);
  T tr = z_trace_coefficient<Fp>(V, {2})(p, z);
  EXPECT_TRUE(pf.at({2}).agrees(tr.at(0, 0)));
}

TEST(Lattice, BudgetIsEnforced) {
  GradedSpace V(2, 0);
  auto smp = sampler("budget");
  auto p = smp.draw_params();
  auto z = smp.draw_spectral(3);
  LatticeBudget tight{1000};
  EXPECT_THROW(partition_function(V, {1, 1, 1}, {1, 1, 1}, p, z, tight), BudgetExceeded);
  EXPECT_THROW(partition_function(V, {1, 1}, {1, 1, 1}, p, z), PositionOutOfRange);
}
