#include <gtest/gtest.h>

#include <map>
#include <random>

#include "mshuffle/fp.hpp"
#include "mshuffle/identity.hpp"
#include "mshuffle/jet.hpp"
#include "mshuffle/params.hpp"
#include "mshuffle/rational.hpp"
#include "mshuffle/residue.hpp"

using namespace mshuffle;
using J = Jet<Fp>;

namespace {

const PrimeField F{};

Fp fp(std::int64_t x) { return F.make(x); }

// Exact Laurent polynomials as exponent -> coefficient maps.
using Laurent = std::map<int, std::uint64_t>;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % kMersenne61);
}

Laurent lmul(const Laurent& a, const Laurent& b) {
  Laurent r;
  for (auto [ea, ca] : a)
    for (auto [eb, cb] : b) r[ea + eb] = (r[ea + eb] + mulmod(ca, cb)) % kMersenne61;
  return r;
}

Laurent ladd(const Laurent& a, const Laurent& b) {
  Laurent r = a;
  for (auto [e, c] : b) r[e] = (r[e] + c) % kMersenne61;
  return r;
}

Laurent random_laurent(std::mt19937_64& rng, int lo, int len) {
  Laurent r;
  for (int i = 0; i < len; ++i) r[lo + i] = rng() % kMersenne61;
  if (r[lo] == 0) r[lo] = 1;
  return r;
}

J to_jet(const Laurent& l) {
  std::vector<Fp> cs;
  int lo = l.begin()->first;
  for (int e = lo; e <= l.rbegin()->first; ++e) {
    auto it = l.find(e);
    cs.push_back(fp(it == l.end() ? 0 : static_cast<std::int64_t>(it->second)));
  }
  return J::from_coeffs(cs, lo);
}

std::uint64_t lcoeff(const Laurent& l, int e) {
  auto it = l.find(e);
  return it == l.end() ? 0 : it->second;
}

}  // namespace

TEST(PrimeField, AxiomsOnRandomTriples) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 10000; ++i) {
    Fp a = F.random_nonzero(rng), b = F.random_nonzero(rng), c = F.random_nonzero(rng);
    ASSERT_EQ((a + b) + c, a + (b + c));
    ASSERT_EQ((a * b) * c, a * (b * c));
    ASSERT_EQ(a * (b + c), a * b + a * c);
    ASSERT_EQ(a * b, b * a);
    ASSERT_TRUE((a * a.inv()).is_one());
    ASSERT_TRUE((a - a).is_zero());
  }
}

TEST(PrimeField, MersenneReductionMatchesGenericModulus) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 2000; ++i) {
    std::uint64_t x = rng() % kMersenne61, y = rng() % kMersenne61;
    EXPECT_EQ((Fp(x, kMersenne61) * Fp(y, kMersenne61)).residue(), mulmod(x, y));
  }
}

TEST(PrimeField, OtherPrimesAndNegatives) {
  const std::uint64_t p = 1000000007ULL;
  EXPECT_TRUE(is_prime_u64(p));
  EXPECT_TRUE(is_prime_u64(kMersenne61));
  EXPECT_FALSE(is_prime_u64(kMersenne61 + 2));
  Fp a = Fp::from_int(-3, p);
  EXPECT_EQ(a.residue(), p - 3);
  EXPECT_TRUE((a * a.inv()).is_one());
  EXPECT_EQ(Fp::from_int(2, p).pow(-1) * Fp::from_int(2, p), Fp::from_int(1, p));
  EXPECT_THROW(Fp::from_int(0, p).inv(), DivisionByExactZero);
}

TEST(RationalField, ArithmeticIsExact) {
  Rational a(3), b(7);
  Rational c = a / b;
  EXPECT_EQ(c.str(), "3/7");
  EXPECT_TRUE((c * b - a).is_zero());
  EXPECT_EQ(Rational(2).pow(-3).str(), "1/8");
  EXPECT_THROW(Rational(0).inv(), DivisionByExactZero);
}

TEST(Jet, ValuationCancellationOnDivision) {
  J e = J::epsilon(fp(1));
  J a = e + e * e;
  J r = a / e;
  EXPECT_TRUE(r.agrees(J(fp(1)) + e));
  EXPECT_EQ(r.valuation(), 0);
  EXPECT_TRUE(r.is_exact());
}

TEST(Jet, SubtractionGivesCanonicalExactZero) {
  J r = J(fp(1)) - J(fp(1));
  EXPECT_TRUE(r.is_exact_zero());
  EXPECT_THROW(r.inv(), DivisionByExactZero);
}

TEST(Jet, TermByTermProduct) {
  J e = J::epsilon(fp(1));
  J a = J(fp(2)) + e * fp(3);
  J b = J::monomial(fp(5), -1);
  J r = a * b;
  EXPECT_EQ(r.valuation(), -1);
  EXPECT_EQ(r.coeff(-1), fp(10));
  EXPECT_EQ(r.coeff(0), fp(15));
  EXPECT_EQ(r.coeff(1), fp(0));
}

TEST(Jet, RingLawsAgainstExactLaurentOracle) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 300; ++trial) {
    Laurent la = random_laurent(rng, static_cast<int>(rng() % 5) - 2, 1 + static_cast<int>(rng() % 4));
    Laurent lb = random_laurent(rng, static_cast<int>(rng() % 5) - 2, 1 + static_cast<int>(rng() % 4));
    Laurent lc = random_laurent(rng, static_cast<int>(rng() % 5) - 2, 1 + static_cast<int>(rng() % 3));
    J a = to_jet(la), b = to_jet(lb), c = to_jet(lc);
    J abc = (a * b) * c;
    ASSERT_TRUE(abc.agrees(a * (b * c)));
    Laurent oracle = lmul(lmul(la, lb), lc);
    int v = abc.valuation();
    for (int e = v; e < std::min(abc.precision(), v + abc.order()); ++e)
      ASSERT_EQ(abc.coeff(e).residue(), lcoeff(oracle, e)) << "exponent " << e;
    J dist = a * (b + c);
    ASSERT_TRUE(dist.agrees(a * b + a * c));
    Laurent od = lmul(la, ladd(lb, lc));
    int vd = dist.valuation();
    for (int e = vd; e < std::min(dist.precision(), vd + dist.order()); ++e)
      ASSERT_EQ(dist.coeff(e).residue(), lcoeff(od, e));
  }
}

TEST(Jet, InverseIsTwoSided) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    Laurent la = random_laurent(rng, static_cast<int>(rng() % 7) - 3, 1 + static_cast<int>(rng() % 5));
    J a = to_jet(la);
    J prod = a * a.inv();
    ASSERT_EQ(prod.valuation(), 0);
    ASSERT_EQ(prod.coeff(0), fp(1));
    for (int e = 1; e < prod.precision() && e < 6; ++e) ASSERT_TRUE(prod.coeff(e).is_zero());
    ASSERT_GE(prod.precision(), a.order());
  }
}

TEST(Jet, TruncationTracksPrecision) {
  J e = J::epsilon(fp(1), 3);
  J a = J(fp(1), 3) - e;
  J inv = a.inv();  // 1 + eps + eps^2 + O(eps^3)
  EXPECT_EQ(inv.precision(), 3);
  EXPECT_EQ(inv.coeff(2), fp(1));
  EXPECT_THROW(inv.coeff(3), PrecisionExhausted);
  J z = inv - inv;
  EXPECT_TRUE(z.is_zero());
  EXPECT_FALSE(z.is_exact_zero());
  EXPECT_THROW(z.inv(), PrecisionExhausted);
}

TEST(Residue, RegularFunctionHasZeroResidue) {
  J y(fp(12345));
  auto r = residue_dz_over_z([&](const J& z) { return z * z + J(fp(3)); }, y);
  EXPECT_TRUE(r.is_exact_zero());
}

TEST(Residue, SimplePoleOfOneMinusZOverY) {
  // 1/(1 - z/y) at z = y(1+eps) is -1/eps, so the dz/z residue is -1
  J y(fp(777));
  auto r = residue_dz_over_z([&](const J& z) { return (J(fp(1)) - z / y).inv(); }, y);
  EXPECT_TRUE(r.agrees(J(fp(-1))));
}

TEST(Residue, DoublePoleUsesDzOverZConvention) {
  // 1/(z-a)^2 at z = a(1+eps): (1/(a^2 eps^2)) / (1+eps) has eps^-1 coefficient -1/a^2
  J a(fp(99));
  auto f = [&](const J& z) {
    J d = z - a;
    return (d * d).inv();
  };
  auto r = residue_dz_over_z(f, a);
  EXPECT_TRUE(r.agrees(J(fp(-1) / (fp(99) * fp(99)))));
  J a2 = J(fp(99), 2);
  EXPECT_THROW(residue_dz_over_z(f, a2), PoleOrderExceedsJet);
}

TEST(Substream, DependsOnIdOnly) {
  auto a = substream(42, "alpha");
  auto b = substream(42, "alpha");
  auto c = substream(42, "beta");
  EXPECT_EQ(a(), b());
  EXPECT_NE(substream(42, "alpha")(), c());
}

TEST(ProbEqual, ReflexiveSymmetricAndDetectsDifference) {
  Sampler<PrimeField> s(F, substream(1, "pe"));
  auto z1 = [](const Params<Fp>&, const Point<Fp>& z) { return z[0]; };
  auto z2 = [](const Params<Fp>&, const Point<Fp>& z) { return z[1]; };
  auto same = prob_equal(s, 2, 1, 1, z1, z1);
  EXPECT_TRUE(same.equal);
  EXPECT_EQ(same.trials, 1);
  EXPECT_LT(same.failure_bound, 1e-15);
  EXPECT_FALSE(prob_equal(s, 2, 3, 1, z1, z2).equal);
  EXPECT_FALSE(prob_equal(s, 2, 3, 1, z2, z1).equal);
}

TEST(ProbEqual, RetriesPolesThenGivesUp) {
  Sampler<PrimeField> s(F, substream(2, "poles"), SampleConfig{3, 6, 4});
  auto always_pole = [](const Params<Fp>&, const Point<Fp>&) -> J { throw PoleAtArgument("always"); };
  EXPECT_THROW(prob_equal(s, 1, 1, 1, always_pole, always_pole), EvaluationAtPole);
}

TEST(Sampler, AvoidsCriticalRatios) {
  Sampler<PrimeField> s(F, substream(3, "crit"));
  auto p = s.draw_params();
  auto z = s.draw_spectral(5);
  for (size_t i = 0; i < z.size(); ++i)
    for (size_t j = 0; j < z.size(); ++j) {
      if (i == j) continue;
      J r = z[i] / z[j];
      for (int a = -3; a <= 3; ++a) EXPECT_FALSE(r.agrees(p.q.pow(a))) << i << " " << j;
    }
}

TEST(Sampler, RationalModeDrawsExactValues) {
  Sampler<RationalField> s(RationalField{}, substream(4, "q"));
  auto p = s.draw_params();
  EXPECT_FALSE(p.q.lead().is_zero());
  EXPECT_TRUE((p.t - p.s * p.s).is_exact_zero());
}
