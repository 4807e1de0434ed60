#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "wigmaj/entropics.hpp"
#include "wigmaj/errors.hpp"
#include "wigmaj/majorization.hpp"
#include "wigmaj/phase_states.hpp"
#include "wigmaj/proof_suite.hpp"
#include "wigmaj/rearrangement.hpp"
#include "wigmaj/sampling.hpp"

using namespace wigmaj;

namespace {

const ReducedProfile& f0() {
  static const auto p = ReducedProfile::exp_poly({1.0});
  return p;
}
const ReducedProfile& fb() {
  static const auto p = ReducedProfile::exp_poly({0.0, 1.0});
  return p;
}
const ReducedProfile& fc() {
  static const auto p = ReducedProfile::exp_poly({1.0, -2.0, 1.0});
  return p;
}
const ReducedProfile& fd() {
  static const auto p = ReducedProfile::exp_poly({0.0, 0.0, 0.5});
  return p;
}

std::vector<ReducedProfile> named_profiles() {
  std::vector<ReducedProfile> out{f0(), fb(), fc(), fd()};
  for (double t : {0.1, 0.3, 0.5, 0.7, 0.9}) out.push_back(ellipse_profile(t));
  return out;
}

std::vector<ReducedProfile> random_profiles(int n, std::uint64_t seed) {
  std::vector<ReducedProfile> out;
  for (int i = 0; i < n; ++i)
    out.push_back(radial_reduce(wigner_of_mixture(sample_positive_fock_mixture(1 + i % 4, seed + i))));
  return out;
}

std::vector<ReducedProfile> pool() {
  auto out = named_profiles();
  for (auto& p : random_profiles(50, 7000)) out.push_back(p);
  return out;
}

Outcome mirrored(Outcome o) {
  if (o == Outcome::Majorizes) return Outcome::MajorizedBy;
  if (o == Outcome::MajorizedBy) return Outcome::Majorizes;
  return o;
}

}  // namespace

TEST(Compare, Examples) {
  EXPECT_EQ(compare(f0(), fb()).outcome, Outcome::Majorizes);
  EXPECT_EQ(compare(fb(), f0()).outcome, Outcome::MajorizedBy);
  EXPECT_EQ(compare(f0(), shift_profile(f0(), 3.0)).outcome, Outcome::Equivalent);
  EXPECT_EQ(compare(fc(), fc()).outcome, Outcome::Equivalent);
  const auto v = compare(f0(), fd());
  EXPECT_TRUE(v.holds());
  ASSERT_TRUE(v.witness_ahead.has_value());
  EXPECT_FALSE(v.witness_behind.has_value());
  EXPECT_NEAR(v.max_gap, f0().cumulative(*v.witness_ahead) - fd().cumulative(*v.witness_ahead), 1e-14);
}

TEST(Compare, FbAgainstFcIsPinnedByDenseScan) {
  const auto v = compare(fb(), fc());
  // Dense scan at ten times the comparator's resolution.
  double low = kInfinity, high = -kInfinity;
  for (double s : oracle::linspace(0.0, 40.0, 6001)) {
    const double gap = fb().cumulative(s) - fc().cumulative(s);
    low = std::min(low, gap);
    high = std::max(high, gap);
  }
  EXPECT_EQ(v.outcome, Outcome::Incomparable);
  EXPECT_EQ(classify(low, high, v.tolerance), Outcome::Incomparable);
  EXPECT_NEAR(v.margin, low, 1e-6);
  EXPECT_NEAR(v.max_gap, high, 1e-6);
  EXPECT_NEAR(v.margin, -0.0825567, 1e-6);
  EXPECT_NEAR(v.max_gap, 0.1294556, 1e-6);
  // Independent sorted-sample curves show the same crossing.
  const std::vector<double> sizes{*v.witness_behind, *v.witness_ahead};
  const auto sb = oracle::sorted_cumulative([](double x) { return x * std::exp(-x); }, 60.0, 1'000'000, sizes);
  const auto sc = oracle::sorted_cumulative([](double x) { return (x - 1) * (x - 1) * std::exp(-x); }, 60.0, 1'000'000, sizes);
  EXPECT_NEAR(sb[0] - sc[0], v.margin, 1e-6);
  EXPECT_NEAR(sb[1] - sc[1], v.max_gap, 1e-6);
}

TEST(Compare, Errors) {
  const auto grid = radial_wigner_grid(vacuum_wigner(), 8.0, 128);
  EXPECT_THROW(compare(f0(), grid), RepresentationError);
  EXPECT_THROW(compare(f0(), f0().scaled(2.0)), NormalizationError);
  EXPECT_THROW(compare(f0(), fb(), 0.0), DomainError);
  EXPECT_THROW(compare_plus(f0(), fb(), std::vector<double>{-1.0}), DomainError);
}

TEST(Compare, IsAntisymmetric) {
  const auto profiles = random_profiles(12, 100);
  for (std::size_t i = 0; i + 1 < profiles.size(); ++i) {
    const auto ab = compare(profiles[i], profiles[i + 1]);
    const auto ba = compare(profiles[i + 1], profiles[i]);
    EXPECT_EQ(ba.outcome, mirrored(ab.outcome));
    EXPECT_NEAR(ab.margin, -ba.max_gap, 1e-12);
  }
}

TEST(ComparePlus, Examples) {
  EXPECT_EQ(compare_plus(f0(), fd()).outcome, Outcome::Majorizes);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto w = radial_reduce(wigner_of_mixture(sample_positive_fock_mixture(1 + seed % 4, 40 + seed)));
    EXPECT_TRUE(compare_plus(f0(), w).holds()) << seed;
  }
  const std::vector<double> only_zero{0.0};
  const auto v = compare_plus(f0(), fb(), only_zero);
  EXPECT_EQ(v.outcome, Outcome::Equivalent);
  EXPECT_NEAR(v.margin, 0.0, 1e-14);
}

TEST(CriterionAgreement, CompareAndComparePlusGiveIdenticalOutcomes) {
  const auto p = pool();
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<std::size_t> pick(0, p.size() - 1);
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < 9; ++i)
    for (std::size_t j = 0; j < 9; ++j) pairs.emplace_back(i, j);
  for (int k = 0; k < 150; ++k) pairs.emplace_back(pick(rng), pick(rng));
  for (const auto& [i, j] : pairs) {
    const auto a = compare(p[i], p[j]);
    const auto b = compare_plus(p[i], p[j]);
    EXPECT_EQ(a.outcome, b.outcome) << i << "," << j << " margin " << a.margin << "/" << b.margin << " gap "
                                    << a.max_gap << "/" << b.max_gap;
  }
}

TEST(Compare, Transitivity) {
  const auto p = pool();
  std::vector<std::vector<Outcome>> table(p.size(), std::vector<Outcome>(p.size()));
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i; j < p.size(); ++j) {
      table[i][j] = compare(p[i], p[j]).outcome;
      table[j][i] = mirrored(table[i][j]);
    }
  int chains = 0;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = 0; j < p.size(); ++j)
      for (std::size_t k = 0; k < p.size(); ++k)
        if (table[i][j] == Outcome::Majorizes && table[j][k] == Outcome::Majorizes) {
          ++chains;
          EXPECT_EQ(table[i][k], Outcome::Majorizes) << i << " " << j << " " << k;
        }
  EXPECT_GT(chains, 100);
}

TEST(Compare, EquivalenceIsMutualMajorization) {
  auto p = named_profiles();
  p.push_back(shift_profile(f0(), 2.0));
  p.push_back(decreasing_rearrangement(fc()));
  for (const auto& a : p)
    for (const auto& b : p) {
      const bool equivalent = compare(a, b).outcome == Outcome::Equivalent;
      EXPECT_EQ(equivalent, compare(a, b).holds() && compare(b, a).holds());
    }
}

TEST(Compare, SchurConsistency) {
  const auto p = pool();
  int checked = 0;
  for (std::size_t i = 0; i < p.size(); i += 3)
    for (std::size_t j = 0; j < p.size(); j += 2) {
      if (compare(p[i], p[j]).outcome != Outcome::Majorizes) continue;
      ++checked;
      const auto report = schur_battery(p[i], p[j]);
      EXPECT_TRUE(report.violations.empty()) << i << "," << j << " " << report.violations.front().functional;
    }
  EXPECT_GT(checked, 20);
}

TEST(ConvexMixture, Examples) {
  EXPECT_TRUE(convex_mixture_check(f0(), fb(), fd(), 0.5));
  EXPECT_EQ(convex_mixture_check(f0(), fb(), fd(), 0.0), compare(f0(), fd()).holds());
  EXPECT_EQ(convex_mixture_check(f0(), fb(), fd(), 1.0), compare(f0(), fb()).holds());
  EXPECT_THROW(convex_mixture_check(fb(), f0(), fd(), 0.5), ContractError);
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const auto named = named_profiles();
  for (int k = 0; k < 20; ++k)
    EXPECT_TRUE(convex_mixture_check(f0(), named[1 + k % 8], named[1 + (k * 5 + 3) % 8], u(rng)));
}

TEST(KernelMixtureCertificate, ExponentialKernelRebuildsFb) {
  const MixingKernel kb{[](double a) { return std::exp(-a); }, {}};
  const auto cert = lemma2_certify(kb, shift_family(f0()), fb());
  EXPECT_LT(cert.max_reconstruction_error, 1e-12);
  EXPECT_LT(cert.kernel_mass_error, 1e-12);
  EXPECT_LT(cert.level_equivalence_error, 1e-12);
  EXPECT_TRUE(cert.holds);
  EXPECT_EQ(cert.verdict.outcome, Outcome::Majorizes);
}

TEST(KernelMixtureCertificate, GammaKernelRebuildsFd) {
  const MixingKernel kd{[](double a) { return a * std::exp(-a); }, {}};
  const auto cert = lemma2_certify(kd, shift_family(f0()), fd());
  EXPECT_LT(cert.max_reconstruction_error, 1e-12);
  EXPECT_TRUE(cert.holds);
}

TEST(KernelMixtureCertificate, NarrowBoxIsIdentity) {
  const double width = 1e-9;
  const MixingKernel box{[width](double a) { return a <= width ? 1.0 / width : 0.0; }, {width}};
  const auto cert = lemma2_certify(box, shift_family(f0()), f0());
  EXPECT_LT(cert.max_reconstruction_error, 1e-8);
  EXPECT_EQ(cert.verdict.outcome, Outcome::Equivalent);
}

TEST(KernelMixtureCertificate, Failures) {
  const MixingKernel kb{[](double a) { return std::exp(-a); }, {}};
  try {
    lemma2_certify(kb, shift_family(f0()), fd());
    FAIL() << "expected CertificationError";
  } catch (const CertificationError& e) {
    EXPECT_GT(e.max_error(), 1e-3);
  }
  const MixingKernel heavy{[](double a) { return 2.0 * std::exp(-a); }, {}};
  EXPECT_THROW(lemma2_certify(heavy, shift_family(f0()), fb()), ContractError);
  ProfileFamily scaled;
  scaled.member = [](double a) { return ReducedProfile::exp_poly({1.0 / (1.0 + a)}); };
  scaled.value = [](double a, double x) { return std::exp(-x) / (1.0 + a); };
  scaled.breakpoints = [](double) { return std::vector<double>{}; };
  EXPECT_THROW(lemma2_certify(kb, scaled, fb()), ContractError);
}

TEST(SplitAssembly, FcSplit) {
  const double x_star = 1.0 - std::log(2.0);
  const auto r = lemma3_split_compare(f0().truncated(0.0, x_star), f0().truncated(x_star, kInfinity),
                                      fc().truncated(0.0, 1.0), fc().truncated(1.0, kInfinity));
  EXPECT_TRUE(r.holds);
  EXPECT_EQ(r.assembled.outcome, compare(f0(), fc()).outcome);
}

TEST(SplitAssembly, Reflexive) {
  const auto r = lemma3_split_compare(fb().truncated(0.0, 2.0), fb().truncated(2.0, kInfinity),
                                      fb().truncated(0.0, 2.0), fb().truncated(2.0, kInfinity));
  EXPECT_TRUE(r.holds);
  EXPECT_EQ(r.assembled.outcome, Outcome::Equivalent);
}

TEST(SplitAssembly, EllipseSplits) {
  for (double t : {0.25, 0.5, 0.75}) {
    const auto sp = split_points(t);
    const auto g = ellipse_profile(t);
    const auto r = lemma3_split_compare(f0().truncated(0.0, sp.b_t), f0().truncated(sp.b_t, kInfinity),
                                        g.truncated(0.0, sp.a_t), g.truncated(sp.a_t, kInfinity));
    EXPECT_TRUE(r.holds) << t;
    EXPECT_EQ(r.assembled.outcome, compare(f0(), g).outcome) << t;
  }
}

TEST(SplitAssembly, Contracts) {
  EXPECT_THROW(lemma3_split_compare(f0().truncated(0.0, 2.0), f0().truncated(1.0, kInfinity),
                                    fb().truncated(0.0, 2.0), fb().truncated(2.0, kInfinity)),
               ContractError);
  EXPECT_THROW(lemma3_split_compare(f0().truncated(0.0, 1.0), f0().truncated(1.0, kInfinity),
                                    fb().truncated(0.0, 2.0), fb().truncated(2.0, kInfinity)),
               NormalizationError);
  // Part masses match but the head of fc does not dominate f0's head.
  EXPECT_THROW(lemma3_split_compare(fc().truncated(0.0, 1.0), fc().truncated(1.0, kInfinity),
                                    f0().truncated(0.0, 1.0 - std::log(2.0)),
                                    f0().truncated(1.0 - std::log(2.0), kInfinity)),
               ContractError);
}

TEST(DiscreteOracle, Examples) {
  const auto w0 = radial_wigner_grid(vacuum_wigner(), 8.0, 512);
  const auto wb = radial_wigner_grid(extremal_wigner(ExtremalState::b()), 8.0, 512);
  EXPECT_EQ(discrete_oracle(w0, wb).verdict.outcome, Outcome::Majorizes);
  EXPECT_EQ(discrete_oracle(wb, wb).verdict.outcome, Outcome::Equivalent);
  EXPECT_EQ(discrete_oracle(fc(), fc()).verdict.outcome, Outcome::Equivalent);
  const auto d = discrete_oracle(f0(), fb());
  EXPECT_EQ(d.verdict.outcome, Outcome::Majorizes);
  EXPECT_GT(d.discretization_band, 0.0);
  EXPECT_THROW(discrete_oracle(f0(), fb(), 0), DomainError);
}

TEST(DiscreteOracle, AgreesWithCompareOnGrids) {
  std::vector<GridWigner> grids;
  for (std::uint64_t k = 0; k < 20; ++k)
    grids.push_back(radial_wigner_grid(wigner_of_mixture(sample_positive_fock_mixture(1 + k % 4, 3000 + k)), 8.0, 512));
  for (std::uint64_t k = 0; k < 20; ++k)
    grids.push_back(gaussian_mixture_wigner(sample_gaussian_mixture(1 + static_cast<int>(k % 3), 4000 + k), 8.0, 512));
  std::mt19937_64 rng(77);
  std::uniform_int_distribution<std::size_t> pick(0, grids.size() - 1);
  for (int n = 0; n < 100; ++n) {
    const auto i = pick(rng), j = pick(rng);
    const auto c = compare(grids[i], grids[j]);
    const auto d = discrete_oracle(grids[i], grids[j]);
    EXPECT_TRUE(verdicts_agree(c, d.verdict, d.verdict.tolerance))
        << i << "," << j << " " << to_string(c.outcome) << " vs " << to_string(d.verdict.outcome);
  }
}

TEST(DiscreteOracle, AgreesWithCompareOnProfiles) {
  const auto p = pool();
  for (std::size_t i = 0; i < p.size(); i += 4)
    for (std::size_t j = 1; j < p.size(); j += 5) {
      const auto c = compare(p[i], p[j]);
      const auto d = discrete_oracle(p[i], p[j]);
      EXPECT_TRUE(verdicts_agree(c, d.verdict, d.verdict.tolerance)) << i << "," << j;
    }
}
