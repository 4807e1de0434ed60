#include <gtest/gtest.h>

#include <chrono>
#include <cmath>

#include "oracles.hpp"
#include "wigmaj/errors.hpp"
#include "wigmaj/majorization.hpp"
#include "wigmaj/proof_suite.hpp"

using namespace wigmaj;

namespace {

double common_factor(double t) { return (t + 1.0) * std::exp(std::sqrt((1.0 - t) / (1.0 + t)) - 1.0); }

const ProofStep* find_step(const ProofReport& r, const std::string& name) {
  for (const auto& s : r.steps)
    if (s.name == name) return &s;
  return nullptr;
}

}  // namespace

TEST(ProofProfiles, EllipseEndpoints) {
  const auto p = proof_profiles();
  for (double x : oracle::linspace(0.0, 30.0, 301)) {
    EXPECT_NEAR(ellipse_profile(1.0)(x), p.at("fc")(x), 1e-15) << x;
    EXPECT_NEAR(ellipse_profile(0.0)(x), p.at("fd")(x), 1e-15) << x;
  }
  for (double t : {0.0, 0.3, 0.6, 1.0}) EXPECT_NEAR(ellipse_profile(t).total_mass(), 1.0, 1e-13) << t;
  EXPECT_EQ(proof_profiles(0.5).count("g_t"), 1u);
  EXPECT_EQ(proof_profiles().count("g_t"), 0u);
  EXPECT_THROW(ellipse_profile(1.5), DomainError);
  EXPECT_THROW(split_points(-0.1), DomainError);
}

TEST(SplitPoints, EndpointsAndOrdering) {
  const auto one = split_points(1.0);
  EXPECT_NEAR(one.a_t, 1.0, 1e-15);
  EXPECT_NEAR(one.b_t, 1.0 - std::log(2.0), 1e-15);
  EXPECT_NEAR(one.x_star, 1.0 - std::log(2.0), 1e-15);
  const auto zero = split_points(0.0);
  EXPECT_NEAR(zero.a_t, 0.0, 1e-15);
  EXPECT_NEAR(zero.b_t, 0.0, 1e-15);
  for (double t : oracle::linspace(0.0, 1.0, 101)) {
    const auto sp = split_points(t);
    EXPECT_LE(sp.b_t, sp.a_t) << t;
    EXPECT_LE(sp.a_t, 1.0) << t;
    EXPECT_NEAR(ellipse_profile(t)(sp.a_t), 0.0, 1e-15) << t;
  }
}

TEST(SplitNormalization, FcPair) {
  const auto step = check_split_normalizations(std::nullopt);
  EXPECT_TRUE(step.passed) << step.detail;
  EXPECT_LT(step.residual, 1e-12);
  const double x_star = 1.0 - std::log(2.0);
  const double lower_f0 = oracle::gauss_legendre([](double x) { return std::exp(-x); }, 0.0, x_star, 20);
  const double lower_fc =
      oracle::gauss_legendre([](double x) { return (x - 1.0) * (x - 1.0) * std::exp(-x); }, 0.0, 1.0, 20);
  EXPECT_NEAR(lower_f0, 1.0 - 2.0 / std::exp(1.0), 1e-14);
  EXPECT_NEAR(lower_fc, 1.0 - 2.0 / std::exp(1.0), 1e-14);
  EXPECT_NEAR(lower_fc, 0.26424, 1e-5);
  EXPECT_NE(step.detail.find("0.264241117657"), std::string::npos) << step.detail;
}

TEST(SplitNormalization, EllipsePairs) {
  for (double t : oracle::linspace(0.0, 1.0, 11)) {
    const auto step = check_split_normalizations(t);
    EXPECT_TRUE(step.passed) << t << " " << step.detail;
    const auto sp = split_points(t);
    const auto g = ellipse_profile(t);
    const double lower_g = oracle::gauss_legendre([&](double x) { return g(x); }, 0.0, sp.a_t, 20);
    EXPECT_NEAR(lower_g, 1.0 - std::exp(-sp.b_t), 1e-13) << t;
    EXPECT_NEAR(lower_g, 1.0 - common_factor(t), 1e-13) << t;
  }
}

TEST(RatioBounds, Values) {
  const auto fc = check_ratio_bounds(std::nullopt);
  EXPECT_TRUE(fc.passed);
  ASSERT_TRUE(fc.margin.has_value());
  EXPECT_NEAR(*fc.margin, 0.0, 1e-15);
  const double x_star = 1.0 - std::log(2.0);
  const auto profiles = proof_profiles();
  EXPECT_NEAR(profiles.at("fc")(0.0) / profiles.at("f0")(0.0), 1.0, 1e-15);
  EXPECT_NEAR(profiles.at("fc")(x_star) / profiles.at("f0")(x_star), std::log(2.0) * std::log(2.0), 1e-14);
  for (double t : oracle::linspace(0.0, 1.0, 11)) {
    const auto step = check_ratio_bounds(t);
    EXPECT_TRUE(step.passed) << t;
    const auto sp = split_points(t);
    const auto g = ellipse_profile(t);
    for (double x : oracle::linspace(0.0, sp.b_t, 200)) EXPECT_LE(g(x), std::exp(-x) * (1.0 + 1e-14)) << t << " " << x;
  }
}

TEST(ShiftRescale, CommonFactors) {
  EXPECT_NEAR(common_factor(1.0), 2.0 / std::exp(1.0), 1e-15);
  EXPECT_NEAR(common_factor(0.0), 1.0, 1e-15);
  const auto f0 = proof_profiles().at("f0");
  for (double t : oracle::linspace(0.0, 1.0, 11)) {
    const auto sp = split_points(t);
    const auto g = ellipse_profile(t);
    const double k = common_factor(t);
    for (double x : oracle::linspace(0.0, 15.0, 61)) {
      EXPECT_NEAR(f0(x + sp.b_t), k * std::exp(-x), 1e-15) << t;
      EXPECT_NEAR(g(x + sp.a_t), k * 0.5 * x * x * std::exp(-x), 1e-14) << t;
    }
    const auto step = certify_shift_rescale_steps(t);
    EXPECT_TRUE(step.passed) << t << " " << step.detail;
    EXPECT_LT(step.residual, 1e-12);
  }
  const auto fc = certify_shift_rescale_steps(std::nullopt);
  EXPECT_TRUE(fc.passed) << fc.detail;
  EXPECT_NE(fc.detail.find("0.735758882342"), std::string::npos) << fc.detail;
}

TEST(RestrictedProof, PassesWithClosedFormResiduals) {
  const auto start = std::chrono::steady_clock::now();
  const auto report = run_restricted_proof();
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  EXPECT_TRUE(report.overall);
  EXPECT_LT(seconds, 10.0);
  EXPECT_EQ(report.tgrid.size(), 11u);
  EXPECT_EQ(report.steps.size(), 1u + 2u + 4u * 12u + 14u + 2u);
  for (const auto& s : report.steps) {
    EXPECT_TRUE(s.passed) << s.name << " " << s.detail;
    EXPECT_LT(s.residual, 1e-10) << s.name;
    EXPECT_FALSE(s.citations.empty()) << s.name;
  }
  for (const char* name : {"lemma2_reconstruction[fb]", "lemma2_reconstruction[fd]"}) {
    const auto* s = find_step(report, name);
    ASSERT_NE(s, nullptr) << name;
    EXPECT_LE(s->residual, 1e-12);
  }
  for (const auto& s : report.steps)
    if (s.name.rfind("lemma3_assembly", 0) == 0) EXPECT_NE(s.detail.find("direct"), std::string::npos);
  const auto* mixtures = find_step(report, "convex_mixtures");
  ASSERT_NE(mixtures, nullptr);
  EXPECT_EQ(mixtures->detail, "100/100 mixtures majorized");
}

TEST(RestrictedProof, AssembledVerdictsMatchDirectComparison) {
  for (double t : {0.2, 0.5, 0.9}) {
    const auto sp = split_points(t);
    const auto f0 = proof_profiles().at("f0");
    const auto g = ellipse_profile(t);
    const auto parts = lemma3_split_compare(f0.truncated(0.0, sp.b_t), f0.truncated(sp.b_t, kInfinity),
                                            g.truncated(0.0, sp.a_t), g.truncated(sp.a_t, kInfinity));
    const auto direct = compare(f0, g);
    EXPECT_EQ(parts.assembled.outcome, direct.outcome);
    EXPECT_NEAR(parts.assembled.max_gap, direct.max_gap, 1e-10);
  }
}

TEST(RestrictedProof, InjectedFaultIsDetected) {
  ProofOptions options;
  options.fault = ProofFault::ScaleFc;
  const auto report = run_restricted_proof(options);
  EXPECT_FALSE(report.overall);
  const auto* split = find_step(report, "split_normalization[fc]");
  ASSERT_NE(split, nullptr);
  EXPECT_FALSE(split->passed);
  EXPECT_GT(split->residual, 1e-3);
  const auto* direct = find_step(report, "final_compare[fc]");
  ASSERT_NE(direct, nullptr);
  EXPECT_FALSE(direct->passed);
  for (const auto& s : report.steps)
    if (s.name.find("t=") != std::string::npos) EXPECT_TRUE(s.passed) << s.name;
}

TEST(RestrictedProof, RejectsParametersOutsideUnitInterval) {
  ProofOptions options;
  options.tgrid = {0.5, 1.2};
  EXPECT_THROW(run_restricted_proof(options), DomainError);
}
