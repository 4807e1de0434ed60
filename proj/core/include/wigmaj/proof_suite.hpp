#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wigmaj/reduced_profile.hpp"

namespace wigmaj {

struct ProofStep {
  std::string name;
  bool passed = false;
  // Largest deviation from the asserted identity, or the amount by which an
  // inequality is violated (0 when it holds).
  double residual = 0.0;
  // Slack of an inequality or strength of a majorization, when meaningful.
  std::optional<double> margin;
  std::vector<std::string> citations;
  std::string detail;
};

struct ProofReport {
  std::vector<double> tgrid;
  std::vector<ProofStep> steps;
  bool overall = false;
};

enum class ProofFault { None, ScaleFc };

struct ProofOptions {
  std::vector<double> tgrid{0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
  ProofFault fault = ProofFault::None;
  int mixtures = 100;
  std::uint64_t seed = 20240917;
};

inline constexpr double kClosedFormResidual = 1e-12;

// f0 = e^{-x}, fb = x e^{-x}, fc = (x - 1)^2 e^{-x}, fd = x^2 e^{-x} / 2 and,
// when t is given, g_t = ((t + 1) / 2) (x - 1 + c_t)^2 e^{-x} with
// c_t = sqrt((1 - t) / (1 + t)). Keys: "f0", "fb", "fc", "fd", "g_t".
std::map<std::string, ReducedProfile> proof_profiles(std::optional<double> t = std::nullopt);

ReducedProfile ellipse_profile(double t);

struct SplitPoints {
  double x_star = 0.0;
  double a_t = 0.0;
  double b_t = 0.0;
};

SplitPoints split_points(double t);

// Mass of f0 below b_t and of g_t below a_t agree (and so do the tails).
// Without t the pair is f0 split at x* against fc split at 1.
ProofStep check_split_normalizations(std::optional<double> t, const ProofOptions& options = {});
// Ratio of the split partner to f0 stays <= 1 below the f0 split point.
ProofStep check_ratio_bounds(std::optional<double> t, const ProofOptions& options = {});
// Left-shifted tails are a common multiple of f0 and fd, and the shifted
// pair is certified through the fd kernel mixture.
ProofStep certify_shift_rescale_steps(std::optional<double> t, const ProofOptions& options = {});

ProofReport run_restricted_proof(const ProofOptions& options = {});

}  // namespace wigmaj
