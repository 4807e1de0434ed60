// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any failure.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "oracles.hpp"
#include "wigmaj/cli/cli.hpp"
#include "wigmaj/cli/json.hpp"
#include "wigmaj/entropics.hpp"
#include "wigmaj/majorization.hpp"
#include "wigmaj/phase_states.hpp"
#include "wigmaj/proof_suite.hpp"
#include "wigmaj/rearrangement.hpp"
#include "wigmaj/sampling.hpp"
#include "wigmaj/special_functions.hpp"

using namespace wigmaj;

namespace {

const double kLnPi = std::log(std::numbers::pi);
const double kVacuumEntropy = kLnPi + 1.0;
constexpr double kExtent = 8.0;
constexpr int kResolution = 512;
const std::vector<double> kAlphas{0.4, 0.6, 0.8, 1.5, 2.0, 3.0, 5.0};

struct Result {
  bool pass = true;
  std::string detail;
};

class Check {
 public:
  void require(bool ok, const std::string& what) {
    if (!ok) {
      ++failures_;
      if (failures_ <= 3) first_.push_back(what);
    }
  }
  void note(const std::string& text) { notes_.push_back(text); }
  Result result() const {
    std::string detail;
    for (const auto& n : notes_) detail += (detail.empty() ? "" : "; ") + n;
    if (failures_) {
      detail += (detail.empty() ? "" : "; ") + std::to_string(failures_) + " failed check(s):";
      for (const auto& f : first_) detail += " [" + f + "]";
    }
    return {failures_ == 0, detail};
  }

 private:
  int failures_ = 0;
  std::vector<std::string> first_;
  std::vector<std::string> notes_;
};

std::string fmt(double v) {
  char buffer[48];
  std::snprintf(buffer, sizeof buffer, "%.3g", v);
  return buffer;
}

struct SampledState {
  std::string label;
  std::optional<FockMixture> fock;
  std::vector<GaussianComponent> gaussian;
};

const std::vector<SampledState>& battery_states() {
  static const std::vector<SampledState> states = [] {
    std::vector<SampledState> out;
    for (int i = 0; i < 50; ++i)
      out.push_back({"fock#" + std::to_string(i), sample_positive_fock_mixture(1 + i % 4, 10'000 + i), {}});
    for (int i = 0; i < 50; ++i)
      out.push_back({"gauss#" + std::to_string(i), std::nullopt,
                     sample_gaussian_mixture(1 + i % 3, 20'000 + static_cast<std::uint64_t>(i))});
    return out;
  }();
  return states;
}

Result vacuum_entropy() {
  Check c;
  const double closed = shannon_entropy(vacuum_wigner());
  const double grid = shannon_entropy(radial_wigner_grid(vacuum_wigner(), kExtent, kResolution));
  c.require(std::abs(closed - kVacuumEntropy) <= 1e-8, "closed form " + fmt(closed));
  c.require(std::abs(grid - kVacuumEntropy) <= 5e-4, "grid " + fmt(grid));
  c.note("closed-form error " + fmt(std::abs(closed - kVacuumEntropy)));
  c.note("grid error " + fmt(std::abs(grid - kVacuumEntropy)));
  return c.result();
}

Result restricted_proof() {
  Check c;
  std::ostringstream out, err;
  const int code = cli::run_cli({"verify-proof"}, out, err);
  c.require(code == cli::kExitOk, "verify-proof exit " + std::to_string(code));
  const auto doc = nlohmann::json::parse(out.str());
  c.require(doc["overall"].get<bool>(), "overall");
  c.require(doc["tgrid"].size() == 11, "t grid 0, 0.1, ..., 1");
  double worst = 0.0;
  int lemma3 = 0;
  for (const auto& step : doc["steps"]) {
    const std::string name = step["name"];
    const double residual = step["residual"];
    c.require(step["status"] == "pass", name);
    c.require(residual < 1e-10, name + " residual " + fmt(residual));
    worst = std::max(worst, residual);
    if (name.rfind("lemma2_reconstruction", 0) == 0) c.require(residual <= 1e-12, name + " reconstruction");
    if (name.rfind("lemma3_assembly", 0) == 0) {
      ++lemma3;
      const std::string detail = step["detail"];
      const auto direct = detail.find("direct ");
      const auto assembled = detail.find("assembled ");
      if (assembled != std::string::npos) {
        const auto a = detail.substr(assembled + 10, detail.find(';') - assembled - 10);
        c.require(detail.substr(direct + 7) == a, name + " assembled vs direct");
      }
    }
    if (name == "split_normalization[fc]")
      c.require(std::string(step["detail"]).find("0.264241117657") != std::string::npos, "split mass 1 - 2/e");
  }
  c.require(lemma3 == 12, "lemma-3 assemblies present");
  const double x_star = 1.0 - std::log(2.0);
  const double both_sides = proof_profiles().at("fc").integrate(0.0, 1.0);
  c.require(std::abs(both_sides - (1.0 - 2.0 / std::exp(1.0))) < 1e-12, "fc mass below 1");
  c.require(std::abs(proof_profiles().at("f0").integrate(0.0, x_star) - both_sides) < 1e-12, "f0 mass below x*");
  c.note(std::to_string(doc["steps"].size()) + " steps");
  c.note("largest residual " + fmt(worst));
  c.note("split mass " + fmt(both_sides));
  return c.result();
}

Result conjecture_battery() {
  Check c;
  const auto f0 = radial_reduce(vacuum_wigner());
  const auto w0_grid = radial_wigner_grid(vacuum_wigner(), kExtent, kResolution);
  double weakest = kInfinity;
  int fock = 0, gauss = 0;
  for (const auto& s : battery_states()) {
    if (s.fock) {
      const auto w = wigner_of_mixture(*s.fock);
      const auto closed = compare(f0, radial_reduce(w));
      c.require(closed.holds(), s.label + " closed form " + to_string(closed.outcome));
      const auto grid = compare(w0_grid, radial_wigner_grid(w, kExtent, kResolution));
      c.require(grid.holds() && grid.margin >= -grid.tolerance, s.label + " grid " + to_string(grid.outcome));
      weakest = std::min(weakest, grid.margin);
      ++fock;
    } else {
      const auto grid = compare(w0_grid, gaussian_mixture_wigner(s.gaussian, kExtent, kResolution));
      c.require(grid.holds() && grid.margin >= -grid.tolerance, s.label + " grid " + to_string(grid.outcome));
      weakest = std::min(weakest, grid.margin);
      ++gauss;
    }
  }
  c.note(std::to_string(fock) + " Fock + " + std::to_string(gauss) + " Gaussian states");
  c.note("smallest grid margin " + fmt(weakest) + " vs tolerance -" + fmt(kGridToleranceFactor));
  return c.result();
}

Result renyi_battery() {
  Check c;
  const auto w0 = vacuum_wigner();
  std::vector<double> vacuum;
  double closed_error = 0.0;
  for (double a : kAlphas) {
    const double h = renyi_entropy(w0, a);
    const double expected = kLnPi - std::log(a) / (1.0 - a);
    closed_error = std::max(closed_error, std::abs(h - expected));
    c.require(std::abs(h - expected) <= 1e-6, "vacuum alpha " + fmt(a));
    vacuum.push_back(h);
  }
  double slack = kInfinity;
  for (const auto& s : battery_states()) {
    for (std::size_t j = 0; j < kAlphas.size(); ++j) {
      const double h = s.fock ? renyi_entropy(wigner_of_mixture(*s.fock), kAlphas[j])
                              : renyi_entropy(s.gaussian, kAlphas[j]);
      slack = std::min(slack, h - vacuum[j]);
      c.require(h >= vacuum[j] - 1e-6, s.label + " alpha " + fmt(kAlphas[j]) + " gap " + fmt(h - vacuum[j]));
    }
  }
  c.note("vacuum closed-form error " + fmt(closed_error));
  c.note("min h_a(W) - h_a(W0) " + fmt(slack));
  return c.result();
}

struct NamedProfile {
  std::string name;
  ReducedProfile profile;
};

std::vector<std::pair<NamedProfile, NamedProfile>> criterion_pairs() {
  std::vector<NamedProfile> named;
  for (const auto& [key, p] : proof_profiles()) named.push_back({key, p});
  for (int i = 0; i <= 10; ++i) named.push_back({"g_t=" + fmt(i / 10.0), ellipse_profile(i / 10.0)});
  std::vector<NamedProfile> pool = named;
  for (int i = 0; i < 40; ++i) {
    const auto m = sample_positive_fock_mixture(1 + i % 4, 30'000 + i);
    pool.push_back({"fock#" + std::to_string(i), radial_reduce(wigner_of_mixture(m))});
  }
  std::vector<std::pair<NamedProfile, NamedProfile>> pairs;
  for (const auto& a : named)
    for (const auto& b : named) pairs.emplace_back(a, b);
  std::mt19937_64 rng(4242);
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  for (int k = 0; k < 200; ++k) pairs.emplace_back(pool[pick(rng)], pool[pick(rng)]);
  return pairs;
}

const std::vector<std::pair<NamedProfile, NamedProfile>>& pairs_for_equivalence() {
  static const auto pairs = criterion_pairs();
  return pairs;
}

Result criterion_equivalence() {
  Check c;
  int agree = 0, decisive = 0;
  for (const auto& [a, b] : pairs_for_equivalence()) {
    const auto s = compare(a.profile, b.profile);
    const auto p = compare_plus(a.profile, b.profile);
    c.require(s.outcome == p.outcome, a.name + " vs " + b.name + ": " + to_string(s.outcome) + " / " + to_string(p.outcome));
    if (s.outcome == p.outcome) ++agree;
    if (s.outcome != Outcome::Equivalent) ++decisive;
  }
  c.note(std::to_string(agree) + "/" + std::to_string(pairs_for_equivalence().size()) + " pairs agree");
  c.note(std::to_string(decisive) + " non-Equivalent verdicts");
  return c.result();
}

Result oracle_equivalence() {
  Check c;
  int agree = 0, exact = 0;
  double widest = 0.0;
  for (const auto& [a, b] : pairs_for_equivalence()) {
    const auto v = compare(a.profile, b.profile);
    const auto d = discrete_oracle(a.profile, b.profile, 10'000);
    const bool ok = verdicts_agree(v, d.verdict, d.verdict.tolerance);
    c.require(ok, a.name + " vs " + b.name + ": " + to_string(v.outcome) + " / " + to_string(d.verdict.outcome));
    agree += ok;
    exact += v.outcome == d.verdict.outcome;
    widest = std::max(widest, d.discretization_band);
  }
  c.note(std::to_string(agree) + "/" + std::to_string(pairs_for_equivalence().size()) + " pairs agree");
  c.note(std::to_string(exact) + " identical outcomes");
  c.note("widest binning band " + fmt(widest));
  return c.result();
}

Result symplectic_invariance() {
  Check c;
  const auto f0 = radial_reduce(vacuum_wigner());
  const auto w0_grid = radial_wigner_grid(vacuum_wigner(), kExtent, kResolution);
  const double tol = kGridToleranceFactor;
  double worst_s = 0.0, worst_p = 0.0, worst_h = 0.0, worst_area = 0.0;
  for (int k = 0; k < 10; ++k) {
    const auto comps = sample_gaussian_mixture(1, 40'000 + static_cast<std::uint64_t>(k));
    const auto grid = gaussian_mixture_wigner(comps, kExtent, kResolution);
    for (double area : oracle::linspace(0.0, 80.0, 801))
      worst_s = std::max(worst_s, std::abs(grid.cumulative(area) - f0.cumulative(area / std::numbers::pi)));
    for (const auto& [t, m] : level_function(f0).breakpoints) {
      if (!(t > 0.0)) continue;
      const double level = t / std::numbers::pi;
      const double exact = 1.0 - std::numbers::pi * level * (1.0 + std::log(1.0 / (std::numbers::pi * level)));
      worst_p = std::max(worst_p, std::abs(grid.plus_integral(level) - exact));
      worst_area = std::max(worst_area, std::abs(grid.level_measure(level) - std::numbers::pi * m));
    }
    const auto v = compare(w0_grid, grid);
    c.require(v.outcome == Outcome::Equivalent, "state " + std::to_string(k) + " " + to_string(v.outcome));
    const double h = shannon_entropy(grid);
    worst_h = std::max(worst_h, std::abs(h - kVacuumEntropy));
    c.require(std::abs(h - kVacuumEntropy) <= 5e-4, "state " + std::to_string(k) + " entropy " + fmt(h));
  }
  c.require(worst_s <= tol, "cumulative curves " + fmt(worst_s));
  c.require(worst_p <= tol, "level integrals " + fmt(worst_p));
  c.note("sup |S_W - S_W0| " + fmt(worst_s));
  c.note("sup |P_W - P_W0| " + fmt(worst_p));
  c.note("raw cell-count level areas within " + fmt(worst_area));
  c.note("entropy error " + fmt(worst_h));
  return c.result();
}

Result special_function_oracles() {
  Check c;
  double worst_psi = 0.0, worst_w = 0.0;
  for (int m = 0; m <= 4; ++m)
    for (int n = 0; n <= 4; ++n) {
      const double delta = m == n ? 1.0 : 0.0;
      const double psi = oracle::gauss_legendre(
          [&](double x) { return fock_wavefunction(m, x) * fock_wavefunction(n, x); }, -14.0, 14.0, 280);
      const double ww = 2.0 * std::numbers::pi * std::numbers::pi *
                        oracle::gauss_legendre([&](double u) { return fock_wigner(m, u) * fock_wigner(n, u); }, 0.0,
                                               80.0, 800);
      worst_psi = std::max(worst_psi, std::abs(psi - delta));
      worst_w = std::max(worst_w, std::abs(ww - delta));
      c.require(std::abs(psi - delta) <= 1e-8, "<psi_" + std::to_string(m) + "|psi_" + std::to_string(n) + ">");
      c.require(std::abs(ww - delta) <= 1e-8, "2 pi W_" + std::to_string(m) + " W_" + std::to_string(n));
    }
  for (int n = 0; n <= 4; ++n) {
    std::vector<double> p(static_cast<std::size_t>(n) + 1, 0.0);
    p.back() = 1.0;
    const auto w = wigner_of_mixture(FockMixture(p));
    const double self = 2.0 * std::numbers::pi * overlap(w, w);
    worst_w = std::max(worst_w, std::abs(self - 1.0));
    c.require(std::abs(self - 1.0) <= 1e-8, "library overlap n=" + std::to_string(n));
  }
  c.note("orthonormality error " + fmt(worst_psi));
  c.note("overlap error " + fmt(worst_w));
  return c.result();
}

Result entropic_uncertainty() {
  Check c;
  double worst_bound = kInfinity, worst_identity = 0.0;
  for (const auto& s : battery_states()) {
    double h = 0.0, i = 0.0;
    MarginalEntropies marg;
    if (s.fock) {
      h = wigner_entropy(*s.fock);
      marg = marginal_entropies(*s.fock);
      i = mutual_information(*s.fock);
    } else {
      h = shannon_entropy(s.gaussian);
      marg = marginal_entropies(s.gaussian);
      i = mutual_information(s.gaussian);
    }
    const double sum = marg.hx + marg.hp;
    worst_bound = std::min(worst_bound, sum - kVacuumEntropy);
    worst_identity = std::max(worst_identity, std::abs(h - (sum - i)));
    c.require(sum >= kVacuumEntropy - 1e-6, s.label + " hx + hp " + fmt(sum));
    c.require(std::abs(h - (sum - i)) <= 1e-6, s.label + " identity " + fmt(h - (sum - i)));
    c.require(i >= -1e-9, s.label + " I >= 0");
  }
  c.note("min hx + hp - (ln pi + 1) " + fmt(worst_bound));
  c.note("max |h - (hx + hp - I)| " + fmt(worst_identity));
  return c.result();
}

std::string run_binary(const std::string& args, const char* threads, int& code) {
  const std::string command = std::string("WIGMAJ_THREADS=") + threads + " '" WIGMAJ_CLI_BINARY "' " + args + " 2>/dev/null";
  FILE* pipe = popen(command.c_str(), "r");
  if (!pipe) {
    code = -1;
    return {};
  }
  std::string out;
  std::array<char, 4096> buffer{};
  while (const std::size_t n = fread(buffer.data(), 1, buffer.size(), pipe)) out.append(buffer.data(), n);
  const int status = pclose(pipe);
  code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return out;
}

Result determinism() {
  Check c;
  const std::vector<std::string> commands{
      "fig5 --samples 12 --seed 7",
      "fig5 --ensemble gaussian --samples 6 --seed 7",
      "fig6 --samples 12 --seed 7 --format json",
      "fig6 --ensemble gaussian --samples 4 --seed 9",
      "majorize --ensemble gaussian --seed 3",
      "majorize --probs 0.6,0.3,0.1 --probs 0.5,0.5",
      "entropy --probs 0.7,0.2,0.1",
      "verify-proof --tgrid 0,0.5,1",
  };
  std::size_t bytes = 0;
  for (const auto& cmd : commands) {
    int c1 = 0, c2 = 0, c3 = 0;
    const auto first = run_binary(cmd, "1", c1);
    const auto second = run_binary(cmd, "1", c2);
    const auto third = run_binary(cmd, "4", c3);
    c.require(c1 == 0 && c2 == 0 && c3 == 0, cmd + " exit codes");
    c.require(!first.empty(), cmd + " produced output");
    c.require(first == second, cmd + " repeat");
    c.require(first == third, cmd + " threads");
    bytes += first.size();
  }
  c.note(std::to_string(commands.size()) + " commands x 3 runs");
  c.note(std::to_string(bytes) + " bytes compared per run");
  return c.result();
}

struct Criterion {
  int id;
  std::string name;
  std::function<Result()> run;
  double budget_seconds;  // 0 when the criterion sets no runtime bound
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "vacuum entropy", vacuum_entropy, 1.0},
      {2, "restricted-proof suite", restricted_proof, 10.0},
      {3, "conjecture battery", conjecture_battery, 120.0},
      {4, "Renyi battery", renyi_battery, 0.0},
      {5, "criterion equivalence", criterion_equivalence, 0.0},
      {6, "oracle equivalence", oracle_equivalence, 0.0},
      {7, "symplectic level-invariance", symplectic_invariance, 0.0},
      {8, "special-function oracles", special_function_oracles, 0.0},
      {9, "entropic uncertainty", entropic_uncertainty, 0.0},
      {10, "determinism", determinism, 0.0},
  };
  int failed = 0;
  for (const auto& cr : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Result outcome;
    try {
      outcome = cr.run();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (cr.budget_seconds > 0.0 && seconds > cr.budget_seconds) {
      outcome.pass = false;
      outcome.detail += "; runtime " + fmt(seconds) + " s exceeds " + fmt(cr.budget_seconds) + " s";
    }
    failed += !outcome.pass;
    std::printf("[%s] criterion %2d  %-28s %8.2f s  %s\n", outcome.pass ? "PASS" : "FAIL", cr.id, cr.name.c_str(),
                seconds, outcome.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
