#include "wigmaj/cli/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "wigmaj/cli/parallel.hpp"
#include "wigmaj/cli/report_json.hpp"
#include "wigmaj/cli/series.hpp"
#include "wigmaj/entropics.hpp"
#include "wigmaj/errors.hpp"
#include "wigmaj/majorization.hpp"
#include "wigmaj/phase_states.hpp"
#include "wigmaj/proof_suite.hpp"
#include "wigmaj/rearrangement.hpp"
#include "wigmaj/sampling.hpp"

#ifndef WIGMAJ_VERSION
#define WIGMAJ_VERSION "0.0.0"
#endif

namespace wigmaj::cli {

namespace {

using Json = nlohmann::ordered_json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

const std::vector<double> kDefaultAlphaGrid{0.4, 0.6, 0.8, 1.0, 1.5, 2.0, 3.0, 5.0};
constexpr double kSeriesAreaMax = 80.0;
constexpr int kSeriesAreaPoints = 321;
constexpr double kRenyiSlack = 1e-6;

std::vector<double> parse_list(const std::string& text, const std::string& flag) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto first = item.find_first_not_of(" \t");
    const auto last = item.find_last_not_of(" \t");
    if (first == std::string::npos) throw UsageError(flag + ": empty entry in '" + text + "'");
    item = item.substr(first, last - first + 1);
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw UsageError(flag + ": cannot parse '" + item + "'");
    }
    if (used != item.size() || !std::isfinite(v)) throw UsageError(flag + ": cannot parse '" + item + "'");
    values.push_back(v);
  }
  if (values.empty() || (!text.empty() && text.back() == ','))
    throw UsageError(flag + ": expected a comma-separated list of numbers");
  return values;
}

std::string join(const std::vector<double>& values, char sep = ';') {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += sep;
    out += format_number(values[i]);
  }
  return out;
}

struct RunConfig {
  std::uint64_t seed = 1;
  std::string ensemble = "fock";
  int nmax = 4;
  int components = 3;
  int grid_size = 512;
  double grid_extent = 8.0;
  std::optional<double> tol;
  std::string alpha_text;
  std::string out;
  std::string format = "csv";
  int samples = 20;
  std::uint64_t budget = kDefaultRejectionBudget;

  void validate() const {
    if (grid_size < 128 || grid_size > 4096 || (grid_size & (grid_size - 1)) != 0)
      throw UsageError("--grid-size must be a power of two between 128 and 4096");
    if (!(grid_extent > 0.0)) throw UsageError("--grid-extent must be positive");
    if (tol && !(*tol > 0.0)) throw UsageError("--tol must be positive");
    if (nmax < 1) throw UsageError("--nmax must be at least 1");
    if (components < 1) throw UsageError("--components must be at least 1");
    if (samples < 1) throw UsageError("--samples must be at least 1");
  }

  bool gaussian() const { return ensemble == "gaussian"; }
};

void add_run_options(CLI::App* cmd, RunConfig& cfg, bool sampling) {
  cmd->add_option("--seed", cfg.seed, "Random seed")->capture_default_str();
  cmd->add_option("--grid-size", cfg.grid_size, "Grid resolution M (power of two, 128..4096)")->capture_default_str();
  cmd->add_option("--grid-extent", cfg.grid_extent, "Grid half-width L")->capture_default_str();
  cmd->add_option("--out", cfg.out, "Output file (default: standard output)");
  if (sampling) {
    cmd->add_option("--ensemble", cfg.ensemble, "Random-state ensemble")
        ->check(CLI::IsMember({"fock", "gaussian"}))
        ->capture_default_str();
    cmd->add_option("--nmax", cfg.nmax, "Largest Fock number of sampled mixtures")->capture_default_str();
    cmd->add_option("--components", cfg.components, "Components of sampled Gaussian mixtures")
        ->capture_default_str();
    cmd->add_option("--samples", cfg.samples, "Number of sampled states")->capture_default_str();
    cmd->add_option("--budget", cfg.budget, "Rejection budget per sampled Fock mixture")->capture_default_str();
  }
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw UsageError("cannot open output file '" + path + "'");
  file << text;
}

std::string dump(const Json& doc) { return doc.dump(2) + "\n"; }

FockMixture positive_mixture(const std::vector<double>& probs) {
  FockMixture m(probs);
  if (!is_wigner_positive(wigner_of_mixture(m)))
    throw DomainError("state " + join(probs, ',') + " has a negative Wigner function");
  return m;
}

struct SampledState {
  std::string label;
  std::string description;
  std::optional<FockMixture> fock;
  std::vector<GaussianComponent> gaussian;
};

std::string sample_label(std::size_t i) {
  char buffer[24];
  std::snprintf(buffer, sizeof buffer, "sample_%02zu", i);
  return buffer;
}

std::string describe(const std::vector<GaussianComponent>& comps) {
  std::string out = "gaussian:";
  for (std::size_t i = 0; i < comps.size(); ++i) {
    const auto& c = comps[i];
    if (i) out += '|';
    out += "w=" + format_number(c.weight) + ";mean=" + format_number(c.mean[0]) + ";" + format_number(c.mean[1]) +
           ";cov=" + format_number(c.covariance.xx) + ";" + format_number(c.covariance.xp) + ";" +
           format_number(c.covariance.pp);
  }
  return out;
}

SampledState draw_state(const RunConfig& cfg, std::size_t i) {
  SampledState s;
  s.label = sample_label(i);
  const std::uint64_t seed = cfg.seed + i;
  if (cfg.gaussian()) {
    GaussianSamplingBounds bounds;
    bounds.grid_extent = cfg.grid_extent;
    s.gaussian = sample_gaussian_mixture(cfg.components, seed, bounds);
    s.description = describe(s.gaussian);
  } else {
    s.fock = sample_positive_fock_mixture(cfg.nmax, seed, cfg.budget);
    const auto p = s.fock->probs();
    s.description = "fock:" + join({p.begin(), p.end()});
  }
  return s;
}

// Draws samples in index order and stops at the first exhausted budget.
std::vector<SampledState> draw_states(const RunConfig& cfg, std::string& warning) {
  std::vector<SampledState> states;
  for (int i = 0; i < cfg.samples; ++i) {
    try {
      states.push_back(draw_state(cfg, static_cast<std::size_t>(i)));
    } catch (const SamplingBudgetError& e) {
      warning = "sample " + std::to_string(i) + ": " + e.what();
      break;
    }
  }
  return states;
}

void add_config_metadata(SeriesOutput& series, const RunConfig& cfg, const std::string& command) {
  series.add_metadata("format_version", std::to_string(kSeriesFormatVersion));
  series.add_metadata("tool", "wigmaj");
  series.add_metadata("version", WIGMAJ_VERSION);
  series.add_metadata("command", command);
  series.add_metadata("ensemble", cfg.gaussian() ? "gaussian" : "fock");
  if (cfg.gaussian())
    series.add_metadata("components", std::to_string(cfg.components));
  else
    series.add_metadata("nmax", std::to_string(cfg.nmax));
  series.add_metadata("seed", std::to_string(cfg.seed));
  series.add_metadata("samples", std::to_string(cfg.samples));
  series.add_metadata("grid_size", std::to_string(cfg.grid_size));
  series.add_metadata("grid_extent", format_number(cfg.grid_extent));
}

int finish_series(SeriesOutput& series, const RunConfig& cfg, std::size_t violations, const std::string& warning,
                  std::ostream& out, std::ostream& err) {
  series.add_metadata("violations", std::to_string(violations));
  series.add_metadata("status", !warning.empty() ? "partial" : (violations ? "violation" : "pass"));
  series.sort_rows();
  emit(cfg.format == "json" ? dump(series.to_json()) : series.to_csv(), cfg.out, out);
  if (!warning.empty()) {
    err << "warning: sampling budget exhausted, output is partial (" << warning << ")\n";
    return kExitViolation;
  }
  if (violations) {
    err << "conjecture violated at " << violations << " point(s)\n";
    return kExitViolation;
  }
  return kExitOk;
}

int cmd_fig5(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  std::string warning;
  const auto states = draw_states(cfg, warning);
  std::vector<double> areas(kSeriesAreaPoints);
  for (int i = 0; i < kSeriesAreaPoints; ++i) areas[static_cast<std::size_t>(i)] = kSeriesAreaMax * i / (kSeriesAreaPoints - 1);

  const double tol = cfg.tol ? *cfg.tol : (cfg.gaussian() ? kGridToleranceFactor : kClosedFormTolerance);
  std::vector<double> vacuum(areas.size());
  if (cfg.gaussian()) {
    const std::vector<GaussianComponent> vac{GaussianComponent{}};
    const auto grid = gaussian_mixture_wigner(vac, cfg.grid_extent, cfg.grid_size);
    for (std::size_t i = 0; i < areas.size(); ++i) vacuum[i] = grid.cumulative(areas[i]);
  } else {
    const auto f0 = radial_reduce(vacuum_wigner());
    for (std::size_t i = 0; i < areas.size(); ++i) vacuum[i] = f0.cumulative(areas[i] / std::numbers::pi);
  }

  std::vector<std::vector<double>> curves(states.size(), std::vector<double>(areas.size()));
  parallel_for(states.size(), [&](std::size_t k) {
    if (states[k].fock) {
      const auto f = radial_reduce(wigner_of_mixture(*states[k].fock));
      for (std::size_t i = 0; i < areas.size(); ++i) curves[k][i] = f.cumulative(areas[i] / std::numbers::pi);
    } else {
      const auto grid = gaussian_mixture_wigner(states[k].gaussian, cfg.grid_extent, cfg.grid_size);
      for (std::size_t i = 0; i < areas.size(); ++i) curves[k][i] = grid.cumulative(areas[i]);
    }
  });

  SeriesOutput series;
  add_config_metadata(series, cfg, "fig5");
  series.add_metadata("representation", cfg.gaussian() ? "grid" : "closed_form");
  series.add_metadata("abscissa", "area");
  series.add_metadata("tolerance", format_number(tol));
  series.add_metadata("s_max", format_number(kSeriesAreaMax));
  series.add_metadata("s_points", std::to_string(kSeriesAreaPoints));
  for (const auto& s : states) series.add_metadata(s.label, s.description);

  std::size_t violations = 0;
  for (std::size_t i = 0; i < areas.size(); ++i) series.rows.push_back({"W0", areas[i], vacuum[i]});
  for (std::size_t k = 0; k < states.size(); ++k)
    for (std::size_t i = 0; i < areas.size(); ++i) {
      series.rows.push_back({states[k].label, areas[i], curves[k][i]});
      if (vacuum[i] < curves[k][i] - tol) ++violations;
    }
  return finish_series(series, cfg, violations, warning, out, err);
}

double entropy_at(double alpha, const std::function<double()>& shannon, const std::function<double(double)>& renyi) {
  return alpha == 1.0 ? shannon() : renyi(alpha);
}

int cmd_fig6(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto alphas = cfg.alpha_text.empty() ? kDefaultAlphaGrid : parse_list(cfg.alpha_text, "--alpha");
  for (double a : alphas)
    if (!(a > 0.0)) throw UsageError("--alpha entries must be positive");
  std::string warning;
  const auto states = draw_states(cfg, warning);

  const auto w0 = vacuum_wigner();
  std::vector<double> vacuum(alphas.size());
  for (std::size_t j = 0; j < alphas.size(); ++j)
    vacuum[j] = entropy_at(alphas[j], [&] { return shannon_entropy(w0); }, [&](double a) { return renyi_entropy(w0, a); });

  std::vector<std::vector<double>> values(states.size(), std::vector<double>(alphas.size()));
  parallel_for(states.size(), [&](std::size_t k) {
    if (states[k].fock) {
      const auto w = wigner_of_mixture(*states[k].fock);
      for (std::size_t j = 0; j < alphas.size(); ++j)
        values[k][j] = entropy_at(alphas[j], [&] { return shannon_entropy(w); }, [&](double a) { return renyi_entropy(w, a); });
    } else {
      const auto& comps = states[k].gaussian;
      for (std::size_t j = 0; j < alphas.size(); ++j)
        values[k][j] = entropy_at(alphas[j], [&] { return shannon_entropy(comps); },
                                  [&](double a) { return renyi_entropy(comps, a); });
    }
  });

  SeriesOutput series;
  add_config_metadata(series, cfg, "fig6");
  series.add_metadata("representation", cfg.gaussian() ? "order_adapted_grid" : "closed_form");
  series.add_metadata("abscissa", "alpha");
  series.add_metadata("alpha_grid", join(alphas));
  series.add_metadata("tolerance", format_number(cfg.tol ? *cfg.tol : kRenyiSlack));
  for (const auto& s : states) series.add_metadata(s.label, s.description);

  const double slack = cfg.tol ? *cfg.tol : kRenyiSlack;
  std::size_t violations = 0;
  for (std::size_t j = 0; j < alphas.size(); ++j) series.rows.push_back({"W0", alphas[j], vacuum[j]});
  for (std::size_t k = 0; k < states.size(); ++k)
    for (std::size_t j = 0; j < alphas.size(); ++j) {
      series.rows.push_back({states[k].label, alphas[j], values[k][j]});
      if (values[k][j] < vacuum[j] - slack) ++violations;
    }
  return finish_series(series, cfg, violations, warning, out, err);
}

int cmd_positivity(const std::string& probs_text, const std::string& path, std::ostream& out) {
  const auto probs = parse_list(probs_text, "--probs");
  const FockMixture m(probs);
  const auto w = wigner_of_mixture(m);
  Json doc;
  doc["command"] = "positivity";
  doc["probs"] = probs;
  doc["positive"] = is_wigner_positive(w);
  doc["boundary_distance"] = boundary_distance(w);
  emit(dump(doc), path, out);
  return kExitOk;
}

Json describe_fock(const FockMixture& m) {
  Json doc;
  doc["kind"] = "fock";
  const auto p = m.probs();
  doc["probs"] = std::vector<double>(p.begin(), p.end());
  return doc;
}

int cmd_majorize(const std::vector<std::string>& probs_texts, bool sampled, const RunConfig& cfg,
                 std::ostream& out) {
  std::vector<FockMixture> given;
  for (const auto& text : probs_texts) given.push_back(positive_mixture(parse_list(text, "--probs")));
  if (given.size() + (sampled ? 1 : 0) > 2 || given.size() + (sampled ? 1 : 0) == 0)
    throw UsageError("majorize takes one or two --probs, or --ensemble with at most one --probs");

  const FockMixture a = given.size() == 2 || (sampled && given.size() == 1) ? given[0] : FockMixture::vacuum();
  std::optional<FockMixture> b_fock;
  std::vector<GaussianComponent> b_gauss;
  Json b_doc;
  if (sampled) {
    const auto s = draw_state(cfg, 0);
    b_fock = s.fock;
    b_gauss = s.gaussian;
    b_doc["kind"] = cfg.gaussian() ? "gaussian" : "fock";
    b_doc["description"] = s.description;
    b_doc["ensemble"] = cfg.ensemble;
    b_doc["seed"] = cfg.seed;
  } else {
    b_fock = given.back();
    b_doc = describe_fock(*b_fock);
  }

  MajorizationVerdict verdict;
  std::string representation;
  if (b_fock) {
    representation = "closed_form";
    const auto fa = radial_reduce(wigner_of_mixture(a));
    const auto fb = radial_reduce(wigner_of_mixture(*b_fock));
    verdict = compare(fa, fb, cfg.tol);
  } else {
    representation = "grid";
    const auto ga = radial_wigner_grid(wigner_of_mixture(a), cfg.grid_extent, cfg.grid_size);
    const auto gb = gaussian_mixture_wigner(b_gauss, cfg.grid_extent, cfg.grid_size);
    verdict = compare(ga, gb, cfg.tol);
  }

  Json doc;
  doc["command"] = "majorize";
  doc["a"] = describe_fock(a);
  doc["b"] = b_doc;
  doc["representation"] = representation;
  doc["verdict"] = to_json(verdict);
  emit(dump(doc), cfg.out, out);
  return kExitOk;
}

int cmd_entropy(const std::string& probs_text, const std::string& alpha_text, const std::string& path,
                std::ostream& out) {
  const auto m = positive_mixture(parse_list(probs_text, "--probs"));
  std::vector<double> alphas{0.4, 0.6, 0.8, 1.5, 2.0, 3.0, 5.0};
  if (!alpha_text.empty()) alphas = parse_list(alpha_text, "--alpha");
  const auto w = wigner_of_mixture(m);
  const double h = shannon_entropy(w);
  const auto marg = marginal_entropies(m);
  Json doc;
  doc["command"] = "entropy";
  doc["probs"] = describe_fock(m)["probs"];
  doc["wigner_entropy"] = h;
  doc["marginal_entropies"] = {{"hx", marg.hx}, {"hp", marg.hp}};
  doc["mutual_information"] = mutual_information(m);
  Json renyi = Json::object();
  for (double a : alphas) {
    if (!(a > 0.0)) throw UsageError("--alpha entries must be positive");
    renyi[format_number(a)] = a == 1.0 ? h : renyi_entropy(w, a);
  }
  doc["renyi"] = renyi;
  emit(dump(doc), path, out);
  return kExitOk;
}

int cmd_verify_proof(const std::string& tgrid_text, const std::string& fault, const std::string& path,
                     std::ostream& out, std::ostream& err) {
  ProofOptions options;
  if (!tgrid_text.empty()) options.tgrid = parse_list(tgrid_text, "--tgrid");
  if (fault == "scale-fc")
    options.fault = ProofFault::ScaleFc;
  else if (!fault.empty() && fault != "none")
    throw UsageError("unknown fault '" + fault + "'");
  const auto report = run_restricted_proof(options);
  emit(dump(to_json(report)), path, out);
  if (!report.overall) {
    for (const auto& s : report.steps)
      if (!s.passed) err << "failed step: " << s.name << " (" << s.detail << ")\n";
    return kExitViolation;
  }
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Continuous majorization of Wigner functions", "wigmaj"};
  app.set_version_flag("--version", std::string("wigmaj ") + WIGMAJ_VERSION);
  app.require_subcommand(1);

  RunConfig cfg;
  std::string probs_text, alpha_text, tgrid_text, fault;
  std::vector<std::string> probs_list;

  auto* positivity = app.add_subcommand("positivity", "Decide Wigner positivity of a Fock mixture");
  positivity->add_option("--probs", probs_text, "Comma-separated photon-number probabilities")->required();
  positivity->add_option("--out", cfg.out, "Output file (default: standard output)");

  auto* majorize = app.add_subcommand("majorize", "Compare two states under continuous majorization");
  majorize->add_option("--probs", probs_list, "Fock mixture; repeat for a second state (first defaults to vacuum)");
  add_run_options(majorize, cfg, true);
  majorize->add_option("--tol", cfg.tol, "Comparison tolerance");

  auto* fig5 = app.add_subcommand("fig5", "Cumulative integrals of the vacuum and random positive states");
  add_run_options(fig5, cfg, true);
  fig5->add_option("--tol", cfg.tol, "Violation tolerance");
  fig5->add_option("--format", cfg.format)->check(CLI::IsMember({"csv", "json"}))->capture_default_str();

  auto* fig6 = app.add_subcommand("fig6", "Renyi entropies of the vacuum and random positive states");
  add_run_options(fig6, cfg, true);
  fig6->add_option("--alpha", cfg.alpha_text, "Comma-separated Renyi orders (1 selects Shannon)");
  fig6->add_option("--tol", cfg.tol, "Violation tolerance");
  fig6->add_option("--format", cfg.format)->check(CLI::IsMember({"csv", "json"}))->capture_default_str();

  auto* verify = app.add_subcommand("verify-proof", "Run the restricted-proof certification suite");
  verify->add_option("--tgrid", tgrid_text, "Comma-separated ellipse parameters in [0, 1]");
  verify->add_option("--inject-fault", fault, "Test-only fault injection (scale-fc)");
  verify->add_option("--out", cfg.out, "Output file (default: standard output)");

  auto* entropy = app.add_subcommand("entropy", "Wigner, marginal and Renyi entropies of a Fock mixture");
  entropy->add_option("--probs", probs_text, "Comma-separated photon-number probabilities")->required();
  entropy->add_option("--alpha", alpha_text, "Comma-separated Renyi orders");
  entropy->add_option("--out", cfg.out, "Output file (default: standard output)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    cfg.validate();
    if (positivity->parsed()) return cmd_positivity(probs_text, cfg.out, out);
    if (majorize->parsed()) return cmd_majorize(probs_list, majorize->count("--ensemble") > 0, cfg, out);
    if (fig5->parsed()) return cmd_fig5(cfg, out, err);
    if (fig6->parsed()) return cmd_fig6(cfg, out, err);
    if (verify->parsed()) return cmd_verify_proof(tgrid_text, fault, cfg.out, out, err);
    if (entropy->parsed()) return cmd_entropy(probs_text, alpha_text, cfg.out, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const SamplingBudgetError& e) {
    err << "sampling error: " << e.what() << '\n';
    return kExitViolation;
  } catch (const Error& e) {
    err << "domain error: " << e.what() << '\n';
    return kExitDomain;
  }
  return kExitUsage;
}

}  // namespace wigmaj::cli
