#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "config.hpp"
#include "record.hpp"
#include "rsl/distance.hpp"
#include "rsl/rates.hpp"
#include "rsl/sampling.hpp"
#include "rsl/stein.hpp"
#include "rsl/verify.hpp"
#include "rsl/version.hpp"

namespace {

using rsl::cli::ExperimentConfig;
using rsl::cli::OutputRow;
using rsl::cli::ResultRecord;

struct ModelFlags {
  std::string model;
  int n = 0;
  double p = 0.5;
  int d = 0;
  int kappa = 2;
  std::string alpha;    // comma list
  std::string pattern;  // builtin name or edge-list file
};

std::vector<double> parse_alpha(const std::string& text) {
  std::vector<double> alpha;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      alpha.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw rsl::ConfigError("alpha entry is not a number: " + item);
    }
  }
  if (alpha.empty()) throw rsl::ConfigError("alpha list is empty");
  return alpha;
}

std::vector<int> parse_grid(const std::string& text) {
  std::vector<int> grid;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      grid.push_back(std::stoi(item));
    } catch (const std::exception&) {
      throw rsl::ConfigError("n_grid entry is not an integer: " + item);
    }
  }
  if (grid.empty()) throw rsl::ConfigError("n_grid is empty");
  return grid;
}

rsl::Pattern load_pattern(const std::string& spec) {
  if (spec.empty() || spec == "triangle") return rsl::Pattern::triangle();
  if (spec == "edge") return rsl::Pattern::single_edge();
  if (spec == "path2") return rsl::Pattern::path2();
  std::ifstream in(spec);
  if (!in) throw rsl::ConfigError("pattern must be edge|path2|triangle or a readable file: " + spec);
  std::stringstream buf;
  buf << in.rdbuf();
  return rsl::Pattern::parse_edge_list(buf.str(), spec);
}

rsl::Model build_model(const ModelFlags& mf) {
  if (mf.model == "degree") return rsl::DegreeModel{mf.n, mf.p, mf.d};
  if (mf.model == "subgraph") return rsl::SubgraphModel{mf.n, mf.p, load_pattern(mf.pattern)};
  if (mf.model == "complex") return rsl::ComplexModel{mf.n, mf.kappa, mf.p};
  if (mf.model == "hypercube") return rsl::HypercubeModel{mf.n, mf.p, mf.d};
  if (mf.model == "tworuns") {
    return rsl::TwoRunsModel{mf.alpha.empty() ? std::vector<double>(static_cast<std::size_t>(mf.n), 1.0)
                                              : parse_alpha(mf.alpha)};
  }
  throw rsl::ConfigError("unknown model '" + mf.model +
                         "' (expected degree|subgraph|complex|hypercube|tworuns)");
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw rsl::IoError("cannot open output file " + path);
  out << text;
}

ExperimentConfig echo_config(const std::string& command, const ModelFlags& mf,
                             const std::map<std::string, std::string>& extra) {
  ExperimentConfig cfg;
  cfg.command = command;
  cfg.values["model"] = mf.model;
  cfg.values["n"] = std::to_string(mf.n);
  cfg.values["p"] = rsl::format_double(mf.p);
  cfg.values["d"] = std::to_string(mf.d);
  cfg.values["kappa"] = std::to_string(mf.kappa);
  if (!mf.alpha.empty()) cfg.values["alpha"] = mf.alpha;
  if (!mf.pattern.empty()) cfg.values["pattern"] = mf.pattern;
  for (const auto& [k, v] : extra) cfg.values[k] = v;
  return cfg;
}

int run_bound(const ModelFlags& mf, const std::string& variant, int refine,
              const std::string& out_path, const std::string& format) {
  const auto t0 = std::chrono::steady_clock::now();
  const rsl::Model model = build_model(mf);
  const rsl::Functional f = rsl::model_functional(model);

  ResultRecord rec;
  rec.command = "bound";
  rec.inputs["model"] = mf.model;
  rec.inputs["n"] = std::to_string(mf.n);
  rec.inputs["p"] = rsl::format_double(mf.p);
  rec.inputs["d"] = std::to_string(mf.d);
  rec.inputs["kappa"] = mf.model == "complex" ? std::to_string(mf.kappa) : "";
  rec.inputs["variant"] = variant;
  rec.inputs["refine"] = std::to_string(refine);
  rec.id = "bound-" + rsl::model_label(model) + "-" + variant;

  rec.outputs.push_back({"exact_dk", rsl::kolmogorov_exact(f), "exact"});

  const bool all = variant == "all";
  const bool second_order = all || variant == "2nd_r1" || variant == "2nd_r2" ||
                            variant == "wasserstein";
  std::optional<rsl::BoundTerms> terms;
  if (second_order) terms = rsl::bound_terms(f);

  if (all || variant == "r0") {
    rec.outputs.push_back({"kol_r0", rsl::kol_r0(f, refine), "grid-approximate"});
  }
  if (all || variant == "r1") rec.outputs.push_back({"kol_r1", rsl::kol_r1(f), "exact"});
  if (all || variant == "r2") rec.outputs.push_back({"kol_r2", rsl::kol_r2(f), "exact"});
  if (terms) {
    rec.outputs.push_back({"B1", terms->b1, "exact"});
    rec.outputs.push_back({"B2", terms->b2, "exact"});
    rec.outputs.push_back({"B3", terms->b3, "exact"});
    rec.outputs.push_back({"B4", terms->b4, "exact"});
    rec.outputs.push_back({"B5", terms->b5, "exact"});
    rec.outputs.push_back({"kappa_sum", terms->kappa, "exact"});
    rec.outputs.push_back({"A3", terms->a3, "exact"});
    if (all || variant == "2nd_r1") {
      rec.outputs.push_back(
          {"second_order_r1",
           rsl::second_order_kolmogorov(*terms, rsl::SecondOrderVariant::R1), "exact"});
    }
    if (all || variant == "2nd_r2") {
      rec.outputs.push_back(
          {"second_order_r2",
           rsl::second_order_kolmogorov(*terms, rsl::SecondOrderVariant::R2), "exact"});
    }
    if (all || variant == "wasserstein") {
      rec.outputs.push_back({"exact_w1", rsl::wasserstein_exact_normal(f), "exact"});
      rec.outputs.push_back({"second_order_wasserstein", rsl::second_order_wasserstein(*terms),
                             "exact"});
    }
  }
  rec.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  write_output(out_path, format == "json" ? rec.to_json() : rec.to_bound_csv());
  return 0;
}

int run_rate(const ModelFlags& mf, const std::string& plaw_text, const std::string& grid_text,
             std::size_t samples, std::uint64_t seed, const std::string& regime_text, double eps,
             const std::string& out_path, const std::string& format) {
  rsl::SweepFamily family;
  if (mf.model == "degree") {
    family.kind = rsl::FamilyKind::degree;
  } else if (mf.model == "subgraph") {
    family.kind = rsl::FamilyKind::subgraph;
    family.pattern = load_pattern(mf.pattern);
  } else if (mf.model == "complex") {
    family.kind = rsl::FamilyKind::complex_faces;
  } else if (mf.model == "hypercube") {
    family.kind = rsl::FamilyKind::hypercube;
  } else if (mf.model == "tworuns") {
    family.kind = rsl::FamilyKind::two_runs;
  } else {
    throw rsl::ConfigError("unknown model '" + mf.model + "'");
  }
  family.d = mf.d;
  family.kappa = mf.kappa;
  family.eps = eps;
  if (family.kind != rsl::FamilyKind::two_runs) family.plaw = rsl::PLaw::parse(plaw_text);
  if (!regime_text.empty()) {
    if (regime_text == "liminf") {
      family.regime = rsl::DegreeRegime::liminf_np_positive;
    } else if (regime_text == "zero") {
      family.regime = rsl::DegreeRegime::np_to_zero;
    } else {
      throw rsl::ConfigError("regime must be liminf|zero, got " + regime_text);
    }
  } else if (family.kind == rsl::FamilyKind::degree && mf.d >= 1) {
    // Derive from the p-law: np constant -> liminf branch, np -> 0 otherwise.
    if (family.plaw.exponent == -1.0) {
      family.regime = rsl::DegreeRegime::liminf_np_positive;
    } else if (family.plaw.exponent < -1.0) {
      family.regime = rsl::DegreeRegime::np_to_zero;
    }
  }

  const std::vector<int> grid = parse_grid(grid_text);
  const auto t0 = std::chrono::steady_clock::now();
  const std::vector<rsl::RatePoint> points = rsl::sweep(family, grid, samples, seed);
  const rsl::RateFit fit = rsl::rate_fit(points);
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  const double pred_exponent =
      (std::log(rsl::family_prediction(family, grid.back())) -
       std::log(rsl::family_prediction(family, grid.front()))) /
      (std::log(static_cast<double>(grid.back())) - std::log(static_cast<double>(grid.front())));

  if (format == "json") {
    std::string json = "{\n  \"points\": [\n";
    for (std::size_t i = 0; i < points.size(); ++i) {
      json += "    {\"n\": " + std::to_string(points[i].n) +
              ", \"dk\": " + rsl::format_double(points[i].dk) +
              ", \"mc_sd\": " + rsl::format_double(points[i].mc_sd) +
              ", \"prediction\": " + rsl::format_double(points[i].prediction) + "}" +
              (i + 1 < points.size() ? ",\n" : "\n");
    }
    json += "  ],\n  \"fit\": {\"slope\": " + rsl::format_double(fit.slope) +
            ", \"intercept\": " + rsl::format_double(fit.intercept) +
            ", \"r_squared\": " + rsl::format_double(fit.r_squared) + "},\n";
    json += "  \"predicted_exponent\": " + rsl::format_double(pred_exponent) + ",\n";
    json += "  \"samples\": " + std::to_string(samples) + ",\n";
    json += "  \"seed\": " + std::to_string(seed) + ",\n";
    json += "  \"wall_seconds\": " + rsl::format_double(wall) + ",\n";
    json += "  \"version\": \"" + std::string(rsl::kVersion) + "\"\n}\n";
    write_output(out_path, json);
  } else {
    write_output(out_path, rsl::render_rate_csv(points));
    std::ostream& os = std::cerr;
    os << "fit: slope " << rsl::format_double(fit.slope) << ", r^2 "
       << rsl::format_double(fit.r_squared) << ", predicted exponent "
       << rsl::format_double(pred_exponent) << "\n";
  }
  return 0;
}

int run_verify(const std::string& filter, std::uint64_t seed, const std::string& out_path) {
  rsl::VerifyOptions opts;
  opts.filter = filter;
  if (seed != 0) opts.seed = seed;
  opts.log = &std::cout;
  const auto results = rsl::run_acceptance(opts);
  std::size_t failed = 0;
  for (const auto& r : results) failed += r.pass ? 0 : 1;
  std::cout << results.size() - failed << "/" << results.size() << " checks passed\n";
  if (!out_path.empty()) {
    std::string json = "[\n";
    for (std::size_t i = 0; i < results.size(); ++i) {
      json += "  {\"name\": \"" + results[i].name + "\", \"pass\": " +
              (results[i].pass ? "true" : "false") + ", \"detail\": \"" + results[i].detail +
              "\", \"seconds\": " + rsl::format_double(results[i].seconds) + "}" +
              (i + 1 < results.size() ? ",\n" : "\n");
    }
    json += "]\n";
    write_output(out_path, json);
  }
  return rsl::all_passed(results) && !results.empty() ? 0 : 1;
}

int run_selftest() {
  const auto results = rsl::run_selftest();
  for (const auto& r : results) {
    std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << r.name
              << (r.detail.empty() ? "" : "  " + r.detail) << "\n";
  }
  return rsl::all_passed(results) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact discrete Malliavin-Stein bounds and Monte Carlo rate experiments"};
  app.set_version_flag("--version", rsl::kVersion);
  app.set_config("--config", "", "flat key = value configuration with [command] sections");
  app.require_subcommand(1);

  ModelFlags mf;
  std::string variant = "all";
  int refine = 32;
  std::string out_path;
  std::string format = "csv";
  std::string plaw = "1/n";
  std::string grid_text = "64,128,256,512,1024";
  std::size_t samples = 100000;
  std::uint64_t seed = 1;
  std::string regime;
  double eps = 0.5;
  std::string filter;
  std::uint64_t verify_seed = 0;

  auto add_model_flags = [&](CLI::App* cmd) {
    cmd->add_option("--model", mf.model, "degree|subgraph|complex|hypercube|tworuns")->required();
    cmd->add_option("--n", mf.n, "model size (vertices / window length)");
    cmd->add_option("--p", mf.p, "success probability");
    cmd->add_option("--d", mf.d, "target degree");
    cmd->add_option("--kappa", mf.kappa, "complex dimension");
    cmd->add_option("--alpha", mf.alpha, "two-runs weights, comma separated");
    cmd->add_option("--pattern", mf.pattern, "edge|path2|triangle or an edge-list file");
    cmd->add_option("--out", out_path, "output file (default stdout)");
    cmd->add_option("--format", format, "csv|json")->check(CLI::IsMember({"csv", "json"}));
  };

  CLI::App* bound = app.add_subcommand("bound", "evaluate normal-approximation bounds exactly");
  bound->fallthrough();
  add_model_flags(bound);
  bound->add_option("--variant", variant, "r0|r1|r2|2nd_r1|2nd_r2|wasserstein|all");
  bound->add_option("--refine", refine, "z-grid refinement for kol_r0");

  CLI::App* rate = app.add_subcommand("rate", "Monte Carlo rate sweep over an n grid");
  rate->fallthrough();
  add_model_flags(rate);
  rate->add_option("--plaw", plaw, "p as a function of n: '0.3', '1/n', 'n^-0.5'");
  rate->add_option("--n-grid", grid_text, "comma-separated increasing n values");
  rate->add_option("--samples", samples, "Monte Carlo samples per n");
  rate->add_option("--seed", seed, "base seed (per-n substreams are derived)");
  rate->add_option("--regime", regime, "degree d>=1 rate regime: liminf|zero");
  rate->add_option("--eps", eps, "hypercube prediction epsilon in (0,1)");

  CLI::App* verify = app.add_subcommand("verify", "run the acceptance suite");
  verify->fallthrough();
  verify->add_option("--filter", filter, "substring filter on check names");
  verify->add_option("--seed", verify_seed, "suite seed (0 keeps the default)");
  verify->add_option("--out", out_path, "write per-check results as JSON");

  app.add_subcommand("selftest", "sub-second operator identity and Phi checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (bound->parsed()) return run_bound(mf, variant, refine, out_path, format);
    if (rate->parsed()) {
      return run_rate(mf, plaw, grid_text, samples, seed, regime, eps, out_path, format);
    }
    if (verify->parsed()) return run_verify(filter, verify_seed, out_path);
    return run_selftest();
  } catch (const rsl::CapExceeded& e) {
    std::cerr << "cap/resource error: " << e.what() << "\n";
    return 3;
  } catch (const rsl::IoError& e) {
    std::cerr << "cap/resource error: " << e.what() << "\n";
    return 3;
  } catch (const rsl::Error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
