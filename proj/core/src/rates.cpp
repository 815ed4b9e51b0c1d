#include "rsl/rates.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "rsl/normal.hpp"

namespace rsl {

double empirical_kolmogorov(std::span<const double> values) {
  if (values.empty()) throw EmptyBatch("empirical d_K needs at least one sample");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  double sup = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double phi = normal_cdf(sorted[i]);
    sup = std::max(sup, (static_cast<double>(i) + 1.0) / n - phi);
    sup = std::max(sup, phi - static_cast<double>(i) / n);
  }
  return sup;
}

double empirical_kolmogorov(const SampleBatch& batch) {
  return empirical_kolmogorov(std::span<const double>(batch.values));
}

RateFit rate_fit(std::span<const RatePoint> points) {
  if (points.size() < 3) throw TooFewPoints("rate fit needs at least three points");
  double sx = 0.0, sy = 0.0;
  for (const RatePoint& pt : points) {
    if (!(pt.dk > 0.0)) throw NonpositiveDk("rate fit needs dk > 0 at every point");
    sx += std::log(static_cast<double>(pt.n));
    sy += std::log(pt.dk);
  }
  const double mx = sx / static_cast<double>(points.size());
  const double my = sy / static_cast<double>(points.size());
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (const RatePoint& pt : points) {
    const double dx = std::log(static_cast<double>(pt.n)) - mx;
    const double dy = std::log(pt.dk) - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  RateFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  const double ss_res = syy - fit.slope * sxy;
  fit.r_squared = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
  fit.r_squared = std::clamp(fit.r_squared, 0.0, 1.0);
  return fit;
}

PLaw PLaw::constant(double p) {
  PLaw law;
  law.coeff = p;
  law.exponent = 0.0;
  law.text = std::to_string(p);
  return law;
}

PLaw PLaw::parse(const std::string& text) {
  PLaw law;
  law.text = text;
  const auto bad = [&](const std::string& why) {
    return ConfigError("p-law '" + text + "': " + why);
  };
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  }
  if (s.empty()) throw bad("empty");
  try {
    const auto star = s.find("*n^");
    const auto slash = s.find("/n");
    if (star != std::string::npos) {
      law.coeff = std::stod(s.substr(0, star));
      law.exponent = std::stod(s.substr(star + 3));
    } else if (s.rfind("n^", 0) == 0) {
      law.coeff = 1.0;
      law.exponent = std::stod(s.substr(2));
    } else if (slash != std::string::npos) {
      if (slash + 2 != s.size()) throw bad("only 'c/n' division is supported");
      law.coeff = std::stod(s.substr(0, slash));
      law.exponent = -1.0;
    } else {
      std::size_t used = 0;
      law.coeff = std::stod(s, &used);
      if (used != s.size()) throw bad("trailing characters");
      law.exponent = 0.0;
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception&) {
    throw bad("cannot parse number");
  }
  if (!(law.coeff > 0.0)) throw bad("coefficient must be positive");
  return law;
}

Model family_instantiate(const SweepFamily& family, int n) {
  const double p = family.plaw(n);
  if (family.kind != FamilyKind::two_runs && (!(p > 0.0) || !(p < 1.0))) {
    throw ConfigError("p-law leaves (0,1) at n=" + std::to_string(n));
  }
  switch (family.kind) {
    case FamilyKind::degree:
      return DegreeModel{n, p, family.d};
    case FamilyKind::subgraph:
      return SubgraphModel{n, p, family.pattern};
    case FamilyKind::complex_faces:
      return ComplexModel{n, family.kappa, p};
    case FamilyKind::hypercube:
      return HypercubeModel{n, p, family.d};
    case FamilyKind::two_runs:
      return TwoRunsModel{std::vector<double>(static_cast<std::size_t>(n), 1.0)};
  }
  throw ConfigError("unknown family kind");
}

double family_prediction(const SweepFamily& family, int n) {
  const double p = family.plaw(n);
  switch (family.kind) {
    case FamilyKind::degree:
      return degree_rate_prediction({n, p, family.d}, family.regime);
    case FamilyKind::subgraph:
      return subgraph_rate_prediction(n, p, family.pattern).rate;
    case FamilyKind::complex_faces:
      return complex_rate_prediction({n, family.kappa, p});
    case FamilyKind::hypercube:
      return hypercube_rate_prediction({n, p, family.d}, family.eps);
    case FamilyKind::two_runs:
      return two_runs_rate_bound(TwoRunsConfig{std::vector<double>(static_cast<std::size_t>(n), 1.0)});
  }
  throw ConfigError("unknown family kind");
}

std::string format_double(double v) {
  char buf[40];
  for (int prec = 15; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

std::string render_rate_csv(std::span<const RatePoint> points) {
  std::string out = "n,dk,mc_sd,prediction,provenance\n";
  for (const RatePoint& pt : points) {
    out += std::to_string(pt.n) + "," + format_double(pt.dk) + "," + format_double(pt.mc_sd) +
           "," + format_double(pt.prediction) + ",monte-carlo\n";
  }
  return out;
}

std::vector<RatePoint> sweep(const SweepFamily& family, std::span<const int> n_grid,
                             std::size_t samples, std::uint64_t seed) {
  for (std::size_t i = 1; i < n_grid.size(); ++i) {
    if (n_grid[i] <= n_grid[i - 1]) throw ConfigError("n grid must be strictly increasing");
  }
  std::vector<RatePoint> points;
  points.reserve(n_grid.size());
  for (int n : n_grid) {
    const Model model = family_instantiate(family, n);
    const std::uint64_t seed_n = seed ^ mix64(static_cast<std::uint64_t>(n));
    const SampleBatch batch = sample_statistic(model, samples, seed_n);
    RatePoint pt;
    pt.n = n;
    pt.dk = empirical_kolmogorov(batch);
    pt.mc_sd = mc_standard_error(samples);
    pt.prediction = family_prediction(family, n);
    points.push_back(pt);
  }
  return points;
}

}  // namespace rsl
