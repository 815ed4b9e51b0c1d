#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "rsl/sampling.hpp"

namespace rsl {

/// Asymptotic mean scale of the one-sample KS statistic; the reported Monte
/// Carlo noise proxy is kKsNoiseScale / sqrt(N).
inline constexpr double kKsNoiseScale = 0.8269;

inline double mc_standard_error(std::size_t samples) {
  return kKsNoiseScale / std::sqrt(static_cast<double>(samples));
}

/// One-sample Kolmogorov-Smirnov statistic of the batch against N(0,1):
/// max_i of max(i/N - Phi(x_(i)), Phi(x_(i)) - (i-1)/N).
double empirical_kolmogorov(const SampleBatch& batch);
double empirical_kolmogorov(std::span<const double> values);

struct RatePoint {
  int n = 0;
  double dk = 0.0;
  double mc_sd = 0.0;
  double prediction = 0.0;
};

struct RateFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

/// Ordinary least squares of log(dk) on log(n). Needs >= 3 points with
/// dk > 0 (TooFewPoints / NonpositiveDk otherwise).
RateFit rate_fit(std::span<const RatePoint> points);

/// p as a function of n: coeff * n^exponent. Parsed from "0.25", "1/n",
/// "2/n", "n^-0.5" or "c*n^e" forms.
struct PLaw {
  double coeff = 0.0;
  double exponent = 0.0;
  std::string text;

  double operator()(int n) const { return coeff * std::pow(static_cast<double>(n), exponent); }
  static PLaw parse(const std::string& text);
  static PLaw constant(double p);
};

enum class FamilyKind { degree, subgraph, complex_faces, hypercube, two_runs };

/// A model family swept over n, with the asymptotic regime encoded in the p-law
/// (p = c/n for degree counts, p = n^{-1/2} for subgraph counts, the
/// all-ones window of length n for 2-runs).
struct SweepFamily {
  FamilyKind kind = FamilyKind::degree;
  PLaw plaw = PLaw::constant(0.5);
  int d = 0;                       // degree / hypercube target degree
  int kappa = 2;                   // complex dimension
  Pattern pattern;                 // subgraph pattern
  double eps = 0.5;                // hypercube prediction epsilon
  DegreeRegime regime = DegreeRegime::unspecified;
};

Model family_instantiate(const SweepFamily& family, int n);
double family_prediction(const SweepFamily& family, int n);

/// One RatePoint per n: empirical d_K of `samples` draws plus the model
/// prediction. Per-n seeds are derived as seed ^ mix64(n).
std::vector<RatePoint> sweep(const SweepFamily& family, std::span<const int> n_grid,
                             std::size_t samples, std::uint64_t seed);

/// Shortest round-trip decimal rendering used by all machine-readable output
/// (keeps CSV byte-stable for identical inputs).
std::string format_double(double v);

/// Rate CSV: header n,dk,mc_sd,prediction,provenance and one row per point.
std::string render_rate_csv(std::span<const RatePoint> points);

}  // namespace rsl
