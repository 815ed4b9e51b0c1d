#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "rsl/models.hpp"
#include "rsl/rng.hpp"

namespace rsl {

struct DegreeModel {
  int n = 0;
  double p = 0.0;
  int d = 0;
};

struct SubgraphModel {
  int n = 0;
  double p = 0.0;
  Pattern pattern;
};

struct ComplexModel {
  int n = 0;
  int kappa = 1;
  double p = 0.0;
};

struct HypercubeModel {
  int n = 0;
  double p = 0.0;
  int d = 0;
};

struct TwoRunsModel {
  std::vector<double> alpha;
};

using Model = std::variant<DegreeModel, SubgraphModel, ComplexModel, HypercubeModel, TwoRunsModel>;

std::string model_label(const Model& model);

/// Closed-form mean/variance of the raw statistic (used to standardize the
/// Monte Carlo samples).
Moments model_moments(const Model& model);

/// Exact desk-scale functional of the standardized statistic (CapExceeded
/// beyond the coordinate cap).
Functional model_functional(const Model& model);

/// A standardized Monte Carlo batch. Values are stored in sample order;
/// (model, count, seed) fully determines the contents at any thread count.
struct SampleBatch {
  std::string model;
  std::uint64_t seed = 0;
  std::vector<double> values;
};

/// Draws `count` independent standardized samples of the model statistic.
/// Sample i consumes the substream keyed by (seed, i), so the batch does not
/// depend on the worker count. Sparse regimes use geometric skipping over the
/// lexicographic edge order; for p > 1/2 the complement graph is sampled.
SampleBatch sample_statistic(const Model& model, std::size_t count, std::uint64_t seed);

/// Single-sample evaluator used by sample_statistic; exposed for tests.
class ModelSampler {
 public:
  explicit ModelSampler(const Model& model);
  ~ModelSampler();
  ModelSampler(ModelSampler&&) noexcept;

  /// Standardized statistic value for the sample with this substream.
  double sample(CounterRng rng);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Flat binary batch format: 16-byte header (magic "RSMB", u32 version,
/// u64 count, little-endian) followed by count little-endian doubles.
void write_batch(const std::string& path, const SampleBatch& batch);
SampleBatch read_batch(const std::string& path);

}  // namespace rsl
