#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <map>

#include "rsl/distance.hpp"
#include "rsl/normal.hpp"
#include "rsl/parallel.hpp"
#include "rsl/rates.hpp"
#include "rsl/sampling.hpp"

using namespace rsl;

TEST_CASE("sampling is deterministic in (model, count, seed)") {
  const Model model = DegreeModel{32, 0.1, 0};
  const SampleBatch a = sample_statistic(model, 5000, 99);
  const SampleBatch b = sample_statistic(model, 5000, 99);
  CHECK(a.values == b.values);
  const SampleBatch c = sample_statistic(model, 5000, 100);
  CHECK(a.values != c.values);

  set_thread_count(1);
  const SampleBatch t1 = sample_statistic(model, 5000, 99);
  set_thread_count(7);
  const SampleBatch t7 = sample_statistic(model, 5000, 99);
  set_thread_count(0);
  CHECK(a.values == t1.values);
  CHECK(a.values == t7.values);
}

TEST_CASE("sample mean is near zero at CLT scale") {
  const Model model = DegreeModel{3, 0.5, 0};
  const std::size_t n = 1000000;
  const SampleBatch batch = sample_statistic(model, n, 4242);
  double mean = 0.0;
  for (double v : batch.values) mean += v;
  mean /= static_cast<double>(n);
  CHECK(std::fabs(mean) <= 4.0 / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("sampled atom frequencies match the exact law") {
  const Model model = SubgraphModel{4, 0.5, Pattern::triangle()};
  const Functional f = model_functional(model);
  const AtomLaw law = law_of(f);
  const std::size_t n = 200000;
  const SampleBatch batch = sample_statistic(model, n, 7);
  std::map<double, std::size_t> freq;
  for (double v : batch.values) ++freq[v];
  for (std::size_t i = 0; i < law.atoms.size(); ++i) {
    // match sampled values to atoms within rounding noise
    double count = 0.0;
    for (const auto& [v, c] : freq) {
      if (std::fabs(v - law.atoms[i]) < 1e-9) count += static_cast<double>(c);
    }
    const double expect = law.mass[i] * static_cast<double>(n);
    const double se = std::sqrt(law.mass[i] * (1.0 - law.mass[i]) * static_cast<double>(n));
    CHECK(std::fabs(count - expect) <= 5.0 * se + 1.0);
  }
}

TEST_CASE("every model's sampler matches its exact law at desk scale") {
  // Includes p > 1/2 instances so the complement-scan path of every sampler
  // is checked against the exact law.
  const std::vector<Model> models = {
      DegreeModel{5, 0.3, 1},
      DegreeModel{5, 0.7, 2},
      SubgraphModel{4, 0.6, Pattern::path2()},
      SubgraphModel{5, 0.7, Pattern::triangle()},
      ComplexModel{5, 2, 0.4},
      ComplexModel{4, 2, 0.75},
      HypercubeModel{3, 0.55, 2},
      TwoRunsModel{{1.0, 0.5, 2.0}},
  };
  for (const Model& model : models) {
    const double exact = kolmogorov_exact(model_functional(model));
    const SampleBatch batch = sample_statistic(model, 200000, 11);
    const double emp = empirical_kolmogorov(batch);
    CHECK(std::fabs(emp - exact) <= 5.0 * mc_standard_error(batch.values.size()));
  }
}

TEST_CASE("empirical Kolmogorov statistic") {
  CHECK(empirical_kolmogorov(std::vector<double>{0.0}) == doctest::Approx(0.5));

  const int n = 100;
  std::vector<double> quantiles;
  for (int i = 0; i < n; ++i) quantiles.push_back(normal_quantile((i + 0.5) / n));
  CHECK(empirical_kolmogorov(quantiles) == doctest::Approx(0.5 / n).epsilon(1e-9));

  CHECK_THROWS_AS(empirical_kolmogorov(std::vector<double>{}), EmptyBatch);
}

TEST_CASE("KS noise floor for exactly normal samples") {
  const std::size_t n = 10000;
  int below = 0;
  for (int rep = 0; rep < 100; ++rep) {
    CounterRng rng(555, static_cast<std::uint64_t>(rep));
    std::vector<double> xs(n);
    for (double& x : xs) x = normal_quantile(rng.next_unit());
    if (empirical_kolmogorov(xs) <= 2.5 / std::sqrt(static_cast<double>(n))) ++below;
  }
  CHECK(below >= 99);
}

TEST_CASE("rate fit") {
  std::vector<RatePoint> exact;
  for (const int n : {16, 32, 64, 128}) {
    exact.push_back({n, std::pow(n, -0.5), 0.0, 0.0});
  }
  const RateFit fit = rate_fit(exact);
  CHECK(fit.slope == doctest::Approx(-0.5).epsilon(1e-12));
  CHECK(fit.r_squared == doctest::Approx(1.0));

  std::vector<RatePoint> two = {exact[0], exact[1]};
  CHECK_THROWS_AS(rate_fit(two), TooFewPoints);
  std::vector<RatePoint> bad = exact;
  bad[1].dk = 0.0;
  CHECK_THROWS_AS(rate_fit(bad), NonpositiveDk);

  // Noisy synthetic decay still recovers the exponent.
  CounterRng rng(77, 0);
  std::vector<RatePoint> noisy;
  for (const int n : {16, 32, 64, 128, 256, 512}) {
    const double noise = 1.0 + 0.01 * (2.0 * rng.next_unit() - 1.0);
    noisy.push_back({n, 3.0 * std::pow(n, -0.5) * noise, 0.0, 0.0});
  }
  CHECK(std::fabs(rate_fit(noisy).slope + 0.5) <= 0.05);
}

TEST_CASE("plaw parsing") {
  CHECK(PLaw::parse("0.25")(10) == doctest::Approx(0.25));
  CHECK(PLaw::parse("1/n")(10) == doctest::Approx(0.1));
  CHECK(PLaw::parse("2/n")(10) == doctest::Approx(0.2));
  CHECK(PLaw::parse("n^-0.5")(16) == doctest::Approx(0.25));
  CHECK(PLaw::parse("0.5*n^-1")(10) == doctest::Approx(0.05));
  CHECK_THROWS_AS(PLaw::parse("garbage"), ConfigError);
  CHECK_THROWS_AS(PLaw::parse(""), ConfigError);
  CHECK_THROWS_AS(PLaw::parse("n^"), ConfigError);
  try {
    PLaw::parse("x/n");
    CHECK(false);
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("p-law") != std::string::npos);
  }
}

TEST_CASE("sweep") {
  SweepFamily family;
  family.kind = FamilyKind::degree;
  family.d = 0;
  family.plaw = PLaw::parse("1/n");
  const std::vector<int> grid = {16, 32, 64};
  const auto points = sweep(family, grid, 200000, 2024);
  REQUIRE(points.size() == 3);
  // dk decreasing with at most one inversion.
  int inversions = 0;
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (points[i].dk > points[i - 1].dk) ++inversions;
  }
  CHECK(inversions <= 1);
  for (const auto& pt : points) {
    CHECK(pt.prediction == doctest::Approx(degree_rate_prediction({pt.n, 1.0 / pt.n, 0})));
    CHECK(pt.mc_sd == doctest::Approx(mc_standard_error(200000)));
  }

  // Two-runs prediction column equals the closed-form rate bound.
  SweepFamily runs;
  runs.kind = FamilyKind::two_runs;
  const auto rpoints = sweep(runs, std::vector<int>{8, 16, 32}, 20000, 5);
  for (const auto& pt : rpoints) {
    CHECK(pt.prediction ==
          doctest::Approx(two_runs_rate_bound({std::vector<double>(pt.n, 1.0)})));
  }

  std::vector<int> bad_grid = {32, 16};
  CHECK_THROWS_AS(sweep(family, bad_grid, 10, 1), ConfigError);
}

TEST_CASE("constant family has flat slope") {
  // The same model sampled with different seeds, labelled by a fake n grid:
  // the fitted slope is then pure noise around zero.
  const Model model = DegreeModel{24, 0.2, 1};
  std::vector<RatePoint> points;
  for (const int n : {16, 32, 64, 128}) {
    const SampleBatch batch = sample_statistic(model, 400000, 1000 + static_cast<std::uint64_t>(n));
    points.push_back({n, empirical_kolmogorov(batch), 0.0, 0.0});
  }
  CHECK(std::fabs(rate_fit(points).slope) <= 0.1);
}

TEST_CASE("binary batch io") {
  SampleBatch batch;
  batch.model = "test";
  batch.seed = 3;
  batch.values = {1.5, -2.25, 0.0, 1e-12, 3.5e300};
  const std::string path = "test_batch.rsmb";
  write_batch(path, batch);

  // 16-byte header: magic, version, count.
  FILE* fp = std::fopen(path.c_str(), "rb");
  REQUIRE(fp != nullptr);
  char header[16];
  REQUIRE(std::fread(header, 1, 16, fp) == 16);
  std::fclose(fp);
  CHECK(header[0] == 'R');
  CHECK(header[1] == 'S');
  CHECK(header[2] == 'M');
  CHECK(header[3] == 'B');

  const SampleBatch back = read_batch(path);
  CHECK(back.values == batch.values);
  std::remove(path.c_str());

  CHECK_THROWS_AS(read_batch("no_such_file.rsmb"), IoError);
}

TEST_CASE("render_rate_csv is stable") {
  std::vector<RatePoint> points = {{16, 0.125, 0.001, 0.25}, {32, 0.0625, 0.001, 0.17677}};
  const std::string csv = render_rate_csv(points);
  CHECK(csv == render_rate_csv(points));
  CHECK(csv.rfind("n,dk,mc_sd,prediction,provenance\n", 0) == 0);
  CHECK(csv.find("monte-carlo") != std::string::npos);
}

TEST_CASE("mc standard error proxy") {
  CHECK(mc_standard_error(1000000) == doctest::Approx(0.8269 / 1000.0));
}
