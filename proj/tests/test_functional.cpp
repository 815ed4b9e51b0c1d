#include <doctest.h>

#include <cmath>
#include <limits>

#include "rsl/functional.hpp"
#include "rsl/models.hpp"
#include "rsl/rng.hpp"

using namespace rsl;

TEST_CASE("expectation of basis elements") {
  const SpacePtr fair = make_space({0.5});
  const Functional y = Functional::basis(fair, 0);
  CHECK(expectation(y, 1) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(expectation(y, 2) == doctest::Approx(1.0));

  // Third moment at p=0.3 against the two-state summation done directly.
  const SpacePtr biased = make_space({0.3});
  const Functional yb = Functional::basis(biased, 0);
  const double p = 0.3, q = 0.7;
  const double oracle = p * std::pow(std::sqrt(q / p), 3) + q * std::pow(-std::sqrt(p / q), 3);
  CHECK(expectation(yb, 3) == doctest::Approx(oracle).epsilon(1e-14));
  CHECK(oracle == doctest::Approx((q - p) / std::sqrt(p * q)));
  CHECK(oracle == doctest::Approx(0.4 / std::sqrt(0.21)));
}

TEST_CASE("variance basics") {
  const SpacePtr space = make_space({0.5, 0.5});
  CHECK(variance(Functional::constant(space, 3.25)) == 0.0);
  const Functional y1y2 = Functional::basis(space, 0) * Functional::basis(space, 1);
  CHECK(variance(y1y2) == doctest::Approx(1.0));
}

TEST_CASE("two-runs variance 13/16 by exhaustive enumeration") {
  // G = xi1 xi2 + xi2 xi3 + xi3 xi4 over four fair Bernoulli bits.
  double e = 0.0, e2 = 0.0;
  for (int x = 0; x < 16; ++x) {
    const int b1 = x & 1, b2 = (x >> 1) & 1, b3 = (x >> 2) & 1, b4 = (x >> 3) & 1;
    const double g = b1 * b2 + b2 * b3 + b3 * b4;
    e += g / 16.0;
    e2 += g * g / 16.0;
  }
  const double oracle_var = e2 - e * e;
  CHECK(oracle_var == doctest::Approx(13.0 / 16.0));
  CHECK(two_runs_variance({{1.0, 1.0, 1.0}}) == doctest::Approx(oracle_var).epsilon(1e-12));
}

TEST_CASE("gradient of basis and products") {
  const SpacePtr space = make_space({0.5, 0.5, 0.5});
  for (int k = 0; k < 3; ++k) {
    for (int j = 0; j < 3; ++j) {
      const Functional d = gradient(Functional::basis(space, j), k);
      for (StateMask x = 0; x < 8; ++x) {
        CHECK(d(x) == doctest::Approx(k == j ? 1.0 : 0.0));
      }
    }
  }
  const Functional c = Functional::constant(space, 2.0);
  for (int k = 0; k < 3; ++k) {
    for (StateMask x = 0; x < 8; ++x) CHECK(gradient(c, k)(x) == 0.0);
  }

  // F = X1 X2 at p = 1/2: flip-table oracle gives D_1 F = X_2.
  std::vector<double> vals(8);
  for (StateMask x = 0; x < 8; ++x) {
    const double x1 = (x & 1) ? 1.0 : -1.0, x2 = (x & 2) ? 1.0 : -1.0;
    vals[x] = x1 * x2;
  }
  const Functional f(space, vals);
  const Functional d1 = gradient(f, 0);
  for (StateMask x = 0; x < 8; ++x) {
    const double x2 = (x & 2) ? 1.0 : -1.0;
    const double flip_oracle = 0.5 * (vals[x | 1] - vals[x & ~1u]);
    CHECK(d1(x) == doctest::Approx(x2));
    CHECK(d1(x) == doctest::Approx(flip_oracle));
  }
}

TEST_CASE("gradient is constant in its own coordinate") {
  CounterRng rng(3, 0);
  for (int rep = 0; rep < 10; ++rep) {
    const int m = 1 + static_cast<int>(rng.next_u64() % 8);
    std::vector<double> probs(static_cast<std::size_t>(m));
    for (double& p : probs) p = 0.05 + 0.9 * rng.next_unit();
    const SpacePtr space = make_space(probs);
    std::vector<double> vals(space->state_count());
    for (double& v : vals) v = 2.0 * rng.next_unit() - 1.0;
    const Functional f(space, vals);
    for (int k = 0; k < m; ++k) {
      const Functional d = gradient(f, k);
      for (StateMask x = 0; x < space->state_count(); ++x) {
        CHECK(d(x) == d(x ^ (StateMask{1} << k)));
      }
    }
  }
}

TEST_CASE("iterated gradient") {
  const SpacePtr space = make_space({0.5, 0.5, 0.5});
  const Functional y123 =
      Functional::basis(space, 0) * Functional::basis(space, 1) * Functional::basis(space, 2);

  // k = l is identically zero, bit-exact.
  const Functional zero = iterated_gradient(y123, 1, 1);
  for (StateMask x = 0; x < 8; ++x) CHECK(zero(x) == 0.0);

  // Two successive flips: D_2 D_1 (Y1 Y2 Y3) = Y3.
  const Functional d21 = iterated_gradient(y123, 0, 1);
  const Functional y3 = Functional::basis(space, 2);
  for (StateMask x = 0; x < 8; ++x) CHECK(d21(x) == doctest::Approx(y3(x)));

  // First chaos: any iterated gradient vanishes.
  const Functional y1 = Functional::basis(space, 0);
  for (int k = 0; k < 3; ++k) {
    for (int l = 0; l < 3; ++l) {
      const Functional d = iterated_gradient(y1, k, l);
      for (StateMask x = 0; x < 8; ++x) CHECK(d(x) == doctest::Approx(0.0).epsilon(1e-15));
    }
  }

  CHECK_THROWS_AS(gradient(y1, 5), IndexOutOfRange);
  CHECK_THROWS_AS(iterated_gradient(y1, 0, 9), IndexOutOfRange);
}

TEST_CASE("value table invariants") {
  const SpacePtr space = make_space({0.4, 0.6});
  CHECK_THROWS_AS(Functional(space, std::vector<double>(3, 0.0)), DimensionMismatch);
  std::vector<double> with_nan = {0.0, 1.0, std::nan(""), 2.0};
  CHECK_THROWS_AS(Functional(space, with_nan), DimensionMismatch);
  std::vector<double> with_inf = {0.0, 1.0, 2.0, std::numeric_limits<double>::infinity()};
  CHECK_THROWS_AS(Functional(space, with_inf), DimensionMismatch);
}

TEST_CASE("standardize") {
  const SpacePtr space = make_space({0.4, 0.6});
  CHECK_THROWS_AS(standardize(Functional::constant(space, 1.0)), ZeroVariance);
  std::vector<double> vals = {0.0, 1.5, -2.0, 0.25};
  const Functional f(space, vals);
  const Functional s = standardize(f);
  CHECK(expectation(s, 1) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(variance(s) == doctest::Approx(1.0).epsilon(1e-12));
}
