#include <doctest.h>

#include <cmath>

#include "rsl/malliavin.hpp"
#include "rsl/rng.hpp"

using namespace rsl;

namespace {

SpacePtr random_space(CounterRng& rng, int m) {
  std::vector<double> probs(static_cast<std::size_t>(m));
  for (double& p : probs) p = 0.05 + 0.9 * rng.next_unit();
  return make_space(probs);
}

Functional random_functional(const SpacePtr& space, CounterRng& rng) {
  std::vector<double> vals(space->state_count());
  for (double& v : vals) v = 2.0 * rng.next_unit() - 1.0;
  return Functional(space, vals);
}

}  // namespace

TEST_CASE("divergence of a deterministic process is J_1") {
  const SpacePtr space = make_space({0.3, 0.6, 0.5});
  const std::vector<double> fvec = {0.7, -1.2, 0.4};
  std::vector<Functional> u;
  for (double c : fvec) u.push_back(Functional::constant(space, c));
  const Functional d = divergence(u);

  Kernel f(1);
  for (int k = 0; k < 3; ++k) {
    const int idx[1] = {k};
    f.set_symmetric(idx, fvec[static_cast<std::size_t>(k)]);
  }
  const Functional j1 = multiple_integral(space, f);
  for (StateMask x = 0; x < 8; ++x) CHECK(d(x) == doctest::Approx(j1(x)).epsilon(1e-12));
}

TEST_CASE("duality against a full basis of functionals") {
  CounterRng rng(23, 0);
  const SpacePtr space = random_space(rng, 4);
  std::vector<Functional> u;
  for (int k = 0; k < 4; ++k) u.push_back(random_functional(space, rng));
  const Functional du = divergence(u);
  // Check E<DF,u> = E[F delta(u)] for every basis functional Y_A.
  for (StateMask a = 0; a < 16; ++a) {
    std::vector<double> coeffs(16, 0.0);
    coeffs[a] = 1.0;
    const Functional f = from_chaos(ChaosExpansion(space, coeffs));
    double lhs = 0.0;
    for (int k = 0; k < 4; ++k) {
      lhs += expectation(gradient(f, k) * u[static_cast<std::size_t>(k)], 1);
    }
    CHECK(lhs == doctest::Approx(expectation(f * du, 1)).epsilon(1e-11));
  }
}

TEST_CASE("delta(DF) = -LF") {
  const SpacePtr space = make_space({0.5, 0.5});
  const Functional f = Functional::basis(space, 0) * Functional::basis(space, 1);
  const Functional d = divergence(all_gradients(f));
  const Functional neg_l = apply_L(f) * -1.0;
  for (StateMask x = 0; x < 4; ++x) {
    CHECK(d(x) == doctest::Approx(neg_l(x)).epsilon(1e-12));
    CHECK(d(x) == doctest::Approx(2.0 * f(x)).epsilon(1e-12));
  }
}

TEST_CASE("divergence annihilates self-dependent components") {
  const SpacePtr space = make_space({0.4, 0.5, 0.6});
  std::vector<Functional> u;
  u.push_back(Functional::basis(space, 0));  // u_0 = Y_0 depends on its own coordinate
  u.push_back(Functional::zero(space));
  u.push_back(Functional::zero(space));
  const Functional d = divergence(u);
  for (StateMask x = 0; x < 8; ++x) CHECK(d(x) == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("divergence errors") {
  const SpacePtr a = make_space({0.5, 0.5});
  const SpacePtr b = make_space({0.4, 0.5});
  std::vector<Functional> u = {Functional::zero(a), Functional::zero(b)};
  CHECK_THROWS_AS(divergence(u), SpaceMismatch);
  std::vector<Functional> short_u = {Functional::zero(a)};
  CHECK_THROWS_AS(divergence(short_u), DimensionMismatch);
}

TEST_CASE("gamma0 pointwise forms") {
  // Symmetric case: Y_k^2 = 1, so Gamma_0 coincides with sum_k D_kF D_kG.
  CounterRng rng(29, 0);
  const SpacePtr sym = make_symmetric_space(4);
  const Functional f = random_functional(sym, rng);
  const Functional g = random_functional(sym, rng);
  const Functional g0 = gamma0(f, g);
  for (StateMask x = 0; x < 16; ++x) {
    double plain = 0.0;
    for (int k = 0; k < 4; ++k) plain += gradient(f, k)(x) * gradient(g, k)(x);
    CHECK(g0(x) == doctest::Approx(plain).epsilon(1e-12));
  }

  // F = G = Y_1 at p = 0.3: Gamma_0 = (1 + Y_1^2)/2.
  const SpacePtr biased = make_space({0.3});
  const Functional y = Functional::basis(biased, 0);
  const Functional gy = gamma0(y, y);
  for (StateMask x = 0; x < 2; ++x) {
    CHECK(gy(x) == doctest::Approx(0.5 * (1.0 + y(x) * y(x))));
  }
}

TEST_CASE("E[Gamma_0(F,-L^{-1}F)] = Var F") {
  CounterRng rng(31, 0);
  for (int rep = 0; rep < 20; ++rep) {
    const int m = 1 + static_cast<int>(rng.next_u64() % 6);
    const SpacePtr space = random_space(rng, m);
    const Functional f = random_functional(space, rng);
    CHECK(expectation(gamma0(f, neg_L_inv(f)), 1) ==
          doctest::Approx(variance(f)).epsilon(1e-10));
  }
}

TEST_CASE("malliavin inner product") {
  const SpacePtr sym2 = make_symmetric_space(2);
  // First chaos with unit norm: inner is identically one.
  Kernel f(1);
  const int i0[1] = {0}, i1[1] = {1};
  f.set_symmetric(i0, std::sqrt(0.5));
  f.set_symmetric(i1, std::sqrt(0.5));
  const Functional j1 = multiple_integral(sym2, f);
  const Functional inner1 = malliavin_inner(j1);
  for (StateMask x = 0; x < 4; ++x) CHECK(inner1(x) == doctest::Approx(1.0).epsilon(1e-12));

  // Y1 Y2 at p = 1/2: Y_k^2 = 1 keeps the inner product constant.
  const Functional y1y2 = Functional::basis(sym2, 0) * Functional::basis(sym2, 1);
  const Functional inner2 = malliavin_inner(y1y2);
  for (StateMask x = 0; x < 4; ++x) CHECK(inner2(x) == doctest::Approx(1.0).epsilon(1e-12));

  // Biased case: non-constant but with expectation Var F = 1.
  const SpacePtr biased = make_space({0.3, 0.3});
  const Functional yb = Functional::basis(biased, 0) * Functional::basis(biased, 1);
  const Functional inner3 = malliavin_inner(yb);
  bool constant = true;
  for (StateMask x = 1; x < 4; ++x) constant = constant && inner3(x) == inner3(0);
  CHECK_FALSE(constant);
  CHECK(expectation(inner3, 1) == doctest::Approx(1.0).epsilon(1e-11));

  CounterRng rng(37, 0);
  for (int rep = 0; rep < 20; ++rep) {
    const int m = 1 + static_cast<int>(rng.next_u64() % 6);
    const SpacePtr space = random_space(rng, m);
    const Functional f = random_functional(space, rng);
    CHECK(expectation(malliavin_inner(f), 1) == doctest::Approx(variance(f)).epsilon(1e-10));
  }
}

TEST_CASE("sup-norm contraction of the gradient") {
  CounterRng rng(41, 0);
  for (int rep = 0; rep < 20; ++rep) {
    const int m = 1 + static_cast<int>(rng.next_u64() % 6);
    const SpacePtr space = random_space(rng, m);
    const Functional f = random_functional(space, rng);
    double sup_f = 0.0;
    for (StateMask x = 0; x < space->state_count(); ++x) sup_f = std::max(sup_f, std::fabs(f(x)));
    for (int k = 0; k < m; ++k) {
      const Functional d = gradient(f, k);
      for (StateMask x = 0; x < space->state_count(); ++x) {
        CHECK(std::fabs(d(x)) <= sup_f + 1e-12);
      }
    }
  }
}
