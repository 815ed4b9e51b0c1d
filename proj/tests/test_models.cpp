#include <doctest.h>

#include <bit>
#include <cmath>
#include <functional>
#include <set>

#include "rsl/models.hpp"
#include "rsl/rng.hpp"

using namespace rsl;

namespace {

// Enumeration oracle over 2^m states with a uniform coordinate probability.
Moments enumerate_moments(int m, double p, const std::function<double(StateMask)>& stat) {
  double e = 0.0, e2 = 0.0;
  for (std::size_t x = 0; x < (std::size_t{1} << m); ++x) {
    const int ones = std::popcount(static_cast<StateMask>(x));
    const double w = std::pow(p, ones) * std::pow(1.0 - p, m - ones);
    const double s = stat(static_cast<StateMask>(x));
    e += w * s;
    e2 += w * s * s;
  }
  return {e, e2 - e * e};
}

}  // namespace

TEST_CASE("two-runs closed forms") {
  CHECK(two_runs_variance({{2.0}}) == doctest::Approx(3.0 * 4.0 / 16.0));
  CHECK(two_runs_variance({{1.0, 1.0, 1.0}}) == doctest::Approx(13.0 / 16.0));
  CHECK(two_runs_variance({{0.0, 0.0}}) == doctest::Approx(0.0));
  CHECK_THROWS_AS(two_runs_functional({{0.0, 0.0}}), ZeroVariance);
  CHECK_THROWS_AS(two_runs_rate_bound({{0.0}}), ZeroVariance);

  // Var sandwich (1/16)|alpha|^2 <= Var <= (5/16)|alpha|^2.
  CounterRng rng(61, 0);
  for (int rep = 0; rep < 30; ++rep) {
    const int len = 1 + static_cast<int>(rng.next_u64() % 12);
    std::vector<double> alpha(static_cast<std::size_t>(len));
    double s2 = 0.0;
    for (double& a : alpha) {
      a = 2.0 * rng.next_unit() - 1.0;
      s2 += a * a;
    }
    const double var = two_runs_variance({alpha});
    CHECK(var >= s2 / 16.0 - 1e-12);
    CHECK(var <= 5.0 * s2 / 16.0 + 1e-12);
  }
}

TEST_CASE("two-runs functional is the standardized statistic") {
  const TwoRunsConfig cfg{{1.0, 2.0, 0.5}};
  const Functional f = two_runs_functional(cfg);
  CHECK(expectation(f, 1) == doctest::Approx(0.0).epsilon(1e-10));
  CHECK(variance(f) == doctest::Approx(1.0).epsilon(1e-10));
  const double mean = two_runs_mean(cfg);
  const double sd = std::sqrt(two_runs_variance(cfg));
  for (StateMask x = 0; x < 16; ++x) {
    double g = 0.0;
    for (std::size_t i = 0; i < cfg.alpha.size(); ++i) {
      if (((x >> i) & 1u) && ((x >> (i + 1)) & 1u)) g += cfg.alpha[i];
    }
    CHECK(f(x) == doctest::Approx((g - mean) / sd).epsilon(1e-12));
  }

  // alpha = (1): G has atoms {0,1}, so the standardized law has two points.
  const Functional f1 = two_runs_functional({{1.0}});
  CHECK(f1(0b00) == f1(0b01));
  CHECK(f1(0b00) == f1(0b10));
  CHECK(f1(0b11) != f1(0b00));
}

TEST_CASE("two-runs kernels reproduce the functional") {
  const TwoRunsConfig cfg{{1.0, 1.0, 1.0}};
  const auto [f, g] = two_runs_kernels(cfg);
  CHECK(f.norm_sq() + 2.0 * g.norm_sq() == doctest::Approx(1.0).epsilon(1e-12));
  const SpacePtr space = make_symmetric_space(static_cast<int>(cfg.alpha.size()) + 1);
  const Functional sum = multiple_integral(space, f) + multiple_integral(space, g);
  const Functional direct = two_runs_functional(cfg);
  for (StateMask x = 0; x < space->state_count(); ++x) {
    CHECK(sum(x) == doctest::Approx(direct(x)).epsilon(1e-11));
  }
}

TEST_CASE("two-runs kernel norms match their closed forms") {
  CounterRng rng(67, 0);
  for (int rep = 0; rep < 10; ++rep) {
    const int len = 2 + static_cast<int>(rng.next_u64() % 9);
    std::vector<double> alpha(static_cast<std::size_t>(len));
    for (double& a : alpha) a = 2.0 * rng.next_unit() - 1.0;
    const TwoRunsConfig cfg{alpha};
    const double var = two_runs_variance(cfg);
    if (!(var > 1e-6)) continue;
    const auto [f, g] = two_runs_kernels(cfg);

    double a4 = 0.0;
    for (double a : alpha) a4 += a * a * a * a;
    // sum_{k,l} g^4(l,k) = 2 sum_k alpha_k^4 / (8^4 Var^2)
    CHECK(g.pow4_sum() == doctest::Approx(2.0 * a4 / (4096.0 * var * var)).epsilon(1e-11));

    // sum_k (sum_l g^2(l,k))^2 = sum_k (alpha_k^2 + alpha_{k-1}^2)^2 / (8^4 Var^2)
    double row_sq = 0.0;
    for (int k = 0; k <= len; ++k) row_sq += g.row_norm_sq(k) * g.row_norm_sq(k);
    double closed = 0.0;
    for (int k = 0; k <= len; ++k) {
      const double ak = k < len ? alpha[static_cast<std::size_t>(k)] : 0.0;
      const double akm1 = k >= 1 ? alpha[static_cast<std::size_t>(k - 1)] : 0.0;
      const double s = ak * ak + akm1 * akm1;
      closed += s * s;
    }
    CHECK(row_sq == doctest::Approx(closed / (4096.0 * var * var)).epsilon(1e-11));

    // f(k) = (alpha_k + alpha_{k-1}) / (4 sd) exactly.
    for (int k = 0; k <= len; ++k) {
      const double fk = f.at(StateMask{1} << k);
      const double ak = k < len ? alpha[static_cast<std::size_t>(k)] : 0.0;
      const double akm1 = k >= 1 ? alpha[static_cast<std::size_t>(k - 1)] : 0.0;
      CHECK(fk == doctest::Approx((ak + akm1) / (4.0 * std::sqrt(var))).epsilon(1e-12));
    }
  }
}

TEST_CASE("two-runs rate bound") {
  CHECK(two_runs_rate_bound({{1.0}}) == doctest::Approx(16.0 / 3.0));
  // Scaling alpha leaves the ratio invariant.
  const std::vector<double> alpha = {1.0, -0.5, 2.0};
  std::vector<double> scaled;
  for (double a : alpha) scaled.push_back(3.0 * a);
  CHECK(two_runs_rate_bound({alpha}) == doctest::Approx(two_runs_rate_bound({scaled})).epsilon(1e-12));
  // All-ones window of length n decays like n^{-1/2}.
  const double r64 = two_runs_rate_bound({std::vector<double>(64, 1.0)});
  const double r256 = two_runs_rate_bound({std::vector<double>(256, 1.0)});
  CHECK(r64 / r256 == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("pattern construction") {
  const Pattern tri = Pattern::triangle();
  CHECK(tri.vertex_count == 3);
  CHECK(tri.edges.size() == 3);

  // Isolated vertices are dropped.
  const Pattern padded = Pattern::from_edges("padded", 5, {{0, 3}});
  CHECK(padded.vertex_count == 2);
  CHECK(padded.edges.size() == 1);

  CHECK_THROWS_AS(Pattern::from_edges("bad", 2, {}), DimensionMismatch);
  CHECK_THROWS_AS(Pattern::from_edges("bad", 2, {{0, 0}}), DimensionMismatch);
  CHECK_THROWS_AS(Pattern::from_edges("bad", 2, {{0, 1}, {1, 0}}), DimensionMismatch);

  const Pattern parsed = Pattern::parse_edge_list("1 2\n2 3\n1 3\n");
  CHECK(parsed.vertex_count == 3);
  CHECK(parsed.edges.size() == 3);
  CHECK_THROWS_AS(Pattern::parse_edge_list("1\n"), ConfigError);
}

TEST_CASE("psi") {
  const Pattern edge = Pattern::single_edge();
  CHECK(psi(10, 0.3, edge) == doctest::Approx(100.0 * 0.3));

  const Pattern tri = Pattern::triangle();
  CHECK(psi(10, 0.1, tri) == doctest::Approx(1.0));
  CHECK(psi(10, 1.0, tri) == doctest::Approx(100.0));

  // Monotone nondecreasing in p and n.
  double prev = 0.0;
  for (const double p : {0.1, 0.2, 0.4, 0.8}) {
    const double v = psi(8, p, tri);
    CHECK(v >= prev);
    prev = v;
  }
  CHECK(psi(9, 0.3, tri) >= psi(8, 0.3, tri));
}

TEST_CASE("subgraph counts and moments") {
  const Pattern tri = Pattern::triangle();
  CHECK(copy_count(4, tri) == doctest::Approx(4.0));
  CHECK(copy_count(2, Pattern::single_edge()) == doctest::Approx(1.0));
  CHECK(subgraph_moments(4, 0.5, tri).mean == doctest::Approx(0.5));

  for (const double p : {0.3, 0.5, 0.8}) {
    const Moments closed = subgraph_moments(5, p, tri);
    const Moments oracle = enumerate_moments(10, p, [&](StateMask x) {
      bool adj[5][5] = {};
      int id = 0;
      for (int u = 0; u < 5; ++u) {
        for (int v = u + 1; v < 5; ++v, ++id) adj[u][v] = (x >> id) & 1u;
      }
      int c = 0;
      for (int a = 0; a < 5; ++a)
        for (int b = a + 1; b < 5; ++b)
          for (int cc = b + 1; cc < 5; ++cc)
            if (adj[a][b] && adj[b][cc] && adj[a][cc]) ++c;
      return static_cast<double>(c);
    });
    CHECK(closed.mean == doctest::Approx(oracle.mean).epsilon(1e-11));
    CHECK(closed.var == doctest::Approx(oracle.var).epsilon(1e-11));
  }
}

TEST_CASE("subgraph functional") {
  const Pattern tri = Pattern::triangle();
  const Functional f = subgraph_functional(4, 0.5, tri);
  CHECK(expectation(f, 1) == doctest::Approx(0.0).epsilon(1e-10));
  CHECK(variance(f) == doctest::Approx(1.0).epsilon(1e-10));

  // Relabeling the pattern's vertices yields the identical functional.
  const Pattern tri_relabeled = Pattern::from_edges("t2", 3, {{2, 1}, {0, 2}, {1, 0}});
  const Functional g = subgraph_functional(4, 0.5, tri_relabeled);
  for (StateMask x = 0; x < 64; ++x) CHECK(f(x) == doctest::Approx(g(x)));

  CHECK_THROWS_AS(subgraph_functional(8, 0.5, tri), CapExceeded);
  const Functional edge2 = subgraph_functional(2, 0.3, Pattern::single_edge());
  CHECK(variance(edge2) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("degree count moments") {
  const Moments m1 = degree_count_moments({3, 0.5, 0});
  CHECK(m1.mean == doctest::Approx(0.75));
  CHECK(m1.var == doctest::Approx(0.9375));

  CHECK(degree_count_moments({4, 0.5, 3}).mean == doctest::Approx(0.5));
  CHECK(degree_count_moments({5, 1e-9, 0}).mean == doctest::Approx(5.0).epsilon(1e-6));

  for (int n = 3; n <= 5; ++n) {
    for (int d = 0; d < n; ++d) {
      for (const double p : {0.25, 0.5, 0.7}) {
        const Moments closed = degree_count_moments({n, p, d});
        const Moments oracle = enumerate_moments(n * (n - 1) / 2, p, [&](StateMask x) {
          int deg[5] = {0};
          int id = 0;
          for (int u = 0; u < n; ++u) {
            for (int v = u + 1; v < n; ++v, ++id) {
              if ((x >> id) & 1u) {
                ++deg[u];
                ++deg[v];
              }
            }
          }
          int c = 0;
          for (int v = 0; v < n; ++v) c += deg[v] == d ? 1 : 0;
          return static_cast<double>(c);
        });
        CHECK(closed.mean == doctest::Approx(oracle.mean).epsilon(1e-11));
        CHECK(closed.var == doctest::Approx(oracle.var).epsilon(1e-11));
      }
    }
  }
}

TEST_CASE("degree count functional and gradient structure") {
  const DegreeCountConfig cfg{3, 0.5, 0};
  const Functional f = degree_count_functional(cfg);
  CHECK(expectation(f, 1) == doctest::Approx(0.0).epsilon(1e-10));
  CHECK(variance(f) == doctest::Approx(1.0).epsilon(1e-10));

  // Raw V_0 atoms on K_3 are {0,1,3}; V_0 = 2 is impossible.
  const Moments mo = degree_count_moments(cfg);
  const double sd = std::sqrt(mo.var);
  std::set<int> raw;
  for (StateMask x = 0; x < 8; ++x) {
    raw.insert(static_cast<int>(std::lround(f(x) * sd + mo.mean)));
  }
  CHECK(raw == std::set<int>{0, 1, 3});

  // Pointwise gradient bounds and the adjacency support of D_l D_k.
  for (const int d : {0, 1, 2, 3}) {
    const DegreeCountConfig c4{4, 0.3, d};
    const Functional fd = degree_count_functional(c4);
    const Moments mo4 = degree_count_moments(c4);
    const double cap = 2.0 * std::sqrt(0.3 * 0.7) / std::sqrt(mo4.var);
    for (int k = 0; k < 6; ++k) {
      const Functional dk = gradient(fd, k);
      for (StateMask x = 0; x < 64; ++x) CHECK(std::fabs(dk(x)) <= cap + 1e-12);
      for (int l = 0; l < 6; ++l) {
        const auto ek = complete_graph_edge(4, k);
        const auto el = complete_graph_edge(4, l);
        int shared = 0;
        shared += (ek.first == el.first || ek.first == el.second) ? 1 : 0;
        shared += (ek.second == el.first || ek.second == el.second) ? 1 : 0;
        if (shared == 1) continue;
        const Functional dd = iterated_gradient(fd, k, l);
        for (StateMask x = 0; x < 64; ++x) CHECK(dd(x) == doctest::Approx(0.0).epsilon(1e-12));
      }
    }
  }

  // Six-case difference rule for raw V_d.
  for (const int d : {0, 1, 2}) {
    const DegreeCountConfig c4{4, 0.4, d};
    const Functional fd = degree_count_functional(c4);
    const Moments mo4 = degree_count_moments(c4);
    const double sd4 = std::sqrt(mo4.var);
    for (int k = 0; k < 6; ++k) {
      for (StateMask x = 0; x < 64; ++x) {
        const double diff = (fd(x | (1u << k)) - fd(x & ~(1u << k))) * sd4;
        const long r = std::lround(diff);
        CHECK(std::fabs(diff - r) < 1e-9);
        CHECK(r >= -2);
        CHECK(r <= 2);
        if (d == 0) CHECK(r <= 0);
      }
    }
  }

  CHECK_THROWS_AS(degree_count_functional({50, 0.5, 0}), CapExceeded);
}

TEST_CASE("degree rate prediction") {
  CHECK(degree_rate_prediction({100, 0.01, 0}) == doctest::Approx(0.1));
  CHECK(degree_rate_prediction({100, 0.01, 1}, DegreeRegime::liminf_np_positive) ==
        doctest::Approx(0.1));
  CHECK(degree_rate_prediction({100, 1e-3, 2}, DegreeRegime::np_to_zero) ==
        doctest::Approx(std::pow(0.1, -2.0) * std::sqrt(1e-3)));
  CHECK_THROWS_AS(degree_rate_prediction({100, 0.01, 1}), RegimeUnspecified);
}

TEST_CASE("complex moments (covariance pairs counted ordered)") {
  // n=4, kappa=2, p=1/2: enumeration gives mean 3/2 and variance 21/8; the
  // variance needs the ordered-pair factor two on the covariance term.
  const Moments m42 = complex_moments({4, 2, 0.5});
  CHECK(m42.mean == doctest::Approx(1.5));
  CHECK(m42.var == doctest::Approx(2.625));

  CHECK(complex_moments({3, 2, 0.5}).mean == doctest::Approx(1.5));
  CHECK(complex_moments({6, 2, 1.0 - 1e-12}).mean == doctest::Approx(0.0).epsilon(1e-9));

  for (int n = 4; n <= 5; ++n) {
    for (const double p : {0.25, 0.5, 0.75}) {
      const Moments closed = complex_moments({n, 2, p});
      const int faces = n * (n - 1) * (n - 2) / 6;
      const Moments oracle = enumerate_moments(faces, p, [&](StateMask x) {
        bool covered[5][5] = {};
        int id = 0;
        for (int a = 0; a < n; ++a)
          for (int b = a + 1; b < n; ++b)
            for (int c = b + 1; c < n; ++c, ++id)
              if ((x >> id) & 1u) covered[a][b] = covered[a][c] = covered[b][c] = true;
        int iso = 0;
        for (int a = 0; a < n; ++a)
          for (int b = a + 1; b < n; ++b) iso += covered[a][b] ? 0 : 1;
        return static_cast<double>(iso);
      });
      CHECK(closed.mean == doctest::Approx(oracle.mean).epsilon(1e-11));
      CHECK(closed.var == doctest::Approx(oracle.var).epsilon(1e-11));
    }
  }
}

TEST_CASE("complex functional") {
  const ComplexConfig cfg{4, 2, 0.5};
  const Functional f = complex_functional(cfg);
  CHECK(expectation(f, 1) == doctest::Approx(0.0).epsilon(1e-10));
  CHECK(variance(f) == doctest::Approx(1.0).epsilon(1e-10));

  // Mean over 16 states reproduces 1.5 after unstandardizing.
  const Moments mo = complex_moments(cfg);
  CHECK(mo.mean == doctest::Approx(1.5));

  // kappa = 1 is the isolated-vertex model on the same edge space.
  const Functional c1 = complex_functional({4, 1, 0.35});
  const Functional d0 = degree_count_functional({4, 0.35, 0});
  for (StateMask x = 0; x < 64; ++x) CHECK(c1(x) == doctest::Approx(d0(x)));
  const Moments mc1 = complex_moments({4, 1, 0.35});
  const Moments md0 = degree_count_moments({4, 0.35, 0});
  CHECK(mc1.mean == doctest::Approx(md0.mean));
  CHECK(mc1.var == doctest::Approx(md0.var));

  // Gradient bounds: |D_k F| <= (kappa+1) sqrt(pq) / sd, and iterated
  // gradients vanish unless the faces share a (kappa-1)-face.
  const double cap = 3.0 * std::sqrt(0.25) / std::sqrt(mo.var);
  for (int k = 0; k < 4; ++k) {
    const Functional dk = gradient(f, k);
    for (StateMask x = 0; x < 16; ++x) CHECK(std::fabs(dk(x)) <= cap + 1e-12);
  }
  // On n=4, kappa=2 every pair of distinct triangles shares an edge, so use
  // n=5 for the vanishing statement.
  const Functional f5 = complex_functional({5, 2, 0.4});
  // Faces are lex triples of {0..4}: face 0 = {0,1,2}, face 9 = {2,3,4}:
  // they share only vertex 2, i.e. no common edge.
  const Functional dd = iterated_gradient(f5, 0, 9);
  for (StateMask x = 0; x < f5.space().state_count(); ++x) {
    CHECK(dd(x) == doctest::Approx(0.0).epsilon(1e-12));
  }

  CHECK_THROWS_AS(complex_functional({12, 3, 0.5}), CapExceeded);
}

TEST_CASE("complex rate prediction") {
  CHECK(complex_rate_prediction({100, 1, 0.01}) == doctest::Approx(0.1));
  CHECK(complex_rate_prediction({100, 2, 0.01}) == doctest::Approx(0.01));
  CHECK(complex_rate_prediction({200, 2, 0.01}) < complex_rate_prediction({100, 2, 0.01}));
}

TEST_CASE("hypercube moments") {
  const Moments m20 = hypercube_moments({2, 0.5, 0});
  CHECK(m20.mean == doctest::Approx(1.0));
  CHECK(m20.var == doctest::Approx(1.25));

  CHECK(hypercube_moments({4, 1e-9, 0}).mean == doctest::Approx(16.0).epsilon(1e-6));

  for (int n = 2; n <= 3; ++n) {
    for (const double p : {0.3, 0.5, 0.65}) {
      for (int d = 0; d <= n; ++d) {
        const Moments closed = hypercube_moments({n, p, d});
        const Moments oracle = enumerate_moments(n * (1 << (n - 1)), p, [&](StateMask x) {
          const int verts = 1 << n;
          int deg[8] = {0};
          int id = 0;
          for (int i = 0; i < n; ++i) {
            for (int v = 0; v < verts; ++v) {
              if (((v >> i) & 1) == 0) {
                if ((x >> id) & 1u) {
                  ++deg[v];
                  ++deg[v | (1 << i)];
                }
                ++id;
              }
            }
          }
          int c = 0;
          for (int v = 0; v < verts; ++v) c += deg[v] == d ? 1 : 0;
          return static_cast<double>(c);
        });
        CHECK(closed.mean == doctest::Approx(oracle.mean).epsilon(1e-11));
        CHECK(closed.var == doctest::Approx(oracle.var).epsilon(1e-11));
      }
    }
  }
}

TEST_CASE("hypercube functional") {
  const Functional f = hypercube_functional({3, 0.4, 0});
  CHECK(expectation(f, 1) == doctest::Approx(0.0).epsilon(1e-10));
  CHECK(variance(f) == doctest::Approx(1.0).epsilon(1e-10));

  // d = n is the complement model: V_3 at p equals V_0 at 1-p with all
  // coordinates flipped.
  const Functional f3 = hypercube_functional({3, 0.4, 3});
  const Functional f0 = hypercube_functional({3, 0.6, 0});
  const StateMask full = (StateMask{1} << 12) - 1;
  for (StateMask x = 0; x <= full; ++x) {
    CHECK(f3(x) == doctest::Approx(f0(full & ~x)).epsilon(1e-11));
  }

  CHECK_THROWS_AS(hypercube_functional({4, 0.5, 0}), CapExceeded);
}

TEST_CASE("hypercube gradient bounds") {
  const HypercubeConfig cfg{3, 0.35, 1};
  const Functional f = hypercube_functional(cfg);
  const Moments mo = hypercube_moments(cfg);
  const double pq = 0.35 * 0.65;
  const double cap1 = 2.0 * std::sqrt(pq) / std::sqrt(mo.var);
  const double cap2 = 4.0 * pq / std::sqrt(mo.var);
  const int m = 12;
  // Edge id -> endpoints, matching the constructor's direction-major order.
  auto endpoints = [&](int id) {
    const int dir = id / 4;
    const int rest = id % 4;
    const int low = rest & ((1 << dir) - 1);
    const int v = ((rest >> dir) << (dir + 1)) | low;
    return std::pair<int, int>{v, v | (1 << dir)};
  };
  for (int k = 0; k < m; ++k) {
    const Functional dk = gradient(f, k);
    for (StateMask x = 0; x < f.space().state_count(); ++x) {
      CHECK(std::fabs(dk(x)) <= cap1 + 1e-12);
    }
    for (int l = 0; l < m; ++l) {
      if (l == k) continue;
      const auto ek = endpoints(k), el = endpoints(l);
      int shared = 0;
      shared += (ek.first == el.first || ek.first == el.second) ? 1 : 0;
      shared += (ek.second == el.first || ek.second == el.second) ? 1 : 0;
      const Functional dd = iterated_gradient(f, k, l);
      for (StateMask x = 0; x < f.space().state_count(); ++x) {
        if (shared == 1) {
          CHECK(std::fabs(dd(x)) <= cap2 + 1e-12);
        } else {
          CHECK(dd(x) == doctest::Approx(0.0).epsilon(1e-12));
        }
      }
    }
  }
}

TEST_CASE("hypercube rate prediction") {
  CHECK(hypercube_rate_prediction({10, 0.1, 0}, 0.5) == doctest::Approx(std::pow(1.5, -5.0)));
  CHECK(hypercube_rate_prediction({0, 0.1, 0}, 0.5) == doctest::Approx(1.0));
  CHECK(hypercube_rate_prediction({11, 0.1, 0}, 0.5) <
        hypercube_rate_prediction({10, 0.1, 0}, 0.5));
  CHECK_THROWS_AS(hypercube_rate_prediction({10, 0.1, 0}, 1.5), BadEpsilon);
}

TEST_CASE("subgraph rate prediction") {
  const Pattern tri = Pattern::triangle();
  const SubgraphRate r = subgraph_rate_prediction(10, 0.1, tri);
  CHECK(r.rate == doctest::Approx(1.0 / std::sqrt(0.9)));
  const Pattern edge = Pattern::single_edge();
  const SubgraphRate re = subgraph_rate_prediction(50, 0.2, edge);
  CHECK(re.rate == doctest::Approx(1.0 / std::sqrt(0.8 * 2500.0 * 0.2)));
  CHECK(re.sigma2_order ==
        doctest::Approx(0.8 * std::pow(50.0, 4.0) * 0.04 / (2500.0 * 0.2)));
}

TEST_CASE("cap helpers") {
  CHECK(max_exact_n_for_edges() == 7);
  CHECK(max_exact_n_for_hypercube() == 3);
  CHECK(max_exact_n_for_complex(2) >= 5);
}
