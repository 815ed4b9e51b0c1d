#include "rsl/verify.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <ostream>
#include <sstream>

#include "rsl/distance.hpp"
#include "rsl/malliavin.hpp"
#include "rsl/models.hpp"
#include "rsl/normal.hpp"
#include "rsl/parallel.hpp"
#include "rsl/rates.hpp"
#include "rsl/rng.hpp"
#include "rsl/sampling.hpp"
#include "rsl/stein.hpp"

namespace rsl {

namespace {

using Clock = std::chrono::steady_clock;

struct Suite {
  const VerifyOptions& opts;
  std::vector<CheckResult> results;

  bool enabled(const std::string& name) const {
    return opts.filter.empty() || name.find(opts.filter) != std::string::npos;
  }

  // body returns pass and fills detail.
  void add(const std::string& name, const std::function<bool(std::string&)>& body) {
    if (!enabled(name)) return;
    CheckResult r;
    r.name = name;
    const auto t0 = Clock::now();
    try {
      r.pass = body(r.detail);
    } catch (const std::exception& e) {
      r.pass = false;
      r.detail = std::string("exception: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    if (opts.log) {
      (*opts.log) << (r.pass ? "[PASS] " : "[FAIL] ") << r.name
                  << (r.detail.empty() ? "" : "  " + r.detail) << "  ("
                  << format_double(r.seconds) << " s)\n";
    }
    results.push_back(std::move(r));
  }
};

std::string fmt(double v) { return format_double(v); }

// ---------------------------------------------------------------------------
// Deterministic random inputs.
// ---------------------------------------------------------------------------

SpacePtr random_space(CounterRng& rng, int m) {
  std::vector<double> probs(static_cast<std::size_t>(m));
  for (double& p : probs) p = 0.05 + 0.9 * rng.next_unit();
  return make_space(std::move(probs));
}

Functional random_functional(const SpacePtr& space, CounterRng& rng) {
  std::vector<double> vals(space->state_count());
  for (double& v : vals) v = 2.0 * rng.next_unit() - 1.0;
  return Functional(space, std::move(vals));
}

Kernel random_kernel(CounterRng& rng, int order, int m) {
  Kernel k(order);
  std::vector<int> idx(static_cast<std::size_t>(order));
  const int entries = 2 * m;
  for (int e = 0; e < entries; ++e) {
    // random strictly increasing index tuple
    std::vector<int> pool;
    for (int i = 0; i < m; ++i) pool.push_back(i);
    for (int j = 0; j < order; ++j) {
      const std::size_t pick = static_cast<std::size_t>(rng.next_u64() % pool.size());
      idx[static_cast<std::size_t>(j)] = pool[pick];
      pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(pick));
    }
    std::sort(idx.begin(), idx.end());
    k.set_symmetric(idx, 2.0 * rng.next_unit() - 1.0);
  }
  return k;
}

double rel_err(double got, double want) {
  const double scale = std::max({1.0, std::fabs(got), std::fabs(want)});
  return std::fabs(got - want) / scale;
}

// ---------------------------------------------------------------------------
// Enumeration oracles, written independently of the model constructors.
// ---------------------------------------------------------------------------

Moments enumerate_moments(int m, double p, const std::function<double(StateMask)>& stat) {
  const double q = 1.0 - p;
  double e = 0.0, e2 = 0.0;
  const std::size_t states = std::size_t{1} << m;
  for (std::size_t x = 0; x < states; ++x) {
    const int ones = std::popcount(static_cast<StateMask>(x));
    const double w = std::pow(p, ones) * std::pow(q, m - ones);
    const double s = stat(static_cast<StateMask>(x));
    e += w * s;
    e2 += w * s * s;
  }
  return {e, e2 - e * e};
}

double oracle_degree_count(int n, int d, StateMask x) {
  int deg[32] = {0};
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
  return c;
}

double oracle_edge_count(int n, StateMask x) {
  (void)n;
  return std::popcount(x);
}

double oracle_path2_count(int n, StateMask x) {
  int deg[32] = {0};
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
  for (int v = 0; v < n; ++v) c += deg[v] * (deg[v] - 1) / 2;
  return c;
}

double oracle_triangle_count(int n, StateMask x) {
  bool adj[8][8] = {};
  int id = 0;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v, ++id) {
      adj[u][v] = adj[v][u] = (x >> id) & 1u;
    }
  }
  int c = 0;
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      for (int cc = b + 1; cc < n; ++cc) {
        if (adj[a][b] && adj[b][cc] && adj[a][cc]) ++c;
      }
    }
  }
  return c;
}

// kappa = 2: coordinates are the triangles (triples) of [n] in lex order;
// count edges contained in no present triple.
double oracle_complex2_isolated(int n, StateMask x) {
  int id = 0;
  bool covered[8][8] = {};
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      for (int c = b + 1; c < n; ++c, ++id) {
        if ((x >> id) & 1u) {
          covered[a][b] = covered[a][c] = covered[b][c] = true;
        }
      }
    }
  }
  int iso = 0;
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) iso += covered[a][b] ? 0 : 1;
  }
  return iso;
}

double oracle_hypercube_count(int n, int d, StateMask x) {
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
  return c;
}

double oracle_two_runs(const std::vector<double>& alpha, StateMask x) {
  double g = 0.0;
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    if (((x >> i) & 1u) && ((x >> (i + 1)) & 1u)) g += alpha[i];
  }
  return g;
}

// ---------------------------------------------------------------------------
// Criterion 3/4 corpus.
// ---------------------------------------------------------------------------

struct CorpusEntry {
  std::string name;
  Functional f;
  int chaos_order = 0;  // > 0 when pure chaos with a known kernel
  Kernel kernel{0};
};

std::vector<CorpusEntry> build_corpus(std::uint64_t seed) {
  std::vector<CorpusEntry> corpus;
  auto add = [&](std::string name, Functional f) {
    corpus.push_back({std::move(name), std::move(f), 0, Kernel(0)});
  };

  for (const double p : {0.35, 0.6}) {
    for (int d = 0; d <= 3; ++d) add("degree(n=4,p=" + fmt(p) + ",d=" + std::to_string(d) + ")",
                                     degree_count_functional({4, p, d}));
  }
  for (const double p : {0.2, 0.5}) {
    for (int d = 0; d <= 2; ++d) add("degree(n=5,p=" + fmt(p) + ",d=" + std::to_string(d) + ")",
                                     degree_count_functional({5, p, d}));
  }
  add("degree(n=6,p=0.3,d=0)", degree_count_functional({6, 0.3, 0}));

  add("subgraph(edge,n=4,p=0.4)", subgraph_functional(4, 0.4, Pattern::single_edge()));
  add("subgraph(path2,n=4,p=0.3)", subgraph_functional(4, 0.3, Pattern::path2()));
  add("subgraph(path2,n=4,p=0.6)", subgraph_functional(4, 0.6, Pattern::path2()));
  add("subgraph(triangle,n=4,p=0.5)", subgraph_functional(4, 0.5, Pattern::triangle()));
  add("subgraph(edge,n=5,p=0.25)", subgraph_functional(5, 0.25, Pattern::single_edge()));
  add("subgraph(path2,n=5,p=0.5)", subgraph_functional(5, 0.5, Pattern::path2()));
  add("subgraph(triangle,n=5,p=0.35)", subgraph_functional(5, 0.35, Pattern::triangle()));

  add("complex(n=4,k=2,p=0.4)", complex_functional({4, 2, 0.4}));
  add("complex(n=5,k=2,p=0.3)", complex_functional({5, 2, 0.3}));
  add("complex(n=5,k=2,p=0.6)", complex_functional({5, 2, 0.6}));
  add("complex(n=4,k=3,p=0.5)", complex_functional({4, 3, 0.5}));
  add("complex(n=5,k=3,p=0.5)", complex_functional({5, 3, 0.5}));
  add("complex(n=5,k=4,p=0.45)", complex_functional({5, 4, 0.45}));

  for (int d = 0; d <= 2; ++d) {
    add("hypercube(n=2,p=0.45,d=" + std::to_string(d) + ")", hypercube_functional({2, 0.45, d}));
  }
  for (int d = 0; d <= 3; ++d) {
    add("hypercube(n=3,p=0.3,d=" + std::to_string(d) + ")", hypercube_functional({3, 0.3, d}));
  }

  add("tworuns(1)", two_runs_functional({{1.0}}));
  add("tworuns(1,1,1)", two_runs_functional({{1.0, 1.0, 1.0}}));
  add("tworuns(1,2,1,2,1)", two_runs_functional({{1.0, 2.0, 1.0, 2.0, 1.0}}));
  add("tworuns(ones,8)", two_runs_functional({std::vector<double>(8, 1.0)}));
  {
    CounterRng rng(seed, 1001);
    std::vector<double> alpha(10);
    for (double& a : alpha) a = 0.5 + rng.next_unit();
    add("tworuns(random,10)", two_runs_functional({alpha}));
  }

  // Pure chaos entries on symmetric spaces, standardized by scaling the
  // kernel through the isometry.
  CounterRng rng(seed, 1002);
  for (int rep = 0; rep < 4; ++rep) {
    const int m = 6 + static_cast<int>(rng.next_u64() % 4);  // 6..9
    const int order = 2 + static_cast<int>(rng.next_u64() % 2);
    const SpacePtr space = make_symmetric_space(m);
    Kernel k = random_kernel(rng, order, m);
    const double v = kernel_isometry_product(k, k);
    if (!(v > 0.0)) continue;
    k = k.scaled(1.0 / std::sqrt(v));
    CorpusEntry e{"chaos(order=" + std::to_string(order) + ",m=" + std::to_string(m) + ",rep=" +
                      std::to_string(rep) + ")",
                  multiple_integral(space, k), order, k};
    corpus.push_back(std::move(e));
  }
  // Mixed-bias chaos entries exercise the biased-basis route of every bound.
  for (int rep = 0; rep < 3; ++rep) {
    const int m = 6;
    SpacePtr space = random_space(rng, m);
    Functional f = random_functional(space, rng);
    corpus.push_back({"random(m=6,rep=" + std::to_string(rep) + ")", standardize(f), 0, Kernel(0)});
  }
  return corpus;
}

}  // namespace

// ---------------------------------------------------------------------------

std::vector<CheckResult> run_acceptance(const VerifyOptions& opts) {
  Suite suite{opts, {}};

  // ---- criterion 1: operator identity suite --------------------------------
  const auto t1 = Clock::now();
  constexpr int kReps = 200;
  constexpr double kTol = 1e-10;

  suite.add("1.duality", [&](std::string& detail) {
    CounterRng rng(opts.seed, 11);
    double worst = 0.0;
    for (int rep = 0; rep < kReps; ++rep) {
      const int m = 1 + static_cast<int>(rng.next_u64() % 10);
      const SpacePtr space = random_space(rng, m);
      const Functional f = random_functional(space, rng);
      std::vector<Functional> u;
      for (int k = 0; k < m; ++k) u.push_back(random_functional(space, rng));
      double lhs = 0.0;
      for (int k = 0; k < m; ++k) {
        lhs += expectation(gradient(f, k) * u[static_cast<std::size_t>(k)], 1);
      }
      const double rhs = expectation(f * divergence(u), 1);
      worst = std::max(worst, rel_err(lhs, rhs));
    }
    detail = "worst rel err " + fmt(worst);
    return worst <= kTol;
  });

  suite.add("1.isometry", [&](std::string& detail) {
    CounterRng rng(opts.seed, 12);
    double worst = 0.0;
    for (int rep = 0; rep < kReps; ++rep) {
      const int m = 3 + static_cast<int>(rng.next_u64() % 8);
      const SpacePtr space = random_space(rng, m);
      const int p = 1 + static_cast<int>(rng.next_u64() % 3);
      const int q = 1 + static_cast<int>(rng.next_u64() % 3);
      const Kernel f = random_kernel(rng, p, m);
      const Kernel g = random_kernel(rng, q, m);
      const double lhs =
          expectation(multiple_integral(space, f) * multiple_integral(space, g), 1);
      const double rhs = p == q ? kernel_isometry_product(f, g) : 0.0;
      worst = std::max(worst, rel_err(lhs, rhs));
    }
    detail = "worst rel err " + fmt(worst);
    return worst <= kTol;
  });

  suite.add("1.product-formula", [&](std::string& detail) {
    CounterRng rng(opts.seed, 13);
    double worst = 0.0;
    for (int rep = 0; rep < kReps; ++rep) {
      const int m = 1 + static_cast<int>(rng.next_u64() % 10);
      const SpacePtr space = random_space(rng, m);
      const Functional f = random_functional(space, rng);
      const Functional g = random_functional(space, rng);
      const Functional fg = f * g;
      for (int k = 0; k < m; ++k) {
        const Functional lhs = gradient(fg, k);
        const Functional df = gradient(f, k);
        const Functional dg = gradient(g, k);
        const double inv = 1.0 / space->sqrt_pq(k);
        for (std::size_t x = 0; x < space->state_count(); ++x) {
          const double xk = (x >> k) & 1u ? 1.0 : -1.0;
          const double rhs = g(static_cast<StateMask>(x)) * df(static_cast<StateMask>(x)) +
                             f(static_cast<StateMask>(x)) * dg(static_cast<StateMask>(x)) -
                             xk * inv * df(static_cast<StateMask>(x)) * dg(static_cast<StateMask>(x));
          worst = std::max(worst, std::fabs(lhs(static_cast<StateMask>(x)) - rhs));
        }
      }
    }
    detail = "worst abs err " + fmt(worst);
    return worst <= 1e-12;
  });

  suite.add("1.centering", [&](std::string& detail) {
    CounterRng rng(opts.seed, 14);
    double worst = 0.0;
    for (int rep = 0; rep < kReps; ++rep) {
      const int m = 1 + static_cast<int>(rng.next_u64() % 10);
      const SpacePtr space = random_space(rng, m);
      const Functional f = random_functional(space, rng);
      const Functional ll = apply_L(apply_L_inv(f));
      const double mean = expectation(f, 1);
      for (std::size_t x = 0; x < space->state_count(); ++x) {
        worst = std::max(worst, std::fabs(ll(static_cast<StateMask>(x)) -
                                          (f(static_cast<StateMask>(x)) - mean)));
      }
    }
    detail = "worst abs err " + fmt(worst);
    return worst <= kTol;
  });

  suite.add("1.contraction", [&](std::string& detail) {
    CounterRng rng(opts.seed, 15);
    double worst = -1.0;
    for (int rep = 0; rep < kReps; ++rep) {
      const int m = 1 + static_cast<int>(rng.next_u64() % 10);
      const SpacePtr space = random_space(rng, m);
      const Functional f = random_functional(space, rng);
      const Functional linv = apply_L_inv(f);
      for (int k = 0; k < m; ++k) {
        const Functional dl = gradient(linv, k);
        const Functional df = gradient(f, k);
        for (const double qq : {2.0, 4.0}) {
          const double lhs = std::pow(abs_moment(dl, qq), 1.0 / qq);
          const double rhs = std::pow(abs_moment(df, qq), 1.0 / qq);
          worst = std::max(worst, lhs - rhs);
        }
      }
    }
    detail = "worst excess " + fmt(worst);
    return worst <= kTol;
  });

  suite.add("1.poincare", [&](std::string& detail) {
    CounterRng rng(opts.seed, 16);
    double worst_violation = -1.0, worst_equality = 0.0;
    bool strict_ok = true;
    for (int rep = 0; rep < kReps; ++rep) {
      const int m = 1 + static_cast<int>(rng.next_u64() % 10);
      const SpacePtr space = random_space(rng, m);
      const Functional f = random_functional(space, rng);
      double energy = 0.0;
      for (int k = 0; k < m; ++k) energy += expectation(gradient(f, k), 2);
      const double var = variance(f);
      worst_violation = std::max(worst_violation, var - energy);
      // Equality case: chaos support at levels <= 1.
      std::vector<double> coeffs(space->state_count(), 0.0);
      coeffs[0] = 2.0 * rng.next_unit() - 1.0;
      for (int k = 0; k < m; ++k) {
        coeffs[std::size_t{1} << k] = 2.0 * rng.next_unit() - 1.0;
      }
      const Functional low = from_chaos(ChaosExpansion(space, std::move(coeffs)));
      double low_energy = 0.0;
      for (int k = 0; k < m; ++k) low_energy += expectation(gradient(low, k), 2);
      worst_equality = std::max(worst_equality, rel_err(variance(low), low_energy));
      // Strictness: the gap must match the higher-level mass
      // sum_{|A|>=2} (|A|-1) c_A^2 exactly.
      if (m >= 2) {
        const ChaosExpansion c = to_chaos(f);
        double gap_expect = 0.0;
        for (std::size_t a = 0; a < space->state_count(); ++a) {
          const int lvl = std::popcount(static_cast<StateMask>(a));
          if (lvl >= 2) gap_expect += (lvl - 1) * c.coeff(static_cast<StateMask>(a)) *
                                      c.coeff(static_cast<StateMask>(a));
        }
        if (rel_err(energy - var, gap_expect) > kTol) strict_ok = false;
      }
    }
    detail = "worst violation " + fmt(worst_violation) + ", equality err " + fmt(worst_equality);
    return worst_violation <= kTol && worst_equality <= kTol && strict_ok;
  });

  suite.add("1.inner-variance", [&](std::string& detail) {
    CounterRng rng(opts.seed, 17);
    double worst = 0.0;
    for (int rep = 0; rep < kReps; ++rep) {
      const int m = 1 + static_cast<int>(rng.next_u64() % 10);
      const SpacePtr space = random_space(rng, m);
      const Functional f = random_functional(space, rng);
      worst = std::max(worst, rel_err(expectation(malliavin_inner(f), 1), variance(f)));
    }
    detail = "worst rel err " + fmt(worst);
    return worst <= kTol;
  });

  suite.add("1.gamma0-variance", [&](std::string& detail) {
    CounterRng rng(opts.seed, 18);
    double worst = 0.0;
    for (int rep = 0; rep < kReps; ++rep) {
      const int m = 1 + static_cast<int>(rng.next_u64() % 10);
      const SpacePtr space = random_space(rng, m);
      const Functional f = random_functional(space, rng);
      worst = std::max(worst, rel_err(expectation(gamma0(f, neg_L_inv(f)), 1), variance(f)));
    }
    detail = "worst rel err " + fmt(worst);
    return worst <= kTol;
  });

  suite.add("1.runtime", [&](std::string& detail) {
    const double s = std::chrono::duration<double>(Clock::now() - t1).count();
    detail = fmt(s) + " s (budget 30)";
    return s < 30.0;
  });

  // ---- criterion 2: closed forms vs brute force -----------------------------
  const auto t2 = Clock::now();
  constexpr double kMomTol = 1e-9;

  suite.add("2.moments.degree", [&](std::string& detail) {
    double worst = 0.0;
    for (int n = 3; n <= 6; ++n) {
      for (const double p : {0.3, 0.5, 0.7}) {
        for (int d = 0; d < n; ++d) {
          const Moments closed = degree_count_moments({n, p, d});
          const Moments oracle = enumerate_moments(
              n * (n - 1) / 2, p, [&](StateMask x) { return oracle_degree_count(n, d, x); });
          worst = std::max({worst, rel_err(closed.mean, oracle.mean), rel_err(closed.var, oracle.var)});
        }
      }
    }
    detail = "worst rel err " + fmt(worst);
    return worst <= kMomTol;
  });

  suite.add("2.moments.subgraph", [&](std::string& detail) {
    double worst = 0.0;
    struct Case {
      Pattern pat;
      std::function<double(int, StateMask)> oracle;
    };
    const std::vector<Case> cases = {
        {Pattern::single_edge(), [](int n, StateMask x) { return oracle_edge_count(n, x); }},
        {Pattern::path2(), [](int n, StateMask x) { return oracle_path2_count(n, x); }},
        {Pattern::triangle(), [](int n, StateMask x) { return oracle_triangle_count(n, x); }}};
    for (const auto& c : cases) {
      for (int n = c.pat.vertex_count; n <= 5; ++n) {
        for (const double p : {0.3, 0.5, 0.8}) {
          const Moments closed = subgraph_moments(n, p, c.pat);
          const Moments oracle = enumerate_moments(
              n * (n - 1) / 2, p, [&](StateMask x) { return c.oracle(n, x); });
          worst = std::max({worst, rel_err(closed.mean, oracle.mean), rel_err(closed.var, oracle.var)});
        }
      }
    }
    detail = "worst rel err " + fmt(worst);
    return worst <= kMomTol;
  });

  suite.add("2.moments.complex", [&](std::string& detail) {
    double worst = 0.0;
    for (int n = 3; n <= 5; ++n) {
      for (const double p : {0.25, 0.5, 0.75}) {
        const Moments closed = complex_moments({n, 2, p});
        const int faces = n * (n - 1) * (n - 2) / 6;
        const Moments oracle =
            enumerate_moments(faces, p, [&](StateMask x) { return oracle_complex2_isolated(n, x); });
        worst = std::max({worst, rel_err(closed.mean, oracle.mean), rel_err(closed.var, oracle.var)});
      }
    }
    detail = "worst rel err " + fmt(worst);
    return worst <= kMomTol;
  });

  suite.add("2.moments.hypercube", [&](std::string& detail) {
    double worst = 0.0;
    for (int n = 2; n <= 3; ++n) {
      for (const double p : {0.3, 0.5, 0.7}) {
        for (int d = 0; d <= n; ++d) {
          const Moments closed = hypercube_moments({n, p, d});
          const Moments oracle = enumerate_moments(
              n * (1 << (n - 1)), p, [&](StateMask x) { return oracle_hypercube_count(n, d, x); });
          worst = std::max({worst, rel_err(closed.mean, oracle.mean), rel_err(closed.var, oracle.var)});
        }
      }
    }
    detail = "worst rel err " + fmt(worst);
    return worst <= kMomTol;
  });

  suite.add("2.moments.tworuns", [&](std::string& detail) {
    CounterRng rng(opts.seed, 21);
    double worst = 0.0;
    for (int len = 1; len <= 15; ++len) {
      std::vector<double> alpha(static_cast<std::size_t>(len));
      for (double& a : alpha) a = 2.0 * rng.next_unit() - 1.0;
      const TwoRunsConfig cfg{alpha};
      const Moments closed{two_runs_mean(cfg), two_runs_variance(cfg)};
      const Moments oracle =
          enumerate_moments(len + 1, 0.5, [&](StateMask x) { return oracle_two_runs(alpha, x); });
      worst = std::max({worst, rel_err(closed.mean, oracle.mean), rel_err(closed.var, oracle.var)});
    }
    detail = "worst rel err " + fmt(worst);
    return worst <= kMomTol;
  });

  suite.add("2.runtime", [&](std::string& detail) {
    const double s = std::chrono::duration<double>(Clock::now() - t2).count();
    detail = fmt(s) + " s (budget 60)";
    return s < 60.0;
  });

  // ---- criteria 3 and 4: bound validity and internal consistency -----------
  struct CorpusEval {
    std::string name;
    double dk = 0.0, w1 = 0.0;
    double r0 = 0.0, r1 = 0.0, r2 = 0.0, so_r1 = 0.0, so_r2 = 0.0, wass = 0.0;
    double first = 0.0, delta2 = 0.0;
    BoundTerms terms;
    double fourth = -1.0;  // fourth-moment bound when pure chaos
  };
  struct CorpusState {
    std::vector<CorpusEval> evals;
    std::size_t entries = 0;
    int families = 0;
    double seconds = 0.0;
    bool built = false;
  };
  CorpusState corpus_state;
  auto get_evals = [&]() -> const std::vector<CorpusEval>& {
    if (!corpus_state.built) {
      const auto t0 = Clock::now();
      const std::vector<CorpusEntry> corpus = build_corpus(opts.seed);
      corpus_state.entries = corpus.size();
      for (const char* tag : {"degree", "subgraph", "complex", "hypercube", "tworuns"}) {
        for (const auto& e : corpus) {
          if (e.name.rfind(tag, 0) == 0) {
            ++corpus_state.families;
            break;
          }
        }
      }
      for (const auto& e : corpus) {
        CorpusEval ev;
        ev.name = e.name;
        ev.dk = kolmogorov_exact(e.f);
        ev.w1 = wasserstein_exact_normal(e.f);
        ev.terms = bound_terms(e.f);
        ev.so_r1 = second_order_kolmogorov(ev.terms, SecondOrderVariant::R1);
        ev.so_r2 = second_order_kolmogorov(ev.terms, SecondOrderVariant::R2);
        ev.wass = second_order_wasserstein(ev.terms);
        ev.first = first_term_inner(e.f);
        ev.delta2 = 2.0 * r1_delta_l1(e.f);
        ev.r1 = ev.first + ev.delta2;
        ev.r2 = kol_r2(e.f);
        ev.r0 = kol_r0(e.f, 32);
        if (e.chaos_order > 0) {
          ev.fourth = fourth_moment_bound(e.f, e.chaos_order, e.kernel).bound;
        }
        corpus_state.evals.push_back(std::move(ev));
      }
      corpus_state.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
      corpus_state.built = true;
    }
    return corpus_state.evals;
  };

  suite.add("3.corpus", [&](std::string& detail) {
    get_evals();
    detail = std::to_string(corpus_state.entries) + " instances, " +
             std::to_string(corpus_state.families) + "/5 model families";
    return corpus_state.entries >= 40 && corpus_state.families == 5;
  });

  auto validity_check = [&](const std::string& name,
                            const std::function<double(const CorpusEval&)>& bound,
                            const std::function<double(const CorpusEval&)>& target) {
    suite.add(name, [&, bound, target](std::string& detail) {
      double worst = -std::numeric_limits<double>::infinity();
      std::string worst_name = "(none)";
      for (const auto& ev : get_evals()) {
        const double b = bound(ev);
        if (b < 0.0) continue;  // not applicable
        const double excess = target(ev) - b;
        if (excess > worst) {
          worst = excess;
          worst_name = ev.name;
        }
      }
      detail = "worst excess " + fmt(worst) + " at " + worst_name;
      return worst <= 1e-9;
    });
  };

  const auto dk_of = [](const CorpusEval& ev) { return ev.dk; };
  validity_check("3.validity.kol_r0", [](const CorpusEval& ev) { return ev.r0; }, dk_of);
  validity_check("3.validity.kol_r1", [](const CorpusEval& ev) { return ev.r1; }, dk_of);
  validity_check("3.validity.kol_r2", [](const CorpusEval& ev) { return ev.r2; }, dk_of);
  validity_check("3.validity.second-order-r1", [](const CorpusEval& ev) { return ev.so_r1; }, dk_of);
  validity_check("3.validity.second-order-r2", [](const CorpusEval& ev) { return ev.so_r2; }, dk_of);
  validity_check("3.validity.fourth-moment", [](const CorpusEval& ev) { return ev.fourth; }, dk_of);
  validity_check("3.validity.wasserstein", [](const CorpusEval& ev) { return ev.wass; },
                 [](const CorpusEval& ev) { return ev.w1; });

  suite.add("3.runtime", [&](std::string& detail) {
    get_evals();
    detail = fmt(corpus_state.seconds) + " s (budget 300)";
    return corpus_state.seconds < 300.0;
  });

  suite.add("4.first-term-vs-B12", [&](std::string& detail) {
    double worst = -std::numeric_limits<double>::infinity();
    std::string worst_name = "(none)";
    for (const auto& ev : get_evals()) {
      const double rhs = 0.5 * std::sqrt(15.0) * std::sqrt(ev.terms.b1) +
                         0.5 * std::sqrt(3.0) * std::sqrt(ev.terms.b2);
      if (ev.first - rhs > worst) {
        worst = ev.first - rhs;
        worst_name = ev.name;
      }
    }
    detail = "worst excess " + fmt(worst) + " at " + worst_name;
    return worst <= 1e-9;
  });

  suite.add("4.delta-term-vs-B345", [&](std::string& detail) {
    double worst = -std::numeric_limits<double>::infinity();
    std::string worst_name = "(none)";
    for (const auto& ev : get_evals()) {
      const double rhs = 4.0 * std::sqrt(ev.terms.b3) + 4.0 * std::sqrt(6.0) * std::sqrt(ev.terms.b4) +
                         4.0 * std::sqrt(3.0) * std::sqrt(ev.terms.b5);
      if (ev.delta2 - rhs > worst) {
        worst = ev.delta2 - rhs;
        worst_name = ev.name;
      }
    }
    detail = "worst excess " + fmt(worst) + " at " + worst_name;
    return worst <= 1e-9;
  });

  // ---- criterion 5: Stein solution properties -------------------------------
  suite.add("5.stein-solution", [&](std::string& detail) {
    const double bound_i = std::sqrt(2.0 * 3.14159265358979323846) / 4.0;
    double worst_i = -1.0, worst_iv = -1.0, worst_mono = -1.0, worst_res = 0.0;
    for (int zi = -64; zi <= 64; ++zi) {
      const double z = zi / 16.0;
      double prev_xf = 0.0;
      bool have_prev = false;
      for (int xi = -512; xi <= 512; ++xi) {
        const double x = xi / 64.0;
        const double fz = stein_solution(z, x);
        worst_i = std::max(worst_i, std::fabs(fz) - bound_i);
        const double xf = x * fz;
        worst_iv = std::max(worst_iv, std::fabs(xf) - 1.0);
        if (have_prev) worst_mono = std::max(worst_mono, prev_xf - xf);
        prev_xf = xf;
        have_prev = true;
        // Stein equation residual with central differences off the kink.
        if (std::fabs(x - z) > 1.0 / 128.0) {
          const double h = 1e-6;
          const double deriv = (stein_solution(z, x + h) - stein_solution(z, x - h)) / (2.0 * h);
          const double rhs = (x <= z ? 1.0 : 0.0) - normal_cdf(z);
          worst_res = std::max(worst_res, std::fabs(deriv - x * fz - rhs));
        }
      }
    }
    detail = "|f| excess " + fmt(worst_i) + ", |xf| excess " + fmt(worst_iv) + ", mono " +
             fmt(worst_mono) + ", residual " + fmt(worst_res);
    return worst_i <= 1e-12 && worst_iv <= 1e-12 && worst_mono <= 1e-12 && worst_res <= 1e-6;
  });

  // ---- criterion 6: Monte Carlo rate reproduction ---------------------------
  suite.add("6a.degree-rate-slope", [&](std::string& detail) {
    const auto t0 = Clock::now();
    SweepFamily family;
    family.kind = FamilyKind::degree;
    family.d = 0;
    family.plaw = PLaw::parse("1/n");
    const std::vector<int> grid = {64, 128, 256, 512, 1024};
    const auto points = sweep(family, grid, 1000000, opts.seed ^ 0x6a);
    const RateFit fit = rate_fit(points);
    const double s = std::chrono::duration<double>(Clock::now() - t0).count();
    detail = "slope " + fmt(fit.slope) + ", r2 " + fmt(fit.r_squared) + ", " + fmt(s) + " s";
    return fit.slope >= -0.65 && fit.slope <= -0.35 && s < 1200.0;
  });

  suite.add("6b.tworuns-rate-slope", [&](std::string& detail) {
    SweepFamily family;
    family.kind = FamilyKind::two_runs;
    const std::vector<int> grid = {64, 128, 256, 512, 1024};
    const auto points = sweep(family, grid, 1000000, opts.seed ^ 0x6b);
    const RateFit fit = rate_fit(points);
    detail = "slope " + fmt(fit.slope) + ", r2 " + fmt(fit.r_squared);
    return fit.slope >= -0.65 && fit.slope <= -0.35;
  });

  suite.add("6c.subgraph-rate-constant", [&](std::string& detail) {
    const auto t0 = Clock::now();
    SweepFamily family;
    family.kind = FamilyKind::subgraph;
    family.pattern = Pattern::triangle();
    family.plaw = PLaw::parse("n^-0.5");
    const std::vector<int> grid = {16, 24, 32, 48, 64};
    const auto points = sweep(family, grid, 100000, opts.seed ^ 0x6c);
    double worst_ratio = 0.0;
    for (const auto& pt : points) worst_ratio = std::max(worst_ratio, pt.dk / pt.prediction);
    const double s = std::chrono::duration<double>(Clock::now() - t0).count();
    detail = "worst dk/prediction " + fmt(worst_ratio) + ", " + fmt(s) + " s";
    return worst_ratio <= 3.0 && s < 900.0;
  });

  suite.add("6d.hypercube-rate-constant", [&](std::string& detail) {
    SweepFamily family;
    family.kind = FamilyKind::hypercube;
    family.d = 0;
    family.eps = 0.5;
    family.plaw = PLaw::parse("1/n");
    std::vector<int> grid;
    for (int n = 6; n <= 14; ++n) grid.push_back(n);
    const auto points = sweep(family, grid, 100000, opts.seed ^ 0x6d);
    double worst_ratio = 0.0;
    for (const auto& pt : points) {
      worst_ratio = std::max(worst_ratio, pt.dk / (3.0 * pt.prediction));
    }
    detail = "worst dk/(3 prediction) " + fmt(worst_ratio);
    return worst_ratio <= 1.0;
  });

  // ---- criterion 7: Monte Carlo vs exact ------------------------------------
  suite.add("7.cross-validation", [&](std::string& detail) {
    const std::vector<Model> models = {
        DegreeModel{5, 0.3, 0},
        SubgraphModel{4, 0.5, Pattern::triangle()},
        ComplexModel{4, 2, 0.5},
        HypercubeModel{3, 0.4, 1},
        TwoRunsModel{{1.0, 1.0, 1.0}},
    };
    constexpr std::size_t kSamples = 1000000;
    const double tol = 5.0 * mc_standard_error(kSamples);
    double worst = 0.0;
    std::string worst_name;
    for (const Model& model : models) {
      const double exact = kolmogorov_exact(model_functional(model));
      const SampleBatch batch = sample_statistic(model, kSamples, opts.seed ^ 0x77);
      const double emp = empirical_kolmogorov(batch);
      const double err = std::fabs(emp - exact);
      if (err > worst) {
        worst = err;
        worst_name = model_label(model);
      }
    }
    detail = "worst |emp-exact| " + fmt(worst) + " (tol " + fmt(tol) + ") at " + worst_name;
    return worst <= tol;
  });

  // ---- criterion 8: CSV determinism across worker counts --------------------
  suite.add("8.csv-determinism", [&](std::string& detail) {
    SweepFamily family;
    family.kind = FamilyKind::degree;
    family.d = 0;
    family.plaw = PLaw::parse("1/n");
    const std::vector<int> grid = {16, 32, 64};
    std::vector<std::string> outputs;
    for (const int workers : {1, 4, 16}) {
      set_thread_count(workers);
      const auto points = sweep(family, grid, 20000, opts.seed ^ 0x88);
      outputs.push_back(render_rate_csv(points));
    }
    set_thread_count(0);
    const bool ok = outputs[0] == outputs[1] && outputs[1] == outputs[2];
    detail = ok ? "byte-identical at 1/4/16 workers" : "outputs differ across worker counts";
    return ok;
  });

  return suite.results;
}

std::vector<CheckResult> run_selftest() {
  VerifyOptions opts;
  Suite suite{opts, {}};

  suite.add("selftest.phi-pin", [&](std::string& detail) {
    const double v = normal_cdf(1.959964);
    detail = "Phi(1.959964) = " + fmt(v);
    return std::fabs(v - 0.975) <= 1e-6 && std::fabs(normal_cdf(0.0) - 0.5) <= 1e-15;
  });

  CounterRng rng(42, 0);
  suite.add("selftest.duality", [&](std::string& detail) {
    double worst = 0.0;
    for (int rep = 0; rep < 20; ++rep) {
      const int m = 1 + static_cast<int>(rng.next_u64() % 8);
      const SpacePtr space = random_space(rng, m);
      const Functional f = random_functional(space, rng);
      std::vector<Functional> u;
      for (int k = 0; k < m; ++k) u.push_back(random_functional(space, rng));
      double lhs = 0.0;
      for (int k = 0; k < m; ++k) lhs += expectation(gradient(f, k) * u[static_cast<std::size_t>(k)], 1);
      worst = std::max(worst, rel_err(lhs, expectation(f * divergence(u), 1)));
    }
    detail = "worst rel err " + fmt(worst);
    return worst <= 1e-10;
  });

  suite.add("selftest.isometry", [&](std::string& detail) {
    double worst = 0.0;
    for (int rep = 0; rep < 20; ++rep) {
      const int m = 3 + static_cast<int>(rng.next_u64() % 6);
      const SpacePtr space = random_space(rng, m);
      const int p = 1 + static_cast<int>(rng.next_u64() % 2);
      const int q = 1 + static_cast<int>(rng.next_u64() % 2);
      const Kernel f = random_kernel(rng, p, m);
      const Kernel g = random_kernel(rng, q, m);
      const double lhs = expectation(multiple_integral(space, f) * multiple_integral(space, g), 1);
      worst = std::max(worst, rel_err(lhs, p == q ? kernel_isometry_product(f, g) : 0.0));
    }
    detail = "worst rel err " + fmt(worst);
    return worst <= 1e-10;
  });

  suite.add("selftest.product-formula", [&](std::string& detail) {
    double worst = 0.0;
    for (int rep = 0; rep < 20; ++rep) {
      const int m = 1 + static_cast<int>(rng.next_u64() % 8);
      const SpacePtr space = random_space(rng, m);
      const Functional f = random_functional(space, rng);
      const Functional g = random_functional(space, rng);
      const Functional fg = f * g;
      for (int k = 0; k < m; ++k) {
        const Functional lhs = gradient(fg, k);
        const Functional df = gradient(f, k);
        const Functional dg = gradient(g, k);
        const double inv = 1.0 / space->sqrt_pq(k);
        for (std::size_t x = 0; x < space->state_count(); ++x) {
          const double xk = (x >> k) & 1u ? 1.0 : -1.0;
          const double rhs = g(static_cast<StateMask>(x)) * df(static_cast<StateMask>(x)) +
                             f(static_cast<StateMask>(x)) * dg(static_cast<StateMask>(x)) -
                             xk * inv * df(static_cast<StateMask>(x)) * dg(static_cast<StateMask>(x));
          worst = std::max(worst, std::fabs(lhs(static_cast<StateMask>(x)) - rhs));
        }
      }
    }
    detail = "worst abs err " + fmt(worst);
    return worst <= 1e-12;
  });

  return suite.results;
}

bool all_passed(const std::vector<CheckResult>& results) {
  return std::all_of(results.begin(), results.end(),
                     [](const CheckResult& r) { return r.pass; });
}

}  // namespace rsl
