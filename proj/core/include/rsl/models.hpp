#pragma once

#include <string>
#include <utility>
#include <vector>

#include "rsl/chaos.hpp"
#include "rsl/functional.hpp"

namespace rsl {

struct Moments {
  double mean = 0.0;
  double var = 0.0;
};

// ---------------------------------------------------------------------------
// Infinite weighted 2-runs, truncated to a finite window: the statistic uses
// exactly the supplied weights over coordinates 0..|alpha| of a symmetric
// space (boundary terms of the doubly infinite sum are dropped).
// ---------------------------------------------------------------------------

struct TwoRunsConfig {
  std::vector<double> alpha;
};

/// E[G_n] = sum alpha_i / 4 for the fair-coin window.
double two_runs_mean(const TwoRunsConfig& cfg);

/// Var(G_n) = (3/16) sum alpha_i^2 + (1/8) sum alpha_i alpha_{i+1}.
double two_runs_variance(const TwoRunsConfig& cfg);

/// Standardized two-runs statistic on m = |alpha|+1 fair coordinates.
Functional two_runs_functional(const TwoRunsConfig& cfg);

/// The chaos kernels of the standardized statistic: F = J_1(f) + J_2(g) with
/// f(k) = (alpha_k + alpha_{k-1})/(4 sd) and g(k,k+1) = alpha_k/(8 sd).
std::pair<Kernel, Kernel> two_runs_kernels(const TwoRunsConfig& cfg);

/// ||alpha||_4^2 / Var(G_n), the rate prediction without its constant.
double two_runs_rate_bound(const TwoRunsConfig& cfg);

// ---------------------------------------------------------------------------
// Subgraph counts in G(n,p).
// ---------------------------------------------------------------------------

/// A pattern graph; isolated vertices are dropped on construction.
struct Pattern {
  std::string name;
  int vertex_count = 0;
  std::vector<std::pair<int, int>> edges;  // 0-based, u < v, sorted

  static Pattern from_edges(std::string name, int vertices,
                            std::vector<std::pair<int, int>> edges);
  /// Parses "u v" per line with 1-based labels.
  static Pattern parse_edge_list(const std::string& text, std::string name = "pattern");
  static Pattern single_edge();
  static Pattern path2();  // path with two edges
  static Pattern triangle();
};

/// psi(n,p,Gamma) = min over nonempty edge subsets H of n^{v(H)} p^{e(H)},
/// with v(H) counting non-isolated vertices only.
double psi(int n, double p, const Pattern& pat);

/// Number of copies of the pattern in the complete graph K_n.
double copy_count(int n, const Pattern& pat);

/// Exact mean/variance of the copy-count statistic S, by classifying ordered
/// pairs of copies by their shared edge count (no state enumeration).
Moments subgraph_moments(int n, double p, const Pattern& pat);

/// Standardized subgraph-count statistic on the C(n,2) edge coordinates.
Functional subgraph_functional(int n, double p, const Pattern& pat);

struct SubgraphRate {
  double rate = 0.0;          // ((1-p) psi)^{-1/2}
  double sigma2_order = 0.0;  // q n^{2v} p^{2e} / psi diagnostic
};

SubgraphRate subgraph_rate_prediction(int n, double p, const Pattern& pat);

// ---------------------------------------------------------------------------
// Vertices of fixed degree in G(n,p).
// ---------------------------------------------------------------------------

struct DegreeCountConfig {
  int n = 0;
  double p = 0.0;
  int d = 0;
};

Moments degree_count_moments(const DegreeCountConfig& cfg);
Functional degree_count_functional(const DegreeCountConfig& cfg);

enum class DegreeRegime {
  unspecified,
  liminf_np_positive,  // np bounded away from zero: rate n^{-1/2}
  np_to_zero,          // np -> 0: rate (np)^{-d} sqrt(p)
};

/// Predicted rates: d=0 -> n^{-1} p^{-1/2}; d>=1 needs the caller to select
/// the asymptotic regime (RegimeUnspecified otherwise).
double degree_rate_prediction(const DegreeCountConfig& cfg,
                              DegreeRegime regime = DegreeRegime::unspecified);

// ---------------------------------------------------------------------------
// Isolated (kappa-1)-faces of the random kappa-complex.
// ---------------------------------------------------------------------------

struct ComplexConfig {
  int n = 0;
  int kappa = 1;
  double p = 0.0;
};

Moments complex_moments(const ComplexConfig& cfg);
Functional complex_functional(const ComplexConfig& cfg);
double complex_rate_prediction(const ComplexConfig& cfg);

// ---------------------------------------------------------------------------
// Vertices of fixed degree in hypercube percolation H(n,p).
// ---------------------------------------------------------------------------

struct HypercubeConfig {
  int n = 0;
  double p = 0.0;
  int d = 0;
};

Moments hypercube_moments(const HypercubeConfig& cfg);
Functional hypercube_functional(const HypercubeConfig& cfg);
double hypercube_rate_prediction(const HypercubeConfig& cfg, double eps);

// ---------------------------------------------------------------------------
// Shared edge/face labelling helpers (also used by the samplers).
// ---------------------------------------------------------------------------

/// Lexicographic edge order of K_n: (0,1),(0,2),...,(0,n-1),(1,2),...
int complete_graph_edge_count(int n);
std::pair<int, int> complete_graph_edge(int n, int id);

/// All copies of the pattern in K_n as sorted edge-id lists.
std::vector<std::vector<int>> pattern_copies(int n, const Pattern& pat);

/// Largest n for which the model fits the coordinate cap (for messages).
int max_exact_n_for_edges();                 // C(n,2) <= cap
int max_exact_n_for_complex(int kappa);      // C(n,kappa+1) <= cap
int max_exact_n_for_hypercube();             // n 2^{n-1} <= cap

}  // namespace rsl
