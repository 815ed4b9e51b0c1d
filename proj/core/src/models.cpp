#include "rsl/models.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <string>

namespace rsl {

namespace {

double binom(int n, int r) {
  if (r < 0 || r > n) return 0.0;
  double c = 1.0;
  for (int i = 1; i <= r; ++i) c = c * (n - r + i) / i;
  return c;
}

}  // namespace

// ---------------------------------------------------------------------- runs

double two_runs_mean(const TwoRunsConfig& cfg) {
  double s = 0.0;
  for (double a : cfg.alpha) s += a;
  return 0.25 * s;
}

double two_runs_variance(const TwoRunsConfig& cfg) {
  double s2 = 0.0, cross = 0.0;
  for (std::size_t i = 0; i < cfg.alpha.size(); ++i) {
    s2 += cfg.alpha[i] * cfg.alpha[i];
    if (i + 1 < cfg.alpha.size()) cross += cfg.alpha[i] * cfg.alpha[i + 1];
  }
  return 3.0 / 16.0 * s2 + 1.0 / 8.0 * cross;
}

Functional two_runs_functional(const TwoRunsConfig& cfg) {
  const double var = two_runs_variance(cfg);
  if (!(var > 0.0)) throw ZeroVariance("two-runs weights have zero variance");
  const int m = static_cast<int>(cfg.alpha.size()) + 1;
  if (m > coordinate_cap()) {
    throw CapExceeded("two-runs window needs " + std::to_string(m) + " coordinates, cap is " +
                      std::to_string(coordinate_cap()) + " (max window " +
                      std::to_string(coordinate_cap() - 1) + ")");
  }
  const SpacePtr space = make_symmetric_space(m);
  const double mean = two_runs_mean(cfg);
  const double inv_sd = 1.0 / std::sqrt(var);
  std::vector<double> vals(space->state_count());
  for (std::size_t x = 0; x < vals.size(); ++x) {
    double g = 0.0;
    for (std::size_t i = 0; i < cfg.alpha.size(); ++i) {
      const bool b0 = (x >> i) & 1u, b1 = (x >> (i + 1)) & 1u;
      if (b0 && b1) g += cfg.alpha[i];
    }
    vals[x] = (g - mean) * inv_sd;
  }
  return Functional(space, std::move(vals));
}

std::pair<Kernel, Kernel> two_runs_kernels(const TwoRunsConfig& cfg) {
  const double var = two_runs_variance(cfg);
  if (!(var > 0.0)) throw ZeroVariance("two-runs weights have zero variance");
  const double sd = std::sqrt(var);
  Kernel f(1), g(2);
  const int L = static_cast<int>(cfg.alpha.size());
  for (int k = 0; k <= L; ++k) {
    const double ak = k < L ? cfg.alpha[static_cast<std::size_t>(k)] : 0.0;
    const double akm1 = k >= 1 ? cfg.alpha[static_cast<std::size_t>(k - 1)] : 0.0;
    const double v = (ak + akm1) / (4.0 * sd);
    if (v != 0.0) {
      const int idx[1] = {k};
      f.set_symmetric(idx, v);
    }
  }
  for (int a = 0; a < L; ++a) {
    const double v = cfg.alpha[static_cast<std::size_t>(a)] / (8.0 * sd);
    if (v != 0.0) {
      const int idx[2] = {a, a + 1};
      g.set_symmetric(idx, v);
    }
  }
  return {std::move(f), std::move(g)};
}

double two_runs_rate_bound(const TwoRunsConfig& cfg) {
  const double var = two_runs_variance(cfg);
  if (!(var > 0.0)) throw ZeroVariance("two-runs rate needs nonzero weights");
  double s4 = 0.0;
  for (double a : cfg.alpha) s4 += a * a * a * a;
  return std::sqrt(s4) / var;
}

// ------------------------------------------------------------------ patterns

Pattern Pattern::from_edges(std::string name, int vertices,
                            std::vector<std::pair<int, int>> edges) {
  if (edges.empty()) throw DimensionMismatch("pattern needs at least one edge");
  std::set<int> used;
  for (auto& [u, v] : edges) {
    if (u == v) throw DimensionMismatch("pattern edge endpoints must be distinct");
    if (u < 0 || v < 0 || u >= vertices || v >= vertices) {
      throw IndexOutOfRange("pattern edge endpoint outside vertex range");
    }
    if (u > v) std::swap(u, v);
    used.insert(u);
    used.insert(v);
  }
  // Drop isolated vertices and relabel densely.
  std::map<int, int> relabel;
  for (int v : used) relabel.emplace(v, static_cast<int>(relabel.size()));
  Pattern pat;
  pat.name = std::move(name);
  pat.vertex_count = static_cast<int>(relabel.size());
  for (auto [u, v] : edges) pat.edges.emplace_back(relabel.at(u), relabel.at(v));
  std::sort(pat.edges.begin(), pat.edges.end());
  if (std::adjacent_find(pat.edges.begin(), pat.edges.end()) != pat.edges.end()) {
    throw DimensionMismatch("pattern edges must be distinct");
  }
  return pat;
}

Pattern Pattern::parse_edge_list(const std::string& text, std::string name) {
  std::istringstream in(text);
  std::vector<std::pair<int, int>> edges;
  int max_label = 0;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    int u, v;
    if (!(ls >> u)) continue;  // blank line
    if (!(ls >> v)) throw ConfigError("pattern line needs two labels: '" + line + "'");
    if (u < 1 || v < 1) throw ConfigError("pattern labels are 1-based");
    max_label = std::max({max_label, u, v});
    edges.emplace_back(u - 1, v - 1);
  }
  return from_edges(std::move(name), max_label, std::move(edges));
}

Pattern Pattern::single_edge() { return from_edges("edge", 2, {{0, 1}}); }
Pattern Pattern::path2() { return from_edges("path2", 3, {{0, 1}, {1, 2}}); }
Pattern Pattern::triangle() { return from_edges("triangle", 3, {{0, 1}, {1, 2}, {0, 2}}); }

double psi(int n, double p, const Pattern& pat) {
  const int e = static_cast<int>(pat.edges.size());
  double best = std::numeric_limits<double>::infinity();
  for (std::uint32_t sub = 1; sub < (1u << e); ++sub) {
    std::uint32_t verts = 0;
    for (int j = 0; j < e; ++j) {
      if ((sub >> j) & 1u) {
        verts |= 1u << pat.edges[static_cast<std::size_t>(j)].first;
        verts |= 1u << pat.edges[static_cast<std::size_t>(j)].second;
      }
    }
    const int vh = std::popcount(verts);
    const int eh = std::popcount(sub);
    best = std::min(best, std::pow(static_cast<double>(n), vh) * std::pow(p, eh));
  }
  return best;
}

int complete_graph_edge_count(int n) { return n * (n - 1) / 2; }

std::pair<int, int> complete_graph_edge(int n, int id) {
  int u = 0;
  int row = n - 1;
  while (id >= row) {
    id -= row;
    ++u;
    --row;
  }
  return {u, u + 1 + id};
}

namespace {

int edge_id(int n, int u, int v) {
  if (u > v) std::swap(u, v);
  // offset of row u in the lexicographic order
  return u * n - u * (u + 1) / 2 + (v - u - 1);
}

void enumerate_copies(int n, const Pattern& pat,
                      const std::function<void(const std::vector<int>&)>& emit) {
  // Assign pattern vertices to distinct graph vertices; deduplicate copies
  // (images under pattern automorphisms) via the sorted edge-id set.
  std::vector<int> map(static_cast<std::size_t>(pat.vertex_count), -1);
  std::vector<bool> taken(static_cast<std::size_t>(n), false);
  std::set<std::vector<int>> seen;
  std::vector<int> ids;
  auto rec = [&](auto&& self, int next) -> void {
    if (next == pat.vertex_count) {
      ids.clear();
      for (auto [a, b] : pat.edges) {
        ids.push_back(edge_id(n, map[static_cast<std::size_t>(a)], map[static_cast<std::size_t>(b)]));
      }
      std::sort(ids.begin(), ids.end());
      if (seen.insert(ids).second) emit(ids);
      return;
    }
    for (int g = 0; g < n; ++g) {
      if (taken[static_cast<std::size_t>(g)]) continue;
      map[static_cast<std::size_t>(next)] = g;
      taken[static_cast<std::size_t>(g)] = true;
      self(self, next + 1);
      taken[static_cast<std::size_t>(g)] = false;
    }
  };
  rec(rec, 0);
}

}  // namespace

std::vector<std::vector<int>> pattern_copies(int n, const Pattern& pat) {
  if (n < pat.vertex_count) return {};
  std::vector<std::vector<int>> copies;
  enumerate_copies(n, pat, [&](const std::vector<int>& ids) { copies.push_back(ids); });
  return copies;
}

double copy_count(int n, const Pattern& pat) {
  return static_cast<double>(pattern_copies(n, pat).size());
}

Moments subgraph_moments(int n, double p, const Pattern& pat) {
  const auto copies = pattern_copies(n, pat);
  const int e = static_cast<int>(pat.edges.size());
  const double pe = std::pow(p, e);
  Moments mo;
  mo.mean = static_cast<double>(copies.size()) * pe;
  if (copies.empty()) return mo;
  // All copies form one orbit under vertex relabelling, so
  // Var = |M| sum_{gamma} (p^{2e - shared(gamma_0, gamma)} - p^{2e})
  // for any fixed reference copy gamma_0.
  const std::vector<int>& ref = copies.front();
  double per_ref = 0.0;
  std::vector<bool> in_ref(static_cast<std::size_t>(complete_graph_edge_count(n)), false);
  for (int id : ref) in_ref[static_cast<std::size_t>(id)] = true;
  for (const auto& c : copies) {
    int shared = 0;
    for (int id : c) shared += in_ref[static_cast<std::size_t>(id)] ? 1 : 0;
    if (shared > 0) per_ref += std::pow(p, 2 * e - shared) - pe * pe;
  }
  mo.var = static_cast<double>(copies.size()) * per_ref;
  return mo;
}

Functional subgraph_functional(int n, double p, const Pattern& pat) {
  const int m = complete_graph_edge_count(n);
  if (m > coordinate_cap()) {
    throw CapExceeded("subgraph model needs " + std::to_string(m) + " edge coordinates, cap is " +
                      std::to_string(coordinate_cap()) + " (max n=" +
                      std::to_string(max_exact_n_for_edges()) + " for exact mode)");
  }
  const auto copies = pattern_copies(n, pat);
  std::vector<StateMask> masks;
  masks.reserve(copies.size());
  for (const auto& c : copies) {
    StateMask mask = 0;
    for (int id : c) mask |= StateMask{1} << id;
    masks.push_back(mask);
  }
  const SpacePtr space = make_space(std::vector<double>(static_cast<std::size_t>(m), p));
  std::vector<double> vals(space->state_count());
  for (std::size_t x = 0; x < vals.size(); ++x) {
    int s = 0;
    for (StateMask mask : masks) s += (static_cast<StateMask>(x) & mask) == mask ? 1 : 0;
    vals[x] = static_cast<double>(s);
  }
  Functional raw(space, std::move(vals));
  const Moments mo = subgraph_moments(n, p, pat);
  if (!(mo.var > 0.0)) throw ZeroVariance("subgraph count has zero variance");
  const double inv_sd = 1.0 / std::sqrt(mo.var);
  return raw.map([&](double v) { return (v - mo.mean) * inv_sd; });
}

SubgraphRate subgraph_rate_prediction(int n, double p, const Pattern& pat) {
  SubgraphRate r;
  const double ps = psi(n, p, pat);
  r.rate = 1.0 / std::sqrt((1.0 - p) * ps);
  const double v = static_cast<double>(pat.vertex_count);
  const double e = static_cast<double>(pat.edges.size());
  r.sigma2_order = (1.0 - p) * std::pow(static_cast<double>(n), 2.0 * v) * std::pow(p, 2.0 * e) / ps;
  return r;
}

// ------------------------------------------------------------------- degrees

Moments degree_count_moments(const DegreeCountConfig& cfg) {
  const int n = cfg.n, d = cfg.d;
  const double p = cfg.p, q = 1.0 - cfg.p;
  Moments mo;
  mo.mean = n * binom(n - 1, d) * std::pow(p, d) * std::pow(q, n - d - 1);
  const double head = static_cast<double>(n) / (n - 1) * binom(n - 1, d) * binom(n - 1, d) *
                      ((n - 1) * p - d) * ((n - 1) * p - d) * std::pow(p, 2 * d - 1) *
                      std::pow(q, 2 * n - 2 * d - 3);
  mo.var = head + mo.mean - mo.mean * mo.mean / n;
  return mo;
}

Functional degree_count_functional(const DegreeCountConfig& cfg) {
  const int n = cfg.n;
  const int m = complete_graph_edge_count(n);
  if (m > coordinate_cap()) {
    throw CapExceeded("degree model needs " + std::to_string(m) + " edge coordinates, cap is " +
                      std::to_string(coordinate_cap()) + " (max n=" +
                      std::to_string(max_exact_n_for_edges()) + " for exact mode)");
  }
  const SpacePtr space = make_space(std::vector<double>(static_cast<std::size_t>(m), cfg.p));
  std::vector<std::pair<int, int>> edges(static_cast<std::size_t>(m));
  for (int id = 0; id < m; ++id) edges[static_cast<std::size_t>(id)] = complete_graph_edge(n, id);
  std::vector<double> vals(space->state_count());
  std::vector<int> deg(static_cast<std::size_t>(n));
  for (std::size_t x = 0; x < vals.size(); ++x) {
    std::fill(deg.begin(), deg.end(), 0);
    for (int id = 0; id < m; ++id) {
      if ((x >> id) & 1u) {
        ++deg[static_cast<std::size_t>(edges[static_cast<std::size_t>(id)].first)];
        ++deg[static_cast<std::size_t>(edges[static_cast<std::size_t>(id)].second)];
      }
    }
    int count = 0;
    for (int v = 0; v < n; ++v) count += deg[static_cast<std::size_t>(v)] == cfg.d ? 1 : 0;
    vals[x] = static_cast<double>(count);
  }
  Functional raw(space, std::move(vals));
  const Moments mo = degree_count_moments(cfg);
  if (!(mo.var > 0.0)) throw ZeroVariance("degree count has zero variance");
  const double inv_sd = 1.0 / std::sqrt(mo.var);
  return raw.map([&](double v) { return (v - mo.mean) * inv_sd; });
}

double degree_rate_prediction(const DegreeCountConfig& cfg, DegreeRegime regime) {
  if (cfg.d == 0) return 1.0 / (static_cast<double>(cfg.n) * std::sqrt(cfg.p));
  switch (regime) {
    case DegreeRegime::liminf_np_positive:
      return 1.0 / std::sqrt(static_cast<double>(cfg.n));
    case DegreeRegime::np_to_zero:
      return std::pow(cfg.n * cfg.p, -cfg.d) * std::sqrt(cfg.p);
    case DegreeRegime::unspecified:
      break;
  }
  throw RegimeUnspecified("degree rate for d >= 1 needs a regime (liminf np > 0 or np -> 0)");
}

// ------------------------------------------------------------------ complex

Moments complex_moments(const ComplexConfig& cfg) {
  if (cfg.kappa == 1) {
    return degree_count_moments({cfg.n, cfg.p, 0});
  }
  const int n = cfg.n, k = cfg.kappa;
  const double q = 1.0 - cfg.p;
  Moments mo;
  mo.mean = binom(n, k) * std::pow(q, n - k);
  // Ordered covariance pairs need the factor 2 over the unordered
  // (shared (kappa-2)-face) count; pinned by enumeration.
  mo.var = binom(n, k) * std::pow(q, n - k) * (1.0 - std::pow(q, n - k)) +
           2.0 * binom(n, k - 1) * binom(n - k + 1, 2) * cfg.p * std::pow(q, 2 * (n - k) - 1);
  return mo;
}

namespace {

std::vector<std::vector<int>> combinations(int n, int r) {
  std::vector<std::vector<int>> out;
  std::vector<int> idx(static_cast<std::size_t>(r));
  for (int i = 0; i < r; ++i) idx[static_cast<std::size_t>(i)] = i;
  for (;;) {
    out.push_back(idx);
    int i = r - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - r + i) --i;
    if (i < 0) break;
    ++idx[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < r; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  }
  return out;
}

}  // namespace

Functional complex_functional(const ComplexConfig& cfg) {
  if (cfg.kappa == 1) return degree_count_functional({cfg.n, cfg.p, 0});
  const int n = cfg.n, k = cfg.kappa;
  const auto kfaces = combinations(n, k + 1);
  const int m = static_cast<int>(kfaces.size());
  if (m > coordinate_cap()) {
    throw CapExceeded("complex model needs " + std::to_string(m) + " face coordinates, cap is " +
                      std::to_string(coordinate_cap()) + " (max n=" +
                      std::to_string(max_exact_n_for_complex(k)) + " for exact mode)");
  }
  const auto subfaces = combinations(n, k);
  // Incidence: a (kappa-1)-face is isolated iff none of its containing
  // kappa-faces is present.
  std::vector<StateMask> inc(subfaces.size(), 0);
  for (std::size_t j = 0; j < kfaces.size(); ++j) {
    std::uint32_t vmask = 0;
    for (int v : kfaces[j]) vmask |= 1u << v;
    for (std::size_t i = 0; i < subfaces.size(); ++i) {
      std::uint32_t smask = 0;
      for (int v : subfaces[i]) smask |= 1u << v;
      if ((vmask & smask) == smask) inc[i] |= StateMask{1} << j;
    }
  }
  const SpacePtr space = make_space(std::vector<double>(static_cast<std::size_t>(m), cfg.p));
  std::vector<double> vals(space->state_count());
  for (std::size_t x = 0; x < vals.size(); ++x) {
    int isolated = 0;
    for (StateMask mask : inc) isolated += (static_cast<StateMask>(x) & mask) == 0 ? 1 : 0;
    vals[x] = static_cast<double>(isolated);
  }
  Functional raw(space, std::move(vals));
  const Moments mo = complex_moments(cfg);
  if (!(mo.var > 0.0)) throw ZeroVariance("isolated face count has zero variance");
  const double inv_sd = 1.0 / std::sqrt(mo.var);
  return raw.map([&](double v) { return (v - mo.mean) * inv_sd; });
}

double complex_rate_prediction(const ComplexConfig& cfg) {
  return std::pow(static_cast<double>(cfg.n), -0.5 * (cfg.kappa + 1)) / std::sqrt(cfg.p);
}

// ---------------------------------------------------------------- hypercube

Moments hypercube_moments(const HypercubeConfig& cfg) {
  const int n = cfg.n, d = cfg.d;
  const double p = cfg.p, q = 1.0 - cfg.p;
  const double two_n = std::pow(2.0, n);
  Moments mo;
  if (d == 0 || d == n) {
    // d = n is the complement model: V_n under p equals V_0 under 1-p.
    const double r = d == 0 ? q : p;        // per-vertex isolation factor
    const double s = d == 0 ? p : q;        // edge-present factor in the cov term
    mo.mean = two_n * std::pow(r, n);
    mo.var = two_n * std::pow(r, n) - two_n * std::pow(r, 2 * n) +
             n * two_n * std::pow(r, 2 * n - 1) * s;
    return mo;
  }
  const double e1 = binom(n, d) * std::pow(p, d) * std::pow(q, n - d);
  mo.mean = two_n * e1;
  const double nd = static_cast<double>(n - d);
  // Full covariance bracket; the last term does not cancel against the
  // E[I]^2 part of the variance (pinned by enumeration).
  const double bracket = d * d * q / (nd * nd) + p - n * n * p * q / (nd * nd);
  const double cov = binom(n - 1, d) * binom(n - 1, d) * std::pow(p, 2 * d - 1) *
                     std::pow(q, 2 * n - 2 * d - 1) * bracket;
  mo.var = two_n * e1 * (1.0 - e1) + n * two_n * cov;
  return mo;
}

Functional hypercube_functional(const HypercubeConfig& cfg) {
  const int n = cfg.n;
  const int verts = 1 << n;
  const int m = n * (verts / 2);
  if (m > coordinate_cap()) {
    throw CapExceeded("hypercube model needs " + std::to_string(m) + " edge coordinates, cap is " +
                      std::to_string(coordinate_cap()) + " (max n=" +
                      std::to_string(max_exact_n_for_hypercube()) + " for exact mode)");
  }
  // Edge list: for direction i, the vertices with bit i clear, in order.
  std::vector<std::pair<int, int>> edges;
  edges.reserve(static_cast<std::size_t>(m));
  for (int i = 0; i < n; ++i) {
    for (int v = 0; v < verts; ++v) {
      if (((v >> i) & 1) == 0) edges.emplace_back(v, v | (1 << i));
    }
  }
  const SpacePtr space = make_space(std::vector<double>(static_cast<std::size_t>(m), cfg.p));
  std::vector<double> vals(space->state_count());
  std::vector<int> deg(static_cast<std::size_t>(verts));
  for (std::size_t x = 0; x < vals.size(); ++x) {
    std::fill(deg.begin(), deg.end(), 0);
    for (int id = 0; id < m; ++id) {
      if ((x >> id) & 1u) {
        ++deg[static_cast<std::size_t>(edges[static_cast<std::size_t>(id)].first)];
        ++deg[static_cast<std::size_t>(edges[static_cast<std::size_t>(id)].second)];
      }
    }
    int count = 0;
    for (int v = 0; v < verts; ++v) count += deg[static_cast<std::size_t>(v)] == cfg.d ? 1 : 0;
    vals[x] = static_cast<double>(count);
  }
  Functional raw(space, std::move(vals));
  const Moments mo = hypercube_moments(cfg);
  if (!(mo.var > 0.0)) throw ZeroVariance("hypercube degree count has zero variance");
  const double inv_sd = 1.0 / std::sqrt(mo.var);
  return raw.map([&](double v) { return (v - mo.mean) * inv_sd; });
}

double hypercube_rate_prediction(const HypercubeConfig& cfg, double eps) {
  if (!(eps > 0.0) || !(eps < 1.0)) throw BadEpsilon("epsilon must lie in (0,1)");
  return std::pow(2.0 - eps, -0.5 * cfg.n);
}

// -------------------------------------------------------------------- sizes

int max_exact_n_for_edges() {
  int n = 2;
  while (complete_graph_edge_count(n + 1) <= coordinate_cap()) ++n;
  return n;
}

int max_exact_n_for_complex(int kappa) {
  int n = kappa + 1;
  while (binom(n + 1, kappa + 1) <= coordinate_cap()) ++n;
  return n;
}

int max_exact_n_for_hypercube() {
  int n = 1;
  while ((n + 1) * (1 << n) <= coordinate_cap()) ++n;
  return n;
}

}  // namespace rsl
