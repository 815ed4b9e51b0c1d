#include "rsl/sampling.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>
#include <type_traits>

#include "rsl/parallel.hpp"

namespace rsl {

namespace {

std::string fmt_p(double p) {
  std::ostringstream os;
  os << p;
  return os.str();
}

std::vector<std::vector<double>> binomial_table(int n) {
  std::vector<std::vector<double>> c(static_cast<std::size_t>(n + 1),
                                     std::vector<double>(static_cast<std::size_t>(n + 1), 0.0));
  for (int i = 0; i <= n; ++i) {
    c[static_cast<std::size_t>(i)][0] = 1.0;
    for (int j = 1; j <= i; ++j) {
      c[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          c[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)] +
          c[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j)];
    }
  }
  return c;
}

// Walks the successes of a Bernoulli(p) scan over [0, universe).
template <class Body>
void scan_positions(CounterRng& rng, std::uint64_t universe, double p, double log1mp,
                    const Body& body) {
  std::uint64_t pos = rng.geometric_skip(p, log1mp);
  while (pos < universe) {
    body(pos);
    pos += 1 + rng.geometric_skip(p, log1mp);
  }
}

struct DegreeState {
  int n = 0, d = 0;
  double p = 0.0;         // scan probability (complemented when needed)
  bool complemented = false;
  int d_eff = 0;          // degree to count in the scanned graph
  double log1mp = 0.0;
  double mean = 0.0, inv_sd = 1.0;
  std::uint64_t universe = 0;
  std::vector<int> deg;
  std::vector<std::uint32_t> ep;
  std::uint32_t cur = 0;
  std::vector<int> touched;

  void init(int n_, double p_, int d_, const Moments& mo) {
    n = n_;
    d = d_;
    complemented = p_ > 0.5;
    p = complemented ? 1.0 - p_ : p_;
    d_eff = complemented ? n - 1 - d : d;
    log1mp = std::log1p(-p);
    mean = mo.mean;
    inv_sd = 1.0 / std::sqrt(mo.var);
    universe = static_cast<std::uint64_t>(n) * (n - 1) / 2;
    deg.assign(static_cast<std::size_t>(n), 0);
    ep.assign(static_cast<std::size_t>(n), 0);
    touched.reserve(static_cast<std::size_t>(n));
  }

  void touch(int v) {
    if (ep[static_cast<std::size_t>(v)] != cur) {
      ep[static_cast<std::size_t>(v)] = cur;
      deg[static_cast<std::size_t>(v)] = 0;
      touched.push_back(v);
    }
    ++deg[static_cast<std::size_t>(v)];
  }

  // Decodes a lexicographic edge position into its endpoints.
  std::pair<int, int> decode(std::uint64_t pos) const {
    const double nn = static_cast<double>(n);
    double guess = nn - 0.5 - std::sqrt((nn - 0.5) * (nn - 0.5) - 2.0 * static_cast<double>(pos));
    int u = guess < 0.0 ? 0 : static_cast<int>(guess);
    auto offset = [&](int uu) {
      return static_cast<std::uint64_t>(uu) * (2 * n - uu - 1) / 2;
    };
    while (u > 0 && offset(u) > pos) --u;
    while (offset(u + 1) <= pos) ++u;
    const int v = u + 1 + static_cast<int>(pos - offset(u));
    return {u, v};
  }

  double sample(CounterRng rng) {
    ++cur;
    touched.clear();
    int count = 0;
    scan_positions(rng, universe, p, log1mp, [&](std::uint64_t pos) {
      const auto [u, v] = decode(pos);
      touch(u);
      touch(v);
    });
    for (int v : touched) count += deg[static_cast<std::size_t>(v)] == d_eff ? 1 : 0;
    if (d_eff == 0) count += n - static_cast<int>(touched.size());
    return (static_cast<double>(count) - mean) * inv_sd;
  }
};

struct SubgraphState {
  int n = 0;
  double p = 0.0;
  bool complemented = false;
  double log1mp = 0.0;
  double mean = 0.0, inv_sd = 1.0;
  std::uint64_t universe = 0;
  bool is_triangle = false;
  Pattern pattern;
  double aut = 1.0;
  int words = 0;
  std::vector<std::uint64_t> rows;
  std::vector<std::pair<int, int>> present;

  void init(int n_, double p_, const Pattern& pat, const Moments& mo) {
    n = n_;
    pattern = pat;
    complemented = p_ > 0.5;
    p = complemented ? 1.0 - p_ : p_;
    log1mp = std::log1p(-p);
    mean = mo.mean;
    inv_sd = 1.0 / std::sqrt(mo.var);
    universe = static_cast<std::uint64_t>(n) * (n - 1) / 2;
    is_triangle = pat.vertex_count == 3 && pat.edges.size() == 3;
    words = (n + 63) / 64;
    rows.assign(static_cast<std::size_t>(n) * words, 0);
    if (!is_triangle) aut = count_embeddings_into_self(pat);
  }

  static double count_embeddings_into_self(const Pattern& pat) {
    // Number of edge-preserving self-bijections; used to de-duplicate
    // embedding counts.
    std::vector<std::uint64_t> adj(static_cast<std::size_t>(pat.vertex_count), 0);
    for (auto [u, v] : pat.edges) {
      adj[static_cast<std::size_t>(u)] |= 1ull << v;
      adj[static_cast<std::size_t>(v)] |= 1ull << u;
    }
    std::vector<int> perm(static_cast<std::size_t>(pat.vertex_count), -1);
    std::uint64_t used = 0;
    long count = 0;
    auto rec = [&](auto&& self, int i) -> void {
      if (i == pat.vertex_count) {
        ++count;
        return;
      }
      for (int t = 0; t < pat.vertex_count; ++t) {
        if ((used >> t) & 1ull) continue;
        bool ok = true;
        for (int j = 0; j < i && ok; ++j) {
          const bool want = (adj[static_cast<std::size_t>(i)] >> j) & 1ull;
          const bool have = (adj[static_cast<std::size_t>(t)] >> perm[static_cast<std::size_t>(j)]) & 1ull;
          ok = want == have;
        }
        if (!ok) continue;
        perm[static_cast<std::size_t>(i)] = t;
        used |= 1ull << t;
        self(self, i + 1);
        used &= ~(1ull << t);
      }
    };
    rec(rec, 0);
    return static_cast<double>(count);
  }

  bool adj_has(int u, int v) const {
    return (rows[static_cast<std::size_t>(u) * words + v / 64] >> (v % 64)) & 1ull;
  }

  void set_edge(int u, int v) {
    rows[static_cast<std::size_t>(u) * words + v / 64] |= 1ull << (v % 64);
    rows[static_cast<std::size_t>(v) * words + u / 64] |= 1ull << (u % 64);
  }

  std::pair<int, int> decode(std::uint64_t pos) const {
    const double nn = static_cast<double>(n);
    double guess = nn - 0.5 - std::sqrt((nn - 0.5) * (nn - 0.5) - 2.0 * static_cast<double>(pos));
    int u = guess < 0.0 ? 0 : static_cast<int>(guess);
    auto offset = [&](int uu) {
      return static_cast<std::uint64_t>(uu) * (2 * n - uu - 1) / 2;
    };
    while (u > 0 && offset(u) > pos) --u;
    while (offset(u + 1) <= pos) ++u;
    const int v = u + 1 + static_cast<int>(pos - offset(u));
    return {u, v};
  }

  double count_triangles() const {
    double total = 0.0;
    for (auto [u, v] : present) {
      const std::uint64_t* ru = &rows[static_cast<std::size_t>(u) * words];
      const std::uint64_t* rv = &rows[static_cast<std::size_t>(v) * words];
      int c = 0;
      for (int w = 0; w < words; ++w) c += std::popcount(ru[w] & rv[w]);
      total += c;
    }
    return total / 3.0;
  }

  double count_generic() const {
    // Injective embeddings of the pattern, then divide by |Aut|.
    const int pv = pattern.vertex_count;
    std::vector<std::vector<int>> pre(static_cast<std::size_t>(pv));
    for (int i = 0; i < pv; ++i) {
      for (auto [a, b] : pattern.edges) {
        if (a == i && b < i) pre[static_cast<std::size_t>(i)].push_back(b);
        if (b == i && a < i) pre[static_cast<std::size_t>(i)].push_back(a);
      }
    }
    std::vector<int> map(static_cast<std::size_t>(pv), -1);
    std::vector<bool> used(static_cast<std::size_t>(n), false);
    double count = 0.0;
    auto rec = [&](auto&& self, int i) -> void {
      if (i == pv) {
        count += 1.0;
        return;
      }
      for (int g = 0; g < n; ++g) {
        if (used[static_cast<std::size_t>(g)]) continue;
        bool ok = true;
        for (int q : pre[static_cast<std::size_t>(i)]) {
          if (!adj_has(g, map[static_cast<std::size_t>(q)])) {
            ok = false;
            break;
          }
        }
        if (!ok) continue;
        map[static_cast<std::size_t>(i)] = g;
        used[static_cast<std::size_t>(g)] = true;
        self(self, i + 1);
        used[static_cast<std::size_t>(g)] = false;
      }
    };
    rec(rec, 0);
    return count / aut;
  }

  double sample(CounterRng rng) {
    std::fill(rows.begin(), rows.end(), complemented ? ~0ull : 0ull);
    present.clear();
    if (complemented) {
      // Clear self loops and out-of-range bits, then remove the scanned
      // (absent) edges; present edges are recovered afterwards.
      for (int u = 0; u < n; ++u) {
        rows[static_cast<std::size_t>(u) * words + u / 64] &= ~(1ull << (u % 64));
        for (int b = n; b < words * 64; ++b) {
          rows[static_cast<std::size_t>(u) * words + b / 64] &= ~(1ull << (b % 64));
        }
      }
      scan_positions(rng, universe, p, log1mp, [&](std::uint64_t pos) {
        const auto [u, v] = decode(pos);
        rows[static_cast<std::size_t>(u) * words + v / 64] &= ~(1ull << (v % 64));
        rows[static_cast<std::size_t>(v) * words + u / 64] &= ~(1ull << (u % 64));
      });
      for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) {
          if (adj_has(u, v)) present.emplace_back(u, v);
        }
      }
    } else {
      scan_positions(rng, universe, p, log1mp, [&](std::uint64_t pos) {
        const auto [u, v] = decode(pos);
        set_edge(u, v);
        present.emplace_back(u, v);
      });
    }
    const double s = is_triangle ? count_triangles() : count_generic();
    return (s - mean) * inv_sd;
  }
};

struct ComplexState {
  int n = 0, kappa = 1;
  double p = 0.0;
  bool complemented = false;
  double log1mp = 0.0;
  double mean = 0.0, inv_sd = 1.0;
  std::uint64_t universe = 0;  // number of kappa-faces
  std::uint64_t subface_count = 0;
  int incident = 0;  // kappa-faces per (kappa-1)-face = n - kappa
  std::vector<std::vector<double>> binom;
  std::vector<int> face;  // scratch: vertices of the unranked face
  std::vector<std::uint32_t> ep;
  std::vector<int> cnt;
  std::uint32_t cur = 0;
  std::vector<std::uint64_t> touched;

  void init(int n_, int kappa_, double p_, const Moments& mo) {
    n = n_;
    kappa = kappa_;
    complemented = p_ > 0.5;
    p = complemented ? 1.0 - p_ : p_;
    log1mp = std::log1p(-p);
    mean = mo.mean;
    inv_sd = 1.0 / std::sqrt(mo.var);
    binom = binomial_table(n + 1);
    universe = static_cast<std::uint64_t>(
        binom[static_cast<std::size_t>(n)][static_cast<std::size_t>(kappa + 1)]);
    subface_count = static_cast<std::uint64_t>(
        binom[static_cast<std::size_t>(n)][static_cast<std::size_t>(kappa)]);
    incident = n - kappa;
    face.assign(static_cast<std::size_t>(kappa + 1), 0);
    ep.assign(static_cast<std::size_t>(subface_count), 0);
    cnt.assign(static_cast<std::size_t>(subface_count), 0);
    touched.reserve(1024);
  }

  // Lexicographic unranking of the id-th (kappa+1)-subset of {0..n-1}.
  void unrank(std::uint64_t id) {
    int v = 0;
    for (int slot = 0; slot < kappa + 1; ++slot) {
      for (;; ++v) {
        const double block = binom[static_cast<std::size_t>(n - 1 - v)]
                                  [static_cast<std::size_t>(kappa - slot)];
        if (static_cast<double>(id) < block) break;
        id -= static_cast<std::uint64_t>(block);
      }
      face[static_cast<std::size_t>(slot)] = v++;
    }
  }

  // Rank of the kappa-subset obtained by dropping face[skip].
  std::uint64_t subface_rank(int skip) const {
    std::uint64_t r = 0;
    int slot = 0;
    int prev = -1;
    for (int i = 0; i < kappa + 1; ++i) {
      if (i == skip) continue;
      const int v = face[static_cast<std::size_t>(i)];
      for (int w = prev + 1; w < v; ++w) {
        r += static_cast<std::uint64_t>(
            binom[static_cast<std::size_t>(n - 1 - w)][static_cast<std::size_t>(kappa - 1 - slot)]);
      }
      prev = v;
      ++slot;
    }
    return r;
  }

  double sample(CounterRng rng) {
    ++cur;
    touched.clear();
    scan_positions(rng, universe, p, log1mp, [&](std::uint64_t pos) {
      unrank(pos);
      for (int skip = 0; skip < kappa + 1; ++skip) {
        const std::uint64_t sf = subface_rank(skip);
        if (ep[sf] != cur) {
          ep[sf] = cur;
          cnt[sf] = 0;
          touched.push_back(sf);
        }
        ++cnt[sf];
      }
    });
    double isolated;
    if (!complemented) {
      isolated = static_cast<double>(subface_count) - static_cast<double>(touched.size());
    } else {
      // Scanned faces are the absent ones: a subface is isolated iff all of
      // its incident faces were scanned.
      long iso = 0;
      for (std::uint64_t sf : touched) iso += cnt[sf] == incident ? 1 : 0;
      isolated = static_cast<double>(iso);
    }
    return (isolated - mean) * inv_sd;
  }
};

struct HypercubeState {
  int n = 0, d = 0;
  double p = 0.0;
  bool complemented = false;
  int d_eff = 0;
  double log1mp = 0.0;
  double mean = 0.0, inv_sd = 1.0;
  std::uint64_t universe = 0;
  std::uint64_t half = 0;  // 2^{n-1}
  std::vector<int> deg;
  std::vector<std::uint32_t> ep;
  std::uint32_t cur = 0;
  std::vector<std::uint32_t> touched;

  void init(int n_, double p_, int d_, const Moments& mo) {
    n = n_;
    d = d_;
    complemented = p_ > 0.5;
    p = complemented ? 1.0 - p_ : p_;
    d_eff = complemented ? n - d : d;
    log1mp = std::log1p(-p);
    mean = mo.mean;
    inv_sd = 1.0 / std::sqrt(mo.var);
    half = std::uint64_t{1} << (n - 1);
    universe = static_cast<std::uint64_t>(n) * half;
    deg.assign(std::size_t{1} << n, 0);
    ep.assign(std::size_t{1} << n, 0);
    touched.reserve(4096);
  }

  void touch(std::uint32_t v) {
    if (ep[v] != cur) {
      ep[v] = cur;
      deg[v] = 0;
      touched.push_back(v);
    }
    ++deg[v];
  }

  double sample(CounterRng rng) {
    ++cur;
    touched.clear();
    scan_positions(rng, universe, p, log1mp, [&](std::uint64_t pos) {
      const int dir = static_cast<int>(pos / half);
      const std::uint64_t rest = pos % half;
      const std::uint64_t low = rest & ((std::uint64_t{1} << dir) - 1);
      const std::uint64_t v = ((rest >> dir) << (dir + 1)) | low;
      touch(static_cast<std::uint32_t>(v));
      touch(static_cast<std::uint32_t>(v | (std::uint64_t{1} << dir)));
    });
    long count = 0;
    for (std::uint32_t v : touched) count += deg[v] == d_eff ? 1 : 0;
    if (d_eff == 0) count += static_cast<long>((std::uint64_t{1} << n) - touched.size());
    return (static_cast<double>(count) - mean) * inv_sd;
  }
};

struct TwoRunsState {
  std::vector<double> alpha;
  bool uniform = false;
  double mean = 0.0, inv_sd = 1.0;
  int bits = 0;

  void init(const TwoRunsConfig& cfg, const Moments& mo) {
    alpha = cfg.alpha;
    uniform = !alpha.empty() &&
              std::all_of(alpha.begin(), alpha.end(), [&](double a) { return a == alpha[0]; });
    mean = mo.mean;
    inv_sd = 1.0 / std::sqrt(mo.var);
    bits = static_cast<int>(alpha.size()) + 1;
  }

  double sample(CounterRng rng) {
    const int words = (bits + 63) / 64;
    double g = 0.0;
    if (uniform) {
      // Pair i = (bit i, bit i+1). Within a word, x & (x >> 1) holds the
      // pairs starting at bits 0..62; the pair straddling the boundary is
      // counted separately from the previous word's top bit.
      const std::uint64_t L = static_cast<std::uint64_t>(alpha.size());
      std::uint64_t prev_top = 0;
      long pairs = 0;
      for (int w = 0; w < words; ++w) {
        const std::uint64_t x = rng.next_u64();
        const std::uint64_t base = static_cast<std::uint64_t>(w) * 64;
        std::uint64_t inside = x & (x >> 1);
        if (base >= L) {
          inside = 0;
        } else if (L - base < 64) {
          inside &= (std::uint64_t{1} << (L - base)) - 1;
        }
        pairs += std::popcount(inside);
        if (w > 0 && base - 1 < L && (prev_top & x & 1ull)) ++pairs;
        prev_top = x >> 63;
      }
      g = alpha[0] * static_cast<double>(pairs);
    } else {
      std::uint64_t word = rng.next_u64();
      int have = 64;
      bool prev = word & 1ull;
      word >>= 1;
      --have;
      for (std::size_t i = 0; i < alpha.size(); ++i) {
        if (have == 0) {
          word = rng.next_u64();
          have = 64;
        }
        const bool b = word & 1ull;
        word >>= 1;
        --have;
        if (prev && b) g += alpha[i];
        prev = b;
      }
    }
    return (g - mean) * inv_sd;
  }
};

}  // namespace

struct ModelSampler::Impl {
  std::variant<DegreeState, SubgraphState, ComplexState, HypercubeState, TwoRunsState> state;
};

ModelSampler::ModelSampler(const Model& model) : impl_(std::make_unique<Impl>()) {
  const Moments mo = model_moments(model);
  if (!(mo.var > 0.0)) throw ZeroVariance("model statistic has zero variance");
  std::visit(
      [&](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, DegreeModel>) {
          DegreeState s;
          s.init(m.n, m.p, m.d, mo);
          impl_->state = std::move(s);
        } else if constexpr (std::is_same_v<T, SubgraphModel>) {
          SubgraphState s;
          s.init(m.n, m.p, m.pattern, mo);
          impl_->state = std::move(s);
        } else if constexpr (std::is_same_v<T, ComplexModel>) {
          ComplexState s;
          s.init(m.n, m.kappa, m.p, mo);
          impl_->state = std::move(s);
        } else if constexpr (std::is_same_v<T, HypercubeModel>) {
          HypercubeState s;
          s.init(m.n, m.p, m.d, mo);
          impl_->state = std::move(s);
        } else {
          TwoRunsState s;
          s.init(TwoRunsConfig{m.alpha}, mo);
          impl_->state = std::move(s);
        }
      },
      model);
}

ModelSampler::~ModelSampler() = default;
ModelSampler::ModelSampler(ModelSampler&&) noexcept = default;

double ModelSampler::sample(CounterRng rng) {
  return std::visit([&](auto& s) { return s.sample(rng); }, impl_->state);
}

std::string model_label(const Model& model) {
  return std::visit(
      [](const auto& m) -> std::string {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, DegreeModel>) {
          return "degree(n=" + std::to_string(m.n) + ",p=" + fmt_p(m.p) +
                 ",d=" + std::to_string(m.d) + ")";
        } else if constexpr (std::is_same_v<T, SubgraphModel>) {
          return "subgraph(" + m.pattern.name + ",n=" + std::to_string(m.n) + ",p=" + fmt_p(m.p) +
                 ")";
        } else if constexpr (std::is_same_v<T, ComplexModel>) {
          return "complex(n=" + std::to_string(m.n) + ",kappa=" + std::to_string(m.kappa) +
                 ",p=" + fmt_p(m.p) + ")";
        } else if constexpr (std::is_same_v<T, HypercubeModel>) {
          return "hypercube(n=" + std::to_string(m.n) + ",p=" + fmt_p(m.p) +
                 ",d=" + std::to_string(m.d) + ")";
        } else {
          return "tworuns(window=" + std::to_string(m.alpha.size()) + ")";
        }
      },
      model);
}

Moments model_moments(const Model& model) {
  return std::visit(
      [](const auto& m) -> Moments {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, DegreeModel>) {
          return degree_count_moments({m.n, m.p, m.d});
        } else if constexpr (std::is_same_v<T, SubgraphModel>) {
          return subgraph_moments(m.n, m.p, m.pattern);
        } else if constexpr (std::is_same_v<T, ComplexModel>) {
          return complex_moments({m.n, m.kappa, m.p});
        } else if constexpr (std::is_same_v<T, HypercubeModel>) {
          return hypercube_moments({m.n, m.p, m.d});
        } else {
          const TwoRunsConfig cfg{m.alpha};
          return Moments{two_runs_mean(cfg), two_runs_variance(cfg)};
        }
      },
      model);
}

Functional model_functional(const Model& model) {
  return std::visit(
      [](const auto& m) -> Functional {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, DegreeModel>) {
          return degree_count_functional({m.n, m.p, m.d});
        } else if constexpr (std::is_same_v<T, SubgraphModel>) {
          return subgraph_functional(m.n, m.p, m.pattern);
        } else if constexpr (std::is_same_v<T, ComplexModel>) {
          return complex_functional({m.n, m.kappa, m.p});
        } else if constexpr (std::is_same_v<T, HypercubeModel>) {
          return hypercube_functional({m.n, m.p, m.d});
        } else {
          return two_runs_functional(TwoRunsConfig{m.alpha});
        }
      },
      model);
}

SampleBatch sample_statistic(const Model& model, std::size_t count, std::uint64_t seed) {
  if (count < 1) throw EmptyBatch("sample count must be at least 1");
  SampleBatch batch;
  batch.model = model_label(model);
  batch.seed = seed;
  batch.values.resize(count);
  parallel_for_blocks(count, [&](std::size_t begin, std::size_t end) {
    ModelSampler sampler(model);
    for (std::size_t i = begin; i < end; ++i) {
      batch.values[i] = sampler.sample(CounterRng(seed, i));
    }
  });
  return batch;
}

void write_batch(const std::string& path, const SampleBatch& batch) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path + " for writing");
  const char magic[4] = {'R', 'S', 'M', 'B'};
  const std::uint32_t version = 1;
  const std::uint64_t count = batch.values.size();
  out.write(magic, 4);
  out.write(reinterpret_cast<const char*>(&version), 4);
  out.write(reinterpret_cast<const char*>(&count), 8);
  out.write(reinterpret_cast<const char*>(batch.values.data()),
            static_cast<std::streamsize>(count * sizeof(double)));
  if (!out) throw IoError("short write to " + path);
}

SampleBatch read_batch(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  char magic[4];
  std::uint32_t version = 0;
  std::uint64_t count = 0;
  in.read(magic, 4);
  in.read(reinterpret_cast<char*>(&version), 4);
  in.read(reinterpret_cast<char*>(&count), 8);
  if (!in || std::memcmp(magic, "RSMB", 4) != 0) throw IoError("bad batch header in " + path);
  if (version != 1) throw IoError("unsupported batch version");
  SampleBatch batch;
  batch.values.resize(count);
  in.read(reinterpret_cast<char*>(batch.values.data()),
          static_cast<std::streamsize>(count * sizeof(double)));
  if (!in) throw IoError("truncated batch file " + path);
  return batch;
}

}  // namespace rsl
