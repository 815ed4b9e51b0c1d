#include "rsl/stein.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>

#include "rsl/distance.hpp"
#include "rsl/malliavin.hpp"
#include "rsl/normal.hpp"
#include "rsl/numeric.hpp"
#include "rsl/parallel.hpp"

namespace rsl {

namespace {

constexpr double kSqrt2Pi = 2.50662827463100050242;
constexpr double kSqrt1_2 = 0.70710678118654752440;

double expect_product_sq(const std::vector<double>& w, std::span<const double> a,
                         std::span<const double> b) {
  // E[a^2 b^2] with the state weights.
  double s = 0.0;
  for (std::size_t x = 0; x < w.size(); ++x) {
    const double aa = a[x] * a[x], bb = b[x] * b[x];
    s += w[x] * aa * bb;
  }
  return s;
}

// Minimal unsigned big integer (base 2^32) for the exact gamma_m arithmetic.
class BigUint {
 public:
  BigUint() = default;
  explicit BigUint(std::uint64_t v) {
    while (v) {
      limbs_.push_back(static_cast<std::uint32_t>(v));
      v >>= 32;
    }
  }

  BigUint& operator*=(std::uint64_t f) {
    std::uint64_t carry = 0;
    for (auto& limb : limbs_) {
      const unsigned __int128 t =
          static_cast<unsigned __int128>(limb) * f + carry;
      limb = static_cast<std::uint32_t>(t);
      carry = static_cast<std::uint64_t>(t >> 32);
    }
    while (carry) {
      limbs_.push_back(static_cast<std::uint32_t>(carry));
      carry >>= 32;
    }
    return *this;
  }

  BigUint& operator+=(const BigUint& rhs) {
    const std::size_t n = std::max(limbs_.size(), rhs.limbs_.size());
    limbs_.resize(n, 0);
    std::uint64_t carry = 0;
    for (std::size_t i = 0; i < n; ++i) {
      std::uint64_t t = carry + limbs_[i];
      if (i < rhs.limbs_.size()) t += rhs.limbs_[i];
      limbs_[i] = static_cast<std::uint32_t>(t);
      carry = t >> 32;
    }
    if (carry) limbs_.push_back(static_cast<std::uint32_t>(carry));
    return *this;
  }

  double to_double() const {
    double v = 0.0;
    for (std::size_t i = limbs_.size(); i-- > 0;) {
      v = v * 4294967296.0 + static_cast<double>(limbs_[i]);
    }
    return v;
  }

 private:
  std::vector<std::uint32_t> limbs_;
};

BigUint big_factorial(int n) {
  BigUint f(1);
  for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
  return f;
}

std::uint64_t u64_binomial(int n, int r) {
  std::uint64_t c = 1;
  for (int i = 1; i <= r; ++i) {
    c = c * static_cast<std::uint64_t>(n - r + i) / static_cast<std::uint64_t>(i);
  }
  return c;
}

}  // namespace

double gamma_m_constant(int m) {
  if (m < 1) throw OrderExceedsDimension("gamma_m needs a positive chaos order");
  // gamma_m = 2 (2m-1)! sum_r r! C(m,r)^2; every multiply stays in exact
  // integer arithmetic, only the final value is cast.
  BigUint gamma(0);
  for (int r = 1; r <= m; ++r) {
    BigUint term = big_factorial(2 * m - 1);
    term *= 2;
    for (int i = 2; i <= r; ++i) term *= static_cast<std::uint64_t>(i);
    const std::uint64_t b = u64_binomial(m, r);
    term *= b;
    term *= b;
    gamma += term;
  }
  return gamma.to_double();
}

BoundTerms bound_terms(const Functional& f) {
  const BiasedSpace& sp = f.space();
  const int m = sp.dim();
  if (m > 16) {
    // Soft warning only: the triple sums are O(m^3 2^m).
    std::fprintf(stderr, "rsl: bound_terms on m=%d coordinates (recommended m <= 16)\n", m);
  }
  const auto& w = sp.weights();

  BoundTerms t;
  for (int k = 0; k < m; ++k) t.kappa += sp.pq(k);

  const std::vector<Functional> grads = all_gradients(f);

  // Per-coordinate fourth and third absolute moments of D_k F.
  std::vector<double> e4(static_cast<std::size_t>(m), 0.0);
  for (int k = 0; k < m; ++k) {
    const auto g = grads[static_cast<std::size_t>(k)].values();
    double s4 = 0.0, s3 = 0.0;
    for (std::size_t x = 0; x < w.size(); ++x) {
      const double g2 = g[x] * g[x];
      s4 += w[x] * g2 * g2;
      s3 += w[x] * g2 * std::fabs(g[x]);
    }
    e4[static_cast<std::size_t>(k)] = s4;
    t.b3 += s4 / sp.pq(k);
    t.a3 += s3 / sp.sqrt_pq(k);
  }

  // a_{jk} = sqrt(E[(D_j F)^2 (D_k F)^2]).
  std::vector<double> ajk(static_cast<std::size_t>(m) * m, 0.0);
  for (int j = 0; j < m; ++j) {
    for (int k = j; k < m; ++k) {
      const double v = std::sqrt(expect_product_sq(
          w, grads[static_cast<std::size_t>(j)].values(), grads[static_cast<std::size_t>(k)].values()));
      ajk[static_cast<std::size_t>(j) * m + k] = v;
      ajk[static_cast<std::size_t>(k) * m + j] = v;
    }
  }

  // Loop over the inner gradient coordinate l; deterministic order of the
  // final accumulation, parallel work per l.
  std::vector<double> c1(static_cast<std::size_t>(m) * m, 0.0);  // sum_l sqrt(E[dd_lj^2 dd_lk^2])
  std::vector<double> b2_per_l(static_cast<std::size_t>(m), 0.0);
  std::vector<double> b4_per_l(static_cast<std::size_t>(m), 0.0);
  std::vector<double> b5_per_l(static_cast<std::size_t>(m), 0.0);
  std::vector<std::vector<double>> c1_per_l(static_cast<std::size_t>(m));

  parallel_for_blocks(static_cast<std::size_t>(m), [&](std::size_t lo, std::size_t hi) {
    for (std::size_t lu = lo; lu < hi; ++lu) {
      const int l = static_cast<int>(lu);
      std::vector<std::vector<double>> dd(static_cast<std::size_t>(m));
      std::vector<double> e4dd(static_cast<std::size_t>(m), 0.0);
      for (int j = 0; j < m; ++j) {
        if (j == l) continue;
        const Functional g = gradient(grads[static_cast<std::size_t>(j)], l);
        dd[static_cast<std::size_t>(j)].assign(g.values().begin(), g.values().end());
        double s4 = 0.0;
        const auto& gv = dd[static_cast<std::size_t>(j)];
        for (std::size_t x = 0; x < w.size(); ++x) {
          const double g2 = gv[x] * gv[x];
          s4 += w[x] * g2 * g2;
        }
        e4dd[static_cast<std::size_t>(j)] = s4;
      }
      auto& c1l = c1_per_l[lu];
      c1l.assign(static_cast<std::size_t>(m) * m, 0.0);
      for (int j = 0; j < m; ++j) {
        if (j == l) continue;
        for (int k = j; k < m; ++k) {
          if (k == l) continue;
          const double e = (j == k) ? e4dd[static_cast<std::size_t>(j)]
                                    : expect_product_sq(w, dd[static_cast<std::size_t>(j)],
                                                        dd[static_cast<std::size_t>(k)]);
          b2_per_l[lu] += (j == k ? 1.0 : 2.0) * e / sp.pq(l);
          const double r = std::sqrt(e);
          c1l[static_cast<std::size_t>(j) * m + k] = r;
          c1l[static_cast<std::size_t>(k) * m + j] = r;
        }
        b4_per_l[lu] += std::sqrt(e4[static_cast<std::size_t>(j)]) *
                        std::sqrt(e4dd[static_cast<std::size_t>(j)]) / sp.pq(j);
        b5_per_l[lu] += e4dd[static_cast<std::size_t>(j)] / (sp.pq(j) * sp.pq(l));
      }
    }
  });

  for (int l = 0; l < m; ++l) {
    t.b2 += b2_per_l[static_cast<std::size_t>(l)];
    t.b4 += b4_per_l[static_cast<std::size_t>(l)];
    t.b5 += b5_per_l[static_cast<std::size_t>(l)];
    const auto& c1l = c1_per_l[static_cast<std::size_t>(l)];
    for (std::size_t i = 0; i < c1.size(); ++i) c1[i] += c1l[i];
  }
  for (std::size_t i = 0; i < c1.size(); ++i) t.b1 += ajk[i] * c1[i];
  return t;
}

double second_order_kolmogorov(const BoundTerms& t, SecondOrderVariant variant) {
  const double head = 0.5 * std::sqrt(15.0) * std::sqrt(t.b1) +
                      0.5 * std::sqrt(3.0) * std::sqrt(t.b2);
  if (variant == SecondOrderVariant::R1) {
    return head + 2.0 * std::sqrt(t.b3) + 2.0 * std::sqrt(6.0) * std::sqrt(t.b4) +
           2.0 * std::sqrt(3.0) * std::sqrt(t.b5);
  }
  return head + 4.0 * std::sqrt(t.kappa) * std::sqrt(t.b3);
}

double second_order_wasserstein(const BoundTerms& t) {
  constexpr double kTwoPi = 6.28318530717958647692;
  return std::sqrt(15.0 / kTwoPi) * std::sqrt(t.b1) + std::sqrt(3.0 / kTwoPi) * std::sqrt(t.b2) +
         t.a3;
}

void require_standardized(const Functional& f) {
  const double mean = expectation(f, 1);
  const double var = variance(f);
  if (std::fabs(mean) > 1e-8 || std::fabs(var - 1.0) > 1e-8) {
    throw NotStandardized("bound requires mean 0, variance 1 (got mean " + std::to_string(mean) +
                          ", var " + std::to_string(var) + ")");
  }
}

double first_term_inner(const Functional& f) {
  const Functional inner = malliavin_inner(f);
  const auto& w = f.space().weights();
  double s = 0.0;
  for (std::size_t x = 0; x < w.size(); ++x) {
    s += w[x] * std::fabs(1.0 - inner(static_cast<StateMask>(x)));
  }
  return s;
}

double gamma0_first_term(const Functional& f) {
  require_standardized(f);
  const Functional g0 = gamma0(f, neg_L_inv(f));
  const auto& w = f.space().weights();
  double s = 0.0;
  for (std::size_t x = 0; x < w.size(); ++x) {
    s += w[x] * std::fabs(1.0 - g0(static_cast<StateMask>(x)));
  }
  return s;
}

double kol_r2(const Functional& f) {
  require_standardized(f);
  const BiasedSpace& sp = f.space();
  const auto& w = sp.weights();
  double b3 = 0.0;
  for (int k = 0; k < sp.dim(); ++k) {
    const Functional g = gradient(f, k);
    double s4 = 0.0;
    for (std::size_t x = 0; x < w.size(); ++x) {
      const double g2 = g(static_cast<StateMask>(x)) * g(static_cast<StateMask>(x));
      s4 += w[x] * g2 * g2;
    }
    b3 += s4 / sp.pq(k);
  }
  double kappa = 0.0;
  for (int k = 0; k < sp.dim(); ++k) kappa += sp.pq(k);
  return first_term_inner(f) + 4.0 * std::sqrt(kappa) * std::sqrt(b3);
}

namespace {

std::vector<Functional> r1_process(const Functional& f) {
  const Functional linv = apply_L_inv(f);
  const BiasedSpace& sp = f.space();
  std::vector<Functional> u;
  u.reserve(static_cast<std::size_t>(sp.dim()));
  for (int k = 0; k < sp.dim(); ++k) {
    const Functional df = gradient(f, k);
    const Functional dl = gradient(linv, k);
    const double inv = 1.0 / sp.sqrt_pq(k);
    std::vector<double> vals(sp.state_count());
    for (std::size_t x = 0; x < vals.size(); ++x) {
      vals[x] = inv * df(static_cast<StateMask>(x)) * std::fabs(dl(static_cast<StateMask>(x)));
    }
    u.emplace_back(f.space_ptr(), std::move(vals));
  }
  return u;
}

}  // namespace

double r1_delta_l1(const Functional& f) {
  const std::vector<Functional> u = r1_process(f);
  return abs_moment(divergence(u), 1.0);
}

double kol_r1(const Functional& f) {
  require_standardized(f);
  return first_term_inner(f) + 2.0 * r1_delta_l1(f);
}

double kol_r0(const Functional& f, int refine) {
  require_standardized(f);
  if (refine < 1) throw DimensionMismatch("kol_r0 needs refine >= 1");
  const BiasedSpace& sp = f.space();
  const auto& w = sp.weights();
  const Functional linv = apply_L_inv(f);

  // The z-dependent term is E[ sum_k D_k G * D_kF/sqrt(pq) * |D_kL^{-1}F| ]
  // with G = phi_z(F) pointwise. Collecting the z-free weights per target
  // state reduces every z evaluation to a sum over the atoms of F.
  std::vector<double> coef(sp.state_count(), 0.0);
  for (int k = 0; k < sp.dim(); ++k) {
    const Functional df = gradient(f, k);
    const Functional dl = gradient(linv, k);
    const StateMask bit = StateMask{1} << k;
    for (std::size_t x = 0; x < w.size(); ++x) {
      const double a =
          w[x] * df(static_cast<StateMask>(x)) * std::fabs(dl(static_cast<StateMask>(x)));
      coef[x | bit] += a;
      coef[x & ~static_cast<std::size_t>(bit)] -= a;
    }
  }

  const AtomLaw law = law_of(f);
  std::vector<double> atom_coef(law.atoms.size(), 0.0);
  {
    const auto vals = f.values();
    for (std::size_t x = 0; x < coef.size(); ++x) {
      const auto it = std::lower_bound(law.atoms.begin(), law.atoms.end(), vals[x]);
      atom_coef[static_cast<std::size_t>(it - law.atoms.begin())] += coef[x];
    }
  }

  // Atom-anchored z grid with tails at +-10 and `refine` interior points per
  // anchor interval.
  std::vector<double> anchors;
  anchors.push_back(-10.0);
  for (double a : law.atoms) {
    if (a > -10.0 && a < 10.0) anchors.push_back(a);
  }
  anchors.push_back(10.0);
  std::sort(anchors.begin(), anchors.end());
  anchors.erase(std::unique(anchors.begin(), anchors.end()), anchors.end());

  // closed_indicator evaluates the z-upward limit (indicator v >= z), which
  // covers the left-limit side of the Kolmogorov supremum at the atoms.
  auto term_at = [&](double z, bool closed_indicator) {
    double s = 0.0;
    for (std::size_t i = 0; i < law.atoms.size(); ++i) {
      const double v = law.atoms[i];
      const double fz = stein_solution(z, v);
      const bool above = closed_indicator ? v >= z : v > z;
      s += (v * fz + (above ? 1.0 : 0.0)) * atom_coef[i];
    }
    return s;
  };

  double sup = 0.0;
  bool first = true;
  for (std::size_t i = 0; i < anchors.size(); ++i) {
    const double v = std::max(term_at(anchors[i], false), term_at(anchors[i], true));
    sup = first ? v : std::max(sup, v);
    first = false;
    if (i + 1 < anchors.size()) {
      const double a = anchors[i], b = anchors[i + 1];
      for (int j = 1; j <= refine; ++j) {
        const double z = a + (b - a) * j / (refine + 1);
        sup = std::max(sup, term_at(z, false));
      }
    }
  }
  return first_term_inner(f) + sup;
}

double stein_solution(double z, double x) {
  // f_z(x) = sqrt(2 pi) e^{x^2/2} Phi(min(x,z)) (1 - Phi(max(x,z))).
  // The exponential is always paired with the tail factor that cancels it,
  // so no branch can overflow.
  if (x <= z) {
    if (x <= 0.0) {
      return kSqrt2Pi * 0.5 * erfcx_scaled(-x * kSqrt1_2) * normal_sf(z);
    }
    return kSqrt2Pi * normal_cdf(x) * 0.5 * erfcx_scaled(z * kSqrt1_2) *
           std::exp(0.5 * (x - z) * (x + z));
  }
  if (x >= 0.0) {
    return kSqrt2Pi * normal_cdf(z) * 0.5 * erfcx_scaled(x * kSqrt1_2);
  }
  return kSqrt2Pi * normal_sf(x) * 0.5 * erfcx_scaled(-z * kSqrt1_2) *
         std::exp(0.5 * (x - z) * (x + z));
}

double maximal_influence(const Kernel& kernel) {
  double best = 0.0;
  for (int k = 0; k <= kernel.max_index(); ++k) {
    best = std::max(best, kernel.row_norm_sq(k));
  }
  return best;
}

FourthMomentReport fourth_moment_bound(const Functional& f, int order, const Kernel& kernel) {
  if (kernel.order() != order) {
    throw DimensionMismatch("kernel order does not match the declared chaos order");
  }
  const ChaosExpansion c = to_chaos(f);
  double off_mass = 0.0;
  for (std::size_t a = 0; a < c.coeffs().size(); ++a) {
    if (std::popcount(static_cast<StateMask>(a)) != order) {
      off_mass += c.coeff(static_cast<StateMask>(a)) * c.coeff(static_cast<StateMask>(a));
    }
  }
  if (off_mass > 1e-8) {
    throw NotPureChaos("functional has chaos mass " + std::to_string(off_mass) +
                       " outside level " + std::to_string(order));
  }
  const double var = expectation(f, 2) - expectation(f, 1) * expectation(f, 1);
  if (std::fabs(var - 1.0) > 1e-8) {
    throw NotStandardized("fourth moment bound requires E[F^2] = 1");
  }

  FourthMomentReport rep;
  rep.order = order;
  rep.fourth_moment = expectation(f, 4);
  rep.max_influence = maximal_influence(kernel);
  rep.gamma_m = gamma_m_constant(order);
  const double md = static_cast<double>(order);
  const double c1 =
      (2.0 * md - 1.0 + 4.0 * std::sqrt((8.0 * md * md - 7.0) * (4.0 * md - 3.0))) / (2.0 * md);
  const double c2 =
      (2.0 * md - 1.0 + 4.0 * std::sqrt((8.0 * md * md - 7.0) * (6.0 * md - 3.0) * rep.gamma_m)) /
      (2.0 * md);
  rep.bound = c1 * std::sqrt(std::fabs(rep.fourth_moment - 3.0)) +
              c2 * std::sqrt(rep.max_influence);
  return rep;
}

double j1j2_bound(const Kernel& f, const Kernel& g, double constant) {
  if (f.order() != 1 || g.order() != 2) {
    throw DimensionMismatch("j1j2_bound expects kernel orders 1 and 2");
  }
  const double norm = f.norm_sq() + 2.0 * g.norm_sq();
  if (std::fabs(norm - 1.0) > 1e-8) {
    throw NotStandardized("j1j2_bound requires |f|^2 + 2|g|^2 = 1");
  }
  const double t1 = std::sqrt(contract11(g, g).norm_sq(/*off_diagonal_only=*/true));
  const double t2 = contract11(f, g).norm_sq(false);
  const double t3 = std::sqrt(f.pow4_sum());
  const double t4 = std::sqrt(g.pow4_sum());
  double t5 = 0.0;
  const int hi = std::max(f.max_index(), g.max_index());
  for (int k = 0; k <= hi; ++k) {
    const double fk = f.at(StateMask{1} << k);
    const double row = g.row_norm_sq(k);
    t5 += (1.0 + fk * fk) * row * row;
  }
  return constant * (t1 + t2 + t3 + t4 + std::sqrt(t5));
}

}  // namespace rsl
