#include "rsl/distance.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "rsl/normal.hpp"

namespace rsl {

AtomLaw law_of(const Functional& f) {
  const auto& w = f.space().weights();
  const auto vals = f.values();
  std::vector<std::size_t> order(vals.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });

  AtomLaw law;
  for (std::size_t i : order) {
    if (!law.atoms.empty() && vals[i] == law.atoms.back()) {
      law.mass.back() += w[i];
    } else {
      law.atoms.push_back(vals[i]);
      law.mass.push_back(w[i]);
    }
  }
  law.cum.resize(law.mass.size());
  double c = 0.0;
  for (std::size_t i = 0; i < law.mass.size(); ++i) {
    c += law.mass[i];
    law.cum[i] = c;
  }
  if (!law.cum.empty()) law.cum.back() = 1.0;  // absorb summation roundoff
  return law;
}

double kolmogorov_exact(const AtomLaw& law) {
  double sup = 0.0;
  double below = 0.0;
  for (std::size_t i = 0; i < law.atoms.size(); ++i) {
    const double phi = normal_cdf(law.atoms[i]);
    sup = std::max(sup, std::fabs(law.cum[i] - phi));
    sup = std::max(sup, std::fabs(below - phi));
    below = law.cum[i];
  }
  return sup;
}

double kolmogorov_exact(const Functional& f) { return kolmogorov_exact(law_of(f)); }

namespace {

// Integral of |c - Phi(z)| over [a,b] for a constant level c in [0,1].
double segment_l1(double c, double a, double b) {
  const double ia = normal_cdf_antiderivative(a);
  const double ib = normal_cdf_antiderivative(b);
  const double fa = normal_cdf(a), fb = normal_cdf(b);
  if (c <= fa) return (ib - ia) - c * (b - a);  // Phi >= c throughout
  if (c >= fb) return c * (b - a) - (ib - ia);  // Phi <= c throughout
  const double zc = normal_quantile(c);
  const double ic = normal_cdf_antiderivative(zc);
  return (c * (zc - a) - (ic - ia)) + ((ib - ic) - c * (b - zc));
}

}  // namespace

double wasserstein_exact_normal(const AtomLaw& law) {
  if (law.atoms.empty()) return 0.0;
  // Left tail: CDF of F is 0 below the first atom.
  double total = normal_cdf_antiderivative(law.atoms.front());
  for (std::size_t i = 0; i + 1 < law.atoms.size(); ++i) {
    total += segment_l1(law.cum[i], law.atoms[i], law.atoms[i + 1]);
  }
  // Right tail: integral of 1 - Phi beyond the last atom, written as
  // phi(b) - b (1 - Phi(b)) to avoid cancellation for large b.
  const double b = law.atoms.back();
  total += normal_pdf(b) - b * normal_sf(b);
  return total;
}

double wasserstein_exact_normal(const Functional& f) {
  return wasserstein_exact_normal(law_of(f));
}

}  // namespace rsl
