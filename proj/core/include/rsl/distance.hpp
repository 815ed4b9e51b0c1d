#pragma once

#include <vector>

#include "rsl/functional.hpp"

namespace rsl {

/// The exact discrete law of a functional: sorted distinct atoms with masses
/// and cumulative masses.
struct AtomLaw {
  std::vector<double> atoms;
  std::vector<double> mass;
  std::vector<double> cum;  // cum[i] = P(F <= atoms[i])
};

AtomLaw law_of(const Functional& f);

/// Exact Kolmogorov distance between the law of F and N(0,1): both one-sided
/// gaps are evaluated at every atom (value and left limit), which realizes
/// the supremum because the discrete CDF is a step function and Phi is
/// continuous and increasing.
double kolmogorov_exact(const Functional& f);
double kolmogorov_exact(const AtomLaw& law);

/// Exact 1-Wasserstein distance to N(0,1): the L1 distance between the CDFs,
/// integrated piecewise with the closed-form antiderivative z Phi(z)+phi(z)
/// and split at the crossing quantile inside each step.
double wasserstein_exact_normal(const Functional& f);
double wasserstein_exact_normal(const AtomLaw& law);

}  // namespace rsl
