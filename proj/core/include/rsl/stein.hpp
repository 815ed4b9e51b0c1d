#pragma once

#include <vector>

#include "rsl/chaos.hpp"
#include "rsl/functional.hpp"

namespace rsl {

/// The five second-order Poincare quantities plus kappa = sum_k p_k q_k and
/// the Wasserstein third-moment sum A3 = sum_k (p_k q_k)^{-1/2} E|D_k F|^3.
struct BoundTerms {
  double b1 = 0.0;
  double b2 = 0.0;
  double b3 = 0.0;
  double b4 = 0.0;
  double b5 = 0.0;
  double kappa = 0.0;
  double a3 = 0.0;
};

/// Exact evaluation of B1..B5, kappa and A3 by full-state enumeration.
/// Cost is O(m^3 2^m); intended for m <= 16.
BoundTerms bound_terms(const Functional& f);

enum class SecondOrderVariant { R1, R2 };

/// Second-order Kolmogorov bounds:
///   R1: (sqrt15/2) sqrt(B1) + (sqrt3/2) sqrt(B2) + 2 sqrt(B3)
///       + 2 sqrt6 sqrt(B4) + 2 sqrt3 sqrt(B5)
///   R2: (sqrt15/2) sqrt(B1) + (sqrt3/2) sqrt(B2) + 4 sqrt(kappa) sqrt(B3)
double second_order_kolmogorov(const BoundTerms& t, SecondOrderVariant variant);

/// Second-order Wasserstein bound:
/// sqrt(15/(2 pi)) sqrt(B1) + sqrt(3/(2 pi)) sqrt(B2) + A3.
double second_order_wasserstein(const BoundTerms& t);

/// E|1 - <DF, -DL^{-1}F>| for a standardized F (shared first term of the
/// abstract bounds).
double first_term_inner(const Functional& f);

/// Gamma_0 variant of the first term: E|1 - Gamma_0(F, -L^{-1}F)|.
double gamma0_first_term(const Functional& f);

/// Abstract Kolmogorov bounds for standardized F (mean 0, variance 1 within
/// 1e-8; otherwise NotStandardized):
///   kol_r2 = first term + 4 sqrt(kappa) sqrt(B3)                    (exact)
///   kol_r1 = first term + 2 E|delta(u)|, u_k=(p_k q_k)^{-1/2} D_kF |D_kL^{-1}F|   (exact)
///   kol_r0 = first term + sup_z E[<D(F f_z(F) + 1_{F>z}) DF/sqrt(pq), |DL^{-1}F|>]
/// kol_r0's sup runs over an atom-anchored z grid with `refine` interior
/// points per interval plus tail anchors at +-10; it is grid-approximate.
double kol_r2(const Functional& f);
double kol_r1(const Functional& f);
double kol_r0(const Functional& f, int refine = 32);

/// E|delta(u)| for the R1 process u_k = (p_k q_k)^{-1/2} D_kF |D_kL^{-1}F|
/// (kol_r1 equals first_term_inner + 2 times this).
double r1_delta_l1(const Functional& f);

/// Bounded solution of the Stein equation f'(x) - x f(x) = 1_{x<=z} - Phi(z);
/// evaluated through the scaled complementary error function, stable for all
/// x.
double stein_solution(double z, double x);

/// Maximal influence of a canonical kernel: max over a coordinate of the sum
/// of squared entries over the index sets containing it.
double maximal_influence(const Kernel& kernel);

/// gamma_m = 2 (2m-1)! sum_{r=1}^m r! C(m,r)^2, computed in exact integer
/// arithmetic (arbitrary precision) before the final cast.
double gamma_m_constant(int m);

struct FourthMomentReport {
  int order = 0;
  double fourth_moment = 0.0;
  double max_influence = 0.0;
  double gamma_m = 0.0;
  double bound = 0.0;
};

/// Fourth-moment-influence bound for a pure chaos F = J_m(kernel) with
/// E[F^2] = 1:
///   ((2m-1+4 sqrt((8m^2-7)(4m-3)))/(2m)) sqrt|E F^4 - 3|
/// + ((2m-1+4 sqrt((8m^2-7)(6m-3) gamma_m))/(2m)) sqrt(M(f)).
/// Throws NotPureChaos if F has chaos mass outside level m, NotStandardized
/// if E[F^2] != 1 within 1e-8.
FourthMomentReport fourth_moment_bound(const Functional& f, int order, const Kernel& kernel);

/// Standardization check used by the bounds (|E F| <= 1e-8, |Var F - 1| <= 1e-8).
void require_standardized(const Functional& f);

/// Two-runs style bound for F = J_1(f) + J_2(g) with 2|g|^2 + |f|^2 = 1:
/// constant * [ |g *11 g 1_D| + |f *11 g|^2 + (sum f^4)^{1/2}
///            + (sum g^4)^{1/2} + (sum_k (1+f^2(k)) (sum_l g^2(l,k))^2)^{1/2} ].
/// The multiplicative constant is an input because the underlying
/// hypercontractivity constant is not pinned.
double j1j2_bound(const Kernel& f, const Kernel& g, double constant);

}  // namespace rsl
