#include "rsl/normal.hpp"

#include <cmath>
#include <limits>

namespace rsl {

namespace {

// Cody-style rational Chebyshev approximation of erf/erfc (W. J. Cody,
// "Rational Chebyshev approximation for the error function", 1969; the
// coefficient sets below are the classical double-precision ones used by
// netlib's CALERF). Relative error is below 1.2e-16 in each branch.

constexpr double kErfA[5] = {3.16112374387056560e0, 1.13864154151050156e2,
                             3.77485237685302021e2, 3.20937758913846947e3,
                             1.85777706184603153e-1};
constexpr double kErfB[4] = {2.36012909523441209e1, 2.44024637934444173e2,
                             1.28261652607737228e3, 2.84423683343917062e3};

constexpr double kErfcC[9] = {5.64188496988670089e-1, 8.88314979438837594e0,
                              6.61191906371416295e1,  2.98635138197400131e2,
                              8.81952221241769090e2,  1.71204761263407058e3,
                              2.05107837782607147e3,  1.23033935479799725e3,
                              2.15311535474403846e-8};
constexpr double kErfcD[8] = {1.57449261107098347e1, 1.17693950891312499e2,
                              5.37181101862009858e2, 1.62138957456669019e3,
                              3.29079923573345963e3, 4.36261909014324716e3,
                              3.43936767414372164e3, 1.23033935480374942e3};

constexpr double kErfcP[6] = {3.05326634961232344e-1, 3.60344899949804439e-1,
                              1.25781726111229246e-1, 1.60837851487422766e-2,
                              6.58749161529837803e-4, 1.63153871373020978e-2};
constexpr double kErfcQ[5] = {2.56852019228982242e0, 1.87295284992346047e0,
                              5.27905102951428412e-1, 6.05183413124413191e-2,
                              2.33520497626869185e-3};

constexpr double kInvSqrtPi = 0.56418958354775628695;  // 1/sqrt(pi)
constexpr double kSqrt1_2 = 0.70710678118654752440;    // 1/sqrt(2)
constexpr double kSqrt2Pi = 2.50662827463100050242;    // sqrt(2 pi)

double erf_small(double x) {
  // |x| <= 0.46875
  const double z = x * x;
  double num = kErfA[4] * z;
  double den = z;
  for (int i = 0; i < 3; ++i) {
    num = (num + kErfA[i]) * z;
    den = (den + kErfB[i]) * z;
  }
  return x * (num + kErfA[3]) / (den + kErfB[3]);
}

double erfc_mid_scaled(double x) {
  // 0.46875 < x <= 4: returns exp(x^2) erfc(x)
  double num = kErfcC[8] * x;
  double den = x;
  for (int i = 0; i < 7; ++i) {
    num = (num + kErfcC[i]) * x;
    den = (den + kErfcD[i]) * x;
  }
  return (num + kErfcC[7]) / (den + kErfcD[7]);
}

double erfc_large_scaled(double x) {
  // x > 4: returns exp(x^2) erfc(x)
  const double z = 1.0 / (x * x);
  double num = kErfcP[5] * z;
  double den = z;
  for (int i = 0; i < 4; ++i) {
    num = (num + kErfcP[i]) * z;
    den = (den + kErfcQ[i]) * z;
  }
  const double r = z * (num + kErfcP[4]) / (den + kErfcQ[4]);
  return (kInvSqrtPi - r) / x;
}

// exp(-x^2) with the two-part split that keeps the rounding of x*x out of
// the exponential (Cody's trick: square a 1/16-grid snap of x).
double exp_neg_sq(double x) {
  const double xi = std::floor(x * 16.0) / 16.0;
  const double del = (x - xi) * (x + xi);
  return std::exp(-xi * xi) * std::exp(-del);
}

}  // namespace

double erfcx_scaled(double t) {
  if (t < 0.0) {
    // erfcx(t) = 2 exp(t^2) - erfcx(-t); only usable while exp(t^2) is finite.
    const double e = std::exp(t * t);
    return 2.0 * e - erfcx_scaled(-t);
  }
  if (t <= 0.46875) return std::exp(t * t) * (1.0 - erf_small(t));
  if (t <= 4.0) return erfc_mid_scaled(t);
  return erfc_large_scaled(t);
}

double normal_sf(double z) {
  const double t = z * kSqrt1_2;
  if (t < -0.46875) {
    const double s = -t;
    const double scaled = s <= 4.0 ? erfc_mid_scaled(s) : erfc_large_scaled(s);
    return 1.0 - 0.5 * exp_neg_sq(s) * scaled;
  }
  if (t <= 0.46875) return 0.5 * (1.0 - erf_small(t));
  const double scaled = t <= 4.0 ? erfc_mid_scaled(t) : erfc_large_scaled(t);
  return 0.5 * exp_neg_sq(t) * scaled;
}

double normal_cdf(double z) { return normal_sf(-z); }

double normal_pdf(double z) {
  return std::exp(-0.5 * z * z) / kSqrt2Pi;
}

double normal_quantile(double u) {
  if (!(u > 0.0)) return -std::numeric_limits<double>::infinity();
  if (!(u < 1.0)) return std::numeric_limits<double>::infinity();
  // Acklam's rational approximation, then one Halley step against our Phi.
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};
  const double plow = 0.02425, phigh = 1.0 - plow;
  double x;
  if (u < plow) {
    const double q = std::sqrt(-2.0 * std::log(u));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (u <= phigh) {
    const double q = u - 0.5, r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    const double q = std::sqrt(-2.0 * std::log(1.0 - u));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  const double e = normal_cdf(x) - u;
  const double f = normal_pdf(x);
  if (f > 0.0) {
    const double w = e / f;
    x -= w / (1.0 + 0.5 * x * w);  // Halley
  }
  return x;
}

double normal_cdf_antiderivative(double z) {
  if (z < 0.0) {
    // z Phi(z) + phi(z) = phi(z) - |z| Phi(-|z|); both terms tiny together.
    return normal_pdf(z) + z * normal_cdf(z);
  }
  return z * normal_cdf(z) + normal_pdf(z);
}

}  // namespace rsl
