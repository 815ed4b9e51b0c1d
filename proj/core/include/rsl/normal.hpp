#pragma once

namespace rsl {

/// Standard normal distribution function, evaluated through Cody's rational
/// Chebyshev approximations of erf/erfc (absolute error well below 1e-12 on
/// the whole real line; pinned by the Phi(1.959964) test).
double normal_cdf(double z);

/// Standard normal density.
double normal_pdf(double z);

/// Upper tail 1 - Phi(z), computed without cancellation.
double normal_sf(double z);

/// Inverse of normal_cdf (Acklam's rational initializer plus one Halley
/// refinement step against normal_cdf).
double normal_quantile(double u);

/// Scaled complementary error function exp(t^2) erfc(t).
double erfcx_scaled(double t);

/// Antiderivative of Phi: z Phi(z) + phi(z), vanishing at -infinity.
double normal_cdf_antiderivative(double z);

}  // namespace rsl
