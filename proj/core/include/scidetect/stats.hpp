#pragma once

namespace scidetect {

// Complementary error function, Cody-style rational approximation.
// Self-contained so p-values stay testable against published tables.
double erfc_approx(double x);

// Standard normal CDF via erfc_approx.
double normal_cdf(double z);

// Two-sided normal tail: 2*(1 - Phi(|z|)).
double two_sided_p(double z);

// Regularized lower/upper incomplete gamma, series + continued fraction.
double regularized_gamma_p(double a, double x);
double regularized_gamma_q(double a, double x);

// Upper tail of the chi-square distribution with df degrees of freedom.
double chi2_sf(double x, int df);

double sigmoid(double z);
// ln sigmoid(z), computed without overflow for large |z|.
double log_sigmoid(double z);

}  // namespace scidetect
