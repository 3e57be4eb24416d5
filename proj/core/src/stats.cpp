#include "scidetect/stats.hpp"

#include <cmath>
#include <limits>

#include "scidetect/error.hpp"

namespace scidetect {

namespace {

// Rational coefficients from W. J. Cody, "Rational Chebyshev approximation
// for the error function", Math. Comp. 23 (1969). Three regimes.
double erf_small(double x) {
  // |x| <= 0.5
  static const double p[] = {3.209377589138469472562e3, 3.774852376853020208137e2,
                             1.138641541510501556495e2, 3.161123743870565596947e0,
                             1.857777061846031526730e-1};
  static const double q[] = {2.844236833439170622273e3, 1.282616526077372275645e3,
                             2.440246379344441733056e2, 2.360129095234412093499e1,
                             1.0};
  const double z = x * x;
  double num = p[4], den = q[4];
  for (int i = 3; i >= 0; --i) {
    num = num * z + p[i];
    den = den * z + q[i];
  }
  return x * num / den;
}

double erfc_mid(double x) {
  // 0.46875 <= x <= 4
  static const double p[] = {1.23033935479799725272e3, 2.05107837782607146532e3,
                             1.71204761263407058314e3, 8.81952221241769090411e2,
                             2.98635138197400131132e2, 6.61191906371416294775e1,
                             8.88314979438837594118e0, 5.64188496988670089180e-1,
                             2.15311535474403846343e-8};
  static const double q[] = {1.23033935480374942043e3, 3.43936767414372163696e3,
                             4.36261909014324715820e3, 3.29079923573345962678e3,
                             1.62138957456669018874e3, 5.37181101862009857509e2,
                             1.17693950891312499305e2, 1.57449261107098347253e1,
                             1.0};
  double num = p[8], den = q[8];
  for (int i = 7; i >= 0; --i) {
    num = num * x + p[i];
    den = den * x + q[i];
  }
  return std::exp(-x * x) * num / den;
}

double erfc_large(double x) {
  // x > 4
  static const double p[] = {-6.58749161529837803157e-4, -1.60837851487422766278e-2,
                             -1.25781726111229246204e-1, -3.60344899949804439429e-1,
                             -3.05326634961232344035e-1, -1.63153871373020978498e-2};
  static const double q[] = {2.33520497626869185443e-3, 6.05183413124413191178e-2,
                             5.27905102951428412248e-1, 1.87295284992346047209e0,
                             2.56852019228982242072e0, 1.0};
  const double z = 1.0 / (x * x);
  double num = p[5], den = q[5];
  for (int i = 4; i >= 0; --i) {
    num = num * z + p[i];
    den = den * z + q[i];
  }
  const double inv_sqrt_pi = 5.64189583547756286948e-1;
  return std::exp(-x * x) / x * (inv_sqrt_pi + z * num / den);
}

}  // namespace

double erfc_approx(double x) {
  const double ax = std::fabs(x);
  double result;
  if (ax < 0.46875) result = 1.0 - erf_small(x);
  else if (ax <= 4.0) result = erfc_mid(ax);
  else if (ax < 26.5) result = erfc_large(ax);
  else result = 0.0;
  if (x < 0.0 && ax >= 0.46875) result = 2.0 - result;
  return result;
}

double normal_cdf(double z) { return 0.5 * erfc_approx(-z / std::sqrt(2.0)); }

double two_sided_p(double z) { return erfc_approx(std::fabs(z) / std::sqrt(2.0)); }

namespace {

constexpr int kMaxGammaIter = 500;
constexpr double kGammaEps = 1e-14;

double gamma_p_series(double a, double x) {
  double sum = 1.0 / a;
  double term = sum;
  for (int n = 1; n < kMaxGammaIter; ++n) {
    term *= x / (a + n);
    sum += term;
    if (std::fabs(term) < std::fabs(sum) * kGammaEps) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

double gamma_q_contfrac(double a, double x) {
  // Modified Lentz continued fraction for Q(a,x).
  const double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < kMaxGammaIter; ++i) {
    const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < kGammaEps) break;
  }
  return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

}  // namespace

double regularized_gamma_p(double a, double x) {
  if (a <= 0.0 || x < 0.0) fail(errc::bad_format, "invalid incomplete gamma arguments");
  if (x == 0.0) return 0.0;
  if (x < a + 1.0) return gamma_p_series(a, x);
  return 1.0 - gamma_q_contfrac(a, x);
}

double regularized_gamma_q(double a, double x) {
  if (a <= 0.0 || x < 0.0) fail(errc::bad_format, "invalid incomplete gamma arguments");
  if (x == 0.0) return 1.0;
  if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
  return gamma_q_contfrac(a, x);
}

double chi2_sf(double x, int df) {
  if (df < 1) fail(errc::bad_format, "chi2_sf needs df >= 1");
  if (x <= 0.0) return 1.0;
  return regularized_gamma_q(0.5 * df, 0.5 * x);
}

double sigmoid(double z) {
  if (z >= 0.0) {
    const double e = std::exp(-z);
    return 1.0 / (1.0 + e);
  }
  const double e = std::exp(z);
  return e / (1.0 + e);
}

double log_sigmoid(double z) {
  // -softplus(-z)
  if (z > 0.0) return -std::log1p(std::exp(-z));
  return z - std::log1p(std::exp(z));
}

}  // namespace scidetect
