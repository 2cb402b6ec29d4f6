#include "vlcsim/specfun.hpp"

#include <cmath>
#include <stdexcept>

#include "vlcsim/constants.hpp"

namespace vlcsim {
namespace detail {

namespace {
constexpr long double kPiL = 3.141592653589793238462643383279503L;
constexpr long double kGammaL = 0.577215664901532860606512090082402L;
}  // namespace

// Ascending series, accumulated in extended precision so the alternating
// cancellation near the crossover stays below 1e-13 absolute.
double j0_series(double x) {
  const long double q = static_cast<long double>(x) * x / 4.0L;  // (x/2)^2
  long double term = 1.0L;
  long double sum = 1.0L;
  for (int k = 1; k <= 60; ++k) {
    term *= -q / (static_cast<long double>(k) * k);
    sum += term;
    if (std::fabs(static_cast<double>(term)) < 1e-20 && k > 4) break;
  }
  return static_cast<double>(sum);
}

// Y0(x) = (2/pi) [ (ln(x/2) + gamma) J0(x) + sum_{k>=1} (-1)^{k+1} H_k q^k / (k!)^2 ]
double y0_series(double x) {
  const long double xl = static_cast<long double>(x);
  const long double q = xl * xl / 4.0L;
  long double term = 1.0L;   // q^k / (k!)^2
  long double harmonic = 0.0L;
  long double sum = 0.0L;
  long double sign = 1.0L;
  for (int k = 1; k <= 60; ++k) {
    term *= q / (static_cast<long double>(k) * k);
    harmonic += 1.0L / k;
    sum += sign * harmonic * term;
    sign = -sign;
    if (std::fabs(static_cast<double>(term)) < 1e-20 && k > 4) break;
  }
  const long double j0 = j0_series(x);
  return static_cast<double>(
      (2.0L / kPiL) * ((std::log(xl / 2.0L) + kGammaL) * j0 + sum));
}

// Hankel asymptotic expansion: J0 + iY0 ~ sqrt(2/(pi x)) e^{i chi} S(x),
// chi = x - pi/4, S = sum_k (-i)^k ((2k-1)!!)^2 / (k! (8x)^k), truncated at
// the smallest term.
void jy0_asymptotic(double x, double& j0, double& y0) {
  const long double xl = static_cast<long double>(x);
  std::complex<long double> term(1.0L, 0.0L);
  std::complex<long double> sum = term;
  long double prev = 1.0L;
  for (int k = 1; k <= 40; ++k) {
    const long double odd = 2.0L * k - 1.0L;
    term *= std::complex<long double>(0.0L, -1.0L) * (odd * odd) / (8.0L * k * xl);
    const long double mag = std::abs(term);
    if (mag > prev) break;  // asymptotic tail starts diverging
    sum += term;
    prev = mag;
    if (mag < 1e-20L) break;
  }
  const long double amp = std::sqrt(2.0L / (kPiL * xl));
  const long double chi = xl - kPiL / 4.0L;
  const std::complex<long double> h =
      amp * std::complex<long double>(std::cos(chi), std::sin(chi)) * sum;
  j0 = static_cast<double>(h.real());
  y0 = static_cast<double>(h.imag());
}

}  // namespace detail

double bessel_j0(double x) {
  if (!std::isfinite(x) || x < 0.0)
    throw std::domain_error("bessel_j0: argument must be finite and >= 0");
  if (x <= detail::kSeriesAsymptoticCrossover) return detail::j0_series(x);
  double j0, y0;
  detail::jy0_asymptotic(x, j0, y0);
  return j0;
}

double bessel_y0(double x) {
  if (!std::isfinite(x) || x <= 0.0)
    throw std::domain_error("bessel_y0: argument must be finite and > 0");
  if (x <= detail::kSeriesAsymptoticCrossover) return detail::y0_series(x);
  double j0, y0;
  detail::jy0_asymptotic(x, j0, y0);
  return y0;
}

double hankel0_abs2(double x) {
  if (!std::isfinite(x) || x <= 0.0)
    throw std::domain_error("hankel0_abs2: argument must be finite and > 0");
  const double j = bessel_j0(x);
  const double y = bessel_y0(x);
  return j * j + y * y;
}

std::complex<double> hankel0_2(double x) {
  return {bessel_j0(x), -bessel_y0(x)};
}

}  // namespace vlcsim
