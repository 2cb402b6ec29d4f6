#pragma once

#include <complex>

namespace vlcsim {

/// Bessel function of the first kind, order zero, for x >= 0.
/// Absolute error below 1e-12 on [0, 50]. Throws std::domain_error for
/// negative or non-finite arguments.
double bessel_j0(double x);

/// Bessel function of the second kind, order zero, for x > 0.
/// Absolute error below 1e-12 on (1e-6, 50]. Throws std::domain_error for
/// x <= 0 (logarithmic singularity at the origin).
double bessel_y0(double x);

/// |H0(x)|^2 = J0(x)^2 + Y0(x)^2 for the Hankel function of zero order,
/// x > 0. Strictly positive.
double hankel0_abs2(double x);

/// Hankel function of zero order and second kind, H0(x) = J0(x) - i Y0(x).
std::complex<double> hankel0_2(double x);

namespace detail {
// Exposed for the regime-agreement tests; both cover a neighborhood of
// the crossover point.
double j0_series(double x);
double y0_series(double x);
void jy0_asymptotic(double x, double& j0, double& y0);
inline constexpr double kSeriesAsymptoticCrossover = 16.0;
}  // namespace detail

}  // namespace vlcsim
