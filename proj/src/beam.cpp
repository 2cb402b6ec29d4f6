#include "vlcsim/beam.hpp"

#include <cmath>
#include <stdexcept>

#include "vlcsim/constants.hpp"
#include "vlcsim/specfun.hpp"

namespace vlcsim {

SourceGeometry SourceGeometry::from_half_length(double a, double d, int M) {
  if (M < 1) throw std::invalid_argument("SourceGeometry: M must be >= 1");
  SourceGeometry g{a, d, d / M, M};
  g.validate();
  return g;
}

SourceGeometry SourceGeometry::from_pitch(double a, double L, int M) {
  if (M < 1) throw std::invalid_argument("SourceGeometry: M must be >= 1");
  SourceGeometry g{a, M * L, L, M};
  g.validate();
  return g;
}

int SourceGeometry::capacity() const {
  return static_cast<int>(std::ceil((d - a) / (2.0 * a)));
}

void SourceGeometry::validate() const {
  if (!(a > 0.0) || !std::isfinite(a)) throw std::invalid_argument("SourceGeometry: a must be > 0");
  if (M < 1) throw std::invalid_argument("SourceGeometry: M must be >= 1");
  if (L < 2.0 * a * (1.0 - 1e-12)) throw std::invalid_argument("SourceGeometry: slits overlap (L < 2a)");
  if (std::fabs(d - static_cast<double>(M) * L) > 1e-12 * d)
    throw std::invalid_argument("SourceGeometry: d must equal M*L");
  if (M > capacity()) throw std::invalid_argument("SourceGeometry: M exceeds capacity N");
}

Wave Wave::from_frequency(double f) {
  if (!(f > 0.0) || !std::isfinite(f)) throw std::invalid_argument("Wave: f must be > 0");
  return Wave{f};
}

Wave Wave::visible(double f) {
  Wave w = from_frequency(f);
  if (f < 400e12 || f > 800e12)
    throw std::invalid_argument("Wave: frequency outside the visible band [400, 800] THz");
  return w;
}

Wave Wave::from_wavelength(double lambda) {
  if (!(lambda > 0.0)) throw std::invalid_argument("Wave: wavelength must be > 0");
  return Wave{kSpeedOfLight / lambda};
}

double Wave::omega() const { return 2.0 * kPi * f; }
double Wave::k0() const { return omega() / kSpeedOfLight; }
double Wave::wavelength() const { return kSpeedOfLight / f; }

double array_factor(double u, int M) {
  if (M < 1) throw std::invalid_argument("array_factor: M must be >= 1");
  const double n = 2.0 * M + 1.0;
  // Reduce to the nearest multiple of pi; the slit count is odd so the sign
  // of numerator and denominator flips together.
  const double w = std::nearbyint(u / kPi);
  const double delta = u - w * kPi;
  if (std::fabs(delta) < 1e-8) {
    // Second-order expansion of sin(n*delta)/sin(delta) about the limit n.
    return n * (1.0 - (n * n - 1.0) * delta * delta / 6.0);
  }
  return std::sin(n * delta) / std::sin(delta);
}

double radiation_pattern_scaled(const SourceGeometry& geom, const Wave& wave, double phi) {
  const double u = 0.5 * wave.k0() * geom.L * std::cos(phi);
  const double af = array_factor(u, geom.M);
  return af * af;
}

double radiation_pattern(const SourceGeometry& geom, const Wave& wave, double phi) {
  return radiation_pattern_scaled(geom, wave, phi) / hankel0_abs2(wave.k0() * geom.a);
}

std::complex<double> near_field(const SourceGeometry& geom, const Wave& wave,
                                double x, double y) {
  if (!(y > 0.0)) throw std::domain_error("near_field: requires y > 0");
  const double k0 = wave.k0();
  const std::complex<double> norm = hankel0_2(k0 * geom.a);
  std::complex<double> sum = 0.0;
  for (int m = -geom.M; m <= geom.M; ++m) {
    const double r = std::hypot(x - m * geom.L, y);
    if (r == 0.0) throw std::domain_error("near_field: point coincides with a slit center");
    sum += hankel0_2(k0 * r);
  }
  return sum / norm;
}

std::complex<double> far_field(const SourceGeometry& geom, const Wave& wave,
                               double r, double phi) {
  const double k0 = wave.k0();
  if (!(k0 * r > 100.0)) throw std::domain_error("far_field: requires k0*r > 100 (far zone)");
  const double amp = std::sqrt(2.0 * kSpeedOfLight / (kPi * wave.omega() * r));
  const std::complex<double> sqrt_j = std::polar(1.0, kPi / 4.0);
  const std::complex<double> radial = std::polar(1.0, -k0 * r);
  const double af = array_factor(0.5 * k0 * geom.L * std::cos(phi), geom.M);
  return amp * sqrt_j * radial * af / hankel0_2(k0 * geom.a);
}

long lobe_count(const SourceGeometry& geom, const Wave& wave) {
  const double lambda = wave.wavelength();
  const double n = 2.0 * geom.M + 1.0;
  const double inner = std::floor(n * geom.L / lambda);
  return static_cast<long>(std::floor(2.0 * inner * (2.0 * geom.M) / n));
}

long lobe_count_simple(const SourceGeometry& geom, const Wave& wave) {
  return static_cast<long>(std::floor(4.0 * geom.d / wave.wavelength()));
}

double beamwidth(const SourceGeometry& geom, const Wave& wave) {
  const double arg = 2.0 * kPi / (wave.k0() * geom.L * (2.0 * geom.M + 1.0));
  if (arg > 1.0) throw std::domain_error("beamwidth: main lobe fills the half-space");
  return 2.0 * std::asin(arg);
}

int min_slits(const Wave& wave, double L, double h, double d) {
  if (!(L > 0.0) || !(h > 0.0) || !(d > 0.0))
    throw std::invalid_argument("min_slits: lengths must be > 0");
  const double bound = (2.0 * kPi / (wave.k0() * L)) * (h / d);
  const double m = std::floor((bound - 1.0) / 2.0) + 1.0;
  return m < 1.0 ? 1 : static_cast<int>(m);
}

double g_max(const SourceGeometry& geom, const Wave& wave, const QuadSpec& spec) {
  const double k0 = wave.k0();
  const double ka = k0 * geom.a;
  const double kd = k0 * geom.d;
  if (ka >= kPi)
    throw std::domain_error("g_max: k0*a >= pi (denominator develops true zeros)");

  const auto integrand = [&](double phi) {
    const double u = std::cos(phi);
    const double sa = ka * u;
    const double sd = kd * u;
    double ratio;
    if (sa == 0.0) {
      ratio = geom.d / geom.a;  // L'Hopital limit at cos(phi) = 0
    } else if (std::fabs(sa) < 1e-8) {
      const double num = std::fabs(sd) < 1e-8 ? sd : std::sin(sd);
      ratio = num / sa;
    } else {
      ratio = std::sin(sd) / std::sin(sa);
    }
    return ratio * ratio;
  };

  // Narrowest oscillation lobe of sin^2(k0 d cos phi) near phi = pi/2.
  QuadSpec q = spec;
  const double lobe = kPi / std::max(kd, 1.0);
  q.min_panels = std::max(q.min_panels, oscillatory_panels(lobe, 0.0, kPi, 8));
  return integrate(integrand, 0.0, kPi, q).value / hankel0_abs2(ka);
}

double lambertian_pattern(double gmax, double phi) {
  if (!(gmax > 0.0)) throw std::invalid_argument("lambertian_pattern: gmax must be > 0");
  return 0.5 * gmax * std::sin(phi);
}

}  // namespace vlcsim
