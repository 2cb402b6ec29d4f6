#pragma once

#include <complex>

#include "vlcsim/quad.hpp"

namespace vlcsim {

/// Nanoslit array geometry: 2M+1 slits of half-width a at pitch L on an
/// emitter of half-length d = M*L.
struct SourceGeometry {
  double a;  // slit half-width (m)
  double d;  // emitter half-length (m)
  double L;  // slit pitch (m)
  int M;     // array has 2M+1 slits

  /// Build from emitter half-length: L = d/M.
  static SourceGeometry from_half_length(double a, double d, int M);
  /// Build from slit pitch: d = M*L.
  static SourceGeometry from_pitch(double a, double L, int M);

  /// Capacity N = ceil((d-a)/(2a)): the densest packing at L = 2a.
  int capacity() const;

  void validate() const;
};

/// Operating single-tone wave: frequency plus the derived free-space
/// wavenumber and wavelength.
struct Wave {
  double f;  // Hz

  static Wave from_frequency(double f);
  /// Like from_frequency but additionally enforces the visible band
  /// 400 THz <= f <= 800 THz.
  static Wave visible(double f);
  static Wave from_wavelength(double lambda);

  double omega() const;
  double k0() const;
  double wavelength() const;
};

/// Dirichlet-kernel array factor sin((2M+1)u)/sin(u), stable at the
/// removable singularities u = w*pi where the value is the limit 2M+1
/// (the slit count is odd, so the sign is always positive).
double array_factor(double u, int M);

/// Radiation pattern G(phi) = array_factor(k0*L*cos(phi)/2)^2 / |H0(k0 a)|^2.
double radiation_pattern(const SourceGeometry& geom, const Wave& wave, double phi);

/// Pattern without the 1/|H0(k0 a)|^2 normalization (slit-width independent).
double radiation_pattern_scaled(const SourceGeometry& geom, const Wave& wave, double phi);

/// Near-zone field at (x, y), y > 0: sum of slit cylindrical waves
/// H0(k0 r_m)/H0(k0 a).
std::complex<double> near_field(const SourceGeometry& geom, const Wave& wave,
                                double x, double y);

/// Far-zone field at polar (r, phi); requires k0*r > 100.
std::complex<double> far_field(const SourceGeometry& geom, const Wave& wave,
                               double r, double phi);

/// Number of pattern lobes via the exact nested-floor expression.
long lobe_count(const SourceGeometry& geom, const Wave& wave);
/// The simplified estimate floor(4d/lambda).
long lobe_count_simple(const SourceGeometry& geom, const Wave& wave);

/// Main-lobe angular extent 2*arcsin(2*pi/(k0*L*(2M+1))). Throws
/// std::domain_error when the argument exceeds 1 (main lobe fills the
/// half-space).
double beamwidth(const SourceGeometry& geom, const Wave& wave);

/// Smallest M with 2M+1 > (2*pi/(k0 L))*(h/d), clamped to M >= 1.
int min_slits(const Wave& wave, double L, double h, double d);

/// Total angular flux of the densest-packing intensity profile:
/// (1/|H0(k0 a)|^2) * Int_0^pi sin^2(k0 d cos phi)/sin^2(k0 a cos phi) dphi.
/// Requires k0*a < pi.
double g_max(const SourceGeometry& geom, const Wave& wave, const QuadSpec& spec = {});

/// Lambertian reference pattern G0(phi) = (gmax/2) sin(phi).
double lambertian_pattern(double gmax, double phi);

}  // namespace vlcsim
