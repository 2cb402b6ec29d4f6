#include "vlcsim/link.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "vlcsim/constants.hpp"
#include "vlcsim/specfun.hpp"

namespace vlcsim {

namespace {
constexpr double kUnderflowFloor = 1e-300;

double segment_lobe_width(const SourceGeometry& geom, const Wave& wave) {
  // Narrowest pattern lobe in phi (at broadside): lambda/((2M+1)L).
  return 2.0 * kPi / (wave.k0() * geom.L * (2.0 * geom.M + 1.0));
}

// Shared segment-flux kernel over a pattern G(phi). The segment is
// parametrized by t = x + l in [-b cos(beta), b cos(beta)], with
// point (t - l, h - t tan(beta)) and ds = dt / cos(beta).
template <class Pattern>
double segment_flux(const Pattern& pattern, double k0, double source_x,
                    const ReceiverPose& pose, const LinkGeometry& link,
                    double lobe_width, const QuadSpec& spec) {
  link.validate();
  pose.validate();
  const double cb = std::cos(pose.beta);
  const double sb = std::sin(pose.beta);
  const double half = link.b * cb;
  if (!(link.h - link.b * std::fabs(sb) > 0.0))
    throw std::domain_error("flux_through_segment: segment touches y <= 0");

  const auto point_phi = [&](double t) {
    const double x = t - pose.l - source_x;
    const double y = link.h - t * std::tan(pose.beta);
    return std::atan2(y, x);
  };
  const auto integrand = [&](double t) {
    const double x = t - pose.l - source_x;
    const double y = link.h - t * std::tan(pose.beta);
    const double r = std::hypot(x, y);
    const double phi = std::atan2(y, x);
    const double rdotn = (x * sb + y * cb) / r;
    return pattern(phi) / (kEta0 * kPi * k0 * r) * rdotn / cb;
  };

  QuadSpec q = spec;
  const double ang = std::fabs(point_phi(half) - point_phi(-half));
  const int panels = oscillatory_panels(lobe_width, 0.0, std::max(ang, lobe_width), 8);
  q.min_panels = std::max({q.min_panels, panels, 8});
  return integrate(integrand, -half, half, q).value;
}

// Aligned-receiver window integral of Eq.-style form:
// Int_{x_lo}^{x_hi} G(atan2(h, x)) / (x^2 + h^2) dx.
template <class Pattern>
double window_integral(const Pattern& pattern, double h, double x_lo, double x_hi,
                       double lobe_width, const QuadSpec& spec) {
  const auto integrand = [&](double x) {
    return pattern(std::atan2(h, x)) / (x * x + h * h);
  };
  QuadSpec q = spec;
  const double ang = std::fabs(std::atan2(h, x_lo) - std::atan2(h, x_hi));
  const int panels = oscillatory_panels(lobe_width, 0.0, std::max(ang, lobe_width), 8);
  q.min_panels = std::max({q.min_panels, panels, 8});
  return integrate(integrand, x_lo, x_hi, q).value;
}
}  // namespace

void LinkGeometry::validate() const {
  if (!(h > 0.0)) throw std::invalid_argument("LinkGeometry: h must be > 0");
  if (!(b > 0.0)) throw std::invalid_argument("LinkGeometry: b must be > 0");
  if (!(D > 0.0)) throw std::invalid_argument("LinkGeometry: D must be > 0");
}

void LinkGeometry::validate_against(const SourceGeometry& geom) const {
  validate();
  if (b > geom.d * (1.0 + 1e-9))
    throw std::invalid_argument("LinkGeometry: requires b <= d");
  if (D < geom.d * (1.0 - 1e-9))
    throw std::invalid_argument("LinkGeometry: requires D >= d");
}

void ReceiverPose::validate() const {
  if (!(std::fabs(beta) < kPi / 2.0))
    throw std::invalid_argument("ReceiverPose: requires |beta| < pi/2");
  if (!std::isfinite(l)) throw std::invalid_argument("ReceiverPose: l must be finite");
}

void NoiseModel::validate() const {
  if (!(n >= 0.0)) throw std::invalid_argument("NoiseModel: n must be >= 0");
  if (!(delta_omega >= 0.0)) throw std::invalid_argument("NoiseModel: delta_omega must be >= 0");
}

double poynting_normal_density(const SourceGeometry& geom, const Wave& wave,
                               double source_x, double point_x, double point_y,
                               double normal_x, double normal_y) {
  if (!(point_y > 0.0)) throw std::domain_error("poynting_normal_density: requires point_y > 0");
  const double dx = point_x - source_x;
  const double r = std::hypot(dx, point_y);
  if (r == 0.0) throw std::domain_error("poynting_normal_density: singular point r = 0");
  const double phi = std::atan2(point_y, dx);
  const double rdotn = (dx * normal_x + point_y * normal_y) / r;
  return radiation_pattern(geom, wave, phi) / (kEta0 * kPi * wave.k0() * r) * rdotn;
}

double flux_through_segment(const SourceGeometry& geom, const Wave& wave,
                            double source_x, const ReceiverPose& pose,
                            const LinkGeometry& link, const QuadSpec& spec) {
  const double ih2 = 1.0 / hankel0_abs2(wave.k0() * geom.a);
  const auto pattern = [&](double phi) {
    return radiation_pattern_scaled(geom, wave, phi) * ih2;
  };
  return segment_flux(pattern, wave.k0(), source_x, pose, link,
                      segment_lobe_width(geom, wave), spec);
}

double flux_through_segment_lambertian(double gmax, const Wave& wave,
                                       double source_x, const ReceiverPose& pose,
                                       const LinkGeometry& link, const QuadSpec& spec) {
  const auto pattern = [&](double phi) { return lambertian_pattern(gmax, phi); };
  // The Lambertian pattern has a single lobe over the half-space.
  return segment_flux(pattern, wave.k0(), source_x, pose, link, kPi, spec);
}

double sir(const SourceGeometry& geom, const Wave& wave, const LinkGeometry& link,
           const QuadSpec& spec) {
  link.validate();
  link.validate_against(geom);
  if (!(2.0 * link.D - link.b > 0.0))
    throw std::invalid_argument("sir: requires 2D - b > 0");
  const double ih2 = 1.0 / hankel0_abs2(wave.k0() * geom.a);
  const auto pattern = [&](double phi) {
    return radiation_pattern_scaled(geom, wave, phi) * ih2;
  };
  const double lobe = segment_lobe_width(geom, wave);
  const double signal =
      2.0 * window_integral(pattern, link.h, 0.0, link.b, lobe, spec);
  const double ilo = 2.0 * link.D - link.b;
  const double ihi = 2.0 * link.D + link.b;
  // The interferer can sit so far out that the window collapses in double
  // precision; the interference has underflowed long before that.
  if (!(ilo < ihi)) return std::numeric_limits<double>::infinity();
  const double interference = window_integral(pattern, link.h, ilo, ihi, lobe, spec);
  if (interference < kUnderflowFloor) return std::numeric_limits<double>::infinity();
  return signal / interference;
}

double sir_misaligned(const SourceGeometry& geom, const Wave& wave,
                      const LinkGeometry& link, const ReceiverPose& pose,
                      const QuadSpec& spec) {
  const double signal = flux_through_segment(geom, wave, 0.0, pose, link, spec);
  const double interference =
      flux_through_segment(geom, wave, -2.0 * link.D, pose, link, spec);
  if (interference < kUnderflowFloor) return std::numeric_limits<double>::infinity();
  return signal / interference;
}

double sir0(const LinkGeometry& link) {
  link.validate();
  if (!(2.0 * link.D - link.b > 0.0))
    throw std::invalid_argument("sir0: requires 2D - b > 0");
  const double h = link.h, b = link.b, D = link.D;
  const double num = 2.0 * b / std::sqrt(h * h + b * b);
  const double plus = (2.0 * D + b) / std::sqrt(h * h + (2.0 * D + b) * (2.0 * D + b));
  const double minus = (2.0 * D - b) / std::sqrt(h * h + (2.0 * D - b) * (2.0 * D - b));
  return num / (plus - minus);
}

double sir0_misaligned(const Wave& wave, const LinkGeometry& link,
                       const ReceiverPose& pose, const QuadSpec& spec) {
  // gmax cancels in the ratio; use a unit-flux Lambertian pattern.
  const double signal = flux_through_segment_lambertian(1.0, wave, 0.0, pose, link, spec);
  const double interference =
      flux_through_segment_lambertian(1.0, wave, -2.0 * link.D, pose, link, spec);
  if (interference < kUnderflowFloor) return std::numeric_limits<double>::infinity();
  return signal / interference;
}

double p_max(const SourceGeometry& geom, const Wave& wave, const QuadSpec& spec) {
  return g_max(geom, wave, spec) / (kEta0 * kPi * wave.k0());
}

double received_power(const SourceGeometry& geom, const Wave& wave,
                      const LinkGeometry& link, const ReceiverPose& pose,
                      const QuadSpec& spec) {
  link.validate_against(geom);
  return flux_through_segment(geom, wave, 0.0, pose, link, spec);
}

double received_power_lambertian(const SourceGeometry& geom, const Wave& wave,
                                 const LinkGeometry& link, const ReceiverPose& pose,
                                 const QuadSpec& spec) {
  return received_power_lambertian(g_max(geom, wave, spec), wave, link, pose, spec);
}

double received_power_lambertian(double gmax, const Wave& wave,
                                 const LinkGeometry& link, const ReceiverPose& pose,
                                 const QuadSpec& spec) {
  return flux_through_segment_lambertian(gmax, wave, 0.0, pose, link, spec);
}

double noise_power(const NoiseModel& nm) {
  nm.validate();
  return 2.0 * nm.n * nm.delta_omega;
}

double snr_enhancement(const SourceGeometry& geom, const Wave& wave,
                       const LinkGeometry& link, const ReceiverPose& pose,
                       const QuadSpec& spec) {
  const double p = received_power(geom, wave, link, pose, spec);
  const double p0 = received_power_lambertian(geom, wave, link, pose, spec);
  if (p0 < kUnderflowFloor) return std::numeric_limits<double>::infinity();
  return p / p0;
}

}  // namespace vlcsim
