#pragma once

#include "vlcsim/beam.hpp"
#include "vlcsim/quad.hpp"

namespace vlcsim {

/// Transmitter-receiver arrangement: the receiver sits at normal distance h
/// with half-aperture b; an identical interfering transmitter is centered at
/// horizontal offset -2D.
struct LinkGeometry {
  double h;  // m
  double b;  // m
  double D;  // m

  void validate() const;
  /// Pairing constraints with a specific source: b <= d and D >= d.
  void validate_against(const SourceGeometry& geom) const;
};

/// Receiver misalignment: horizontal shift l (aperture centered at x = -l,
/// y(x) = h - (x+l) tan(beta)) and tilt beta with normal
/// (sin(beta), cos(beta)).
struct ReceiverPose {
  double l = 0.0;     // m
  double beta = 0.0;  // rad

  void validate() const;
};

struct NoiseModel {
  double n = 0.0;            // unilateral spectral density (W/Hz)
  double delta_omega = 0.0;  // half-bandwidth (rad/s)

  void validate() const;
};

/// Normal component of the Poynting density at (point_x, point_y) from a
/// transmitter centered at source_x: (G(phi)/(eta0 pi k0 r)) * (rhat . n).
double poynting_normal_density(const SourceGeometry& geom, const Wave& wave,
                               double source_x, double point_x, double point_y,
                               double normal_x, double normal_y);

/// Power flux (W/m) through the posed receiver segment from the transmitter
/// at source_x, via oscillation-aware adaptive quadrature.
double flux_through_segment(const SourceGeometry& geom, const Wave& wave,
                            double source_x, const ReceiverPose& pose,
                            const LinkGeometry& link, const QuadSpec& spec = {});

/// Same segment flux with the Lambertian pattern G0 = (gmax/2) sin(phi).
double flux_through_segment_lambertian(double gmax, const Wave& wave,
                                       double source_x, const ReceiverPose& pose,
                                       const LinkGeometry& link,
                                       const QuadSpec& spec = {});

/// Signal-to-interference ratio of the aligned receiver:
/// 2*Int_0^b G/(x^2+h^2) dx over Int_{2D-b}^{2D+b} G/(x^2+h^2) dx.
/// Returns +infinity when the interference integral underflows.
double sir(const SourceGeometry& geom, const Wave& wave, const LinkGeometry& link,
           const QuadSpec& spec = {});

/// SIR for a misaligned receiver: ratio of segment fluxes from the own
/// transmitter (x = 0) and the interferer (x = -2D) through the shared
/// posed segment.
double sir_misaligned(const SourceGeometry& geom, const Wave& wave,
                      const LinkGeometry& link, const ReceiverPose& pose,
                      const QuadSpec& spec = {});

/// Closed-form SIR of the bare Lambertian transmitters (aligned receiver).
double sir0(const LinkGeometry& link);

/// Lambertian SIR for a misaligned receiver (pattern normalization cancels).
double sir0_misaligned(const Wave& wave, const LinkGeometry& link,
                       const ReceiverPose& pose, const QuadSpec& spec = {});

/// Total emitted power of the bare LED: g_max/(eta0 pi k0), in W/m.
double p_max(const SourceGeometry& geom, const Wave& wave, const QuadSpec& spec = {});

/// Received signal power (W/m) from the own transmitter.
double received_power(const SourceGeometry& geom, const Wave& wave,
                      const LinkGeometry& link, const ReceiverPose& pose,
                      const QuadSpec& spec = {});

/// Received power with the metasurface absent (Lambertian pattern, same
/// flux g_max). The overload taking gmax avoids recomputing the flux
/// integral in sweeps.
double received_power_lambertian(const SourceGeometry& geom, const Wave& wave,
                                 const LinkGeometry& link, const ReceiverPose& pose,
                                 const QuadSpec& spec = {});
double received_power_lambertian(double gmax, const Wave& wave,
                                 const LinkGeometry& link, const ReceiverPose& pose,
                                 const QuadSpec& spec = {});

/// Noise power Pn = 2 n delta_omega (W).
double noise_power(const NoiseModel& nm);

/// SNR enhancement SNR/SNR0 = P/P0 (noise parameters cancel).
double snr_enhancement(const SourceGeometry& geom, const Wave& wave,
                       const LinkGeometry& link, const ReceiverPose& pose,
                       const QuadSpec& spec = {});

}  // namespace vlcsim
