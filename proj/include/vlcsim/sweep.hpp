#pragma once

#include <string>
#include <vector>

#include "vlcsim/beam.hpp"
#include "vlcsim/link.hpp"

namespace vlcsim {

inline constexpr const char* kVersion = "0.1.0";

enum class SweepKind { pattern, m_sweep, freq_sweep, misalign_map, custom };

enum class Metric {
  G,
  G_scaled,
  P_W_per_m,
  P_over_Pmax,
  SIR,
  SIR0,
  SIR_enh,
  P_over_P0,
  V,
  beamwidth,
};

std::string to_string(SweepKind kind);
std::string to_string(Metric metric);
SweepKind sweep_kind_from_string(const std::string& s);
Metric metric_from_string(const std::string& s);

struct SweepAxis {
  // One of: phi, k0L, M, f, b, beta, l_over_d. SI units (f in Hz, b in m,
  // beta/phi in rad).
  std::string name;
  double start = 0.0;
  double stop = 0.0;
  int count = 0;
  enum class Spacing { linear, log } spacing = Spacing::linear;
  // Explicit grid values; when non-empty they override start/stop/count.
  std::vector<double> values;

  std::vector<double> grid() const;
};

/// Fixed scalar parameters of a sweep, SI units throughout.
struct SweepFixed {
  double a = 25e-9;
  double d = 2.5e-3;
  int M = 1000;
  // When k0L > 0 the geometry is built from the pitch L = k0L/k0 (d = M*L);
  // otherwise from (a, d, M).
  double k0L = 0.0;
  double f = 600e12;
  double h = 1.0;
  double b = 2.5e-3;
  double D = 5e-3;
  double beta = 0.0;
  double l = 0.0;
  double phi = 1.5707963267948966;
};

struct SweepSpec {
  SweepKind kind = SweepKind::custom;
  std::string name = "custom";
  // Documents parameter sets the reference configuration leaves unspecified.
  std::string defaults_note;
  SweepFixed fixed;
  std::vector<SweepAxis> axes;  // at most 2; outer axis first
  std::vector<Metric> metrics;
  QuadSpec quad;

  /// Throws std::invalid_argument listing every violation.
  void validate() const;
};

struct SweepResult {
  SweepSpec spec;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;          // row-major, columns.size() each
  std::vector<std::string> sentinel_reasons;      // one per row; empty = clean
  std::vector<std::pair<std::string, std::string>> metadata;
};

/// Evaluates every requested metric at every grid point; per-row failures
/// are recorded as NaN sentinels with machine-readable reason codes.
SweepResult run_sweep(const SweepSpec& spec);

enum class PresetName { fig2a, fig2b, fig3, fig4, fig5_small, fig5_large };

PresetName preset_name_from_string(const std::string& s);
std::vector<std::string> preset_names();

/// Sweep specs for the reference configurations; parameter sets the source
/// material leaves unspecified use documented defaults (recorded in the
/// result metadata).
SweepSpec preset(PresetName name);

}  // namespace vlcsim
