// vlcsim: nanoslit-metasurface LED transmitter / photodiode receiver link
// simulator. Subcommands: pattern, link, map, analyze, preset-dump.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "vlcsim/beam.hpp"
#include "vlcsim/config.hpp"
#include "vlcsim/constants.hpp"
#include "vlcsim/link.hpp"
#include "vlcsim/sweep.hpp"
#include "vlcsim/table.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;

struct CommonOpts {
  std::string config_path;
  std::string preset_name;
  std::string out_path;
  std::string format;
  std::vector<std::string> overrides;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--config", opts.config_path, "Config file (key = value sections)");
  cmd->add_option("--preset", opts.preset_name,
                  "Preset name: fig2a, fig2b, fig3, fig4, fig5_small, fig5_large");
  cmd->add_option("--out", opts.out_path, "Output file path (default: stdout)");
  cmd->add_option("--format", opts.format, "Output format: csv or json");
  cmd->add_option("--override", opts.overrides, "section.key=value override (repeatable)");
}

vlcsim::RunConfig resolve_config(const CommonOpts& opts) {
  if (!opts.config_path.empty() && !opts.preset_name.empty())
    throw vlcsim::ConfigError("--config and --preset are mutually exclusive");
  vlcsim::RunConfig cfg;
  if (!opts.config_path.empty()) {
    cfg = vlcsim::load_config_file(opts.config_path);
  } else if (!opts.preset_name.empty()) {
    cfg.spec = vlcsim::preset(vlcsim::preset_name_from_string(opts.preset_name));
  }
  for (const auto& ov : opts.overrides) vlcsim::apply_override(cfg, ov);
  if (!opts.out_path.empty()) cfg.out_path = opts.out_path;
  if (!opts.format.empty()) {
    if (opts.format != "csv" && opts.format != "json")
      throw vlcsim::ConfigError("--format must be csv or json");
    cfg.format = opts.format;
  }
  cfg.spec.validate();
  return cfg;
}

// Serialize first; create the output file only once the run succeeded.
int emit(const std::string& payload, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << payload;
    return kExitOk;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot open output file: " << out_path << "\n";
    return 1;
  }
  out << payload;
  return kExitOk;
}

int run_table_command(const CommonOpts& opts, vlcsim::SweepKind expected_kind,
                      bool map_kind) {
  vlcsim::RunConfig cfg = resolve_config(opts);
  const auto kind = cfg.spec.kind;
  const bool ok = map_kind ? kind == vlcsim::SweepKind::misalign_map
                           : (kind == expected_kind || kind == vlcsim::SweepKind::custom ||
                              (expected_kind == vlcsim::SweepKind::m_sweep &&
                               kind == vlcsim::SweepKind::freq_sweep));
  if (!ok)
    throw vlcsim::ConfigError("sweep kind '" + vlcsim::to_string(kind) +
                              "' does not match this subcommand");
  const vlcsim::SweepResult result = vlcsim::run_sweep(cfg.spec);
  std::ostringstream payload;
  vlcsim::write_table(result, payload, cfg.format);
  return emit(payload.str(), cfg.out_path);
}

int run_analyze(const CommonOpts& opts) {
  vlcsim::RunConfig cfg = resolve_config(opts);
  const auto& fx = cfg.spec.fixed;
  const vlcsim::Wave wave = vlcsim::Wave::from_frequency(fx.f);
  vlcsim::SourceGeometry geom =
      fx.k0L > 0.0 ? vlcsim::SourceGeometry::from_pitch(fx.a, fx.k0L / wave.k0(), fx.M)
                   : vlcsim::SourceGeometry::from_half_length(fx.a, fx.d, fx.M);

  std::ostringstream os;
  os << "geometry: a = " << vlcsim::format_double(geom.a * 1e9)
     << " nm, d = " << vlcsim::format_double(geom.d * 1e3)
     << " mm, L = " << vlcsim::format_double(geom.L * 1e9) << " nm, M = " << geom.M
     << "\n";
  os << "wave: f = " << vlcsim::format_double(wave.f * 1e-12)
     << " THz, lambda = " << vlcsim::format_double(wave.wavelength() * 1e9) << " nm\n";
  os << "capacity N = " << geom.capacity() << "\n";
  os << "lobe count V = " << vlcsim::lobe_count(geom, wave)
     << " (simplified floor(4d/lambda) = " << vlcsim::lobe_count_simple(geom, wave)
     << ")\n";
  try {
    const double bw = vlcsim::beamwidth(geom, wave);
    os << "beamwidth 2*theta = " << vlcsim::format_double(bw) << " rad ("
       << vlcsim::format_double(bw * 180.0 / vlcsim::kPi) << " deg)\n";
  } catch (const std::domain_error&) {
    os << "beamwidth: main lobe fills half-space (arcsin argument > 1)\n";
  }
  os << "min slits M for h = " << vlcsim::format_double(fx.h * 1e3)
     << " mm: " << vlcsim::min_slits(wave, geom.L, fx.h, geom.d) << "\n";
  const double gmax = vlcsim::g_max(geom, wave, cfg.spec.quad);
  os << "g_max = " << vlcsim::format_double(gmax) << "\n";
  os << "Pmax = " << vlcsim::format_double(gmax / (vlcsim::kEta0 * vlcsim::kPi * wave.k0()))
     << " W/m\n";
  return emit(os.str(), cfg.out_path);
}

int run_preset_dump(const CommonOpts& opts) {
  if (opts.preset_name.empty())
    throw vlcsim::ConfigError("preset-dump requires --preset");
  vlcsim::RunConfig cfg;
  cfg.spec = vlcsim::preset(vlcsim::preset_name_from_string(opts.preset_name));
  for (const auto& ov : opts.overrides) vlcsim::apply_override(cfg, ov);
  if (!opts.format.empty()) cfg.format = opts.format;
  return emit(vlcsim::dump_config(cfg), opts.out_path);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Nanoslit-metasurface visible-light link simulator"};
  app.require_subcommand(1);

  CommonOpts pattern_opts, link_opts, map_opts, analyze_opts, dump_opts;
  auto* pattern = app.add_subcommand("pattern", "Radiation pattern table (G vs phi)");
  auto* link = app.add_subcommand("link", "Received power and SIR table");
  auto* map = app.add_subcommand("map", "Misalignment map over (beta, l/d)");
  auto* analyze = app.add_subcommand("analyze", "Scalar analytics report");
  auto* dump = app.add_subcommand("preset-dump", "Write a preset as an editable config");
  add_common(pattern, pattern_opts);
  add_common(link, link_opts);
  add_common(map, map_opts);
  add_common(analyze, analyze_opts);
  add_common(dump, dump_opts);

  CLI11_PARSE(app, argc, argv);

  try {
    if (pattern->parsed())
      return run_table_command(pattern_opts, vlcsim::SweepKind::pattern, false);
    if (link->parsed())
      return run_table_command(link_opts, vlcsim::SweepKind::m_sweep, false);
    if (map->parsed())
      return run_table_command(map_opts, vlcsim::SweepKind::misalign_map, true);
    if (analyze->parsed()) return run_analyze(analyze_opts);
    if (dump->parsed()) return run_preset_dump(dump_opts);
  } catch (const vlcsim::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const vlcsim::QuadConvergenceError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return kExitOk;
}
