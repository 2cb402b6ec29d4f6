#include "vlcsim/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <tuple>

#include "vlcsim/constants.hpp"
#include "vlcsim/specfun.hpp"

namespace vlcsim {

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

const std::vector<std::string>& allowed_axis_names() {
  static const std::vector<std::string> names = {"phi", "k0L", "M",
                                                 "f",   "b",   "beta", "l_over_d"};
  return names;
}

// Column label and display scale at the tabular boundary.
std::pair<std::string, double> axis_column(const std::string& name) {
  if (name == "phi") return {"phi_rad", 1.0};
  if (name == "k0L") return {"k0L", 1.0};
  if (name == "M") return {"M", 1.0};
  if (name == "f") return {"f_THz", 1e-12};
  if (name == "b") return {"b_mm", 1e3};
  if (name == "beta") return {"beta_rad", 1.0};
  if (name == "l_over_d") return {"l_over_d", 1.0};
  throw std::invalid_argument("unknown axis name: " + name);
}

int env_thread_cap() {
  const char* v = std::getenv("VLCSIM_THREADS");
  if (v == nullptr) return 1;
  const int n = std::atoi(v);
  return n < 1 ? 1 : n;
}
}  // namespace

std::string to_string(SweepKind kind) {
  switch (kind) {
    case SweepKind::pattern: return "pattern";
    case SweepKind::m_sweep: return "m_sweep";
    case SweepKind::freq_sweep: return "freq_sweep";
    case SweepKind::misalign_map: return "misalign_map";
    case SweepKind::custom: return "custom";
  }
  return "custom";
}

std::string to_string(Metric metric) {
  switch (metric) {
    case Metric::G: return "G";
    case Metric::G_scaled: return "G_scaled";
    case Metric::P_W_per_m: return "P_W_per_m";
    case Metric::P_over_Pmax: return "P_over_Pmax";
    case Metric::SIR: return "SIR";
    case Metric::SIR0: return "SIR0";
    case Metric::SIR_enh: return "SIR_enh";
    case Metric::P_over_P0: return "P_over_P0";
    case Metric::V: return "V";
    case Metric::beamwidth: return "beamwidth_rad";
  }
  return "?";
}

SweepKind sweep_kind_from_string(const std::string& s) {
  for (SweepKind k : {SweepKind::pattern, SweepKind::m_sweep, SweepKind::freq_sweep,
                      SweepKind::misalign_map, SweepKind::custom})
    if (to_string(k) == s) return k;
  throw std::invalid_argument("unknown sweep kind: " + s);
}

Metric metric_from_string(const std::string& s) {
  for (Metric m : {Metric::G, Metric::G_scaled, Metric::P_W_per_m, Metric::P_over_Pmax,
                   Metric::SIR, Metric::SIR0, Metric::SIR_enh, Metric::P_over_P0,
                   Metric::V, Metric::beamwidth})
    if (to_string(m) == s) return m;
  throw std::invalid_argument("unknown metric: " + s);
}

std::vector<double> SweepAxis::grid() const {
  if (!values.empty()) return values;
  std::vector<double> g(count);
  if (spacing == Spacing::log) {
    const double ls = std::log(start), le = std::log(stop);
    for (int i = 0; i < count; ++i)
      g[i] = std::exp(ls + (le - ls) * i / (count - 1));
  } else {
    for (int i = 0; i < count; ++i)
      g[i] = start + (stop - start) * i / (count - 1);
  }
  return g;
}

void SweepSpec::validate() const {
  std::vector<std::string> problems;
  if (axes.size() > 2) problems.push_back("at most 2 axes are supported");
  for (const auto& ax : axes) {
    const auto& names = allowed_axis_names();
    if (std::find(names.begin(), names.end(), ax.name) == names.end())
      problems.push_back("unknown axis name '" + ax.name + "'");
    if (ax.values.empty()) {
      if (ax.count < 2) problems.push_back("axis '" + ax.name + "': count must be >= 2");
      if (!std::isfinite(ax.start) || !std::isfinite(ax.stop))
        problems.push_back("axis '" + ax.name + "': start/stop must be finite");
      if (ax.spacing == SweepAxis::Spacing::log && !(ax.start > 0.0 && ax.stop > 0.0))
        problems.push_back("axis '" + ax.name + "': log spacing requires positive bounds");
    }
  }
  if (metrics.empty()) problems.push_back("at least one metric must be requested");
  if (!(fixed.a > 0.0)) problems.push_back("a must be > 0");
  if (!(fixed.d > 0.0)) problems.push_back("d must be > 0");
  if (fixed.M < 1) problems.push_back("M must be >= 1");
  if (!(fixed.f > 0.0)) problems.push_back("f must be > 0");
  if (!(fixed.h > 0.0)) problems.push_back("h must be > 0");
  if (!(fixed.b > 0.0)) problems.push_back("b must be > 0");
  if (!(fixed.D > 0.0)) problems.push_back("D must be > 0");
  if (!(std::fabs(fixed.beta) < kPi / 2.0)) problems.push_back("|beta| must be < pi/2");
  try {
    quad.validate();
  } catch (const std::exception& e) {
    problems.push_back(e.what());
  }
  if (!problems.empty()) {
    std::ostringstream oss;
    oss << "invalid sweep spec:";
    for (const auto& p : problems) oss << " [" << p << "]";
    throw std::invalid_argument(oss.str());
  }
}

namespace {

struct GmaxCache {
  std::map<std::tuple<double, double, double>, double> values;
  std::mutex mu;

  double get(const SourceGeometry& geom, const Wave& wave, const QuadSpec& q) {
    const auto key = std::make_tuple(geom.a, geom.d, wave.f);
    {
      std::lock_guard<std::mutex> lock(mu);
      auto it = values.find(key);
      if (it != values.end()) return it->second;
    }
    const double v = g_max(geom, wave, q);
    std::lock_guard<std::mutex> lock(mu);
    values.emplace(key, v);
    return v;
  }
};

// Per-row evaluation context with lazy shared intermediates.
struct RowEval {
  const SweepSpec& spec;
  SweepFixed p;
  GmaxCache& cache;
  std::vector<std::string> reasons;

  SourceGeometry geom() const {
    if (p.k0L > 0.0) {
      const double k0 = Wave::from_frequency(p.f).k0();
      return SourceGeometry::from_pitch(p.a, p.k0L / k0, p.M);
    }
    return SourceGeometry::from_half_length(p.a, p.d, p.M);
  }

  void note(const std::string& code) {
    if (std::find(reasons.begin(), reasons.end(), code) == reasons.end())
      reasons.push_back(code);
  }

  double guarded(Metric metric) {
    try {
      return evaluate(metric);
    } catch (const QuadConvergenceError&) {
      note("quad_nonconverged");
    } catch (const std::domain_error& e) {
      note(metric == Metric::beamwidth ? "beamwidth_saturated" : "domain_error");
      (void)e;
    } catch (const std::invalid_argument&) {
      note("invalid_argument");
    }
    return kNaN;
  }

  double evaluate(Metric metric) {
    const Wave wave = Wave::from_frequency(p.f);
    switch (metric) {
      case Metric::G:
        return radiation_pattern(geom(), wave, p.phi);
      case Metric::G_scaled:
        return radiation_pattern_scaled(geom(), wave, p.phi);
      case Metric::V:
        return static_cast<double>(lobe_count(geom(), wave));
      case Metric::beamwidth:
        return beamwidth(geom(), wave);
      default:
        break;
    }
    const SourceGeometry g = geom();
    const LinkGeometry link{p.h, p.b, p.D};
    const ReceiverPose pose{p.l, p.beta};
    const bool posed = spec.kind == SweepKind::misalign_map;
    switch (metric) {
      case Metric::P_W_per_m:
        return received_power(g, wave, link, pose, spec.quad);
      case Metric::P_over_Pmax: {
        const double gmax = cache.get(g, wave, spec.quad);
        return received_power(g, wave, link, pose, spec.quad) /
               (gmax / (kEta0 * kPi * wave.k0()));
      }
      case Metric::P_over_P0: {
        const double gmax = cache.get(g, wave, spec.quad);
        const double p0 = received_power_lambertian(gmax, wave, link, pose, spec.quad);
        if (p0 < 1e-300) {
          note("lambertian_underflow");
          return std::numeric_limits<double>::infinity();
        }
        return received_power(g, wave, link, pose, spec.quad) / p0;
      }
      case Metric::SIR: {
        const double v = posed ? sir_misaligned(g, wave, link, pose, spec.quad)
                               : sir(g, wave, link, spec.quad);
        if (std::isinf(v)) note("interference_underflow");
        return v;
      }
      case Metric::SIR0:
        return posed ? sir0_misaligned(wave, link, pose, spec.quad) : sir0(link);
      case Metric::SIR_enh: {
        const double s = posed ? sir_misaligned(g, wave, link, pose, spec.quad)
                               : sir(g, wave, link, spec.quad);
        const double s0 = posed ? sir0_misaligned(wave, link, pose, spec.quad) : sir0(link);
        if (std::isinf(s)) {
          note("interference_underflow");
          return std::numeric_limits<double>::infinity();
        }
        return s / s0;
      }
      default:
        throw std::invalid_argument("unsupported metric");
    }
  }
};

void apply_axis(SweepFixed& p, const std::string& name, double value) {
  if (name == "phi") p.phi = value;
  else if (name == "k0L") p.k0L = value;
  else if (name == "M") p.M = std::max(1, static_cast<int>(std::llround(value)));
  else if (name == "f") p.f = value;
  else if (name == "b") p.b = value;
  else if (name == "beta") p.beta = value;
  else if (name == "l_over_d") p.l = value * p.d;
}

double axis_display(const SweepFixed& p, const std::string& name, double value) {
  if (name == "M") return static_cast<double>(std::max(1, static_cast<int>(std::llround(value))));
  (void)p;
  return value * axis_column(name).second;
}

std::string default_note(PresetName name) {
  switch (name) {
    case PresetName::fig2a:
      return "k0L set {0.1pi, 0.5pi, pi} and a=10nm are artifact defaults";
    case PresetName::fig2b:
      return "M set {10, 100, 1000} per caption; a=10nm is an artifact default";
    case PresetName::fig3:
      return "frequency set {450, 550, 650} THz is an artifact default";
    case PresetName::fig4:
      return "b set {d/35, 0.2d, 0.5d, d} is an artifact default";
    default:
      return "";
  }
}

}  // namespace

SweepResult run_sweep(const SweepSpec& spec) {
  spec.validate();

  std::vector<std::vector<double>> grids;
  for (const auto& ax : spec.axes) grids.push_back(ax.grid());
  const size_t outer_n = grids.empty() ? 1 : grids[0].size();
  const size_t inner_n = grids.size() < 2 ? 1 : grids[1].size();
  const size_t total = outer_n * inner_n;

  SweepResult result;
  result.spec = spec;

  // Parameter columns: pattern tables always carry (phi, k0L, M); otherwise
  // the axes name the columns.
  std::vector<std::string> param_names;
  if (spec.kind == SweepKind::pattern) {
    param_names = {"phi", "k0L", "M"};
  } else {
    for (const auto& ax : spec.axes) param_names.push_back(ax.name);
  }
  for (const auto& n : param_names) result.columns.push_back(axis_column(n).first);
  for (Metric m : spec.metrics) result.columns.push_back(to_string(m));

  result.rows.assign(total, {});
  result.sentinel_reasons.assign(total, "");

  GmaxCache cache;
  const auto eval_row = [&](size_t idx) {
    const size_t oi = idx / inner_n;
    const size_t ii = idx % inner_n;
    RowEval ev{spec, spec.fixed, cache, {}};
    if (!grids.empty()) apply_axis(ev.p, spec.axes[0].name, grids[0][oi]);
    if (grids.size() > 1) apply_axis(ev.p, spec.axes[1].name, grids[1][ii]);

    std::vector<double> row;
    row.reserve(result.columns.size());
    for (const auto& n : param_names) {
      double raw;
      if (n == "phi") raw = ev.p.phi;
      else if (n == "k0L") raw = ev.p.k0L > 0.0
                                     ? ev.p.k0L
                                     : Wave::from_frequency(ev.p.f).k0() * ev.p.d / ev.p.M;
      else if (n == "M") raw = ev.p.M;
      else if (n == "f") raw = ev.p.f;
      else if (n == "b") raw = ev.p.b;
      else if (n == "beta") raw = ev.p.beta;
      else raw = ev.p.d > 0.0 ? ev.p.l / ev.p.d : 0.0;
      row.push_back(axis_display(ev.p, n, raw));
    }
    for (Metric m : spec.metrics) row.push_back(ev.guarded(m));

    result.rows[idx] = std::move(row);
    std::string joined;
    for (const auto& r : ev.reasons) {
      if (!joined.empty()) joined += ";";
      joined += r;
    }
    result.sentinel_reasons[idx] = joined;
  };

  const int threads = std::min<int>(env_thread_cap(), static_cast<int>(total));
  if (threads <= 1) {
    for (size_t i = 0; i < total; ++i) eval_row(i);
  } else {
    // Rows are independent; results land in preassigned slots, so the
    // assembled table is identical regardless of scheduling.
    std::vector<std::thread> pool;
    std::atomic<size_t> next{0};
    for (int t = 0; t < threads; ++t)
      pool.emplace_back([&] {
        for (size_t i = next.fetch_add(1); i < total; i = next.fetch_add(1)) eval_row(i);
      });
    for (auto& th : pool) th.join();
  }

  std::ostringstream rel;
  rel << spec.quad.rel_tol;
  result.metadata = {
      {"library", "vlcsim"},
      {"version", kVersion},
      {"c_m_per_s", "299792458"},
      {"eta0_ohm", "376.730313668"},
      {"quad_rel_tol", rel.str()},
      {"quad_density_per_lobe", "8"},
      {"preset", spec.name},
  };
  if (!spec.defaults_note.empty())
    result.metadata.emplace_back("defaults_note", spec.defaults_note);
  return result;
}

PresetName preset_name_from_string(const std::string& s) {
  if (s == "fig2a") return PresetName::fig2a;
  if (s == "fig2b") return PresetName::fig2b;
  if (s == "fig3") return PresetName::fig3;
  if (s == "fig4") return PresetName::fig4;
  if (s == "fig5_small") return PresetName::fig5_small;
  if (s == "fig5_large") return PresetName::fig5_large;
  throw std::invalid_argument("unknown preset: " + s);
}

std::vector<std::string> preset_names() {
  return {"fig2a", "fig2b", "fig3", "fig4", "fig5_small", "fig5_large"};
}

SweepSpec preset(PresetName name) {
  SweepSpec spec;
  const double d = 2.5e-3;
  switch (name) {
    case PresetName::fig2a: {
      spec.kind = SweepKind::pattern;
      spec.name = "fig2a";
      spec.fixed.a = 10e-9;  // keeps L >= 2a at the smallest k0L
      spec.fixed.M = 1000;
      spec.fixed.f = 600e12;
      spec.axes = {
          {"k0L", 0, 0, 0, SweepAxis::Spacing::linear, {0.1 * kPi, 0.5 * kPi, kPi}},
          {"phi", 0.0, kPi, 4001, SweepAxis::Spacing::linear, {}},
      };
      spec.metrics = {Metric::G_scaled, Metric::G};
      break;
    }
    case PresetName::fig2b: {
      spec.kind = SweepKind::pattern;
      spec.name = "fig2b";
      spec.fixed.a = 10e-9;
      spec.fixed.f = 600e12;
      spec.fixed.k0L = 0.1 * kPi;
      spec.axes = {
          {"M", 0, 0, 0, SweepAxis::Spacing::linear, {10, 100, 1000}},
          {"phi", 0.0, kPi, 4001, SweepAxis::Spacing::linear, {}},
      };
      spec.metrics = {Metric::G_scaled, Metric::G};
      break;
    }
    case PresetName::fig3: {
      spec.kind = SweepKind::m_sweep;
      spec.name = "fig3";
      spec.fixed = SweepFixed{};
      spec.fixed.h = 1.0;
      spec.fixed.b = d;
      spec.fixed.D = 2.0 * d;
      spec.axes = {
          {"f", 0, 0, 0, SweepAxis::Spacing::linear, {450e12, 550e12, 650e12}},
          {"M", 1.0, 20000.0, 41, SweepAxis::Spacing::log, {}},
      };
      spec.metrics = {Metric::P_W_per_m, Metric::P_over_Pmax, Metric::SIR,
                      Metric::SIR0, Metric::SIR_enh};
      break;
    }
    case PresetName::fig4: {
      spec.kind = SweepKind::freq_sweep;
      spec.name = "fig4";
      spec.fixed = SweepFixed{};
      spec.fixed.M = 12000;
      spec.fixed.h = 1.0;
      spec.fixed.D = 2.0 * d;
      spec.axes = {
          {"b", 0, 0, 0, SweepAxis::Spacing::linear, {d / 35.0, 0.2 * d, 0.5 * d, d}},
          {"f", 400e12, 800e12, 33, SweepAxis::Spacing::linear, {}},
      };
      spec.metrics = {Metric::P_W_per_m, Metric::P_over_Pmax, Metric::SIR,
                      Metric::SIR0, Metric::SIR_enh};
      break;
    }
    case PresetName::fig5_small:
    case PresetName::fig5_large: {
      spec.kind = SweepKind::misalign_map;
      spec.name = name == PresetName::fig5_small ? "fig5_small" : "fig5_large";
      spec.fixed = SweepFixed{};
      spec.fixed.M = 5000;
      spec.fixed.f = 600e12;
      spec.fixed.h = 1.0;
      spec.fixed.b = (name == PresetName::fig5_small ? 0.2 : 0.8) * d;
      spec.fixed.D = 2.0 * d;
      spec.axes = {
          {"beta", -75.0 * kPi / 180.0, 75.0 * kPi / 180.0, 41,
           SweepAxis::Spacing::linear, {}},
          {"l_over_d", -2.0, 2.0, 41, SweepAxis::Spacing::linear, {}},
      };
      spec.metrics = {Metric::P_over_Pmax, Metric::SIR_enh, Metric::P_over_P0};
      break;
    }
  }
  spec.defaults_note = default_note(name);
  return spec;
}

}  // namespace vlcsim
