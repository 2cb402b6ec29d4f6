#include "vlcsim/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

#include "vlcsim/constants.hpp"
#include "vlcsim/table.hpp"

namespace vlcsim {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::istringstream iss(s);
  std::string item;
  while (std::getline(iss, item, sep)) out.push_back(trim(item));
  return out;
}

double parse_num(const std::string& s, const std::string& where,
                 std::vector<std::string>& problems) {
  try {
    size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (...) {
    problems.push_back(where + ": not a number: '" + s + "'");
    return 0.0;
  }
}

// Display-unit scale for axis values (config file -> SI).
double axis_to_si(const std::string& name, double v) {
  if (name == "f") return v * 1e12;                // THz
  if (name == "b") return v * 1e-3;                // mm
  if (name == "beta") return v * kPi / 180.0;      // degrees
  return v;                                        // phi (rad), k0L, M, l_over_d
}

// Inverse of axis_to_si; divides by the identical factor so a dumped value
// re-parses to the same double.
double axis_from_si(const std::string& name, double v) {
  if (name == "f") return v / 1e12;
  if (name == "b") return v / 1e-3;
  if (name == "beta") return v / (kPi / 180.0);
  return v;
}

struct Assignment {
  std::string section;
  std::string key;
  std::string value;
};

void apply(RunConfig& cfg, const Assignment& a, std::vector<std::string>& problems) {
  const std::string where = "[" + a.section + "] " + a.key;
  auto& fx = cfg.spec.fixed;

  const auto axis_index = [&]() -> int {
    return a.section == "axis1" ? 0 : 1;
  };
  const auto ensure_axis = [&]() -> SweepAxis& {
    const size_t need = axis_index() + 1;
    while (cfg.spec.axes.size() < need) cfg.spec.axes.push_back({});
    return cfg.spec.axes[axis_index()];
  };

  if (a.section == "sweep") {
    if (a.key == "kind") {
      try {
        cfg.spec.kind = sweep_kind_from_string(a.value);
      } catch (const std::exception& e) {
        problems.push_back(e.what());
      }
    } else if (a.key == "name") {
      cfg.spec.name = a.value;
    } else if (a.key == "metrics") {
      cfg.spec.metrics.clear();
      for (const auto& m : split(a.value, ',')) {
        try {
          cfg.spec.metrics.push_back(metric_from_string(m));
        } catch (const std::exception& e) {
          problems.push_back(e.what());
        }
      }
    } else {
      problems.push_back("unknown key " + where);
    }
  } else if (a.section == "source") {
    if (a.key == "a_nm") fx.a = parse_num(a.value, where, problems) * 1e-9;
    else if (a.key == "d_mm") fx.d = parse_num(a.value, where, problems) * 1e-3;
    else if (a.key == "M") fx.M = static_cast<int>(parse_num(a.value, where, problems));
    else if (a.key == "k0L") fx.k0L = parse_num(a.value, where, problems);
    else problems.push_back("unknown key " + where);
  } else if (a.section == "wave") {
    if (a.key == "f_THz") fx.f = parse_num(a.value, where, problems) * 1e12;
    else problems.push_back("unknown key " + where);
  } else if (a.section == "link") {
    if (a.key == "h_mm") fx.h = parse_num(a.value, where, problems) * 1e-3;
    else if (a.key == "b_mm") fx.b = parse_num(a.value, where, problems) * 1e-3;
    else if (a.key == "D_mm") fx.D = parse_num(a.value, where, problems) * 1e-3;
    else problems.push_back("unknown key " + where);
  } else if (a.section == "pose") {
    if (a.key == "beta_deg") fx.beta = parse_num(a.value, where, problems) * kPi / 180.0;
    else if (a.key == "l_mm") fx.l = parse_num(a.value, where, problems) * 1e-3;
    else problems.push_back("unknown key " + where);
  } else if (a.section == "quad") {
    if (a.key == "rel_tol") cfg.spec.quad.rel_tol = parse_num(a.value, where, problems);
    else if (a.key == "abs_tol") cfg.spec.quad.abs_tol = parse_num(a.value, where, problems);
    else if (a.key == "max_depth") cfg.spec.quad.max_depth = static_cast<int>(parse_num(a.value, where, problems));
    else if (a.key == "min_panels") cfg.spec.quad.min_panels = static_cast<int>(parse_num(a.value, where, problems));
    else problems.push_back("unknown key " + where);
  } else if (a.section == "axis1" || a.section == "axis2") {
    SweepAxis& ax = ensure_axis();
    if (a.key == "name") ax.name = a.value;
    else if (a.key == "start") ax.start = parse_num(a.value, where, problems);
    else if (a.key == "stop") ax.stop = parse_num(a.value, where, problems);
    else if (a.key == "count") ax.count = static_cast<int>(parse_num(a.value, where, problems));
    else if (a.key == "spacing") {
      if (a.value == "linear") ax.spacing = SweepAxis::Spacing::linear;
      else if (a.value == "log") ax.spacing = SweepAxis::Spacing::log;
      else problems.push_back(where + ": spacing must be linear or log");
    } else if (a.key == "values") {
      ax.values.clear();
      for (const auto& v : split(a.value, ','))
        ax.values.push_back(parse_num(v, where, problems));
    } else {
      problems.push_back("unknown key " + where);
    }
  } else if (a.section == "output") {
    if (a.key == "path") cfg.out_path = a.value;
    else if (a.key == "format") {
      if (a.value != "csv" && a.value != "json")
        problems.push_back(where + ": format must be csv or json");
      else
        cfg.format = a.value;
    } else {
      problems.push_back("unknown key " + where);
    }
  } else {
    problems.push_back("unknown section [" + a.section + "]");
  }
}

// Axis bounds and explicit values arrive in display units; convert once the
// axis name is known.
void convert_axes_to_si(RunConfig& cfg, std::vector<std::string>& problems) {
  for (auto& ax : cfg.spec.axes) {
    if (ax.name.empty()) {
      problems.push_back("axis without a name");
      continue;
    }
    ax.start = axis_to_si(ax.name, ax.start);
    ax.stop = axis_to_si(ax.name, ax.stop);
    for (auto& v : ax.values) v = axis_to_si(ax.name, v);
  }
}

}  // namespace

RunConfig parse_config_text(const std::string& text) {
  RunConfig cfg;
  cfg.spec.axes.clear();
  std::vector<std::string> problems;
  std::string section;
  std::istringstream iss(text);
  std::string line;
  int lineno = 0;
  while (std::getline(iss, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        problems.push_back("line " + std::to_string(lineno) + ": malformed section header");
        continue;
      }
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      problems.push_back("line " + std::to_string(lineno) + ": expected key = value");
      continue;
    }
    if (section.empty()) {
      problems.push_back("line " + std::to_string(lineno) + ": key outside any section");
      continue;
    }
    apply(cfg, {section, trim(line.substr(0, eq)), trim(line.substr(eq + 1))}, problems);
  }
  convert_axes_to_si(cfg, problems);
  if (!problems.empty()) {
    std::string msg = "config errors:";
    for (const auto& p : problems) msg += "\n  - " + p;
    throw ConfigError(msg);
  }
  try {
    cfg.spec.validate();
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
  return cfg;
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream oss;
  oss << in.rdbuf();
  return parse_config_text(oss.str());
}

void apply_override(RunConfig& config, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos)
    throw ConfigError("override must look like section.key=value: " + assignment);
  const std::string lhs = trim(assignment.substr(0, eq));
  const std::string value = trim(assignment.substr(eq + 1));
  const auto dot = lhs.find('.');
  if (dot == std::string::npos)
    throw ConfigError("override key must be section.key: " + assignment);
  std::vector<std::string> problems;
  const std::string section = lhs.substr(0, dot);
  const std::string key = lhs.substr(dot + 1);
  // Axis overrides carry display units like the config file.
  const bool axis = section == "axis1" || section == "axis2";
  if (axis)
    for (auto& ax : config.spec.axes) {
      ax.start = axis_from_si(ax.name, ax.start);
      ax.stop = axis_from_si(ax.name, ax.stop);
      for (auto& v : ax.values) v = axis_from_si(ax.name, v);
    }
  apply(config, {section, key, value}, problems);
  if (axis) convert_axes_to_si(config, problems);
  if (!problems.empty()) {
    std::string msg = "override errors:";
    for (const auto& p : problems) msg += "\n  - " + p;
    throw ConfigError(msg);
  }
}

std::string dump_config(const RunConfig& config) {
  const auto& fx = config.spec.fixed;
  std::ostringstream os;
  os << "[sweep]\n";
  os << "kind = " << to_string(config.spec.kind) << "\n";
  os << "name = " << config.spec.name << "\n";
  os << "metrics = ";
  for (size_t i = 0; i < config.spec.metrics.size(); ++i)
    os << (i ? "," : "") << to_string(config.spec.metrics[i]);
  os << "\n\n[source]\n";
  os << "a_nm = " << format_double(fx.a / 1e-9) << "\n";
  os << "d_mm = " << format_double(fx.d / 1e-3) << "\n";
  os << "M = " << fx.M << "\n";
  if (fx.k0L > 0.0) os << "k0L = " << format_double(fx.k0L) << "\n";
  os << "\n[wave]\nf_THz = " << format_double(fx.f / 1e12) << "\n";
  os << "\n[link]\n";
  os << "h_mm = " << format_double(fx.h / 1e-3) << "\n";
  os << "b_mm = " << format_double(fx.b / 1e-3) << "\n";
  os << "D_mm = " << format_double(fx.D / 1e-3) << "\n";
  os << "\n[pose]\n";
  os << "beta_deg = " << format_double(fx.beta / (kPi / 180.0)) << "\n";
  os << "l_mm = " << format_double(fx.l / 1e-3) << "\n";
  os << "\n[quad]\n";
  os << "rel_tol = " << format_double(config.spec.quad.rel_tol) << "\n";
  os << "abs_tol = " << format_double(config.spec.quad.abs_tol) << "\n";
  os << "max_depth = " << config.spec.quad.max_depth << "\n";
  os << "min_panels = " << config.spec.quad.min_panels << "\n";
  for (size_t i = 0; i < config.spec.axes.size(); ++i) {
    const auto& ax = config.spec.axes[i];
    os << "\n[axis" << (i + 1) << "]\n";
    os << "name = " << ax.name << "\n";
    if (ax.values.empty()) {
      os << "start = " << format_double(axis_from_si(ax.name, ax.start)) << "\n";
      os << "stop = " << format_double(axis_from_si(ax.name, ax.stop)) << "\n";
      os << "count = " << ax.count << "\n";
      os << "spacing = " << (ax.spacing == SweepAxis::Spacing::log ? "log" : "linear") << "\n";
    } else {
      os << "values = ";
      for (size_t j = 0; j < ax.values.size(); ++j)
        os << (j ? "," : "") << format_double(axis_from_si(ax.name, ax.values[j]));
      os << "\n";
    }
  }
  os << "\n[output]\n";
  if (!config.out_path.empty()) os << "path = " << config.out_path << "\n";
  os << "format = " << config.format << "\n";
  return os.str();
}

}  // namespace vlcsim
