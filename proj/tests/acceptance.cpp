// Acceptance suite: one self-contained check per release criterion. Each
// prints exactly one PASS/FAIL line; the process exits nonzero when any
// criterion fails. argv[1] must name the CLI binary (used by the
// determinism criterion).

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "bessel_reference.hpp"
#include "bessel_wronskian_reference.hpp"
#include "vlcsim/beam.hpp"
#include "vlcsim/constants.hpp"
#include "vlcsim/link.hpp"
#include "vlcsim/quad.hpp"
#include "vlcsim/specfun.hpp"
#include "vlcsim/sweep.hpp"

using namespace vlcsim;

namespace {

int g_failures = 0;

void report(int id, const std::string& label, bool pass, const std::string& detail) {
  std::printf("%s  criterion %2d  %s%s%s\n", pass ? "PASS" : "FAIL", id, label.c_str(),
              detail.empty() ? "" : " -- ", detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

template <class F>
double golden_max(const F& f, double lo, double hi) {
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  for (int i = 0; i < 200; ++i) {
    const double c = b - gr * (b - a);
    const double d = a + gr * (b - a);
    if (f(c) > f(d)) b = d; else a = c;
  }
  return 0.5 * (a + b);
}

// Bisection on a sign change of f.
template <class F>
double find_root(const F& f, double lo, double hi) {
  double flo = f(lo);
  for (int i = 0; i < 200; ++i) {
    const double m = 0.5 * (lo + hi);
    const double fm = f(m);
    if ((flo < 0.0) == (fm < 0.0)) { lo = m; flo = fm; } else { hi = m; }
  }
  return 0.5 * (lo + hi);
}

// ---------------------------------------------------------------------------
// 1. Broadside peak identity on random geometries.
void criterion1() {
  const Wave wave = Wave::from_frequency(600e12);
  std::mt19937 rng(20260826);
  std::uniform_int_distribution<int> ms(1, 5000);
  std::uniform_real_distribution<double> k0Ls(1e-3, 2.0 * kPi);
  std::uniform_real_distribution<double> as(10e-9, 50e-9);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const int M = ms(rng);
    const double k0L = k0Ls(rng);
    const double L = k0L / wave.k0();
    const double a = std::min(as(rng), L / 2.0);
    const auto geom = SourceGeometry::from_pitch(a, L, M);
    const double n = 2.0 * M + 1.0;
    const double peak =
        radiation_pattern(geom, wave, kPi / 2.0) * hankel0_abs2(wave.k0() * a);
    worst = std::max(worst, std::fabs(peak - n * n) / (n * n));
  }
  std::ostringstream d;
  d << "worst relative deviation " << worst;
  report(1, "broadside peak equals (2M+1)^2 over |H0|^2", worst < 1e-9, d.str());
}

// ---------------------------------------------------------------------------
// 2. Second-lobe amplitude law and main/second ratio.
void criterion2() {
  const Wave wave = Wave::from_frequency(600e12);
  const double k0L = 0.1 * kPi;
  bool pass = true;
  std::ostringstream d;
  double ratio_dev = 0.0;
  for (int M : {10, 100, 1000}) {
    const double n = 2.0 * M + 1.0;
    const auto af2 = [&](double u) {
      const double v = array_factor(u, M);
      return v * v;
    };
    // Locate the second lobe numerically: bisect its two bounding nulls of
    // sin(n u), take the lobe center, confirm an interior maximum exists.
    const double u1 = find_root([&](double u) { return std::sin(n * u); },
                                0.8 * kPi / n, 1.2 * kPi / n);
    const double u2 = find_root([&](double u) { return std::sin(n * u); },
                                1.8 * kPi / n, 2.2 * kPi / n);
    const double center = 0.5 * (u1 + u2);
    const double value = af2(center);
    const double target = 1.0 / std::pow(std::sin(3.0 * kPi / (2.0 * n)), 2);
    if (std::fabs(value - target) > 0.005 * target) pass = false;

    const double upeak = golden_max(af2, u1 + 1e-3 / n, u2 - 1e-3 / n);
    if (!(af2(upeak) >= value)) pass = false;

    // When the lobe direction exists in real angles, the full pattern (with
    // the cos phi mapping) reproduces the same value there.
    const double arg = 3.0 * kPi / (k0L * n);
    if (arg <= 1.0) {
      const double L = k0L / wave.k0();
      const auto geom = SourceGeometry::from_pitch(10e-9, L, M);
      const double g2 = radiation_pattern_scaled(geom, wave, std::acos(arg));
      if (std::fabs(g2 - target) > 0.005 * target) pass = false;
    }
    if (M == 1000) {
      const double ratio = n * n / value;
      ratio_dev = std::fabs(ratio - 9.0 * kPi * kPi / 4.0) / (9.0 * kPi * kPi / 4.0);
      if (ratio_dev > 0.02) pass = false;
    }
  }
  d << "main/second ratio deviation at M=1000: " << ratio_dev;
  report(2, "second-lobe amplitude follows csc^2(3pi/(2(2M+1)))", pass, d.str());
}

// ---------------------------------------------------------------------------
// 3. Closed-form pattern vs brute-force slit sums; near-field flux oracle.
void criterion3() {
  const Wave wave = Wave::from_frequency(600e12);
  bool pass = true;
  std::ostringstream d;

  std::mt19937 rng(7117);
  std::uniform_int_distribution<int> ms(1, 50);
  std::uniform_real_distribution<double> phis(0.0, kPi);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const int M = ms(rng);
    const auto geom = SourceGeometry::from_pitch(25e-9, wave.wavelength() / 2.0, M);
    const double phi = phis(rng);
    std::complex<double> sum = 0.0;
    for (int m = -M; m <= M; ++m)
      sum += std::polar(1.0, wave.k0() * geom.L * m * std::cos(phi));
    const double brute = std::norm(sum) / hankel0_abs2(wave.k0() * geom.a);
    const double g = radiation_pattern(geom, wave, phi);
    worst = std::max(worst, std::fabs(g - brute) / std::max(brute, 1e-30));
  }
  if (worst >= 1e-10) pass = false;

  // Segment flux from the pattern vs direct integration of the exact
  // cylindrical-wave Poynting density at r = 1e3 * d.
  const auto geom = SourceGeometry::from_pitch(25e-9, wave.wavelength() / 2.0, 5);
  const LinkGeometry link{1e3 * geom.d, geom.d, 2.0 * geom.d};
  const double from_pattern = flux_through_segment(geom, wave, 0.0, ReceiverPose{}, link);
  QuadSpec spec;
  spec.rel_tol = 1e-10;
  spec.min_panels = 64;
  const double from_field =
      integrate(
          [&](double x) {
            const double r = std::hypot(x, link.h);
            const std::complex<double> e = near_field(geom, wave, x, link.h);
            const double intensity = std::norm(e) * kPi * wave.k0() * r / 2.0;
            return intensity / (kEta0 * kPi * wave.k0() * r) * (link.h / r);
          },
          -link.b, link.b, spec)
          .value;
  const double flux_dev = std::fabs(from_pattern - from_field) / from_field;
  if (flux_dev >= 0.01) pass = false;

  d << "worst pattern deviation " << worst << ", flux deviation " << flux_dev;
  report(3, "pattern matches slit sums; segment flux matches field flux", pass, d.str());
}

// ---------------------------------------------------------------------------
// 4. Lobe count vs grid-counted maxima.
void criterion4() {
  const Wave wave = Wave::from_frequency(600e12);
  const double lambda = wave.wavelength();
  std::mt19937 rng(404);
  std::uniform_int_distribution<int> ms(1, 60);
  bool pass = true;
  long worst = 0;
  const int grid = 400000;
  for (int c = 0; c < 20; ++c) {
    const int M = ms(rng);
    std::uniform_real_distribution<double> ls(60e-9, std::min(5.0 * lambda, 50.0 * lambda / M));
    const double L = ls(rng);
    const auto geom = SourceGeometry::from_pitch(25e-9, L, M);
    const long v = lobe_count(geom, wave);

    // Lobes are the maxima bracketed by nulls of the pattern; the partial
    // end segments beyond the outermost nulls carry no bracketed maximum,
    // so restrict the count to phi strictly between those nulls.
    const int n = 2 * M + 1;
    const double u_half = 0.5 * wave.k0() * geom.L;
    long kz = static_cast<long>(std::floor(u_half * n / kPi));
    if (kz * kPi / n >= u_half) --kz;
    while (kz > 0 && kz % n == 0) --kz;  // grating lobe, not a null
    double phi_lo = 0.0, phi_hi = kPi;
    if (kz > 0) {
      phi_lo = std::acos((kz * kPi / n) / u_half);
      phi_hi = kPi - phi_lo;
    }

    long maxima = 0;
    double p2 = radiation_pattern_scaled(geom, wave, 0.0);
    double p1 = radiation_pattern_scaled(geom, wave, kPi / grid);
    for (int i = 2; i <= grid; ++i) {
      const double cur = radiation_pattern_scaled(geom, wave, kPi * i / grid);
      const double phi = kPi * (i - 1) / grid;
      if (p1 > p2 && p1 > cur && phi > phi_lo && phi < phi_hi) ++maxima;
      p2 = p1;
      p1 = cur;
    }
    worst = std::max(worst, std::labs(maxima - v));
    if (std::labs(maxima - v) > 2) pass = false;
  }
  std::ostringstream d;
  d << "worst |grid count - formula| = " << worst;
  report(4, "lobe-count formula matches grid-counted maxima within 2", pass, d.str());
}

// ---------------------------------------------------------------------------
// 5. Closed-form Lambertian SIR vs quadrature.
void criterion5() {
  bool pass = true;
  std::mt19937 rng(555);
  std::uniform_real_distribution<double> uh(0.1, 2.0), ub(1e-4, 5e-3), uD(6e-3, 5e-2);
  QuadSpec spec;
  spec.rel_tol = 1e-13;
  spec.min_panels = 64;
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const LinkGeometry link{uh(rng), ub(rng), uD(rng)};
    const auto window = [&](double c) {
      return integrate(
                 [&](double x) {
                   const double r2 = x * x + link.h * link.h;
                   return (link.h / std::sqrt(r2)) / r2;
                 },
                 c - link.b, c + link.b, spec)
          .value;
    };
    const double numeric = window(0.0) / window(2.0 * link.D);
    const double closed = sir0(link);
    worst = std::max(worst, std::fabs(closed - numeric) / numeric);
  }
  if (worst >= 1e-8) pass = false;

  const double reference = sir0(LinkGeometry{1.0, 2.5e-3, 5e-3});
  if (std::fabs(reference - 1.0001) > 1e-4) pass = false;

  std::ostringstream d;
  d << "worst closed-vs-numeric deviation " << worst << ", reference case " << reference;
  report(5, "Lambertian SIR closed form matches quadrature", pass, d.str());
}

// ---------------------------------------------------------------------------
// 6. Thousand-fold SIR improvement configuration.
void criterion6() {
  bool pass = true;
  double min_enh = std::numeric_limits<double>::infinity();
  const double dd = 2.5e-3;
  const LinkGeometry link{1.0, dd, 2.0 * dd};
  for (double f : {450e12, 550e12, 650e12}) {
    const Wave wave = Wave::from_frequency(f);
    for (int M : {300, 1000, 3000}) {
      const auto geom = SourceGeometry::from_half_length(25e-9, dd, M);
      const double enh = sir(geom, wave, link) / sir0(link);
      min_enh = std::min(min_enh, enh);
      if (!(enh >= 5e2)) pass = false;
    }
  }
  std::ostringstream d;
  d << "minimum SIR/SIR0 = " << min_enh;
  report(6, "large-array SIR enhancement reaches three orders of magnitude", pass, d.str());
}

// ---------------------------------------------------------------------------
// 7. Aperture-width study: enhancement peak, monotone trend, power penalty.
void criterion7() {
  const double dd = 2.5e-3;
  const int M = 12000;
  const auto geom = SourceGeometry::from_half_length(25e-9, dd, M);
  const std::vector<double> bs = {dd / 35.0, 0.2 * dd, 0.5 * dd, dd};

  std::vector<double> mean_enh(bs.size(), 0.0);
  std::vector<double> mean_power(bs.size(), 0.0);
  double max_enh_smallest = 0.0;
  for (size_t bi = 0; bi < bs.size(); ++bi) {
    const LinkGeometry link{1.0, bs[bi], 2.0 * dd};
    for (int i = 0; i < 33; ++i) {
      const Wave wave = Wave::from_frequency(400e12 + 400e12 * i / 32.0);
      const double enh = sir(geom, wave, link) / sir0(link);
      mean_enh[bi] += enh / 33.0;
      mean_power[bi] += received_power(geom, wave, link, ReceiverPose{}) / 33.0;
      if (bi == 0) max_enh_smallest = std::max(max_enh_smallest, enh);
    }
  }
  bool pass = max_enh_smallest >= 1e4;
  for (size_t bi = 1; bi < bs.size(); ++bi)
    if (!(mean_enh[bi] <= mean_enh[bi - 1])) pass = false;
  const double power_ratio = mean_power.back() / mean_power.front();
  if (!(power_ratio <= 1.25)) pass = false;

  std::ostringstream d;
  d << "max enhancement at smallest b = " << max_enh_smallest
    << ", widest/narrowest mean power = " << power_ratio;
  report(7, "narrow apertures trade little power for large SIR gains", pass, d.str());
}

// ---------------------------------------------------------------------------
// 8. Misalignment maps: aligned peak, tilt tolerance, asymmetry, footprint.
void criterion8() {
  bool pass = true;
  std::ostringstream d;

  const auto run_map = [](PresetName name) { return run_sweep(preset(name)); };
  const SweepResult small = run_map(PresetName::fig5_small);
  const SweepResult large = run_map(PresetName::fig5_large);

  const auto col = [](const SweepResult& r, const std::string& name) {
    for (size_t i = 0; i < r.columns.size(); ++i)
      if (r.columns[i] == name) return i;
    throw std::logic_error("missing column " + name);
  };
  const size_t cp = col(small, "P_over_Pmax");
  const size_t cs = col(small, "SIR_enh");
  const auto at = [&](const SweepResult& r, int bi, int li, size_t c) {
    return r.rows[static_cast<size_t>(bi) * 41 + li][c];
  };

  // (a) argmax of P/Pmax at the aligned pose, for both maps.
  for (const SweepResult* r : {&small, &large}) {
    const double center = at(*r, 20, 20, cp);
    for (int bi = 0; bi < 41; ++bi)
      for (int li = 0; li < 41; ++li)
        if ((bi != 20 || li != 20) && !(at(*r, bi, li, cp) < center)) pass = false;
  }

  // (b) +-60 degree tilt retains >= 35% of the aligned power (beta grid step
  // is 3.75 deg, so 60 deg sits on the grid).
  for (const SweepResult* r : {&small, &large}) {
    const double center = at(*r, 20, 20, cp);
    if (!(at(*r, 4, 20, cp) >= 0.35 * center)) pass = false;   // beta = -60 deg
    if (!(at(*r, 36, 20, cp) >= 0.35 * center)) pass = false;  // beta = +60 deg
  }

  // (c) SIR enhancement falls faster toward the interferer (l > 0) in the
  // small-aperture map: compare means over the untilted row.
  double neg = 0.0, pos = 0.0;
  for (int li = 0; li < 20; ++li) {
    neg += at(small, 20, li, cs);
    pos += at(small, 20, 40 - li, cs);
  }
  if (!(pos < neg)) pass = false;

  // (d) Large aperture: power collapses once the shifted segment leaves the
  // main-lobe footprint.  The Dirichlet-kernel sidelobe tail captured by a
  // half-plane decays like 1/m with the offset in beamwidths, so the
  // allowance is five half-beamwidth footprints, which puts the tail below
  // the 1% threshold.
  const double dd = 2.5e-3, b = 0.8 * dd, h = 1.0;
  const auto geom = SourceGeometry::from_half_length(25e-9, dd, 5000);
  const double theta = beamwidth(geom, Wave::from_frequency(600e12)) / 2.0;
  const double center = at(large, 20, 20, cp);
  for (int bi = 0; bi < 41; ++bi) {
    const double beta = (-75.0 + 3.75 * bi) * kPi / 180.0;
    for (int li = 0; li < 41; ++li) {
      const double l = (-2.0 + 0.1 * li) * dd;
      if (std::fabs(l) > b * std::cos(beta) + 5.0 * h * std::tan(theta) &&
          !(at(large, bi, li, cp) < 0.01 * center))
        pass = false;
    }
  }

  d << "aligned P/Pmax small map = " << at(small, 20, 20, cp)
    << ", large map = " << at(large, 20, 20, cp);
  report(8, "misalignment maps: peak, tilt tolerance, asymmetry, footprint", pass, d.str());
}

// ---------------------------------------------------------------------------
// 9. Special functions vs frozen high-precision reference.
void criterion9() {
  bool pass = true;
  double worst = 0.0;
  for (const auto& row : vlcsim_test::kBesselReference) {
    worst = std::max(worst, std::fabs(bessel_j0(row[0]) - row[1]));
    worst = std::max(worst, std::fabs(bessel_y0(row[0]) - row[2]));
  }
  if (worst >= 1e-12) pass = false;

  // Wronskian J0(x)Y0'(x) - J0'(x)Y0(x) = 2/(pi x) with J0' = -J1 and
  // Y0' = -Y1 taken from the frozen order-one reference table; this avoids
  // the noise floor of numerical differentiation.
  double worst_w = 0.0;
  for (const auto& row : vlcsim_test::kBesselWronskianReference) {
    const double x = row[0], j1 = row[1], y1 = row[2];
    const double w = j1 * bessel_y0(x) - bessel_j0(x) * y1;
    worst_w = std::max(worst_w, std::fabs(w - 2.0 / (kPi * x)));
  }
  if (worst_w >= 1e-10) pass = false;

  std::ostringstream d;
  d << "worst reference deviation " << worst << ", worst Wronskian defect " << worst_w;
  report(9, "Bessel J0/Y0 match the frozen reference table", pass, d.str());
}

// ---------------------------------------------------------------------------
// 10. CLI determinism: a preset run twice yields byte-identical files.
void criterion10(const char* cli) {
  bool pass = true;
  std::ostringstream d;
  if (cli == nullptr) {
    report(10, "CLI output is byte-identical across runs", false, "no CLI path given");
    return;
  }
  const auto slurp = [](const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
  };
  const struct { const char* sub; const char* preset; } runs[] = {
      {"pattern", "fig2b"},
      {"link", "fig3"},
  };
  for (const auto& r : runs) {
    const std::string p1 = std::string("/tmp/vlcsim_acc_") + r.preset + "_1.csv";
    const std::string p2 = std::string("/tmp/vlcsim_acc_") + r.preset + "_2.csv";
    for (const std::string& p : {p1, p2}) {
      const std::string cmd = std::string(cli) + " " + r.sub + " --preset " + r.preset +
                              " --out " + p;
      if (std::system(cmd.c_str()) != 0) pass = false;
    }
    const std::string b1 = slurp(p1), b2 = slurp(p2);
    if (b1.empty() || b1 != b2) pass = false;
    d << r.preset << ": " << b1.size() << " bytes; ";
  }
  report(10, "CLI output is byte-identical across runs", pass, d.str());
}

}  // namespace

int main(int argc, char** argv) {
  const auto t0 = std::chrono::steady_clock::now();
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9();
  criterion10(argc > 1 ? argv[1] : nullptr);
  const auto dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0);
  std::printf("%d of 10 criteria passed in %.1f s\n", 10 - g_failures, dt.count());
  return g_failures == 0 ? 0 : 1;
}
