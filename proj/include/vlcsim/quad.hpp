#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

namespace vlcsim {

struct QuadSpec {
  double rel_tol = 1e-8;
  double abs_tol = 0.0;
  int max_depth = 40;
  int min_panels = 1;

  void validate() const {
    if (!(rel_tol > 0.0)) throw std::invalid_argument("QuadSpec: rel_tol must be > 0");
    if (!(abs_tol >= 0.0)) throw std::invalid_argument("QuadSpec: abs_tol must be >= 0");
    if (max_depth < 1) throw std::invalid_argument("QuadSpec: max_depth must be >= 1");
    if (min_panels < 1) throw std::invalid_argument("QuadSpec: min_panels must be >= 1");
  }
};

struct QuadResult {
  double value = 0.0;
  double error_bound = 0.0;
};

/// Thrown when the recursion depth budget runs out before the tolerance is
/// met; carries the best available estimate and its error bound.
class QuadConvergenceError : public std::runtime_error {
 public:
  QuadConvergenceError(double best, double bound)
      : std::runtime_error("quadrature did not converge within max_depth"),
        best_estimate(best),
        error_bound(bound) {}
  double best_estimate;
  double error_bound;
};

/// Panels needed so each oscillation lobe of the given angular width gets
/// at least `density` panels over [lo, hi].
inline int oscillatory_panels(double lobe_width, double lo, double hi, int density) {
  if (!(lobe_width > 0.0)) throw std::invalid_argument("oscillatory_panels: lobe_width must be > 0");
  if (density < 1) throw std::invalid_argument("oscillatory_panels: density must be >= 1");
  const double n = std::ceil(static_cast<double>(density) * (hi - lo) / lobe_width);
  if (n < 1.0) return 1;
  if (n > 5e7) throw std::invalid_argument("oscillatory_panels: panel count out of range");
  return static_cast<int>(n);
}

namespace detail {

template <class F>
struct SimpsonState {
  const F& f;
  double tol_per_width;  // absolute tolerance per unit interval width
  int max_depth;
  double sum = 0.0;
  double error_bound = 0.0;
  bool converged = true;

  void recurse(double a, double b, double fa, double fm, double fb, double whole, int depth) {
    const double m = 0.5 * (a + b);
    if (!(a < m && m < b)) {
      // Panel width at machine resolution: no representable midpoint left.
      sum += whole;
      return;
    }
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double h = b - a;
    // Each half uses its measured width: the rounded midpoint m is not
    // exactly (a+b)/2, and at small widths the h/2 shortcut leaves a floor
    // under the refinement estimate that stalls convergence.
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double both = left + right;
    const double err = (both - whole) / 15.0;
    if (std::fabs(err) <= tol_per_width * h || depth >= max_depth) {
      if (!(std::fabs(err) <= tol_per_width * h)) converged = false;
      sum += both + err;  // Richardson extrapolation
      error_bound += std::fabs(err);
      return;
    }
    recurse(a, m, fa, flm, fm, left, depth + 1);
    recurse(m, b, fm, frm, fb, right, depth + 1);
  }
};

}  // namespace detail

/// Deterministic adaptive Simpson quadrature of f over [lo, hi]: a mandatory
/// uniform panelization of spec.min_panels, then recursive bisection until
/// the local error estimate meets max(abs_tol, rel_tol*|integral|).
template <class F>
QuadResult integrate(const F& f, double lo, double hi, const QuadSpec& spec = {}) {
  spec.validate();
  if (!(lo < hi)) throw std::invalid_argument("integrate: requires lo < hi");

  const int n = spec.min_panels;
  const double width = hi - lo;
  const double h = width / n;

  // Composite-Simpson first pass over the mandatory panels; doubles as the
  // rough magnitude for the relative-tolerance target.
  double rough = 0.0;
  std::vector<double> fl(n + 1), fm(n);
  for (int i = 0; i <= n; ++i) fl[i] = f(lo + h * i);
  for (int i = 0; i < n; ++i) {
    fm[i] = f(lo + h * (i + 0.5));
    rough += h / 6.0 * (fl[i] + 4.0 * fm[i] + fl[i + 1]);
  }

  const double tol = std::max(spec.abs_tol, spec.rel_tol * std::fabs(rough));
  detail::SimpsonState<F> state{f, tol / width, spec.max_depth};
  for (int i = 0; i < n; ++i) {
    const double a = lo + h * i;
    const double b = lo + h * (i + 1);
    const double whole = h / 6.0 * (fl[i] + 4.0 * fm[i] + fl[i + 1]);
    state.recurse(a, b, fl[i], fm[i], fl[i + 1], whole, 0);
  }
  if (!state.converged) throw QuadConvergenceError(state.sum, state.error_bound);
  return {state.sum, state.error_bound};
}

}  // namespace vlcsim
