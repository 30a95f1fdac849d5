#include "gqc/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace gqc {

NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& fn,
                             const std::vector<double>& x0, const NelderMeadOptions& opts) {
  const int n = static_cast<int>(x0.size());
  if (n < 1) throw std::invalid_argument("nelder_mead: empty start point");

  std::vector<std::vector<double>> simplex(n + 1, x0);
  std::vector<double> fval(n + 1);
  int evals = 0;
  auto eval = [&](const std::vector<double>& x) {
    ++evals;
    return fn(x);
  };
  for (int i = 0; i < n; ++i) simplex[i + 1][i] += opts.initial_step;
  for (int i = 0; i <= n; ++i) fval[i] = eval(simplex[i]);

  std::vector<int> order(n + 1);
  NelderMeadResult res;
  while (evals < opts.max_evals) {
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return fval[a] < fval[b]; });
    const int best = order[0], worst = order[n], second = order[n - 1];

    double diam = 0.0;
    for (int i = 0; i < n; ++i) {
      diam = std::max(diam, std::abs(simplex[order[i + 1]][i] - simplex[best][i]));
      for (int jj = 0; jj <= n; ++jj)
        diam = std::max(diam, std::abs(simplex[jj][i] - simplex[best][i]));
    }
    if (fval[worst] - fval[best] <= opts.ftol && diam <= opts.xtol) {
      res.converged = true;
      break;
    }

    std::vector<double> centroid(n, 0.0);
    for (int i = 0; i <= n; ++i) {
      if (i == worst) continue;
      for (int jj = 0; jj < n; ++jj) centroid[jj] += simplex[i][jj] / n;
    }
    auto blend = [&](double coef) {
      std::vector<double> x(n);
      for (int jj = 0; jj < n; ++jj)
        x[jj] = centroid[jj] + coef * (simplex[worst][jj] - centroid[jj]);
      return x;
    };

    const std::vector<double> xr = blend(-1.0);
    const double fr = eval(xr);
    if (fr < fval[order[0]]) {
      const std::vector<double> xe = blend(-2.0);
      const double fe = eval(xe);
      if (fe < fr) {
        simplex[worst] = xe;
        fval[worst] = fe;
      } else {
        simplex[worst] = xr;
        fval[worst] = fr;
      }
    } else if (fr < fval[second]) {
      simplex[worst] = xr;
      fval[worst] = fr;
    } else {
      const bool outside = fr < fval[worst];
      const std::vector<double> xc = blend(outside ? -0.5 : 0.5);
      const double fc = eval(xc);
      if (fc < std::min(fr, fval[worst])) {
        simplex[worst] = xc;
        fval[worst] = fc;
      } else {
        for (int i = 0; i <= n; ++i) {
          if (i == best) continue;
          for (int jj = 0; jj < n; ++jj)
            simplex[i][jj] = simplex[best][jj] + 0.5 * (simplex[i][jj] - simplex[best][jj]);
          fval[i] = eval(simplex[i]);
        }
      }
    }
  }

  const auto best_it = std::min_element(fval.begin(), fval.end());
  res.x = simplex[static_cast<int>(best_it - fval.begin())];
  res.fmin = *best_it;
  res.evals = evals;
  return res;
}

double golden_section_min(const std::function<double(double)>& fn, double lo, double hi,
                          double xtol, int max_iter) {
  constexpr double inv_phi = 0.6180339887498949;
  double a = lo, b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = fn(c), fd = fn(d);
  for (int i = 0; i < max_iter && (b - a) > xtol; ++i) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = fn(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = fn(d);
    }
  }
  return fc < fd ? c : d;
}

double bisect_root(const std::function<double(double)>& fn, double lo, double hi, double xtol,
                   int max_iter) {
  double flo = fn(lo);
  double fhi = fn(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0)) {
    throw std::invalid_argument("bisect_root: endpoints do not bracket a root");
  }
  for (int i = 0; i < max_iter && (hi - lo) > xtol * std::max(1.0, std::abs(lo)); ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = fn(mid);
    if (fm == 0.0) return mid;
    if ((fm > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace gqc
