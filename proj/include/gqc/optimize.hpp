#pragma once

#include <functional>
#include <vector>

namespace gqc {

struct NelderMeadOptions {
  double ftol = 1e-12;       // absolute spread of simplex values
  double xtol = 1e-10;       // simplex diameter
  int max_evals = 2000;
  double initial_step = 0.3;
};

struct NelderMeadResult {
  std::vector<double> x;
  double fmin = 0.0;
  int evals = 0;
  bool converged = false;
};

/// Derivative-free simplex minimization (Nelder-Mead with standard
/// reflection/expansion/contraction coefficients and shrink fallback).
NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& fn,
                             const std::vector<double>& x0,
                             const NelderMeadOptions& opts = {});

/// Golden-section minimization of a unimodal function on [lo, hi].
double golden_section_min(const std::function<double(double)>& fn, double lo, double hi,
                          double xtol = 1e-12, int max_iter = 200);

/// Bisection root of a monotone function with f(lo) and f(hi) of opposite
/// sign; returns the midpoint of the final bracket.
double bisect_root(const std::function<double(double)>& fn, double lo, double hi,
                   double xtol = 1e-14, int max_iter = 200);

}  // namespace gqc
