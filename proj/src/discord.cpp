#include "gqc/discord.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "gqc/optimize.hpp"

namespace gqc {

Matrix2 MeasurementSpec::sigma0() const {
  if (kind == MeasurementKind::homodyne_x || kind == MeasurementKind::homodyne_p) {
    throw std::logic_error("MeasurementSpec::sigma0: homodyne seeds have no finite CM");
  }
  Matrix2 sq;
  sq << lambda, 0.0, 0.0, 1.0 / lambda;
  const Matrix2 r = rotation2(theta);
  return r * sq * r.transpose();
}

const char* to_string(MeasurementKind kind) {
  switch (kind) {
    case MeasurementKind::heterodyne: return "heterodyne";
    case MeasurementKind::homodyne_x: return "homodyne_x";
    case MeasurementKind::homodyne_p: return "homodyne_p";
    case MeasurementKind::general: return "general";
  }
  return "unknown";
}

double conditional_det(const TwoModeStandardForm& sf, double lambda, double theta) {
  if (lambda < 0.0 || !std::isfinite(lambda)) {
    throw std::invalid_argument("conditional_det: lambda must be finite and >= 0");
  }
  const double a = sf.a, b = sf.b, c = sf.c, d = sf.d;
  const double c2 = c * c, d2 = d * d;
  const double num = 2.0 * a * a * (b + lambda) * (1.0 + b * lambda) -
                     a * (c2 + d2) * (2.0 * b * lambda + lambda * lambda + 1.0) +
                     a * (c2 - d2) * (lambda * lambda - 1.0) * std::cos(2.0 * theta) +
                     2.0 * c2 * d2 * lambda;
  return num / (2.0 * (b + lambda) * (1.0 + b * lambda));
}

double conditional_det_matrix(const TwoModeStandardForm& sf, double lambda, double theta) {
  if (!(lambda > 0.0)) {
    throw std::invalid_argument("conditional_det_matrix: lambda must be positive");
  }
  const Matrix2 alpha = sf.a * Matrix2::Identity();
  const Matrix2 beta = sf.b * Matrix2::Identity();
  Matrix2 gamma;
  gamma << sf.c, 0.0, 0.0, sf.d;
  MeasurementSpec meas{MeasurementKind::general, lambda, theta};
  const Matrix2 m = beta + meas.sigma0();
  // beta + sigma_0 > 0 for physical b >= 1, guarded anyway
  const double det_m = m.determinant();
  if (!(det_m > 0.0)) {
    throw std::runtime_error("conditional_det_matrix: singular beta + sigma_0");
  }
  const Matrix2 eps = alpha - gamma * m.inverse() * gamma.transpose();
  return eps.determinant();
}

double conditional_det(const TwoModeStandardForm& sf, const MeasurementSpec& meas) {
  switch (meas.kind) {
    case MeasurementKind::heterodyne: return conditional_det(sf, 1.0, meas.theta);
    case MeasurementKind::homodyne_x: return conditional_det(sf, 0.0, meas.theta);
    case MeasurementKind::homodyne_p:
      // lambda -> inf at theta equals lambda -> 0 at theta + pi/2
      return conditional_det(sf, 0.0, meas.theta + M_PI / 2.0);
    case MeasurementKind::general: return conditional_det(sf, meas.lambda, meas.theta);
  }
  throw std::logic_error("conditional_det: bad measurement kind");
}

namespace {

void check_physical_invariants(const SymplecticInvariants& inv) {
  // The minimum depends on C only through |C|, so a tuple is acceptable if
  // either sign assignment describes a physical state; nu~_- is nu_- of the
  // C-flipped tuple. Tolerance 1e-6 admits boundary states whose double
  // representation cannot sit closer to nu = 1 (cosh parameters ~1e6 leave
  // ~1e-8 of unavoidable slack).
  constexpr double tol = 1e-6;
  const double nu = std::max(inv.nu_minus, inv.nu_tilde_minus);
  if (!(inv.A >= 1.0 - tol) || !(inv.B >= 1.0 - tol) || !(nu >= 1.0 - tol)) {
    throw std::invalid_argument("emin_closed: invariants describe an unphysical state (A=" +
                                std::to_string(inv.A) + ", B=" + std::to_string(inv.B) +
                                ", nu_-=" + std::to_string(nu) + ")");
  }
}

// Homodyne-boundary stationary value [AB - C^2 + D - sqrt(...)]/(2B). With
// c >= |d| it collapses to E(0, 0) = a(ab - c^2)/b, which evaluates without
// the sqrt(eps) cancellation the invariant expression suffers near
// degenerate spectra.
double emin_homodyne_value(const TwoModeStandardForm& sf) {
  return sf.a * (sf.a * sf.b - sf.c * sf.c) / sf.b;
}

// General-branch stationary value [2C^2 + (B-1)(D-A) + 2|C| sqrt(R)]/(B-1)^2
// with R = C^2 + (B-1)(D-A). Algebraically R = (a - ab^2 + bc^2)(a - ab^2 +
// bd^2) and the numerator is the perfect square (|C| + sqrt(R))^2, which is
// the cancellation-free way to evaluate it (pure states give exactly 1).
double emin_general_value(const TwoModeStandardForm& sf, double C, double B) {
  const double fa = sf.a - sf.a * sf.b * sf.b + sf.b * sf.c * sf.c;
  const double fb = sf.a - sf.a * sf.b * sf.b + sf.b * sf.d * sf.d;
  const double rad = std::max(fa * fb, 0.0);
  const double num_root = (std::abs(C) + std::sqrt(rad)) / (B - 1.0);
  return num_root * num_root;
}

// Stationary lambda of E(lambda, 0); the quadratic's acceptable root. The
// printed formula is indeterminate when its denominator vanishes (for
// instance on pure two-mode squeezed states), in which case a 1-d polish on
// log lambda supplies the measurement parameter instead.
MeasurementSpec general_branch_measurement(const TwoModeStandardForm& sf) {
  const double a = sf.a, b = sf.b;
  const double c2 = sf.c * sf.c, d2 = sf.d * sf.d;
  const double cd = sf.c * std::abs(sf.d);
  const double den = a * b * b * c2 - (a + b * c2) * d2;
  const double scale = std::max({std::abs(a * b * b * c2), std::abs((a + b * c2) * d2), 1.0});
  double lambda2 = -1.0;
  if (std::abs(den) > 1e-12 * scale) {
    const double rad =
        std::max((a - a * b * b + b * c2) * (a - a * b * b + b * d2), 0.0);
    lambda2 = (a * b * (d2 - c2) + cd * std::sqrt(rad)) / den;
  }
  if (!(lambda2 >= 0.0) || !std::isfinite(lambda2)) {
    const double u = golden_section_min(
        [&](double lu) { return conditional_det(sf, std::exp(lu), 0.0); }, std::log(1e-8),
        std::log(1e8), 1e-13);
    lambda2 = std::exp(u);
  }
  // E(1, 0) >= E(lambda_2, 0) with equality iff d = +-c, where heterodyne is
  // the canonical optimal measurement
  const double at_lambda2 = conditional_det(sf, lambda2, 0.0);
  const double at_one = conditional_det(sf, 1.0, 0.0);
  if (std::abs(lambda2 - 1.0) <= 1e-9 ||
      at_one <= at_lambda2 + 1e-9 * std::max(at_lambda2, 1.0)) {
    return MeasurementSpec{MeasurementKind::heterodyne, 1.0, 0.0};
  }
  return MeasurementSpec{MeasurementKind::general, lambda2, 0.0};
}

}  // namespace

EminResult emin_closed(const TwoModeStandardForm& sf) {
  const SymplecticInvariants inv = invariants(sf);
  check_physical_invariants(inv);

  EminResult res;
  const double lhs = (inv.D - inv.A * inv.B) * (inv.D - inv.A * inv.B);
  const double rhs = (1.0 + inv.B) * inv.C * inv.C * (inv.A + inv.D);
  const double homodyne = emin_homodyne_value(sf);

  if (inv.B < 1.0 + 1e-9) {
    // the general branch divides by (B-1)^2; on this family both stationary
    // values coincide and the homodyne expression is the stable one
    res.value = homodyne;
    res.branch = EminCase::homodyne_case;
    res.meas = MeasurementSpec{MeasurementKind::homodyne_x, 0.0, 0.0};
    return res;
  }

  const double general = emin_general_value(sf, inv.C, inv.B);
  // tie slack is relative to the condition terms themselves; a floor would
  // misclassify weakly correlated states whose lhs, rhs are both tiny but
  // decisively ordered
  const double tie_scale = std::max(lhs, rhs);
  const bool near_tie =
      tie_scale == 0.0 || std::abs(lhs - rhs) <= 1e-9 * tie_scale;
  bool pick_general;
  if (near_tie) {
    pick_general = general <= homodyne;  // both are stationary; take the smaller
  } else {
    pick_general = lhs <= rhs;
  }

  if (pick_general) {
    res.value = near_tie ? std::min(general, homodyne) : general;
    res.branch = EminCase::general_case;
    res.meas = general_branch_measurement(sf);
  } else {
    res.value = homodyne;
    res.branch = EminCase::homodyne_case;
    res.meas = MeasurementSpec{MeasurementKind::homodyne_x, 0.0, 0.0};
  }
  return res;
}

EminResult emin_closed(const SymplecticInvariants& inv) {
  return emin_closed(standard_form_from_invariants(inv));
}

EminNumericResult emin_numeric(const TwoModeStandardForm& sf, const EminNumericOptions& opts) {
  EminNumericResult res;
  res.value = std::numeric_limits<double>::infinity();

  const double lu_min = std::log(opts.lambda_min);
  const double lu_max = std::log(opts.lambda_max);
  const double du = (lu_max - lu_min) / (opts.n_lambda - 1);
  const double dth = M_PI / opts.n_theta;

  bool boundary_best = false;
  double best_u = 0.0, best_th = 0.0;
  for (int it = 0; it < opts.n_theta; ++it) {
    const double th = it * dth;
    const double e0 = conditional_det(sf, 0.0, th);  // lambda = 0 boundary row
    ++res.evals;
    if (e0 < res.value) {
      res.value = e0;
      best_th = th;
      boundary_best = true;
    }
    for (int il = 0; il < opts.n_lambda; ++il) {
      const double u = lu_min + il * du;
      const double e = conditional_det(sf, std::exp(u), th);
      ++res.evals;
      if (e < res.value) {
        res.value = e;
        best_u = u;
        best_th = th;
        boundary_best = false;
      }
    }
  }

  if (boundary_best) {
    // golden-section refinement of the boundary slice E(0, theta)
    const double lo = best_th - dth, hi = best_th + dth;
    const double th = golden_section_min([&](double t) { return conditional_det(sf, 0.0, t); },
                                         lo, hi, 1e-13);
    const double e = conditional_det(sf, 0.0, th);
    if (e < res.value) {
      res.value = e;
      best_th = th;
    }
    res.lambda = 0.0;
    res.theta = best_th;
    res.converged = true;
    return res;
  }

  NelderMeadOptions nm;
  nm.ftol = opts.ftol * std::max(res.value, 1.0);
  nm.xtol = 1e-10;
  nm.max_evals = opts.max_evals;
  nm.initial_step = 0.5 * std::max(du, dth);
  const NelderMeadResult polish = nelder_mead(
      [&](const std::vector<double>& x) { return conditional_det(sf, std::exp(x[0]), x[1]); },
      {best_u, best_th}, nm);
  res.evals += polish.evals;
  if (polish.fmin < res.value) {
    res.value = polish.fmin;
    best_u = polish.x[0];
    best_th = polish.x[1];
  }
  res.lambda = std::exp(best_u);
  res.theta = best_th;
  res.converged = polish.converged;

  // the boundary can still undercut a shallow interior point
  const double e_boundary = conditional_det(sf, 0.0, 0.0);
  if (e_boundary < res.value) {
    res.value = e_boundary;
    res.lambda = 0.0;
    res.theta = 0.0;
    res.converged = true;
  }
  return res;
}

TwoModeStandardForm swap_modes(const TwoModeStandardForm& sf) {
  return TwoModeStandardForm{sf.b, sf.a, sf.c, sf.d};
}

namespace {

struct DirectionalPieces {
  double j;
  double d;
  EminResult emin;
};

// f(nu) with impurity below the representation floor treated as exactly
// pure; otherwise the phantom entropy f(1 + O(eps * conditioning)) leaks
// into discord at the 1e-9 level for strongly squeezed states.
double entropy_of_nu(double nu, double floor) {
  return (nu - 1.0 <= floor) ? 0.0 : entropy_f(nu);
}

DirectionalPieces directional(const TwoModeStandardForm& sf, Direction dir) {
  const TwoModeStandardForm use = (dir == Direction::left) ? sf : swap_modes(sf);
  const SymplecticInvariants inv = invariants(use);
  DirectionalPieces out{0.0, 0.0, emin_closed(use)};
  const double f_meas = entropy_f(std::sqrt(std::max(inv.B, 1.0)));
  const double f_kept = entropy_f(std::sqrt(std::max(inv.A, 1.0)));
  const double f_cond = entropy_f(std::sqrt(std::max(out.emin.value, 1.0)));
  const double s_ab = entropy_of_nu(inv.nu_minus, inv.nu_noise_floor) +
                      entropy_of_nu(inv.nu_plus, inv.nu_noise_floor);
  out.j = f_kept - f_cond;
  out.d = f_meas - s_ab + f_cond;
  return out;
}

TwoModeStandardForm checked_standard_form(const CovarianceMatrix& cm, const char* who) {
  // Boundary families (nu_- = 1) at cosh parameters beyond ~1e6 cannot be
  // represented in doubles closer than ~1e-8 to the physical cone, so the
  // entry guard runs at 1e-6; genuinely unphysical inputs sit far below it.
  if (!is_physical(cm, 1e-6)) {
    throw std::invalid_argument(std::string(who) + ": unphysical covariance matrix");
  }
  return standard_form(cm);
}

}  // namespace

double mutual_information(const CovarianceMatrix& cm) {
  const SymplecticInvariants inv =
      invariants(checked_standard_form(cm, "mutual_information"));
  return entropy_f(std::sqrt(std::max(inv.A, 1.0))) + entropy_f(std::sqrt(std::max(inv.B, 1.0))) -
         entropy_of_nu(inv.nu_minus, inv.nu_noise_floor) -
         entropy_of_nu(inv.nu_plus, inv.nu_noise_floor);
}

double classical_correlations(const CovarianceMatrix& cm, Direction dir) {
  return directional(checked_standard_form(cm, "classical_correlations"), dir).j;
}

double discord(const CovarianceMatrix& cm, Direction dir) {
  return directional(checked_standard_form(cm, "discord"), dir).d;
}

bool is_zero_discord(const CovarianceMatrix& cm, double tol) {
  if (cm.modes() != 2) {
    throw std::invalid_argument("is_zero_discord: expected a two-mode CM");
  }
  return cm.block(0, 1).cwiseAbs().maxCoeff() < tol;
}

CorrelationReport full_report(const CovarianceMatrix& cm) {
  const TwoModeStandardForm sf = checked_standard_form(cm, "full_report");
  const DirectionalPieces left = directional(sf, Direction::left);
  const DirectionalPieces right = directional(sf, Direction::right);

  CorrelationReport rep;
  rep.mutual_information = mutual_information(cm);
  rep.j_left = left.j;
  rep.d_left = left.d;
  rep.emin_left = left.emin.value;
  rep.meas_left = left.emin.meas;
  rep.case_left = left.emin.branch;
  rep.j_right = right.j;
  rep.d_right = right.d;
  rep.emin_right = right.emin.value;
  rep.meas_right = right.emin.meas;
  rep.case_right = right.emin.branch;
  return rep;
}

}  // namespace gqc
