#pragma once

#include <string>

#include "gqc/symplectic.hpp"

namespace gqc {

/// Pure single-mode Gaussian measurement seed sigma_0 = R(theta)
/// diag(lambda, 1/lambda) R^T(theta). Homodyne detections are the
/// lambda -> 0 (or equivalently lambda -> inf) limits and carry no finite
/// lambda; they are tagged by kind and lambda is left at 0.
enum class MeasurementKind { heterodyne, homodyne_x, homodyne_p, general };

struct MeasurementSpec {
  MeasurementKind kind = MeasurementKind::heterodyne;
  double lambda = 1.0;  // meaningful for heterodyne (1) and general (> 0)
  double theta = 0.0;   // in [0, pi)

  /// Finite-lambda seed CM; throws for homodyne kinds.
  Matrix2 sigma0() const;
};

const char* to_string(MeasurementKind kind);

/// Determinant of the conditional CM eps = alpha - gamma (beta + sigma_0)^-1
/// gamma^T after the Gaussian measurement (lambda, theta) on mode B, written
/// as the rational function of the standard-form parameters. Continuous at
/// lambda = 0, which evaluates the homodyne limit E(0, theta).
double conditional_det(const TwoModeStandardForm& sf, double lambda, double theta);

/// Same determinant computed matricially (explicit 2x2 inversion). Requires
/// lambda > 0. Kept as an independent code path; tests pin the two routes
/// together to 1e-12 relative.
double conditional_det_matrix(const TwoModeStandardForm& sf, double lambda, double theta);

/// Dispatch on the measurement kind (homodyne kinds use the limit form).
double conditional_det(const TwoModeStandardForm& sf, const MeasurementSpec& meas);

/// Which stationary branch of the closed-form minimum fired: the general
/// branch (finite optimal squeezing, heterodyne when lambda* = 1) or the
/// homodyne boundary branch.
enum class EminCase { general_case, homodyne_case };

struct EminResult {
  double value = 1.0;
  EminCase branch = EminCase::general_case;
  MeasurementSpec meas;
};

/// Closed-form inf over pure Gaussian measurements of det(eps):
///
///   general branch, when (D - AB)^2 <= (1 + B) C^2 (A + D):
///     [2C^2 + (B-1)(D-A) + 2|C| sqrt(C^2 + (B-1)(D-A))] / (B-1)^2
///   homodyne branch, otherwise:
///     [AB - C^2 + D - sqrt(C^4 + (AB - D)^2 - 2C^2(AB + D))] / (2B)
///
/// Depends on C only through |C|. Near the branch boundary (relative slack
/// 1e-9) both expressions are evaluated and the smaller returned; for
/// B < 1 + 1e-9 the homodyne expression is used since the general branch
/// divides by (B - 1)^2. The returned MeasurementSpec reproduces the value
/// through conditional_det; its lambda comes from the stationary-point
/// formula, replaced by a 1-d polish when that formula is indeterminate.
EminResult emin_closed(const SymplecticInvariants& inv);
EminResult emin_closed(const TwoModeStandardForm& sf);

struct EminNumericOptions {
  int n_lambda = 256;        // log-spaced grid on [lambda_min, lambda_max]
  int n_theta = 128;         // uniform grid on [0, pi)
  double lambda_min = 1e-6;
  double lambda_max = 1e6;
  double ftol = 1e-12;
  int max_evals = 4000;
};

struct EminNumericResult {
  double value = 1.0;
  double lambda = 1.0;  // 0 when the minimum sits on the homodyne boundary
  double theta = 0.0;
  bool converged = false;
  int evals = 0;
};

/// Independent numeric oracle for emin_closed: exhaustive grid over
/// (log lambda, theta) plus the exact lambda = 0 boundary row, refined by
/// simplex polish (interior) and golden-section polish (boundary).
EminNumericResult emin_numeric(const TwoModeStandardForm& sf, const EminNumericOptions& opts = {});

/// Measurement direction: left measures mode B, right measures mode A.
enum class Direction { left, right };

/// I(sigma_AB) = S(sigma_A) + S(sigma_B) - S(sigma_AB), in nats.
double mutual_information(const CovarianceMatrix& cm);

/// One-way classical correlations J = f(sqrt(A)) - f(sqrt(Emin)) for the
/// given direction (invariants swapped for Direction::right).
double classical_correlations(const CovarianceMatrix& cm, Direction dir);

/// Gaussian quantum discord D = f(sqrt(B)) - f(nu_-) - f(nu_+) + f(sqrt(Emin)).
double discord(const CovarianceMatrix& cm, Direction dir);

/// True iff the off-diagonal block gamma vanishes within tol; product states
/// are the only zero-discord two-mode Gaussian states.
bool is_zero_discord(const CovarianceMatrix& cm, double tol = 1e-9);

/// Everything at once; I = J + D holds per direction to rounding.
struct CorrelationReport {
  double mutual_information = 0.0;
  double j_left = 0.0;
  double j_right = 0.0;
  double d_left = 0.0;
  double d_right = 0.0;
  double emin_left = 1.0;
  double emin_right = 1.0;
  MeasurementSpec meas_left;
  MeasurementSpec meas_right;
  EminCase case_left = EminCase::general_case;
  EminCase case_right = EminCase::general_case;
};

CorrelationReport full_report(const CovarianceMatrix& cm);

/// Swaps the roles of the two modes: (a, b, c, d) -> (b, a, c, d).
TwoModeStandardForm swap_modes(const TwoModeStandardForm& sf);

}  // namespace gqc
