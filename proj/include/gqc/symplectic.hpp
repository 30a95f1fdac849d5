#pragma once

#include <vector>

#include "gqc/covariance.hpp"

namespace gqc {

/// Entropy of a single normal mode with symplectic eigenvalue x >= 1:
/// f(x) = ((x+1)/2) ln((x+1)/2) - ((x-1)/2) ln((x-1)/2), natural log.
///
/// Evaluated in a log1p form that stays accurate for x up to ~1e300, so
/// differences f(y) - f(x) of large arguments keep full precision. Inputs in
/// [1 - 1e-9, 1] are clamped to 1; smaller inputs raise std::domain_error.
double entropy_f(double x);

/// Symplectic eigenvalues of a positive-definite CM, sorted descending.
/// Computed as the paired singular values of L^T Omega L with sigma = L L^T.
/// Throws std::invalid_argument if the matrix is not positive definite.
std::vector<double> symplectic_eigenvalues(const CovarianceMatrix& cm);

/// Physicality test sigma + i Omega >= 0: positive definite, all symplectic
/// eigenvalues >= 1 - tol, and (for two modes) both marginal determinants
/// >= 1 - tol. Returns false (never throws) on pathological input.
bool is_physical(const CovarianceMatrix& cm, double tol = 1e-9);

/// Standard-form parameters of a two-mode CM: alpha = a I, beta = b I,
/// gamma = diag(c, d), normalized so that c >= |d| >= 0 and sign(d) = sign(C)
/// when C != 0.
struct TwoModeStandardForm {
  double a = 1.0;
  double b = 1.0;
  double c = 0.0;
  double d = 0.0;

  CovarianceMatrix to_cm() const;
};

/// The local-symplectic invariants of a two-mode state: A = det alpha,
/// B = det beta, C = det gamma, D = det sigma, Delta = A + B + 2C, the
/// symplectic eigenvalues nu_-, nu_+ (2 nu^2 = Delta -+ sqrt(Delta^2 - 4D))
/// and the smallest partially transposed eigenvalue nu~_- (C -> -C).
struct SymplecticInvariants {
  double A = 1.0;
  double B = 1.0;
  double C = 0.0;
  double D = 1.0;
  double Delta = 2.0;
  double nu_minus = 1.0;
  double nu_plus = 1.0;
  double nu_tilde_minus = 1.0;
  /// Resolution of the nu values given the conditioning of det(sigma) in the
  /// stored doubles; impurities below this floor are indistinguishable from
  /// rounding (pure states at cosh parameters ~1e3 already leave ~1e-10).
  double nu_noise_floor = 4e-16;
};

SymplecticInvariants invariants(const CovarianceMatrix& cm);
SymplecticInvariants invariants(const TwoModeStandardForm& sf);

/// Reduces a physical two-mode CM to standard form. The roots of
/// t^2 - ((AB + C^2 - D)/sqrt(AB)) t + C^2 give c^2 >= d^2. Throws
/// std::runtime_error if the root discriminant is negative beyond tolerance
/// (numerically inconsistent / unphysical input).
TwoModeStandardForm standard_form(const CovarianceMatrix& cm);

/// Builds the standard form with the same invariants (A, B, C, D).
TwoModeStandardForm standard_form_from_invariants(const SymplecticInvariants& inv);

/// S(sigma) = sum_i f(nu_i). Throws on unphysical input.
double von_neumann_entropy(const CovarianceMatrix& cm);

/// Symplectic congruence to Williamson normal form:
/// S sigma S^T = diag(nu_1, nu_1, ..., nu_n, nu_n), S Omega S^T = Omega,
/// spectrum sorted descending.
struct WilliamsonDecomposition {
  Matrix S;
  std::vector<double> spectrum;
};

/// Decomposition via the canonical form of sigma^{1/2} Omega sigma^{1/2};
/// eigenvector pairs are orthonormalized by the Hermitian eigensolver, which
/// also fixes degenerate subspaces. Residuals are checked against
/// residual_tol and reported in the error message on failure.
WilliamsonDecomposition williamson(const CovarianceMatrix& cm, double residual_tol = 1e-10);

/// Gaussian purification: appends one ancillary mode per normal mode with
/// nu > 1 + purity_tol (two-mode-squeezed coupling in the normal basis) and
/// maps back, so the output is pure and the partial trace over the ancillas
/// recovers the input. Ancillas are appended after the original modes in
/// descending order of the nu they purify.
CovarianceMatrix purify(const CovarianceMatrix& cm, double purity_tol = 1e-9);

}  // namespace gqc
