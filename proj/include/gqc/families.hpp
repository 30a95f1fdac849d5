#pragma once

#include "gqc/covariance.hpp"
#include "gqc/entanglement.hpp"

namespace gqc {

/// Two-mode squeezed vacuum with squeezing s >= 0:
/// a = b = cosh(2s), c = -d = sinh(2s).
CovarianceMatrix two_mode_squeezed(double s);

/// Squeezed thermal family (r >= 0, s >= 0): a = cosh(2s),
/// b = cosh^2(r) cosh(2s) + sinh^2(r), c = -d = cosh(r) sinh(2s);
/// r = 0 reduces to the two-mode squeezed vacuum.
CovarianceMatrix squeezed_thermal(double r, double s);

/// Partial-minimum-uncertainty family A = D = a^2, C = (1 - B)/2, B = b^2,
/// requiring 1 <= b <= 2a - 1; one normal mode is the vacuum (nu_- = 1).
CovarianceMatrix family_eq5(double a, double b);

/// Separable states of maximal discord at fixed marginals a, b >= 1:
/// squeezed thermal with c = d and invariant C = 1 + ab - a - b, i.e.
/// c = d = sqrt((a-1)(b-1)).
CovarianceMatrix separable_extremal(double a, double b);

/// diag(n1, n1) (+) diag(n2, n2), n1, n2 >= 1.
CovarianceMatrix product_thermal(double n1, double n2);

/// Four-mode eavesdropping scenario: Eve holds a two-mode squeezed pair
/// (A, B) with cosh parameter n, Sally and Tom share one with cosh
/// parameter s, and Eve's probe A interferes with S on a beam splitter of
/// transmittivity t. Mode order (A, B, S, T).
struct ScenarioResult {
  Matrix sigma_abst;       // 4-mode post-attack CM (pure)
  Matrix sigma_ast;        // reduction to (A, S, T); spectrum {1, 1, n}
  Matrix sigma_ab;         // Eve's pair after the attack
  double geof_a_st = 0.0;  // Gaussian EoF across A x (ST), via duality
  double discord_ab_left = 0.0;
  double s = 1.0;
  double n = 1.0;
  double t = 1.0;
};

ScenarioResult eavesdrop_scenario(double s, double n, double t);

}  // namespace gqc
