#pragma once

#include <cstdint>
#include <optional>

#include "gqc/discord.hpp"
#include "gqc/symplectic.hpp"

namespace gqc {

struct PptResult {
  double nu_tilde_minus = 1.0;
  bool entangled = false;  // nu~_- < 1 - 1e-9
};

/// PPT criterion, necessary and sufficient for two-mode Gaussian states.
PptResult ppt_test(const CovarianceMatrix& cm);

/// Entropy of entanglement f(sqrt(A)) of a pure two-mode state. Throws if
/// det(sigma) deviates from 1 by more than 1e-8 (mixed input).
double geof_pure(const CovarianceMatrix& cm);

enum class GeofMethod { pure_closed_form, numeric_minimizer, duality };

struct GeofResult {
  double value = 0.0;
  GeofMethod method = GeofMethod::numeric_minimizer;

  // numeric_minimizer witness: optimal pure CM parameters
  double r_star = 0.0;                     // two-mode squeezing of sigma'
  std::array<double, 6> locals{};          // Euler params (th1, ln z, th2) for S_A, S_B
  bool bracket_consistent = true;          // bisection bracket never inverted

  // duality witness: the purification and the intermediate two-mode state
  std::optional<Matrix> purification;
  std::optional<Matrix> sigma_ab;
  std::optional<EminResult> emin;
};

struct GeofOptions {
  int starts = 8;               // random multistarts per feasibility solve
  double feas_tol = 1e-9;       // feasible iff max lambda_min(sigma - sigma') >= -feas_tol
  int bisect_iters = 45;
  int nm_max_evals = 1200;
  std::uint64_t seed = 0x5eed5eedULL;
};

/// Gaussian EoF of a two-mode state: inf f(sqrt(det alpha')) over pure
/// sigma' <= sigma. With sigma' = (S_A (+) S_B) sigma_TMS(r) (S_A (+) S_B)^T
/// we have det alpha' = cosh^2(2r) regardless of the locals, so the value is
/// f(cosh 2r*) with r* the smallest feasible squeezing. Feasibility at fixed
/// r is decided by multi-start simplex maximization of
/// lambda_min(sigma - sigma') over the six local parameters, warm-started
/// along the bisection; the initial feasible point is the Williamson pure
/// state S^-1 S^-T <= sigma.
GeofResult geof_two_mode_numeric(const CovarianceMatrix& cm, const GeofOptions& opts = {});

/// Gaussian EoF across A x (rest) of a three-mode state with symplectic
/// spectrum {1, 1, b}: purify with a single ancilla, reduce to (A, ancilla)
/// and evaluate f(sqrt(Emin)) from the closed form. Throws, naming the
/// offending eigenvalue, if the spectrum precondition fails beyond 1e-6.
GeofResult geof_three_mode_duality(const CovarianceMatrix& cm);

struct DiscordBounds {
  double lower = 0.0;  // 2 ln coth r
  double upper = 0.0;  // max(E_G, 2 cosh^2 r ln coth r)
  double r = 0.0;      // solves f(1 + 2/sinh^2 r) = E_G
};

/// Discord bounds at fixed Gaussian EoF. The two upper-bound expressions
/// cross at E_G = 2 ln 2; for E_G >> 0 the pair approaches (E_G - 1, E_G).
/// Throws for E_G <= 0.
DiscordBounds discord_bounds_given_geof(double e_g);

}  // namespace gqc
