#include "gqc/families.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "gqc/discord.hpp"

namespace gqc {

namespace {

// CM of a two-mode squeezed vacuum indexed by its cosh parameter a >= 1.
CovarianceMatrix epr_from_cosh(double a) {
  const double k = std::sqrt(std::max(a * a - 1.0, 0.0));
  return TwoModeStandardForm{a, a, k, -k}.to_cm();
}

}  // namespace

CovarianceMatrix two_mode_squeezed(double s) {
  if (s < 0.0) throw std::invalid_argument("two_mode_squeezed: squeezing must satisfy s >= 0");
  const double c = std::sinh(2.0 * s);
  return TwoModeStandardForm{std::cosh(2.0 * s), std::cosh(2.0 * s), c, -c}.to_cm();
}

CovarianceMatrix squeezed_thermal(double r, double s) {
  if (r < 0.0 || s < 0.0) {
    throw std::invalid_argument("squeezed_thermal: parameters must satisfy r, s >= 0");
  }
  const double ch = std::cosh(r);
  const double sh = std::sinh(r);
  const double a = std::cosh(2.0 * s);
  const double b = ch * ch * std::cosh(2.0 * s) + sh * sh;
  const double c = ch * std::sinh(2.0 * s);
  return TwoModeStandardForm{a, b, c, -c}.to_cm();
}

CovarianceMatrix family_eq5(double a, double b) {
  if (!(a >= 1.0)) throw std::invalid_argument("family_eq5: requires a >= 1");
  if (!(b >= 1.0 && b <= 2.0 * a - 1.0)) {
    throw std::invalid_argument("family_eq5: requires 1 <= b <= 2a - 1, got b = " +
                                std::to_string(b) + " with 2a - 1 = " + std::to_string(2 * a - 1));
  }
  SymplecticInvariants inv;
  inv.A = a * a;
  inv.B = b * b;
  inv.C = (1.0 - inv.B) / 2.0;
  inv.D = a * a;
  return standard_form_from_invariants(inv).to_cm();
}

CovarianceMatrix separable_extremal(double a, double b) {
  if (!(a >= 1.0) || !(b >= 1.0)) {
    throw std::invalid_argument("separable_extremal: requires a >= 1 and b >= 1");
  }
  // boundary-of-separability squeezed thermal state with d = c and
  // C = 1 + ab - a - b, the maximal gamma determinant at these marginals
  const double c = std::sqrt((a - 1.0) * (b - 1.0));
  return TwoModeStandardForm{a, b, c, c}.to_cm();
}

CovarianceMatrix product_thermal(double n1, double n2) {
  if (!(n1 >= 1.0) || !(n2 >= 1.0)) {
    throw std::invalid_argument("product_thermal: thermal parameters must be >= 1");
  }
  Matrix m = Matrix::Identity(4, 4);
  m(0, 0) = m(1, 1) = n1;
  m(2, 2) = m(3, 3) = n2;
  return CovarianceMatrix(std::move(m));
}

ScenarioResult eavesdrop_scenario(double s, double n, double t) {
  if (!(s >= 1.0) || !(n >= 1.0)) {
    throw std::invalid_argument("eavesdrop_scenario: requires s >= 1 and n >= 1");
  }
  if (!(t >= 0.0 && t <= 1.0)) {
    throw std::invalid_argument("eavesdrop_scenario: requires t in [0, 1]");
  }

  // mode order (A, B, S, T); Eve's probe A meets Sally's S on the splitter
  const CovarianceMatrix input = direct_sum(epr_from_cosh(n), epr_from_cosh(s));
  const Matrix bs = beam_splitter(t, 0, 2, 4);
  const CovarianceMatrix post = apply_symplectic(input, bs);

  ScenarioResult out;
  out.s = s;
  out.n = n;
  out.t = t;
  out.sigma_abst = post.matrix();
  const CovarianceMatrix ast = partial_trace(post, {0, 2, 3});
  const CovarianceMatrix ab = partial_trace(post, {0, 1});
  out.sigma_ast = ast.matrix();
  out.sigma_ab = ab.matrix();
  out.geof_a_st = geof_three_mode_duality(ast).value;
  out.discord_ab_left = discord(ab, Direction::left);
  return out;
}

}  // namespace gqc
