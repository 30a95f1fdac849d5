#include "gqc/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

#include "gqc/optimize.hpp"

namespace gqc {

PptResult ppt_test(const CovarianceMatrix& cm) {
  if (!is_physical(cm)) {
    throw std::invalid_argument("ppt_test: unphysical covariance matrix");
  }
  const SymplecticInvariants inv = invariants(cm);
  return PptResult{inv.nu_tilde_minus, inv.nu_tilde_minus < 1.0 - 1e-9};
}

double geof_pure(const CovarianceMatrix& cm) {
  const SymplecticInvariants inv = invariants(cm);
  if (std::abs(inv.D - 1.0) > 1e-8 || inv.nu_minus < 1.0 - 1e-8) {
    throw std::invalid_argument("geof_pure: state is not pure (det sigma = " +
                                std::to_string(inv.D) + ")");
  }
  return entropy_f(std::sqrt(std::max(inv.A, 1.0)));
}

namespace {

using Params = std::array<double, 6>;

Eigen::Matrix4d tms_cm(double r) {
  const double ch = std::cosh(2.0 * r);
  const double sh = std::sinh(2.0 * r);
  Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
  m(0, 0) = m(1, 1) = m(2, 2) = m(3, 3) = ch;
  m(0, 2) = m(2, 0) = sh;
  m(1, 3) = m(3, 1) = -sh;
  return m;
}

Eigen::Matrix4d sigma_prime(double r, const Params& p) {
  const Matrix2 sa = single_mode_symplectic(p[0], std::exp(p[1]), p[2]);
  const Matrix2 sb = single_mode_symplectic(p[3], std::exp(p[4]), p[5]);
  Eigen::Matrix4d loc = Eigen::Matrix4d::Zero();
  loc.block<2, 2>(0, 0) = sa;
  loc.block<2, 2>(2, 2) = sb;
  return loc * tms_cm(r) * loc.transpose();
}

double lambda_min_gap(const Eigen::Matrix4d& sigma, double r, const Params& p) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es;
  es.computeDirect(sigma - sigma_prime(r, p), Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

// Euler parameters (theta1, ln z, theta2) of a 2x2 symplectic, via SVD with
// both factors forced to proper rotations.
std::array<double, 3> euler_params(const Matrix2& s) {
  Eigen::JacobiSVD<Matrix2> svd(s, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Matrix2 u = svd.matrixU();
  Matrix2 v = svd.matrixV();
  Eigen::Vector2d sing = svd.singularValues();
  if (u.determinant() < 0.0) {
    u.col(1) *= -1.0;
    v.col(1) *= -1.0;
  }
  const double th1 = std::atan2(u(0, 1), u(0, 0));
  const Matrix2 vt = v.transpose();
  const double th2 = std::atan2(vt(0, 1), vt(0, 0));
  return {th1, std::log(std::max(sing(0), 1e-300)), th2};
}

// Lower Cholesky factor of a positive-definite 2x2 with unit determinant is
// itself symplectic; used to seed local parameters from marginal blocks.
Matrix2 unit_det_chol(const Matrix2& m) {
  const double det = std::max(m.determinant(), 1e-300);
  return Eigen::LLT<Matrix2>((m / std::sqrt(det)).eval()).matrixL();
}

struct PureDecomposition {
  double r = 0.0;
  Params locals{};
};

// Splits a pure two-mode CM into (S_A (+) S_B) TMS(r) (S_A (+) S_B)^T; the
// phase-space Schmidt form of a pure state.
PureDecomposition decompose_pure(const Eigen::Matrix4d& pure) {
  PureDecomposition out;
  const double det_a = std::max(pure.block<2, 2>(0, 0).determinant(), 1.0);
  const double ch = std::sqrt(det_a);
  out.r = 0.5 * std::acosh(std::max(ch, 1.0));
  const double sh = std::sinh(2.0 * out.r);
  const Matrix2 sa = unit_det_chol(pure.block<2, 2>(0, 0));
  Matrix2 sb;
  if (sh > 1e-8) {
    Matrix2 z;
    z << 1.0, 0.0, 0.0, -1.0;
    sb = pure.block<2, 2>(0, 2).transpose() * sa.inverse().transpose() * z / sh;
  } else {
    sb = unit_det_chol(pure.block<2, 2>(2, 2));
  }
  const std::array<double, 3> ea = euler_params(sa);
  const std::array<double, 3> eb = euler_params(sb);
  out.locals = {ea[0], ea[1], ea[2], eb[0], eb[1], eb[2]};
  return out;
}

struct FeasibilityOutcome {
  bool feasible = false;
  double best = -std::numeric_limits<double>::infinity();
  Params locals{};
};

class FeasibilitySolver {
 public:
  FeasibilitySolver(const Eigen::Matrix4d& sigma, const GeofOptions& opts)
      : sigma_(sigma), opts_(opts), rng_(opts.seed) {
    min_marginal_ = std::min(std::sqrt(sigma.block<2, 2>(0, 0).determinant()),
                             std::sqrt(sigma.block<2, 2>(2, 2).determinant()));
  }

  FeasibilityOutcome solve(double r, const std::vector<Params>& seeds, int random_starts) {
    FeasibilityOutcome out;
    // det alpha' <= det alpha forces cosh 2r <= min marginal determinant root
    if (std::cosh(2.0 * r) > min_marginal_ * (1.0 + 1e-12) + 1e-12) {
      out.best = -1.0;
      return out;
    }
    auto objective = [&](const std::vector<double>& x) {
      Params p;
      std::copy_n(x.begin(), 6, p.begin());
      return -lambda_min_gap(sigma_, r, p);
    };
    auto attempt = [&](const Params& p0, double step) {
      // restart chain with shrinking simplexes; the lambda_min objective has
      // a flat ridge at exactly 0 for nu_- = 1 states and a single run
      // stalls well short of it
      std::vector<double> x(p0.begin(), p0.end());
      for (double s : {step, 0.05, 0.008}) {
        NelderMeadOptions nm;
        nm.ftol = 1e-14;
        nm.xtol = 1e-12;
        nm.max_evals = opts_.nm_max_evals;
        nm.initial_step = s;
        const NelderMeadResult res = nelder_mead(objective, x, nm);
        if (-res.fmin > out.best) {
          out.best = -res.fmin;
          std::copy_n(res.x.begin(), 6, out.locals.begin());
        }
        x = res.x;
        if (out.best >= -opts_.feas_tol) break;
      }
      return out.best >= -opts_.feas_tol;
    };
    for (const Params& s : seeds) {
      if (attempt(s, 0.08)) {
        out.feasible = true;
        return out;
      }
    }
    for (int k = 0; k < random_starts; ++k) {
      Params p0;
      for (int i = 0; i < 6; ++i) {
        const bool squeeze = (i == 1 || i == 4);
        p0[i] = squeeze ? uniform(-1.5, 1.5) : uniform(0.0, 2.0 * M_PI);
      }
      if (attempt(p0, 0.4)) {
        out.feasible = true;
        return out;
      }
    }
    out.feasible = out.best >= -opts_.feas_tol;
    return out;
  }

 private:
  double uniform(double lo, double hi) {
    return lo + (hi - lo) * (static_cast<double>(rng_() >> 11) * 0x1.0p-53);
  }

  Eigen::Matrix4d sigma_;
  GeofOptions opts_;
  std::mt19937_64 rng_;
  double min_marginal_ = 1.0;
};

}  // namespace

GeofResult geof_two_mode_numeric(const CovarianceMatrix& cm, const GeofOptions& opts) {
  if (cm.modes() != 2) {
    throw std::invalid_argument("geof_two_mode_numeric: expected a two-mode CM");
  }
  if (!is_physical(cm)) {
    throw std::invalid_argument("geof_two_mode_numeric: unphysical covariance matrix");
  }
  const Eigen::Matrix4d sigma = cm.matrix();
  FeasibilitySolver solver(sigma, opts);

  // S^-1 S^-T from the Williamson form is a pure CM below sigma: the initial
  // feasible bracket end, and a structured seed everywhere else.
  const WilliamsonDecomposition dec = williamson(cm);
  const Matrix s_inv = dec.S.partialPivLu().solve(Matrix::Identity(4, 4));
  const Eigen::Matrix4d will_pure = s_inv * s_inv.transpose();
  const PureDecomposition will = decompose_pure(will_pure);

  GeofResult result;
  result.method = GeofMethod::numeric_minimizer;

  // marginal-normalized product seed for the r = 0 check
  const std::array<double, 3> pa = euler_params(unit_det_chol(sigma.block<2, 2>(0, 0)));
  const std::array<double, 3> pb = euler_params(unit_det_chol(sigma.block<2, 2>(2, 2)));
  const Params product_seed = {pa[0], pa[1], pa[2], pb[0], pb[1], pb[2]};
  const FeasibilityOutcome at_zero =
      solver.solve(0.0, {product_seed, will.locals}, 2 * opts.starts);
  if (at_zero.feasible) {
    result.value = 0.0;
    result.r_star = 0.0;
    result.locals = at_zero.locals;
    return result;
  }

  double hi = will.r;
  FeasibilityOutcome at_hi = solver.solve(hi, {will.locals}, opts.starts);
  int grow = 0;
  while (!at_hi.feasible && grow++ < 6) {
    // residual rounding can push the Williamson point marginally outside;
    // nudge the bracket upward
    hi = std::max(hi * 1.05, hi + 1e-6);
    at_hi = solver.solve(hi, {will.locals}, opts.starts);
  }
  if (!at_hi.feasible) {
    throw std::runtime_error(
        "geof_two_mode_numeric: no feasible squeezing found near the Williamson bracket [r = " +
        std::to_string(hi) + ", gap " + std::to_string(at_hi.best) + "]");
  }

  double lo = 0.0;
  Params warm = at_hi.locals;
  Params last_probe = at_hi.locals;
  result.bracket_consistent = true;
  for (int it = 0; it < opts.bisect_iters && (hi - lo) > 1e-11; ++it) {
    const double mid = 0.5 * (lo + hi);
    const FeasibilityOutcome probe =
        solver.solve(mid, {warm, last_probe, will.locals}, opts.starts);
    last_probe = probe.locals;
    if (probe.feasible) {
      if (mid > hi) result.bracket_consistent = false;
      hi = mid;
      warm = probe.locals;
    } else {
      lo = mid;
    }
    if (entropy_f(std::cosh(2.0 * hi)) - entropy_f(std::cosh(2.0 * lo)) < 1e-10) break;
  }

  result.value = entropy_f(std::cosh(2.0 * hi));
  result.r_star = hi;
  result.locals = warm;
  return result;
}

GeofResult geof_three_mode_duality(const CovarianceMatrix& cm) {
  if (cm.modes() != 3) {
    throw std::invalid_argument("geof_three_mode_duality: expected a three-mode CM");
  }
  constexpr double spectrum_tol = 1e-6;
  const std::vector<double> nus = symplectic_eigenvalues(cm);  // descending
  for (int i = 1; i < 3; ++i) {
    if (std::abs(nus[i] - 1.0) > spectrum_tol) {
      throw std::invalid_argument(
          "geof_three_mode_duality: symplectic spectrum is not {1, 1, b}; eigenvalue " +
          std::to_string(i) + " is " + std::to_string(nus[i]));
    }
  }

  GeofResult result;
  result.method = GeofMethod::duality;
  const double det_alpha = cm.block(0, 0).determinant();

  if (nus[0] <= 1.0 + spectrum_tol) {
    // pure three-mode input: entanglement across A x (ST) is the marginal entropy
    result.value = entropy_f(std::sqrt(std::max(det_alpha, 1.0)));
    result.sigma_ab = cm.matrix();
    return result;
  }

  const CovarianceMatrix pure = purify(cm, spectrum_tol);
  if (pure.modes() != 4) {
    throw std::runtime_error("geof_three_mode_duality: purification added " +
                             std::to_string(pure.modes() - 3) + " ancillas, expected 1");
  }
  const CovarianceMatrix sigma_ab = partial_trace(pure, {0, 3});
  const EminResult emin = emin_closed(invariants(sigma_ab));

  result.value = entropy_f(std::sqrt(std::max(emin.value, 1.0)));
  result.purification = pure.matrix();
  result.sigma_ab = sigma_ab.matrix();
  result.emin = emin;
  return result;
}

DiscordBounds discord_bounds_given_geof(double e_g) {
  if (!(e_g > 0.0) || !std::isfinite(e_g)) {
    throw std::invalid_argument("discord_bounds_given_geof: E_G must be positive");
  }
  // f(1 + 2/sinh^2 r) is strictly decreasing in r; bracket covers E_G up to ~56 nats
  auto implicit = [](double r) {
    const double sh = std::sinh(r);
    return entropy_f(1.0 + 2.0 / (sh * sh));
  };
  const double u = bisect_root(
      [&](double uu) { return implicit(std::exp(uu)) - e_g; }, std::log(1e-12), std::log(30.0),
      1e-15, 300);
  const double r = std::exp(u);

  DiscordBounds out;
  out.r = r;
  const double ln_coth = 2.0 * std::atanh(std::exp(-2.0 * r));  // stable for all r > 0
  out.lower = 2.0 * ln_coth;
  const double upper_squeezed = (1.0 + std::cosh(2.0 * r)) * ln_coth;  // 2 cosh^2 r ln coth r
  out.upper = std::max(e_g, upper_squeezed);
  return out;
}

}  // namespace gqc
