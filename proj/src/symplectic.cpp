#include "gqc/symplectic.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

namespace gqc {

namespace {

constexpr double kDomainTol = 1e-9;

// Symmetric square root / inverse square root via eigendecomposition.
// Throws when the smallest eigenvalue is not strictly positive.
struct SymmetricRoots {
  Matrix root;
  Matrix inv_root;
  double min_eig;
};

SymmetricRoots symmetric_roots(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(m);
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("symmetric eigendecomposition failed");
  }
  const Vector ev = es.eigenvalues();
  if (ev.minCoeff() <= 0.0) {
    throw std::invalid_argument("matrix is not positive definite (min eigenvalue " +
                                std::to_string(ev.minCoeff()) + ")");
  }
  const Matrix& u = es.eigenvectors();
  Matrix root = u * ev.cwiseSqrt().asDiagonal() * u.transpose();
  Matrix inv_root = u * ev.cwiseSqrt().cwiseInverse().asDiagonal() * u.transpose();
  return {std::move(root), std::move(inv_root), ev.minCoeff()};
}

}  // namespace

double entropy_f(double x) {
  if (x < 1.0 - kDomainTol) {
    throw std::domain_error("entropy_f: argument " + std::to_string(x) + " below 1");
  }
  const double xm = x - 1.0;
  if (xm <= 0.0) return 0.0;
  // f(x) = ((x-1)/2) log1p(2/(x-1)) + log1p((x-1)/2); exact cancellation-free
  // rewrite of the two-term definition, so f(y) - f(x) keeps full precision
  // even for arguments ~ 1e300.
  return 0.5 * xm * std::log1p(2.0 / xm) + std::log1p(0.5 * xm);
}

std::vector<double> symplectic_eigenvalues(const CovarianceMatrix& cm) {
  const int n = cm.modes();
  Eigen::LLT<Matrix> llt(cm.matrix());
  if (llt.info() != Eigen::Success) {
    throw std::invalid_argument("symplectic_eigenvalues: matrix is not positive definite");
  }
  const Matrix l = llt.matrixL();
  const Matrix k = l.transpose() * omega(n) * l;  // antisymmetric, spectrum {+-i nu_j}
  Eigen::JacobiSVD<Matrix> svd(k);
  const Vector sv = svd.singularValues();  // nu_1, nu_1, nu_2, nu_2, ... descending
  std::vector<double> nus(n);
  for (int i = 0; i < n; ++i) nus[i] = 0.5 * (sv(2 * i) + sv(2 * i + 1));
  return nus;
}

bool is_physical(const CovarianceMatrix& cm, double tol) {
  try {
    if (cm.modes() == 2) {
      const Matrix& m = cm.matrix();
      for (int i = 0; i < 4; ++i) {
        if (!(m(i, i) > 0.0)) return false;
      }
      const SymplecticInvariants inv = invariants(cm);
      if (!(inv.A >= 1.0 - tol) || !(inv.B >= 1.0 - tol) || !(inv.nu_minus >= 1.0 - tol)) {
        return false;
      }
      // marginal and nu conditions admit indefinite matrices (e.g. strong
      // x-x and p-p correlations of equal sign); reject by the spectrum,
      // scale-aware so legitimate strongly squeezed states survive rounding
      Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
      return es.eigenvalues().minCoeff() >= -tol * (1.0 + m.cwiseAbs().maxCoeff());
    }
    const std::vector<double> nus = symplectic_eigenvalues(cm);
    return nus.back() >= 1.0 - tol;
  } catch (const std::exception&) {
    return false;
  }
}

CovarianceMatrix TwoModeStandardForm::to_cm() const {
  Matrix m = Matrix::Zero(4, 4);
  m.block<2, 2>(0, 0) = a * Matrix2::Identity();
  m.block<2, 2>(2, 2) = b * Matrix2::Identity();
  Matrix2 gamma;
  gamma << c, 0.0, 0.0, d;
  m.block<2, 2>(0, 2) = gamma;
  m.block<2, 2>(2, 0) = gamma;
  return CovarianceMatrix(std::move(m));
}

namespace {

// error-free transformations: head + exact residual
void two_sum(double a, double b, double& s, double& e) {
  s = a + b;
  const double z = s - a;
  e = (a - (s - z)) + (b - z);
}

void two_prod(double a, double b, double& p, double& e) {
  p = a * b;
  e = std::fma(a, b, -p);
}

// Fills nu_-, nu_+, nu~_- from Delta, Delta~ and the two spectral
// discriminants, using conjugate forms so small eigenvalues keep precision.
void fill_spectrum(SymplecticInvariants& inv, double D, double disc, double delta_t,
                   double disct) {
  const double root = std::sqrt(std::max(disc, 0.0));
  inv.nu_plus = std::sqrt(std::max(0.5 * (inv.Delta + root), 0.0));
  inv.nu_minus = (inv.Delta + root > 0.0)
                     ? std::sqrt(std::max(2.0 * D / (inv.Delta + root), 0.0))
                     : 0.0;
  const double roott = std::sqrt(std::max(disct, 0.0));
  inv.nu_tilde_minus =
      (delta_t + roott > 0.0) ? std::sqrt(std::max(2.0 * D / (delta_t + roott), 0.0)) : 0.0;
}

// Invariants straight from standard-form parameters. Boundary families
// (nu_- = 1 with huge entries, pure states with strong squeezing) demand
// compensated products and sums here: the naive Delta^2 - 4D loses sqrt(eps),
// which already breaks the 1e-9 physicality tolerance at cosh ~ 1e6.
SymplecticInvariants invariants_from_sf(const TwoModeStandardForm& sf) {
  SymplecticInvariants inv;
  double A, rA, B, rB, C, rC, ab, r_ab, cc, r_cc, dd, r_dd;
  two_prod(sf.a, sf.a, A, rA);
  two_prod(sf.b, sf.b, B, rB);
  two_prod(sf.c, sf.d, C, rC);
  two_prod(sf.a, sf.b, ab, r_ab);
  two_prod(sf.c, sf.c, cc, r_cc);
  two_prod(sf.d, sf.d, dd, r_dd);
  inv.A = A;
  inv.B = B;
  inv.C = C;

  // D = (ab - c^2)(ab - d^2); the factors cancel near the physicality
  // boundary, so assemble them from the exact product splits
  const double u = (ab - cc) + (r_ab - r_cc);
  const double v = (ab - dd) + (r_ab - r_dd);
  inv.D = u * v;

  double s1, e1, s2, e2;
  two_sum(A, B, s1, e1);
  two_sum(s1, 2.0 * C, s2, e2);
  inv.Delta = s2 + (e1 + e2 + rA + rB + 2.0 * rC);
  two_sum(s1, -2.0 * C, s2, e2);
  const double delta_t = s2 + (e1 + e2 + rA + rB - 2.0 * rC);

  // Delta^2 - 4D = (A - B)^2 + 4 (ac + bd)(ad + bc); the partial-transpose
  // variant flips the sign of d
  const double amb = (A - B) + (rA - rB);
  const double t1 = sf.a * sf.c + sf.b * sf.d;
  const double t2 = sf.a * sf.d + sf.b * sf.c;
  const double disc = amb * amb + 4.0 * t1 * t2;
  const double t1t = sf.a * sf.c - sf.b * sf.d;
  const double t2t = sf.b * sf.c - sf.a * sf.d;
  const double disct = amb * amb + 4.0 * t1t * t2t;

  fill_spectrum(inv, inv.D, disc, delta_t, disct);

  // relative error of D is amplified by ab/|ab - c^2| and ab/|ab - d^2|
  constexpr double eps = 2.22e-16;
  const double floor_u = std::abs(ab) / std::max(std::abs(u), eps * std::abs(ab));
  const double floor_v = std::abs(ab) / std::max(std::abs(v), eps * std::abs(ab));
  inv.nu_noise_floor = 8.0 * eps * std::max(1.0, std::max(floor_u, floor_v));
  return inv;
}

SymplecticInvariants invariants_from_dets(double A, double B, double C, double D) {
  SymplecticInvariants inv;
  inv.A = A;
  inv.B = B;
  inv.C = C;
  inv.D = D;
  inv.Delta = A + B + 2.0 * C;
  const double delta_t = A + B - 2.0 * C;
  fill_spectrum(inv, D, inv.Delta * inv.Delta - 4.0 * D, delta_t,
                delta_t * delta_t - 4.0 * D);
  return inv;
}

// Constructive local-symplectic reduction: normalize each marginal to
// sqrt(det) I via its unit-determinant Cholesky factor, then rotate the cross
// block diagonal with an SVD. Computes (a, b, c, d) at full relative
// precision where the invariant-root route loses half the digits.
TwoModeStandardForm standard_form_constructive(const CovarianceMatrix& cm) {
  const Matrix2 alpha = cm.block(0, 0);
  const Matrix2 beta = cm.block(1, 1);
  const Matrix2 gamma = cm.block(0, 1);
  const double det_a = alpha.determinant();
  const double det_b = beta.determinant();
  if (!(det_a > 0.0) || !(det_b > 0.0) || !(alpha(0, 0) > 0.0) || !(beta(0, 0) > 0.0)) {
    throw std::runtime_error("standard_form: marginal blocks are not positive definite");
  }

  // exact passthrough for inputs already in standard form; boundary families
  // (nu_- = 1 at large cosh) are that sensitive to independent rounding of
  // c and d, and the factories produce exactly this shape
  if (alpha(0, 1) == 0.0 && alpha(0, 0) == alpha(1, 1) && beta(0, 1) == 0.0 &&
      beta(0, 0) == beta(1, 1) && gamma(0, 1) == 0.0 && gamma(1, 0) == 0.0) {
    const double g0 = gamma(0, 0);
    const double g1 = gamma(1, 1);
    TwoModeStandardForm sf;
    sf.a = alpha(0, 0);
    sf.b = beta(0, 0);
    sf.c = std::max(std::abs(g0), std::abs(g1));
    const double mag = std::min(std::abs(g0), std::abs(g1));
    sf.d = (g0 * g1 < 0.0) ? -mag : mag;
    return sf;
  }

  TwoModeStandardForm sf;
  sf.a = std::sqrt(det_a);
  sf.b = std::sqrt(det_b);
  const Matrix2 la = Eigen::LLT<Matrix2>((alpha / sf.a).eval()).matrixL();
  const Matrix2 lb = Eigen::LLT<Matrix2>((beta / sf.b).eval()).matrixL();
  const Matrix2 cross = la.inverse() * gamma * lb.transpose().inverse();
  Eigen::JacobiSVD<Matrix2> svd(cross);
  sf.c = svd.singularValues()(0);
  const double det_cross = cross.determinant();
  sf.d = (det_cross < 0.0 ? -1.0 : 1.0) * svd.singularValues()(1);
  return sf;
}

}  // namespace

SymplecticInvariants invariants(const CovarianceMatrix& cm) {
  if (cm.modes() != 2) {
    throw std::invalid_argument("invariants: expected a two-mode CM, got " +
                                std::to_string(cm.modes()) + " modes");
  }
  try {
    return invariants_from_sf(standard_form_constructive(cm));
  } catch (const std::exception&) {
    // far-from-physical input (the reduction needs positive marginals);
    // fall back to plain determinants so physicality queries stay total
    const Matrix2 alpha = cm.block(0, 0);
    const Matrix2 beta = cm.block(1, 1);
    const Matrix2 gamma = cm.block(0, 1);
    return invariants_from_dets(alpha.determinant(), beta.determinant(), gamma.determinant(),
                                cm.matrix().determinant());
  }
}

SymplecticInvariants invariants(const TwoModeStandardForm& sf) {
  return invariants_from_sf(sf);
}

TwoModeStandardForm standard_form_from_invariants(const SymplecticInvariants& inv) {
  TwoModeStandardForm sf;
  sf.a = std::sqrt(inv.A);
  sf.b = std::sqrt(inv.B);
  // c^2, d^2 are the roots of t^2 - s t + C^2 with s = (AB + C^2 - D)/sqrt(AB)
  const double s = (inv.A * inv.B + inv.C * inv.C - inv.D) / std::sqrt(inv.A * inv.B);
  double disc = s * s - 4.0 * inv.C * inv.C;
  const double scale = std::max({s * s, 4.0 * inv.C * inv.C, 1.0});
  if (disc < -1e-9 * scale) {
    throw std::runtime_error("standard_form: complex root discriminant " + std::to_string(disc) +
                             "; input is not a physical two-mode CM");
  }
  disc = std::max(disc, 0.0);
  const double c2 = 0.5 * (s + std::sqrt(disc));
  const double d2 = (c2 > 0.0) ? (inv.C * inv.C) / c2 : 0.0;  // product of roots = C^2
  sf.c = std::sqrt(std::max(c2, 0.0));
  const double mag_d = std::sqrt(std::max(d2, 0.0));
  sf.d = (inv.C < 0.0) ? -mag_d : mag_d;
  return sf;
}

TwoModeStandardForm standard_form(const CovarianceMatrix& cm) {
  if (cm.modes() != 2) {
    throw std::invalid_argument("standard_form: expected a two-mode CM");
  }
  return standard_form_constructive(cm);
}

double von_neumann_entropy(const CovarianceMatrix& cm) {
  if (!is_physical(cm)) {
    throw std::invalid_argument("von_neumann_entropy: unphysical covariance matrix");
  }
  double s = 0.0;
  for (double nu : symplectic_eigenvalues(cm)) s += entropy_f(std::max(nu, 1.0));
  return s;
}

WilliamsonDecomposition williamson(const CovarianceMatrix& cm, double residual_tol) {
  const int n = cm.modes();
  const SymmetricRoots roots = symmetric_roots(cm.matrix());
  const Matrix w = roots.root * omega(n) * roots.root;  // antisymmetric

  // iW is Hermitian with eigenvalues +-nu_j; the Hermitian solver keeps the
  // eigenbasis orthonormal, which fixes degenerate nu blocks as well.
  Eigen::MatrixXcd h = std::complex<double>(0.0, 1.0) * w.cast<std::complex<double>>();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("williamson: Hermitian eigendecomposition failed");
  }

  // Positive half of the spectrum, descending. Columns (sqrt2 Re u, sqrt2 Im u)
  // of each eigenvector u form an orthogonal pair spanning the nu block.
  WilliamsonDecomposition dec;
  Matrix q(2 * n, 2 * n);
  Matrix d_half = Matrix::Zero(2 * n, 2 * n);
  dec.spectrum.resize(n);
  for (int j = 0; j < n; ++j) {
    const int src = 2 * n - 1 - j;  // eigenvalues are ascending
    const double nu = es.eigenvalues()(src);
    const Eigen::VectorXcd u = es.eigenvectors().col(src);
    Vector x = std::sqrt(2.0) * u.real();
    Vector y = std::sqrt(2.0) * u.imag();
    if (x.dot(w * y) < 0.0) y = -y;  // orient block to [[0, nu], [-nu, 0]]
    q.col(2 * j) = x;
    q.col(2 * j + 1) = y;
    dec.spectrum[j] = nu;
    d_half(2 * j, 2 * j) = d_half(2 * j + 1, 2 * j + 1) = std::sqrt(nu);
  }
  dec.S = d_half * q.transpose() * roots.inv_root;

  const Matrix ws = dec.S * omega(n) * dec.S.transpose();
  const double r_omega = (ws - omega(n)).cwiseAbs().maxCoeff();
  Matrix normal = dec.S * cm.matrix() * dec.S.transpose();
  for (int i = 0; i < 2 * n; ++i) normal(i, i) = 0.0;
  const double r_diag = normal.cwiseAbs().maxCoeff();
  if (r_omega > residual_tol || r_diag > residual_tol) {
    throw std::runtime_error("williamson: residuals exceed tolerance (omega " +
                             std::to_string(r_omega) + ", off-diagonal " + std::to_string(r_diag) +
                             ")");
  }
  return dec;
}

CovarianceMatrix purify(const CovarianceMatrix& cm, double purity_tol) {
  const int n = cm.modes();
  const WilliamsonDecomposition dec = williamson(cm);

  std::vector<int> mixed;
  for (int i = 0; i < n; ++i) {
    if (dec.spectrum[i] > 1.0 + purity_tol) mixed.push_back(i);
  }
  if (mixed.empty()) return cm;

  const int k = static_cast<int>(mixed.size());
  const int total = n + k;
  Matrix big = Matrix::Zero(2 * total, 2 * total);
  for (int i = 0; i < n; ++i) {
    big(2 * i, 2 * i) = big(2 * i + 1, 2 * i + 1) = dec.spectrum[i];
  }
  Matrix2 z;
  z << 1.0, 0.0, 0.0, -1.0;
  // each mixed normal mode pairs with one ancilla through the two-mode
  // squeezed coupling sqrt(nu^2 - 1) Z, which purifies it
  for (int j = 0; j < k; ++j) {
    const int i = mixed[j];
    const double nu = dec.spectrum[i];
    const double coupling = std::sqrt(std::max(nu * nu - 1.0, 0.0));
    const int anc = n + j;
    big(2 * anc, 2 * anc) = big(2 * anc + 1, 2 * anc + 1) = nu;
    big.block<2, 2>(2 * i, 2 * anc) = coupling * z;
    big.block<2, 2>(2 * anc, 2 * i) = coupling * z;
  }

  Matrix back = Matrix::Identity(2 * total, 2 * total);
  back.topLeftCorner(2 * n, 2 * n) =
      dec.S.partialPivLu().solve(Matrix::Identity(2 * n, 2 * n));
  return CovarianceMatrix(back * big * back.transpose(), 1e-9);
}

}  // namespace gqc
