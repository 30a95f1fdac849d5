#pragma once

#include <Eigen/Dense>

#include <span>
#include <vector>

namespace gqc {

using Matrix = Eigen::MatrixXd;
using Matrix2 = Eigen::Matrix2d;
using Vector = Eigen::VectorXd;

/// Covariance matrix of an n-mode Gaussian state in the vacuum-normalized,
/// zero-mean convention: phase-space ordering (x1, p1, ..., xn, pn) and the
/// vacuum CM equal to the identity. Entries are dimensionless.
///
/// Construction checks structure only (square, even dimension, symmetric to
/// 1e-12) and symmetrizes exactly; physicality is a separate query since
/// several routines build candidate matrices that may fail it.
class CovarianceMatrix {
 public:
  explicit CovarianceMatrix(Matrix entries, double symmetry_tol = 1e-12);

  static CovarianceMatrix vacuum(int n_modes);

  int modes() const { return static_cast<int>(mat_.rows()) / 2; }
  const Matrix& matrix() const { return mat_; }

  /// 2x2 block coupling modes i and j (i == j gives the marginal block).
  Matrix2 block(int i, int j) const;

 private:
  Matrix mat_;
};

/// Symplectic form for n modes: direct sum of [[0, 1], [-1, 0]].
Matrix omega(int n_modes);

/// ||S Omega S^T - Omega||_inf <= tol.
bool is_symplectic(const Matrix& s, double tol = 1e-10);

/// Congruence sigma -> S sigma S^T. Rejects non-symplectic S.
CovarianceMatrix apply_symplectic(const CovarianceMatrix& cm, const Matrix& s);

/// Beam-splitter symplectic of transmittivity t in [0, 1] acting on modes
/// (i, j) of an n-mode system; block form [[sqrt(t) I, sqrt(1-t) I],
/// [sqrt(1-t) I, -sqrt(t) I]] on the (i, j) quadratures.
Matrix beam_splitter(double t, int mode_i, int mode_j, int n_modes);

/// sigma_a (+) sigma_b on the concatenated mode list.
CovarianceMatrix direct_sum(const CovarianceMatrix& a, const CovarianceMatrix& b);

/// Principal submatrix on the kept modes (given order). Physicality is
/// preserved. Throws on out-of-range or repeated indices.
CovarianceMatrix partial_trace(const CovarianceMatrix& cm, std::span<const int> keep_modes);
CovarianceMatrix partial_trace(const CovarianceMatrix& cm, std::initializer_list<int> keep_modes);

/// Single-mode symplectic in Euler form R(theta1) diag(z, 1/z) R(theta2), z > 0.
Matrix2 single_mode_symplectic(double theta1, double z, double theta2);

/// Embeds a 2x2 single-mode symplectic at mode i of an n-mode identity.
Matrix embed_single_mode(const Matrix2& s, int mode, int n_modes);

/// 2x2 rotation R(theta) = [[cos, sin], [-sin, cos]].
Matrix2 rotation2(double theta);

}  // namespace gqc
