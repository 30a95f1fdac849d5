#include "gqc/covariance.hpp"

#include <cmath>
#include <set>
#include <stdexcept>
#include <string>

namespace gqc {

CovarianceMatrix::CovarianceMatrix(Matrix entries, double symmetry_tol) : mat_(std::move(entries)) {
  if (mat_.rows() != mat_.cols() || mat_.rows() < 2 || mat_.rows() % 2 != 0) {
    throw std::invalid_argument("CovarianceMatrix: need a square 2n x 2n matrix, got " +
                                std::to_string(mat_.rows()) + " x " + std::to_string(mat_.cols()));
  }
  const double asym = (mat_ - mat_.transpose()).cwiseAbs().maxCoeff();
  if (asym > symmetry_tol) {
    throw std::invalid_argument("CovarianceMatrix: asymmetry " + std::to_string(asym) +
                                " exceeds tolerance");
  }
  mat_ = ((mat_ + mat_.transpose()) / 2.0).eval();
}

CovarianceMatrix CovarianceMatrix::vacuum(int n_modes) {
  return CovarianceMatrix(Matrix::Identity(2 * n_modes, 2 * n_modes));
}

Matrix2 CovarianceMatrix::block(int i, int j) const {
  const int n = modes();
  if (i < 0 || i >= n || j < 0 || j >= n) {
    throw std::out_of_range("CovarianceMatrix::block: mode index out of range");
  }
  return mat_.block<2, 2>(2 * i, 2 * j);
}

Matrix omega(int n_modes) {
  Matrix w = Matrix::Zero(2 * n_modes, 2 * n_modes);
  for (int i = 0; i < n_modes; ++i) {
    w(2 * i, 2 * i + 1) = 1.0;
    w(2 * i + 1, 2 * i) = -1.0;
  }
  return w;
}

bool is_symplectic(const Matrix& s, double tol) {
  if (s.rows() != s.cols() || s.rows() % 2 != 0) return false;
  const int n = static_cast<int>(s.rows()) / 2;
  const Matrix w = omega(n);
  return (s * w * s.transpose() - w).cwiseAbs().maxCoeff() <= tol;
}

CovarianceMatrix apply_symplectic(const CovarianceMatrix& cm, const Matrix& s) {
  if (s.rows() != cm.matrix().rows() || !is_symplectic(s)) {
    throw std::invalid_argument("apply_symplectic: S is not symplectic for this mode count");
  }
  return CovarianceMatrix(s * cm.matrix() * s.transpose(), 1e-9);
}

Matrix beam_splitter(double t, int mode_i, int mode_j, int n_modes) {
  if (t < 0.0 || t > 1.0) {
    throw std::invalid_argument("beam_splitter: transmittivity must lie in [0, 1]");
  }
  if (mode_i == mode_j || mode_i < 0 || mode_j < 0 || mode_i >= n_modes || mode_j >= n_modes) {
    throw std::invalid_argument("beam_splitter: invalid mode pair");
  }
  const double u = std::sqrt(t);
  const double v = std::sqrt(1.0 - t);
  Matrix s = Matrix::Identity(2 * n_modes, 2 * n_modes);
  s.block<2, 2>(2 * mode_i, 2 * mode_i) = u * Matrix2::Identity();
  s.block<2, 2>(2 * mode_i, 2 * mode_j) = v * Matrix2::Identity();
  s.block<2, 2>(2 * mode_j, 2 * mode_i) = v * Matrix2::Identity();
  s.block<2, 2>(2 * mode_j, 2 * mode_j) = -u * Matrix2::Identity();
  return s;
}

CovarianceMatrix direct_sum(const CovarianceMatrix& a, const CovarianceMatrix& b) {
  const int ra = static_cast<int>(a.matrix().rows());
  const int rb = static_cast<int>(b.matrix().rows());
  Matrix m = Matrix::Zero(ra + rb, ra + rb);
  m.topLeftCorner(ra, ra) = a.matrix();
  m.bottomRightCorner(rb, rb) = b.matrix();
  return CovarianceMatrix(std::move(m));
}

CovarianceMatrix partial_trace(const CovarianceMatrix& cm, std::span<const int> keep_modes) {
  const int n = cm.modes();
  if (keep_modes.empty()) {
    throw std::invalid_argument("partial_trace: must keep at least one mode");
  }
  std::set<int> seen;
  for (int m : keep_modes) {
    if (m < 0 || m >= n) {
      throw std::out_of_range("partial_trace: mode index " + std::to_string(m) + " out of range");
    }
    if (!seen.insert(m).second) {
      throw std::invalid_argument("partial_trace: repeated mode index");
    }
  }
  const int k = static_cast<int>(keep_modes.size());
  Matrix out(2 * k, 2 * k);
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      out.block<2, 2>(2 * i, 2 * j) = cm.matrix().block<2, 2>(2 * keep_modes[i], 2 * keep_modes[j]);
    }
  }
  return CovarianceMatrix(std::move(out));
}

CovarianceMatrix partial_trace(const CovarianceMatrix& cm, std::initializer_list<int> keep_modes) {
  std::vector<int> keep(keep_modes);
  return partial_trace(cm, std::span<const int>(keep));
}

Matrix2 rotation2(double theta) {
  Matrix2 r;
  r << std::cos(theta), std::sin(theta), -std::sin(theta), std::cos(theta);
  return r;
}

Matrix2 single_mode_symplectic(double theta1, double z, double theta2) {
  if (!(z > 0.0)) {
    throw std::invalid_argument("single_mode_symplectic: squeeze factor must be positive");
  }
  Matrix2 sq;
  sq << z, 0.0, 0.0, 1.0 / z;
  return rotation2(theta1) * sq * rotation2(theta2);
}

Matrix embed_single_mode(const Matrix2& s, int mode, int n_modes) {
  if (mode < 0 || mode >= n_modes) {
    throw std::out_of_range("embed_single_mode: mode index out of range");
  }
  Matrix out = Matrix::Identity(2 * n_modes, 2 * n_modes);
  out.block<2, 2>(2 * mode, 2 * mode) = s;
  return out;
}

}  // namespace gqc
