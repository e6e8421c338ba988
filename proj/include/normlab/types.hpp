#pragma once

#include <Eigen/Dense>
#include <complex>
#include <limits>

namespace normlab {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

inline bool is_inf(double p) { return std::isinf(p); }

inline double max_abs(const CMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

inline bool exactly_zero(const CMatrix& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      if (m(i, j) != Complex(0.0, 0.0)) return false;
  return true;
}

// Largest singular value. Fiber norms are Euclidean, so this is the operator
// norm of a block and the exact l^2 engine for realized matrices.
inline double spectral_norm(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  if (m.rows() == 1 && m.cols() == 1) return std::abs(m(0, 0));
  Eigen::BDCSVD<CMatrix> svd(m);
  return svd.singularValues()(0);
}

}  // namespace normlab
