#include "robustgauss/spd.hpp"

#include <cmath>

namespace robustgauss {

SpdMatrix SpdMatrix::cholesky(const Mat& m) {
  if (m.rows() != m.cols()) {
    throw std::invalid_argument("cholesky: matrix must be square");
  }
  const Index d = m.rows();
  if (d == 0) {
    throw std::invalid_argument("cholesky: matrix must be non-empty");
  }
  if (!m.allFinite()) {
    throw std::invalid_argument("cholesky: matrix has non-finite entries");
  }
  const double scale = std::max(m.cwiseAbs().maxCoeff(), 1.0);
  const double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-10 * scale) {
    throw std::invalid_argument("cholesky: matrix is not symmetric");
  }

  const double pivot_floor = 1e-12 * std::max(m.trace(), 0.0) / static_cast<double>(d);
  Mat l = Mat::Zero(d, d);
  for (Index j = 0; j < d; ++j) {
    double pivot = m(j, j) - l.row(j).head(j).squaredNorm();
    if (pivot <= pivot_floor) {
      throw NumericError(
          "cholesky: matrix is not positive definite (pivot " + std::to_string(pivot) +
          " at column " + std::to_string(j) + "); consider adding a ridge term");
    }
    const double ljj = std::sqrt(pivot);
    l(j, j) = ljj;
    for (Index i = j + 1; i < d; ++i) {
      l(i, j) = (m(i, j) - l.row(i).head(j).dot(l.row(j).head(j))) / ljj;
    }
  }
  return SpdMatrix(0.5 * (m + m.transpose()), std::move(l));
}

SpdMatrix SpdMatrix::identity(Index d) { return SpdMatrix(Mat::Identity(d, d), Mat::Identity(d, d)); }

Vec SpdMatrix::solve(const Vec& b) const {
  if (b.size() != dim()) {
    throw std::invalid_argument("solve: dimension mismatch");
  }
  Vec y = l_.triangularView<Eigen::Lower>().solve(b);
  return l_.transpose().triangularView<Eigen::Upper>().solve(y);
}

double SpdMatrix::mahalanobis_sq(const Vec& x) const {
  if (x.size() != dim()) {
    throw std::invalid_argument("mahalanobis_sq: dimension mismatch");
  }
  Vec y = l_.triangularView<Eigen::Lower>().solve(x);
  return y.squaredNorm();
}

double SpdMatrix::sigma_norm(const Vec& w) const {
  if (w.size() != dim()) {
    throw std::invalid_argument("sigma_norm: dimension mismatch");
  }
  return (l_.transpose() * w).norm();
}

double inverse_spectral_radius(const SpdMatrix& m, int iterations) {
  const Index d = m.dim();
  // Fixed non-degenerate start so the estimate is deterministic.
  Vec v(d);
  for (Index i = 0; i < d; ++i) v[i] = 1.0 + 0.37 * static_cast<double>(i % 7);
  v /= v.norm();
  double lambda = 0.0;
  for (int k = 0; k < iterations; ++k) {
    Vec u = m.solve(v);
    const double n = u.norm();
    if (n == 0.0) return 0.0;
    lambda = v.dot(u);
    v = u / n;
  }
  return lambda;
}

}  // namespace robustgauss
