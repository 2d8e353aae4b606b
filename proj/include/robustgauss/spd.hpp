#pragma once

#include "robustgauss/common.hpp"

namespace robustgauss {

/// A symmetric positive definite matrix with its cached Cholesky factor
/// (Sigma = L L^T, L lower triangular with positive diagonal). Immutable
/// after construction. Supported envelope: d <= 1e3, condition <= 1e8;
/// no pivoting is performed.
class SpdMatrix {
 public:
  /// Factor a symmetric matrix. Throws std::invalid_argument when m is not
  /// square or not symmetric (within 1e-10 relative), and NumericError when
  /// a pivot falls at or below 1e-12 * trace/d ("not positive definite";
  /// add a ridge or use more data).
  static SpdMatrix cholesky(const Mat& m);

  static SpdMatrix identity(Index d);

  Index dim() const { return sigma_.rows(); }
  const Mat& matrix() const { return sigma_; }
  const Mat& factor_l() const { return l_; }

  /// Sigma^{-1} b via two triangular solves.
  Vec solve(const Vec& b) const;

  /// x^T Sigma^{-1} x, computed as |L^{-1}x|^2 (Sigma^{-1} is never formed).
  double mahalanobis_sq(const Vec& x) const;

  /// sqrt(w^T Sigma w).
  double sigma_norm(const Vec& w) const;

 private:
  SpdMatrix(Mat sigma, Mat l) : sigma_(std::move(sigma)), l_(std::move(l)) {}

  Mat sigma_;
  Mat l_;
};

/// Largest eigenvalue of Sigma^{-1}, estimated by power iteration on the
/// solve operator (fixed deterministic start vector).
double inverse_spectral_radius(const SpdMatrix& m, int iterations = 50);

}  // namespace robustgauss
