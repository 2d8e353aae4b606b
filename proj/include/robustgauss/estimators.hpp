#pragma once

#include "robustgauss/model.hpp"
#include "robustgauss/risk.hpp"

namespace robustgauss {

struct FitResult {
  LinearClassifier classifier;
  Vec mu_hat;
  SpdMatrix sigma_hat_used;  // the factored matrix that produced the weights
  Vec z_hat;
  SolveCertificate solver;
  double ridge_applied = 0.0;
};

struct FitOptions {
  double ridge = 0.0;
  SolveOptions solve;
};

/// Plug-in estimator: empirical moments, z_hat from the convex program on
/// them, w = (Sigma_hat + ridge I)^{-1}(mu_hat - z_hat). With ridge = 0 a
/// singular sample covariance is an error, never silently regularized.
FitResult fit_plugin(const Dataset& data, const Ball& ball, double eps, const FitOptions& opts = {});

/// Variant for known covariance: Sigma_hat := Sigma. Works from n = 1.
FitResult fit_known_sigma(const Dataset& data, const SpdMatrix& sigma, const Ball& ball, double eps,
                          const SolveOptions& opts = {});

/// The comparison classifier sgn(mu_hat . x); ignores the adversary.
FitResult fit_mean_baseline(const Dataset& data);

/// Exact decomposition of the margin deficit delta_n into the four
/// population-vs-sample terms; residual is floating-point noise when the
/// fit's own program was solved tightly.
struct DeltaReport {
  double delta_n = 0.0;
  double t1 = 0.0;  // -(|w0|_S - |w|_S)^2 / 2
  double t2 = 0.0;  // w0 . (z_hat - z_star)
  double t3 = 0.0;  // -|z_hat - z_star|^2_{S^{-1}} / 2
  double t4 = 0.0;  // |(S - S_hat) w + (mu_hat - mu)|^2_{S^{-1}} / 2
  double residual = 0.0;
};

DeltaReport delta_decomposition(const FitResult& fit, const GaussianMixture& truth, const Ball& ball,
                                double eps);

}  // namespace robustgauss
