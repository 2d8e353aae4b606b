#include "robustgauss/estimators.hpp"

#include <cmath>

namespace robustgauss {

FitResult fit_plugin(const Dataset& data, const Ball& ball, double eps, const FitOptions& opts) {
  if (data.n() < 2) {
    throw std::invalid_argument("fit_plugin: need at least 2 samples");
  }
  if (!(opts.ridge >= 0.0)) {
    throw std::invalid_argument("fit_plugin: ridge must be >= 0");
  }
  Moments m = empirical_moments(data);
  Mat regularized = m.sigma_hat;
  if (opts.ridge > 0.0) {
    regularized += opts.ridge * Mat::Identity(data.dim(), data.dim());
  }
  SpdMatrix sigma_hat = [&] {
    try {
      return SpdMatrix::cholesky(regularized);
    } catch (const NumericError&) {
      if (opts.ridge == 0.0) {
        throw NumericError("fit_plugin: singular sample covariance; pass ridge or more data");
      }
      throw;
    }
  }();
  SolveCertificate cert = solve_z(m.mu_hat, sigma_hat, ball, eps, opts.solve);
  LinearClassifier clf(sigma_hat.solve(m.mu_hat - cert.z));
  return FitResult{std::move(clf), std::move(m.mu_hat), std::move(sigma_hat),
                   Vec(cert.z),    std::move(cert),     opts.ridge};
}

FitResult fit_known_sigma(const Dataset& data, const SpdMatrix& sigma, const Ball& ball, double eps,
                          const SolveOptions& opts) {
  if (data.n() < 1) {
    throw std::invalid_argument("fit_known_sigma: dataset is empty");
  }
  if (data.dim() != sigma.dim()) {
    throw std::invalid_argument("fit_known_sigma: dataset and sigma dimensions disagree");
  }
  Moments m = empirical_moments(data);
  SolveCertificate cert = solve_z(m.mu_hat, sigma, ball, eps, opts);
  LinearClassifier clf(sigma.solve(m.mu_hat - cert.z));
  return FitResult{std::move(clf), std::move(m.mu_hat), sigma, Vec(cert.z), std::move(cert), 0.0};
}

FitResult fit_mean_baseline(const Dataset& data) {
  if (data.n() < 1) {
    throw std::invalid_argument("fit_mean_baseline: dataset is empty");
  }
  Moments m = empirical_moments(data);
  const Index d = data.dim();
  SolveCertificate cert;
  cert.z = Vec::Zero(d);
  cert.objective = m.mu_hat.squaredNorm();
  cert.converged = true;
  LinearClassifier clf(m.mu_hat);
  return FitResult{std::move(clf), std::move(m.mu_hat), SpdMatrix::identity(d),
                   Vec::Zero(d),   std::move(cert),     0.0};
}

DeltaReport delta_decomposition(const FitResult& fit, const GaussianMixture& truth, const Ball& ball,
                                double eps) {
  const Vec& w_hat = fit.classifier.w;
  if (fit.classifier.is_degenerate()) {
    throw std::invalid_argument("delta_decomposition: fitted weights are zero; delta_n is undefined");
  }
  if (w_hat.size() != truth.dim()) {
    throw std::invalid_argument("delta_decomposition: fit and truth dimensions disagree");
  }
  // Population quantities solved tighter than the checks downstream so
  // solver error stays out of the sign pattern.
  SolveOptions tight;
  tight.tol = 1e-10;
  SolveCertificate star = solve_z(truth.mu, truth.sigma, ball, eps, tight);
  if (!star.converged) {
    throw NumericError("delta_decomposition: population solve did not converge");
  }
  const Vec w0 = truth.sigma.solve(truth.mu - star.z);
  const double w0_norm = truth.sigma.sigma_norm(w0);
  const double w_norm = truth.sigma.sigma_norm(w_hat);

  DeltaReport report;
  report.delta_n = w0_norm - (w_hat.dot(truth.mu) - eps * ball.dual_norm(w_hat)) / w_norm;
  report.t1 = -0.5 * (w0_norm - w_norm) * (w0_norm - w_norm);
  report.t2 = w0.dot(fit.z_hat - star.z);
  report.t3 = -0.5 * truth.sigma.mahalanobis_sq(fit.z_hat - star.z);
  const Vec u = (truth.sigma.matrix() - fit.sigma_hat_used.matrix()) * w_hat + (fit.mu_hat - truth.mu);
  report.t4 = 0.5 * truth.sigma.mahalanobis_sq(u);
  report.residual = std::abs(w_norm * report.delta_n - (report.t1 + report.t2 + report.t3 + report.t4));
  return report;
}

}  // namespace robustgauss
