#pragma once

#include "robustgauss/ball.hpp"
#include "robustgauss/model.hpp"
#include "robustgauss/solver.hpp"

namespace robustgauss {

/// Upper tail of the standard normal, 1 - Phi(t). Backed by a rational
/// approximation of the complementary error function (Cody 1969); absolute
/// error below 1e-14 on the real line. Negative arguments are computed by
/// reflection, so phi_bar(-t) == 1 - phi_bar(t) to the last bit for t >= 0.
double phi_bar(double t);

/// sgn(w.x) with sgn(0) = +1. The all-zero weight vector is the constant
/// classifier (degenerate); its risk is 1/2 by convention.
struct LinearClassifier {
  explicit LinearClassifier(Vec w_in);

  Vec w;

  bool is_degenerate() const { return w.isZero(0.0); }
};

int classify(const LinearClassifier& clf, const Vec& x);

/// Exact robust error of a linear classifier under the (B, eps) adversary:
/// phi_bar((w.mu - eps*|w|_{B*}) / |w|_Sigma).
double robust_risk_linear(const LinearClassifier& clf, const GaussianMixture& model, const Ball& ball,
                          double eps);

/// Error with no adversary; equals robust_risk_linear at eps = 0.
double standard_risk_linear(const LinearClassifier& clf, const GaussianMixture& model);

/// 2 |mu|_{Sigma^{-1}}.
double std_snr(const GaussianMixture& model);

/// Adversarial signal-to-noise ratio 2 |mu - z_Sigma(mu)|_{Sigma^{-1}};
/// reduces to std_snr at eps = 0. Throws NumericError when the inner solve
/// does not converge.
double adv_snr(const GaussianMixture& model, const Ball& ball, double eps, const SolveOptions& opts = {});

/// Minimal robust error phi_bar(adv_snr / 2), attained by the classifier
/// w0 = Sigma^{-1}(mu - z_Sigma(mu)).
double optimal_robust_risk(const GaussianMixture& model, const Ball& ball, double eps,
                           const SolveOptions& opts = {});

/// robust_risk_linear(clf) - optimal_robust_risk; non-negative up to solver
/// tolerance.
double excess_risk(const LinearClassifier& clf, const GaussianMixture& model, const Ball& ball, double eps,
                   const SolveOptions& opts = {});

/// Log ratio between the adversarial and standard minimax rates,
/// (|mu|^2 - |mu - z_Sigma(mu)|^2)/2 in the Sigma^{-1} metric. Non-negative.
double rate_log_ratio(const GaussianMixture& model, const Ball& ball, double eps,
                      const SolveOptions& opts = {});

/// The robust Bayes-optimal weights Sigma^{-1}(mu - z_Sigma(mu)).
LinearClassifier optimal_classifier(const GaussianMixture& model, const Ball& ball, double eps,
                                    const SolveOptions& opts = {});

struct RiskReport {
  double robust_risk = 0.0;
  double standard_risk = 0.0;
  double optimal_robust_risk = 0.0;
  double excess_risk = 0.0;
  double adv_snr = 0.0;
  double std_snr = 0.0;
};

RiskReport risk_report(const LinearClassifier& clf, const GaussianMixture& model, const Ball& ball,
                       double eps, const SolveOptions& opts = {});

}  // namespace robustgauss
