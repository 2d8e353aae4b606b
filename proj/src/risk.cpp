#include "robustgauss/risk.hpp"

#include <cmath>

namespace robustgauss {

namespace {

// Rational Chebyshev approximations for erf/erfc from W. J. Cody,
// "Rational Chebyshev approximation for the error function",
// Math. Comp. 23 (1969): three regimes, relative error below 1e-15.
constexpr double kErfA[5] = {3.16112374387056560e00, 1.13864154151050156e02, 3.77485237685302021e02,
                             3.20937758913846947e03, 1.85777706184603153e-1};
constexpr double kErfB[4] = {2.36012909523441209e01, 2.44024637934444173e02, 1.28261652607737228e03,
                             2.84423683343917062e03};
constexpr double kErfcC[9] = {5.64188496988670089e-1, 8.88314979438837594e00, 6.61191906371416295e01,
                              2.98635138197400131e02, 8.81952221241769090e02, 1.71204761263407058e03,
                              2.05107837782607147e03, 1.23033935479799725e03, 2.15311535474403846e-8};
constexpr double kErfcD[8] = {1.57449261107098347e01, 1.17693950891312499e02, 5.37181101862009858e02,
                              1.62138957456669019e03, 3.29079923573345963e03, 4.36261909014324716e03,
                              3.43936767414372164e03, 1.23033935480374942e03};
constexpr double kErfcP[6] = {3.05326634961232344e-1, 3.60344899949804439e-1, 1.25781726111229246e-1,
                              1.60837851487422766e-2, 6.58749161529837803e-4, 1.63153871373020978e-2};
constexpr double kErfcQ[5] = {2.56852019228982242e00, 1.87295284992346047e00, 5.27905102951428412e-1,
                              6.05183413124413191e-2, 2.33520497626869185e-3};
constexpr double kInvSqrtPi = 5.6418958354775628695e-1;

double erf_small(double x) {
  const double y = std::abs(x);
  const double ysq = y > 1.11e-16 ? y * y : 0.0;
  double num = kErfA[4] * ysq;
  double den = ysq;
  for (int i = 0; i < 3; ++i) {
    num = (num + kErfA[i]) * ysq;
    den = (den + kErfB[i]) * ysq;
  }
  return x * (num + kErfA[3]) / (den + kErfB[3]);
}

// exp(-y^2) evaluated as exp(-hi^2)*exp(-del) with hi = trunc(16y)/16, so the
// squared argument keeps full precision.
double exp_neg_sq(double y) {
  const double hi = std::trunc(y * 16.0) / 16.0;
  const double del = (y - hi) * (y + hi);
  return std::exp(-hi * hi) * std::exp(-del);
}

double erfc_mid(double y) {  // 0.46875 < y <= 4
  double num = kErfcC[8] * y;
  double den = y;
  for (int i = 0; i < 7; ++i) {
    num = (num + kErfcC[i]) * y;
    den = (den + kErfcD[i]) * y;
  }
  return exp_neg_sq(y) * (num + kErfcC[7]) / (den + kErfcD[7]);
}

double erfc_large(double y) {  // y > 4
  const double ysq = 1.0 / (y * y);
  double num = kErfcP[5] * ysq;
  double den = ysq;
  for (int i = 0; i < 4; ++i) {
    num = (num + kErfcP[i]) * ysq;
    den = (den + kErfcQ[i]) * ysq;
  }
  const double ratio = ysq * (num + kErfcP[4]) / (den + kErfcQ[4]);
  return exp_neg_sq(y) * (kInvSqrtPi - ratio) / y;
}

double erfc_cody(double x) {
  const double y = std::abs(x);
  double r;
  if (y <= 0.46875) {
    return 1.0 - erf_small(x);
  } else if (y <= 4.0) {
    r = erfc_mid(y);
  } else if (y <= 26.543) {
    r = erfc_large(y);
  } else {
    r = 0.0;
  }
  return x > 0.0 ? r : 2.0 - r;
}

void check_eps(double eps, const char* where) {
  if (!(eps >= 0.0) || !std::isfinite(eps)) {
    throw std::invalid_argument(std::string(where) + ": eps must be finite and >= 0");
  }
}

SolveCertificate solve_or_throw(const GaussianMixture& model, const Ball& ball, double eps,
                                const SolveOptions& opts, const char* where) {
  SolveCertificate cert = solve_z(model.mu, model.sigma, ball, eps, opts);
  if (!cert.converged) {
    throw NumericError(std::string(where) + ": solve_z did not converge within " +
                       std::to_string(cert.iterations) + " iterations (fw_gap " +
                       std::to_string(cert.fw_gap) + ")");
  }
  return cert;
}

}  // namespace

double phi_bar(double t) {
  if (t < 0.0) return 1.0 - phi_bar(-t);
  return 0.5 * erfc_cody(t * M_SQRT1_2);
}

LinearClassifier::LinearClassifier(Vec w_in) : w(std::move(w_in)) {
  if (!w.allFinite()) {
    throw std::invalid_argument("LinearClassifier: weights have non-finite entries");
  }
}

int classify(const LinearClassifier& clf, const Vec& x) {
  if (x.size() != clf.w.size()) {
    throw std::invalid_argument("classify: dimension mismatch");
  }
  return clf.w.dot(x) >= 0.0 ? 1 : -1;
}

double robust_risk_linear(const LinearClassifier& clf, const GaussianMixture& model, const Ball& ball,
                          double eps) {
  if (clf.w.size() != model.dim()) {
    throw std::invalid_argument("robust_risk_linear: dimension mismatch");
  }
  check_eps(eps, "robust_risk_linear");
  if (clf.is_degenerate()) return 0.5;
  const double margin = clf.w.dot(model.mu) - eps * ball.dual_norm(clf.w);
  return phi_bar(margin / model.sigma.sigma_norm(clf.w));
}

double standard_risk_linear(const LinearClassifier& clf, const GaussianMixture& model) {
  if (clf.w.size() != model.dim()) {
    throw std::invalid_argument("standard_risk_linear: dimension mismatch");
  }
  if (clf.is_degenerate()) return 0.5;
  return phi_bar(clf.w.dot(model.mu) / model.sigma.sigma_norm(clf.w));
}

double std_snr(const GaussianMixture& model) { return 2.0 * std::sqrt(model.sigma.mahalanobis_sq(model.mu)); }

double adv_snr(const GaussianMixture& model, const Ball& ball, double eps, const SolveOptions& opts) {
  check_eps(eps, "adv_snr");
  const SolveCertificate cert = solve_or_throw(model, ball, eps, opts, "adv_snr");
  return 2.0 * std::sqrt(model.sigma.mahalanobis_sq(model.mu - cert.z));
}

double optimal_robust_risk(const GaussianMixture& model, const Ball& ball, double eps,
                           const SolveOptions& opts) {
  return phi_bar(0.5 * adv_snr(model, ball, eps, opts));
}

double excess_risk(const LinearClassifier& clf, const GaussianMixture& model, const Ball& ball, double eps,
                   const SolveOptions& opts) {
  return robust_risk_linear(clf, model, ball, eps) - optimal_robust_risk(model, ball, eps, opts);
}

double rate_log_ratio(const GaussianMixture& model, const Ball& ball, double eps, const SolveOptions& opts) {
  check_eps(eps, "rate_log_ratio");
  const SolveCertificate cert = solve_or_throw(model, ball, eps, opts, "rate_log_ratio");
  return 0.5 * (model.sigma.mahalanobis_sq(model.mu) - model.sigma.mahalanobis_sq(model.mu - cert.z));
}

LinearClassifier optimal_classifier(const GaussianMixture& model, const Ball& ball, double eps,
                                    const SolveOptions& opts) {
  check_eps(eps, "optimal_classifier");
  const SolveCertificate cert = solve_or_throw(model, ball, eps, opts, "optimal_classifier");
  return LinearClassifier(model.sigma.solve(model.mu - cert.z));
}

RiskReport risk_report(const LinearClassifier& clf, const GaussianMixture& model, const Ball& ball,
                       double eps, const SolveOptions& opts) {
  check_eps(eps, "risk_report");
  const SolveCertificate cert = solve_or_throw(model, ball, eps, opts, "risk_report");
  RiskReport report;
  report.adv_snr = 2.0 * std::sqrt(model.sigma.mahalanobis_sq(model.mu - cert.z));
  report.std_snr = std_snr(model);
  report.optimal_robust_risk = phi_bar(0.5 * report.adv_snr);
  report.robust_risk = robust_risk_linear(clf, model, ball, eps);
  report.standard_risk = standard_risk_linear(clf, model);
  report.excess_risk = report.robust_risk - report.optimal_robust_risk;
  return report;
}

}  // namespace robustgauss
