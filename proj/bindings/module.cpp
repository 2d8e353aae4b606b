#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "robustgauss/estimators.hpp"
#include "robustgauss/experiment.hpp"
#include "robustgauss/risk.hpp"

namespace py = pybind11;
using namespace robustgauss;

namespace {

SolveOptions make_opts(double tol, long max_iterations, const std::string& method) {
  SolveOptions opts;
  opts.tol = tol;
  opts.max_iterations = max_iterations;
  if (method == "auto") {
    opts.method = SolveMethod::auto_select;
  } else if (method == "frank_wolfe") {
    opts.method = SolveMethod::frank_wolfe;
  } else if (method == "projected_gradient") {
    opts.method = SolveMethod::projected_gradient;
  } else {
    throw std::invalid_argument("method must be auto, frank_wolfe, or projected_gradient");
  }
  return opts;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Robust classification calculus for two-component Gaussian mixtures";

  py::register_exception<NumericError>(m, "NumericError", PyExc_RuntimeError);
  py::register_exception<IoError>(m, "IoError", PyExc_OSError);

  py::class_<BallSpec>(m, "BallSpec")
      .def_static("lp", &BallSpec::lp, py::arg("p"))
      .def_static("l1", &BallSpec::l1)
      .def_static("l2", &BallSpec::l2)
      .def_static("linf", &BallSpec::linf)
      .def_static("parse", &BallSpec::parse, py::arg("text"))
      .def_property_readonly("p", &BallSpec::p)
      .def_property_readonly("is_linf", &BallSpec::is_linf)
      .def("dual", &BallSpec::dual)
      .def("norm", &BallSpec::norm, py::arg("x"))
      .def("dual_norm", &BallSpec::dual_norm, py::arg("x"))
      .def("lmo", &BallSpec::lmo, py::arg("g"), py::arg("eps"))
      .def("has_projection", &BallSpec::has_projection)
      .def("project", &BallSpec::project, py::arg("x"), py::arg("eps"))
      .def("__repr__", [](const BallSpec& b) { return "BallSpec(" + b.name() + ")"; });

  py::class_<SpdMatrix>(m, "SpdMatrix")
      .def_static("cholesky", &SpdMatrix::cholesky, py::arg("matrix"))
      .def_static("identity", &SpdMatrix::identity, py::arg("d"))
      .def_property_readonly("dim", &SpdMatrix::dim)
      .def_property_readonly("matrix", &SpdMatrix::matrix)
      .def_property_readonly("factor_l", &SpdMatrix::factor_l)
      .def("solve", &SpdMatrix::solve, py::arg("b"))
      .def("mahalanobis_sq", &SpdMatrix::mahalanobis_sq, py::arg("x"))
      .def("sigma_norm", &SpdMatrix::sigma_norm, py::arg("w"));

  py::class_<GaussianMixture>(m, "GaussianMixture")
      .def(py::init<Vec, SpdMatrix>(), py::arg("mu"), py::arg("sigma"))
      .def(py::init([](const Vec& mu, const Mat& sigma) {
             return GaussianMixture(mu, SpdMatrix::cholesky(sigma));
           }),
           py::arg("mu"), py::arg("sigma"))
      .def_readonly("mu", &GaussianMixture::mu)
      .def_property_readonly("sigma", [](const GaussianMixture& g) { return g.sigma; })
      .def_property_readonly("dim", &GaussianMixture::dim);

  py::class_<Dataset>(m, "Dataset")
      .def(py::init([](const Mat& x, const Eigen::VectorXi& y) {
             Dataset d;
             d.x = x;
             d.y = y;
             return d;
           }),
           py::arg("x"), py::arg("y"))
      .def_readonly("x", &Dataset::x)
      .def_readonly("y", &Dataset::y)
      .def_property_readonly("n", &Dataset::n)
      .def_property_readonly("dim", &Dataset::dim);

  py::class_<SolveCertificate>(m, "SolveCertificate")
      .def_readonly("z", &SolveCertificate::z)
      .def_readonly("objective", &SolveCertificate::objective)
      .def_readonly("fw_gap", &SolveCertificate::fw_gap)
      .def_readonly("iterations", &SolveCertificate::iterations)
      .def_readonly("converged", &SolveCertificate::converged);

  py::class_<LinearClassifier>(m, "LinearClassifier")
      .def(py::init<Vec>(), py::arg("w"))
      .def_readonly("w", &LinearClassifier::w)
      .def_property_readonly("is_degenerate", &LinearClassifier::is_degenerate);

  py::class_<RiskReport>(m, "RiskReport")
      .def_readonly("robust_risk", &RiskReport::robust_risk)
      .def_readonly("standard_risk", &RiskReport::standard_risk)
      .def_readonly("optimal_robust_risk", &RiskReport::optimal_robust_risk)
      .def_readonly("excess_risk", &RiskReport::excess_risk)
      .def_readonly("adv_snr", &RiskReport::adv_snr)
      .def_readonly("std_snr", &RiskReport::std_snr);

  py::class_<FitResult>(m, "FitResult")
      .def_readonly("classifier", &FitResult::classifier)
      .def_readonly("mu_hat", &FitResult::mu_hat)
      .def_readonly("z_hat", &FitResult::z_hat)
      .def_readonly("solver", &FitResult::solver)
      .def_readonly("ridge_applied", &FitResult::ridge_applied)
      .def_property_readonly("sigma_hat_used", [](const FitResult& f) { return f.sigma_hat_used; });

  py::class_<DeltaReport>(m, "DeltaReport")
      .def_readonly("delta_n", &DeltaReport::delta_n)
      .def_readonly("t1", &DeltaReport::t1)
      .def_readonly("t2", &DeltaReport::t2)
      .def_readonly("t3", &DeltaReport::t3)
      .def_readonly("t4", &DeltaReport::t4)
      .def_readonly("residual", &DeltaReport::residual);

  py::class_<AdvInstance>(m, "AdvInstance")
      .def_readonly("model", &AdvInstance::model)
      .def_readonly("z_tilde", &AdvInstance::z_tilde)
      .def_readonly("degenerate", &AdvInstance::degenerate);

  m.def("phi_bar", &phi_bar, py::arg("t"), "Upper tail of the standard normal.");
  m.def("classify", &classify, py::arg("clf"), py::arg("x"));
  m.def(
      "solve_z",
      [](const Vec& mu, const SpdMatrix& sigma, const BallSpec& ball, double eps, double tol,
         long max_iterations, const std::string& method) {
        return solve_z(mu, sigma, ball, eps, make_opts(tol, max_iterations, method));
      },
      py::arg("mu"), py::arg("sigma"), py::arg("ball"), py::arg("eps"), py::arg("tol") = 1e-9,
      py::arg("max_iterations") = 100000, py::arg("method") = "auto",
      "Minimize |mu - z|^2 in the Sigma^{-1} metric over the eps-ball.");
  m.def(
      "brute_force_z",
      [](const Vec& mu, const SpdMatrix& sigma, const BallSpec& ball, double eps, int grid_res) {
        return brute_force_z(mu, sigma, ball, eps, grid_res);
      },
      py::arg("mu"), py::arg("sigma"), py::arg("ball"), py::arg("eps"), py::arg("grid_res") = 101);
  m.def(
      "robust_risk_linear",
      [](const LinearClassifier& clf, const GaussianMixture& model, const BallSpec& ball, double eps) {
        return robust_risk_linear(clf, model, ball, eps);
      },
      py::arg("clf"), py::arg("model"), py::arg("ball"), py::arg("eps"));
  m.def("standard_risk_linear", &standard_risk_linear, py::arg("clf"), py::arg("model"));
  m.def("std_snr", &std_snr, py::arg("model"));
  m.def(
      "adv_snr",
      [](const GaussianMixture& model, const BallSpec& ball, double eps) {
        return adv_snr(model, ball, eps);
      },
      py::arg("model"), py::arg("ball"), py::arg("eps"));
  m.def(
      "optimal_robust_risk",
      [](const GaussianMixture& model, const BallSpec& ball, double eps) {
        return optimal_robust_risk(model, ball, eps);
      },
      py::arg("model"), py::arg("ball"), py::arg("eps"));
  m.def(
      "excess_risk",
      [](const LinearClassifier& clf, const GaussianMixture& model, const BallSpec& ball, double eps) {
        return excess_risk(clf, model, ball, eps);
      },
      py::arg("clf"), py::arg("model"), py::arg("ball"), py::arg("eps"));
  m.def(
      "rate_log_ratio",
      [](const GaussianMixture& model, const BallSpec& ball, double eps) {
        return rate_log_ratio(model, ball, eps);
      },
      py::arg("model"), py::arg("ball"), py::arg("eps"));
  m.def(
      "optimal_classifier",
      [](const GaussianMixture& model, const BallSpec& ball, double eps) {
        return optimal_classifier(model, ball, eps);
      },
      py::arg("model"), py::arg("ball"), py::arg("eps"));
  m.def(
      "risk_report",
      [](const LinearClassifier& clf, const GaussianMixture& model, const BallSpec& ball, double eps) {
        return risk_report(clf, model, ball, eps);
      },
      py::arg("clf"), py::arg("model"), py::arg("ball"), py::arg("eps"));

  m.def("sample", &sample, py::arg("model"), py::arg("n"), py::arg("seed"));
  m.def(
      "empirical_moments",
      [](const Dataset& data) {
        const Moments m = empirical_moments(data);
        return py::make_tuple(m.mu_hat, m.sigma_hat);
      },
      py::arg("data"));
  m.def(
      "make_adv_instance",
      [](const Vec& mu_prime, const SpdMatrix& sigma, const BallSpec& ball, double eps) {
        return make_adv_instance(mu_prime, sigma, ball, eps);
      },
      py::arg("mu_prime"), py::arg("sigma"), py::arg("ball"), py::arg("eps"));

  m.def(
      "fit_plugin",
      [](const Dataset& data, const BallSpec& ball, double eps, double ridge, double tol) {
        FitOptions opts;
        opts.ridge = ridge;
        opts.solve.tol = tol;
        return fit_plugin(data, ball, eps, opts);
      },
      py::arg("data"), py::arg("ball"), py::arg("eps"), py::arg("ridge") = 0.0, py::arg("tol") = 1e-9);
  m.def(
      "fit_known_sigma",
      [](const Dataset& data, const SpdMatrix& sigma, const BallSpec& ball, double eps, double tol) {
        SolveOptions opts;
        opts.tol = tol;
        return fit_known_sigma(data, sigma, ball, eps, opts);
      },
      py::arg("data"), py::arg("sigma"), py::arg("ball"), py::arg("eps"), py::arg("tol") = 1e-9);
  m.def("fit_mean_baseline", &fit_mean_baseline, py::arg("data"));
  m.def(
      "delta_decomposition",
      [](const FitResult& fit, const GaussianMixture& truth, const BallSpec& ball, double eps) {
        return delta_decomposition(fit, truth, ball, eps);
      },
      py::arg("fit"), py::arg("truth"), py::arg("ball"), py::arg("eps"));
}
