#include "robustgauss/solver.hpp"

#include <cmath>

namespace robustgauss {

namespace {

struct Workspace {
  const Vec& mu;
  const SpdMatrix& sigma;
  const Ball& ball;
  double eps;

  double objective(const Vec& z) const { return sigma.mahalanobis_sq(mu - z); }

  // g = Sigma^{-1}(mu - z); the objective gradient is -2g.
  Vec inv_residual(const Vec& z) const { return sigma.solve(mu - z); }

  // fw_gap = grad(z).(z - s) = 2 g.(s - z) with s the lmo of g.
  double gap(const Vec& g, const Vec& s, const Vec& z) const { return 2.0 * g.dot(s - z); }
};

double gap_at(const Workspace& w, const Vec& z) {
  const Vec g = w.sigma.solve(w.mu - z);
  const Vec s = w.ball.lmo(g, w.eps);
  return w.gap(g, s, z);
}

SolveCertificate run_frank_wolfe(const Workspace& w, Vec z, const SolveOptions& opts) {
  SolveCertificate cert;
  double gap = 0.0;
  bool gap_current = false;  // whether `gap` was evaluated at the present z
  long it = 0;
  for (; it < opts.max_iterations; ++it) {
    if (opts.objective_trace) opts.objective_trace->push_back(w.objective(z));
    const Vec g = w.sigma.solve(w.mu - z);
    const Vec s = w.ball.lmo(g, w.eps);
    gap = w.gap(g, s, z);
    gap_current = true;
    if (gap <= opts.tol) break;
    const Vec d = s - z;
    const double curvature = w.sigma.mahalanobis_sq(d);
    if (curvature <= 0.0) break;
    // Exact line search on the quadratic, clipped to [0, 1].
    const double gamma = std::min(1.0, std::max(0.0, g.dot(d) / curvature));
    z += gamma * d;
    gap_current = false;
  }
  if (!gap_current) gap = gap_at(w, z);
  cert.z = std::move(z);
  cert.objective = w.objective(cert.z);
  cert.fw_gap = gap;
  cert.iterations = it;
  cert.converged = gap <= opts.tol;
  return cert;
}

SolveCertificate run_projected_gradient(const Workspace& w, Vec z, const SolveOptions& opts) {
  // z <- P(z + step * Sigma^{-1}(mu - z)) with step = 1/L, L the largest
  // eigenvalue of Sigma^{-1}. The power-iteration estimate can come in low,
  // so leave 5% headroom to keep the step inside the stable range.
  const double lmax = inverse_spectral_radius(w.sigma) * 1.05;
  const double step = lmax > 0.0 ? 1.0 / lmax : 1.0;
  SolveCertificate cert;
  double gap = 0.0;
  bool gap_current = false;
  long it = 0;
  for (; it < opts.max_iterations; ++it) {
    if (opts.objective_trace) opts.objective_trace->push_back(w.objective(z));
    const Vec g = w.sigma.solve(w.mu - z);
    const Vec s = w.ball.lmo(g, w.eps);
    gap = w.gap(g, s, z);
    gap_current = true;
    if (gap <= opts.tol) break;
    z = w.ball.project(z + step * g, w.eps);
    gap_current = false;
  }
  if (!gap_current) gap = gap_at(w, z);
  cert.z = std::move(z);
  cert.objective = w.objective(cert.z);
  cert.fw_gap = gap;
  cert.iterations = it;
  cert.converged = gap <= opts.tol;
  return cert;
}

}  // namespace

SolveCertificate solve_z(const Vec& mu, const SpdMatrix& sigma, const Ball& ball, double eps,
                         const SolveOptions& opts) {
  if (mu.size() != sigma.dim()) {
    throw std::invalid_argument("solve_z: dimension mismatch between mu and sigma");
  }
  if (!mu.allFinite()) {
    throw std::invalid_argument("solve_z: mu has non-finite entries");
  }
  if (!(eps >= 0.0) || !std::isfinite(eps)) {
    throw std::invalid_argument("solve_z: eps must be finite and >= 0");
  }
  if (!(opts.tol > 0.0)) {
    throw std::invalid_argument("solve_z: tol must be > 0");
  }

  Workspace w{mu, sigma, ball, eps};
  SolveCertificate cert;

  if (eps == 0.0) {
    cert.z = Vec::Zero(mu.size());
    cert.objective = w.objective(cert.z);
    cert.converged = true;
    return cert;
  }
  if (ball.norm(mu) <= eps) {
    // mu itself is feasible: the unconstrained minimum.
    cert.z = mu;
    cert.objective = 0.0;
    cert.converged = true;
    return cert;
  }

  Vec z0 = ball.has_projection() ? ball.project(mu, eps) : ball.lmo(mu, eps);

  SolveMethod method = opts.method;
  if (method == SolveMethod::auto_select) {
    method = ball.has_projection() ? SolveMethod::projected_gradient : SolveMethod::frank_wolfe;
  }
  if (method == SolveMethod::projected_gradient && !ball.has_projection()) {
    throw std::invalid_argument("solve_z: projected gradient requires a ball with a closed-form projection");
  }
  return method == SolveMethod::projected_gradient ? run_projected_gradient(w, std::move(z0), opts)
                                                   : run_frank_wolfe(w, std::move(z0), opts);
}

Vec brute_force_z(const Vec& mu, const SpdMatrix& sigma, const Ball& ball, double eps, int grid_res) {
  const Index d = mu.size();
  if (d < 1 || d > 3) {
    throw std::invalid_argument("brute_force_z: supported only for dimension 1..3");
  }
  if (d != sigma.dim()) {
    throw std::invalid_argument("brute_force_z: dimension mismatch");
  }
  if (grid_res < 1 || grid_res > 401) {
    throw std::invalid_argument("brute_force_z: grid_res must be in 1..401");
  }
  if (!(eps >= 0.0)) {
    throw std::invalid_argument("brute_force_z: eps must be >= 0");
  }
  if (eps == 0.0) return Vec::Zero(d);

  // Dense Sigma^{-1} is fine at d <= 3 and keeps the inner loop cheap.
  Mat sigma_inv(d, d);
  for (Index j = 0; j < d; ++j) sigma_inv.col(j) = sigma.solve(Vec::Unit(d, j));

  std::vector<double> axis(static_cast<std::size_t>(grid_res));
  if (grid_res == 1) {
    axis[0] = 0.0;
  } else {
    for (int i = 0; i < grid_res; ++i) {
      axis[static_cast<std::size_t>(i)] = -eps + 2.0 * eps * static_cast<double>(i) / (grid_res - 1);
    }
  }

  // The center is always feasible, so start from z = 0.
  Vec best = Vec::Zero(d);
  double best_obj = (mu - best).dot(sigma_inv * (mu - best));
  const double radius = eps * (1.0 + 1e-12);

  Vec pt = Vec::Zero(d);
  const int n1 = grid_res;
  const int n2 = d >= 2 ? grid_res : 1;
  const int n3 = d >= 3 ? grid_res : 1;
  for (int i = 0; i < n1; ++i) {
    pt[0] = axis[static_cast<std::size_t>(i)];
    for (int j = 0; j < n2; ++j) {
      if (d >= 2) pt[1] = axis[static_cast<std::size_t>(j)];
      for (int k = 0; k < n3; ++k) {
        if (d >= 3) pt[2] = axis[static_cast<std::size_t>(k)];
        if (ball.norm(pt) > radius) continue;
        const Vec r = mu - pt;
        const double obj = r.dot(sigma_inv * r);
        if (obj < best_obj) {
          best_obj = obj;
          best = pt;
        }
      }
    }
  }
  return best;
}

}  // namespace robustgauss
