#pragma once

#include <vector>

#include "robustgauss/ball.hpp"
#include "robustgauss/spd.hpp"

namespace robustgauss {

/// Output of solve_z. The Frank-Wolfe gap max_{feasible s} grad(z).(z - s)
/// is the convergence certificate: it is zero at the optimum and, for this
/// convex objective, bounds the objective suboptimality from above.
struct SolveCertificate {
  Vec z;
  double objective = 0.0;  // |mu - z|^2 in the Sigma^{-1} metric
  double fw_gap = 0.0;
  long iterations = 0;
  bool converged = false;
};

enum class SolveMethod {
  auto_select,         // projected gradient when a projection exists, else Frank-Wolfe
  frank_wolfe,         // lmo-only, exact line search; works for every p in [1, inf]
  projected_gradient,  // 1/L step, L from power iteration; p in {1, 2, inf} only
};

struct SolveOptions {
  double tol = 1e-9;
  long max_iterations = 100000;
  SolveMethod method = SolveMethod::auto_select;
  std::vector<double>* objective_trace = nullptr;  // filled per iteration when set
};

/// Minimizes |mu - z|^2_{Sigma^{-1}} over {|z|_B <= eps}: the effective mean
/// shift the adversary induces. Returns the best iterate with
/// converged=false when the iteration cap is reached; the caller decides.
SolveCertificate solve_z(const Vec& mu, const SpdMatrix& sigma, const Ball& ball, double eps,
                         const SolveOptions& opts = {});

/// Exhaustive grid search over [-eps, eps]^d intersected with the ball
/// (d <= 3, grid_res <= 401 per axis). Test oracle only.
Vec brute_force_z(const Vec& mu, const SpdMatrix& sigma, const Ball& ball, double eps, int grid_res);

}  // namespace robustgauss
