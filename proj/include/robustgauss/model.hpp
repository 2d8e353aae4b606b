#pragma once

#include <cstdint>

#include "robustgauss/ball.hpp"
#include "robustgauss/solver.hpp"
#include "robustgauss/spd.hpp"

namespace robustgauss {

/// Two-component conditional Gaussian model: y uniform on {-1, +1},
/// x | y ~ N(y*mu, Sigma).
struct GaussianMixture {
  GaussianMixture(Vec mu_in, SpdMatrix sigma_in);

  Vec mu;
  SpdMatrix sigma;

  Index dim() const { return mu.size(); }
};

/// Labeled sample; one observation per row of x, labels in {-1, +1}.
struct Dataset {
  Mat x;
  Eigen::VectorXi y;

  Index n() const { return x.rows(); }
  Index dim() const { return x.cols(); }
};

/// Draws n i.i.d. pairs. Deterministic for fixed (model, n, seed):
/// y from one generator bit, x = y*mu + L*g with g standard normal.
Dataset sample(const GaussianMixture& model, Index n, std::uint64_t seed);

struct Moments {
  Vec mu_hat;
  Mat sigma_hat;  // may be singular; callers decide how to factor it
};

/// mu_hat = (1/n) sum y_i x_i;  sigma_hat = (1/n) sum x_i x_i^T - mu_hat mu_hat^T.
Moments empirical_moments(const Dataset& data);

struct AdvInstance {
  GaussianMixture model;
  Vec z_tilde;      // the shift used: argmax_{|z|_B <= eps} mu'. Sigma^{-1} z
  bool degenerate;  // mu' = 0: zero separation, flagged rather than rejected
};

/// Constructive inverse of the mean-shift map: returns mu = mu' + z_tilde
/// such that mu - z_Sigma(mu) = mu'. The AdvSNR of the result equals the
/// standard SNR of (mu', Sigma).
AdvInstance make_adv_instance(const Vec& mu_prime, const SpdMatrix& sigma, const Ball& ball, double eps);

}  // namespace robustgauss
