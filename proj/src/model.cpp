#include "robustgauss/model.hpp"

#include <cmath>

#include "robustgauss/rng.hpp"

namespace robustgauss {

double SplitMix64::next_normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  // Box-Muller; u1 shifted into (0, 1] so the log is finite.
  const double u1 = 1.0 - next_uniform();
  const double u2 = next_uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * M_PI * u2;
  spare_ = r * std::sin(theta);
  has_spare_ = true;
  return r * std::cos(theta);
}

GaussianMixture::GaussianMixture(Vec mu_in, SpdMatrix sigma_in)
    : mu(std::move(mu_in)), sigma(std::move(sigma_in)) {
  if (mu.size() != sigma.dim()) {
    throw std::invalid_argument("GaussianMixture: mu and sigma dimensions disagree");
  }
  if (!mu.allFinite()) {
    throw std::invalid_argument("GaussianMixture: mu has non-finite entries");
  }
}

Dataset sample(const GaussianMixture& model, Index n, std::uint64_t seed) {
  if (n < 1) {
    throw std::invalid_argument("sample: n must be >= 1");
  }
  const Index d = model.dim();
  const Mat& l = model.sigma.factor_l();
  SplitMix64 rng(seed);
  Dataset data;
  data.x.resize(n, d);
  data.y.resize(n);
  Vec g(d);
  for (Index i = 0; i < n; ++i) {
    const int y = (rng.next_u64() & 1u) ? 1 : -1;
    for (Index j = 0; j < d; ++j) g[j] = rng.next_normal();
    data.y[i] = y;
    data.x.row(i) = (static_cast<double>(y) * model.mu + l * g).transpose();
  }
  return data;
}

Moments empirical_moments(const Dataset& data) {
  const Index n = data.n();
  if (n < 1) {
    throw std::invalid_argument("empirical_moments: dataset is empty");
  }
  if (data.y.size() != n) {
    throw std::invalid_argument("empirical_moments: x and y row counts disagree");
  }
  const double inv_n = 1.0 / static_cast<double>(n);
  Moments m;
  m.mu_hat = inv_n * (data.x.transpose() * data.y.cast<double>());
  Mat second = inv_n * (data.x.transpose() * data.x);
  m.sigma_hat = second - m.mu_hat * m.mu_hat.transpose();
  m.sigma_hat = 0.5 * (m.sigma_hat + m.sigma_hat.transpose());
  return m;
}

AdvInstance make_adv_instance(const Vec& mu_prime, const SpdMatrix& sigma, const Ball& ball, double eps) {
  if (mu_prime.size() != sigma.dim()) {
    throw std::invalid_argument("make_adv_instance: dimension mismatch");
  }
  const Vec g = sigma.solve(mu_prime);
  Vec z_tilde = ball.lmo(g, eps);
  const bool degenerate = mu_prime.isZero(0.0);
  GaussianMixture model(mu_prime + z_tilde, sigma);
  return AdvInstance{std::move(model), std::move(z_tilde), degenerate};
}

}  // namespace robustgauss
