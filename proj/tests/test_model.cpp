#include <cmath>

#include "doctest.h"
#include "robustgauss/model.hpp"
#include "robustgauss/risk.hpp"
#include "robustgauss/rng.hpp"
#include "testers.hpp"

using namespace robustgauss;
using testers::TestRng;

TEST_CASE("sampling is deterministic in (model, n, seed)") {
  TestRng rng(41);
  const GaussianMixture model(rng.vec(3), rng.spd(3));
  const Dataset a = sample(model, 40, 777);
  const Dataset b = sample(model, 40, 777);
  CHECK(a.x == b.x);
  CHECK(a.y == b.y);
  const Dataset c = sample(model, 40, 778);
  CHECK(a.x != c.x);
}

TEST_CASE("labels are plus or minus one and roughly balanced") {
  Vec mu(2);
  mu << 1, 0;
  const GaussianMixture model(mu, SpdMatrix::identity(2));
  const Dataset data = sample(model, 4000, 5);
  long pos = 0;
  for (Index i = 0; i < data.n(); ++i) {
    CHECK((data.y[i] == 1 || data.y[i] == -1));
    if (data.y[i] == 1) ++pos;
  }
  // 4 sigma band around n/2.
  CHECK(std::abs(pos - 2000.0) <= 4.0 * std::sqrt(1000.0));
}

TEST_CASE("signed sample mean concentrates at mu") {
  Vec mu(2);
  mu << 1, 0;
  const GaussianMixture model(mu, SpdMatrix::identity(2));
  const Index n = 100000;
  const Dataset data = sample(model, n, 123);
  const Moments m = empirical_moments(data);
  CHECK((m.mu_hat - mu).norm() <= 3.0 * std::sqrt(2.0 / static_cast<double>(n)));
}

TEST_CASE("covariance estimate concentrates at identity") {
  const Index d = 5;
  Vec mu = Vec::Zero(d);
  mu[0] = 1.0;
  const GaussianMixture model(mu, SpdMatrix::identity(d));
  const Index n = 100000;
  const Dataset data = sample(model, n, 321);
  const Moments m = empirical_moments(data);
  const Mat dev = m.sigma_hat - Mat::Identity(d, d);
  // Frobenius dominates the operator norm; 3 sqrt(d/n) with constant slack.
  CHECK(dev.norm() <= 3.0 * std::sqrt(static_cast<double>(d) / static_cast<double>(n)) * 1.5);
}

TEST_CASE("normal generator has the right first moments") {
  SplitMix64 gen(9);
  const int n = 100000;
  double sum = 0.0, sumsq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double g = gen.next_normal();
    sum += g;
    sumsq += g * g;
  }
  const double mean = sum / n;
  const double var = sumsq / n - mean * mean;
  CHECK(std::abs(mean) <= 3.0 / std::sqrt(static_cast<double>(n)));
  CHECK(std::abs(var - 1.0) <= 3.0 * std::sqrt(2.0 / static_cast<double>(n)));
}

TEST_CASE("empirical moments on tiny datasets") {
  Dataset single;
  single.x = Mat(1, 2);
  single.x << 3, -1;
  single.y = Eigen::VectorXi::Constant(1, 1);
  const Moments m1 = empirical_moments(single);
  CHECK(m1.mu_hat[0] == 3.0);
  CHECK(m1.mu_hat[1] == -1.0);
  CHECK(m1.sigma_hat.norm() <= 1e-12);

  Dataset pair;
  pair.x = Mat(2, 2);
  pair.x << 2, 0, -2, 0;
  pair.y = Eigen::VectorXi(2);
  pair.y << 1, -1;
  const Moments m2 = empirical_moments(pair);
  CHECK(m2.mu_hat[0] == 2.0);
  CHECK(m2.mu_hat[1] == 0.0);
  CHECK(m2.sigma_hat.norm() <= 1e-12);

  Dataset empty;
  empty.x = Mat(0, 2);
  empty.y = Eigen::VectorXi(0);
  CHECK_THROWS_AS(empirical_moments(empty), std::invalid_argument);
}

TEST_CASE("make_adv_instance worked examples") {
  Vec mu_prime(2);
  mu_prime << 1, 0;
  const SpdMatrix id = SpdMatrix::identity(2);

  const AdvInstance inst = make_adv_instance(mu_prime, id, BallSpec::l2(), 0.5);
  CHECK_FALSE(inst.degenerate);
  CHECK(inst.model.mu[0] == doctest::Approx(1.5).epsilon(1e-14));
  CHECK(inst.model.mu[1] == doctest::Approx(0.0).epsilon(1e-14));
  const SolveCertificate cert = solve_z(inst.model.mu, id, BallSpec::l2(), 0.5);
  CHECK((inst.model.mu - cert.z - mu_prime).norm() <= 1e-8);

  Vec mu_prime5 = Vec::Zero(5);
  mu_prime5[0] = 1.0;
  const AdvInstance inf_inst = make_adv_instance(mu_prime5, SpdMatrix::identity(5), BallSpec::linf(), 0.1);
  // Zero-gradient coordinates stay zero under the lmo tie-break.
  CHECK(inf_inst.model.mu[0] == doctest::Approx(1.1).epsilon(1e-14));
  for (Index i = 1; i < 5; ++i) CHECK(inf_inst.model.mu[i] == 0.0);

  const AdvInstance same = make_adv_instance(mu_prime, id, BallSpec::l2(), 0.0);
  CHECK((same.model.mu - mu_prime).norm() == 0.0);
}

TEST_CASE("make_adv_instance flags the zero mean") {
  const AdvInstance inst = make_adv_instance(Vec::Zero(3), SpdMatrix::identity(3), BallSpec::l2(), 0.5);
  CHECK(inst.degenerate);
  CHECK(inst.model.mu.norm() == 0.0);
}

TEST_CASE("mean-shift roundtrip across balls and covariances") {
  TestRng rng(42);
  SolveOptions tight;
  tight.tol = 1e-12;
  for (int k = 0; k < 100; ++k) {
    const Index d = rng.uniform_int(2, 8);
    const BallSpec ball = rng.ball_from_palette();
    Vec mu_prime = rng.vec(d, 1.0);
    mu_prime *= rng.uniform(0.5, 2.0) / mu_prime.norm();
    const SpdMatrix sigma = rng.spd(d);
    const double eps = rng.uniform(0.05, 1.0);
    const AdvInstance inst = make_adv_instance(mu_prime, sigma, ball, eps);
    const SolveCertificate cert = solve_z(inst.model.mu, sigma, ball, eps, tight);
    REQUIRE(cert.converged);
    CHECK((inst.model.mu - cert.z - mu_prime).norm() <= 1e-5 * (1.0 + mu_prime.norm()));
  }
}

TEST_CASE("constructed instances preserve the signal ratio") {
  TestRng rng(43);
  SolveOptions tight;
  tight.tol = 1e-12;
  for (int k = 0; k < 40; ++k) {
    const Index d = rng.uniform_int(2, 6);
    const BallSpec ball = rng.ball_from_palette();
    Vec mu_prime = rng.vec(d, 1.0);
    mu_prime *= rng.uniform(0.5, 2.0) / mu_prime.norm();
    const SpdMatrix sigma = rng.spd(d);
    const double eps = rng.uniform(0.05, 1.0);
    const AdvInstance inst = make_adv_instance(mu_prime, sigma, ball, eps);
    const double adv = adv_snr(inst.model, ball, eps, tight);
    const double expected = 2.0 * std::sqrt(sigma.mahalanobis_sq(mu_prime));
    CHECK(std::abs(adv - expected) <= 1e-5 * (std::abs(expected) + 1e-9));
  }
}

TEST_CASE("model construction validates shapes") {
  CHECK_THROWS_AS(GaussianMixture(Vec::Zero(3), SpdMatrix::identity(2)), std::invalid_argument);
  Vec mu(1);
  mu << 1;
  const GaussianMixture ok(mu, SpdMatrix::identity(1));
  CHECK_THROWS_AS(sample(ok, 0, 1), std::invalid_argument);
}
