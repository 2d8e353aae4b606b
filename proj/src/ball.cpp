#include "robustgauss/ball.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <vector>

namespace robustgauss {

namespace {

void require_finite(const Vec& x, const char* where) {
  if (!x.allFinite()) {
    throw std::invalid_argument(std::string(where) + ": input has non-finite entries");
  }
}

void require_radius(double eps, const char* where) {
  if (!(eps >= 0.0) || !std::isfinite(eps)) {
    throw std::invalid_argument(std::string(where) + ": eps must be finite and >= 0");
  }
}

double sign_of(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

}  // namespace

Vec Ball::project(const Vec&, double) const {
  throw std::invalid_argument(name() + ": no closed-form projection; use the lmo (Frank-Wolfe) path");
}

BallSpec BallSpec::lp(double p) {
  if (!(p >= 1.0)) {
    throw std::invalid_argument("BallSpec: p must be >= 1 (got " + std::to_string(p) + "); p < 1 is not a norm");
  }
  return BallSpec(p);
}

BallSpec BallSpec::linf() { return BallSpec(std::numeric_limits<double>::infinity()); }

BallSpec BallSpec::parse(const std::string& text) {
  if (text == "linf") return linf();
  if (text == "l1") return l1();
  if (text == "l2") return l2();
  if (text.rfind("lp:", 0) == 0) {
    const std::string arg = text.substr(3);
    std::size_t used = 0;
    double p = 0.0;
    try {
      p = std::stod(arg, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("ball spec \"" + text + "\": cannot parse p");
    }
    if (used != arg.size() || !std::isfinite(p)) {
      throw std::invalid_argument("ball spec \"" + text + "\": cannot parse p");
    }
    return lp(p);
  }
  throw std::invalid_argument("ball spec \"" + text + "\": expected linf, l2, l1, or lp:<p>");
}

BallSpec BallSpec::dual() const {
  if (is_linf()) return l1();
  if (p_ == 1.0) return linf();
  return lp(p_ / (p_ - 1.0));
}

std::string BallSpec::name() const {
  if (is_linf()) return "linf";
  if (p_ == 1.0) return "l1";
  if (p_ == 2.0) return "l2";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "lp:%g", p_);
  return buf;
}

double BallSpec::norm(const Vec& x) const {
  require_finite(x, "norm");
  if (x.size() == 0) return 0.0;
  if (is_linf()) return x.cwiseAbs().maxCoeff();
  if (p_ == 1.0) return x.cwiseAbs().sum();
  if (p_ == 2.0) return x.norm();
  // General p: rescale by the max entry so |x_i|^p cannot overflow.
  const double m = x.cwiseAbs().maxCoeff();
  if (m == 0.0) return 0.0;
  double acc = 0.0;
  for (Index i = 0; i < x.size(); ++i) {
    acc += std::pow(std::abs(x[i]) / m, p_);
  }
  return m * std::pow(acc, 1.0 / p_);
}

double BallSpec::dual_norm(const Vec& x) const { return dual().norm(x); }

Vec BallSpec::lmo(const Vec& g, double eps) const {
  require_finite(g, "lmo");
  require_radius(eps, "lmo");
  Vec z = Vec::Zero(g.size());
  if (eps == 0.0 || g.size() == 0) return z;
  if (is_linf()) {
    // Signwise extreme point; coordinates with zero gradient stay at 0
    // (minimal-norm maximizer).
    for (Index i = 0; i < g.size(); ++i) z[i] = eps * sign_of(g[i]);
    return z;
  }
  if (p_ == 1.0) {
    // All mass on the largest |g_i|; lowest index wins ties.
    Index best = 0;
    double best_abs = std::abs(g[0]);
    for (Index i = 1; i < g.size(); ++i) {
      if (std::abs(g[i]) > best_abs) {
        best = i;
        best_abs = std::abs(g[i]);
      }
    }
    if (best_abs == 0.0) return z;
    z[best] = eps * sign_of(g[best]);
    return z;
  }
  if (p_ == 2.0) {
    const double n = g.norm();
    if (n == 0.0) return z;
    return (eps / n) * g;
  }
  // General p: z_i proportional to sgn(g_i)|g_i|^(q-1), scaled to the sphere.
  const double q = p_ / (p_ - 1.0);
  const double m = g.cwiseAbs().maxCoeff();
  if (m == 0.0) return z;
  Vec w(g.size());
  for (Index i = 0; i < g.size(); ++i) w[i] = std::pow(std::abs(g[i]) / m, q - 1.0);
  const double wp = norm(w);
  for (Index i = 0; i < g.size(); ++i) z[i] = eps * sign_of(g[i]) * w[i] / wp;
  return z;
}

bool BallSpec::has_projection() const { return is_linf() || p_ == 1.0 || p_ == 2.0; }

Vec BallSpec::project(const Vec& x, double eps) const {
  require_finite(x, "project");
  require_radius(eps, "project");
  if (is_linf()) return x.cwiseMax(-eps).cwiseMin(eps);
  if (p_ == 2.0) {
    const double n = x.norm();
    if (n <= eps) return x;
    return (eps / n) * x;
  }
  if (p_ == 1.0) {
    // Sort-and-threshold (Duchi et al. 2008): O(d log d), exact.
    if (x.cwiseAbs().sum() <= eps) return x;
    std::vector<double> u(x.data(), x.data() + x.size());
    for (double& v : u) v = std::abs(v);
    std::sort(u.begin(), u.end(), std::greater<double>());
    double cum = 0.0;
    double tau = 0.0;
    for (std::size_t j = 0; j < u.size(); ++j) {
      cum += u[j];
      const double t = (cum - eps) / static_cast<double>(j + 1);
      if (u[j] > t) tau = t;
    }
    Vec z(x.size());
    for (Index i = 0; i < x.size(); ++i) {
      z[i] = sign_of(x[i]) * std::max(std::abs(x[i]) - tau, 0.0);
    }
    return z;
  }
  return Ball::project(x, eps);  // throws
}

}  // namespace robustgauss
