#pragma once

#include <limits>
#include <string>

#include "robustgauss/common.hpp"

namespace robustgauss {

/// A closed, origin-symmetric convex perturbation set. The adversary may add
/// any delta with norm(delta) <= eps. Only the lp family ships as a concrete
/// instance; the interface is the extension point for other bodies.
class Ball {
 public:
  virtual ~Ball() = default;

  /// Minkowski functional of the body.
  virtual double norm(const Vec& x) const = 0;

  /// Dual norm: sup of x.y over norm(y) <= 1.
  virtual double dual_norm(const Vec& x) const = 0;

  /// Linear minimization oracle: argmax_{norm(z) <= eps} g.z.
  /// Attains g.lmo(g, eps) == eps * dual_norm(g).
  virtual Vec lmo(const Vec& g, double eps) const = 0;

  /// True when a closed-form Euclidean projection is available.
  virtual bool has_projection() const { return false; }

  /// Euclidean projection onto {norm(z) <= eps}. Throws when unsupported;
  /// solvers fall back to the lmo-only (Frank-Wolfe) path.
  virtual Vec project(const Vec& x, double eps) const;

  virtual std::string name() const = 0;
};

/// The lp ball, p in [1, inf]. Values of p at or above kInfCrossover are
/// treated as infinity throughout (norm, dual, lmo), keeping the three
/// operations mutually consistent and avoiding overflow in |x|^p.
class BallSpec final : public Ball {
 public:
  static constexpr double kInfCrossover = 1e6;

  static BallSpec lp(double p);
  static BallSpec l1() { return lp(1.0); }
  static BallSpec l2() { return lp(2.0); }
  static BallSpec linf();

  /// Grammar: "linf" | "l2" | "l1" | "lp:<p>" with decimal p >= 1.
  static BallSpec parse(const std::string& text);

  double p() const { return p_; }
  bool is_linf() const { return p_ >= kInfCrossover; }

  /// The ball whose norm is this ball's dual norm (lq with 1/p + 1/q = 1).
  BallSpec dual() const;

  double norm(const Vec& x) const override;
  double dual_norm(const Vec& x) const override;
  Vec lmo(const Vec& g, double eps) const override;
  bool has_projection() const override;
  Vec project(const Vec& x, double eps) const override;
  std::string name() const override;

 private:
  explicit BallSpec(double p) : p_(p) {}

  double p_;  // +infinity encodes the linf member of the family
};

}  // namespace robustgauss
