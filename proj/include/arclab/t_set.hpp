#pragma once

#include <cstddef>
#include <vector>

#include "arclab/arc_set.hpp"
#include "arclab/trig_poly.hpp"

namespace arclab {

/// Inverse image E = u^{-1}[-1,1] of a real trig polynomial u of degree N
/// that traverses [-1,1] exactly 2N times. Stores the branch decomposition,
/// the interior points where |u| touches 1 with u' = 0, and enough local
/// data to evaluate the equilibrium density stably near those points.
class TSet {
 public:
  /// Validates the structure by locating all level-crossing and critical
  /// points of u; throws std::invalid_argument with a diagnostic when E is
  /// not a T-set (tangency inside, isolated contact, missing branches...).
  static TSet build(const TrigPoly& u);

  /// Degree-1 set with E = [-beta, beta]; beta must lie in (0, pi).
  static TSet single_arc(double beta);

  const TrigPoly& u() const { return u_; }
  const TrigPoly& u_prime() const { return du_; }
  int order() const { return order_; }           // N
  const ArcSet& support() const { return e_; }   // E
  /// 2N branch arcs, sorted; u is strictly monotone on each and covers
  /// [-1, 1] exactly once.
  const std::vector<Arc>& branches() const { return branches_; }
  /// Interior extremal angles (|u| = 1, u' = 0), sorted in [0, 2*pi).
  const std::vector<double>& inner_extremals() const { return extremals_; }
  /// Extremal angles lying inside component c of the support.
  std::vector<double> inner_extremals_of(std::size_t component) const;

  /// Preimage of y in branch h: the unique t there with u(t) = y, found by
  /// bisection and polished so |u(t) - y| <= 1e-12. Needs |y| <= 1.
  double branch_inverse(std::size_t h, double y) const;
  /// Index of the branch containing angle t.
  std::size_t branch_index(double t) const;

  /// Equilibrium density of E at t: |u'(t)| / (2 pi N sqrt(1 - u(t)^2)).
  /// Near interior extremal points the removable 0/0 is evaluated through a
  /// cancellation-free local series; within 1e-14 of a component endpoint
  /// the density blows up and a std::domain_error is thrown.
  double density(double t) const;

 private:
  struct ExtremalData {
    double t = 0.0;
    double sigma = 1.0;           // u(t) = sigma = +-1
    std::vector<double> pk, qk;   // rotated coefficients around t
  };

  double density_near_extremal(const ExtremalData& ex, double delta) const;

  TrigPoly u_, du_;
  int order_ = 0;
  ArcSet e_;
  std::vector<Arc> branches_;
  std::vector<double> extremals_;
  std::vector<ExtremalData> extremal_data_;
};

/// Closed-form density of the T-set's support at angle t (see TSet::density).
double density_closed_form(const TSet& t, double angle);

/// The quotient |density(t_h) * (dt_h/dt)| / density(t) with
/// dt_h/dt = u'(t)/u'(t_h); identically 1 on branch interiors. Angles within
/// 1e-8 of a branch endpoint are rejected with std::domain_error because the
/// quotient degrades there numerically.
double branch_jacobian_identity(const TSet& t, double angle, std::size_t h);

/// T_k(u(t)) and its t-derivative, evaluated through the angle variable
/// theta = arccos(u(t)) rather than through expanded trig coefficients. The
/// expanded form of T_k(u) reaches cosh(k * arccosh(sup |u|)) off the support
/// and its coefficients grow accordingly, so for k beyond a dozen or so the
/// coefficient evaluation cancels to noise exactly where the values are of
/// order one. These forms are stable for every k but are only defined on the
/// support (|u| <= 1); angles outside it raise std::domain_error.
double chebyshev_value(const TSet& t, int k, double angle);
double chebyshev_derivative(const TSet& t, int k, double angle);

}  // namespace arclab
