#pragma once

#include <vector>

namespace arclab {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 6.28318530717958647692;

class ArcSet;

/// Real trigonometric polynomial
///   P(t) = a_0 + sum_{k=1}^{d} (a_k cos kt + b_k sin kt).
///
/// Coefficients are stored densely; evaluation uses the Clenshaw recurrence
/// so values stay accurate for degrees in the hundreds.
class TrigPoly {
 public:
  TrigPoly() : a_(1, 0.0), b_(1, 0.0) {}
  explicit TrigPoly(double constant) : a_(1, constant), b_(1, 0.0) {}

  /// cos_coeffs has size d+1 (index k holds a_k); sin_coeffs may have size d+1
  /// (index 0 ignored) or d (index k-1 holds b_k) or be empty.
  TrigPoly(std::vector<double> cos_coeffs, std::vector<double> sin_coeffs);

  int degree() const { return static_cast<int>(a_.size()) - 1; }
  double cos_coeff(int k) const { return k < static_cast<int>(a_.size()) ? a_[k] : 0.0; }
  double sin_coeff(int k) const {
    return (k >= 1 && k < static_cast<int>(b_.size())) ? b_[k] : 0.0;
  }
  const std::vector<double>& cos_coeffs() const { return a_; }
  const std::vector<double>& sin_coeffs() const { return b_; }

  double operator()(double t) const;

  /// d/dt: a_k cos kt + b_k sin kt  ->  k b_k cos kt - k a_k sin kt.
  TrigPoly derivative() const;

  TrigPoly& operator+=(const TrigPoly& rhs);
  TrigPoly& operator-=(const TrigPoly& rhs);
  TrigPoly& operator*=(double s);

  friend TrigPoly operator+(TrigPoly lhs, const TrigPoly& rhs) { lhs += rhs; return lhs; }
  friend TrigPoly operator-(TrigPoly lhs, const TrigPoly& rhs) { lhs -= rhs; return lhs; }
  friend TrigPoly operator*(TrigPoly lhs, double s) { lhs *= s; return lhs; }
  friend TrigPoly operator*(double s, TrigPoly rhs) { rhs *= s; return rhs; }

  /// Exact trigonometric interpolation from 2m+1 samples taken at the
  /// equispaced angles t_j = 2*pi*j/(2m+1), j = 0..2m.
  static TrigPoly from_samples(const std::vector<double>& values);

 private:
  std::vector<double> a_;  // a_[k], k = 0..d
  std::vector<double> b_;  // b_[k], k = 0..d; b_[0] unused (0)
};

/// Product of two trig polynomials, degree dp+dq, computed by sampling at
/// 2(dp+dq)+1 equispaced angles and interpolating back.
TrigPoly product(const TrigPoly& p, const TrigPoly& q);

/// Chebyshev composition T_k(u(t)) via the three-term recurrence
/// T_{j+1} = 2 u T_j - T_{j-1}; result degree k * deg(u).
TrigPoly cheb_compose(int k, const TrigPoly& u);

/// Supremum of |p| over the arc set: oversample each arc at 8*deg+16 points
/// (endpoints included), then polish every local maximum of p^2 by bracketing
/// the sign change of (p^2)' to 1e-12 in angle.
double sup_norm(const TrigPoly& p, const ArcSet& x);

/// |x|^p. Used throughout the L^p functionals; for 0 < p < 1 it obeys
/// | |a|^p - |b|^p | <= |a-b|^p and |a+b|^p <= |a|^p + |b|^p.
double abs_pow(double x, double p);

}  // namespace arclab
