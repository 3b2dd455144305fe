#pragma once

#include <functional>

#include "arclab/arc_set.hpp"
#include "arclab/equilibrium.hpp"
#include "arclab/trig_poly.hpp"

namespace arclab {

struct QuadSpec {
  double rel_tol = 1e-9;
  int max_subdivisions = 1 << 14;
  /// Substitute t = a + u^2 (resp. b - u^2) at flagged endpoints so the
  /// 1/sqrt singularities of the density become bounded.
  bool endpoint_substitution = true;
};

struct QuadResult {
  double value = 0.0;
  double error = 0.0;  // conservative absolute estimate
  int segments = 0;
  bool converged = false;
};

/// Adaptive Gauss-Kronrod 7-15 over [interval.lo, interval.hi], worst
/// segment first. Flag an endpoint as singular when the integrand is
/// integrable but unbounded there; the substitution keeps the quadrature
/// nodes strictly away from it. Non-convergence within the subdivision
/// budget is reported through `converged`, never thrown.
QuadResult integrate_singular(const std::function<double(double)>& f, const Arc& interval,
                              bool singular_lo, bool singular_hi, const QuadSpec& spec = {});

/// The two L^p functionals of a trig polynomial against an equilibrium
/// density, over a subset X of the support E, plus their ratios to the
/// full-support values:
///   A = int_X |tn'(t) / (n 2 pi w(t))|^p w(t) dt,   a = A(X) / A(E),
///   B = int_X |tn(t)|^p w(t) dt,                    b = B(X) / B(E).
/// The normalizing degree n is the caller's notion of effective degree and
/// need not equal deg(tn).
struct FunctionalValues {
  double A = 0.0;
  double B = 0.0;
  double a = 0.0;
  double b = 0.0;
  double quad_error = 0.0;  // summed absolute estimates of all integrals
};

/// Throws std::invalid_argument if X is not covered by the support of dens
/// or n < 1 or p <= 0; throws std::runtime_error when any integral fails to
/// converge within the subdivision budget.
FunctionalValues functionals(const TrigPoly& tn, int n, const ArcSet& x,
                             const DensityModel& dens, double p, const QuadSpec& spec = {});

/// Same, with the polynomial given by evaluators instead of coefficients.
/// Expanded coefficient forms lose precision when the polynomial is huge off
/// the support (Chebyshev compositions, symmetrized polynomials), while their
/// values on the support stay of order one; this overload lets such
/// polynomials be integrated through a stable value recipe. Both callables
/// are only ever invoked inside the support.
FunctionalValues functionals(const std::function<double(double)>& tn,
                             const std::function<double(double)>& dtn, int n, const ArcSet& x,
                             const DensityModel& dens, double p, const QuadSpec& spec = {});

}  // namespace arclab
