#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "arclab/arc_set.hpp"
#include "arclab/equilibrium.hpp"
#include "arclab/functionals.hpp"
#include "arclab/t_set.hpp"
#include "arclab/trig_poly.hpp"

namespace arclab {

/// A trig polynomial q that is ~1 on the window H, ~0 off H and its
/// bordering cells, built by convolving an r-th power of a Fejer kernel
/// with the indicator of a slightly enlarged window. The flatness actually
/// achieved is measured on dense grids rather than assumed:
///   f_hat      = max( max_H |q - 1|, max_{off H u H_b} |q| )
///   qprime_hat = max |q'| off the bordering cells.
struct QProfile {
  TrigPoly q;
  int n = 0;
  double theta = 0.0;
  double kappa = 0.0;
  int degree_bound = 0;  // floor(3 n^{2 theta})
  double f_hat = 0.0;
  double qprime_hat = 0.0;
};

/// Window h must be at least one small cell wide (length >= 1/(2 n^kappa)).
QProfile fast_decreasing_q(const Arc& h, int n, const ParamSet& params);

/// Decay constants fitted over a degree ladder: the model is
/// f_hat(n) ~ c2 * exp(-c1 * n^theta), fitted by least squares on
/// log f_hat against n^theta; c3 = max over the ladder of f_hat^p * n^gamma
/// (the lemma needs this bounded).
struct QConstants {
  double c1 = 0.0;
  double c2 = 0.0;
  double c3 = 0.0;
  std::vector<int> ladder;
  std::vector<double> f_hats;
};

QConstants fit_q_constants(const Arc& h, const ParamSet& params, const std::vector<int>& ladder);

/// T*(t) = sum over the 2N branches of v at the branch preimage of u(t);
/// equals S(u(t)) for an algebraic polynomial S of degree <= deg(v)/N,
/// recovered by a Chebyshev least-squares fit. T* is kept in this composed
/// form: expanding S(u) into trig coefficients is the same ill-conditioned
/// step as for the Chebyshev compositions (see chebyshev_value), so values
/// and derivatives on the support go through symmetrized_value /
/// symmetrized_derivative instead.
struct SymmetrizedPoly {
  std::vector<double> s_coeffs;    // Chebyshev coefficients of S
  int nstar = 0;                   // deg(v), the degree bound of T*
  double fit_residual = 0.0;       // max |S(u(t)) - sum_h v(t_h)| on a grid
  double branch_consistency = 0.0; // max spread of the sum over preimages
};

SymmetrizedPoly symmetrize(const TSet& t, const TrigPoly& v);

/// T*(t) = S(u(t)) and its t-derivative, via theta = arccos(u(t)); defined
/// on the support only (std::domain_error outside).
double symmetrized_value(const TSet& t, const SymmetrizedPoly& s, double angle);
double symmetrized_derivative(const TSet& t, const SymmetrizedPoly& s, double angle);

/// One verified inequality: lhs <= rhs was established with slack
/// rhs - lhs; a negative slack beyond quadrature error means the bound
/// failed numerically.
struct LemmaReport {
  std::string lemma;
  int n = 0;
  double p = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
  double quad_error = 0.0;
};

/// True when the window and its bordering cells sit inside a single branch
/// of the T-set; the symmetrization step is only defined for such blocks.
bool block_inside_branch(const TSet& t, const Block& blk);

/// Checks the two symmetrization estimates for the block's window H:
///  |(n*/n)^p A(T*, E) - 2N A(tn, H)| <= 2N (4 f^p + a(tn, border)) A(tn, E)
///                                        + 8N 3^p (n^{2 theta}/n)^p B(tn, E)
///  |B(T*, E) - 2N B(tn, H)|          <= 2N (3 f^p + b(tn, border)) B(tn, E)
/// where T* symmetrizes tn * q^(window) and n* = n + deg q. The window and
/// its borders must lie inside one branch (throws std::invalid_argument
/// otherwise).
std::vector<LemmaReport> verify_symmetrization_lemmas(const TSet& t, const TrigPoly& tn, int n,
                                                      const Block& blk, const ParamSet& params,
                                                      const DensityModel& dens,
                                                      const QuadSpec& spec = {});

/// Checks the localization estimates for multiplying by the window profile
/// q (degree dq, n* = n + dq normalizes tn q):
///  |A(tn q, H) - A(tn, H)| <= (f^p + 3^p (n^{2 theta}/n)^p) A(tn, E)
///                              + 3^p (n^{2 theta}/n)^p B(tn, E)
///  A(tn q, X) <= A(tn, X) + 3^p (n^{2 theta}/n)^p B(tn, E)
///  B(tn q, X) <= B(tn, X)
/// with X = E and X = H reported separately.
std::vector<LemmaReport> verify_localization(const TSet& t, const TrigPoly& tn, int n,
                                             const Block& blk, const ParamSet& params,
                                             const DensityModel& dens, const QuadSpec& spec = {});

/// max_t |tn'(t)| / (n 2 pi w(t)) over the support (sampled on a per-arc
/// grid that stays `collar` away from component endpoints, where the bound
/// degenerates), divided by sup_E |tn|. The sharp inequality says this is
/// at most 1 + o(1) for deg tn <= n.
double lukashov_sup_ratio(const TrigPoly& tn, int n, const TSet& t, int grid_per_arc = 2048,
                          double collar = 1e-4);

/// int_I |tn|^p w dt  /  sup_E |tn|^p, the quantity whose lower bound
/// c(p, E, I) n^{-2} expresses that no polynomial concentrates too little
/// mass on a fixed subinterval I of the support.
double nikolskii_value(const TrigPoly& tn, const Arc& interval, const DensityModel& dens,
                       double p, const QuadSpec& spec = {});

}  // namespace arclab
