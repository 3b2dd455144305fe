#include "arclab/lemmas.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace arclab {

namespace {

// The window together with its bordering cells, as one interval.
Arc extend_by_borders(const Block& blk) {
  Arc ext = blk.h;
  for (const Arc& b : blk.border) {
    if (circle_distance(b.hi, ext.lo) < 1e-9) ext.lo -= b.length();
    else if (circle_distance(b.lo, ext.hi) < 1e-9) ext.hi += b.length();
  }
  return ext;
}

bool inside_one_branch(const TSet& t, const Arc& ext) {
  for (const Arc& branch : t.branches()) {
    const double off = wrap_angle(ext.lo - branch.lo);
    if (off <= branch.length() + 1e-9 && off + ext.length() <= branch.length() + 1e-9) return true;
  }
  return false;
}

void require_matching_support(const TSet& t, const DensityModel& dens, const char* who) {
  const ArcSet& a = t.support();
  const ArcSet& b = dens.support();
  bool same = a.size() == b.size();
  for (std::size_t i = 0; same && i < a.size(); ++i) {
    same = circle_distance(a.arcs()[i].lo, b.arcs()[i].lo) < 1e-9 &&
           std::abs(a.arcs()[i].length() - b.arcs()[i].length()) < 1e-9;
  }
  if (!same) {
    throw std::invalid_argument(std::string(who) + ": density model belongs to a different set");
  }
}

}  // namespace

bool block_inside_branch(const TSet& t, const Block& blk) {
  return inside_one_branch(t, extend_by_borders(blk));
}

QProfile fast_decreasing_q(const Arc& h, int n, const ParamSet& params) {
  params.validate();
  if (n < 2) throw std::invalid_argument("fast_decreasing_q: n must be >= 2");
  const double nk = std::pow(static_cast<double>(n), params.kappa);
  const double cell = 1.0 / (2.0 * nk);  // narrowest legal small cell
  if (h.length() < cell - 1e-12) {
    throw std::invalid_argument("fast_decreasing_q: window narrower than one small cell");
  }
  if (h.length() + 2.0 * cell >= kTwoPi - 1e-9) {
    throw std::invalid_argument("fast_decreasing_q: window leaves no room outside its borders");
  }

  const int r = static_cast<int>(std::ceil(std::pow(static_cast<double>(n), params.theta)));
  const double n2t = std::pow(static_cast<double>(n), 2.0 * params.theta);
  const int m = static_cast<int>(std::floor(2.0 * n2t / r)) + 1;

  // r-th power of the Fejer kernel of order m: nonnegative, mass
  // concentrated in |s| <~ r/deg, trig degree r(m-1) <= 2 n^{2 theta}.
  std::vector<double> fc(m);
  fc[0] = static_cast<double>(m);
  for (int j = 1; j < m; ++j) fc[j] = 2.0 * (m - j);
  const TrigPoly fejer(fc, {});
  TrigPoly kern = fejer;
  for (int i = 1; i < r; ++i) kern = product(kern, fejer);
  const double c0 = kern.cos_coeff(0);

  // q = normalized convolution of the kernel with the indicator of the
  // window widened by a quarter-cell, so the rise to 1 happens inside the
  // bordering cells rather than on the window itself.
  const double eps = 1.0 / (4.0 * nk);
  const double alpha = h.lo - eps;
  const double beta = h.hi + eps;
  const int dq = kern.degree();
  std::vector<double> qc(dq + 1, 0.0), qs(dq + 1, 0.0);
  qc[0] = (beta - alpha) / kTwoPi;
  for (int j = 1; j <= dq; ++j) {
    const double scale = kern.cos_coeff(j) / (kTwoPi * c0 * j);
    qc[j] = scale * (std::sin(j * beta) - std::sin(j * alpha));
    qs[j] = scale * (std::cos(j * alpha) - std::cos(j * beta));
  }

  QProfile out;
  out.q = TrigPoly(qc, qs);
  out.n = n;
  out.theta = params.theta;
  out.kappa = params.kappa;
  out.degree_bound = static_cast<int>(std::floor(3.0 * n2t));
  if (out.q.degree() > out.degree_bound) {
    throw std::runtime_error("fast_decreasing_q: kernel degree exceeded its budget");
  }

  // Flatness is measured, not assumed: deviation from 1 across the window,
  // size outside the window plus one bordering cell on each side, and the
  // derivative away from the bordering cells.
  const int grid = 50000;
  const TrigPoly dq_poly = out.q.derivative();
  double dev_on = 0.0, qp_max = 0.0;
  for (int i = 0; i <= grid; ++i) {
    const double t = h.lo + h.length() * i / grid;
    dev_on = std::max(dev_on, std::abs(out.q(t) - 1.0));
    qp_max = std::max(qp_max, std::abs(dq_poly(t)));
  }
  double dev_off = 0.0;
  const double off_lo = h.hi + cell;
  const double off_hi = h.lo + kTwoPi - cell;
  for (int i = 0; i <= grid; ++i) {
    const double t = off_lo + (off_hi - off_lo) * i / grid;
    dev_off = std::max(dev_off, std::abs(out.q(t)));
    qp_max = std::max(qp_max, std::abs(dq_poly(t)));
  }
  out.f_hat = std::max(dev_on, dev_off);
  out.qprime_hat = qp_max;
  return out;
}

QConstants fit_q_constants(const Arc& h, const ParamSet& params, const std::vector<int>& ladder) {
  if (ladder.size() < 2) {
    throw std::invalid_argument("fit_q_constants: need at least two degrees");
  }
  QConstants out;
  out.ladder = ladder;
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (int n : ladder) {
    const QProfile prof = fast_decreasing_q(h, n, params);
    out.f_hats.push_back(prof.f_hat);
    const double x = std::pow(static_cast<double>(n), params.theta);
    const double y = std::log(std::max(prof.f_hat, 1e-300));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    out.c3 = std::max(out.c3, std::pow(prof.f_hat, params.p) *
                                  std::pow(static_cast<double>(n), params.gamma));
  }
  const double k = static_cast<double>(ladder.size());
  const double slope = (k * sxy - sx * sy) / (k * sxx - sx * sx);
  out.c1 = -slope;
  out.c2 = std::exp((sy - slope * sx) / k);
  return out;
}

namespace {

// Clenshaw sum of a Chebyshev series at y in [-1, 1].
double cheb_series(const std::vector<double>& c, double y) {
  if (c.empty()) return 0.0;
  double b1 = 0.0, b2 = 0.0;
  for (std::size_t j = c.size(); j-- > 1;) {
    const double b0 = 2.0 * y * b1 - b2 + c[j];
    b2 = b1;
    b1 = b0;
  }
  return y * b1 - b2 + c[0];
}

// d/dy of the same series: sum_{j>=1} c_j j U_{j-1}(y), second-kind
// recurrence; bounded growth for |y| <= 1.
double cheb_series_derivative(const std::vector<double>& c, double y) {
  double s = 0.0;
  double u0 = 1.0, u1 = 2.0 * y;
  if (c.size() > 1) s += c[1] * u0;
  if (c.size() > 2) s += 2.0 * c[2] * u1;
  for (std::size_t j = 3; j < c.size(); ++j) {
    const double u2 = 2.0 * y * u1 - u0;
    s += c[j] * static_cast<double>(j) * u2;
    u0 = u1;
    u1 = u2;
  }
  return s;
}

double clamp_to_support(const TSet& t, double angle, const char* who) {
  const double y = t.u()(wrap_angle(angle));
  if (std::abs(y) > 1.0 + 1e-9) {
    throw std::domain_error(std::string(who) + ": angle outside the support");
  }
  return std::clamp(y, -1.0, 1.0);
}

}  // namespace

SymmetrizedPoly symmetrize(const TSet& t, const TrigPoly& v) {
  const std::size_t nb = t.branches().size();
  const int sdeg = v.degree() / t.order();
  const int mfit = 2 * (sdeg + 1);

  auto branch_sum = [&](double y) {
    double s = 0.0;
    for (std::size_t h = 0; h < nb; ++h) s += v(t.branch_inverse(h, y));
    return s;
  };

  Eigen::MatrixXd a(mfit, sdeg + 1);
  Eigen::VectorXd rhs(mfit);
  for (int i = 0; i < mfit; ++i) {
    const double y = std::cos(kPi * (i + 0.5) / mfit);
    rhs(i) = branch_sum(y);
    double t0 = 1.0, t1 = y;
    a(i, 0) = 1.0;
    if (sdeg >= 1) a(i, 1) = y;
    for (int j = 2; j <= sdeg; ++j) {
      const double t2 = 2.0 * y * t1 - t0;
      a(i, j) = t2;
      t0 = t1;
      t1 = t2;
    }
  }
  const Eigen::VectorXd c = a.colPivHouseholderQr().solve(rhs);

  SymmetrizedPoly out;
  out.s_coeffs.assign(c.data(), c.data() + c.size());
  out.nstar = v.degree();

  const int mval = std::max(64, 4 * mfit);
  for (int i = 0; i < mval; ++i) {
    const double y = std::cos(kPi * (i + 0.5) / mval);
    double direct = 0.0;
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (std::size_t h = 0; h < nb; ++h) {
      const double th = t.branch_inverse(h, y);
      direct += v(th);
      // composed value seen from this preimage; the spread over h measures
      // how consistently the branches invert
      const double val = cheb_series(out.s_coeffs, clamp_to_support(t, th, "symmetrize"));
      lo = std::min(lo, val);
      hi = std::max(hi, val);
    }
    out.fit_residual = std::max(out.fit_residual, std::abs(cheb_series(out.s_coeffs, y) - direct));
    out.branch_consistency = std::max(out.branch_consistency, hi - lo);
  }
  return out;
}

double symmetrized_value(const TSet& t, const SymmetrizedPoly& s, double angle) {
  return cheb_series(s.s_coeffs, clamp_to_support(t, angle, "symmetrized polynomial"));
}

double symmetrized_derivative(const TSet& t, const SymmetrizedPoly& s, double angle) {
  const double y = clamp_to_support(t, angle, "symmetrized polynomial");
  return cheb_series_derivative(s.s_coeffs, y) * t.u_prime()(wrap_angle(angle));
}

std::vector<LemmaReport> verify_symmetrization_lemmas(const TSet& t, const TrigPoly& tn, int n,
                                                      const Block& blk, const ParamSet& params,
                                                      const DensityModel& dens,
                                                      const QuadSpec& spec) {
  params.validate();
  require_matching_support(t, dens, "verify_symmetrization_lemmas");
  if (!inside_one_branch(t, extend_by_borders(blk))) {
    throw std::invalid_argument(
        "verify_symmetrization_lemmas: window plus borders must sit inside one branch");
  }
  const double p = params.p;
  const double two_n = static_cast<double>(t.branches().size());

  const QProfile qp = fast_decreasing_q(blk.h, n, params);
  const TrigPoly tq = product(tn, qp.q);
  const int nstar = n + qp.q.degree();
  const SymmetrizedPoly sym = symmetrize(t, tq);

  const ArcSet& e = dens.support();
  const ArcSet window({blk.h});
  const FunctionalValues fv_e = functionals(tn, n, e, dens, p, spec);
  const FunctionalValues fv_h = functionals(tn, n, window, dens, p, spec);
  const auto star = [&](double x) { return symmetrized_value(t, sym, x); };
  const auto dstar = [&](double x) { return symmetrized_derivative(t, sym, x); };
  const FunctionalValues fv_star = functionals(star, dstar, nstar, e, dens, p, spec);
  double a_border = 0.0, b_border = 0.0, border_err = 0.0;
  if (!blk.border.empty()) {
    const FunctionalValues fv_b = functionals(tn, n, ArcSet(blk.border), dens, p, spec);
    a_border = fv_b.a;
    b_border = fv_b.b;
    border_err = fv_b.quad_error;
  }

  const double fhat_p = std::pow(qp.f_hat, p);
  const double tail = std::pow(static_cast<double>(n), (2.0 * params.theta - 1.0) * p);
  const double three_p = std::pow(3.0, p);
  const double err_sum =
      (fv_e.quad_error + fv_h.quad_error + fv_star.quad_error + border_err) * (2.0 * two_n + 4.0);

  LemmaReport ra;
  ra.lemma = "symmetrized-A";
  ra.n = n;
  ra.p = p;
  ra.lhs = std::abs(std::pow(static_cast<double>(nstar) / n, p) * fv_star.A - two_n * fv_h.A);
  ra.rhs = two_n * (4.0 * fhat_p + a_border) * fv_e.A + two_n * 4.0 * three_p * tail * fv_e.B;
  ra.slack = ra.rhs - ra.lhs;
  ra.quad_error = err_sum;

  LemmaReport rb;
  rb.lemma = "symmetrized-B";
  rb.n = n;
  rb.p = p;
  rb.lhs = std::abs(fv_star.B - two_n * fv_h.B);
  rb.rhs = two_n * (3.0 * fhat_p + b_border) * fv_e.B;
  rb.slack = rb.rhs - rb.lhs;
  rb.quad_error = err_sum;

  return {ra, rb};
}

std::vector<LemmaReport> verify_localization(const TSet& t, const TrigPoly& tn, int n,
                                             const Block& blk, const ParamSet& params,
                                             const DensityModel& dens, const QuadSpec& spec) {
  params.validate();
  require_matching_support(t, dens, "verify_localization");
  const double p = params.p;
  const QProfile qp = fast_decreasing_q(blk.h, n, params);
  const TrigPoly tq = product(tn, qp.q);
  const int nstar = n + qp.q.degree();

  const ArcSet& e = dens.support();
  const ArcSet window({blk.h});
  const FunctionalValues fv_e = functionals(tn, n, e, dens, p, spec);
  const FunctionalValues fv_h = functionals(tn, n, window, dens, p, spec);
  const FunctionalValues fq_e = functionals(tq, nstar, e, dens, p, spec);
  const FunctionalValues fq_h = functionals(tq, nstar, window, dens, p, spec);

  const double fhat_p = std::pow(qp.f_hat, p);
  const double tail = std::pow(static_cast<double>(n), (2.0 * params.theta - 1.0) * p);
  const double three_p = std::pow(3.0, p);
  const double err_sum =
      2.0 * (fv_e.quad_error + fv_h.quad_error + fq_e.quad_error + fq_h.quad_error);

  auto report = [&](const char* name, double lhs, double rhs) {
    LemmaReport r;
    r.lemma = name;
    r.n = n;
    r.p = p;
    r.lhs = lhs;
    r.rhs = rhs;
    r.slack = rhs - lhs;
    r.quad_error = err_sum;
    return r;
  };

  return {
      report("localized-A-window", std::abs(fq_h.A - fv_h.A),
             (fhat_p + three_p * tail) * fv_e.A + three_p * tail * fv_e.B),
      report("localized-A-support", fq_e.A, fv_e.A + three_p * tail * fv_e.B),
      report("localized-A-window-tail", fq_h.A, fv_h.A + three_p * tail * fv_e.B),
      report("localized-B-support", fq_e.B, fv_e.B),
      report("localized-B-window", fq_h.B, fv_h.B),
  };
}

double lukashov_sup_ratio(const TrigPoly& tn, int n, const TSet& t, int grid_per_arc,
                          double collar) {
  if (n < 1) throw std::invalid_argument("lukashov_sup_ratio: effective degree must be >= 1");
  if (grid_per_arc < 2) throw std::invalid_argument("lukashov_sup_ratio: grid too small");
  const TrigPoly dtn = tn.derivative();
  const double sup = sup_norm(tn, t.support());
  if (!(sup > 0.0)) throw std::invalid_argument("lukashov_sup_ratio: zero polynomial");
  double best = 0.0;
  for (const Arc& a : t.support().arcs()) {
    const double pad = t.support().is_full_circle() ? 0.0 : collar;
    const double lo = a.lo + pad;
    const double len = a.length() - 2.0 * pad;
    for (int i = 0; i < grid_per_arc; ++i) {
      const double tt = lo + len * (i + 0.5) / grid_per_arc;
      best = std::max(best, std::abs(dtn(tt)) / (n * kTwoPi * t.density(tt)));
    }
  }
  return best / sup;
}

double nikolskii_value(const TrigPoly& tn, const Arc& interval, const DensityModel& dens,
                       double p, const QuadSpec& spec) {
  if (!(p > 0.0 && p <= 1.0)) throw std::invalid_argument("nikolskii_value: p must lie in (0, 1]");
  const ArcSet& e = dens.support();
  if (!e.covers(interval, 1e-9)) {
    throw std::invalid_argument("nikolskii_value: interval leaves the support");
  }
  auto f = [&](double t) {
    const double inward = t < interval.midpoint() ? 1e-12 : -1e-12;
    try {
      return abs_pow(tn(t), p) * dens.density(t);
    } catch (const std::domain_error&) {
      return abs_pow(tn(t), p) * dens.density(t + inward);
    } catch (const std::invalid_argument&) {
      return abs_pow(tn(t), p) * dens.density(t + inward);
    }
  };
  bool slo = false, shi = false;
  for (double s : e.endpoints()) {
    slo = slo || circle_distance(interval.lo, s) < 1e-9;
    shi = shi || circle_distance(interval.hi, s) < 1e-9;
  }
  const QuadResult r = integrate_singular(f, interval, slo, shi, spec);
  if (!r.converged) {
    throw std::runtime_error("nikolskii_value: quadrature failed to converge");
  }
  return r.value / std::pow(sup_norm(tn, e), p);
}

}  // namespace arclab
