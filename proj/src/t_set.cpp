#include "arclab/t_set.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <string>

namespace arclab {

namespace {

// Bisection down to floating-point resolution; assumes f changes sign (or
// vanishes) between lo and hi.
template <class F>
double bisect_root(const F& f, double lo, double hi, double flo) {
  for (int it = 0; it < 80 && hi - lo > 4e-16 * (1.0 + std::abs(lo)); ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// All roots of f in [0, 2*pi), located by sign changes on a uniform grid.
template <class F>
std::vector<double> grid_roots(const F& f, int samples) {
  std::vector<double> roots;
  const double step = kTwoPi / samples;
  double fprev = f(0.0);
  for (int i = 0; i < samples; ++i) {
    const double t0 = step * i;
    const double t1 = step * (i + 1);
    const double fnext = f(t1);
    if (fprev == 0.0) {
      roots.push_back(wrap_angle(t0));
    } else if ((fprev > 0.0) != (fnext > 0.0)) {
      roots.push_back(wrap_angle(bisect_root(f, t0, t1, fprev)));
    }
    fprev = fnext;
  }
  std::sort(roots.begin(), roots.end());
  std::vector<double> unique;
  for (double r : roots) {
    if (unique.empty() || (circle_distance(unique.back(), r) > 1e-9 &&
                           circle_distance(unique.front(), r) > 1e-9)) {
      unique.push_back(r);
    }
  }
  return unique;
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", x);
  return buf;
}

}  // namespace

TSet TSet::build(const TrigPoly& u) {
  const int d = u.degree();
  if (d < 1) throw std::invalid_argument("TSet: generator must have degree >= 1");
  TSet ts;
  ts.u_ = u;
  ts.du_ = u.derivative();
  ts.order_ = d;
  const TrigPoly d2u = ts.du_.derivative();

  const int samples = std::max(4096, 64 * d * d);
  const auto crit = grid_roots([&](double t) { return ts.du_(t); }, samples);

  std::vector<double> extremals;
  for (double z : crit) {
    const double v = u(z);
    if (std::abs(v) < 1.0 - 1e-10) {
      throw std::invalid_argument("TSet: u has a critical value " + fmt(v) +
                                  " strictly inside (-1,1) at t=" + fmt(z) +
                                  "; branches cannot be monotone");
    }
    if (std::abs(v) > 1.0 + 1e-10) continue;  // critical point in a gap
    const double sigma = v > 0.0 ? 1.0 : -1.0;
    const double curv = d2u(z);
    if (std::abs(curv) <= 1e-8) {
      throw std::invalid_argument("TSet: degenerate tangency at t=" + fmt(z) +
                                  " (|u| touches 1 with u'' ~ 0)");
    }
    if (sigma * curv > 0.0) {
      throw std::invalid_argument("TSet: isolated contact at t=" + fmt(z) +
                                  " (|u| >= 1 in a punctured neighborhood)");
    }
    extremals.push_back(z);
  }

  // Transversal crossings of the levels +-1. Roots hiding right next to an
  // extremal are rounding slivers of the tangency, not real crossings.
  std::vector<double> points = extremals;
  for (double level : {1.0, -1.0}) {
    for (double r : grid_roots([&](double t) { return u(t) - level; }, samples)) {
      bool near_extremal = false;
      for (double z : extremals) {
        if (circle_distance(r, z) < 1e-6) {
          near_extremal = true;
          break;
        }
      }
      bool dup = false;
      for (double q : points) {
        if (circle_distance(r, q) < 1e-9) {
          dup = true;
          break;
        }
      }
      if (!near_extremal && !dup) points.push_back(r);
    }
  }
  if (points.empty()) {
    throw std::invalid_argument("TSet: u never meets the levels +-1; the preimage is empty");
  }
  std::sort(points.begin(), points.end());

  // Split the circle at those points and keep the pieces where |u| < 1.
  const std::size_t npts = points.size();
  std::vector<Arc> inside;
  for (std::size_t j = 0; j < npts; ++j) {
    const double lo = points[j];
    const double hi = (j + 1 < npts) ? points[j + 1] : points[0] + kTwoPi;
    if (std::abs(u(0.5 * (lo + hi))) < 1.0) inside.push_back(Arc{lo, hi});
  }
  if (static_cast<int>(inside.size()) != 2 * d) {
    throw std::invalid_argument("TSet: expected " + std::to_string(2 * d) + " branches, found " +
                                std::to_string(inside.size()) +
                                "; u does not traverse [-1,1] exactly 2N times");
  }

  for (const Arc& br : inside) {
    const double vlo = u(br.lo);
    const double vhi = u(br.hi);
    if (std::abs(std::abs(vlo) - 1.0) > 1e-8 || std::abs(std::abs(vhi) - 1.0) > 1e-8) {
      throw std::invalid_argument("TSet: branch endpoint does not sit on a level +-1");
    }
    if ((vlo > 0.0) == (vhi > 0.0)) {
      throw std::invalid_argument("TSet: branch over [" + fmt(br.lo) + "," + fmt(br.hi) +
                                  "] starts and ends on the same level");
    }
    const double dir = vhi > vlo ? 1.0 : -1.0;
    for (int i = 1; i < 32; ++i) {
      const double tt = br.lo + br.length() * i / 32.0;
      if (dir * ts.du_(tt) <= 0.0) {
        throw std::invalid_argument("TSet: u is not strictly monotone on the branch over [" +
                                    fmt(br.lo) + "," + fmt(br.hi) + "]");
      }
    }
  }
  ts.branches_ = inside;

  // Merge branches sharing an endpoint into support components.
  const std::size_t nb = inside.size();
  std::vector<char> is_start(nb, 0);
  bool any_start = false;
  for (std::size_t i = 0; i < nb; ++i) {
    const Arc& prev = inside[(i + nb - 1) % nb];
    if (circle_distance(prev.hi, inside[i].lo) > 1e-12) {
      is_start[i] = 1;
      any_start = true;
    }
  }
  if (!any_start) {
    ts.e_ = ArcSet::full_circle();
  } else {
    std::vector<Arc> comps;
    for (std::size_t s = 0; s < nb; ++s) {
      if (!is_start[s]) continue;
      double len = 0.0;
      std::size_t i = s;
      do {
        len += inside[i].length();
        i = (i + 1) % nb;
      } while (!is_start[i]);
      comps.push_back(Arc{inside[s].lo, inside[s].lo + len});
    }
    ts.e_ = ArcSet(std::move(comps));
  }

  // Every extremal must be the shared endpoint of two adjacent branches.
  for (double z : extremals) {
    bool shared = false;
    for (std::size_t i = 0; i < nb && !shared; ++i) {
      shared = circle_distance(inside[i].lo, z) < 1e-9 &&
               circle_distance(inside[(i + nb - 1) % nb].hi, z) < 1e-9;
    }
    if (!shared) {
      throw std::invalid_argument("TSet: extremal point at t=" + fmt(z) +
                                  " is not interior to the support");
    }
  }
  ts.extremals_ = extremals;

  for (double z : extremals) {
    ExtremalData ed;
    ed.t = z;
    ed.sigma = u(z) > 0.0 ? 1.0 : -1.0;
    ed.pk.resize(d + 1);
    ed.qk.resize(d + 1);
    ed.pk[0] = ed.sigma * u.cos_coeff(0);
    ed.qk[0] = 0.0;
    for (int k = 1; k <= d; ++k) {
      const double ck = std::cos(k * z);
      const double sk = std::sin(k * z);
      ed.pk[k] = ed.sigma * (u.cos_coeff(k) * ck + u.sin_coeff(k) * sk);
      ed.qk[k] = ed.sigma * (u.sin_coeff(k) * ck - u.cos_coeff(k) * sk);
    }
    ts.extremal_data_.push_back(std::move(ed));
  }
  return ts;
}

TSet TSet::single_arc(double beta) {
  if (!(beta > 0.0 && beta < kPi)) {
    throw std::invalid_argument("single_arc: beta must lie strictly inside (0, pi)");
  }
  const double c = std::cos(beta);
  return build(TrigPoly({(-1.0 - c) / (1.0 - c), 2.0 / (1.0 - c)}, {}));
}

std::vector<double> TSet::inner_extremals_of(std::size_t component) const {
  if (component >= e_.size()) throw std::invalid_argument("inner_extremals_of: bad component");
  const Arc& comp = e_.arcs()[component];
  std::vector<double> out;
  for (double z : extremals_) {
    if (wrap_angle(z - comp.lo) <= comp.length() + 1e-12) out.push_back(z);
  }
  return out;
}

double TSet::branch_inverse(std::size_t h, double y) const {
  if (h >= branches_.size()) throw std::invalid_argument("branch_inverse: bad branch index");
  if (std::abs(y) > 1.0 + 1e-12) throw std::invalid_argument("branch_inverse: |y| > 1");
  y = std::clamp(y, -1.0, 1.0);
  const Arc& br = branches_[h];
  double a = br.lo;
  double b = br.hi;
  const bool increasing = u_(b) > u_(a);
  for (int it = 0; it < 80 && b - a > 4e-16 * (1.0 + std::abs(b)); ++it) {
    const double mid = 0.5 * (a + b);
    if ((u_(mid) < y) == increasing) a = mid;
    else b = mid;
  }
  double t = 0.5 * (a + b);
  for (int it = 0; it < 3; ++it) {  // polish where the slope is healthy
    const double dv = du_(t);
    if (std::abs(dv) < 1e-9) break;
    const double step = (u_(t) - y) / dv;
    if (!(std::abs(step) < 0.5 * br.length())) break;
    t = std::clamp(t - step, br.lo, br.hi);
  }
  return t;
}

std::size_t TSet::branch_index(double t) const {
  const double tw = wrap_angle(t);
  for (std::size_t i = 0; i < branches_.size(); ++i) {
    if (wrap_angle(tw - branches_[i].lo) <= branches_[i].length() + 1e-12) return i;
  }
  throw std::invalid_argument("branch_index: angle is not on any branch");
}

double TSet::density(double t) const {
  const double tw = wrap_angle(t);
  if (!e_.contains(tw)) throw std::invalid_argument("density: angle outside the support");
  const double tau = 0.05 / std::max(1, order_);
  if (!extremal_data_.empty()) {
    const ExtremalData* nearest = nullptr;
    double best = std::numeric_limits<double>::infinity();
    double best_delta = 0.0;
    for (const ExtremalData& ex : extremal_data_) {
      const double delta = std::remainder(tw - ex.t, kTwoPi);
      if (std::abs(delta) < best) {
        best = std::abs(delta);
        nearest = &ex;
        best_delta = delta;
      }
    }
    if (best < tau) return density_near_extremal(*nearest, best_delta);
  }
  const double w = u_(tw);
  if (std::abs(w) >= 1.0 - 1e-14) {
    throw std::domain_error("density: angle within rounding distance of a support endpoint");
  }
  return std::abs(du_(tw)) / (kTwoPi * order_ * std::sqrt((1.0 - w) * (1.0 + w)));
}

// Near an extremal z write V(delta) = sigma u(z + delta) = sum P_k cos k
// delta + Q_k sin k delta. Both 1 - V and V' vanish at delta = 0 (to second
// and first order), so the density quotient |V'| / sqrt(1 - V^2) is formed
// from the scaled series
//   g(delta) = (1 - V)/delta^2,   h(delta) = V'(delta)/delta,
// whose terms are individually smooth: the defining relations sum P_k = 1
// and sum k Q_k = 0 are substituted exactly rather than left to cancel.
double TSet::density_near_extremal(const ExtremalData& ex, double delta) const {
  const int d = order_;
  double g = 0.0;
  double h = 0.0;
  double v = ex.pk[0];
  for (int k = 1; k <= d; ++k) {
    const double x = k * delta;
    const double sh = std::sin(0.5 * x);
    v += ex.pk[k] * std::cos(x) + ex.qk[k] * std::sin(x);

    const double ratio_half = (delta == 0.0) ? 0.5 * k : sh / delta;  // sin(k delta/2)/delta
    g += ex.pk[k] * 2.0 * ratio_half * ratio_half;
    double smx;  // (sin x - x) / delta^2
    if (std::abs(x) < 0.5) {
      const double x2 = x * x;
      smx = -(static_cast<double>(k) * k * k * delta) / 6.0 *
            (1.0 - x2 / 20.0 * (1.0 - x2 / 42.0 * (1.0 - x2 / 72.0)));
    } else {
      smx = (std::sin(x) - x) / (delta * delta);
    }
    g -= ex.qk[k] * smx;

    const double sinc = (x == 0.0) ? 1.0 : std::sin(x) / x;
    h -= static_cast<double>(k) * k * ex.pk[k] * sinc;
    if (delta != 0.0) h -= ex.qk[k] * k * 2.0 * sh * sh / delta;
  }
  const double one_plus = 1.0 + v;
  if (!(g > 0.0) || !(one_plus > 0.0)) {
    throw std::domain_error("density: local expansion degenerate near an extremal");
  }
  return std::abs(h) / (kTwoPi * order_ * std::sqrt(g * one_plus));
}

double density_closed_form(const TSet& t, double angle) { return t.density(angle); }

double branch_jacobian_identity(const TSet& ts, double angle, std::size_t h) {
  if (h >= ts.branches().size()) {
    throw std::invalid_argument("branch_jacobian_identity: bad branch index");
  }
  const double tw = wrap_angle(angle);
  const std::size_t own = ts.branch_index(tw);
  const Arc& br0 = ts.branches()[own];
  const double off0 = wrap_angle(tw - br0.lo);
  if (off0 < 1e-8 || br0.length() - off0 < 1e-8) {
    throw std::domain_error("branch_jacobian_identity: angle too close to a branch endpoint");
  }
  const double y = ts.u()(tw);
  const double th = ts.branch_inverse(h, y);
  const Arc& brh = ts.branches()[h];
  const double offh = th - brh.lo;
  if (offh < 1e-8 || brh.length() - offh < 1e-8) {
    throw std::domain_error("branch_jacobian_identity: preimage too close to a branch endpoint");
  }
  return std::abs(ts.density(th) * (ts.u_prime()(tw) / ts.u_prime()(th))) / ts.density(tw);
}

namespace {

double sinc(double x) { return x == 0.0 ? 1.0 : std::sin(x) / x; }

// sin(k theta) / sin(theta), finite at theta = 0 and pi (values +-k there).
double cheb_sine_ratio(int k, double theta) {
  if (theta <= kPi / 2) return k * sinc(k * theta) / sinc(theta);
  const double phi = kPi - theta;
  const double sign = (k % 2 == 0) ? -1.0 : 1.0;
  return sign * k * sinc(k * phi) / sinc(phi);
}

double support_angle(const TSet& ts, int k, double angle) {
  if (k < 0) throw std::invalid_argument("chebyshev composition: negative index");
  const double v = ts.u()(wrap_angle(angle));
  if (std::abs(v) > 1.0 + 1e-9) {
    throw std::domain_error("chebyshev composition: angle outside the support");
  }
  return std::acos(std::clamp(v, -1.0, 1.0));
}

}  // namespace

double chebyshev_value(const TSet& ts, int k, double angle) {
  return std::cos(k * support_angle(ts, k, angle));
}

double chebyshev_derivative(const TSet& ts, int k, double angle) {
  // d/dt cos(k arccos u) = k u'(t) sin(k theta) / sin(theta)
  const double theta = support_angle(ts, k, angle);
  return k * ts.u_prime()(wrap_angle(angle)) * cheb_sine_ratio(k, theta);
}

}  // namespace arclab
