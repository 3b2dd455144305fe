#include "arclab/trig_poly.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "arclab/arc_set.hpp"

namespace arclab {

TrigPoly::TrigPoly(std::vector<double> cos_coeffs, std::vector<double> sin_coeffs) {
  if (cos_coeffs.empty()) throw std::invalid_argument("TrigPoly: empty cosine coefficients");
  a_ = std::move(cos_coeffs);
  b_.assign(a_.size(), 0.0);
  if (sin_coeffs.size() == a_.size()) {
    for (std::size_t k = 1; k < a_.size(); ++k) b_[k] = sin_coeffs[k];
  } else if (sin_coeffs.size() == a_.size() - 1) {
    for (std::size_t k = 1; k < a_.size(); ++k) b_[k] = sin_coeffs[k - 1];
  } else if (!sin_coeffs.empty()) {
    throw std::invalid_argument("TrigPoly: sine coefficient count does not match degree");
  }
}

double TrigPoly::operator()(double t) const {
  const int d = degree();
  const double c2 = 2.0 * std::cos(t);
  double u1 = 0.0, u2 = 0.0;  // cosine series state
  double v1 = 0.0, v2 = 0.0;  // sine series state
  for (int k = d; k >= 1; --k) {
    const double u = c2 * u1 - u2 + a_[k];
    u2 = u1;
    u1 = u;
    const double v = c2 * v1 - v2 + b_[k];
    v2 = v1;
    v1 = v;
  }
  return a_[0] + 0.5 * c2 * u1 - u2 + std::sin(t) * v1;
}

TrigPoly TrigPoly::derivative() const {
  const int d = degree();
  std::vector<double> a(d + 1, 0.0), b(d + 1, 0.0);
  for (int k = 1; k <= d; ++k) {
    a[k] = k * b_[k];
    b[k] = -k * a_[k];
  }
  return TrigPoly(std::move(a), std::move(b));
}

TrigPoly& TrigPoly::operator+=(const TrigPoly& rhs) {
  if (rhs.a_.size() > a_.size()) {
    a_.resize(rhs.a_.size(), 0.0);
    b_.resize(rhs.b_.size(), 0.0);
  }
  for (std::size_t k = 0; k < rhs.a_.size(); ++k) a_[k] += rhs.a_[k];
  for (std::size_t k = 1; k < rhs.b_.size(); ++k) b_[k] += rhs.b_[k];
  return *this;
}

TrigPoly& TrigPoly::operator-=(const TrigPoly& rhs) {
  if (rhs.a_.size() > a_.size()) {
    a_.resize(rhs.a_.size(), 0.0);
    b_.resize(rhs.b_.size(), 0.0);
  }
  for (std::size_t k = 0; k < rhs.a_.size(); ++k) a_[k] -= rhs.a_[k];
  for (std::size_t k = 1; k < rhs.b_.size(); ++k) b_[k] -= rhs.b_[k];
  return *this;
}

TrigPoly& TrigPoly::operator*=(double s) {
  for (double& c : a_) c *= s;
  for (double& c : b_) c *= s;
  return *this;
}

TrigPoly TrigPoly::from_samples(const std::vector<double>& values) {
  const std::size_t count = values.size();
  if (count == 0 || count % 2 == 0)
    throw std::invalid_argument("from_samples: need an odd number (2m+1) of samples");
  const int m = static_cast<int>((count - 1) / 2);
  const double step = kTwoPi / static_cast<double>(count);
  std::vector<double> a(m + 1, 0.0), b(m + 1, 0.0);
  double mean = 0.0;
  for (double v : values) mean += v;
  a[0] = mean / static_cast<double>(count);
  for (int k = 1; k <= m; ++k) {
    double sc = 0.0, ss = 0.0;
    for (std::size_t j = 0; j < count; ++j) {
      const double ang = step * static_cast<double>(k) * static_cast<double>(j);
      sc += values[j] * std::cos(ang);
      ss += values[j] * std::sin(ang);
    }
    a[k] = 2.0 * sc / static_cast<double>(count);
    b[k] = 2.0 * ss / static_cast<double>(count);
  }
  return TrigPoly(std::move(a), std::move(b));
}

TrigPoly product(const TrigPoly& p, const TrigPoly& q) {
  const int m = p.degree() + q.degree();
  const std::size_t count = 2 * static_cast<std::size_t>(m) + 1;
  std::vector<double> samples(count);
  for (std::size_t j = 0; j < count; ++j) {
    const double t = kTwoPi * static_cast<double>(j) / static_cast<double>(count);
    samples[j] = p(t) * q(t);
  }
  return TrigPoly::from_samples(samples);
}

TrigPoly cheb_compose(int k, const TrigPoly& u) {
  if (k < 0) throw std::invalid_argument("cheb_compose: negative index");
  TrigPoly prev(1.0);
  if (k == 0) return prev;
  TrigPoly cur = u;
  for (int j = 1; j < k; ++j) {
    TrigPoly next = product(u, cur) * 2.0 - prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

namespace {

// Largest |p| attained near a bracketed sign change of (p^2)' = 2 p p'.
double polish_peak(const TrigPoly& p, const TrigPoly& dp, double lo, double hi) {
  auto slope = [&](double t) { return p(t) * dp(t); };
  double flo = slope(lo), fhi = slope(hi);
  if (flo == 0.0) return std::abs(p(lo));
  if (fhi == 0.0) return std::abs(p(hi));
  if ((flo > 0.0) == (fhi > 0.0)) return std::max(std::abs(p(lo)), std::abs(p(hi)));
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    const double fm = slope(mid);
    if (fm == 0.0) return std::abs(p(mid));
    if ((fm > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return std::abs(p(0.5 * (lo + hi)));
}

}  // namespace

double sup_norm(const TrigPoly& p, const ArcSet& x) {
  const TrigPoly dp = p.derivative();
  double best = 0.0;
  for (const Arc& arc : x.arcs()) {
    const int samples = 8 * std::max(1, p.degree()) + 16;
    const double len = arc.hi - arc.lo;
    std::vector<double> ts(samples), vals(samples);
    for (int i = 0; i < samples; ++i) {
      ts[i] = arc.lo + len * static_cast<double>(i) / static_cast<double>(samples - 1);
      vals[i] = std::abs(p(ts[i]));
      best = std::max(best, vals[i]);
    }
    for (int i = 1; i + 1 < samples; ++i) {
      if (vals[i] >= vals[i - 1] && vals[i] >= vals[i + 1]) {
        best = std::max(best, polish_peak(p, dp, ts[i - 1], ts[i + 1]));
      }
    }
  }
  return best;
}

double abs_pow(double x, double p) { return std::pow(std::abs(x), p); }

}  // namespace arclab
