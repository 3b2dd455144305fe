#include "arclab/equilibrium.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace arclab {

namespace {

struct GaussLegendre {
  std::vector<double> x, w;  // nodes and weights on [-1, 1]
};

GaussLegendre gauss_legendre(int n) {
  GaussLegendre gl;
  gl.x.resize(n);
  gl.w.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    gl.x[i] = -x;
    gl.x[n - 1 - i] = x;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    gl.w[i] = w;
    gl.w[n - 1 - i] = w;
  }
  return gl;
}

// ln(2 |sin(d/2)| / |d|): the part of the circle log-kernel left over after
// the line kernel ln|d| is pulled out. Even, analytic for |d| < 2 pi.
double smooth_log_ratio(double d) {
  const double ad = std::abs(d);
  if (ad == 0.0) return 0.0;
  return std::log(2.0 * std::sin(0.5 * ad) / ad);
}

// m_k(x0) = (1/pi) int_0^pi ln|x0 - cos phi| cos(k phi) dphi, exactly.
void log_moments(double x0, int kmax, std::vector<double>& m) {
  m.resize(kmax + 1);
  if (std::abs(x0) <= 1.0) {
    const double phi0 = std::acos(std::clamp(x0, -1.0, 1.0));
    m[0] = -std::log(2.0);
    for (int k = 1; k <= kmax; ++k) m[k] = -std::cos(k * phi0) / k;
  } else {
    const double ax = std::abs(x0);
    const double z = ax + std::sqrt((ax - 1.0) * (ax + 1.0));
    m[0] = std::log(0.5 * z);
    double zk = 1.0;
    for (int k = 1; k <= kmax; ++k) {
      zk /= z;
      m[k] = ((x0 < 0.0 && (k & 1)) ? zk : -zk) / k;
    }
  }
}

struct ArcGeom {
  double c = 0.0, rho = 0.0;
};

struct Workspace {
  std::vector<ArcGeom> geom;
  GaussLegendre gl;
  std::vector<double> phi;        // GL nodes mapped to [0, pi]
  std::vector<double> cos_table;  // cos(k phi_g), (kmax+1) x G
  int kmax = 0;

  Workspace(const ArcSet& e, int kmax_, int gauss_points) : gl(gauss_legendre(gauss_points)) {
    kmax = kmax_;
    for (const Arc& a : e.arcs()) geom.push_back({a.midpoint(), 0.5 * a.length()});
    const int g = gauss_points;
    phi.resize(g);
    for (int i = 0; i < g; ++i) phi[i] = 0.5 * kPi * (gl.x[i] + 1.0);
    cos_table.resize(static_cast<std::size_t>(kmax + 1) * g);
    for (int k = 0; k <= kmax; ++k)
      for (int i = 0; i < g; ++i) cos_table[static_cast<std::size_t>(k) * g + i] = std::cos(k * phi[i]);
  }

  // I_{k,l}(t) = (1/pi) int_0^pi ln(2|sin((t - s_l(phi))/2)|) cos(k phi) dphi
  // for one arc l, written into out[0..kmax].
  void potential_row(double t, std::size_t l, double* out) const {
    const ArcGeom& g = geom[l];
    const double tp = g.c + std::remainder(t - g.c, kTwoPi);
    std::vector<double> mom;
    log_moments((tp - g.c) / g.rho, kmax, mom);
    for (int k = 0; k <= kmax; ++k) out[k] = mom[k];
    out[0] += std::log(g.rho);
    const int ng = static_cast<int>(gl.x.size());
    for (int i = 0; i < ng; ++i) {
      const double r = 0.5 * gl.w[i] * smooth_log_ratio(tp - g.c - g.rho * std::cos(phi[i]));
      for (int k = 0; k <= kmax; ++k) out[k] += r * cos_table[static_cast<std::size_t>(k) * ng + i];
    }
  }
};

CollocationSolution solve_with_basis(const ArcSet& e, int basis) {
  const std::size_t m = e.size();
  const Workspace ws(e, basis, 160);
  const int cols = static_cast<int>(m) * (basis + 1) + 1;
  const int rows = static_cast<int>(m) * (basis + 2) + 1;
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(rows, cols);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(rows);

  std::vector<double> scratch(basis + 1);
  int r = 0;
  for (std::size_t l = 0; l < m; ++l) {
    for (int j = 0; j < basis + 2; ++j) {
      const double phi = kPi * (j + 0.5) / (basis + 2);
      const double t = ws.geom[l].c + ws.geom[l].rho * std::cos(phi);
      for (std::size_t l2 = 0; l2 < m; ++l2) {
        ws.potential_row(t, l2, scratch.data());
        for (int k = 0; k <= basis; ++k) a(r, static_cast<int>(l2) * (basis + 1) + k) = scratch[k];
      }
      a(r, cols - 1) = 1.0;
      ++r;
    }
  }
  for (std::size_t l = 0; l < m; ++l) a(r, static_cast<int>(l) * (basis + 1)) = 100.0;
  rhs(r) = 100.0;  // total mass 1, weighted so least squares keeps it tight

  const Eigen::VectorXd x = a.colPivHouseholderQr().solve(rhs);

  CollocationSolution sol;
  sol.basis_size = basis;
  sol.robin_constant = x(cols - 1);
  sol.coeffs.resize(m);
  for (std::size_t l = 0; l < m; ++l) {
    sol.coeffs[l].assign(basis + 1, 0.0);
    for (int k = 0; k <= basis; ++k) sol.coeffs[l][k] = x(static_cast<int>(l) * (basis + 1) + k);
  }

  // Residual of the defining equation on a grid unrelated to the
  // collocation points.
  double resid = 0.0;
  for (std::size_t l = 0; l < m; ++l) {
    for (int i = 0; i < 151; ++i) {
      const double phi = kPi * (i + 0.5) / 151.0;
      const double t = ws.geom[l].c + ws.geom[l].rho * std::cos(phi);
      double eq = sol.robin_constant;
      for (std::size_t l2 = 0; l2 < m; ++l2) {
        ws.potential_row(t, l2, scratch.data());
        for (int k = 0; k <= basis; ++k) eq += sol.coeffs[l2][k] * scratch[k];
      }
      resid = std::max(resid, std::abs(eq));
    }
  }
  sol.residual = resid;
  return sol;
}

bool density_nonnegative(const CollocationSolution& sol) {
  for (const auto& ck : sol.coeffs) {
    for (int i = 0; i < 200; ++i) {
      const double phi = kPi * (i + 0.5) / 200.0;
      double g = 0.0;
      for (std::size_t k = 0; k < ck.size(); ++k) g += ck[k] * std::cos(k * phi);
      if (g < -1e-8) return false;
    }
  }
  return true;
}

}  // namespace

CollocationSolution solve_general(const ArcSet& e) {
  if (e.empty()) throw std::invalid_argument("solve_general: empty arc set");
  if (e.is_full_circle()) {
    throw std::invalid_argument("solve_general: the full circle has the uniform density 1/(2 pi)");
  }
  CollocationSolution best;
  best.residual = std::numeric_limits<double>::infinity();
  for (int basis : {16, 32, 64}) {
    CollocationSolution sol = solve_with_basis(e, basis);
    if (sol.residual <= 1e-7 && density_nonnegative(sol)) return sol;
    if (sol.residual < best.residual) best = sol;
  }
  throw std::runtime_error("solve_general: collocation residual stalled at " +
                           std::to_string(best.residual) + " (needs <= 1e-7)");
}

DensityModel DensityModel::closed_form(TSet t) {
  DensityModel dm;
  dm.tset_ = std::make_shared<const TSet>(std::move(t));
  return dm;
}

DensityModel DensityModel::collocation(const ArcSet& e) {
  DensityModel dm;
  dm.support_ = e;
  if (e.is_full_circle()) {
    dm.uniform_ = true;
    return dm;
  }
  dm.sol_ = std::make_shared<const CollocationSolution>(solve_general(e));
  return dm;
}

const ArcSet& DensityModel::support() const { return tset_ ? tset_->support() : support_; }

double DensityModel::density(double t) const {
  if (tset_) return tset_->density(t);
  if (uniform_) {
    return 1.0 / kTwoPi;
  }
  const std::size_t l = support_.arc_index(t);
  if (l == ArcSet::npos) throw std::invalid_argument("density: angle outside the support");
  const Arc& a = support_.arcs()[l];
  const double c = a.midpoint();
  const double rho = 0.5 * a.length();
  const double x = std::clamp(std::remainder(t - c, kTwoPi) / rho, -1.0, 1.0);
  if (std::abs(x) >= 1.0 - 1e-14) {
    throw std::domain_error("density: angle within rounding distance of a support endpoint");
  }
  const double phi = std::acos(x);
  double g = 0.0;
  const auto& ck = sol_->coeffs[l];
  for (std::size_t k = 0; k < ck.size(); ++k) g += ck[k] * std::cos(k * phi);
  return g / (kPi * rho * std::sqrt((1.0 - x) * (1.0 + x)));
}

}  // namespace arclab
