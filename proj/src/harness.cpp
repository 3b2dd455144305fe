#include "arclab/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <random>
#include <stdexcept>

#include "json.hpp"

namespace arclab {

TrigPoly random_trigpoly(int n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("random_trigpoly: degree must be >= 1");
  std::seed_seq seq{static_cast<unsigned>(seed & 0xffffffffu), static_cast<unsigned>(seed >> 32),
                    static_cast<unsigned>(n), 0x9e3779b9u};
  std::mt19937_64 rng(seq);
  auto uniform = [&rng]() { return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53; };
  double cache = 0.0;
  bool cached = false;
  auto normal = [&]() {
    if (cached) {
      cached = false;
      return cache;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    cache = r * std::sin(kTwoPi * u2);
    cached = true;
    return r * std::cos(kTwoPi * u2);
  };
  std::vector<double> ac(n + 1), bs(n + 1, 0.0);
  for (int k = 0; k <= n; ++k) ac[k] = normal();
  for (int k = 1; k <= n; ++k) bs[k] = normal();
  return TrigPoly(ac, bs);
}

bool ratio_trend_ok(const std::vector<double>& max_ratios) {
  if (max_ratios.size() < 2) return true;
  if (!(max_ratios.back() <= std::max(1.05, max_ratios.front()))) return false;
  double prev = std::max(max_ratios.front() - 1.0, 0.0);
  for (std::size_t i = 1; i < max_ratios.size(); ++i) {
    const double cur = std::max(max_ratios[i] - 1.0, 0.0);
    if (cur > 1.1 * prev + 1e-6) return false;
    prev = cur;
  }
  return true;
}

namespace {

DensityModel model_for(const ExperimentConfig& cfg) {
  if (cfg.tset) return DensityModel::closed_form(*cfg.tset);
  if (cfg.arcs.empty()) throw std::invalid_argument("experiment: no arc system given");
  return DensityModel::collocation(cfg.arcs);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

SweepResult bernstein_sweep(const ExperimentConfig& cfg) {
  if (cfg.p_values.empty() || cfg.degrees.empty()) {
    throw std::invalid_argument("bernstein_sweep: empty p or degree list");
  }
  if (!std::is_sorted(cfg.degrees.begin(), cfg.degrees.end())) {
    throw std::invalid_argument("bernstein_sweep: degrees must be ascending");
  }
  if (cfg.seeds < 1) throw std::invalid_argument("bernstein_sweep: need at least one seed");
  const DensityModel dens = model_for(cfg);
  const ArcSet& e = dens.support();

  SweepResult res;
  res.name = cfg.name;
  res.kind = "bernstein";
  res.pass = true;
  for (double p : cfg.p_values) {
    RatioTrend trend;
    trend.p = p;
    trend.degrees = cfg.degrees;
    for (int n : cfg.degrees) {
      double worst = 0.0;
      for (int s = 0; s < cfg.seeds; ++s) {
        const auto t0 = std::chrono::steady_clock::now();
        const TrigPoly tn = random_trigpoly(n, static_cast<std::uint64_t>(s));
        const FunctionalValues fv = functionals(tn, n, e, dens, p, cfg.quad);
        SweepRow row;
        row.n = n;
        row.p = p;
        row.index = static_cast<std::uint64_t>(s);
        row.A = fv.A;
        row.B = fv.B;
        row.ratio = fv.A / fv.B;
        row.quad_error = fv.quad_error;
        row.wall_time = seconds_since(t0);
        res.rows.push_back(row);
        worst = std::max(worst, row.ratio);
      }
      trend.max_ratio.push_back(worst);
    }
    trend.ok = ratio_trend_ok(trend.max_ratio);
    res.pass = res.pass && trend.ok;
    res.trends.push_back(trend);
  }
  return res;
}

SweepResult sharpness_sweep(const ExperimentConfig& cfg) {
  if (!cfg.tset) {
    throw std::invalid_argument("sharpness_sweep: needs a T-set (the extremal family lives on one)");
  }
  if (cfg.p_values.empty() || cfg.k_values.empty()) {
    throw std::invalid_argument("sharpness_sweep: empty p or k list");
  }
  const DensityModel dens = DensityModel::closed_form(*cfg.tset);
  const ArcSet& e = dens.support();
  const int order = cfg.tset->order();

  SweepResult res;
  res.name = cfg.name;
  res.kind = "sharpness";
  res.pass = true;
  for (double p : cfg.p_values) {
    RatioTrend trend;
    trend.p = p;
    for (int k : cfg.k_values) {
      if (k < 1) throw std::invalid_argument("sharpness_sweep: k must be >= 1");
      const auto t0 = std::chrono::steady_clock::now();
      // Through the angle variable: the coefficient form of T_k(u) is
      // unusable past small k (see chebyshev_value).
      const TSet& ts = *cfg.tset;
      const auto tk = [&ts, k](double t) { return chebyshev_value(ts, k, t); };
      const auto dtk = [&ts, k](double t) { return chebyshev_derivative(ts, k, t); };
      const int n = k * order;
      const FunctionalValues fv = functionals(tk, dtk, n, e, dens, p, cfg.quad);
      SweepRow row;
      row.n = n;
      row.p = p;
      row.index = static_cast<std::uint64_t>(k);
      row.A = fv.A;
      row.B = fv.B;
      row.ratio = fv.A / fv.B;
      row.quad_error = fv.quad_error;
      row.wall_time = seconds_since(t0);
      res.rows.push_back(row);
      trend.degrees.push_back(n);
      trend.max_ratio.push_back(row.ratio);
      res.pass = res.pass && std::abs(row.ratio - 1.0) <= 0.05;
    }
    trend.ok = true;
    for (double r : trend.max_ratio) trend.ok = trend.ok && std::abs(r - 1.0) <= 0.05;
    res.trends.push_back(trend);
  }
  return res;
}

void write_rows_csv(const SweepResult& result, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("write_rows_csv: cannot open " + path);
  f << "n,p,index,A,B,ratio,quad_error,wall_time\n" << std::setprecision(17);
  for (const SweepRow& r : result.rows) {
    f << r.n << ',' << r.p << ',' << r.index << ',' << r.A << ',' << r.B << ',' << r.ratio << ','
      << r.quad_error << ',' << r.wall_time << '\n';
  }
}

void write_summary_json(const SweepResult& result, const std::string& path) {
  nlohmann::json j;
  j["name"] = result.name;
  j["kind"] = result.kind;
  j["pass"] = result.pass;
  j["row_count"] = result.rows.size();
  nlohmann::json per = nlohmann::json::array();
  for (const RatioTrend& t : result.trends) {
    per.push_back({{"p", t.p},
                   {"degrees", t.degrees},
                   {"max_ratio", t.max_ratio},
                   {"trend_ok", t.ok}});
  }
  j["per_p"] = per;
  std::ofstream f(path);
  if (!f) throw std::runtime_error("write_summary_json: cannot open " + path);
  f << j.dump(2) << "\n";
}

}  // namespace arclab
