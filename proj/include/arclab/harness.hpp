#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "arclab/arc_set.hpp"
#include "arclab/equilibrium.hpp"
#include "arclab/functionals.hpp"
#include "arclab/t_set.hpp"

namespace arclab {

/// Coefficients drawn i.i.d. standard normal for a_0..a_n, b_1..b_n.
/// The stream is seeded from (seed, n) through std::seed_seq and the
/// uniforms are built from the top 53 bits of std::mt19937_64 draws, so a
/// given (n, seed) pair yields the same polynomial on every platform.
TrigPoly random_trigpoly(int n, std::uint64_t seed);

struct ExperimentConfig {
  std::string name = "experiment";
  std::shared_ptr<const TSet> tset;  // closed-form density when present
  ArcSet arcs;                       // otherwise solved by collocation
  std::vector<double> p_values = {0.5};
  std::vector<int> degrees = {8, 16, 32, 64};
  int seeds = 50;
  std::vector<int> k_values = {8, 16, 32, 64};  // sharpness sweeps
  QuadSpec quad;

  const ArcSet& support() const { return tset ? tset->support() : arcs; }
};

/// One functional evaluation. `index` holds the seed in Bernstein sweeps
/// and the Chebyshev index k in sharpness sweeps.
struct SweepRow {
  int n = 0;
  double p = 0.0;
  std::uint64_t index = 0;
  double A = 0.0;
  double B = 0.0;
  double ratio = 0.0;
  double quad_error = 0.0;
  double wall_time = 0.0;  // seconds
};

/// Largest observed A/B per degree, for one exponent p.
struct RatioTrend {
  double p = 0.0;
  std::vector<int> degrees;
  std::vector<double> max_ratio;
  bool ok = false;
};

struct SweepResult {
  std::string name;
  std::string kind;  // "bernstein" or "sharpness"
  std::vector<SweepRow> rows;
  std::vector<RatioTrend> trends;
  bool pass = false;
};

/// The excess max_n(A/B) - 1 must not grow along the degree ladder: each
/// positive part may exceed the previous by at most 10% (plus a 1e-6
/// absolute floor), and the last max ratio must stay below
/// max(1.05, first max ratio).
bool ratio_trend_ok(const std::vector<double>& max_ratios);

/// For each (p, n, seed): draws a random polynomial of degree n, computes
/// A and B over the whole support, and records the ratio.
SweepResult bernstein_sweep(const ExperimentConfig& cfg);

/// For each (p, k): the Chebyshev composition T_k(u) with effective degree
/// n = k N, for which A/B = 1 up to quadrature noise. Requires a T-set.
SweepResult sharpness_sweep(const ExperimentConfig& cfg);

/// CSV with header n,p,index,A,B,ratio,quad_error,wall_time.
void write_rows_csv(const SweepResult& result, const std::string& path);

/// JSON verdict: per-p trend data plus the overall pass flag.
void write_summary_json(const SweepResult& result, const std::string& path);

}  // namespace arclab
