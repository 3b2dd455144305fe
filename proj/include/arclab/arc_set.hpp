#pragma once

#include <cstddef>
#include <vector>

#include "arclab/trig_poly.hpp"

namespace arclab {

class TSet;
class DensityModel;

/// Closed arc of the unit circle described by angles. Always lo < hi and
/// hi - lo <= 2*pi; hi may exceed 2*pi when the arc crosses angle 0.
struct Arc {
  double lo = 0.0;
  double hi = 0.0;
  double length() const { return hi - lo; }
  double midpoint() const { return 0.5 * (lo + hi); }
};

/// Wrap an angle into [0, 2*pi).
double wrap_angle(double t);

/// Distance between two angles along the circle, in [0, pi].
double circle_distance(double s, double t);

/// Finite union of closed, pairwise disjoint arcs of the unit circle,
/// kept sorted by starting angle. The full circle is the single arc
/// [0, 2*pi]. At most one arc wraps across angle 0; it is stored with
/// hi > 2*pi so every arc is an honest real interval.
class ArcSet {
 public:
  ArcSet() = default;
  explicit ArcSet(std::vector<Arc> arcs);
  static ArcSet full_circle();
  static ArcSet interval(double lo, double hi);

  const std::vector<Arc>& arcs() const { return arcs_; }
  std::size_t size() const { return arcs_.size(); }
  bool empty() const { return arcs_.empty(); }
  bool is_full_circle() const;
  double total_length() const;

  bool contains(double t, double tol = 1e-12) const;
  /// Index of the arc containing t, or npos.
  std::size_t arc_index(double t, double tol = 1e-12) const;
  /// Circle distance from t to the nearest arc endpoint (infinity for the
  /// full circle, which has no boundary).
  double endpoint_distance(double t) const;
  /// All component endpoints; empty for the full circle.
  std::vector<double> endpoints() const;
  /// True if [lo, hi] lies inside this set (as a circle subset).
  bool covers(const Arc& a, double tol = 1e-12) const;

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

 private:
  std::vector<Arc> arcs_;
};

/// Exponent bundle for the localization machinery. Valid combinations obey
/// 1/2 > theta > 4*kappa > 0, 0 < gamma < kappa/2, and (1-2*theta)*p >= gamma
/// whenever p <= 1.
struct ParamSet {
  double p = 0.5;
  double theta = 0.25;
  double kappa = 1.0 / 32.0;
  double gamma = 1.0 / 65.0;

  static ParamSet defaults(double p);
  void validate() const;
};

/// Equal cells of one arc set component, each of width in
/// [1/(2 n^kappa), 1/n^kappa].
struct SmallPartition {
  int n = 0;
  double kappa = 0.0;
  std::vector<Arc> cells;                   // ordered along the circle
  std::vector<std::size_t> component_of;    // component index per cell
  std::vector<std::size_t> component_size;  // cells per component
};

/// Splits every component of e into ceil(L * n^kappa) equal cells. Rejects
/// components shorter than 1/n^kappa.
SmallPartition partition_small(const ArcSet& e, int n, double kappa);

/// A contiguous run of cells (the window H) together with the bordering
/// cells on each side where they exist.
struct Block {
  int n = 0;
  double kappa = 0.0;
  std::vector<std::size_t> cell_indices;  // contiguous, one component
  Arc h;                                  // union of the chosen cells
  std::vector<Arc> border;                // up to two bordering cells
};

/// Block from `count` cells of one component starting at cell index `first`
/// (cyclic within the component when the component is the full circle).
Block make_block(const SmallPartition& part, std::size_t first, std::size_t count);

struct BlockProperties {
  bool inside_branch = false;  // window and borders fit in one branch
  bool a_small = false;        // a(tn, border) <= n^-gamma
  bool b_small = false;        // b(tn, border) <= n^-gamma
  bool h_short = false;        // |H| <= 4 n^{gamma-kappa}
  double a_border = 0.0;
  double b_border = 0.0;
};

BlockProperties block_properties(const TSet& t, const TrigPoly& tn, const Block& blk,
                                 const ParamSet& params, const DensityModel& dens);

}  // namespace arclab
