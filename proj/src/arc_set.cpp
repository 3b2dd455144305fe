#include "arclab/arc_set.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "arclab/equilibrium.hpp"
#include "arclab/functionals.hpp"
#include "arclab/t_set.hpp"

namespace arclab {

double wrap_angle(double t) {
  double r = std::fmod(t, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  return r;
}

double circle_distance(double s, double t) {
  double d = std::abs(wrap_angle(s) - wrap_angle(t));
  return std::min(d, kTwoPi - d);
}

ArcSet::ArcSet(std::vector<Arc> arcs) {
  if (arcs.empty()) throw std::invalid_argument("ArcSet: no arcs");
  for (Arc& a : arcs) {
    const double len = a.hi - a.lo;
    if (!(len > 0.0)) throw std::invalid_argument("ArcSet: arc with nonpositive length");
    if (len > kTwoPi + 1e-12) throw std::invalid_argument("ArcSet: arc longer than the circle");
    if (len >= kTwoPi - 1e-12) {
      if (arcs.size() > 1) throw std::invalid_argument("ArcSet: full circle plus extra arcs");
      arcs_ = {Arc{0.0, kTwoPi}};
      return;
    }
    a.lo = wrap_angle(a.lo);
    a.hi = a.lo + len;
  }
  std::sort(arcs.begin(), arcs.end(), [](const Arc& x, const Arc& y) { return x.lo < y.lo; });
  for (std::size_t i = 0; i + 1 < arcs.size(); ++i) {
    if (arcs[i].hi >= arcs[i + 1].lo - 1e-12)
      throw std::invalid_argument("ArcSet: arcs overlap or touch");
  }
  if (arcs.size() > 1 && arcs.back().hi - kTwoPi >= arcs.front().lo - 1e-12)
    throw std::invalid_argument("ArcSet: arcs overlap or touch across angle 0");
  if (arcs.size() == 1 && arcs[0].hi > kTwoPi && arcs[0].hi - kTwoPi >= arcs[0].lo - 1e-12)
    throw std::invalid_argument("ArcSet: arc overlaps itself around the circle");
  arcs_ = std::move(arcs);
}

ArcSet ArcSet::full_circle() {
  ArcSet s;
  s.arcs_ = {Arc{0.0, kTwoPi}};
  return s;
}

ArcSet ArcSet::interval(double lo, double hi) { return ArcSet({Arc{lo, hi}}); }

bool ArcSet::is_full_circle() const {
  return arcs_.size() == 1 && arcs_[0].length() >= kTwoPi - 1e-12;
}

double ArcSet::total_length() const {
  double sum = 0.0;
  for (const Arc& a : arcs_) sum += a.length();
  return sum;
}

bool ArcSet::contains(double t, double tol) const { return arc_index(t, tol) != npos; }

std::size_t ArcSet::arc_index(double t, double tol) const {
  if (is_full_circle()) return 0;
  for (std::size_t i = 0; i < arcs_.size(); ++i) {
    const Arc& a = arcs_[i];
    double d = wrap_angle(t - a.lo);
    if (d <= a.length() + tol) return i;
    if (kTwoPi - d <= tol) return i;  // just below a.lo
  }
  return npos;
}

double ArcSet::endpoint_distance(double t) const {
  if (is_full_circle()) return std::numeric_limits<double>::infinity();
  double best = std::numeric_limits<double>::infinity();
  for (const Arc& a : arcs_) {
    best = std::min(best, circle_distance(t, a.lo));
    best = std::min(best, circle_distance(t, a.hi));
  }
  return best;
}

std::vector<double> ArcSet::endpoints() const {
  std::vector<double> pts;
  if (is_full_circle()) return pts;
  for (const Arc& a : arcs_) {
    pts.push_back(wrap_angle(a.lo));
    pts.push_back(wrap_angle(a.hi));
  }
  return pts;
}

bool ArcSet::covers(const Arc& a, double tol) const {
  if (is_full_circle()) return true;
  for (const Arc& own : arcs_) {
    const double off = wrap_angle(a.lo - own.lo);
    if (off <= own.length() + tol && off + a.length() <= own.length() + tol) return true;
  }
  return false;
}

ParamSet ParamSet::defaults(double p) {
  ParamSet ps;
  ps.p = p;
  ps.theta = 0.25;
  ps.kappa = 1.0 / 32.0;
  ps.gamma = std::min(1.0 / 65.0, p / 2.0);
  ps.validate();
  return ps;
}

void ParamSet::validate() const {
  if (!(p > 0.0)) throw std::invalid_argument("ParamSet: p must be positive");
  if (!(kappa > 0.0 && theta > 4.0 * kappa && theta < 0.5))
    throw std::invalid_argument("ParamSet: need 1/2 > theta > 4*kappa > 0");
  if (!(gamma > 0.0 && gamma < kappa / 2.0))
    throw std::invalid_argument("ParamSet: need 0 < gamma < kappa/2");
  if (p <= 1.0 && !((1.0 - 2.0 * theta) * p >= gamma - 1e-12))
    throw std::invalid_argument("ParamSet: need (1-2*theta)*p >= gamma for p <= 1");
}

SmallPartition partition_small(const ArcSet& e, int n, double kappa) {
  if (e.empty()) throw std::invalid_argument("partition_small: empty arc set");
  if (n < 1) throw std::invalid_argument("partition_small: n must be >= 1");
  const double scale = std::pow(static_cast<double>(n), kappa);
  SmallPartition part;
  part.n = n;
  part.kappa = kappa;
  for (std::size_t c = 0; c < e.arcs().size(); ++c) {
    const Arc& comp = e.arcs()[c];
    const double len = comp.length();
    if (len * scale < 1.0 - 1e-12)
      throw std::invalid_argument("partition_small: component shorter than 1/n^kappa (n=" +
                                  std::to_string(n) + ")");
    const auto k = static_cast<std::size_t>(std::ceil(len * scale - 1e-12));
    const double width = len / static_cast<double>(k);
    for (std::size_t j = 0; j < k; ++j) {
      part.cells.push_back(Arc{comp.lo + width * static_cast<double>(j),
                               comp.lo + width * static_cast<double>(j + 1)});
      part.component_of.push_back(c);
    }
    part.component_size.push_back(k);
  }
  return part;
}

Block make_block(const SmallPartition& part, std::size_t first, std::size_t count) {
  if (count == 0) throw std::invalid_argument("make_block: empty window");
  if (first >= part.cells.size()) throw std::invalid_argument("make_block: bad first cell");
  const std::size_t comp = part.component_of[first];
  std::size_t comp_begin = first;
  while (comp_begin > 0 && part.component_of[comp_begin - 1] == comp) --comp_begin;
  const std::size_t comp_cells = part.component_size[comp];
  if (count > comp_cells) throw std::invalid_argument("make_block: window larger than component");

  const bool cyclic = comp_cells == part.cells.size() &&
                      std::abs(part.cells.back().hi - part.cells.front().lo - kTwoPi) < 1e-9;

  Block blk;
  blk.n = part.n;
  blk.kappa = part.kappa;
  const std::size_t offset = first - comp_begin;
  for (std::size_t j = 0; j < count; ++j) {
    std::size_t pos = offset + j;
    if (pos >= comp_cells) {
      if (!cyclic) throw std::invalid_argument("make_block: window runs past the component");
      pos -= comp_cells;
    }
    blk.cell_indices.push_back(comp_begin + pos);
  }
  const Arc& first_cell = part.cells[blk.cell_indices.front()];
  const Arc& last_cell = part.cells[blk.cell_indices.back()];
  double hi = last_cell.hi;
  while (hi < first_cell.lo) hi += kTwoPi;
  blk.h = Arc{first_cell.lo, hi};
  if (blk.h.length() > part.cells[blk.cell_indices.front()].length() * count + 1e-9)
    throw std::invalid_argument("make_block: cells are not contiguous");

  auto push_border = [&](std::size_t pos) {
    blk.border.push_back(part.cells[comp_begin + pos]);
  };
  if (cyclic) {
    if (count < comp_cells) {
      push_border((offset + comp_cells - 1) % comp_cells);
      if (count + 1 < comp_cells) push_border((offset + count) % comp_cells);
    }
  } else {
    if (offset > 0) push_border(offset - 1);
    if (offset + count < comp_cells) push_border(offset + count);
  }
  return blk;
}

BlockProperties block_properties(const TSet& t, const TrigPoly& tn, const Block& blk,
                                 const ParamSet& params, const DensityModel& dens) {
  params.validate();
  BlockProperties props;
  const double n = static_cast<double>(blk.n);
  const double n_gamma = std::pow(n, -params.gamma);

  Arc extended = blk.h;
  for (const Arc& b : blk.border) {
    const double blen = b.length();
    if (circle_distance(b.hi, extended.lo) < 1e-9) extended.lo -= blen;
    else if (circle_distance(b.lo, extended.hi) < 1e-9) extended.hi += blen;
  }
  props.inside_branch = false;
  for (const Arc& branch : t.branches()) {
    const double off = wrap_angle(extended.lo - branch.lo);
    if (off <= branch.length() + 1e-9 && off + extended.length() <= branch.length() + 1e-9) {
      props.inside_branch = true;
      break;
    }
  }

  if (!blk.border.empty()) {
    const FunctionalValues fv =
        functionals(tn, blk.n, ArcSet(blk.border), dens, params.p, QuadSpec{});
    props.a_border = fv.a;
    props.b_border = fv.b;
    props.a_small = fv.a <= n_gamma;
    props.b_small = fv.b <= n_gamma;
  } else {
    props.a_small = props.b_small = true;
  }
  props.h_short = blk.h.length() <= 4.0 * std::pow(n, params.gamma - params.kappa);
  return props;
}

}  // namespace arclab
