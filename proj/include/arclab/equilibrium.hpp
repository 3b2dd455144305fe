#pragma once

#include <memory>
#include <vector>

#include "arclab/arc_set.hpp"
#include "arclab/t_set.hpp"

namespace arclab {

/// Output of the integral-equation solver for the equilibrium measure of a
/// general arc system. On arc l the measure is (g_l(phi)/pi) dphi under
/// t = c_l + rho_l cos(phi), with g_l a cosine series of length
/// basis_size+1; robin_constant is the constant value of the logarithmic
/// potential on the support.
struct CollocationSolution {
  std::vector<std::vector<double>> coeffs;
  double robin_constant = 0.0;
  double residual = 0.0;  // max |potential - robin| on a validation grid
  int basis_size = 0;
};

/// Solves the equilibrium problem by collocation with the logarithmic kernel
/// split into exact Chebyshev-log moments plus a smooth remainder. The basis
/// escalates through 16, 32, 64 until the validation residual drops below
/// 1e-7; past that it throws std::runtime_error. Full circles are rejected
/// (their density is uniform; no solve needed).
CollocationSolution solve_general(const ArcSet& e);

/// Equilibrium density of an arc system, evaluated either through the
/// closed form attached to a T-set or through a collocation solution.
class DensityModel {
 public:
  static DensityModel closed_form(TSet t);
  static DensityModel collocation(const ArcSet& e);

  const ArcSet& support() const;
  double density(double t) const;
  bool is_closed_form() const { return tset_ != nullptr; }
  const TSet* t_set() const { return tset_.get(); }
  const CollocationSolution* solution() const { return sol_ ? &*sol_ : nullptr; }

 private:
  DensityModel() = default;
  std::shared_ptr<const TSet> tset_;       // closed-form backend
  ArcSet support_;                         // collocation / uniform backend
  std::shared_ptr<const CollocationSolution> sol_;
  bool uniform_ = false;                   // full circle
};

}  // namespace arclab
