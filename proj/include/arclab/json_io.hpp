#pragma once

#include <string>

#include "arclab/arc_set.hpp"
#include "arclab/harness.hpp"
#include "arclab/t_set.hpp"
#include "arclab/trig_poly.hpp"

namespace arclab {

/// {"arcs": [[lo, hi], ...]} -- the full circle round-trips as
/// [[0, 6.2831...]].
std::string arc_set_to_json(const ArcSet& e);
ArcSet arc_set_from_json(const std::string& text);

/// {"cos": [a0, ..., aN], "sin": [b1, ..., bN]}; "sin" may be omitted.
std::string trig_poly_to_json(const TrigPoly& p);
TrigPoly trig_poly_from_json(const std::string& text);

/// Full description of a built T-set: generator coefficients plus the
/// derived structure ("N", "support", "branches", "extremals").
std::string t_set_to_json(const TSet& t);

/// Experiment configuration. The set is given by exactly one of
///   "single_arc_beta": beta     (T-set through the degree-1 closed form)
///   "generator": {"cos": ..., "sin": ...}   (T-set built from u)
///   "arcs": [[lo, hi], ...]     (general arc system, collocation density)
/// Optional keys: "name", "p_values", "degrees", "seeds", "k_values",
/// "rel_tol", "max_subdivisions".
ExperimentConfig experiment_from_json(const std::string& text);
ExperimentConfig experiment_from_file(const std::string& path);

}  // namespace arclab
