#include "arclab/json_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace arclab {

namespace {

using nlohmann::json;

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& ex) {
    throw std::invalid_argument(std::string("json: ") + ex.what());
  }
}

json arcs_to_json(const ArcSet& e) {
  json arr = json::array();
  for (const Arc& a : e.arcs()) arr.push_back({a.lo, a.hi});
  return arr;
}

ArcSet arcs_from_json(const json& arr) {
  std::vector<Arc> arcs;
  for (const auto& pair : arr) {
    if (!pair.is_array() || pair.size() != 2) {
      throw std::invalid_argument("json: each arc must be a [lo, hi] pair");
    }
    arcs.push_back(Arc{pair[0].get<double>(), pair[1].get<double>()});
  }
  return ArcSet(std::move(arcs));
}

TrigPoly poly_from_json(const json& j) {
  if (!j.contains("cos")) throw std::invalid_argument("json: polynomial needs a \"cos\" array");
  std::vector<double> ac = j.at("cos").get<std::vector<double>>();
  std::vector<double> bs;
  if (j.contains("sin")) bs = j.at("sin").get<std::vector<double>>();
  return TrigPoly(std::move(ac), std::move(bs));
}

}  // namespace

std::string arc_set_to_json(const ArcSet& e) {
  json j;
  j["arcs"] = arcs_to_json(e);
  return j.dump(2);
}

ArcSet arc_set_from_json(const std::string& text) {
  const json j = parse(text);
  try {
    if (!j.contains("arcs")) throw std::invalid_argument("json: missing \"arcs\"");
    return arcs_from_json(j.at("arcs"));
  } catch (const json::exception& ex) {
    throw std::invalid_argument(std::string("json: ") + ex.what());
  }
}

std::string trig_poly_to_json(const TrigPoly& p) {
  json j;
  j["cos"] = p.cos_coeffs();
  j["sin"] = p.sin_coeffs();
  return j.dump(2);
}

TrigPoly trig_poly_from_json(const std::string& text) {
  const json j = parse(text);
  try {
    return poly_from_json(j);
  } catch (const json::exception& ex) {
    throw std::invalid_argument(std::string("json: ") + ex.what());
  }
}

std::string t_set_to_json(const TSet& t) {
  json j;
  j["N"] = t.order();
  j["cos"] = t.u().cos_coeffs();
  j["sin"] = t.u().sin_coeffs();
  j["support"] = arcs_to_json(t.support());
  json branches = json::array();
  for (const Arc& b : t.branches()) branches.push_back({b.lo, b.hi});
  j["branches"] = branches;
  j["extremals"] = t.inner_extremals();
  return j.dump(2);
}

ExperimentConfig experiment_from_json(const std::string& text) {
  const json j = parse(text);
  try {
    ExperimentConfig cfg;
    cfg.name = j.value("name", std::string("experiment"));
    const int given =
        (j.contains("single_arc_beta") ? 1 : 0) + (j.contains("generator") ? 1 : 0) +
        (j.contains("arcs") ? 1 : 0);
    if (given != 1) {
      throw std::invalid_argument(
          "config: give exactly one of single_arc_beta, generator, arcs");
    }
    if (j.contains("single_arc_beta")) {
      cfg.tset = std::make_shared<const TSet>(TSet::single_arc(j.at("single_arc_beta").get<double>()));
    } else if (j.contains("generator")) {
      cfg.tset = std::make_shared<const TSet>(TSet::build(poly_from_json(j.at("generator"))));
    } else {
      cfg.arcs = arcs_from_json(j.at("arcs"));
    }
    if (j.contains("p_values")) cfg.p_values = j.at("p_values").get<std::vector<double>>();
    if (j.contains("degrees")) cfg.degrees = j.at("degrees").get<std::vector<int>>();
    if (j.contains("seeds")) cfg.seeds = j.at("seeds").get<int>();
    if (j.contains("k_values")) cfg.k_values = j.at("k_values").get<std::vector<int>>();
    if (j.contains("rel_tol")) cfg.quad.rel_tol = j.at("rel_tol").get<double>();
    if (j.contains("max_subdivisions")) cfg.quad.max_subdivisions = j.at("max_subdivisions").get<int>();
    return cfg;
  } catch (const json::exception& ex) {
    throw std::invalid_argument(std::string("config: ") + ex.what());
  }
}

ExperimentConfig experiment_from_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::invalid_argument("config: cannot read " + path);
  std::ostringstream buf;
  buf << f.rdbuf();
  return experiment_from_json(buf.str());
}

}  // namespace arclab
