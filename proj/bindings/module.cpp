// Python face of the library: the set constructions, densities, functionals
// and inequality verifiers, with arcs passed around as plain (lo, hi) pairs
// and the report structs flattened into dicts.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>
#include <utility>
#include <vector>

#include "arclab/arc_set.hpp"
#include "arclab/equilibrium.hpp"
#include "arclab/functionals.hpp"
#include "arclab/harness.hpp"
#include "arclab/json_io.hpp"
#include "arclab/lemmas.hpp"
#include "arclab/t_set.hpp"
#include "arclab/trig_poly.hpp"

namespace py = pybind11;
using namespace arclab;

namespace {

using ArcPair = std::pair<double, double>;

ArcSet arcset_from_pairs(const std::vector<ArcPair>& pairs) {
  std::vector<Arc> arcs;
  arcs.reserve(pairs.size());
  for (const ArcPair& p : pairs) arcs.push_back(Arc{p.first, p.second});
  return ArcSet(std::move(arcs));
}

std::vector<ArcPair> pairs_from_arcset(const ArcSet& e) {
  std::vector<ArcPair> out;
  out.reserve(e.size());
  for (const Arc& a : e.arcs()) out.emplace_back(a.lo, a.hi);
  return out;
}

ParamSet params_from_kwargs(double p, double theta, double kappa, double gamma) {
  ParamSet ps = ParamSet::defaults(p);
  if (theta > 0.0) ps.theta = theta;
  if (kappa > 0.0) ps.kappa = kappa;
  if (gamma > 0.0) ps.gamma = gamma;
  ps.validate();
  return ps;
}

py::dict dict_of(const FunctionalValues& fv) {
  py::dict d;
  d["A"] = fv.A;
  d["B"] = fv.B;
  d["a"] = fv.a;
  d["b"] = fv.b;
  d["quad_error"] = fv.quad_error;
  return d;
}

py::dict dict_of(const LemmaReport& r) {
  py::dict d;
  d["lemma"] = r.lemma;
  d["n"] = r.n;
  d["p"] = r.p;
  d["lhs"] = r.lhs;
  d["rhs"] = r.rhs;
  d["slack"] = r.slack;
  d["quad_error"] = r.quad_error;
  return d;
}

}  // namespace

PYBIND11_MODULE(_arclab, m) {
  m.doc() = "equilibrium densities and L^p functionals on systems of circular arcs";

  py::class_<TrigPoly>(m, "TrigPoly")
      .def(py::init<std::vector<double>, std::vector<double>>(), py::arg("cos_coeffs"),
           py::arg("sin_coeffs") = std::vector<double>{})
      .def_property_readonly("degree", &TrigPoly::degree)
      .def_property_readonly("cos_coeffs", &TrigPoly::cos_coeffs)
      .def_property_readonly("sin_coeffs", &TrigPoly::sin_coeffs)
      .def("__call__", [](const TrigPoly& p, double t) { return p(t); }, py::arg("t"))
      .def("derivative", &TrigPoly::derivative)
      .def("__add__", [](const TrigPoly& a, const TrigPoly& b) { return a + b; })
      .def("__sub__", [](const TrigPoly& a, const TrigPoly& b) { return a - b; })
      .def("__mul__", [](const TrigPoly& a, double s) { return a * s; })
      .def("__rmul__", [](const TrigPoly& a, double s) { return a * s; })
      .def("__repr__", [](const TrigPoly& p) {
        return "TrigPoly(degree=" + std::to_string(p.degree()) + ")";
      });

  py::class_<ArcSet>(m, "ArcSet")
      .def(py::init(&arcset_from_pairs), py::arg("arcs"))
      .def_static("full_circle", &ArcSet::full_circle)
      .def_static("interval", &ArcSet::interval, py::arg("lo"), py::arg("hi"))
      .def_property_readonly("arcs", &pairs_from_arcset)
      .def("contains", [](const ArcSet& e, double t) { return e.contains(t); }, py::arg("t"))
      .def("total_length", &ArcSet::total_length)
      .def("is_full_circle", &ArcSet::is_full_circle)
      .def("__len__", &ArcSet::size)
      .def("__repr__", [](const ArcSet& e) {
        return "ArcSet(" + std::to_string(e.size()) + " arcs)";
      });

  py::class_<TSet, std::shared_ptr<TSet>>(m, "TSet")
      .def_static("build", &TSet::build, py::arg("u"))
      .def_static("single_arc", &TSet::single_arc, py::arg("beta"))
      .def_property_readonly("order", &TSet::order)
      .def_property_readonly("u", &TSet::u)
      .def_property_readonly("support", &TSet::support)
      .def_property_readonly("branches",
                             [](const TSet& t) {
                               std::vector<ArcPair> out;
                               for (const Arc& a : t.branches()) out.emplace_back(a.lo, a.hi);
                               return out;
                             })
      .def_property_readonly("inner_extremals", &TSet::inner_extremals)
      .def("density", &TSet::density, py::arg("t"))
      .def("branch_inverse", &TSet::branch_inverse, py::arg("branch"), py::arg("y"))
      .def("chebyshev", [](const TSet& t, int k, double angle) {
        return chebyshev_value(t, k, angle);
      }, py::arg("k"), py::arg("t"))
      .def("chebyshev_derivative", [](const TSet& t, int k, double angle) {
        return chebyshev_derivative(t, k, angle);
      }, py::arg("k"), py::arg("t"))
      .def("to_json", &t_set_to_json)
      .def("__repr__", [](const TSet& t) {
        return "TSet(N=" + std::to_string(t.order()) + ", " +
               std::to_string(t.support().size()) + " arcs)";
      });

  py::class_<DensityModel>(m, "DensityModel")
      .def_static("closed_form", &DensityModel::closed_form, py::arg("tset"))
      .def_static("collocation", &DensityModel::collocation, py::arg("arcs"))
      .def_property_readonly("support", &DensityModel::support)
      .def_property_readonly("is_closed_form", &DensityModel::is_closed_form)
      .def_property_readonly("collocation_info",
                             [](const DensityModel& dm) -> py::object {
                               const CollocationSolution* sol = dm.solution();
                               if (!sol) return py::none();
                               py::dict d;
                               d["robin_constant"] = sol->robin_constant;
                               d["residual"] = sol->residual;
                               d["basis_size"] = sol->basis_size;
                               return d;
                             })
      .def("density", &DensityModel::density, py::arg("t"));

  m.def("random_trigpoly", &random_trigpoly, py::arg("n"), py::arg("seed"),
        "Seeded random polynomial with standard normal coefficients.");

  m.def("sup_norm", &sup_norm, py::arg("p"), py::arg("arcs"));

  m.def(
      "functionals",
      [](const TrigPoly& tn, int n, const ArcSet& x, const DensityModel& dens, double p,
         double rel_tol, int max_subdivisions) {
        QuadSpec spec;
        spec.rel_tol = rel_tol;
        spec.max_subdivisions = max_subdivisions;
        return dict_of(functionals(tn, n, x, dens, p, spec));
      },
      py::arg("tn"), py::arg("n"), py::arg("x"), py::arg("dens"), py::arg("p"),
      py::arg("rel_tol") = 1e-9, py::arg("max_subdivisions") = 1 << 14,
      "Both L^p functionals of tn over x, with their ratios to the full support.");

  m.def(
      "chebyshev_functionals",
      [](const TSet& t, int k, double p, double rel_tol) {
        QuadSpec spec;
        spec.rel_tol = rel_tol;
        const DensityModel dens = DensityModel::closed_form(t);
        const auto tk = [&t, k](double x) { return chebyshev_value(t, k, x); };
        const auto dtk = [&t, k](double x) { return chebyshev_derivative(t, k, x); };
        return dict_of(functionals(tk, dtk, k * t.order(), t.support(), dens, p, spec));
      },
      py::arg("tset"), py::arg("k"), py::arg("p"), py::arg("rel_tol") = 1e-9,
      "Functionals of the composition T_k(u), evaluated through the angle variable.");

  m.def(
      "lukashov_sup_ratio",
      [](const TrigPoly& tn, int n, const TSet& t) { return lukashov_sup_ratio(tn, n, t); },
      py::arg("tn"), py::arg("n"), py::arg("tset"));

  m.def(
      "nikolskii_value",
      [](const TrigPoly& tn, const ArcPair& interval, const DensityModel& dens, double p) {
        return nikolskii_value(tn, Arc{interval.first, interval.second}, dens, p);
      },
      py::arg("tn"), py::arg("interval"), py::arg("dens"), py::arg("p"));

  m.def(
      "symmetrize",
      [](const TSet& t, const TrigPoly& v) {
        const SymmetrizedPoly sym = symmetrize(t, v);
        py::dict d;
        d["s_coeffs"] = sym.s_coeffs;
        d["nstar"] = sym.nstar;
        d["fit_residual"] = sym.fit_residual;
        d["branch_consistency"] = sym.branch_consistency;
        return d;
      },
      py::arg("tset"), py::arg("v"),
      "Chebyshev coefficients of the branch-summed polynomial S with S(u) = sum v(t_h).");

  m.def(
      "fast_decreasing_q",
      [](const ArcPair& h, int n, double p, double theta, double kappa, double gamma) {
        const ParamSet ps = params_from_kwargs(p, theta, kappa, gamma);
        const QProfile prof = fast_decreasing_q(Arc{h.first, h.second}, n, ps);
        py::dict d;
        d["q"] = prof.q;
        d["degree"] = prof.q.degree();
        d["degree_bound"] = prof.degree_bound;
        d["f_hat"] = prof.f_hat;
        d["qprime_hat"] = prof.qprime_hat;
        return d;
      },
      py::arg("h"), py::arg("n"), py::arg("p") = 0.5, py::arg("theta") = 0.0,
      py::arg("kappa") = 0.0, py::arg("gamma") = 0.0,
      "Window profile: ~1 on h, ~0 off h and its borders, degree <= 3 n^{2 theta}.");

  m.def(
      "lemma_reports",
      [](const std::shared_ptr<TSet>& t, int n, std::uint64_t seed, double p, double theta,
         double kappa, double gamma, std::size_t cells) {
        const ParamSet ps = params_from_kwargs(p, theta, kappa, gamma);
        const DensityModel dens = DensityModel::closed_form(*t);
        const SmallPartition part = partition_small(t->support(), n, ps.kappa);
        for (std::size_t first = 0; first < part.cells.size(); ++first) {
          Block blk;
          try {
            blk = make_block(part, first, cells);
          } catch (const std::invalid_argument&) {
            continue;  // the run sticks out of its component
          }
          if (!block_inside_branch(*t, blk)) continue;
          const TrigPoly tn = random_trigpoly(n, seed);
          std::vector<LemmaReport> reports = verify_symmetrization_lemmas(*t, tn, n, blk, ps, dens);
          std::vector<LemmaReport> loc = verify_localization(*t, tn, n, blk, ps, dens);
          reports.insert(reports.end(), loc.begin(), loc.end());
          py::list out;
          for (const LemmaReport& r : reports) out.append(dict_of(r));
          return out;
        }
        throw std::invalid_argument("lemma_reports: no window of that size fits inside a branch");
      },
      py::arg("tset"), py::arg("n"), py::arg("seed"), py::arg("p") = 0.5, py::arg("theta") = 0.0,
      py::arg("kappa") = 0.0, py::arg("gamma") = 0.0, py::arg("cells") = 1,
      "Every symmetrization and localization estimate for one random polynomial, "
      "checked on the first admissible window.");

  m.def(
      "run_experiment",
      [](const std::string& config_json, const std::string& kind) {
        const ExperimentConfig cfg = experiment_from_json(config_json);
        const SweepResult res = kind == "sharpness" ? sharpness_sweep(cfg) : bernstein_sweep(cfg);
        py::dict d;
        d["name"] = res.name;
        d["kind"] = res.kind;
        d["pass"] = res.pass;
        py::list per_p;
        for (const RatioTrend& tr : res.trends) {
          py::dict e;
          e["p"] = tr.p;
          e["degrees"] = tr.degrees;
          e["max_ratio"] = tr.max_ratio;
          e["ok"] = tr.ok;
          per_p.append(e);
        }
        d["per_p"] = per_p;
        return d;
      },
      py::arg("config_json"), py::arg("kind") = "bernstein",
      "Run a sweep from a JSON experiment description and return the trend summary.");
}
