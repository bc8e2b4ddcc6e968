#include <sstream>
#include <string>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "collapse/criteria.hpp"
#include "collapse/data_io.hpp"
#include "collapse/energy.hpp"
#include "collapse/jang.hpp"
#include "collapse/verify.hpp"

namespace py = pybind11;
using namespace collapse;

namespace {

py::object parse_json(const std::string& text) {
  return py::module_::import("json").attr("loads")(text);
}

InitialData generate(const std::string& family, double r_min, double r_max, std::size_t n,
                     const std::string& domain, bool tabulated, const py::kwargs& params) {
  FamilySpec s;
  s.family = parse_family(family);
  s.grid.r_min = r_min;
  s.grid.r_max = r_max;
  s.grid.count = n;
  s.grid.domain = domain.empty() ? (r_min > 0.0 ? DomainKind::annulus : DomainKind::ball)
                                 : parse_domain(domain);
  s.tabulated = tabulated;
  for (const auto& [key, value] : params) {
    const std::string k = py::str(key);
    const double x = value.cast<double>();
    if (k == "mass") {
      s.mass = x;
    } else if (k == "mu0") {
      s.mu0 = x;
    } else if (k == "K0" || k == "collapse_rate") {
      s.collapse_rate = x;
    } else if (k == "beta" || k == "anisotropy") {
      s.anisotropy = x;
    } else if (k == "L" || k == "scale") {
      s.scale = x;
    } else if (k == "rstar" || k == "star_radius") {
      s.star_radius = x;
    } else if (k == "amplitude") {
      s.amplitude = x;
    } else if (k == "width") {
      s.width = x;
    } else {
      throw DataError("unknown family parameter '" + k + "'");
    }
  }
  return build_family(s);
}

py::dict analyze(const InitialData& d) {
  const GeometryProfile p = compute_profile(d);
  const HorizonScan hs = scan(d, p);
  const DecReport dec = dec_check(p);
  py::dict out;
  out["r"] = p.r;
  out["R"] = p.R;
  out["mu"] = p.mu;
  out["Jn"] = p.Jn;
  out["H"] = p.H;
  out["TrSk"] = p.TrSk;
  out["theta_plus"] = p.theta_plus;
  out["theta_minus"] = p.theta_minus;
  out["Rad"] = p.Rad;
  out["Vol"] = p.Vol;
  out["center_limit"] = p.center_limit;
  out["dec_holds"] = dec.holds;
  out["horizons"] = parse_json(to_json(hs).dump());
  return out;
}

py::dict criterion(const InitialData& d, const std::string& mode) {
  const GeometryProfile p = compute_profile(d);
  const CriterionReport rep = trapped_surface_criterion(p, scan(d, p), parse_mode(mode));
  py::dict out;
  std::vector<double> r, matter, bending, rhs, margin;
  std::vector<bool> fires, horizon;
  for (const auto& row : rep.rows) {
    r.push_back(row.r);
    matter.push_back(row.lhs_matter);
    bending.push_back(row.lhs_bending);
    rhs.push_back(row.rhs);
    margin.push_back(row.margin);
    fires.push_back(row.fires);
    horizon.push_back(row.horizon_in_ball);
  }
  out["r"] = r;
  out["lhs_matter"] = matter;
  out["lhs_bending"] = bending;
  out["rhs"] = rhs;
  out["margin"] = margin;
  out["fires"] = fires;
  out["horizon_in_ball"] = horizon;
  out["first_firing_radius"] = rep.first_firing_radius;
  out["dec_holds"] = rep.dec_holds;
  out["violations"] = rep.violations;
  return out;
}

py::dict jang(const InitialData& d, const std::string& bc, double rtol, double atol,
              double blow_eps) {
  JangOptions opt;
  opt.rtol = rtol;
  opt.atol = atol;
  opt.blow_eps = blow_eps;
  const JangBoundary b = bc.empty() ? default_boundary(d) : parse_boundary(bc);
  const JangSolution sol = solve_jang(d, b, opt);
  const JangDiagnostics diag = jang_diagnostics(d, sol);
  py::dict out;
  out["bc"] = to_string(b);
  out["r"] = sol.r;
  out["v"] = sol.v;
  out["s"] = sol.s;
  out["phi"] = sol.phi;
  out["rho_s"] = sol.rho_s;
  out["geroch_m"] = sol.geroch_m;
  out["a_t"] = diag.a_t;
  out["q_s"] = diag.q_s;
  out["r_reached"] = sol.r_reached;
  if (sol.blow_up) {
    py::dict bu;
    bu["r"] = sol.blow_up->r;
    bu["v"] = sol.blow_up->v;
    bu["kind"] = sol.blow_up->kind;
    out["blow_up"] = bu;
  } else {
    out["blow_up"] = py::none();
  }
  return out;
}

py::dict energy(const InitialData& d) {
  const GeometryProfile p = compute_profile(d);
  const EnergyProfile e = misner_sharp(d, p);
  const EnergyBoundsReport t = energy_bounds_check(d, p, e, scan(d, p));
  py::dict out;
  out["r"] = e.r;
  out["E"] = e.E;
  out["dE_numeric"] = e.dE_numeric;
  out["dE_identity"] = e.dE_identity;
  out["monotone"] = t.all_monotone;
  out["positive"] = t.all_positive;
  out["bound"] = t.all_bound;
  out["outermost_root"] = t.outermost_root;
  out["rigidity"] = std::string(to_string(t.candidate));
  out["dec_holds"] = t.dec_holds;
  return out;
}

py::object verify(const InitialData& d, const std::vector<std::string>& checks, int refine,
                  const std::string& bc) {
  VerifyOptions opt;
  opt.checks = checks;
  opt.levels = refine;
  if (!bc.empty()) opt.bc = parse_boundary(bc);
  const VerifyResult res = run_verify(d, opt, "python");
  return parse_json(res.report.dump());
}

py::dict sweep(std::uint64_t seed, std::size_t trials, std::size_t n) {
  SweepConfig cfg;
  cfg.seed = seed;
  cfg.trials = trials;
  cfg.grid_count = n;
  const SweepSummary s = soundness_sweep(cfg);
  py::dict out;
  out["trials"] = s.trials;
  out["attempts"] = s.attempts;
  out["discarded_non_dec"] = s.discarded_non_dec;
  out["firing_trials"] = s.firing_trials;
  out["violations"] = s.violations;
  out["near_miss_margin"] = s.near_miss_margin;
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Spherically symmetric initial data: trapped-surface criterion, Jang equation, "
            "quasilocal energy";

  py::register_exception<DataError>(m, "DataError", PyExc_ValueError);

  py::class_<InitialData>(m, "InitialData")
      .def_property_readonly("r", [](const InitialData& d) { return d.grid().values(); })
      .def_property_readonly("label", &InitialData::label)
      .def_property_readonly("domain",
                             [](const InitialData& d) { return std::string(to_string(d.grid().kind())); })
      .def_property_readonly("analytic", &InitialData::is_analytic)
      .def("samples",
           [](const InitialData& d, const std::string& name) {
             return d.samples(parse_field_name(name));
           },
           py::arg("name"), "Node samples of g11, rho, ka or kb")
      .def("refine", [](const InitialData& d, int factor) { return refine(d, factor); },
           py::arg("factor"))
      .def("validate",
           [](const InitialData& d) {
             std::vector<std::string> out;
             for (const auto& v : validate(d)) out.push_back(v.what);
             return out;
           })
      .def("to_json",
           [](const InitialData& d) {
             std::ostringstream os;
             write_data(os, d);
             return os.str();
           })
      .def("__len__", [](const InitialData& d) { return d.grid().size(); })
      .def("__repr__", [](const InitialData& d) {
        return "<InitialData '" + d.label() + "' n=" + std::to_string(d.grid().size()) + ">";
      });

  m.def("generate", &generate, py::arg("family"), py::arg("r_min") = 0.0, py::arg("r_max") = 1.0,
        py::arg("n") = 257, py::arg("domain") = "", py::arg("tabulated") = false,
        "Sample a closed-form family; parameters as keywords (mass, mu0, K0, beta, L, rstar, "
        "amplitude, width)");
  m.def("load", [](const std::filesystem::path& p, bool use_family) {
        return load_data(p, LoadOptions{use_family});
      },
      py::arg("path"), py::arg("use_family") = false);
  m.def("save", [](const InitialData& d, const std::filesystem::path& p) { save_data(d, p); },
        py::arg("data"), py::arg("path"));
  m.def("analyze", &analyze, py::arg("data"));
  m.def("criterion", &criterion, py::arg("data"), py::arg("mode") = "future");
  m.def("jang", &jang, py::arg("data"), py::arg("bc") = "", py::arg("rtol") = 1e-9,
        py::arg("atol") = 1e-12, py::arg("blow_eps") = 1e-6);
  m.def("energy", &energy, py::arg("data"));
  m.def("verify", &verify, py::arg("data"),
        py::arg("checks") = std::vector<std::string>{"geroch", "de", "chain", "pg"},
        py::arg("refine") = 3, py::arg("bc") = "");
  m.def("sweep", &sweep, py::arg("seed") = 20240601, py::arg("trials") = 200,
        py::arg("n") = 257);
}
