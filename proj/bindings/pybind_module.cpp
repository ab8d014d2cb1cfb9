#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "whitcusp/errors.hpp"
#include "whitcusp/gmat.hpp"
#include "whitcusp/rankin_selberg.hpp"
#include "whitcusp/report.hpp"
#include "whitcusp/suites.hpp"
#include "whitcusp/supercuspidal.hpp"

namespace py = pybind11;
using namespace whitcusp;

namespace {

GMat from_residue(int q, const std::vector<std::vector<int>>& rows) {
    const int r = static_cast<int>(rows.size());
    if (r != 2 && r != 3) throw ConfigError("residue matrix must be 2x2 or 3x3");
    FMat m = FMat::identity(q, r);
    for (int i = 0; i < r; ++i) {
        if (static_cast<int>(rows[static_cast<size_t>(i)].size()) != r)
            throw ConfigError("residue matrix must be square");
        for (int j = 0; j < r; ++j) {
            const int e = rows[static_cast<size_t>(i)][static_cast<size_t>(j)];
            if (e < 0 || e >= q) throw ConfigError("residue entries must lie in [0, q)");
            m.at(i, j) = e;
        }
    }
    return lift(m);
}

RunConfig config_from_kwargs(const py::kwargs& kwargs) {
    RunConfig cfg;
    for (const auto& item : kwargs) {
        const std::string key = py::cast<std::string>(item.first);
        if (key == "q") cfg.q = py::cast<int>(item.second);
        else if (key == "r") cfg.r = py::cast<int>(item.second);
        else if (key == "n") cfg.n = py::cast<int>(item.second);
        else if (key == "precision") cfg.precision = py::cast<int>(item.second);
        else if (key == "theta") cfg.theta = py::cast<long>(item.second);
        else if (key == "suite") cfg.suite = py::cast<std::string>(item.second);
        else if (key == "budget") cfg.budget = py::cast<std::int64_t>(item.second);
        else if (key == "format") cfg.format = py::cast<std::string>(item.second);
        else if (key == "seed") cfg.seed = py::cast<std::uint64_t>(item.second);
        else if (key == "timings") cfg.timings = py::cast<bool>(item.second);
        else throw ConfigError("unknown config key: " + key);
    }
    return cfg;
}

RSSeries series_for(const WhittakerFn& W) {
    return rs_series(W, SchwartzFn::unit_ball(W.q(), 2, W.modulus()), 2);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "exact arithmetic for depth-zero supercuspidal representations of GL_2(F_q((t)))";

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

    py::class_<GMat>(m, "GMat", "matrix over F_q((t)) with exact truncated-series entries")
        .def_static("identity", &GMat::identity, py::arg("q"), py::arg("r"))
        .def_static("diag_tpow", &GMat::diag_tpow, py::arg("q"), py::arg("exps"),
                    "diag(t^e1, ..., t^er)")
        .def_static("from_residue", &from_residue, py::arg("q"), py::arg("rows"),
                    "exact lift of a residue matrix with entries in [0, q)")
        .def_property_readonly("q", &GMat::q)
        .def_property_readonly("r", &GMat::r)
        .def("dual", [](const GMat& g) { return dual_transform(g); },
             "w (g^T)^{-1}: the involution carrying a Whittaker function to its dual")
        .def("__mul__", [](const GMat& a, const GMat& b) { return a * b; })
        .def("__repr__", &GMat::str);

    py::class_<DepthZeroRep>(m, "DepthZeroRep",
                             "depth-zero supercuspidal of GL_2, compactly induced from Z*K")
        .def(py::init<int, long>(), py::arg("q"), py::arg("theta"))
        .def_property_readonly("q", &DepthZeroRep::q)
        .def_property_readonly("modulus", &DepthZeroRep::modulus)
        .def_property_readonly("dim", [](const DepthZeroRep& pi) { return pi.model().dim(); })
        .def("matrix_coefficient",
             [](const DepthZeroRep& pi, const GMat& g) {
                 return scalar_str(pi.matrix_coefficient(g));
             },
             py::arg("g"), "diagonal matrix coefficient, exact, as num/den or cyclo(M)[...]")
        .def("zk_exponent",
             [](const DepthZeroRep& pi, const GMat& g) {
                 const auto e = pi.zk_exponent(g);
                 return e ? py::cast(*e) : py::none().cast<py::object>();
             },
             py::arg("g"), "m with g in t^m K, or None off the induction support");

    py::class_<WhittakerFn>(m, "WhittakerFn",
                            "Whittaker function of a depth-zero supercuspidal")
        .def(py::init<const DepthZeroRep&>(), py::arg("pi"))
        .def_property_readonly("q", &WhittakerFn::q)
        .def("value", [](const WhittakerFn& W, const GMat& g) { return scalar_str(W.value(g)); },
             py::arg("g"))
        .def("dual_value",
             [](const WhittakerFn& W, const GMat& g) { return scalar_str(W.dual_value(g)); },
             py::arg("g"))
        .def("support",
             [](const WhittakerFn& W) {
                 const SupportProfile s = whittaker_support(W);
                 return py::make_tuple(s.lo, s.hi);
             },
             "certified [lo, hi] bracket of the nonzero shells")
        .def("dual_support", [](const WhittakerFn& W) {
            const SupportProfile s = dual_whittaker_support(W);
            return py::make_tuple(s.lo, s.hi);
        });

    m.def("first_regular_theta", [](int q) { return resolve_theta(q, -1); }, py::arg("q"),
          "lowest exponent cutting out a regular character of the quadratic extension");

    m.def("zeta_series",
          [](const WhittakerFn& W) {
              const RSSeries s = series_for(W);
              py::dict out;
              out["cleared"] = s.cleared.str();
              py::list shells;
              for (const CycloScalar& v : s.shells) shells.append(scalar_str(v));
              out["shells"] = shells;
              out["window"] = s.window;
              return out;
          },
          py::arg("W"),
          "zeta shells against the unit-ball test function, cleared by (1 - x^2)");

    m.def("conductor",
          [](const WhittakerFn& W) {
              const RSSeries s = series_for(W);
              const ConductorReport r = conductor_solve(s.cleared, s.cleared, 2, 2, W.q());
              py::dict out;
              out["f"] = r.f;
              out["eps"] = rational_str(r.eps);
              out["t"] = 2;
              out["bound_wild"] = r.bound_wild;
              out["bound_tame"] = r.bound_tame;
              out["tame_sharp"] = r.tame_sharp;
              return out;
          },
          py::arg("W"), "functional-equation solve for the conductor exponent and sign");

    m.def("formal_degrees",
          [](const DepthZeroRep& pi) {
              const FormalDegreeReport fd = formal_degree(pi, 2, 2);
              py::dict out;
              out["from_conductor"] = rational_str(fd.from_conductor);
              out["direct"] = rational_str(fd.direct);
              out["measure_ratio"] = rational_str(fd.measure_ratio);
              out["steinberg_ratio"] = rational_str(fd.steinberg_ratio);
              return out;
          },
          py::arg("pi"));

    m.def("twist_orders",
          [](const WhittakerFn& W) {
              const TwistOrderReport tw = twist_order(W);
              return py::make_tuple(tw.structural, tw.divisional);
          },
          py::arg("W"), "unramified twist torsion order: (structural, from the series)");

    m.def("run_suite",
          [](const py::kwargs& kwargs) {
              const RunConfig cfg = config_from_kwargs(kwargs);
              return emit_report(run_suite(cfg), cfg.format, cfg.timings);
          },
          "run one verification suite; returns the report in the configured format");

    m.def("parse_report_summary",
          [](const std::string& text, const std::string& format) {
              const SuiteReport rep = parse_report(text, format);
              py::dict out;
              out["suite"] = rep.suite;
              out["config"] = rep.config;
              out["passed"] = rep.passed();
              out["failed"] = rep.failed();
              return out;
          },
          py::arg("text"), py::arg("format") = "json");

    m.def("dump_char_table", &dump_char_table, py::arg("q"), py::arg("theta") = -1);
    m.def("dump_support", &dump_support, py::arg("q"), py::arg("theta") = -1);
}
