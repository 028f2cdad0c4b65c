#include <sstream>

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mink/commands.hpp"
#include "mink/config.hpp"
#include "mink/errors.hpp"
#include "mink/gamma.hpp"
#include "mink/invariance.hpp"
#include "mink/point_cloud.hpp"
#include "mink/reports.hpp"
#include "mink/set_spec.hpp"
#include "mink/tube.hpp"

namespace py = pybind11;

namespace {

// Set specs cross the boundary as YAML text, the same form they take in
// configuration files.
mink::SetSpec spec_from_text(const std::string& yaml) {
  try {
    return mink::set_spec_from_yaml(YAML::Load(yaml));
  } catch (const YAML::Exception& e) {
    throw mink::ConfigError(e.what());
  }
}

mink::PointCloud cloud_from_rows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) throw mink::DomainError("empty point cloud");
  return mink::PointCloud(static_cast<int>(rows.front().size()), rows);
}

mink::ContentOptions content_options(double window_decades, std::optional<double> rel_tol) {
  mink::ContentOptions opts;
  opts.window_decades = window_decades;
  opts.rel_tol = rel_tol;
  return opts;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Tube volumes, box dimensions and Minkowski contents";

  static py::exception<mink::Error> base(m, "MinkError", PyExc_RuntimeError);
  py::register_exception<mink::DomainError>(m, "DomainError", base);
  py::register_exception<mink::ConvergenceError>(m, "ConvergenceError", base);
  py::register_exception<mink::ResolutionError>(m, "ResolutionError", base);
  py::register_exception<mink::DataError>(m, "DataError", base);
  py::register_exception<mink::UnsupportedError>(m, "UnsupportedError", base);
  py::register_exception<mink::ConfigError>(m, "ConfigError", base);

  m.def("gamma_ball", &mink::gamma_ball, py::arg("k"));
  m.def("gamma_ratio", [](int n, double s) { return mink::gamma_ratio(n, s).value; },
        py::arg("ambient_n"), py::arg("s"));
  m.def("power_lift_integral", &mink::power_lift_integral, py::arg("ambient_n"), py::arg("s"),
        py::arg("eps"), py::arg("tol") = 1e-12);

  py::class_<mink::TubeFunction>(m, "Tube")
      .def_property_readonly("ambient_n", &mink::TubeFunction::ambient_n)
      .def_property_readonly("kind",
                             [](const mink::TubeFunction& f) { return std::string(mink::to_string(f.kind())); })
      .def_property_readonly("resolution_floor", &mink::TubeFunction::resolution_floor)
      .def("__call__", &mink::TubeFunction::operator(), py::arg("eps"),
           py::call_guard<py::gil_scoped_release>())
      .def(
          "sample",
          [](const mink::TubeFunction& f, double eps) {
            const auto s = f.sample(eps);
            return py::make_tuple(s.value, s.abs_error);
          },
          py::arg("eps"));

  m.def("realize_tube",
        [](const std::string& spec, double tol) { return mink::realize(spec_from_text(spec), tol).tube; },
        py::arg("spec"), py::arg("tol") = mink::kDefaultLiftTol,
        "Tube of a set given as YAML, e.g. '{kind: a_string, a: 1, n_terms: 1000}'.");
  m.def("lift", &mink::lift_tube, py::arg("tube"), py::arg("tol") = mink::kDefaultLiftTol);
  m.def("product_with_unit_interval", &mink::product_with_unit_interval, py::arg("tube"),
        py::arg("tol") = mink::kDefaultLiftTol);

  m.def(
      "box_dimension_fit",
      [](const mink::TubeFunction& f, double eps_max, double eps_min, int ppd) {
        py::gil_scoped_release release;
        return mink::to_json(mink::box_dimension_fit(f, mink::EpsSchedule(eps_max, eps_min, ppd))).dump();
      },
      py::arg("tube"), py::arg("eps_max"), py::arg("eps_min"), py::arg("points_per_decade") = 8);
  m.def(
      "content_estimate",
      [](const mink::TubeFunction& f, double s, double eps_max, double eps_min, int ppd,
         double window_decades, std::optional<double> rel_tol) {
        py::gil_scoped_release release;
        return mink::to_json(mink::content_estimate(f, s, mink::EpsSchedule(eps_max, eps_min, ppd),
                                                    content_options(window_decades, rel_tol)))
            .dump();
      },
      py::arg("tube"), py::arg("s"), py::arg("eps_max"), py::arg("eps_min"),
      py::arg("points_per_decade") = 8, py::arg("window_decades") = 2.0,
      py::arg("rel_tol") = std::nullopt);
  m.def(
      "embedding_report",
      [](const std::string& spec, double s, double eps_max, double eps_min, int ppd) {
        const auto parsed = spec_from_text(spec);
        py::gil_scoped_release release;
        return mink::to_json(mink::embedding_report(parsed, s, mink::EpsSchedule(eps_max, eps_min, ppd)))
            .dump();
      },
      py::arg("spec"), py::arg("s"), py::arg("eps_max"), py::arg("eps_min"),
      py::arg("points_per_decade") = 8);
  m.def(
      "sandwich_check",
      [](const std::string& spec, double s, double eps_max, double eps_min, int ppd) {
        const auto parsed = spec_from_text(spec);
        py::gil_scoped_release release;
        return mink::to_json(mink::sandwich_check(parsed, s, mink::EpsSchedule(eps_max, eps_min, ppd)))
            .dump();
      },
      py::arg("spec"), py::arg("s"), py::arg("eps_max"), py::arg("eps_min"),
      py::arg("points_per_decade") = 8);

  m.def(
      "mc_tube_measure",
      [](const std::vector<std::vector<double>>& pts, double eps, std::size_t n, std::uint64_t seed) {
        const auto cloud = cloud_from_rows(pts);
        py::gil_scoped_release release;
        const auto e = mink::mc_tube_measure(cloud, eps, n, seed);
        return std::make_pair(e.estimate, e.std_error);
      },
      py::arg("points"), py::arg("eps"), py::arg("n_samples"), py::arg("seed"));
  m.def(
      "grid_tube_measure",
      [](const std::vector<std::vector<double>>& pts, double eps, double resolution) {
        const auto cloud = cloud_from_rows(pts);
        py::gil_scoped_release release;
        const auto g = mink::grid_tube_measure(cloud, eps, resolution);
        return std::make_pair(g.estimate, g.bound);
      },
      py::arg("points"), py::arg("eps"), py::arg("resolution"));

  m.def(
      "run_command",
      [](const std::string& command, const std::vector<std::string>& sets,
         std::optional<std::string> config, std::optional<double> s, std::optional<double> r,
         std::optional<double> tol, std::optional<std::uint64_t> seed, std::optional<std::string> out,
         int lifts) {
        mink::CommandArgs args;
        args.sets = sets;
        args.config_path = config;
        args.s = s;
        args.r = r;
        args.tol = tol;
        args.seed = seed;
        args.out_dir = out;
        args.lifts = lifts;
        std::ostringstream o, e;
        int code;
        {
          py::gil_scoped_release release;
          code = mink::run_command(command, args, o, e);
        }
        return py::make_tuple(code, o.str(), e.str());
      },
      py::arg("command"), py::arg("sets") = std::vector<std::string>{}, py::arg("config") = std::nullopt,
      py::arg("s") = std::nullopt, py::arg("r") = std::nullopt, py::arg("tol") = std::nullopt,
      py::arg("seed") = std::nullopt, py::arg("out") = std::nullopt, py::arg("lifts") = 0,
      "Runs a CLI command in-process; returns (exit_code, stdout, stderr).");
}
