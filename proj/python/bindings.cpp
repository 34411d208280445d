#include <pybind11/pybind11.h>
#include <pybind11/numpy.h>
#include <pybind11/stl.h>

#include <sstream>

#include "landscape/cli.hpp"
#include "landscape/disjoint.hpp"
#include "landscape/error.hpp"
#include "landscape/fractal.hpp"
#include "landscape/geometry.hpp"
#include "landscape/lpp.hpp"
#include "landscape/scaling.hpp"
#include "landscape/version.hpp"

namespace py = pybind11;
using namespace landscape;

namespace {

// Copies into a fresh NumPy array.
py::array_t<double> to_array(std::span<const double> v) {
  return py::array_t<double>(static_cast<py::ssize_t>(v.size()), v.data());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Brownian last passage percolation: passage times, geodesics and fractal experiments.";
  m.attr("__version__") = kVersion;

  auto base = py::register_exception<Error>(m, "LandscapeError", PyExc_RuntimeError);
  py::register_exception<ConstructionError>(m, "ConstructionError", base.ptr());
  py::register_exception<LookupError>(m, "LookupError", base.ptr());
  auto domain = py::register_exception<DomainError>(m, "DomainError", base.ptr());
  py::register_exception<WindowError>(m, "WindowError", domain.ptr());

  py::class_<GridSpec>(m, "GridSpec")
      .def(py::init([](double z_min, double z_max, double delta, int line_lo, int line_hi) {
             GridSpec spec{z_min, z_max, delta, line_lo, line_hi};
             spec.validate();
             return spec;
           }),
           py::arg("z_min"), py::arg("z_max"), py::arg("delta"), py::arg("line_lo"),
           py::arg("line_hi"))
      .def_readonly("z_min", &GridSpec::z_min)
      .def_readonly("z_max", &GridSpec::z_max)
      .def_readonly("delta", &GridSpec::delta)
      .def_readonly("line_lo", &GridSpec::line_lo)
      .def_readonly("line_hi", &GridSpec::line_hi)
      .def_property_readonly("point_count", &GridSpec::point_count)
      .def("point", &GridSpec::point)
      .def("snap", &GridSpec::snap)
      .def("__repr__", [](const GridSpec& s) {
        std::ostringstream out;
        out << "GridSpec(z_min=" << s.z_min << ", z_max=" << s.z_max << ", delta=" << s.delta
            << ", lines=" << s.line_lo << ".." << s.line_hi << ")";
        return out.str();
      });

  py::class_<BrownianField>(m, "BrownianField")
      .def_static("generate", &BrownianField::generate, py::arg("spec"), py::arg("seed"),
                  py::arg("threads") = 1, py::call_guard<py::gil_scoped_release>())
      .def_static("from_values", &BrownianField::from_values, py::arg("spec"), py::arg("rows"),
                  py::arg("seed") = 0)
      .def_property_readonly("spec", &BrownianField::spec)
      .def_property_readonly("seed", &BrownianField::seed)
      .def("line", [](const BrownianField& f, int k) { return to_array(f.line(k)); })
      .def("increment", &BrownianField::increment);

  py::enum_<Side>(m, "Side").value("left", Side::left).value("right", Side::right);

  py::class_<Staircase>(m, "Staircase")
      .def(py::init<int, std::vector<double>>(), py::arg("first_line"), py::arg("breakpoints"))
      .def_property_readonly("first_line", &Staircase::first_line)
      .def_property_readonly("last_line", &Staircase::last_line)
      .def_property_readonly("breakpoints",
                             [](const Staircase& s) { return to_array(s.breakpoints()); })
      .def("__eq__", [](const Staircase& a, const Staircase& b) { return a == b; });

  py::class_<ScaledQuad>(m, "ScaledQuad")
      .def(py::init([](double x, double s, double y, double t) {
             ScaledQuad u{x, s, y, t};
             u.validate();
             return u;
           }),
           py::arg("x"), py::arg("s"), py::arg("y"), py::arg("t"))
      .def_readonly("x", &ScaledQuad::x)
      .def_readonly("s", &ScaledQuad::s)
      .def_readonly("y", &ScaledQuad::y)
      .def_readonly("t", &ScaledQuad::t);

  py::class_<StepPath>(m, "StepPath")
      .def_readonly("times", &StepPath::times)
      .def_readonly("values", &StepPath::values)
      .def_readonly("left_limits", &StepPath::left_limits)
      .def_readonly("slope", &StepPath::slope);

  m.def("staircase_weight", &staircase_weight);
  m.def("passage_time", &passage_time, py::arg("field"), py::arg("x"), py::arg("i"),
        py::arg("y"), py::arg("j"));
  m.def(
      "passage_row",
      [](const BrownianField& f, double x, int i, int j, std::optional<double> y_max) {
        return to_array(passage_row(f, x, i, j, y_max));
      },
      py::arg("field"), py::arg("x"), py::arg("i"), py::arg("j"), py::arg("y_max") = py::none());
  m.def(
      "maximizer",
      [](const BrownianField& f, double x, int i, double y, int j, Side side) {
        return extract_staircase(passage_profile(f, x, i, j, y), y, side);
      },
      py::arg("field"), py::arg("x"), py::arg("i"), py::arg("y"), py::arg("j"),
      py::arg("side") = Side::left, "Extremal maximizer from (x, i) to (y, j).");
  m.def("scaled_window", &scaled_window, py::arg("n"), py::arg("delta"), py::arg("s"),
        py::arg("x_lo"), py::arg("x_hi"), py::arg("t"), py::arg("y_lo"), py::arg("y_hi"),
        py::arg("margin") = 0.0);
  m.def("scaled_endpoint", [](double x, double s, int n, const GridSpec& spec) {
    const Endpoint e = scaled_endpoint(x, s, n, spec);
    return py::make_tuple(e.z, e.k);
  });
  m.def("scaled_passage", &scaled_passage, py::arg("field"), py::arg("u"), py::arg("n"));
  m.def("sample_scaled_passage", &sample_scaled_passage, py::arg("spec"), py::arg("seed"),
        py::arg("u"), py::arg("n"), py::call_guard<py::gil_scoped_release>());
  m.def(
      "n_geodesic",
      [](const BrownianField& f, const ScaledQuad& u, int n, Side side, std::vector<double> times) {
        return n_geodesic(f, u, n, side, times);
      },
      py::arg("field"), py::arg("u"), py::arg("n"), py::arg("side") = Side::left,
      py::arg("times") = std::vector<double>{});
  m.def("polymer_geodesic_gap", &polymer_geodesic_gap, py::arg("field"), py::arg("u"),
        py::arg("n"), py::arg("side") = Side::left);

  m.def("crossings", [](const Staircase& a, const Staircase& b) {
    py::list out;
    for (const auto& c : crossings(a, b)) out.append(py::make_tuple(c.line, c.z, c.z_end));
    return out;
  });
  m.def("ordered_leq", &ordered_leq);
  m.def("disjoint", &disjoint);
  m.def("coalescence_line", &coalescence_line);

  m.def("native_grid", &native_grid, py::arg("spec"), py::arg("n"), py::arg("t"),
        py::arg("y_lo"), py::arg("y_hi"));
  m.def(
      "difference_profile",
      [](const BrownianField& f, double x1, double x2, int n, std::vector<double> ys) {
        return to_array(difference_profile(f, x1, x2, n, ys).z_values);
      },
      py::arg("field"), py::arg("x1"), py::arg("x2"), py::arg("n"), py::arg("y_grid"),
      "Z(y) = W_n(x2,0;y,1) - W_n(x1,0;y,1) on y_grid.");
  m.def(
      "bivariate_measure",
      [](const BrownianField& f, int n, std::vector<double> xs, std::vector<double> ys,
         int threads) {
        const MeasureGrid mu = bivariate_measure(f, n, xs, ys, threads);
        py::array_t<double> out({static_cast<py::ssize_t>(mu.rows()),
                                 static_cast<py::ssize_t>(mu.cols())});
        std::copy(mu.increments.begin(), mu.increments.end(), out.mutable_data());
        return out;
      },
      py::arg("field"), py::arg("n"), py::arg("x_grid"), py::arg("y_grid"),
      py::arg("threads") = 1);
  m.def(
      "support_cells",
      [](std::vector<double> inc, double tol_rel) { return support_cells(inc, tol_rel); },
      py::arg("increments"), py::arg("tol_rel") = 1e-9);
  m.def(
      "box_dimension",
      [](std::vector<double> eps, std::vector<std::size_t> counts) {
        const DimensionEstimate e = box_dimension(eps, counts);
        return py::dict(py::arg("slope") = e.slope, py::arg("r_squared") = e.r_squared,
                        py::arg("fit_range") = py::make_tuple(e.epsilons[e.fit_begin],
                                                              e.epsilons[e.fit_end - 1]));
      },
      py::arg("epsilons"), py::arg("counts"));

  m.def(
      "disjoint_pair_detect",
      [](const BrownianField& f, int n, std::pair<double, double> I, std::pair<double, double> J) {
        return disjoint_pair_detect(f, n, {I.first, I.second}, {J.first, J.second});
      },
      py::arg("field"), py::arg("n"), py::arg("I"), py::arg("J"));
  m.def(
      "max_disjoint_count",
      [](const BrownianField& f, int n, std::vector<double> xs, std::vector<double> ys, double s,
         double t) { return max_disjoint_count(f, n, xs, ys, s, t); },
      py::arg("field"), py::arg("n"), py::arg("x_grid"), py::arg("y_grid"), py::arg("s") = 0.0,
      py::arg("t") = 1.0);
  m.def(
      "tail_experiment",
      [](int n, double delta, std::vector<double> eps, std::size_t trials, std::uint64_t seed,
         int threads) {
        TailConfig c;
        c.n = n;
        c.delta = delta;
        c.epsilons = std::move(eps);
        c.trials = trials;
        c.base_seed = seed;
        c.threads = threads;
        TailEstimate est;
        {
          py::gil_scoped_release release;
          est = tail_experiment(c);
        }
        py::list levels;
        for (const auto& l : est.levels) {
          levels.append(py::dict(py::arg("eps") = l.eps, py::arg("trials") = l.trials,
                                 py::arg("hits") = l.hits, py::arg("phat") = l.phat,
                                 py::arg("ci") = py::make_tuple(l.ci.lo, l.ci.hi)));
        }
        return py::dict(py::arg("levels") = levels, py::arg("exponent") = est.exponent);
      },
      py::arg("n"), py::arg("delta"), py::arg("epsilons"), py::arg("trials"),
      py::arg("seed") = 1, py::arg("threads") = 1);

  m.def(
      "run_cli",
      [](std::vector<std::string> args) {
        std::ostringstream out, err;
        const int code = landscape::run(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Run the command-line front end; returns (exit_code, stdout, stderr).");
}
