#include "phaseflow/core.hpp"
#include "phaseflow/errors.hpp"
#include "phaseflow/interference.hpp"
#include "phaseflow/scenario.hpp"
#include "phaseflow/stationary.hpp"
#include "phaseflow/tunneling.hpp"

#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace phaseflow;

namespace {

py::array_t<double> to_array(const std::vector<double>& v)
{
    return py::array_t<double>(static_cast<py::ssize_t>(v.size()), v.data());
}

py::array_t<double> to_array(const PhaseSpaceDensity2D& rho)
{
    py::array_t<double> a({static_cast<py::ssize_t>(rho.xgrid.n), static_cast<py::ssize_t>(rho.pgrid.n)});
    std::copy(rho.samples.begin(), rho.samples.end(), a.mutable_data());
    return a;
}

} // namespace

PYBIND11_MODULE(_phaseflow, m)
{
    m.doc() = "phase-space densities, classical flows and TDSE references (hbar = m = 1)";
    m.attr("__version__") = artifact_version;

    py::register_exception<Error>(m, "PhaseflowError", PyExc_RuntimeError);

    py::class_<Grid1D>(m, "Grid1D")
        .def(py::init<double, double, std::size_t>(), py::arg("min"), py::arg("max"), py::arg("n"))
        .def_readonly("min", &Grid1D::min)
        .def_readonly("max", &Grid1D::max)
        .def_readonly("n", &Grid1D::n)
        .def("spacing", &Grid1D::spacing)
        .def("points", [](const Grid1D& g) { return to_array(g.points()); });

    py::class_<GaussianPacket>(m, "GaussianPacket")
        .def(py::init([](double x0, double p0, double delta) {
                 GaussianPacket g{x0, p0, delta};
                 g.validate();
                 return g;
             }),
             py::arg("x0") = 0.0, py::arg("p0") = 0.0, py::arg("delta") = 1.0)
        .def_readonly("x0", &GaussianPacket::x0)
        .def_readonly("p0", &GaussianPacket::p0)
        .def_readonly("delta", &GaussianPacket::delta)
        .def("amplitude", py::overload_cast<double, double>(&GaussianPacket::amplitude, py::const_), py::arg("x"),
             py::arg("t") = 0.0)
        .def("wigner", &GaussianPacket::wigner)
        .def("density", &GaussianPacket::density, py::arg("x"), py::arg("t") = 0.0);

    m.def(
        "wigner_transform",
        [](const Grid1D& xg, const std::vector<cplx>& f, const Grid1D& pg) {
            return to_array(wigner_transform(ComplexField1D(xg, f), pg));
        },
        py::arg("xgrid"), py::arg("f"), py::arg("pgrid"), "rho[i, j] on xgrid x pgrid");

    m.def(
        "uncertainty_product",
        [](const Grid1D& xg, const std::vector<double>& P, const Grid1D& pg, const std::vector<double>& Q) {
            return uncertainty_product(ProbabilityField1D{xg, P}, ProbabilityField1D{pg, Q});
        },
        py::arg("xgrid"), py::arg("P"), py::arg("pgrid"), py::arg("Q"));

    m.def(
        "fringe_period",
        [](double y0, double delta, double v0, double X, double t) {
            TwoSlitConfig c{y0, delta, v0, X, t, std::nullopt};
            c.validate();
            return fringe_period(c);
        },
        py::arg("y0"), py::arg("delta"), py::arg("v0"), py::arg("X"), py::arg("t"));

    m.def(
        "ab_shift",
        [](double y0, double delta, double v0, double X, double t, double h0, double T) {
            TwoSlitConfig c{y0, delta, v0, X, t, Kick{h0, T}};
            c.validate();
            return ab_shift(c);
        },
        py::arg("y0"), py::arg("delta"), py::arg("v0"), py::arg("X"), py::arg("t"), py::arg("h0"), py::arg("T"));

    m.def(
        "beyond_turning_fraction",
        [](double omega, double E0) {
            OscillatorConfig c{omega, E0};
            return beyond_turning_fraction(c);
        },
        py::arg("omega") = 1.0, py::arg("E0") = 0.5);

    m.def(
        "delta_scattering_coefficients",
        [](double k, double W0) {
            const auto s = delta_scattering_coefficients(k, W0);
            return py::make_tuple(s.R, s.T);
        },
        py::arg("k"), py::arg("W0"));

    m.def("list_scenarios", [] { return catalog_json().dump(); }, "scenario catalog as a JSON string");

    m.def(
        "run_scenario",
        [](const std::string& config_json, const std::string& out_dir) {
            return run_scenario(Json::parse(config_json), out_dir).dump();
        },
        py::arg("config_json"), py::arg("out_dir"), "runs a scenario; returns the manifest as a JSON string");
}
