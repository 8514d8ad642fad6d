#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "xpjost/commands.hpp"
#include "xpjost/errors.hpp"
#include "xpjost/hilbert.hpp"
#include "xpjost/jost.hpp"
#include "xpjost/model_config.hpp"
#include "xpjost/oracle.hpp"
#include "xpjost/specialfn.hpp"
#include "xpjost/spectrum.hpp"

namespace py = pybind11;
using namespace xpjost;

namespace {

py::list levels(const std::vector<Level>& ls) {
    py::list out;
    for (const auto& l : ls) out.append(py::make_tuple(l.E, l.residual));
    return out;
}

}  // namespace

PYBIND11_MODULE(_xpjost, m) {
    m.doc() = "Jost functions and spectra of the interacting xp model";

    // Base first: pybind11 tries the most recently registered translator first.
    static py::exception<Error> error(m, "Error", PyExc_RuntimeError);
    py::register_exception<DomainError>(m, "DomainError", error.ptr());
    py::register_exception<ConvergenceError>(m, "ConvergenceError", error.ptr());
    py::register_exception<PoleError>(m, "PoleError", error.ptr());
    py::register_exception<WindowError>(m, "WindowError", error.ptr());
    py::register_exception<ConsistencyError>(m, "ConsistencyError", error.ptr());
    py::register_exception<CollinearityError>(m, "CollinearityError", error.ptr());
    py::register_exception<BoundaryZeroError>(m, "BoundaryZeroError", error.ptr());
    py::register_exception<ConfigError>(m, "ConfigError", error.ptr());

    py::class_<ModelSpec>(m, "Model")
        .def(py::init([](const std::string& config) { return load_model(config); }), py::arg("config"),
             "Model from a JSON file path or inline JSON text.")
        .def_property_readonly("kind", [](const ModelSpec& s) { return s.kind == ModelKind::M1 ? "M1" : "M2"; })
        .def_readonly("L", &ModelSpec::L)
        .def("to_json", [](const ModelSpec& s) { return model_to_json(s); })
        .def("jost", [](const ModelSpec& s, cplx E) { return jost_function(s, E); }, py::arg("E"))
        .def("eigencondition", [](const ModelSpec& s, cplx E) { return eigencondition(s, E); }, py::arg("E"))
        .def(
            "finite_spectrum",
            [](const ModelSpec& s, double lo, double hi, double mesh) {
                const SpectrumReport r = finite_spectrum(s, s.L, lo, hi, mesh);
                py::dict out;
                out["scattering_levels"] = levels(r.scattering_levels);
                out["bound_states"] = levels(r.bound_states);
                return out;
            },
            py::arg("E_lo"), py::arg("E_hi"), py::arg("mesh") = 0.0)
        .def(
            "bound_states",
            [](const ModelSpec& s, double lo, double hi, double mesh) { return levels(bound_states(s, lo, hi, mesh)); },
            py::arg("E_lo"), py::arg("E_hi"), py::arg("mesh") = 0.01)
        .def(
            "resonances",
            [](const ModelSpec& s, double re_lo, double re_hi, double im_lo, double im_hi) {
                py::list out;
                for (const auto& r : resonances(s, Rect{re_lo, re_hi, im_lo, im_hi}))
                    out.append(py::make_tuple(r.E, r.residual));
                return out;
            },
            py::arg("re_lo"), py::arg("re_hi"), py::arg("im_lo"), py::arg("im_hi"))
        .def(
            "upper_zero_count",
            [](const ModelSpec& s, double re_lo, double re_hi, double im_lo, double im_hi) {
                return upper_halfplane_zero_count(s, Rect{re_lo, re_hi, im_lo, im_hi});
            },
            py::arg("re_lo"), py::arg("re_hi"), py::arg("im_lo"), py::arg("im_hi"))
        .def(
            "matrix_energies",
            [](const ModelSpec& s, double L, int n, int k) { return cross_check(s, L, n, k).energies; },
            py::arg("L"), py::arg("n"), py::arg("k_levels"));

    m.def("theta", &riemann_siegel_theta, py::arg("t"));
    m.def("Z", &riemann_siegel_Z, py::arg("t"));
    m.def("zeta", [](cplx s) { return zeta(s); }, py::arg("s"));
    m.def("smooth_counting", &smooth_counting, py::arg("E"));
    m.def("smooth_zero", &smooth_zero, py::arg("n"));
    m.def("fz_series", &FZ_series, py::arg("t"), py::arg("M") = 5000);
    m.def(
        "fz_integral", [](double E, double d, double mesh) { return FZ_integral(E, PVWindow{d, mesh}); }, py::arg("E"),
        py::arg("d") = 400.0, py::arg("mesh") = 0.05);

    m.def(
        "run",
        [](const std::string& subcommand, const std::string& model, std::optional<std::pair<double, double>> range,
           std::optional<double> mesh) {
            RunConfig cfg;
            cfg.subcommand = subcommand;
            cfg.model = model;
            cfg.range = range;
            cfg.mesh = mesh;
            return run_command(cfg);
        },
        py::arg("subcommand"), py::arg("model") = "", py::arg("range") = py::none(), py::arg("mesh") = py::none(),
        "Output of a command-line subcommand (CSV or JSON text).");
}
