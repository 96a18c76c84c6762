#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "nlft/audit.hpp"
#include "nlft/cli.hpp"
#include "nlft/errors.hpp"
#include "nlft/io.hpp"

namespace py = pybind11;
using namespace nlft;

namespace {

py::object to_python(const nlohmann::json& j) {
    return py::module_::import("json").attr("loads")(j.dump());
}

std::vector<std::pair<cplx, cplx>> layer_entries(const TileLayer& layer) {
    std::vector<std::pair<cplx, cplx>> out;
    out.reserve(layer.tiles.size());
    for (const auto& g : layer.tiles) out.emplace_back(g.a, g.b);
    return out;
}

}  // namespace

PYBIND11_MODULE(_nlft, m) {
    m.doc() = "Cantor-group nonlinear Fourier transform and its audits";

    py::register_exception<InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);
    py::register_exception<ResolutionMismatch>(m, "ResolutionMismatch", PyExc_ValueError);
    py::register_exception<InputTooLarge>(m, "InputTooLarge", PyExc_OverflowError);
    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);

    py::class_<Su11>(m, "Su11")
        .def(py::init<cplx, cplx>(), py::arg("a") = cplx(1.0), py::arg("b") = cplx(0.0))
        .def_readwrite("a", &Su11::a)
        .def_readwrite("b", &Su11::b)
        .def("constraint_residual", &Su11::constraint_residual)
        .def("__matmul__", [](const Su11& g, const Su11& h) { return compose(g, h); })
        .def("__repr__", [](const Su11& g) {
            std::ostringstream os;
            os << "Su11(a=" << g.a << ", b=" << g.b << ")";
            return os.str();
        });
    m.def("compose", &compose);
    m.def("cell_transfer", &cell_transfer, py::arg("w"), py::arg("h"));
    m.def("size", &size);
    m.def("spectral_norm", &spectral_norm);

    m.def("character", [](unsigned d, u64 x_num, unsigned x_scale, u64 xi_num, unsigned xi_scale) {
        return character(DadicRational(d, x_num, x_scale), DadicRational(d, xi_num, xi_scale));
    }, py::arg("d"), py::arg("x_num"), py::arg("x_scale"), py::arg("xi_num"), py::arg("xi_scale"));

    py::class_<StepFunction>(m, "StepFunction")
        .def(py::init<unsigned, int, int, std::vector<cplx>>(), py::arg("d"), py::arg("cell_exponent"),
             py::arg("support_exponent"), py::arg("values"))
        .def_property_readonly("d", &StepFunction::radix)
        .def_property_readonly("cell_exponent", &StepFunction::cell_exponent)
        .def_property_readonly("support_exponent", &StepFunction::support_exponent)
        .def_property_readonly("values", &StepFunction::values)
        .def("lp_norm", &StepFunction::lp_norm)
        .def("scaled", &StepFunction::scaled)
        .def_static("from_json", [](const std::string& text) { return step_function_from_json(nlohmann::json::parse(text)); })
        .def("to_json", [](const StepFunction& f) { return to_json(f).dump(); });
    m.def("random_step_function", [](unsigned d, int cell_exponent, int support_exponent, double l2, std::uint64_t seed,
                                     bool real_valued) {
        Rng rng(seed);
        return random_step_function(d, cell_exponent, support_exponent, l2, rng, real_valued);
    }, py::arg("d"), py::arg("cell_exponent"), py::arg("support_exponent"), py::arg("l2_norm") = 1.0,
       py::arg("seed") = 0, py::arg("real_valued") = false);

    m.def("transform_top", [](const StepFunction& f, int nxi, unsigned threads) {
        return layer_entries(transform_top(f, nxi, threads));
    }, py::arg("f"), py::arg("freq_exponent"), py::arg("threads") = 1,
       "List of (a, b) at xi = k d^-support_exponent, k = 0, 1, ...");
    m.def("direct_oracle", [](const StepFunction& f, int nxi, u64 k) {
        const auto g = direct_oracle(f, nxi, grid_frequency(f.radix(), f.support_exponent(), k));
        return std::make_pair(g.a, g.b);
    }, py::arg("f"), py::arg("freq_exponent"), py::arg("k"));
    m.def("linear_transform", &linear_transform, py::arg("f"), py::arg("freq_exponent"), py::arg("threads") = 1);
    m.def("plancherel_defect", &plancherel_defect, py::arg("f"), py::arg("freq_exponent"), py::arg("threads") = 1);

    py::class_<BellmanFunction>(m, "BellmanFunction")
        .def_readonly("d", &BellmanFunction::d)
        .def_readonly("threshold", &BellmanFunction::threshold)
        .def_readonly("scale_constant", &BellmanFunction::scale_constant)
        .def("residual", &BellmanFunction::residual)
        .def("__call__", &BellmanFunction::operator());
    m.def("solve_threshold", &solve_threshold, py::arg("d"));
    m.def("swap_product", [](const std::vector<Su11>& factors) { return swap_product(factors).outputs; });
    m.def("zd_fourier", [](const std::vector<cplx>& z) { return zd_fourier(z); });
    m.def("default_p_grid", &default_p_grid);

    m.def("audit_bellman", [](unsigned d) {
        const auto a = audit_bellman(d);
        return py::dict(py::arg("threshold") = a.threshold, py::arg("residual") = a.residual,
                        py::arg("continuity_gap") = a.continuity_gap, py::arg("ok") = a.ok());
    }, py::arg("d"));
    m.def("scale_functional", [](const StepFunction& f, int nxi, double p) {
        const auto r = scale_functional(transform(f, nxi), solve_threshold(f.radix()), ConjugatePair(p));
        return to_python(to_json(r));
    }, py::arg("f"), py::arg("freq_exponent"), py::arg("p"));
    m.def("hy_ratio_scan", [](const StepFunction& f, int nxi, std::vector<double> grid) {
        return to_python(to_json(hy_ratio_scan(f, nxi, solve_threshold(f.radix()), grid)));
    }, py::arg("f"), py::arg("freq_exponent"), py::arg("p_grid"));
    m.def("fuzz_swap_inequality", [](unsigned d, const std::string& regime, std::uint64_t trials, std::uint64_t seed,
                                     std::vector<double> grid, unsigned threads) {
        py::gil_scoped_release release;
        const auto r = fuzz_swap_inequality(d, parse_regime(regime), trials, seed, grid, threads);
        py::gil_scoped_acquire acquire;
        return to_python(to_json(r));
    }, py::arg("d"), py::arg("regime"), py::arg("trials"), py::arg("seed"), py::arg("p_grid") = default_p_grid(),
       py::arg("threads") = 1);
    m.def("fuzz_case_lemmas", [](unsigned d, std::uint64_t trials, std::uint64_t seed, std::vector<double> grid) {
        return to_python(to_json(fuzz_case_lemmas(d, trials, seed, grid)));
    }, py::arg("d"), py::arg("trials"), py::arg("seed"), py::arg("p_grid") = default_p_grid());
}
