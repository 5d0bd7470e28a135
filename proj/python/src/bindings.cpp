#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <random>

#include "circq/circulant.hpp"
#include "circq/error.hpp"
#include "circq/expr.hpp"
#include "circq/spec_io.hpp"
#include "circq/tensor.hpp"
#include "circq/verify.hpp"

namespace py = pybind11;
using namespace circq;

namespace {

using Array4 = std::array<double, 4>;

Point to_point(const Array4& a) { return Point{a}; }
Vector4 to_vector(const Array4& a) { return Vector4{a}; }

Matrix4 hessian(const FieldJet& j) {
    Matrix4 h{};
    for (int i = 0; i < 4; ++i)
        for (int k = 0; k < 4; ++k) h[i][k] = j.hess(i, k);
    return h;
}

py::object json_to_py(const nlohmann::ordered_json& j) {
    return py::module_::import("json").attr("loads")(j.dump());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Circulant Riemannian 4-manifolds: connection, curvature and structure checks";

    auto base = py::register_exception<Error>(m, "Error");
    py::register_exception<ParseError>(m, "ParseError", base.ptr());
    py::register_exception<DomainError>(m, "DomainError", base.ptr());
    py::register_exception<AdmissibilityError>(m, "AdmissibilityError", base.ptr());
    py::register_exception<SingularityError>(m, "SingularityError", base.ptr());
    py::register_exception<SolverError>(m, "SolverError", base.ptr());
    py::register_exception<InvalidArgument>(m, "InvalidArgument", base.ptr());

    py::class_<FieldJet>(m, "FieldJet")
        .def_readonly("value", &FieldJet::value)
        .def_readonly("grad", &FieldJet::grad)
        .def_property_readonly("hess", &hessian);

    py::class_<ScalarField>(m, "ScalarField")
        .def_property_readonly("source", &ScalarField::source)
        .def("print", &ScalarField::print)
        .def("eval_jet", [](const ScalarField& f, const Array4& p) { return f.eval_jet(to_point(p)); })
        .def("__repr__", [](const ScalarField& f) { return "ScalarField('" + f.print() + "')"; });

    m.def("parse", [](const std::string& s) { return expr::parse(s); }, py::arg("source"));

    py::class_<ManifoldSpec>(m, "ManifoldSpec")
        .def_readonly("name", &ManifoldSpec::name)
        .def_readonly("A", &ManifoldSpec::A)
        .def_readonly("B", &ManifoldSpec::B)
        .def_readonly("C", &ManifoldSpec::C)
        .def_property_readonly("domain_min", [](const ManifoldSpec& s) { return s.domain.min; })
        .def_property_readonly("domain_max", [](const ManifoldSpec& s) { return s.domain.max; });

    m.def("load_spec", [](const std::string& path) { return load_spec(path); }, py::arg("path"));
    m.def("spec_from_json", [](const std::string& text) { return spec_from_string(text); }, py::arg("text"));

    m.def(
        "admissibility",
        [](double a, double b, double c) {
            const auto r = admissibility(a, b, c);
            return py::make_tuple(r.ordered, r.minors);
        },
        py::arg("A"), py::arg("B"), py::arg("C"));

    m.def(
        "inverse_metric",
        [](double a, double b, double c) {
            const auto inv = inverse_metric(a, b, c);
            py::dict d;
            d["Abar"] = inv.abar;
            d["Bbar"] = inv.bbar;
            d["Cbar"] = inv.cbar;
            d["D"] = inv.d;
            d["matrix"] = inv.matrix();
            return d;
        },
        py::arg("A"), py::arg("B"), py::arg("C"));

    m.def(
        "metric_at",
        [](const ManifoldSpec& s, const Array4& p) { return metric_at(s, to_point(p)).matrix(); },
        py::arg("spec"), py::arg("point"));

    m.def(
        "q_apply", [](const Array4& x, int k) { return q_apply(to_vector(x), k).c; }, py::arg("x"),
        py::arg("k") = 1);

    m.def(
        "induces_q_basis",
        [](const Array4& x) {
            const auto r = induces_q_basis(to_vector(x));
            return py::make_tuple(r.induces, r.value);
        },
        py::arg("x"));

    m.def(
        "find_orthogonal_q_basis",
        [](double a, double b, double c, std::uint64_t seed) {
            std::mt19937_64 rng(seed);
            return find_orthogonal_q_basis(MetricAtPoint::constant(a, b, c), rng).c;
        },
        py::arg("A"), py::arg("B"), py::arg("C"), py::arg("seed") = 0);

    m.def(
        "christoffel_at",
        [](const ManifoldSpec& s, const Array4& p) {
            const auto ch = christoffel_at(s, to_point(p));
            return py::make_tuple(ch.gamma, ch.dgamma);
        },
        py::arg("spec"), py::arg("point"));

    m.def(
        "riemann_at", [](const ManifoldSpec& s, const Array4& p) { return riemann_at(s, to_point(p)).r_low; },
        py::arg("spec"), py::arg("point"));

    m.def(
        "nabla_q", [](const ManifoldSpec& s, const Array4& p) { return nabla_q(christoffel_at(s, to_point(p))); },
        py::arg("spec"), py::arg("point"));

    m.def(
        "sectional_curvature",
        [](const ManifoldSpec& s, const Array4& p, const Array4& x, const Array4& y) {
            const auto geo = geometry_at(s, to_point(p));
            return sectional_curvature(geo.riemann, geo.metric, to_vector(x), to_vector(y));
        },
        py::arg("spec"), py::arg("point"), py::arg("x"), py::arg("y"));

    m.def(
        "coeff_angles",
        [](double a, double b, double g, double d) {
            const auto r = verify::coeff_angles({a, b, g, d});
            return py::make_tuple(r.cos_phi, r.cos_theta);
        },
        py::arg("alpha"), py::arg("beta"), py::arg("gamma"), py::arg("delta"));

    m.def(
        "verify",
        [](const ManifoldSpec& s, const std::vector<Array4>& points, const std::vector<std::string>& checks,
           std::uint64_t seed, int samples) {
            std::vector<Point> pts;
            for (const auto& p : points) pts.push_back(to_point(p));
            verify::SuiteOptions opts;
            opts.checks = checks;
            opts.seed = seed;
            opts.samples = samples;
            return json_to_py(verify::to_json(verify::run_suite(s, pts, opts)));
        },
        py::arg("spec"), py::arg("points"), py::arg("checks") = std::vector<std::string>{}, py::arg("seed") = 0,
        py::arg("samples") = 50);

    m.attr("CURVATURE_CONVENTION") = kCurvatureConvention;
}
