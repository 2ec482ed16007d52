// Python bindings: thin wrappers returning JSON strings (parsed to dicts on
// the Python side), so every result uses one serialization path.

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "lgq/catalog.hpp"
#include "lgq/io.hpp"

namespace py = pybind11;
using namespace lgq;

namespace {

json extc_json(const ExtC& w) {
    json j{{"inf", w.inf}};
    if (!w.inf) j["value"] = to_json(w.v);
    return j;
}

MetricCase metric_case(const std::string& name) {
    if (name == "I") return MetricCase::CASE_I;
    if (name == "II") return MetricCase::CASE_II;
    if (name == "III") return MetricCase::CASE_III;
    if (name == "IV") return MetricCase::CASE_IV;
    if (name == "V") return MetricCase::CASE_V;
    throw Error(ErrorCode::PARSE_ERROR, "unknown metric case: " + name);
}

WData resolve_wdata(const std::string& catalog_name, const std::string& psi1,
                    const std::string& psi2, const std::string& f) {
    if (!catalog_name.empty()) return catalog(catalog_name).data;
    WData w;
    w.psi1 = expr_parse(psi1);
    w.psi2 = expr_parse(psi2);
    w.f = expr_parse(f.empty() ? "1" : f);
    w.name = "custom";
    w.domain = Domain::rectangle(-1, 1, -1, 1);
    return w;
}

} // namespace

PYBIND11_MODULE(_lgq, m) {
    m.doc() = "stationary-surface toolkit core";

    py::register_exception<Error>(m, "LgqError");

    m.def("classify_matrix", [](C a, C b, C c, C d) {
        MobiusMat S(a, b, c, d);
        json out{{"class", to_json(conj_canonical(S))},
                 {"e_set", to_json(e_set(S))},
                 {"symmetry_algebra_dim", symmetry_algebra(S).dim}};
        return out.dump();
    });

    m.def("classify_hyperplane", [](C a1, C a2, C a3, C a4) {
        HyperplaneClass cls = classify_A(CVec4(a1, a2, a3, a4));
        return json{{"class", to_json(cls)}}.dump();
    });

    m.def("conj_similar", [](C a1, C b1, C c1, C d1, C a2, C b2, C c2, C d2) {
        return conj_similar(MobiusMat(a1, b1, c1, d1), MobiusMat(a2, b2, c2, d2));
    });

    m.def("chart", [](C z1, C z2, C z3, C z4) {
        ChartPair w = psi_chart(ProjPoint(CVec4(z1, z2, z3, z4)));
        return json{{"w1", extc_json(w.w1)}, {"w2", extc_json(w.w2)}}.dump();
    });

    m.def("hermitian_gap", [](C w1, C w2) { return hermitian_gap(ChartPair{w1, w2}); });

    m.def("metric_g",
          [](C w1, C w2, C dw1, C dw2) { return metric_g(ChartPair{w1, w2}, dw1, dw2); });

    m.def("hyperplane_metric", [](const std::string& mc, double param, C point) {
        return hyperplane_metric(metric_case(mc), param, point);
    });

    m.def(
        "hyperplane_area",
        [](const std::string& mc, double param, int kmax) {
            return to_json(hyperplane_total_area(metric_case(mc), param, kmax)).dump();
        },
        py::arg("case"), py::arg("param") = 0.0, py::arg("kmax") = 8);

    m.def("solve_ef", [](std::vector<C> P, std::vector<C> Q) {
        RationalFn f(std::move(P), std::move(Q));
        EfResult ef = solve_Ef(f);
        return json{{"result", to_json(ef)}, {"bounds", to_json(bounds_report(f, ef))}}.dump();
    });

    m.def("local_index", [](std::vector<C> P, std::vector<C> Q, C root) {
        return local_index(RationalFn(std::move(P), std::move(Q)), root);
    });

    m.def("catalog_names", []() { return catalog_names(); });
    m.def("catalog_manifest", []() { return catalog_manifest(); });

    m.def(
        "validate_wdata",
        [](const std::string& catalog_name, const std::string& psi1, const std::string& psi2,
           const std::string& f, int grid) {
            WData w = resolve_wdata(catalog_name, psi1, psi2, f);
            WReport rep = wdata_validate(w, grid);
            return json{{"name", w.name}, {"report", to_json(rep)}}.dump();
        },
        py::arg("catalog") = "", py::arg("psi1") = "", py::arg("psi2") = "",
        py::arg("f") = "", py::arg("grid") = 40);

    m.def(
        "total_curvature",
        [](const std::string& catalog_name, int kmax) {
            return to_json(total_curvature(catalog(catalog_name).data, kmax)).dump();
        },
        py::arg("catalog"), py::arg("kmax") = 6);

    m.def(
        "gen_surface",
        [](const std::string& catalog_name, int nu, int nv, bool dual, bool allow_cut) {
            WData w = catalog(catalog_name).data;
            SurfaceMesh mesh = integrate_surface(w, GridSpec{nu, nv}, Vec4{0, 0, 0, 0},
                                                 allow_cut, dual);
            int valid = 0;
            for (std::uint8_t v : mesh.valid) valid += v;
            json out{{"name", w.name},
                     {"vertices", valid},
                     {"faces", (json::number_integer_t)mesh.faces.size()},
                     {"multivalued", mesh.multivalued},
                     {"dual", mesh.dual},
                     {"diameter", jnum(mesh.diameter())}};
            return out.dump();
        },
        py::arg("catalog"), py::arg("nu") = 64, py::arg("nv") = 64, py::arg("dual") = false,
        py::arg("allow_cut") = false);

    m.def(
        "write_surface",
        [](const std::string& catalog_name, const std::string& out_base,
           const std::string& format, int nu, int nv) {
            WData w = catalog(catalog_name).data;
            SurfaceMesh mesh = integrate_surface(w, GridSpec{nu, nv});
            if (format == "obj")
                write_obj(mesh, out_base + ".obj");
            else if (format == "csv")
                write_csv(mesh, out_base + ".csv");
            else
                throw Error(ErrorCode::PARSE_ERROR, "format must be obj|csv");
        },
        py::arg("catalog"), py::arg("out_base"), py::arg("format") = "obj",
        py::arg("nu") = 64, py::arg("nv") = 64);

    m.def("gauss_K", [](const std::string& catalog_name, C z) {
        return gauss_K(catalog(catalog_name).data, z);
    });

    m.def("metric_ds2", [](const std::string& catalog_name, C z) {
        return metric_ds2(catalog(catalog_name).data, z);
    });
}
