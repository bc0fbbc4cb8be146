#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "polyperiod/conformal.hpp"
#include "polyperiod/mesh.hpp"
#include "polyperiod/periods.hpp"
#include "polyperiod/siegel.hpp"
#include "polyperiod/surfaces.hpp"

namespace py = pybind11;
namespace pp = polyperiod;

namespace {

/* Complex matrices cross the boundary as nested lists, so plain Python
 * works without a numpy dependency. */
py::list matrix_out(const Eigen::MatrixXcd& m) {
    py::list rows;
    for (int i = 0; i < m.rows(); ++i) {
        py::list row;
        for (int j = 0; j < m.cols(); ++j) row.append(m(i, j));
        rows.append(row);
    }
    return rows;
}

Eigen::MatrixXcd matrix_in(const std::vector<std::vector<pp::Complex>>& rows) {
    if (rows.empty()) throw pp::ValidationError("matrix must not be empty");
    Eigen::MatrixXcd m((int)rows.size(), (int)rows[0].size());
    for (size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != rows[0].size())
            throw pp::ValidationError("matrix rows must have equal length");
        for (size_t j = 0; j < rows[i].size(); ++j) m((int)i, (int)j) = rows[i][j];
    }
    return m;
}

py::dict periods_out(const pp::PeriodResult& r) {
    py::dict residuals;
    residuals["harmonic"] = r.harmonic_residual;
    residuals["closedness"] = r.closedness_residual;
    residuals["normalization"] = r.normalization_residual;
    residuals["symmetry"] = r.symmetry_defect;
    residuals["pi_pi_star"] = r.pi_pi_star_defect;
    residuals["projection"] = r.projection_defect;
    py::dict out;
    out["genus"] = r.genus;
    out["pi"] = matrix_out(r.pi);
    out["pi_star"] = matrix_out(r.pi_star);
    out["pi_raw"] = matrix_out(r.pi_raw);
    out["pi_star_raw"] = matrix_out(r.pi_star_raw);
    out["residuals"] = residuals;
    out["positivity_margin"] = r.positivity_margin;
    out["positivity_ok"] = r.positivity_ok;
    out["flagged"] = r.flagged;
    return out;
}

}  // namespace

PYBIND11_MODULE(_polyperiod, m) {
    m.doc() = "discrete period matrices of weighted polyhedral surfaces";

    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const pp::ValidationError& e) {
            PyErr_SetString(PyExc_ValueError, e.what());
        } catch (const pp::GenusMismatchError& e) {
            PyErr_SetString(PyExc_ValueError, e.what());
        } catch (const pp::SolverError& e) {
            PyErr_SetString(PyExc_RuntimeError, e.what());
        }
    });

    py::class_<pp::EmbeddedMesh>(m, "EmbeddedMesh")
        .def_property_readonly(
            "vertex_count", [](const pp::EmbeddedMesh& mesh) { return mesh.vertices.size(); })
        .def_property_readonly(
            "face_count", [](const pp::EmbeddedMesh& mesh) { return mesh.faces.size(); })
        .def_readonly("name", &pp::EmbeddedMesh::name)
        .def("__repr__", [](const pp::EmbeddedMesh& mesh) {
            return "EmbeddedMesh(" + std::to_string(mesh.vertices.size()) + " vertices, " +
                   std::to_string(mesh.faces.size()) + " faces)";
        });

    py::class_<pp::WeightedSurfaceGraph>(m, "WeightedSurfaceGraph")
        .def_readonly("vertex_count", &pp::WeightedSurfaceGraph::vertex_count)
        .def_readonly("edge_count", &pp::WeightedSurfaceGraph::edge_count)
        .def_readonly("face_count", &pp::WeightedSurfaceGraph::face_count)
        .def_readonly("euler_characteristic", &pp::WeightedSurfaceGraph::euler_characteristic)
        .def_readonly("genus", &pp::WeightedSurfaceGraph::genus)
        .def_property_readonly(
            "rho", [](const pp::WeightedSurfaceGraph& s) { return s.rho; })
        .def("__repr__", [](const pp::WeightedSurfaceGraph& s) {
            return "WeightedSurfaceGraph(" + std::to_string(s.vertex_count) + " vertices, " +
                   std::to_string(s.edge_count) + " edges, genus " +
                   std::to_string(s.genus) + ")";
        });

    py::class_<pp::GluingSpec>(m, "GluingSpec")
        .def_readonly("squares", &pp::GluingSpec::squares)
        .def("__len__", [](const pp::GluingSpec& spec) { return spec.gluings.size(); })
        .def("__repr__", [](const pp::GluingSpec& spec) {
            return "GluingSpec(" + std::to_string(spec.squares) + " squares, " +
                   std::to_string(spec.gluings.size()) + " gluings)";
        });

    m.def("load_mesh_file", &pp::load_mesh_file, py::arg("path"),
          "Load and validate a closed oriented triangle mesh from an OBJ file.");
    m.def(
        "topology_report",
        [](const pp::EmbeddedMesh& mesh) {
            pp::TopologyReport t = pp::topology_report(mesh);
            py::dict out;
            out["vertices"] = t.vertex_count;
            out["edges"] = t.edge_count;
            out["faces"] = t.face_count;
            out["euler_characteristic"] = t.euler_characteristic;
            out["genus"] = t.genus;
            return out;
        },
        py::arg("mesh"), "Element counts, Euler characteristic and genus.");
    m.def("min_angle_deg", &pp::min_angle_deg, py::arg("mesh"),
          "Smallest corner angle over all faces, in degrees.");
    m.def(
        "build_structure",
        [](const pp::EmbeddedMesh& mesh, const std::string& scheme, double tol) {
            return pp::build_structure(mesh, pp::parse_weight_scheme(scheme), tol);
        },
        py::arg("mesh"), py::arg("scheme") = "intrinsic", py::arg("tol") = 1e-10,
        "Weighted surface of an embedded mesh; scheme is intrinsic, extrinsic or unit.");

    m.def("load_gluing_spec_file", &pp::load_gluing_spec_file, py::arg("path"),
          "Load a square-tiled gluing spec from a JSON file.");
    m.def("save_gluing_spec", &pp::save_gluing_spec, py::arg("spec"),
          "Serialize a gluing spec to its JSON text.");
    m.def("build_square_tiled", &pp::build_square_tiled, py::arg("spec"),
          py::arg("refine") = 1,
          "Realize a gluing spec with refine x refine cells per square, weights 1.");
    m.def("flat_torus", &pp::flat_torus, py::arg("n"), py::arg("m"),
          py::arg("tau") = pp::Complex(0.0, 1.0),
          "Flat torus with n x m cells spanned by (1, tau); modulus m*tau/n.");
    m.def("omega1_spec", &pp::omega1_spec);
    m.def("omega2_spec", &pp::omega2_spec);
    m.def("omega3_spec", &pp::omega3_spec);

    m.def(
        "compute_periods",
        [](const pp::WeightedSurfaceGraph& s, int root) {
            return periods_out(pp::compute_periods(s, root));
        },
        py::arg("surface"), py::arg("root") = 0,
        "Period matrices and their measured defects, as a dict of plain lists.");

    m.def(
        "siegel_reduce",
        [](const std::vector<std::vector<pp::Complex>>& omega) {
            pp::ReducedMatrix r = pp::siegel_reduce(matrix_in(omega));
            py::dict out;
            out["omega"] = matrix_out(r.omega);
            out["converged"] = r.converged;
            out["canonical"] = r.canonical;
            return out;
        },
        py::arg("omega"), "Canonical representative under the integer symplectic action.");
    m.def(
        "compare_period_matrices",
        [](const std::vector<std::vector<pp::Complex>>& a,
           const std::vector<std::vector<pp::Complex>>& b) {
            return pp::compare_period_matrices(matrix_in(a), matrix_in(b));
        },
        py::arg("a"), py::arg("b"),
        "Distance between the reduced representatives of two period matrices.");
    m.def(
        "riemann_check",
        [](const std::vector<std::vector<pp::Complex>>& omega, double tol) {
            pp::RiemannCheck c = pp::riemann_check(matrix_in(omega), tol);
            py::dict out;
            out["symmetry_defect"] = c.symmetry_defect;
            out["positivity_margin"] = c.positivity_margin;
            out["ok"] = c.ok;
            return out;
        },
        py::arg("omega"), py::arg("tol") = 1e-8,
        "Symmetry and positive-definiteness of a candidate period matrix.");
    m.def(
        "reference_matrices",
        []() {
            py::dict out;
            for (const pp::ReferenceMatrix& r : pp::reference_matrices())
                out[r.name.c_str()] = matrix_out(r.omega);
            return out;
        },
        "Named comparison targets as {name: matrix}.");
}
