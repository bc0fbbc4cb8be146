#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>
#include <string>

#include "polyperiod/conformal.hpp"
#include "polyperiod/json_writer.hpp"
#include "polyperiod/mesh.hpp"
#include "polyperiod/periods.hpp"
#include "polyperiod/siegel.hpp"
#include "polyperiod/surfaces.hpp"

namespace pp = polyperiod;

namespace {

struct RunConfig {
    std::string mesh_path;
    std::string spec_path;
    std::string generate;
    std::string scheme;  // default: intrinsic for meshes, unit for cell inputs
    int refine = 1;
    int root = 0;
    std::string out_format = "json";
    double tol = 1e-10;
    std::string reference;      // compare only
    std::string function_path;  // diagnose only
};

struct LoadedSurface {
    pp::WeightedSurfaceGraph s;
    pp::SurfaceProvenance provenance;
};

void add_input_options(CLI::App* cmd, RunConfig& cfg) {
    cmd->add_option("--mesh", cfg.mesh_path, "triangle mesh in OBJ format");
    cmd->add_option("--spec", cfg.spec_path, "square-tiled gluing spec (JSON)");
    cmd->add_option("--generate", cfg.generate,
                    "built-in surface: flat-torus:NxM[:TAU], omega1, omega2, omega3");
    cmd->add_option("--scheme", cfg.scheme, "weight scheme: intrinsic, extrinsic or unit");
    cmd->add_option("--refine", cfg.refine, "cells per square side for gluing specs");
    cmd->add_option("--root", cfg.root, "root node of the homology basis search");
    cmd->add_option("--out", cfg.out_format, "output format: json or text");
    cmd->add_option("--tol", cfg.tol, "strict Delaunay threshold on the weights");
}

/* "0.5+0.866i", "-1+2i", "2i", "i" -> complex */
pp::Complex parse_complex(const std::string& text) {
    std::string t = text;
    if (t.empty() || t.back() != 'i')
        throw pp::ValidationError("lattice parameter must end in i: " + text);
    t.pop_back();
    size_t split = std::string::npos;
    for (size_t k = 1; k < t.size(); ++k)
        if ((t[k] == '+' || t[k] == '-') && t[k - 1] != 'e' && t[k - 1] != 'E') split = k;
    try {
        if (split == std::string::npos) {
            std::string im = t.empty() || t == "+" || t == "-" ? t + "1" : t;
            return pp::Complex(0.0, std::stod(im));
        }
        std::string im = t.substr(split);
        if (im == "+" || im == "-") im += "1";
        return pp::Complex(std::stod(t.substr(0, split)), std::stod(im));
    } catch (const std::exception&) {
        throw pp::ValidationError("cannot parse lattice parameter: " + text);
    }
}

LoadedSurface load_generated(const RunConfig& cfg) {
    LoadedSurface out;
    out.provenance.scheme = "unit";
    const std::string& g = cfg.generate;
    if (g == "omega1" || g == "omega2" || g == "omega3") {
        pp::GluingSpec spec = g == "omega1"   ? pp::omega1_spec()
                              : g == "omega2" ? pp::omega2_spec()
                                              : pp::omega3_spec();
        out.s = pp::build_square_tiled(spec, cfg.refine);
        return out;
    }
    if (g.rfind("flat-torus:", 0) == 0) {
        std::string args = g.substr(11);
        size_t colon = args.find(':');
        pp::Complex tau(0.0, 1.0);
        if (colon != std::string::npos) {
            tau = parse_complex(args.substr(colon + 1));
            args = args.substr(0, colon);
        }
        size_t x = args.find('x');
        if (x == std::string::npos)
            throw pp::ValidationError("flat-torus needs NxM dimensions: " + g);
        int n = 0, m = 0;
        try {
            n = std::stoi(args.substr(0, x));
            m = std::stoi(args.substr(x + 1));
        } catch (const std::exception&) {
            throw pp::ValidationError("cannot parse flat-torus dimensions: " + g);
        }
        out.s = pp::flat_torus(n, m, tau);
        return out;
    }
    throw pp::ValidationError("unknown generator \"" + g +
                              "\" (expected flat-torus:NxM[:TAU], omega1, omega2, omega3)");
}

LoadedSurface load_surface(const RunConfig& cfg) {
    int sources = (!cfg.mesh_path.empty()) + (!cfg.spec_path.empty()) +
                  (!cfg.generate.empty());
    if (sources != 1)
        throw pp::ValidationError("exactly one of --mesh, --spec, --generate is required");

    if (!cfg.mesh_path.empty()) {
        if (cfg.refine != 1)
            throw pp::ValidationError("--refine applies to gluing specs only");
        std::string scheme = cfg.scheme.empty() ? "intrinsic" : cfg.scheme;
        pp::WeightScheme ws = pp::parse_weight_scheme(scheme);
        pp::EmbeddedMesh mesh = pp::load_mesh_file(cfg.mesh_path);
        LoadedSurface out;
        out.s = pp::build_structure(mesh, ws, cfg.tol);
        out.provenance.scheme = pp::weight_scheme_name(ws);
        out.provenance.min_angle_deg = pp::min_angle_deg(mesh);
        out.provenance.has_min_angle = true;
        return out;
    }
    if (!cfg.scheme.empty() && cfg.scheme != "unit")
        throw pp::ValidationError("abstract cell inputs carry unit weights; "
                                  "use --scheme unit or omit the flag");
    if (!cfg.spec_path.empty()) {
        LoadedSurface out;
        out.s = pp::build_square_tiled(pp::load_gluing_spec_file(cfg.spec_path), cfg.refine);
        out.provenance.scheme = "unit";
        return out;
    }
    return load_generated(cfg);
}

void finish_provenance(LoadedSurface& loaded) {
    loaded.provenance.vertices = loaded.s.vertex_count;
    loaded.provenance.edges = loaded.s.edge_count;
    loaded.provenance.faces = loaded.s.face_count;
    loaded.provenance.min_rho =
        loaded.s.rho.empty() ? 0.0
                             : *std::min_element(loaded.s.rho.begin(), loaded.s.rho.end());
}

void print_matrix(std::ostream& out, const std::string& name, const Eigen::MatrixXcd& m) {
    out << name << ":\n";
    for (int i = 0; i < m.rows(); ++i) {
        for (int j = 0; j < m.cols(); ++j)
            out << "  " << pp::format_double(m(i, j).real()) << " + "
                << pp::format_double(m(i, j).imag()) << "i";
        out << "\n";
    }
}

int cmd_validate(const RunConfig& cfg) {
    LoadedSurface loaded = load_surface(cfg);
    finish_provenance(loaded);
    const pp::WeightedSurfaceGraph& s = loaded.s;
    std::cout << "vertices: " << s.vertex_count << "\n"
              << "edges: " << s.edge_count << "\n"
              << "faces: " << s.face_count << "\n"
              << "euler_characteristic: " << s.euler_characteristic << "\n"
              << "genus: " << s.genus << "\n"
              << "scheme: " << loaded.provenance.scheme << "\n"
              << "min_rho: " << pp::format_double(loaded.provenance.min_rho) << "\n";
    if (loaded.provenance.has_min_angle) {
        std::cout << "min_angle_deg: "
                  << pp::format_double(loaded.provenance.min_angle_deg) << "\n";
        if (loaded.provenance.min_angle_deg < 10.0)
            std::cout << "warning: thin triangles (smallest angle below 10 degrees)\n";
    }
    std::cout << "valid\n";
    return pp::EXIT_OK;
}

int cmd_compute(const RunConfig& cfg) {
    LoadedSurface loaded = load_surface(cfg);
    finish_provenance(loaded);
    pp::PeriodResult result = pp::compute_periods(loaded.s, cfg.root);
    result.provenance = loaded.provenance;
    if (cfg.out_format == "json") {
        std::cout << pp::serialize_period_result(result);
    } else if (cfg.out_format == "text") {
        std::cout << "genus: " << result.genus << "\n";
        print_matrix(std::cout, "pi", result.pi);
        print_matrix(std::cout, "pi_star", result.pi_star);
        std::cout << "symmetry_defect: " << pp::format_double(result.symmetry_defect)
                  << "\n"
                  << "positivity_margin: "
                  << pp::format_double(result.positivity_margin) << "\n"
                  << "pi_pi_star_defect: "
                  << pp::format_double(result.pi_pi_star_defect) << "\n";
    } else {
        throw pp::ValidationError("unknown output format \"" + cfg.out_format + "\"");
    }
    return pp::EXIT_OK;
}

Eigen::MatrixXcd load_reference(const std::string& ref) {
    for (const pp::ReferenceMatrix& known : pp::reference_matrices())
        if (known.name == ref) return known.omega;
    std::ifstream in(ref);
    if (!in)
        throw pp::ValidationError("reference \"" + ref +
                                  "\" is neither a known name nor a readable file");
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& err) {
        throw pp::ValidationError(std::string("reference file is not valid JSON: ") +
                                  err.what());
    }
    if (!j.contains("pi") || !j["pi"].contains("re") || !j["pi"].contains("im"))
        throw pp::ValidationError("reference file lacks a pi {re, im} block");
    auto re = j["pi"]["re"], im = j["pi"]["im"];
    int g = (int)re.size();
    Eigen::MatrixXcd omega(g, g);
    for (int i = 0; i < g; ++i)
        for (int k = 0; k < g; ++k)
            omega(i, k) = pp::Complex(re[i][k].get<double>(), im[i][k].get<double>());
    return omega;
}

int cmd_compare(const RunConfig& cfg) {
    Eigen::MatrixXcd ref = load_reference(cfg.reference);
    LoadedSurface loaded = load_surface(cfg);
    finish_provenance(loaded);
    pp::PeriodResult result = pp::compute_periods(loaded.s, cfg.root);
    double distance = pp::compare_period_matrices(result.pi, ref);
    print_matrix(std::cout, "computed_reduced", pp::siegel_reduce(result.pi).omega);
    print_matrix(std::cout, "reference_reduced", pp::siegel_reduce(ref).omega);
    std::cout << "distance: " << pp::format_double(distance) << "\n";
    return pp::EXIT_OK;
}

int cmd_diagnose(const RunConfig& cfg) {
    LoadedSurface loaded = load_surface(cfg);
    const pp::WeightedSurfaceGraph& s = loaded.s;
    std::ifstream in(cfg.function_path);
    if (!in)
        throw pp::ValidationError("cannot open function file: " + cfg.function_path);
    pp::Cochain0 f = pp::zero_cochain0(s);
    int count = 0, total = s.vertex_count + s.face_count;
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        double re, im = 0.0;
        if (!(ls >> re)) continue;  // blank line
        ls >> im;
        if (count >= total)
            throw pp::ValidationError("function file has more than " +
                                      std::to_string(total) + " values");
        f.values[count++] = pp::Complex(re, im);
    }
    if (count != total)
        throw pp::ValidationError("function file has " + std::to_string(count) +
                                  " values; expected " + std::to_string(total) +
                                  " (vertices then faces)");
    double ed = pp::dirichlet_energy(f);
    double ec = pp::conformal_energy(f);
    double ar = pp::area(f);
    std::cout << "dirichlet_energy: " << pp::format_double(ed) << "\n"
              << "conformal_energy: " << pp::format_double(ec) << "\n"
              << "area: " << pp::format_double(ar) << "\n"
              << "energy_identity_residual: " << pp::format_double(ec - (ed - 2.0 * ar))
              << "\n";
    return pp::EXIT_OK;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"discrete period matrices of weighted polyhedral surfaces"};
    app.require_subcommand(1);
    RunConfig cfg;

    CLI::App* validate = app.add_subcommand("validate", "check an input surface");
    add_input_options(validate, cfg);
    CLI::App* compute = app.add_subcommand("compute", "compute the period matrix");
    add_input_options(compute, cfg);
    CLI::App* compare =
        app.add_subcommand("compare", "compute and compare against a reference");
    add_input_options(compare, cfg);
    compare->add_option("--ref", cfg.reference,
                        "reference name (omega1, omega2, omega3, tau_w, omega_l) "
                        "or a JSON result file")
        ->required();
    CLI::App* diagnose =
        app.add_subcommand("diagnose", "energies of a vertex function on the surface");
    add_input_options(diagnose, cfg);
    diagnose->add_option("--function", cfg.function_path,
                         "file with one value per node (re [im]), vertices then faces")
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (validate->parsed()) return cmd_validate(cfg);
        if (compute->parsed()) return cmd_compute(cfg);
        if (compare->parsed()) return cmd_compare(cfg);
        return cmd_diagnose(cfg);
    } catch (const pp::DelaunayViolation& e) {
        std::cerr << "error: " << e.what() << "\n";
        for (const auto& [u, v, rho] : e.edges)
            std::cerr << "  edge " << u << "-" << v << " rho=" << pp::format_double(rho)
                      << "\n";
        return e.exit_code();
    } catch (const pp::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.exit_code();
    } catch (const pp::SolverError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return pp::EXIT_SOLVER;
    } catch (const pp::GenusMismatchError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return pp::EXIT_GENUS_MISMATCH;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return pp::EXIT_FAILURE_GENERIC;
    }
}
