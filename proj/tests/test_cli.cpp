#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <random>
#include <string>
#include <vector>

#include "helpers.hpp"
#include "polyperiod/mesh.hpp"
#include "polyperiod/surfaces.hpp"

using nlohmann::json;
using namespace polyperiod;

namespace {

std::string g_cli;   // path of the command-line binary under test
std::string g_data;  // directory with the shipped gluing specs

ppt::CommandResult run_cli(const std::string& args) { return ppt::run_command(g_cli + " " + args); }

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    REQUIRE(out.good());
    out << content;
}

/* Pull the number printed after "<key>: " from text output. */
double text_field(const std::string& output, const std::string& key) {
    size_t pos = output.find(key + ": ");
    REQUIRE(pos != std::string::npos);
    return std::stod(output.substr(pos + key.size() + 2));
}

int count_occurrences(const std::string& text, const std::string& needle) {
    int n = 0;
    for (size_t pos = text.find(needle); pos != std::string::npos;
         pos = text.find(needle, pos + needle.size()))
        ++n;
    return n;
}

}  // namespace

TEST_CASE("compute on a generated flat torus emits the documented JSON") {
    auto r = run_cli("compute --generate flat-torus:4x4 --scheme unit");
    REQUIRE(r.exit_code == 0);
    json j = json::parse(r.output);

    // exactly the documented top-level keys
    REQUIRE(j.is_object());
    CHECK(j.size() == 6);
    for (const char* key : {"genus", "scheme", "pi", "pi_star", "residuals", "mesh"})
        CHECK(j.contains(key));

    CHECK(j["genus"] == 1);
    CHECK(j["scheme"] == "unit");
    for (const char* block : {"pi", "pi_star"}) {
        REQUIRE(j[block]["re"].size() == 1);
        CHECK(std::abs(j[block]["re"][0][0].get<double>()) < 1e-10);
        CHECK(std::abs(j[block]["im"][0][0].get<double>() - 1.0) < 1e-10);
    }
    for (const char* key : {"harmonic", "closedness", "normalization", "symmetry"})
        CHECK(std::abs(j["residuals"][key].get<double>()) < 1e-8);
    CHECK(std::abs(j["residuals"]["pi_pi_star"].get<double>()) < 1e-7);
    CHECK(j["mesh"]["vertices"] == 16);
    CHECK(j["mesh"]["edges"] == 32);
    CHECK(j["mesh"]["faces"] == 16);
    CHECK(j["mesh"]["min_rho"] == 1.0);
    CHECK(j["mesh"]["min_angle_deg"].is_null());  // no embedding, no angles
}

TEST_CASE("repeated runs are byte-identical") {
    std::string cmd = "compute --generate omega2 --refine 2";
    auto first = run_cli(cmd);
    auto second = run_cli(cmd);
    REQUIRE(first.exit_code == 0);
    REQUIRE(second.exit_code == 0);
    CHECK(first.output == second.output);
}

TEST_CASE("computing from a shipped gluing spec file") {
    auto r = run_cli("compute --spec " + g_data + "/omega1.json --refine 3");
    REQUIRE(r.exit_code == 0);
    json j = json::parse(r.output);
    CHECK(j["genus"] == 2);
    CHECK(j["mesh"]["vertices"] == 25);
    CHECK(j["scheme"] == "unit");
}

TEST_CASE("shipped spec files agree with the built-in generators") {
    CHECK(save_gluing_spec(load_gluing_spec_file(g_data + "/omega1.json")) ==
          save_gluing_spec(omega1_spec()));
    CHECK(save_gluing_spec(load_gluing_spec_file(g_data + "/omega2.json")) ==
          save_gluing_spec(omega2_spec()));
    CHECK(save_gluing_spec(load_gluing_spec_file(g_data + "/omega3.json")) ==
          save_gluing_spec(omega3_spec()));
}

TEST_CASE("mesh input: validate accepts a sphere, compute rejects it") {
    std::string path = "/tmp/pp_cli_tetra.obj";
    write_file(path, ppt::tetra_obj());
    auto v = run_cli("validate --mesh " + path);
    CHECK(v.exit_code == 0);
    CHECK(v.output.find("genus: 0") != std::string::npos);
    CHECK(v.output.find("valid") != std::string::npos);
    auto c = run_cli("compute --mesh " + path);
    CHECK(c.exit_code == 3);  // no cycles, no period matrix
}

TEST_CASE("mesh input: a computed torus reports its embedding data") {
    EmbeddedMesh mesh = ppt::staggered_torus(16, 10);
    std::ofstream out("/tmp/pp_cli_ring.obj");
    save_obj(mesh, out);
    out.close();
    auto r = run_cli("compute --mesh /tmp/pp_cli_ring.obj");
    REQUIRE(r.exit_code == 0);
    json j = json::parse(r.output);
    CHECK(j["genus"] == 1);
    CHECK(j["scheme"] == "intrinsic");  // mesh default
    CHECK(j["mesh"]["min_angle_deg"].is_number());
    CHECK(j["mesh"]["min_angle_deg"].get<double>() > 0.0);
    double min_rho = j["mesh"]["min_rho"].get<double>();
    CHECK(min_rho > 0.0);
    // tightening the threshold past the smallest weight rejects the mesh
    auto strict = run_cli("validate --mesh /tmp/pp_cli_ring.obj --tol " +
                          std::to_string(2.0 * min_rho));
    CHECK(strict.exit_code == 2);
    CHECK(strict.output.find("rho=") != std::string::npos);
}

TEST_CASE("cocircular cells are reported edge by edge") {
    std::string path = "/tmp/pp_cli_cube.obj";
    write_file(path, ppt::cube_obj());
    auto r = run_cli("compute --mesh " + path);
    CHECK(r.exit_code == 2);
    CHECK(count_occurrences(r.output, "rho=") == 6);  // the six split diagonals
}

TEST_CASE("compare against a named reference") {
    auto r = run_cli("compare --generate omega1 --refine 2 --ref omega1");
    REQUIRE(r.exit_code == 0);
    CHECK(text_field(r.output, "distance") <= 1e-6);
    CHECK(r.output.find("computed_reduced") != std::string::npos);
    CHECK(r.output.find("reference_reduced") != std::string::npos);
}

TEST_CASE("compare refuses mismatched genus") {
    auto r = run_cli("compare --generate flat-torus:4x4 --ref omega1");
    CHECK(r.exit_code == 5);
}

TEST_CASE("compare against a previously computed result file") {
    auto computed = run_cli("compute --generate omega2 --refine 2");
    REQUIRE(computed.exit_code == 0);
    write_file("/tmp/pp_cli_omega2.json", computed.output);
    auto r = run_cli("compare --generate omega2 --refine 2 --ref /tmp/pp_cli_omega2.json");
    REQUIRE(r.exit_code == 0);
    CHECK(text_field(r.output, "distance") < 1e-12);
}

TEST_CASE("configuration errors exit with the validation code") {
    for (const std::string& args : {
             std::string("compute"),                                    // no input at all
             std::string("compute --mesh a.obj --spec b.json"),         // two inputs
             std::string("compute --spec ") + g_data + "/omega1.json --scheme intrinsic",
             std::string("compute --generate dodecahedron"),            // unknown generator
             std::string("compute --mesh /tmp/pp_cli_tetra.obj --refine 2"),
             std::string("compute --generate flat-torus:4x4 --out yaml"),
             std::string("compute --generate flat-torus:axb"),          // bad dimensions
             std::string("compute --generate flat-torus:2x2:5"),        // tau not imaginary
             std::string("compare --generate omega1 --ref no_such_reference"),
         }) {
        CAPTURE(args);
        auto r = run_cli(args);
        CHECK(r.exit_code == 2);
        CHECK(r.output.find("error:") != std::string::npos);
    }
}

TEST_CASE("lattice parameters parse in all spellings") {
    for (const char* gen : {"flat-torus:2x2:i", "flat-torus:2x2:2i",
                            "flat-torus:3x3:0.5+0.866i", "flat-torus:3x3:-0.25+1.1i"}) {
        CAPTURE(gen);
        auto r = run_cli(std::string("compute --generate ") + gen);
        REQUIRE(r.exit_code == 0);
        CHECK(json::parse(r.output)["genus"] == 1);
    }
}

TEST_CASE("text output prints both matrices") {
    auto r = run_cli("compute --generate flat-torus:4x4 --out text");
    REQUIRE(r.exit_code == 0);
    CHECK(r.output.find("genus: 1") != std::string::npos);
    CHECK(r.output.find("pi:") != std::string::npos);
    CHECK(r.output.find("pi_star:") != std::string::npos);
    CHECK(std::abs(text_field(r.output, "symmetry_defect")) < 1e-10);
    CHECK(std::abs(text_field(r.output, "pi_pi_star_defect")) < 1e-7);
}

TEST_CASE("diagnose evaluates the energies of a node function") {
    // 2x2 torus: 4 vertex values then 4 cell values
    write_file("/tmp/pp_cli_const.txt", "1\n1\n1\n1\n1\n1\n1\n1\n");
    auto r = run_cli("diagnose --generate flat-torus:2x2 --function /tmp/pp_cli_const.txt");
    REQUIRE(r.exit_code == 0);
    CHECK(text_field(r.output, "dirichlet_energy") == 0.0);
    CHECK(text_field(r.output, "conformal_energy") == 0.0);
    CHECK(text_field(r.output, "area") == 0.0);
    CHECK(text_field(r.output, "energy_identity_residual") == 0.0);

    std::mt19937 rng(11);
    std::normal_distribution<double> gauss;
    std::string lines;
    for (int k = 0; k < 8; ++k)
        lines += std::to_string(gauss(rng)) + " " + std::to_string(gauss(rng)) + "\n";
    write_file("/tmp/pp_cli_rand.txt", lines);
    auto q = run_cli("diagnose --generate flat-torus:2x2 --function /tmp/pp_cli_rand.txt");
    REQUIRE(q.exit_code == 0);
    CHECK(text_field(q.output, "dirichlet_energy") >= 0.0);
    CHECK(std::abs(text_field(q.output, "energy_identity_residual")) <= 1e-10);

    write_file("/tmp/pp_cli_short.txt", "1\n2\n3\n");
    auto bad = run_cli("diagnose --generate flat-torus:2x2 --function /tmp/pp_cli_short.txt");
    CHECK(bad.exit_code == 2);
}

TEST_CASE("flag errors from the option parser are nonzero") {
    CHECK(run_cli("").exit_code != 0);           // a subcommand is required
    CHECK(run_cli("frobnicate").exit_code != 0);  // unknown subcommand
    CHECK(run_cli("compare --generate omega1").exit_code != 0);  // --ref is required
}

int main(int argc, char** argv) {
    if (argc < 3) {
        std::fprintf(stderr, "usage: %s <cli-binary> <data-dir> [doctest args]\n", argv[0]);
        return 1;
    }
    g_cli = argv[1];
    g_data = argv[2];
    std::vector<char*> args{argv[0]};
    for (int i = 3; i < argc; ++i) args.push_back(argv[i]);
    doctest::Context context(static_cast<int>(args.size()), args.data());
    return context.run();
}
