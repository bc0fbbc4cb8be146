#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <string>
#include <vector>

#include "polyperiod/cochain.hpp"
#include "polyperiod/structure.hpp"

namespace polyperiod {

/* Sides of a unit square, in the boundary order of its face cycle. */
enum class Side { south = 0, east = 1, north = 2, west = 3 };

/* How two square sides are identified: by translation, or by translation
   composed with a half turn. */
enum class GluingKind { translation, half_turn };

Side parse_side(const std::string& letter);  // "S", "E", "N", "W"
std::string side_name(Side side);
GluingKind parse_gluing_kind(const std::string& word);
std::string gluing_kind_name(GluingKind kind);

struct SideRef {
    int square = 0;
    Side side = Side::south;
};

struct Gluing {
    SideRef from;
    SideRef to;
    GluingKind kind = GluingKind::translation;
};

/* Abstract square-tiled surface: unit squares plus side identifications.
   Every side must be identified exactly once, horizontal sides with
   horizontal ones and vertical with vertical. */
struct GluingSpec {
    int squares = 0;
    std::vector<Gluing> gluings;
};

/* Parse a gluing spec from JSON:
   {"squares": N, "glue": [{"from": [sq, "N"], "to": [sq, "S"],
                            "kind": "translation" | "half_turn"}, ...]} */
GluingSpec load_gluing_spec(std::istream& in);
GluingSpec load_gluing_spec_file(const std::string& path);

/* Serialize a spec to the JSON layout accepted by load_gluing_spec. */
std::string save_gluing_spec(const GluingSpec& spec);

/*
 * Realize a gluing spec as a weighted surface, each square subdivided into
 * refine x refine cells, all weights 1.
 *
 * Cell corners on identified sides are merged, so vertex counts follow the
 * identifications.  Throws ValidationError on reused sides, on
 * orientation-breaking gluings (a translation must pair opposite side labels,
 * a half turn equal ones), and on a self-identified side with odd refinement.
 */
WeightedSurfaceGraph build_square_tiled(const GluingSpec& spec, int refine);

/*
 * Flat torus with n x m parallelogram cells spanned by (1, tau), Im tau > 0.
 *
 * For purely imaginary tau the cells stay quadrilaterals and the weights are
 * the rectangle aspect ratios; otherwise each cell is split along its shorter
 * diagonal and the weights are the cotangent weights of the flat metric.
 * The modulus of the resulting torus is m*tau/n.
 */
WeightedSurfaceGraph flat_torus(int n, int m, Complex tau = Complex(0.0, 1.0));

/* Built-in gluing data reproducing the three reference period matrices. */
GluingSpec omega1_spec();  // L-shaped arrangement of 3 squares, translations only
GluingSpec omega2_spec();  // 4 squares with two half-turn identifications
GluingSpec omega3_spec();  // 6-square strip closed up by two half turns

/* A named period matrix used as a comparison target. */
struct ReferenceMatrix {
    std::string name;
    Eigen::MatrixXcd omega;
};

/* Comparison targets: omega1, omega2, omega3, tau_w, omega_l. */
const std::vector<ReferenceMatrix>& reference_matrices();

}  // namespace polyperiod
