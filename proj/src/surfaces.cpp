#include "polyperiod/surfaces.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace polyperiod {

namespace {

using nlohmann::json;

bool is_horizontal(Side side) { return side == Side::south || side == Side::north; }

SideRef parse_side_ref(const json& j, const char* key) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() || !j[1].is_string())
        throw ValidationError(std::string(key) + " must be [square, \"side\"]");
    return SideRef{j[0].get<int>(), parse_side(j[1].get<std::string>())};
}

}  // namespace

Side parse_side(const std::string& letter) {
    if (letter == "S") return Side::south;
    if (letter == "E") return Side::east;
    if (letter == "N") return Side::north;
    if (letter == "W") return Side::west;
    throw ValidationError("unknown side \"" + letter + "\" (expected S, E, N or W)");
}

std::string side_name(Side side) {
    switch (side) {
        case Side::south: return "S";
        case Side::east: return "E";
        case Side::north: return "N";
        default: return "W";
    }
}

GluingKind parse_gluing_kind(const std::string& word) {
    if (word == "translation") return GluingKind::translation;
    if (word == "half_turn") return GluingKind::half_turn;
    throw ValidationError("unknown gluing kind \"" + word +
                          "\" (expected translation or half_turn)");
}

std::string gluing_kind_name(GluingKind kind) {
    return kind == GluingKind::translation ? "translation" : "half_turn";
}

GluingSpec load_gluing_spec(std::istream& in) {
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& err) {
        throw ValidationError(std::string("gluing spec is not valid JSON: ") + err.what());
    }
    if (!j.is_object() || !j.contains("squares") || !j.contains("glue"))
        throw ValidationError("gluing spec must be an object with squares and glue");
    if (!j["squares"].is_number_integer())
        throw ValidationError("squares must be an integer");
    GluingSpec spec;
    spec.squares = j["squares"].get<int>();
    if (!j["glue"].is_array()) throw ValidationError("glue must be an array");
    for (const json& rec : j["glue"]) {
        if (!rec.is_object() || !rec.contains("from") || !rec.contains("to") ||
            !rec.contains("kind"))
            throw ValidationError("each gluing needs from, to and kind");
        Gluing gl;
        gl.from = parse_side_ref(rec["from"], "from");
        gl.to = parse_side_ref(rec["to"], "to");
        if (!rec["kind"].is_string()) throw ValidationError("kind must be a string");
        gl.kind = parse_gluing_kind(rec["kind"].get<std::string>());
        spec.gluings.push_back(gl);
    }
    return spec;
}

GluingSpec load_gluing_spec_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open gluing spec file: " + path);
    return load_gluing_spec(in);
}

std::string save_gluing_spec(const GluingSpec& spec) {
    std::ostringstream out;
    out << "{\n  \"squares\": " << spec.squares << ",\n  \"glue\": [";
    for (size_t k = 0; k < spec.gluings.size(); ++k) {
        const Gluing& gl = spec.gluings[k];
        out << (k ? "," : "") << "\n    {\"from\": [" << gl.from.square << ", \""
            << side_name(gl.from.side) << "\"], \"to\": [" << gl.to.square << ", \""
            << side_name(gl.to.side) << "\"], \"kind\": \"" << gluing_kind_name(gl.kind)
            << "\"}";
    }
    out << "\n  ]\n}\n";
    return out.str();
}

WeightedSurfaceGraph build_square_tiled(const GluingSpec& spec, int refine) {
    int nsq = spec.squares, n = refine;
    if (nsq < 1) throw ValidationError("a gluing spec needs at least one square");
    if (n < 1) throw ValidationError("refinement must be at least 1");

    std::vector<char> used(4 * nsq, 0);
    auto side_id = [&](const SideRef& r) { return 4 * r.square + (int)r.side; };
    for (const Gluing& gl : spec.gluings) {
        for (const SideRef& r : {gl.from, gl.to})
            if (r.square < 0 || r.square >= nsq)
                throw ValidationError("gluing references square " +
                                      std::to_string(r.square) + " of " +
                                      std::to_string(nsq));
        if (is_horizontal(gl.from.side) != is_horizontal(gl.to.side))
            throw ValidationError("horizontal sides must be glued to horizontal sides "
                                  "and vertical to vertical");
        bool opposite = gl.from.side != gl.to.side &&
                        is_horizontal(gl.from.side) == is_horizontal(gl.to.side) &&
                        (int(gl.from.side) + int(gl.to.side)) % 2 == 0;
        GluingKind expected = opposite ? GluingKind::translation : GluingKind::half_turn;
        if (gl.kind != expected)
            throw ValidationError("sides " + side_name(gl.from.side) + " and " +
                                  side_name(gl.to.side) + " can only be glued by " +
                                  gluing_kind_name(expected));
        bool self = side_id(gl.from) == side_id(gl.to);
        if (self && n % 2 != 0)
            throw ValidationError("a self-identified side needs even refinement");
        for (const SideRef& r : {gl.from, gl.to}) {
            if (used[side_id(r)]++)
                throw ValidationError("square " + std::to_string(r.square) + " side " +
                                      side_name(r.side) + " is glued more than once");
            if (self) break;
        }
    }
    for (int s = 0; s < nsq; ++s)
        for (int k = 0; k < 4; ++k)
            if (!used[4 * s + k])
                throw ValidationError("square " + std::to_string(s) + " side " +
                                      side_name((Side)k) + " is not glued");

    // union-find over the (n+1)^2 corner lattice of every square
    int per = (n + 1) * (n + 1);
    std::vector<int> parent(nsq * per);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    auto unite = [&](int a, int b) {
        int ra = find(a), rb = find(b);
        if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
    };
    auto cid = [&](int s, int i, int j) { return s * per + j * (n + 1) + i; };
    auto side_point = [&](const SideRef& r, int i) {
        switch (r.side) {
            case Side::south: return cid(r.square, i, 0);
            case Side::north: return cid(r.square, i, n);
            case Side::west: return cid(r.square, 0, i);
            default: return cid(r.square, n, i);
        }
    };
    for (const Gluing& gl : spec.gluings)
        for (int i = 0; i <= n; ++i)
            unite(side_point(gl.from, i),
                  side_point(gl.to, gl.kind == GluingKind::translation ? i : n - i));

    std::map<int, int> vmap;
    for (int s = 0; s < nsq; ++s)
        for (int j = 0; j <= n; ++j)
            for (int i = 0; i <= n; ++i) {
                int r = find(cid(s, i, j));
                vmap.emplace(r, (int)vmap.size());
            }

    std::vector<std::vector<int>> faces;
    auto cellf = [&](int s, int i, int j) { return (s * n + j) * n + i; };
    for (int s = 0; s < nsq; ++s)
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i)
                faces.push_back({vmap[find(cid(s, i, j))], vmap[find(cid(s, i + 1, j))],
                                 vmap[find(cid(s, i + 1, j + 1))],
                                 vmap[find(cid(s, i, j + 1))]});

    std::vector<CornerPair> twins;
    std::set<std::pair<int, int>> glued;
    auto add_twin = [&](std::pair<int, int> a, std::pair<int, int> b) {
        twins.push_back({a, b});
        glued.insert(a);
        glued.insert(b);
    };
    for (int s = 0; s < nsq; ++s)
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i) {
                if (i + 1 < n) add_twin({cellf(s, i, j), 1}, {cellf(s, i + 1, j), 3});
                if (j + 1 < n) add_twin({cellf(s, i, j), 2}, {cellf(s, i, j + 1), 0});
            }
    auto side_cell = [&](const SideRef& r, int c) -> std::pair<int, int> {
        switch (r.side) {
            case Side::south: return {cellf(r.square, c, 0), 0};
            case Side::north: return {cellf(r.square, c, n - 1), 2};
            case Side::west: return {cellf(r.square, 0, c), 3};
            default: return {cellf(r.square, n - 1, c), 1};
        }
    };
    for (const Gluing& gl : spec.gluings)
        for (int c = 0; c < n; ++c) {
            auto a = side_cell(gl.from, c);
            auto b = side_cell(gl.to, gl.kind == GluingKind::translation ? c : n - 1 - c);
            if (glued.count(a) || glued.count(b)) continue;  // pair listed from both ends
            add_twin(a, b);
        }

    return build_structure_from_cells(faces, twins);
}

WeightedSurfaceGraph flat_torus(int n, int m, Complex tau) {
    if (n < 1 || m < 1) throw ValidationError("flat torus needs n >= 1 and m >= 1");
    if (!(tau.imag() > 0.0))
        throw ValidationError("the lattice parameter must have positive imaginary part");
    auto vid = [&](int i, int j) { return ((i % n + n) % n) + n * ((j % m + m) % m); };
    auto fid = vid;

    if (tau.real() == 0.0) {
        // rectangle cells; weights are the aspect ratios of cell sides
        std::vector<std::vector<int>> faces;
        for (int j = 0; j < m; ++j)
            for (int i = 0; i < n; ++i)
                faces.push_back({vid(i, j), vid(i + 1, j), vid(i + 1, j + 1), vid(i, j + 1)});
        std::vector<CornerPair> twins;
        for (int j = 0; j < m; ++j)
            for (int i = 0; i < n; ++i) {
                twins.push_back({{fid(i, j), 1}, {fid(i + 1, j), 3}});
                twins.push_back({{fid(i, j), 2}, {fid(i, j + 1), 0}});
            }
        WeightedSurfaceGraph s = build_structure_from_cells(faces, twins);
        double y = tau.imag();
        std::vector<double> rho(s.edge_count);
        for (int e = 0; e < s.edge_count; ++e) {
            int slot = s.he_slot[s.edge_he[e]];
            rho[e] = (slot == 0 || slot == 2) ? y : 1.0 / y;
        }
        set_weights(s, rho);
        return s;
    }

    // slanted cells: split along the shorter diagonal, cotangent weights
    bool positive = tau.real() > 0.0;
    Complex a(0.0, 0.0), b(1.0, 0.0), c = Complex(1.0, 0.0) + tau, d = tau;
    Complex corner[2][3];
    if (positive) {
        corner[0][0] = a, corner[0][1] = b, corner[0][2] = d;
        corner[1][0] = b, corner[1][1] = c, corner[1][2] = d;
    } else {
        corner[0][0] = a, corner[0][1] = b, corner[0][2] = c;
        corner[1][0] = a, corner[1][1] = c, corner[1][2] = d;
    }
    double cot[2][3];
    for (int part = 0; part < 2; ++part)
        for (int slot = 0; slot < 3; ++slot) {
            Complex apex = corner[part][(slot + 2) % 3];
            Complex u = corner[part][slot] - apex;
            Complex v = corner[part][(slot + 1) % 3] - apex;
            double cross = u.real() * v.imag() - u.imag() * v.real();
            cot[part][slot] = (u.real() * v.real() + u.imag() * v.imag()) / cross;
        }

    std::vector<std::vector<int>> faces;
    auto tri_id = [&](int i, int j, int part) { return 2 * fid(i, j) + part; };
    for (int j = 0; j < m; ++j)
        for (int i = 0; i < n; ++i) {
            int va = vid(i, j), vb = vid(i + 1, j), vc = vid(i + 1, j + 1),
                vd = vid(i, j + 1);
            if (positive) {
                faces.push_back({va, vb, vd});
                faces.push_back({vb, vc, vd});
            } else {
                faces.push_back({va, vb, vc});
                faces.push_back({va, vc, vd});
            }
        }
    std::vector<CornerPair> twins;
    for (int j = 0; j < m; ++j)
        for (int i = 0; i < n; ++i) {
            if (positive) {
                twins.push_back({{tri_id(i, j, 0), 1}, {tri_id(i, j, 1), 2}});  // diagonal
                twins.push_back({{tri_id(i, j, 1), 0}, {tri_id(i + 1, j, 0), 2}});
                twins.push_back({{tri_id(i, j, 1), 1}, {tri_id(i, j + 1, 0), 0}});
            } else {
                twins.push_back({{tri_id(i, j, 0), 2}, {tri_id(i, j, 1), 0}});  // diagonal
                twins.push_back({{tri_id(i, j, 0), 1}, {tri_id(i + 1, j, 1), 2}});
                twins.push_back({{tri_id(i, j, 1), 1}, {tri_id(i, j + 1, 0), 0}});
            }
        }
    WeightedSurfaceGraph s = build_structure_from_cells(faces, twins);
    std::vector<double> rho(s.edge_count);
    std::vector<std::tuple<int, int, double>> bad;
    for (int e = 0; e < s.edge_count; ++e) {
        int h = s.edge_he[e], t = s.he_twin[h];
        rho[e] = 0.5 * (cot[s.he_face[h] % 2][s.he_slot[h]] +
                        cot[s.he_face[t] % 2][s.he_slot[t]]);
        if (rho[e] <= 1e-10) bad.emplace_back(s.e_tail[e], s.e_head[e], rho[e]);
    }
    if (!bad.empty())
        throw DelaunayViolation(std::to_string(bad.size()) +
                                    " edge(s) fail the strict Delaunay condition",
                                std::move(bad));
    set_weights(s, rho);
    return s;
}

GluingSpec omega1_spec() {
    GluingSpec spec;
    spec.squares = 3;
    auto t = GluingKind::translation;
    spec.gluings = {
        {{0, Side::east}, {1, Side::west}, t}, {{1, Side::east}, {0, Side::west}, t},
        {{0, Side::north}, {2, Side::south}, t}, {{2, Side::north}, {0, Side::south}, t},
        {{1, Side::north}, {1, Side::south}, t}, {{2, Side::east}, {2, Side::west}, t},
    };
    return spec;
}

GluingSpec omega2_spec() {
    GluingSpec spec;
    spec.squares = 4;
    auto t = GluingKind::translation;
    auto h = GluingKind::half_turn;
    spec.gluings = {
        {{0, Side::east}, {1, Side::west}, t}, {{1, Side::east}, {0, Side::west}, t},
        {{2, Side::east}, {3, Side::east}, h}, {{2, Side::west}, {3, Side::west}, h},
        {{0, Side::north}, {3, Side::south}, t}, {{1, Side::north}, {2, Side::south}, t},
        {{2, Side::north}, {1, Side::south}, t}, {{3, Side::north}, {0, Side::south}, t},
    };
    return spec;
}

GluingSpec omega3_spec() {
    GluingSpec spec;
    spec.squares = 6;
    auto t = GluingKind::translation;
    auto h = GluingKind::half_turn;
    spec.gluings = {
        {{0, Side::east}, {1, Side::west}, t},  {{0, Side::west}, {1, Side::east}, t},
        {{1, Side::north}, {2, Side::south}, t}, {{1, Side::south}, {2, Side::north}, t},
        {{2, Side::west}, {3, Side::east}, t},  {{2, Side::east}, {3, Side::west}, t},
        {{3, Side::south}, {4, Side::north}, t}, {{3, Side::north}, {4, Side::south}, t},
        {{4, Side::east}, {5, Side::west}, t},  {{4, Side::west}, {5, Side::east}, t},
        {{5, Side::north}, {0, Side::north}, h}, {{5, Side::south}, {0, Side::south}, h},
    };
    return spec;
}

const std::vector<ReferenceMatrix>& reference_matrices() {
    static const std::vector<ReferenceMatrix> refs = [] {
        std::vector<ReferenceMatrix> out;
        Complex i(0.0, 1.0);
        Eigen::MatrixXcd om1(2, 2), om2(2, 2), om3(2, 2), tw(1, 1);
        om1 << 5.0 * i / 3.0, -4.0 * i / 3.0, -4.0 * i / 3.0, 5.0 * i / 3.0;
        double r2 = std::sqrt(2.0);
        om2 << Complex(-2.0, 2.0 * r2) / 3.0, Complex(1.0, -r2) / 3.0,
            Complex(1.0, -r2) / 3.0, Complex(-2.0, 2.0 * r2) / 3.0;
        double r3 = std::sqrt(3.0);
        om3 << 2.0 * i / r3, -i / r3, -i / r3, 2.0 * i / r3;
        tw << Complex(0.41300, 0.91073);
        out.push_back({"omega1", om1});
        out.push_back({"omega2", om2});
        out.push_back({"omega3", om3});
        out.push_back({"tau_w", tw});
        out.push_back({"omega_l", om3});
        return out;
    }();
    return refs;
}

}  // namespace polyperiod
