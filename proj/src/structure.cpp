#include "polyperiod/structure.hpp"

#include <algorithm>
#include <map>
#include <string>

namespace polyperiod {

WeightedSurfaceGraph build_structure_from_cells(const std::vector<std::vector<int>>& faces,
                                                const std::vector<CornerPair>& twins,
                                                const std::vector<double>& rho) {
    WeightedSurfaceGraph s;
    if (faces.empty()) throw ValidationError("no faces");
    s.faces = faces;
    s.face_count = (int)faces.size();

    // halfedges, one per face corner, numbered face by face
    s.face_offset.resize(s.face_count);
    int nhe = 0;
    int max_vertex = -1;
    for (int f = 0; f < s.face_count; ++f) {
        const auto& cyc = faces[f];
        if (cyc.size() < 3)
            throw ValidationError("face " + std::to_string(f) + ": degree < 3");
        s.face_offset[f] = nhe;
        nhe += (int)cyc.size();
        for (int v : cyc) {
            if (v < 0) throw ValidationError("negative vertex id");
            max_vertex = std::max(max_vertex, v);
        }
    }
    s.halfedge_count = nhe;
    s.vertex_count = max_vertex + 1;
    s.he_face.resize(nhe);
    s.he_slot.resize(nhe);
    s.he_tail.resize(nhe);
    s.he_head.resize(nhe);
    s.he_next.resize(nhe);
    s.he_prev.resize(nhe);
    for (int f = 0; f < s.face_count; ++f) {
        int deg = s.face_degree(f), off = s.face_offset[f];
        for (int i = 0; i < deg; ++i) {
            int h = off + i;
            s.he_face[h] = f;
            s.he_slot[h] = i;
            s.he_tail[h] = faces[f][i];
            s.he_head[h] = faces[f][(i + 1) % deg];
            s.he_next[h] = off + (i + 1) % deg;
            s.he_prev[h] = off + (i + deg - 1) % deg;
        }
    }

    // twins: explicit corner pairs, or inferred from directed vertex pairs
    s.he_twin.assign(nhe, -1);
    if (twins.empty()) {
        std::map<std::pair<int, int>, std::vector<int>> by_ends;
        for (int h = 0; h < nhe; ++h) by_ends[{s.he_tail[h], s.he_head[h]}].push_back(h);
        for (const auto& [ends, hs] : by_ends) {
            if (hs.size() != 1)
                throw ValidationError("repeated directed side (" + std::to_string(ends.first) +
                                      "," + std::to_string(ends.second) +
                                      "): inconsistent orientation or multi-edge "
                                      "(multi-edges need explicit gluing)");
            auto opp = by_ends.find({ends.second, ends.first});
            if (opp == by_ends.end())
                throw ValidationError("unmatched side (" + std::to_string(ends.first) + "," +
                                      std::to_string(ends.second) + "): surface is not closed");
            s.he_twin[hs[0]] = opp->second[0];
        }
    } else {
        for (const auto& [a, b] : twins) {
            for (auto [f, i] : {a, b})
                if (f < 0 || f >= s.face_count || i < 0 || i >= s.face_degree(f))
                    throw ValidationError("gluing refers to missing face corner");
            int ha = s.halfedge_of(a.first, a.second);
            int hb = s.halfedge_of(b.first, b.second);
            if (s.he_twin[ha] != -1 || s.he_twin[hb] != -1)
                throw ValidationError("side glued more than once");
            s.he_twin[ha] = hb;
            s.he_twin[hb] = ha;
        }
        for (int h = 0; h < nhe; ++h)
            if (s.he_twin[h] < 0) throw ValidationError("unglued side: surface is not closed");
    }
    for (int h = 0; h < nhe; ++h) {
        if (s.he_twin[h] == h) throw ValidationError("side glued to itself");
        if (s.he_twin[s.he_twin[h]] != h) throw ValidationError("gluing is not an involution");
        if (s.he_tail[h] != s.he_head[s.he_twin[h]] || s.he_head[h] != s.he_tail[s.he_twin[h]])
            throw ValidationError("glued sides disagree on endpoints (orientation-breaking)");
    }

    // undirected edges: first-seen halfedge is the reference orientation
    s.he_edge.assign(nhe, -1);
    s.he_forward.assign(nhe, 0);
    for (int h = 0; h < nhe; ++h) {
        if (s.he_edge[h] >= 0) continue;
        int e = (int)s.edge_he.size();
        s.edge_he.push_back(h);
        s.he_edge[h] = e;
        s.he_edge[s.he_twin[h]] = e;
        s.he_forward[h] = 1;
    }
    s.edge_count = (int)s.edge_he.size();
    s.e_tail.resize(s.edge_count);
    s.e_head.resize(s.edge_count);
    s.e_left.resize(s.edge_count);
    s.e_right.resize(s.edge_count);
    for (int e = 0; e < s.edge_count; ++e) {
        int h = s.edge_he[e];
        s.e_tail[e] = s.he_tail[h];
        s.e_head[e] = s.he_head[h];
        s.e_left[e] = s.he_face[h];
        s.e_right[e] = s.he_face[s.he_twin[h]];
    }

    s.euler_characteristic = s.vertex_count - s.edge_count + s.face_count;
    if (s.euler_characteristic % 2)
        throw ValidationError("odd Euler characteristic: not a closed oriented surface");
    s.genus = (2 - s.euler_characteristic) / 2;
    if (s.genus < 0) throw ValidationError("Euler characteristic > 2: surface not connected");

    // rotation system: orbits of twin(prev(.)) are the ccw outgoing fans
    s.vertex_out.assign(s.vertex_count, {});
    std::vector<char> seen(nhe, 0);
    for (int h0 = 0; h0 < nhe; ++h0) {
        if (seen[h0]) continue;
        std::vector<int> orbit;
        int h = h0;
        while (!seen[h]) {
            seen[h] = 1;
            orbit.push_back(h);
            h = s.he_twin[s.he_prev[h]];
        }
        int v = s.he_tail[h0];
        if (!s.vertex_out[v].empty())
            throw ValidationError("vertex " + std::to_string(v) +
                                  " has more than one edge fan (non-manifold)");
        s.vertex_out[v] = std::move(orbit);
    }
    for (int v = 0; v < s.vertex_count; ++v)
        if (s.vertex_out[v].empty())
            throw ValidationError("isolated vertex " + std::to_string(v));

    // connectivity of the primal graph
    std::vector<char> reached(s.vertex_count, 0);
    std::vector<int> stack = {0};
    reached[0] = 1;
    int nreach = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int h : s.vertex_out[v]) {
            int w = s.he_head[h];
            if (!reached[w]) {
                reached[w] = 1;
                ++nreach;
                stack.push_back(w);
            }
        }
    }
    if (nreach < s.vertex_count) throw ValidationError("surface is disconnected");

    set_weights(s, rho.empty() ? std::vector<double>(s.edge_count, 1.0) : rho);
    return s;
}

void set_weights(WeightedSurfaceGraph& s, const std::vector<double>& rho) {
    if ((int)rho.size() != s.edge_count)
        throw ValidationError("weight count " + std::to_string(rho.size()) +
                              " != edge count " + std::to_string(s.edge_count));
    for (int e = 0; e < s.edge_count; ++e)
        if (!(rho[e] > 0.0))
            throw ValidationError("non-positive weight on edge (" + std::to_string(s.e_tail[e]) +
                                  "," + std::to_string(s.e_head[e]) + ")");
    s.rho = rho;
}

}  // namespace polyperiod
