#include "polyperiod/homology.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace polyperiod {

SpanningTree spanning_tree(int node_count, const std::vector<std::pair<int, int>>& edges,
                           int root) {
    // adjacency in increasing edge order (deterministic tie-breaking)
    std::vector<std::vector<std::pair<int, int>>> adj(node_count);  // (edge, other endpoint)
    for (int e = 0; e < (int)edges.size(); ++e) {
        adj[edges[e].first].emplace_back(e, edges[e].second);
        adj[edges[e].second].emplace_back(e, edges[e].first);
    }
    SpanningTree t;
    t.parent_edge.assign(node_count, -1);
    t.dist.assign(node_count, -1);
    t.in_tree.assign(edges.size(), 0);
    t.dist[root] = 0;
    std::vector<int> queue = {root};
    for (size_t qi = 0; qi < queue.size(); ++qi) {
        int n = queue[qi];
        for (auto [e, m] : adj[n])
            if (t.dist[m] < 0) {
                t.dist[m] = t.dist[n] + 1;
                t.parent_edge[m] = e;
                t.in_tree[e] = 1;
                queue.push_back(m);
            }
    }
    for (int n = 0; n < node_count; ++n)
        if (t.dist[n] < 0) throw ValidationError("graph is disconnected");
    return t;
}

HomologyBasis homotopy_basis(const WeightedSurfaceGraph& s, int root) {
    int nv = s.vertex_count, nf = s.face_count, nhe = s.halfedge_count;
    int node_count = nv + nf;
    if (root < 0 || root >= node_count) throw ValidationError("root node out of range");

    // quad-complex 1-skeleton: edge c joins tail(c) to the node of face(c)
    std::vector<std::pair<int, int>> dedges(nhe);
    for (int c = 0; c < nhe; ++c) dedges[c] = {s.he_tail[c], nv + s.he_face[c]};
    SpanningTree tree = spanning_tree(node_count, dedges, root);

    // merge quads into a simply connected region across one open edge each
    std::vector<std::array<int, 4>> quad_edges(s.edge_count);
    for (int e = 0; e < s.edge_count; ++e) quad_edges[e] = s.quad_corners(e);
    std::vector<std::array<int, 2>> quad_of_corner(nhe, {-1, -1});
    for (int e = 0; e < s.edge_count; ++e)
        for (int c : quad_edges[e]) {
            auto& q = quad_of_corner[c];
            (q[0] < 0 ? q[0] : q[1]) = e;
        }
    std::vector<int> quad_dist(s.edge_count);
    for (int e = 0; e < s.edge_count; ++e) {
        int d = node_count;
        for (int c : quad_edges[e])
            d = std::min(d, std::min(tree.dist[dedges[c].first], tree.dist[dedges[c].second]));
        quad_dist[e] = d;
    }
    int start = 0;
    for (int e = 1; e < s.edge_count; ++e)
        if (quad_dist[e] < quad_dist[start]) start = e;
    std::vector<char> in_region(s.edge_count, 0), in_merge(nhe, 0);
    in_region[start] = 1;
    std::vector<int> queue = {start};
    for (size_t qi = 0; qi < queue.size(); ++qi) {
        int e = queue[qi];
        for (int c : quad_edges[e]) {
            if (tree.in_tree[c] || in_merge[c]) continue;
            auto [qa, qb] = quad_of_corner[c];
            int other = qb == e ? qa : (qa == e ? qb : -1);
            if (other < 0 || in_region[other]) continue;
            in_merge[c] = 1;
            in_region[other] = 1;
            queue.push_back(other);
        }
    }
    for (int e = 0; e < s.edge_count; ++e)
        if (!in_region[e]) throw SolverError("quad region growth did not cover the surface");

    // leftover edges are the basis chords, closest to the root first
    std::vector<int> chords;
    for (int c = 0; c < nhe; ++c)
        if (!tree.in_tree[c] && !in_merge[c]) chords.push_back(c);
    std::stable_sort(chords.begin(), chords.end(), [&](int a, int b) {
        int da = std::min(tree.dist[dedges[a].first], tree.dist[dedges[a].second]);
        int db = std::min(tree.dist[dedges[b].first], tree.dist[dedges[b].second]);
        return da != db ? da < db : a < b;
    });
    if ((int)chords.size() != 2 * s.genus)
        throw SolverError("chord count " + std::to_string(chords.size()) + " != 2g");

    auto path_to_root = [&](int n) {
        DiamondCycle out;  // steps from n up to the root
        while (n != root) {
            int c = tree.parent_edge[n];
            if (dedges[c].second == n) {
                out.push_back({c, -1});
                n = dedges[c].first;
            } else {
                out.push_back({c, +1});
                n = dedges[c].second;
            }
        }
        return out;
    };

    HomologyBasis basis;
    basis.genus = s.genus;
    basis.root = root;
    for (int c : chords) {
        DiamondCycle up = path_to_root(dedges[c].first);
        DiamondCycle down = path_to_root(dedges[c].second);
        DiamondCycle cyc;  // root -> chord tail (tree), across the chord, back down
        for (auto it = up.rbegin(); it != up.rend(); ++it) cyc.push_back({it->corner, -it->dir});
        cyc.push_back({c, +1});
        for (const auto& st : down) cyc.push_back(st);
        basis.cycles.push_back(std::move(cyc));
    }
    int n2g = 2 * s.genus;
    for (const auto& cyc : basis.cycles) {
        basis.primal_reps.push_back(primal_representative(s, cyc));
        basis.dual_reps.push_back(dual_representative(s, cyc));
    }
    basis.intersection.resize(n2g, n2g);
    for (int k = 0; k < n2g; ++k)
        for (int l = 0; l < n2g; ++l)
            basis.intersection(k, l) = intersection_number(s, basis.primal_reps[k],
                                                           basis.dual_reps[l]);
    return basis;
}

PrimalChain primal_representative(const WeightedSurfaceGraph& s, const DiamondCycle& cycle) {
    int nv = s.vertex_count;
    int n = (int)cycle.size();
    PrimalChain rep;
    for (int i = 0; i < n; ++i) {
        auto [c1, d1] = cycle[i];
        auto [c2, d2] = cycle[(i + 1) % n];
        (void)d2;
        int m = d1 > 0 ? nv + s.he_face[c1] : s.he_tail[c1];
        if (m < nv) continue;  // steps meeting at a primal vertex need no primal arc
        int f = m - nv;
        if (s.he_face[c1] != f || s.he_face[c2] != f)
            throw SolverError("cycle corners do not meet at their face node");
        int p1 = s.he_slot[c1], p2 = s.he_slot[c2];
        int deg = s.face_degree(f);
        int fwd = ((p2 - p1) % deg + deg) % deg;
        int bwd = ((p1 - p2) % deg + deg) % deg;
        if (fwd <= bwd) {  // tie -> counterclockwise
            for (int k = 0; k < fwd; ++k)
                rep.push_back({s.halfedge_of(f, (p1 + k) % deg), +1});
        } else {
            for (int k = 0; k < bwd; ++k)
                rep.push_back({s.halfedge_of(f, ((p1 - 1 - k) % deg + deg) % deg), -1});
        }
    }
    return rep;
}

DualChain dual_representative(const WeightedSurfaceGraph& s, const DiamondCycle& cycle) {
    int nv = s.vertex_count;
    int n = (int)cycle.size();
    DualChain rep;
    for (int i = 0; i < n; ++i) {
        auto [c1, d1] = cycle[i];
        auto [c2, d2] = cycle[(i + 1) % n];
        (void)d2;
        int m = d1 > 0 ? nv + s.he_face[c1] : s.he_tail[c1];
        if (m >= nv) continue;  // steps meeting at a face node need no dual arc
        int v = m;
        if (s.he_tail[c1] != v || s.he_tail[c2] != v)
            throw SolverError("cycle corners do not meet at their vertex node");
        const auto& ring = s.vertex_out[v];
        int deg = (int)ring.size();
        int i1 = (int)(std::find(ring.begin(), ring.end(), c1) - ring.begin());
        int i2 = (int)(std::find(ring.begin(), ring.end(), c2) - ring.begin());
        int fwd = ((i2 - i1) % deg + deg) % deg;
        int bwd = ((i1 - i2) % deg + deg) % deg;
        if (fwd <= bwd) {  // tie -> counterclockwise
            for (int k = 0; k < fwd; ++k) {
                int h = ring[(i1 + 1 + k) % deg];
                rep.push_back({s.he_edge[h], s.he_forward[h] ? +1 : -1});
            }
        } else {
            for (int k = 0; k < bwd; ++k) {
                int h = ring[((i1 - k) % deg + deg) % deg];
                rep.push_back({s.he_edge[h], s.he_forward[h] ? -1 : +1});
            }
        }
    }
    return rep;
}

std::vector<long long> primal_counts(const WeightedSurfaceGraph& s, const PrimalChain& chain) {
    std::vector<long long> n(s.edge_count, 0);
    for (const auto& [h, sign] : chain)
        n[s.he_edge[h]] += s.he_forward[h] ? sign : -sign;
    return n;
}

std::vector<long long> dual_counts(const WeightedSurfaceGraph& s, const DualChain& chain) {
    std::vector<long long> n(s.edge_count, 0);
    for (const auto& [e, sign] : chain) n[e] += sign;
    return n;
}

long long intersection_number(const WeightedSurfaceGraph& s, const PrimalChain& c1,
                              const DualChain& c2) {
    std::vector<long long> np = primal_counts(s, c1), nd = dual_counts(s, c2);
    long long total = 0;
    for (int e = 0; e < s.edge_count; ++e) total += np[e] * nd[e];
    return total;
}

static long long floordiv(long long a, long long b) {
    long long q = a / b, r = a % b;
    return (r != 0 && ((r < 0) != (b < 0))) ? q - 1 : q;
}

MatInt symplectic_transform(const MatInt& pairing) {
    MatInt m = pairing;
    int n = (int)m.rows();
    MatInt t = MatInt::Identity(n, n);
    std::vector<int> remaining(n);
    std::iota(remaining.begin(), remaining.end(), 0);
    std::vector<std::pair<int, int>> pairs;

    while (!remaining.empty()) {
        int i = -1, j = -1;
        // locate a +-1 pairing, reducing entries by the Euclidean algorithm
        for (;;) {
            long long best = 0;
            for (int a : remaining)
                for (int b : remaining) {
                    long long v = std::abs(m(a, b));
                    if (v && (best == 0 || v < best)) {
                        best = v;
                        i = a;
                        j = b;
                    }
                }
            if (best == 0) throw SolverError("degenerate intersection pairing");
            if (best == 1) break;
            bool done = false;
            for (int k : remaining) {
                if (k != j && m(i, k) % m(i, j) != 0) {
                    long long q = floordiv(m(i, k), m(i, j));
                    m.col(k) -= q * m.col(j);
                    m.row(k) -= q * m.row(j);
                    t.col(k) -= q * t.col(j);
                    done = true;
                    break;
                }
                if (k != i && m(j, k) % m(j, i) != 0) {
                    long long q = floordiv(m(j, k), m(j, i));
                    m.col(k) -= q * m.col(i);
                    m.row(k) -= q * m.row(i);
                    t.col(k) -= q * t.col(i);
                    done = true;
                    break;
                }
            }
            if (!done) throw SolverError("intersection pairing is not unimodular");
        }
        if (m(i, j) == -1) std::swap(i, j);
        // clear the pairings of every other basis vector with i and j
        for (int k : remaining) {
            if (k == i || k == j) continue;
            long long a = m(i, k), b = m(j, k);
            if (a) {
                m.col(k) -= a * m.col(j);
                m.row(k) -= a * m.row(j);
                t.col(k) -= a * t.col(j);
            }
            if (b) {
                m.col(k) += b * m.col(i);
                m.row(k) += b * m.row(i);
                t.col(k) += b * t.col(i);
            }
        }
        pairs.emplace_back(i, j);
        remaining.erase(std::remove_if(remaining.begin(), remaining.end(),
                                       [&](int k) { return k == i || k == j; }),
                        remaining.end());
    }
    MatInt ordered(n, n);
    int g = n / 2;
    for (int k = 0; k < g; ++k) {
        ordered.col(k) = t.col(pairs[k].first);
        ordered.col(g + k) = t.col(pairs[k].second);
    }
    return ordered;
}

HomologyBasis symplectic_normalize(const WeightedSurfaceGraph& s, const HomologyBasis& basis) {
    int n = 2 * basis.genus;
    MatInt t = symplectic_transform(basis.intersection);

    HomologyBasis out;
    out.genus = basis.genus;
    out.root = basis.root;
    out.normalized = true;
    for (int cp = 0; cp < n; ++cp) {
        DiamondCycle cyc;
        PrimalChain prep;
        DualChain drep;
        for (int c = 0; c < n; ++c) {
            long long coef = t(c, cp);
            for (long long r = 0; r < std::abs(coef); ++r) {
                if (coef > 0) {
                    for (const auto& st : basis.cycles[c]) cyc.push_back(st);
                    for (const auto& sh : basis.primal_reps[c]) prep.push_back(sh);
                    for (const auto& se : basis.dual_reps[c]) drep.push_back(se);
                } else {
                    const auto& bc = basis.cycles[c];
                    for (auto it = bc.rbegin(); it != bc.rend(); ++it)
                        cyc.push_back({it->corner, -it->dir});
                    const auto& bp = basis.primal_reps[c];
                    for (auto it = bp.rbegin(); it != bp.rend(); ++it)
                        prep.push_back({it->halfedge, -it->sign});
                    const auto& bd = basis.dual_reps[c];
                    for (auto it = bd.rbegin(); it != bd.rend(); ++it)
                        drep.push_back({it->edge, -it->sign});
                }
            }
        }
        out.cycles.push_back(std::move(cyc));
        out.primal_reps.push_back(std::move(prep));
        out.dual_reps.push_back(std::move(drep));
    }
    out.intersection.resize(n, n);
    for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
            out.intersection(k, l) = intersection_number(s, out.primal_reps[k],
                                                         out.dual_reps[l]);
    int g = basis.genus;
    for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
            long long expect = 0;
            if (k < g && l == g + k) expect = 1;
            if (k >= g && l == k - g) expect = -1;
            if (out.intersection(k, l) != expect)
                throw SolverError("symplectic normalization failed to reach the standard form");
        }
    return out;
}

}  // namespace polyperiod
