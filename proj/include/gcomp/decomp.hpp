#pragma once

#include "gcomp/netlab.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace gcomp {

// =============================================================================
// Decomposition trees
// =============================================================================

struct DecompNode {
    enum class Kind { Leaf, Tree, Parallel };
    Kind kind = Kind::Leaf;
    std::vector<int> label;                   ///< edge indices
    std::optional<std::pair<int, int>> st;   ///< parallel nodes only
    std::vector<DecompNode> children;

    static DecompNode leaf(int e) { return DecompNode{Kind::Leaf, {e}, std::nullopt, {}}; }

    int depth() const {
        int d = 0;
        for (const auto& c : children) d = std::max(d, 1 + c.depth());
        return d;
    }
    int node_count() const {
        int n = 1;
        for (const auto& c : children) n += c.node_count();
        return n;
    }
};

inline const char* kind_name(DecompNode::Kind k) {
    switch (k) {
        case DecompNode::Kind::Leaf: return "leaf";
        case DecompNode::Kind::Tree: return "tree";
        case DecompNode::Kind::Parallel: return "parallel";
    }
    return "?";
}

namespace detail {

inline std::set<int> touched_vertices(const ResistorNetwork& net, const std::vector<int>& edges) {
    std::set<int> vs;
    for (int e : edges) {
        vs.insert(net.edge_at(e).tail);
        vs.insert(net.edge_at(e).head);
    }
    return vs;
}

inline std::vector<int> intersect(const std::set<int>& a, const std::set<int>& b) {
    std::vector<int> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

/// Parts pairwise share at most one vertex and the part/shared-vertex incidence graph is a forest.
inline bool tree_split_ok(const ResistorNetwork& net, const std::vector<std::vector<int>>& parts, std::string& why) {
    const int k = static_cast<int>(parts.size());
    std::vector<std::set<int>> V(k);
    for (int j = 0; j < k; ++j) V[j] = touched_vertices(net, parts[j]);
    std::map<int, std::set<int>> owners;  // shared vertex -> parts touching it
    for (int a = 0; a < k; ++a)
        for (int b = a + 1; b < k; ++b) {
            const auto common = intersect(V[a], V[b]);
            if (common.size() > 1) {
                why = "parts " + std::to_string(a) + " and " + std::to_string(b) + " share " +
                      std::to_string(common.size()) + " vertices";
                return false;
            }
            if (common.size() == 1) {
                owners[common[0]].insert(a);
                owners[common[0]].insert(b);
            }
        }
    // bipartite graph: nodes 0..k-1 for parts, k.. for shared vertices
    UnionFind uf(k + static_cast<int>(owners.size()));
    int idx = k;
    for (const auto& [v, ps] : owners) {
        for (int p : ps)
            if (!uf.unite(p, idx)) {
                why = "contracted graph of the parts contains a cycle";
                return false;
            }
        ++idx;
    }
    return true;
}

}  // namespace detail

/// Structural check; every violation names the node path ("root/0/2") and the broken condition.
inline std::vector<std::string> validate_decomposition(const ResistorNetwork& net, const DecompNode& root) {
    std::vector<std::string> out;
    const int m = net.num_edges();
    std::function<void(const DecompNode&, const std::string&)> visit = [&](const DecompNode& u,
                                                                           const std::string& path) {
        for (int e : u.label)
            if (e < 0 || e >= m) {
                out.push_back(path + ": label references unknown edge");
                return;
            }
        if (std::set<int>(u.label.begin(), u.label.end()).size() != u.label.size())
            out.push_back(path + ": label repeats an edge");
        if (u.kind == DecompNode::Kind::Leaf) {
            if (u.label.size() != 1) out.push_back(path + ": leaf is not a single edge");
            if (!u.children.empty()) out.push_back(path + ": leaf has children");
            return;
        }
        if (u.children.empty()) {
            out.push_back(path + ": internal node has no children");
            return;
        }
        std::multiset<int> covered;
        std::vector<std::vector<int>> parts;
        for (const auto& c : u.children) {
            if (c.label.empty()) out.push_back(path + ": child with empty label");
            covered.insert(c.label.begin(), c.label.end());
            parts.push_back(c.label);
        }
        if (covered != std::multiset<int>(u.label.begin(), u.label.end()))
            out.push_back(path + ": children do not partition the label");
        if (u.kind == DecompNode::Kind::Tree) {
            std::string why;
            if (!detail::tree_split_ok(net, parts, why)) out.push_back(path + ": tree split invalid, " + why);
        } else {
            if (!u.st || u.st->first == u.st->second || u.st->first < 0 || u.st->second < 0 ||
                u.st->first >= net.num_vertices() || u.st->second >= net.num_vertices()) {
                out.push_back(path + ": parallel split needs distinct s and t");
            } else {
                const std::set<int> st{u.st->first, u.st->second};
                std::vector<std::set<int>> V;
                for (const auto& p : parts) V.push_back(detail::touched_vertices(net, p));
                for (std::size_t a = 0; a < V.size(); ++a)
                    for (std::size_t b = a + 1; b < V.size(); ++b) {
                        const auto common = detail::intersect(V[a], V[b]);
                        if (std::set<int>(common.begin(), common.end()) != st)
                            out.push_back(path + ": parallel parts " + std::to_string(a) + " and " +
                                          std::to_string(b) + " share " + std::to_string(common.size()) +
                                          " vertices, not exactly {s,t}");
                    }
            }
        }
        for (std::size_t i = 0; i < u.children.size(); ++i) visit(u.children[i], path + "/" + std::to_string(i));
    };
    std::vector<int> all(m);
    for (int e = 0; e < m; ++e) all[e] = e;
    std::vector<int> lab = root.label;
    std::sort(lab.begin(), lab.end());
    if (lab != all) out.push_back("root: label is not the full edge set");
    visit(root, "root");
    return out;
}

// =============================================================================
// Automatic decomposition
// =============================================================================

namespace detail {

struct SubGraph {
    const ResistorNetwork* net;
    std::vector<int> edges;
};

/// Edge-blocks (biconnected components) of the subgraph; self-loops form their own blocks.
inline std::vector<std::vector<int>> edge_blocks(const ResistorNetwork& net, const std::vector<int>& edges) {
    const int n = net.num_vertices();
    std::vector<std::vector<std::pair<int, int>>> adj(n);  // (neighbor, edge)
    std::vector<std::vector<int>> blocks;
    for (int e : edges) {
        const auto& E = net.edge_at(e);
        if (E.tail == E.head) {
            blocks.push_back({e});
            continue;
        }
        adj[E.tail].push_back({E.head, e});
        adj[E.head].push_back({E.tail, e});
    }
    std::vector<int> disc(n, -1), low(n, 0);
    std::vector<int> stack;
    int timer = 0;
    std::function<void(int, int)> dfs = [&](int v, int parent_edge) {
        disc[v] = low[v] = timer++;
        for (auto [w, e] : adj[v]) {
            if (e == parent_edge) continue;
            if (disc[w] == -1) {
                stack.push_back(e);
                dfs(w, e);
                low[v] = std::min(low[v], low[w]);
                if (low[w] >= disc[v]) {
                    std::vector<int> blk;
                    while (true) {
                        const int f = stack.back();
                        stack.pop_back();
                        blk.push_back(f);
                        if (f == e) break;
                    }
                    blocks.push_back(std::move(blk));
                }
            } else if (disc[w] < disc[v]) {
                stack.push_back(e);
                low[v] = std::min(low[v], disc[w]);
            }
        }
    };
    for (int v = 0; v < n; ++v)
        if (disc[v] == -1 && !adj[v].empty()) dfs(v, -1);
    for (auto& b : blocks) std::sort(b.begin(), b.end());
    std::sort(blocks.begin(), blocks.end());
    return blocks;
}

/// Parts of a 2-connected edge set at the pair {s,t}: each s-t edge alone, plus one part per
/// component of the rest with s and t removed.
inline std::vector<std::vector<int>> split_at_pair(const ResistorNetwork& net, const std::vector<int>& edges, int s,
                                                   int t) {
    std::vector<std::vector<int>> parts;
    UnionFind uf(net.num_vertices());
    std::vector<int> inner;
    for (int e : edges) {
        const auto& E = net.edge_at(e);
        const bool a = E.tail == s || E.tail == t, b = E.head == s || E.head == t;
        if (a && b) {
            parts.push_back({e});
            continue;
        }
        inner.push_back(e);
        if (!a && !b) uf.unite(E.tail, E.head);
    }
    std::map<int, std::vector<int>> by_root;
    for (int e : inner) {
        const auto& E = net.edge_at(e);
        const int v = (E.tail == s || E.tail == t) ? E.head : E.tail;
        by_root[uf.find(v)].push_back(e);
    }
    for (auto& [r, es] : by_root) parts.push_back(std::move(es));
    return parts;
}

inline bool parts_share_exactly(const ResistorNetwork& net, const std::vector<std::vector<int>>& parts, int s, int t) {
    for (const auto& p : parts) {
        const auto V = touched_vertices(net, p);
        if (!V.count(s) || !V.count(t)) return false;
    }
    return true;
}

inline DecompNode decompose_edges(const ResistorNetwork& net, std::vector<int> edges);

inline DecompNode make_split(const ResistorNetwork& net, DecompNode::Kind kind, std::vector<int> label,
                             std::vector<std::vector<int>> parts, std::optional<std::pair<int, int>> st) {
    DecompNode u;
    u.kind = kind;
    u.label = std::move(label);
    u.st = st;
    for (auto& p : parts) u.children.push_back(decompose_edges(net, std::move(p)));
    return u;
}

inline DecompNode decompose_edges(const ResistorNetwork& net, std::vector<int> edges) {
    std::sort(edges.begin(), edges.end());
    if (edges.size() == 1) return DecompNode::leaf(edges[0]);

    auto blocks = edge_blocks(net, edges);
    if (blocks.size() > 1) return make_split(net, DecompNode::Kind::Tree, edges, std::move(blocks), std::nullopt);

    const auto Vset = touched_vertices(net, edges);
    const std::vector<int> V(Vset.begin(), Vset.end());
    if (V.size() == 2) {
        std::vector<std::vector<int>> singles;
        for (int e : edges) singles.push_back({e});
        return make_split(net, DecompNode::Kind::Parallel, edges, std::move(singles), std::pair{V[0], V[1]});
    }

    // most balanced separation pair
    std::size_t best = edges.size();
    std::vector<std::vector<int>> best_parts;
    std::pair<int, int> best_st{-1, -1};
    for (std::size_t a = 0; a < V.size(); ++a)
        for (std::size_t b = a + 1; b < V.size(); ++b) {
            auto parts = split_at_pair(net, edges, V[a], V[b]);
            if (parts.size() < 2 || !parts_share_exactly(net, parts, V[a], V[b])) continue;
            std::size_t biggest = 0;
            for (const auto& p : parts) biggest = std::max(biggest, p.size());
            if (biggest < best) {
                best = biggest;
                best_parts = std::move(parts);
                best_st = {V[a], V[b]};
            }
        }
    if (!best_parts.empty())
        return make_split(net, DecompNode::Kind::Parallel, edges, std::move(best_parts), best_st);

    // fallback: edges between an adjacent pair versus the rest
    const auto& E0 = net.edge_at(edges[0]);
    const int s = E0.tail, t = E0.head;
    std::vector<int> direct, rest;
    for (int e : edges) {
        const auto& E = net.edge_at(e);
        const bool st = (E.tail == s && E.head == t) || (E.tail == t && E.head == s);
        (st ? direct : rest).push_back(e);
    }
    return make_split(net, DecompNode::Kind::Parallel, edges, {direct, rest}, std::pair{s, t});
}

}  // namespace detail

inline DecompNode auto_decompose(const ResistorNetwork& net) {
    if (net.num_edges() == 0) throw InputError("cannot decompose an empty network");
    std::vector<int> all(net.num_edges());
    for (int e = 0; e < net.num_edges(); ++e) all[e] = e;
    return detail::decompose_edges(net, all);
}

// =============================================================================
// Reflection synthesis
// =============================================================================

/// Orthogonal projector onto the circulation space, from the orthonormal circulation basis.
inline Mat circulation_projector_direct(const ResistorNetwork& net) {
    return la::projector(circulation_basis(net));
}

/// Per-node layer data of a parallel split: slot space C^{k+1} with bottom as the last index.
struct ParallelLayerMaps {
    Mat embed;   ///< |E| x (k+1); column j = normalized part flow, bottom column zero
    Mat u;       ///< (k+1) x (k+1) Householder map sending bottom to psi/|psi|
    Vec psi;     ///< sum_j |f_j|^{-1} |j>
};

namespace detail {
/// Minimum-energy unit s-t flow state of the network restricted to `edges`, on the full edge space.
inline Vec part_flow(const ResistorNetwork& net, const std::vector<int>& edges, int s, int t) {
    Topology T;
    T.num_vertices = net.num_vertices();
    std::vector<Resistance> r;
    for (int e : edges) {
        T.tail.push_back(net.edge_at(e).tail);
        T.head.push_back(net.edge_at(e).head);
        r.push_back(net.edge_at(e).r);
    }
    const auto sol = grounded_solve(T, r, s, t);
    if (!sol.connected) throw InputError("a parallel part does not connect its s and t");
    Vec f = Vec::Zero(net.num_edges());
    for (std::size_t i = 0; i < edges.size(); ++i)
        f(edges[i]) = (sol.potential(T.tail[i]) - sol.potential(T.head[i])) / std::sqrt(r[i].value);
    return f;
}
}  // namespace detail

inline ParallelLayerMaps parallel_layer_maps(const ResistorNetwork& net, const DecompNode& u) {
    const int k = static_cast<int>(u.children.size());
    const int m = net.num_edges();
    ParallelLayerMaps out;
    out.embed = Mat::Zero(m, k + 1);
    out.psi = Vec::Zero(k);
    for (int j = 0; j < k; ++j) {
        const Vec f = detail::part_flow(net, u.children[j].label, u.st->first, u.st->second);
        const double nf = f.norm();
        out.embed.col(j) = f / nf;
        out.psi(j) = 1.0 / nf;
    }
    Vec target = Vec::Zero(k + 1);
    target.head(k) = out.psi.normalized();
    Vec bottom = Vec::Zero(k + 1);
    bottom(k) = 1.0;
    const Vec v = bottom - target;
    out.u = Mat::Identity(k + 1, k + 1) - 2.0 * v * v.transpose() / v.squaredNorm();
    return out;
}

struct ReflectionResult {
    Mat reflection;                  ///< prod_l (-R_l) = I - 2 Pi_C
    Mat projector;                   ///< (I - reflection)/2
    std::vector<Mat> layer_reflections;
};

/// Builds the per-layer reflections R_l = 2 Pi_{S_l} - I and composes R = prod_l (-R_l).
inline ReflectionResult reflection_from_decomposition(const ResistorNetwork& net, const DecompNode& root) {
    if (!net.all_finite_positive()) throw InputError("reflection synthesis requires finite positive resistances");
    const auto violations = validate_decomposition(net, root);
    if (!violations.empty()) throw InputError("invalid decomposition: " + violations.front());
    const int m = net.num_edges();
    const int d = std::max(1, root.depth());
    std::vector<Mat> layer_proj(d, Mat::Zero(m, m));

    std::function<void(const DecompNode&, int)> visit = [&](const DecompNode& u, int depth) {
        if (u.kind == DecompNode::Kind::Leaf) {
            const auto& E = net.edge_at(u.label[0]);
            if (E.tail == E.head) layer_proj[std::max(depth, 1) - 1](u.label[0], u.label[0]) += 1.0;
            return;
        }
        if (u.kind == DecompNode::Kind::Parallel) {
            const auto maps = parallel_layer_maps(net, u);
            const int k = static_cast<int>(u.children.size());
            Mat not_bottom = Mat::Identity(k + 1, k + 1);
            not_bottom(k, k) = 0.0;
            layer_proj[depth] += maps.embed * maps.u * not_bottom * maps.u.transpose() * maps.embed.transpose();
        }
        for (const auto& c : u.children) visit(c, depth + 1);
    };
    visit(root, 0);

    ReflectionResult out;
    out.reflection = Mat::Identity(m, m);
    for (const auto& P : layer_proj) {
        const Mat R = 2.0 * P - Mat::Identity(m, m);
        out.layer_reflections.push_back(R);
        out.reflection = out.reflection * (-R);
    }
    out.projector = 0.5 * (Mat::Identity(m, m) - out.reflection);
    return out;
}

// =============================================================================
// Costs and the spectral method
// =============================================================================

struct DecompositionCost {
    int depth = 0;
    std::vector<int> branching;  ///< k_l per layer
    double K = 1.0;
    double qrom_bits = 0.0;
    double gates = 0.0;
};

inline DecompositionCost decomposition_cost(const DecompNode& root) {
    DecompositionCost c;
    c.depth = root.depth();
    c.branching.assign(c.depth, 0);
    std::function<void(const DecompNode&, int)> visit = [&](const DecompNode& u, int depth) {
        if (!u.children.empty())
            c.branching[depth] = std::max(c.branching[depth], static_cast<int>(u.children.size()));
        for (const auto& ch : u.children) visit(ch, depth + 1);
    };
    visit(root, 0);
    for (int k : c.branching) c.K *= (k + 1);
    c.qrom_bits = static_cast<double>(root.label.size()) * c.K;
    c.gates = c.depth * std::log2(std::max(2.0, c.K));
    return c;
}

/// Smallest nonzero eigenvalue of I - D^{-1/2} A D^{-1/2} with conductance weights.
inline double spectral_gap(const ResistorNetwork& net) {
    const int n = net.num_vertices();
    Mat A = Mat::Zero(n, n);
    for (const auto& E : net.edges()) {
        if (E.tail == E.head || !E.r.is_finite_positive()) continue;
        A(E.tail, E.head) += 1.0 / E.r.value;
        A(E.head, E.tail) += 1.0 / E.r.value;
    }
    const Vec deg = A.rowwise().sum();
    Mat L = Mat::Identity(n, n);
    for (int v = 0; v < n; ++v)
        for (int w = 0; w < n; ++w)
            if (deg(v) > 0 && deg(w) > 0) L(v, w) -= A(v, w) / std::sqrt(deg(v) * deg(w));
    for (int v = 0; v < n; ++v)
        if (deg(v) == 0) L(v, v) = 0.0;
    Eigen::SelfAdjointEigenSolver<Mat> es(L, Eigen::EigenvaluesOnly);
    for (Index i = 0; i < es.eigenvalues().size(); ++i)
        if (es.eigenvalues()(i) > 1e-9) return es.eigenvalues()(i);
    return 0.0;
}

}  // namespace gcomp
