#pragma once

#include "gcomp/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>

#include <algorithm>
#include <numeric>
#include <optional>
#include <queue>
#include <string>
#include <unordered_map>
#include <vector>

namespace gcomp {

// =============================================================================
// Resistances
// =============================================================================

/// Edge resistance in [0, inf]; infinity is a separate state, never a large float.
struct Resistance {
    double value = 1.0;
    bool infinite = false;

    static Resistance of(double v) {
        if (!(v >= 0.0) || std::isinf(v)) {
            if (std::isinf(v) && v > 0) return inf();
            throw InputError("resistance must be a nonnegative real or inf");
        }
        return Resistance{v, false};
    }
    static Resistance inf() { return Resistance{0.0, true}; }

    bool is_zero() const { return !infinite && value == 0.0; }
    bool is_finite_positive() const { return !infinite && value > 0.0; }
    double as_double() const { return infinite ? kInf : value; }
};

/// Resistance from a double where +inf encodes the infinite state.
inline Resistance resistance_from(double v) {
    return std::isinf(v) ? Resistance::inf() : Resistance::of(v);
}

// =============================================================================
// Network
// =============================================================================

struct NetEdge {
    std::string id;
    int tail = 0;
    int head = 0;
    Resistance r;
};

class ResistorNetwork {
public:
    int add_vertex(const std::string& name) {
        auto it = index_.find(name);
        if (it != index_.end()) return it->second;
        const int v = static_cast<int>(names_.size());
        names_.push_back(name);
        index_.emplace(name, v);
        return v;
    }

    /// Adds an edge between named vertices, declaring them if needed.
    int add_edge(const std::string& id, const std::string& tail, const std::string& head,
                 Resistance r = {}) {
        return add_edge(id, add_vertex(tail), add_vertex(head), r);
    }

    int add_edge(const std::string& id, int tail, int head, Resistance r = {}) {
        if (tail < 0 || head < 0 || tail >= num_vertices() || head >= num_vertices())
            throw InputError("edge '" + id + "' references an undeclared vertex");
        if (edge_index_.count(id)) throw InputError("duplicate edge id '" + id + "'");
        const int e = static_cast<int>(edges_.size());
        edges_.push_back(NetEdge{id, tail, head, r});
        edge_index_.emplace(id, e);
        return e;
    }

    void set_terminals(const std::string& s, const std::string& t) {
        set_terminals(vertex(s), vertex(t));
    }
    void set_terminals(int s, int t) {
        if (s == t) throw InputError("source and sink must differ");
        s_ = s;
        t_ = t;
    }
    void clear_terminals() {
        s_.reset();
        t_.reset();
    }

    void set_resistance(int e, Resistance r) { edges_.at(e).r = r; }

    int vertex(const std::string& name) const {
        auto it = index_.find(name);
        if (it == index_.end()) throw InputError("unknown vertex '" + name + "'");
        return it->second;
    }
    bool has_vertex(const std::string& name) const { return index_.count(name) > 0; }
    int edge(const std::string& id) const {
        auto it = edge_index_.find(id);
        if (it == edge_index_.end()) throw InputError("unknown edge '" + id + "'");
        return it->second;
    }
    bool has_edge(const std::string& id) const { return edge_index_.count(id) > 0; }

    int num_vertices() const { return static_cast<int>(names_.size()); }
    int num_edges() const { return static_cast<int>(edges_.size()); }
    const std::vector<std::string>& vertex_names() const { return names_; }
    const std::string& vertex_name(int v) const { return names_.at(v); }
    const std::vector<NetEdge>& edges() const { return edges_; }
    const NetEdge& edge_at(int e) const { return edges_.at(e); }
    std::optional<int> source() const { return s_; }
    std::optional<int> sink() const { return t_; }

    bool all_finite_positive() const {
        return std::all_of(edges_.begin(), edges_.end(),
                           [](const NetEdge& e) { return e.r.is_finite_positive(); });
    }

    std::vector<Resistance> resistances() const {
        std::vector<Resistance> r;
        r.reserve(edges_.size());
        for (const auto& e : edges_) r.push_back(e.r);
        return r;
    }

private:
    std::vector<std::string> names_;
    std::unordered_map<std::string, int> index_;
    std::vector<NetEdge> edges_;
    std::unordered_map<std::string, int> edge_index_;
    std::optional<int> s_, t_;
};

/// Edge-space vector in the basis {|e>}, aligned with the network's edge order.
struct FlowState {
    Vec coeffs;
};

/// Vertex potentials aligned with the network's vertex order.
struct Potential {
    Vec values;
};

// =============================================================================
// Small graph utilities
// =============================================================================

class UnionFind {
public:
    explicit UnionFind(int n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
    int find(int v) {
        while (parent_[v] != v) {
            parent_[v] = parent_[parent_[v]];
            v = parent_[v];
        }
        return v;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent_[std::max(a, b)] = std::min(a, b);
        return true;
    }

private:
    std::vector<int> parent_;
};

/// Signed incidence matrix: +1 at the tail, -1 at the head (self-loops give a zero column).
inline Mat incidence_matrix(const ResistorNetwork& net) {
    Mat B = Mat::Zero(net.num_vertices(), net.num_edges());
    for (int e = 0; e < net.num_edges(); ++e) {
        const auto& E = net.edge_at(e);
        B(E.tail, e) += 1.0;
        B(E.head, e) -= 1.0;
    }
    return B;
}

/// Weighted Laplacian with conductances 1/r on finite positive edges.
inline Mat laplacian(const ResistorNetwork& net) {
    const int n = net.num_vertices();
    Mat L = Mat::Zero(n, n);
    for (const auto& E : net.edges()) {
        if (!E.r.is_finite_positive() || E.tail == E.head) continue;
        const double c = 1.0 / E.r.value;
        L(E.tail, E.tail) += c;
        L(E.head, E.head) += c;
        L(E.tail, E.head) -= c;
        L(E.head, E.tail) -= c;
    }
    return L;
}

inline int count_components(int n, const std::vector<std::pair<int, int>>& ends) {
    UnionFind uf(n);
    int comps = n;
    for (auto [a, b] : ends)
        if (uf.unite(a, b)) --comps;
    return comps;
}

// =============================================================================
// Normalization
// =============================================================================

struct NormalizedNetwork {
    ResistorNetwork net;
    std::vector<int> vertex_map;  ///< original vertex -> representative vertex
    std::vector<int> edge_map;    ///< original edge -> new edge, -1 when deleted or contracted
    bool short_circuit = false;   ///< s and t were merged by contraction
};

/// Deletes r = inf edges and contracts r = 0 edges.
inline NormalizedNetwork normalize_network(const ResistorNetwork& net) {
    const int n = net.num_vertices();
    UnionFind uf(n);
    for (const auto& E : net.edges())
        if (E.r.is_zero()) uf.unite(E.tail, E.head);

    NormalizedNetwork out;
    out.vertex_map.assign(n, -1);
    std::vector<std::vector<int>> members(n);
    for (int v = 0; v < n; ++v) members[uf.find(v)].push_back(v);
    std::vector<int> rep_to_new(n, -1);
    for (int v = 0; v < n; ++v) {
        const int r = uf.find(v);
        if (rep_to_new[r] < 0) {
            std::string name;
            for (std::size_t i = 0; i < members[r].size(); ++i) {
                if (i) name += "+";
                name += net.vertex_name(members[r][i]);
            }
            rep_to_new[r] = out.net.add_vertex(name);
        }
        out.vertex_map[v] = rep_to_new[r];
    }
    out.edge_map.assign(net.num_edges(), -1);
    for (int e = 0; e < net.num_edges(); ++e) {
        const auto& E = net.edge_at(e);
        if (E.r.infinite || E.r.is_zero()) continue;
        out.edge_map[e] = out.net.add_edge(E.id, out.vertex_map[E.tail], out.vertex_map[E.head], E.r);
    }
    if (net.source() && net.sink()) {
        const int s = out.vertex_map[*net.source()];
        const int t = out.vertex_map[*net.sink()];
        if (s == t)
            out.short_circuit = true;
        else
            out.net.set_terminals(s, t);
    }
    return out;
}

// =============================================================================
// Grounded Laplacian engine
// =============================================================================

/// Topology-only view used by repeated solves with varying resistances.
struct Topology {
    int num_vertices = 0;
    std::vector<int> tail, head;

    static Topology of(const ResistorNetwork& net) {
        Topology T;
        T.num_vertices = net.num_vertices();
        for (const auto& E : net.edges()) {
            T.tail.push_back(E.tail);
            T.head.push_back(E.head);
        }
        return T;
    }
    int num_edges() const { return static_cast<int>(tail.size()); }
};

struct GroundedSolution {
    bool connected = false;
    bool short_circuit = false;
    double resistance = kInf;
    Vec potential;  ///< per original vertex; unit current, U_t = 0
};

namespace detail {
constexpr int kDenseLimit = 400;
}

/// Unit-current potentials by solving the Laplacian grounded at t.
inline GroundedSolution grounded_solve(const Topology& T, const std::vector<Resistance>& r, int s, int t) {
    const int n = T.num_vertices;
    GroundedSolution out;
    out.potential = Vec::Zero(n);
    UnionFind uf(n);
    for (int e = 0; e < T.num_edges(); ++e)
        if (r[e].is_zero()) uf.unite(T.tail[e], T.head[e]);
    const int rs = uf.find(s), rt = uf.find(t);
    if (rs == rt) {
        out.connected = true;
        out.short_circuit = true;
        out.resistance = 0.0;
        return out;
    }
    // adjacency over representatives via finite positive edges
    std::vector<std::vector<std::pair<int, double>>> adj(n);
    for (int e = 0; e < T.num_edges(); ++e) {
        if (!r[e].is_finite_positive()) continue;
        const int a = uf.find(T.tail[e]), b = uf.find(T.head[e]);
        if (a == b) continue;
        const double c = 1.0 / r[e].value;
        adj[a].push_back({b, c});
        adj[b].push_back({a, c});
    }
    std::vector<int> local(n, -1);
    std::vector<int> order;
    std::queue<int> q;
    q.push(rs);
    local[rs] = 0;
    order.push_back(rs);
    while (!q.empty()) {
        const int v = q.front();
        q.pop();
        for (auto [w, c] : adj[v]) {
            if (local[w] >= 0) continue;
            local[w] = static_cast<int>(order.size());
            order.push_back(w);
            q.push(w);
        }
    }
    if (local[rt] < 0) return out;
    out.connected = true;

    // grounded system over the component minus t
    const int m = static_cast<int>(order.size());
    std::vector<int> gidx(m, -1);
    int k = 0;
    for (int i = 0; i < m; ++i)
        if (order[i] != rt) gidx[i] = k++;
    Vec sol;
    if (k <= detail::kDenseLimit) {
        Mat Lg = Mat::Zero(k, k);
        for (int i = 0; i < m; ++i) {
            const int gi = gidx[i];
            for (auto [w, c] : adj[order[i]]) {
                const int gj = gidx[local[w]];
                if (gi >= 0) Lg(gi, gi) += c;
                if (gi >= 0 && gj >= 0) Lg(gi, gj) -= c;
            }
        }
        Vec b = Vec::Zero(k);
        b(gidx[0]) = 1.0;
        sol = Lg.ldlt().solve(b);
    } else {
        std::vector<Eigen::Triplet<double>> trip;
        for (int i = 0; i < m; ++i) {
            const int gi = gidx[i];
            if (gi < 0) continue;
            for (auto [w, c] : adj[order[i]]) {
                const int gj = gidx[local[w]];
                trip.emplace_back(gi, gi, c);
                if (gj >= 0) trip.emplace_back(gi, gj, -c);
            }
        }
        Eigen::SparseMatrix<double> Lg(k, k);
        Lg.setFromTriplets(trip.begin(), trip.end());
        Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver(Lg);
        Vec b = Vec::Zero(k);
        b(gidx[0]) = 1.0;
        sol = solver.solve(b);
    }
    out.resistance = sol(gidx[0]);
    Vec rep_pot = Vec::Zero(n);
    for (int i = 0; i < m; ++i)
        if (gidx[i] >= 0) rep_pot(order[i]) = sol(gidx[i]);
    for (int v = 0; v < n; ++v) out.potential(v) = rep_pot(uf.find(v));
    return out;
}

// =============================================================================
// Flows and circulations
// =============================================================================

/// Orthonormal basis (columns) of the circulation space: null space of B diag(1/sqrt r).
inline Mat circulation_basis(const ResistorNetwork& net) {
    if (!net.all_finite_positive())
        throw InputError("circulation_basis requires finite positive resistances; normalize first");
    Mat A = incidence_matrix(net);
    for (int e = 0; e < net.num_edges(); ++e) A.col(e) /= std::sqrt(net.edge_at(e).r.value);
    return la::null_space(A);
}

inline FlowState potential_flow(const ResistorNetwork& net, const Potential& U) {
    FlowState f;
    f.coeffs = Vec::Zero(net.num_edges());
    for (int e = 0; e < net.num_edges(); ++e) {
        const auto& E = net.edge_at(e);
        if (E.r.infinite || E.r.is_zero()) continue;
        f.coeffs(e) = (U.values(E.tail) - U.values(E.head)) / std::sqrt(E.r.value);
    }
    return f;
}

/// Converts a flow state back to edge flows f_e (zero where r is 0 or inf).
inline Vec flow_from_state(const ResistorNetwork& net, const FlowState& f) {
    Vec out = Vec::Zero(net.num_edges());
    for (int e = 0; e < net.num_edges(); ++e) {
        const auto& r = net.edge_at(e).r;
        if (r.is_finite_positive()) out(e) = f.coeffs(e) / std::sqrt(r.value);
    }
    return out;
}

struct UnitFlow {
    bool connected = false;
    bool short_circuit = false;
    FlowState flow;
    double energy = kInf;
};

inline std::pair<int, int> terminals_or(const ResistorNetwork& net, std::optional<int> s, std::optional<int> t) {
    const auto ss = s ? s : net.source();
    const auto tt = t ? t : net.sink();
    if (!ss || !tt) throw InputError("source and sink required");
    if (*ss == *tt) throw InputError("source and sink must differ");
    return {*ss, *tt};
}

/// Minimum-energy unit st-flow state and its energy (the effective resistance).
inline UnitFlow min_energy_unit_flow(const ResistorNetwork& net, std::optional<int> s = {},
                                     std::optional<int> t = {}) {
    auto [S, T] = terminals_or(net, s, t);
    const auto sol = grounded_solve(Topology::of(net), net.resistances(), S, T);
    UnitFlow out;
    out.connected = sol.connected;
    out.short_circuit = sol.short_circuit;
    out.flow.coeffs = Vec::Zero(net.num_edges());
    if (!sol.connected) return out;
    out.energy = sol.resistance;
    if (sol.short_circuit) return out;
    out.flow = potential_flow(net, Potential{sol.potential});
    return out;
}

enum class ResistanceRoute { Grounded, MinNormFlow, LaplacianPinv };

/// Laplacian pseudoinverse by eigendecomposition, zero modes removed.
inline Mat laplacian_pinv(const Mat& L) {
    if (L.rows() == 0) return L;
    Eigen::SelfAdjointEigenSolver<Mat> es(L);
    const Vec& ev = es.eigenvalues();
    const double cut = kRankTol * std::max(1.0, ev.cwiseAbs().maxCoeff());
    Vec inv = Vec::Zero(ev.size());
    for (Index i = 0; i < ev.size(); ++i)
        if (ev(i) > cut) inv(i) = 1.0 / ev(i);
    return es.eigenvectors() * inv.asDiagonal() * es.eigenvectors().transpose();
}

inline bool connected_in(const ResistorNetwork& net, int s, int t) {
    UnionFind uf(net.num_vertices());
    for (const auto& E : net.edges())
        if (!E.r.infinite) uf.unite(E.tail, E.head);
    return uf.find(s) == uf.find(t);
}

/// Effective resistance; the three routes are independent computations of the same quantity.
inline Resistance effective_resistance(const ResistorNetwork& net, std::optional<int> s = {},
                                       std::optional<int> t = {},
                                       ResistanceRoute route = ResistanceRoute::Grounded) {
    auto [S, T] = terminals_or(net, s, t);
    if (route == ResistanceRoute::Grounded) {
        const auto sol = grounded_solve(Topology::of(net), net.resistances(), S, T);
        return sol.connected ? Resistance::of(sol.resistance) : Resistance::inf();
    }
    if (!connected_in(net, S, T)) return Resistance::inf();
    ResistorNetwork copy = net;
    copy.clear_terminals();
    copy.set_terminals(S, T);
    auto nn = normalize_network(copy);
    if (nn.short_circuit) return Resistance::of(0.0);
    const auto& G = nn.net;
    const int s2 = *G.source(), t2 = *G.sink();
    Vec d = Vec::Zero(G.num_vertices());
    d(s2) = 1.0;
    d(t2) = -1.0;
    if (route == ResistanceRoute::MinNormFlow) {
        Mat A = incidence_matrix(G);
        for (int e = 0; e < G.num_edges(); ++e) A.col(e) /= std::sqrt(G.edge_at(e).r.value);
        double res = 0.0;
        Vec g = la::min_norm_solve(A, d, res);
        if (res > 1e-7) return Resistance::inf();
        return Resistance::of(g.squaredNorm());
    }
    const Mat Lp = laplacian_pinv(laplacian(G));
    return Resistance::of(d.dot(Lp * d));
}

/// min ||f_U||^2 over potentials with U_s - U_t = 1, solved as a Dirichlet problem.
inline double inverse_resistance_via_potentials(const ResistorNetwork& net, std::optional<int> s = {},
                                                std::optional<int> t = {}) {
    auto [S, T] = terminals_or(net, s, t);
    ResistorNetwork copy = net;
    copy.clear_terminals();
    copy.set_terminals(S, T);
    auto nn = normalize_network(copy);
    if (nn.short_circuit) return kInf;
    const auto& G = nn.net;
    const int s2 = *G.source(), t2 = *G.sink();
    const Mat L = laplacian(G);
    const int n = G.num_vertices();
    std::vector<int> interior;
    for (int v = 0; v < n; ++v)
        if (v != s2 && v != t2) interior.push_back(v);
    const int k = static_cast<int>(interior.size());
    Vec U = Vec::Zero(n);
    U(s2) = 1.0;
    if (k > 0) {
        Mat LII(k, k);
        Vec rhs(k);
        for (int i = 0; i < k; ++i) {
            for (int j = 0; j < k; ++j) LII(i, j) = L(interior[i], interior[j]);
            rhs(i) = -L(interior[i], s2);
        }
        double res = 0.0;
        Vec UI = la::min_norm_solve(LII, rhs, res);
        for (int i = 0; i < k; ++i) U(interior[i]) = UI(i);
    }
    return potential_flow(G, Potential{U}).coeffs.squaredNorm();
}

}  // namespace gcomp
