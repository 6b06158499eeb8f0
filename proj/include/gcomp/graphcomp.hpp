#pragma once

#include "gcomp/netlab.hpp"
#include "gcomp/spanprog.hpp"

#include <map>
#include <memory>
#include <set>
#include <sstream>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

namespace gcomp {

// =============================================================================
// Edge predicates
// =============================================================================

/// Single-query predicate on an input string; out-of-range positions evaluate to false.
struct Predicate {
    enum class Kind { Const, CharEq, Less, GreaterEq };
    Kind kind = Kind::Const;
    int i = 0;
    int j = 0;
    char c = '1';
    bool value = true;

    static Predicate constant(bool v) { return Predicate{Kind::Const, 0, 0, '1', v}; }
    static Predicate char_eq(int i, char c) { return Predicate{Kind::CharEq, i, 0, c, true}; }
    static Predicate bit(int i) { return char_eq(i, '1'); }
    static Predicate less(int i, int j) { return Predicate{Kind::Less, i, j, '1', true}; }
    static Predicate greater_eq(int i, int j) { return Predicate{Kind::GreaterEq, i, j, '1', true}; }

    bool operator()(const Input& x) const {
        const int n = static_cast<int>(x.size());
        auto in = [n](int k) { return k >= 0 && k < n; };
        switch (kind) {
            case Kind::Const: return value;
            case Kind::CharEq: return in(i) && x[i] == c;
            case Kind::Less: return in(i) && in(j) && x[i] < x[j];
            case Kind::GreaterEq: return in(i) && in(j) && x[i] >= x[j];
        }
        return false;
    }

    std::string describe() const {
        std::ostringstream os;
        switch (kind) {
            case Kind::Const: os << (value ? "true" : "false"); break;
            case Kind::CharEq: os << "x[" << i << "]=" << c; break;
            case Kind::Less: os << "x[" << i << "]<x[" << j << "]"; break;
            case Kind::GreaterEq: os << "x[" << i << "]>=x[" << j << "]"; break;
        }
        return os.str();
    }
};

// =============================================================================
// Program expressions
// =============================================================================

struct ProgramNode;
struct CompositionGraph;
using ProgramRef = std::shared_ptr<const ProgramNode>;

/// Node of a program expression: a span program built from leaves by scaling,
/// negation and graph composition. Evaluation never needs the matrices.
struct ProgramNode {
    enum class Kind { Leaf, Explicit, Scaled, Negated, Graph };
    Kind kind = Kind::Leaf;
    Predicate pred;                                  // Leaf
    double alpha = 1.0;                              // Leaf weight, Scaled factor
    std::shared_ptr<const SpanProgram> program;      // Explicit
    ProgramRef child;                                // Scaled, Negated
    std::shared_ptr<const CompositionGraph> graph;   // Graph
    double w0_norm2 = 1.0;                           // ||w0||^2, cached at construction
    int dim = 1;
};

struct WitnessPair {
    bool positive = false;
    double w_plus = kInf;
    double w_minus = kInf;
    double size() const { return positive ? w_plus : w_minus; }
};

/// Graph composition: a network with s, t whose edges carry programs.
/// Edge resistances are always ||w0^e||^2 of the carried program.
struct CompositionGraph {
    ResistorNetwork net;
    std::vector<ProgramRef> programs;  ///< aligned with net edge order
    Topology topo;
    int s = 0;
    int t = 1;

    CompositionGraph() = default;
    CompositionGraph(ResistorNetwork n, std::vector<ProgramRef> progs);

    int num_edges() const { return net.num_edges(); }
};

inline ProgramRef leaf(Predicate p, double alpha = 1.0) {
    if (!(alpha > 0.0) || std::isinf(alpha)) throw InputError("leaf weight must be a positive real");
    auto n = std::make_shared<ProgramNode>();
    n->kind = ProgramNode::Kind::Leaf;
    n->pred = p;
    n->alpha = alpha;
    n->w0_norm2 = alpha;
    n->dim = 1;
    return n;
}

inline ProgramRef explicit_program(SpanProgram p) {
    auto n = std::make_shared<ProgramNode>();
    n->kind = ProgramNode::Kind::Explicit;
    n->w0_norm2 = p.w0().squaredNorm();
    n->dim = p.dim();
    n->program = std::make_shared<const SpanProgram>(std::move(p));
    return n;
}

inline ProgramRef scaled(double alpha, ProgramRef c) {
    if (!(alpha > 0.0) || std::isinf(alpha)) throw InputError("scalar multiple must be a positive real");
    auto n = std::make_shared<ProgramNode>();
    n->kind = ProgramNode::Kind::Scaled;
    n->alpha = alpha;
    n->w0_norm2 = alpha * c->w0_norm2;
    n->dim = c->dim;
    n->child = std::move(c);
    return n;
}

inline ProgramRef negated(ProgramRef c) {
    auto n = std::make_shared<ProgramNode>();
    n->kind = ProgramNode::Kind::Negated;
    n->w0_norm2 = 1.0 / c->w0_norm2;
    n->dim = c->dim;
    n->child = std::move(c);
    return n;
}

inline ProgramRef graph_program(CompositionGraph g);

inline CompositionGraph::CompositionGraph(ResistorNetwork n, std::vector<ProgramRef> progs)
    : net(std::move(n)), programs(std::move(progs)) {
    if (!net.source() || !net.sink()) throw InputError("composition graph needs s and t");
    if (static_cast<int>(programs.size()) != net.num_edges())
        throw InputError("every edge of a composition graph needs a program");
    for (int e = 0; e < net.num_edges(); ++e) {
        if (!programs[e]) throw InputError("edge '" + net.edge_at(e).id + "' has no program");
        net.set_resistance(e, Resistance::of(programs[e]->w0_norm2));
    }
    s = *net.source();
    t = *net.sink();
    topo = Topology::of(net);
    if (!connected_in(net, s, t)) throw InputError("s and t are not connected in the composition graph");
}

inline ProgramRef graph_program(CompositionGraph g) {
    auto n = std::make_shared<ProgramNode>();
    n->kind = ProgramNode::Kind::Graph;
    const auto sol = grounded_solve(g.topo, g.net.resistances(), g.s, g.t);
    n->w0_norm2 = sol.resistance;
    int d = 0;
    for (const auto& p : g.programs) d += p->dim;
    n->dim = d;
    n->graph = std::make_shared<const CompositionGraph>(std::move(g));
    return n;
}

// =============================================================================
// Evaluation by effective resistance
// =============================================================================

using EvalCache = std::unordered_map<const ProgramNode*, WitnessPair>;

WitnessPair evaluate(const ProgramRef& p, const Input& x, EvalCache& cache);

namespace detail {

inline WitnessPair evaluate_graph(const CompositionGraph& g, const Input& x, EvalCache& cache) {
    const int m = g.num_edges();
    std::vector<WitnessPair> kids(m);
    UnionFind uf(g.net.num_vertices());
    for (int e = 0; e < m; ++e) {
        kids[e] = evaluate(g.programs[e], x, cache);
        if (kids[e].positive) uf.unite(g.topo.tail[e], g.topo.head[e]);
    }
    WitnessPair out;
    out.positive = uf.find(g.s) == uf.find(g.t);
    std::vector<Resistance> r(m);
    if (out.positive) {
        for (int e = 0; e < m; ++e)
            r[e] = kids[e].positive ? Resistance::of(kids[e].w_plus) : Resistance::inf();
        out.w_plus = grounded_solve(g.topo, r, g.s, g.t).resistance;
    } else {
        for (int e = 0; e < m; ++e)
            r[e] = kids[e].positive ? Resistance::of(0.0) : Resistance::of(1.0 / kids[e].w_minus);
        out.w_minus = 1.0 / grounded_solve(g.topo, r, g.s, g.t).resistance;
    }
    return out;
}

}  // namespace detail

inline WitnessPair evaluate(const ProgramRef& p, const Input& x, EvalCache& cache) {
    auto it = cache.find(p.get());
    if (it != cache.end()) return it->second;
    WitnessPair out;
    switch (p->kind) {
        case ProgramNode::Kind::Leaf:
            out.positive = p->pred(x);
            if (out.positive)
                out.w_plus = p->alpha;
            else
                out.w_minus = 1.0 / p->alpha;
            break;
        case ProgramNode::Kind::Explicit: {
            const auto w = witness(*p->program, x);
            out.positive = w.positive;
            (w.positive ? out.w_plus : out.w_minus) = w.size;
            break;
        }
        case ProgramNode::Kind::Scaled: {
            out = evaluate(p->child, x, cache);
            out.w_plus *= p->alpha;
            out.w_minus /= p->alpha;
            break;
        }
        case ProgramNode::Kind::Negated: {
            const auto c = evaluate(p->child, x, cache);
            out.positive = !c.positive;
            out.w_plus = c.w_minus;
            out.w_minus = c.w_plus;
            break;
        }
        case ProgramNode::Kind::Graph: out = detail::evaluate_graph(*p->graph, x, cache); break;
    }
    cache.emplace(p.get(), out);
    return out;
}

inline WitnessPair evaluate(const ProgramRef& p, const Input& x) {
    EvalCache cache;
    return evaluate(p, x, cache);
}

/// (w+, w-) of the composed program from edge witness sizes; the other entry is inf.
inline WitnessPair witness_sizes_via_resistance(const CompositionGraph& g, const Input& x) {
    EvalCache cache;
    return detail::evaluate_graph(g, x, cache);
}

using AcceptCache = std::unordered_map<const ProgramNode*, bool>;

/// Classification by s-t connectivity through accepting edges, no linear algebra.
inline bool accepts(const ProgramRef& p, const Input& x, AcceptCache& cache) {
    auto it = cache.find(p.get());
    if (it != cache.end()) return it->second;
    bool out = false;
    switch (p->kind) {
        case ProgramNode::Kind::Leaf: out = p->pred(x); break;
        case ProgramNode::Kind::Explicit: out = classify(*p->program, x); break;
        case ProgramNode::Kind::Scaled: out = accepts(p->child, x, cache); break;
        case ProgramNode::Kind::Negated: out = !accepts(p->child, x, cache); break;
        case ProgramNode::Kind::Graph: {
            const auto& g = *p->graph;
            UnionFind uf(g.net.num_vertices());
            for (int e = 0; e < g.num_edges(); ++e)
                if (accepts(g.programs[e], x, cache)) uf.unite(g.topo.tail[e], g.topo.head[e]);
            out = uf.find(g.s) == uf.find(g.t);
            break;
        }
    }
    cache.emplace(p.get(), out);
    return out;
}

inline bool accepts(const ProgramRef& p, const Input& x) {
    AcceptCache cache;
    return accepts(p, x, cache);
}

inline bool accepts(const CompositionGraph& g, const Input& x) {
    AcceptCache cache;
    UnionFind uf(g.net.num_vertices());
    for (int e = 0; e < g.num_edges(); ++e)
        if (accepts(g.programs[e], x, cache)) uf.unite(g.topo.tail[e], g.topo.head[e]);
    return uf.find(g.s) == uf.find(g.t);
}

/// Number of edges after recursively substituting nested compositions.
inline long long flat_edge_count(const ProgramRef& p) {
    switch (p->kind) {
        case ProgramNode::Kind::Scaled:
        case ProgramNode::Kind::Negated: return flat_edge_count(p->child);
        case ProgramNode::Kind::Graph: {
            long long n = 0;
            for (const auto& c : p->graph->programs) n += flat_edge_count(c);
            return n;
        }
        default: return 1;
    }
}

namespace detail {
inline void inline_program(const ProgramRef& p, double scale, int a, int b, ResistorNetwork& net,
                           std::vector<ProgramRef>& out, int& vcount) {
    if (p->kind == ProgramNode::Kind::Scaled) {
        inline_program(p->child, scale * p->alpha, a, b, net, out, vcount);
        return;
    }
    if (p->kind == ProgramNode::Kind::Graph) {
        const auto& g = *p->graph;
        std::vector<int> map(g.net.num_vertices());
        for (int v = 0; v < g.net.num_vertices(); ++v) {
            if (v == g.s)
                map[v] = a;
            else if (v == g.t)
                map[v] = b;
            else
                map[v] = net.add_vertex("w" + std::to_string(vcount++));
        }
        for (int e = 0; e < g.num_edges(); ++e)
            inline_program(g.programs[e], scale, map[g.topo.tail[e]], map[g.topo.head[e]], net, out, vcount);
        return;
    }
    net.add_edge("e" + std::to_string(out.size() + 1), a, b);
    out.push_back(scale == 1.0 ? p : scaled(scale, p));
}
}  // namespace detail

/// Single graph with every nested composition (also under scaling) substituted into its edge.
inline CompositionGraph flatten_program(const ProgramRef& p) {
    ResistorNetwork net;
    const int s = net.add_vertex("s");
    const int t = net.add_vertex("t");
    std::vector<ProgramRef> progs;
    int vcount = 0;
    detail::inline_program(p, 1.0, s, t, net, progs, vcount);
    net.set_terminals(s, t);
    return CompositionGraph(std::move(net), std::move(progs));
}

// =============================================================================
// Materialization
// =============================================================================

constexpr int kDefaultMaxDim = 4096;

SpanProgram materialize(const ProgramRef& p, int max_dim = kDefaultMaxDim);

/// Block state space, E|e> = w0^e/||w0^e||, K = (+)K^e (+) E(circulations), w0 = E(min-energy flow).
inline SpanProgram compose(const CompositionGraph& g, int max_dim = kDefaultMaxDim) {
    const int m = g.num_edges();
    std::vector<SpanProgram> kids;
    kids.reserve(m);
    std::vector<int> offset(m + 1, 0);
    for (int e = 0; e < m; ++e) {
        offset[e + 1] = offset[e] + g.programs[e]->dim;
        if (offset[e + 1] > max_dim) throw InputError("composed dimension exceeds the cap");
    }
    for (int e = 0; e < m; ++e) kids.push_back(materialize(g.programs[e], max_dim));
    const int dim = offset[m];

    Mat E = Mat::Zero(dim, m);
    for (int e = 0; e < m; ++e) E.block(offset[e], e, kids[e].dim(), 1) = kids[e].w0().normalized();

    const Mat circ = circulation_basis(g.net);
    const auto flow = min_energy_unit_flow(g.net, g.s, g.t);

    int kcols = static_cast<int>(circ.cols());
    for (const auto& k : kids) kcols += static_cast<int>(k.k_basis().cols());
    Mat kgen = Mat::Zero(dim, kcols);
    int col = 0;
    for (int e = 0; e < m; ++e) {
        const Mat& Kb = kids[e].k_basis();
        if (Kb.cols()) kgen.block(offset[e], col, kids[e].dim(), Kb.cols()) = Kb;
        col += static_cast<int>(Kb.cols());
    }
    if (circ.cols()) kgen.rightCols(circ.cols()) = E * circ;
    const Vec w0 = E * flow.flow.coeffs;

    auto shared_kids = std::make_shared<const std::vector<SpanProgram>>(std::move(kids));
    SpanProgram::HxFn hx = [shared_kids, offset, dim](const Input& x) -> Mat {
        std::vector<Mat> blocks;
        int cols = 0;
        for (const auto& k : *shared_kids) {
            blocks.push_back(k.hx(x));
            cols += static_cast<int>(blocks.back().cols());
        }
        Mat H = Mat::Zero(dim, cols);
        int c = 0;
        for (std::size_t e = 0; e < blocks.size(); ++e) {
            if (blocks[e].cols())
                H.block(offset[e], c, blocks[e].rows(), blocks[e].cols()) = blocks[e];
            c += static_cast<int>(blocks[e].cols());
        }
        return H;
    };
    return SpanProgram(dim, w0, kgen, hx);
}

inline SpanProgram materialize(const ProgramRef& p, int max_dim) {
    if (p->dim > max_dim) throw InputError("program dimension exceeds the cap");
    switch (p->kind) {
        case ProgramNode::Kind::Leaf: {
            const Predicate pr = p->pred;
            auto t = trivial([pr](const Input& x) { return pr(x); });
            return p->alpha == 1.0 ? t : scalar_multiply(t, p->alpha);
        }
        case ProgramNode::Kind::Explicit: return *p->program;
        case ProgramNode::Kind::Scaled: return scalar_multiply(materialize(p->child, max_dim), p->alpha);
        case ProgramNode::Kind::Negated: return negate(materialize(p->child, max_dim));
        case ProgramNode::Kind::Graph: return compose(*p->graph, max_dim);
    }
    throw InputError("unknown program node");
}

// =============================================================================
// AND / OR / variable-time OR
// =============================================================================

inline CompositionGraph and_compose(const std::vector<ProgramRef>& ps) {
    if (ps.empty()) throw InputError("AND-composition of an empty list");
    ResistorNetwork net;
    for (std::size_t i = 0; i <= ps.size(); ++i) net.add_vertex("v" + std::to_string(i));
    for (std::size_t i = 0; i < ps.size(); ++i)
        net.add_edge("e" + std::to_string(i + 1), static_cast<int>(i), static_cast<int>(i + 1));
    net.set_terminals(0, static_cast<int>(ps.size()));
    return CompositionGraph(std::move(net), ps);
}

inline CompositionGraph or_compose(const std::vector<ProgramRef>& ps) {
    if (ps.empty()) throw InputError("OR-composition of an empty list");
    ResistorNetwork net;
    net.add_vertex("s");
    net.add_vertex("t");
    for (std::size_t i = 0; i < ps.size(); ++i) net.add_edge("e" + std::to_string(i + 1), 0, 1);
    net.set_terminals(0, 1);
    return CompositionGraph(std::move(net), ps);
}

/// The graph of a composed program, or a single s-t edge carrying it.
inline CompositionGraph as_composition(const ProgramRef& p) {
    if (p->kind == ProgramNode::Kind::Graph) return *p->graph;
    return or_compose({p});
}

/// OR of P_j / W+(P_j).
inline CompositionGraph variable_time_or(const std::vector<std::pair<ProgramRef, double>>& ps) {
    std::vector<ProgramRef> kids;
    for (const auto& [p, wp] : ps) {
        if (!(wp > 0.0) || std::isinf(wp)) throw InputError("variable-time OR needs finite positive W+ values");
        kids.push_back(scaled(1.0 / wp, p));
    }
    return or_compose(kids);
}

// =============================================================================
// Path and cut certificates
// =============================================================================

enum class CertificateKind { Path, Cut };

/// Sum of edge witness sizes over a valid positive path or negative cut.
inline double path_cut_bounds(const CompositionGraph& g, const Input& x, const std::vector<std::string>& edge_ids,
                              CertificateKind kind) {
    std::vector<int> es;
    for (const auto& id : edge_ids) es.push_back(g.net.edge(id));
    std::set<int> uniq(es.begin(), es.end());
    if (uniq.size() != es.size()) throw InputError("certificate repeats an edge");
    EvalCache cache;
    double sum = 0.0;
    if (kind == CertificateKind::Path) {
        int at = g.s;
        std::set<int> seen{at};
        for (int e : es) {
            const auto w = evaluate(g.programs[e], x, cache);
            if (!w.positive) throw InputError("path edge '" + g.net.edge_at(e).id + "' rejects the input");
            const int a = g.topo.tail[e], b = g.topo.head[e];
            if (a == at)
                at = b;
            else if (b == at)
                at = a;
            else
                throw InputError("certificate is not a walk from s");
            if (!seen.insert(at).second) throw InputError("certificate revisits a vertex");
            sum += w.w_plus;
        }
        if (at != g.t) throw InputError("certificate path does not end at t");
        return sum;
    }
    UnionFind uf(g.net.num_vertices());
    for (int e = 0; e < g.num_edges(); ++e)
        if (!uniq.count(e)) uf.unite(g.topo.tail[e], g.topo.head[e]);
    if (uf.find(g.s) == uf.find(g.t)) throw InputError("certificate does not separate s from t");
    for (int e : es) {
        const auto w = evaluate(g.programs[e], x, cache);
        if (w.positive) throw InputError("cut edge '" + g.net.edge_at(e).id + "' accepts the input");
        sum += w.w_minus;
    }
    return sum;
}

// =============================================================================
// st-connectivity instances
// =============================================================================

struct StConnInstance {
    ResistorNetwork net;       ///< resistances r_e in (0, inf), terminals set
    std::vector<int> j;        ///< queried input position per edge
    std::vector<int> b;        ///< expected bit per edge
};

inline ProgramRef bit_edge(int j, int b, double r) {
    auto base = leaf(Predicate::bit(j));
    return scaled(r, b ? base : negated(base));
}

inline CompositionGraph from_st_instance(const StConnInstance& inst) {
    const int m = inst.net.num_edges();
    if (static_cast<int>(inst.j.size()) != m || static_cast<int>(inst.b.size()) != m)
        throw InputError("st-instance needs j and b for every edge");
    std::vector<ProgramRef> ps;
    for (int e = 0; e < m; ++e) {
        const auto& r = inst.net.edge_at(e).r;
        if (!r.is_finite_positive()) throw InputError("st-instance resistances must be finite and positive");
        if (inst.j[e] < 0) throw InputError("negative input index");
        if (inst.b[e] != 0 && inst.b[e] != 1) throw InputError("expected bit must be 0 or 1");
        ps.push_back(bit_edge(inst.j[e], inst.b[e], r.value));
    }
    return CompositionGraph(inst.net, std::move(ps));
}

/// Instance-level values: R over the accepted edge set, 1/R with accepted edges contracted.
inline WitnessPair st_instance_witness(const StConnInstance& inst, const Input& x) {
    const int m = inst.net.num_edges();
    std::vector<Resistance> rp(m), rm(m);
    for (int e = 0; e < m; ++e) {
        const int jj = inst.j[e];
        const bool on = jj < static_cast<int>(x.size()) && (x[jj] == '1') == (inst.b[e] == 1);
        rp[e] = on ? inst.net.edge_at(e).r : Resistance::inf();
        rm[e] = on ? Resistance::of(0.0) : inst.net.edge_at(e).r;
    }
    const auto T = Topology::of(inst.net);
    const int s = *inst.net.source(), t = *inst.net.sink();
    const auto pos = grounded_solve(T, rp, s, t);
    WitnessPair out;
    out.positive = pos.connected;
    if (out.positive)
        out.w_plus = pos.resistance;
    else
        out.w_minus = 1.0 / grounded_solve(T, rm, s, t).resistance;
    return out;
}

// =============================================================================
// Series-parallel expressions and duals
// =============================================================================

/// Series-parallel shape with programs on its leaves.
struct SPNode {
    enum class Kind { Edge, Series, Parallel };
    Kind kind = Kind::Edge;
    ProgramRef program;
    std::vector<SPNode> kids;

    static SPNode edge(ProgramRef p) { return SPNode{Kind::Edge, std::move(p), {}}; }
    static SPNode series(std::vector<SPNode> k) { return SPNode{Kind::Series, nullptr, std::move(k)}; }
    static SPNode parallel(std::vector<SPNode> k) { return SPNode{Kind::Parallel, nullptr, std::move(k)}; }

    int leaf_count() const {
        if (kind == Kind::Edge) return 1;
        int n = 0;
        for (const auto& k : kids) n += k.leaf_count();
        return n;
    }
};

/// Dual: series <-> parallel, every leaf program negated (so r -> 1/r).
inline SPNode sp_dual(const SPNode& n) {
    if (n.kind == SPNode::Kind::Edge) return SPNode::edge(negated(n.program));
    std::vector<SPNode> kids;
    for (const auto& k : n.kids) kids.push_back(sp_dual(k));
    return n.kind == SPNode::Kind::Series ? SPNode::parallel(std::move(kids)) : SPNode::series(std::move(kids));
}

namespace detail {
inline void flatten_sp(const SPNode& n, int a, int b, ResistorNetwork& net, std::vector<ProgramRef>& ps,
                       int& vcount) {
    switch (n.kind) {
        case SPNode::Kind::Edge:
            net.add_edge("e" + std::to_string(ps.size() + 1), a, b);
            ps.push_back(n.program);
            return;
        case SPNode::Kind::Parallel:
            for (const auto& k : n.kids) flatten_sp(k, a, b, net, ps, vcount);
            return;
        case SPNode::Kind::Series: {
            int prev = a;
            for (std::size_t i = 0; i < n.kids.size(); ++i) {
                int next = b;
                if (i + 1 < n.kids.size()) next = net.add_vertex("u" + std::to_string(vcount++));
                flatten_sp(n.kids[i], prev, next, net, ps, vcount);
                prev = next;
            }
            return;
        }
    }
}
}  // namespace detail

/// Flattens to one graph; edge k (in leaf order) carries the k-th leaf program.
inline CompositionGraph flatten_sp(const SPNode& n) {
    ResistorNetwork net;
    const int s = net.add_vertex("s");
    const int t = net.add_vertex("t");
    std::vector<ProgramRef> ps;
    int vcount = 0;
    detail::flatten_sp(n, s, t, net, ps, vcount);
    net.set_terminals(s, t);
    return CompositionGraph(std::move(net), std::move(ps));
}

/// Nested form: every series/parallel node becomes its own small composition graph.
inline ProgramRef nest_sp(const SPNode& n) {
    if (n.kind == SPNode::Kind::Edge) return n.program;
    std::vector<ProgramRef> kids;
    for (const auto& k : n.kids) kids.push_back(nest_sp(k));
    if (kids.size() == 1) return kids.front();
    return graph_program(n.kind == SPNode::Kind::Series ? and_compose(kids) : or_compose(kids));
}

struct DualCheckReport {
    bool pairing_ok = false;
    bool reciprocity_ok = false;
    double k_space_gap = kInf;      ///< operator norm of projector difference
    double w0_gap = kInf;
    double max_witness_gap = kInf;  ///< max relative witness-size difference over test inputs
    std::vector<int> orientation_signs;
    bool passed(double tol = 1e-8) const {
        return pairing_ok && reciprocity_ok && k_space_gap <= tol && w0_gap <= tol && max_witness_gap <= 1e-6;
    }
};

/// Compares negate(compose(cg)) with compose(dual) block by block through the pairing.
/// A per-block sign absorbs the choice of dual edge orientation.
inline DualCheckReport planar_dual_negation_check(const CompositionGraph& cg, const CompositionGraph& dual,
                                                  const std::vector<int>& pairing,
                                                  const std::vector<Input>& test_inputs, int max_dim = kDefaultMaxDim) {
    DualCheckReport rep;
    const int m = cg.num_edges();
    if (static_cast<int>(pairing.size()) != m || dual.num_edges() != m) return rep;
    std::vector<int> seen(m, 0);
    for (int p : pairing) {
        if (p < 0 || p >= m || seen[p]++) return rep;
    }
    rep.pairing_ok = true;
    rep.reciprocity_ok = true;
    for (int e = 0; e < m; ++e) {
        const double a = cg.net.edge_at(e).r.value, b = dual.net.edge_at(pairing[e]).r.value;
        if (std::abs(a * b - 1.0) > 1e-9) rep.reciprocity_ok = false;
        if (cg.programs[e]->dim != dual.programs[pairing[e]]->dim) rep.pairing_ok = false;
    }
    if (!rep.reciprocity_ok || !rep.pairing_ok) return rep;

    const SpanProgram np = negate(compose(cg, max_dim));
    const SpanProgram dp = compose(dual, max_dim);
    std::vector<int> off(m + 1, 0), doff(m + 1, 0);
    for (int e = 0; e < m; ++e) off[e + 1] = off[e] + cg.programs[e]->dim;
    for (int e = 0; e < m; ++e) doff[e + 1] = doff[e] + dual.programs[e]->dim;
    const int dim = off[m];
    // map dual coordinates into the primal block layout
    Mat P = Mat::Zero(dim, dim);
    rep.orientation_signs.assign(m, 1);
    for (int e = 0; e < m; ++e) {
        const int d = cg.programs[e]->dim;
        const double dot = np.w0().segment(off[e], d).dot(dp.w0().segment(doff[pairing[e]], d));
        const int sign = dot < 0 ? -1 : 1;
        rep.orientation_signs[e] = sign;
        P.block(off[e], doff[pairing[e]], d, d) = sign * Mat::Identity(d, d);
    }
    const Mat Kd = P * dp.k_basis();
    rep.k_space_gap = la::op_norm(la::projector(np.k_basis()) - la::projector(Kd));
    rep.w0_gap = (np.w0() - P * dp.w0()).norm();
    rep.max_witness_gap = 0.0;
    for (const auto& x : test_inputs) {
        const auto a = witness(np, x);
        const auto b = witness(dp, x);
        if (a.positive != b.positive) {
            rep.max_witness_gap = kInf;
            break;
        }
        rep.max_witness_gap = std::max(rep.max_witness_gap, std::abs(a.size - b.size) / std::max(1.0, a.size));
    }
    return rep;
}

}  // namespace gcomp
