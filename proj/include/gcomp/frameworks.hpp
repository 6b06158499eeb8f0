#pragma once

#include "gcomp/graphcomp.hpp"

#include <cmath>
#include <map>
#include <numeric>
#include <set>

namespace gcomp {

// =============================================================================
// Weighted decision trees
// =============================================================================

/// Node of a boolean decision tree. Internal nodes query x[query]; child[b]
/// is reached on answer b over an edge of weight w[b].
struct DTNode {
    bool is_leaf = true;
    char label = '0';  ///< '0', '1' or '?' on leaves
    int query = -1;
    int child[2] = {-1, -1};
    double w[2] = {1.0, 1.0};
    int guess = 1;  ///< child whose edge has G(e) = 1
};

class DecisionTree {
public:
    std::vector<DTNode> nodes;  ///< nodes[0] is the root

    int add_leaf(char label) {
        if (label != '0' && label != '1' && label != '?') throw InputError("leaf label must be 0, 1 or ?");
        DTNode n;
        n.label = label;
        nodes.push_back(n);
        return static_cast<int>(nodes.size()) - 1;
    }

    int add_query(int query, int c0, int c1, double w0 = 1.0, double w1 = 1.0) {
        DTNode n;
        n.is_leaf = false;
        n.query = query;
        n.child[0] = c0;
        n.child[1] = c1;
        n.w[0] = w0;
        n.w[1] = w1;
        nodes.push_back(n);
        return static_cast<int>(nodes.size()) - 1;
    }

    /// Builders append children before parents; this moves the given root to slot 0.
    void set_root(int r) {
        if (r == 0) return;
        const int n = static_cast<int>(nodes.size());
        std::vector<int> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        std::swap(perm[0], perm[r]);
        std::vector<DTNode> out(n);
        for (int i = 0; i < n; ++i) out[perm[i]] = nodes[i];
        for (auto& node : out)
            if (!node.is_leaf)
                for (int& c : node.child) c = perm[c];
        nodes = std::move(out);
    }

    void validate() const {
        if (nodes.empty()) throw InputError("decision tree has no nodes");
        std::vector<int> indeg(nodes.size(), 0);
        for (const auto& n : nodes) {
            if (n.is_leaf) continue;
            if (n.query < 0) throw InputError("negative query index");
            for (int b = 0; b < 2; ++b) {
                if (n.child[b] < 0 || n.child[b] >= static_cast<int>(nodes.size()))
                    throw InputError("child index out of range");
                if (!(n.w[b] > 0.0) || std::isinf(n.w[b])) throw InputError("edge weights must be finite and positive");
                ++indeg[n.child[b]];
            }
            if (n.guess != 0 && n.guess != 1) throw InputError("guess must be 0 or 1");
        }
        if (indeg[0] != 0) throw InputError("root has a parent");
        for (std::size_t i = 1; i < nodes.size(); ++i)
            if (indeg[i] != 1) throw InputError("decision tree node " + std::to_string(i) + " is not a tree node");
        std::vector<int> seen;
        check_paths(0, seen);
    }

    /// Leaf label reached on x, with the internal nodes visited in order.
    char run(const Input& x, std::vector<int>* path = nullptr) const {
        int v = 0;
        while (!nodes[v].is_leaf) {
            if (path) path->push_back(v);
            v = nodes[v].child[bit_of(x, nodes[v].query)];
        }
        return nodes[v].label;
    }

    int depth(int v = 0) const {
        if (nodes[v].is_leaf) return 0;
        return 1 + std::max(depth(nodes[v].child[0]), depth(nodes[v].child[1]));
    }

    bool has_one_leaf() const {
        return std::any_of(nodes.begin(), nodes.end(), [](const DTNode& n) { return n.is_leaf && n.label == '1'; });
    }

    static int bit_of(const Input& x, int j) { return j < static_cast<int>(x.size()) && x[j] == '1' ? 1 : 0; }

private:
    void check_paths(int v, std::vector<int>& seen) const {
        const auto& n = nodes[v];
        if (n.is_leaf) return;
        if (std::find(seen.begin(), seen.end(), n.query) != seen.end())
            throw InputError("index " + std::to_string(n.query) + " queried twice on one path");
        seen.push_back(n.query);
        check_paths(n.child[0], seen);
        check_paths(n.child[1], seen);
        seen.pop_back();
    }
};

struct WdtValue {
    double plus = 0.0;
    double minus = 0.0;
    double value = 0.0;
};

/// Path weight of x when the tree outputs 1, else the inverse weights of the
/// legs leaving the path.
inline double wdt_on(const DecisionTree& t, const Input& x, bool* accepted = nullptr) {
    std::vector<int> path;
    const char out = t.run(x, &path);
    double sum = 0.0;
    for (int v : path) {
        const auto& n = t.nodes[v];
        const int b = DecisionTree::bit_of(x, n.query);
        sum += out == '1' ? n.w[b] : 1.0 / n.w[1 - b];
    }
    if (accepted) *accepted = out == '1';
    return sum;
}

inline WdtValue wdt_value(const DecisionTree& t, const std::vector<Input>& inputs) {
    t.validate();
    WdtValue r;
    for (const auto& x : inputs) {
        bool acc = false;
        const double v = wdt_on(t, x, &acc);
        (acc ? r.plus : r.minus) = std::max(acc ? r.plus : r.minus, v);
    }
    r.value = std::sqrt(r.plus * r.minus);
    return r;
}

inline double wdt_combine(double a, double b) { return (a + b + std::sqrt((a - b) * (a - b) + 4.0)) / 2.0; }

/// Optimal weighting value of the tree, bottom-up.
inline double optimal_wdt(const DecisionTree& t, int v = 0) {
    const auto& n = t.nodes[v];
    if (n.is_leaf) return 0.0;
    return wdt_combine(optimal_wdt(t, n.child[0]), optimal_wdt(t, n.child[1]));
}

/// Root maps to s, 1-leaves are contracted to t, 0- and ?-leaves are pruned.
inline CompositionGraph tree_to_st(const DecisionTree& t) {
    t.validate();
    if (!t.has_one_leaf()) throw InputError("tree has no 1-leaf: s and t would be disconnected");
    ResistorNetwork net;
    const int s = net.add_vertex("s");
    const int tt = net.add_vertex("t");
    net.set_terminals(s, tt);
    std::vector<ProgramRef> ps;
    if (t.nodes[0].is_leaf) {
        net.add_edge("e1", s, tt);
        ps.push_back(leaf(Predicate::constant(true)));
        return CompositionGraph(std::move(net), std::move(ps));
    }
    std::vector<int> vert(t.nodes.size(), -1);
    vert[0] = s;
    std::vector<int> stack{0};
    while (!stack.empty()) {
        const int v = stack.back();
        stack.pop_back();
        const auto& n = t.nodes[v];
        for (int b = 0; b < 2; ++b) {
            const int c = n.child[b];
            const auto& cn = t.nodes[c];
            int head;
            if (cn.is_leaf) {
                if (cn.label != '1') continue;
                head = tt;
            } else {
                head = vert[c] = net.add_vertex("n" + std::to_string(c));
                stack.push_back(c);
            }
            net.add_edge("e" + std::to_string(ps.size() + 1), vert[v], head);
            ps.push_back(bit_edge(n.query, b, n.w[b]));
        }
    }
    return CompositionGraph(std::move(net), std::move(ps));
}

struct GuessingComplexity {
    int g = 0;
    int t = 0;
    double value = 0.0;
};

inline GuessingComplexity guessing_complexity(const DecisionTree& t) {
    t.validate();
    GuessingComplexity r;
    r.t = t.depth();
    std::function<int(int)> rec = [&](int v) -> int {
        const auto& n = t.nodes[v];
        if (n.is_leaf) return 0;
        int best = 0;
        for (int b = 0; b < 2; ++b) best = std::max(best, rec(n.child[b]) + (b == n.guess ? 0 : 1));
        return best;
    };
    r.g = rec(0);
    r.value = std::sqrt(static_cast<double>(r.g) * r.t);
    return r;
}

// =============================================================================
// Families of trees
// =============================================================================

struct TreeFamily {
    std::vector<DecisionTree> trees;
    std::vector<double> probs;

    void validate() const {
        if (trees.empty() || trees.size() != probs.size()) throw InputError("family needs one probability per tree");
        double sum = 0.0;
        for (double p : probs) {
            if (!(p >= 0.0)) throw InputError("probabilities must be nonnegative");
            sum += p;
        }
        if (std::abs(sum - 1.0) > 1e-12) throw InputError("probabilities must sum to 1");
        for (const auto& t : trees) t.validate();
    }
};

/// f(x) of a zero-error family; throws if the trees disagree or ? has mass above 1/2.
inline bool zero_error_value(const TreeFamily& fam, const Input& x) {
    int seen = -1;
    double unknown = 0.0;
    for (std::size_t j = 0; j < fam.trees.size(); ++j) {
        const char o = fam.trees[j].run(x);
        if (o == '?') {
            unknown += fam.probs[j];
            continue;
        }
        if (fam.probs[j] == 0.0) continue;
        const int v = o - '0';
        if (seen >= 0 && seen != v) throw InputError("family is not zero-error on '" + x + "'");
        seen = v;
    }
    if (unknown > 0.5 + 1e-12) throw InputError("?-probability exceeds 1/2 on '" + x + "'");
    if (seen < 0) throw InputError("no tree answers on '" + x + "'");
    return seen == 1;
}

struct FamilyConversion {
    CompositionGraph graph;
    double max_c = 0.0;  ///< max over trees of C(P_j) after balancing
};

/// Each tree's program is rescaled to W+ = W- = C_j, then scaled by 1/p_j and composed in parallel.
inline FamilyConversion zero_error_family_to_st(const TreeFamily& fam, const std::vector<Input>& inputs) {
    fam.validate();
    for (const auto& x : inputs) zero_error_value(fam, x);
    std::vector<ProgramRef> kids;
    FamilyConversion out;
    for (std::size_t j = 0; j < fam.trees.size(); ++j) {
        if (fam.probs[j] == 0.0 || !fam.trees[j].has_one_leaf()) continue;
        auto p = graph_program(tree_to_st(fam.trees[j]));
        double wp = 0.0, wm = 0.0;
        for (const auto& x : inputs) {
            const auto w = evaluate(p, x);
            if (w.positive)
                wp = std::max(wp, w.w_plus);
            else
                wm = std::max(wm, w.w_minus);
        }
        if (wp > 0.0 && wm > 0.0) {
            p = scaled(std::sqrt(wm / wp), p);
            out.max_c = std::max(out.max_c, std::sqrt(wp * wm));
        } else {
            out.max_c = std::max(out.max_c, std::max(wp, wm));
        }
        kids.push_back(scaled(1.0 / fam.probs[j], p));
    }
    if (kids.empty()) throw InputError("no tree of the family ever outputs 1");
    out.graph = or_compose(kids);
    return out;
}

/// Counts c_j with c_j / D approximating p_j, D <= 64; the smallest exact D wins.
inline std::vector<int> rational_weights(const std::vector<double>& probs, int max_den = 64) {
    std::vector<int> best;
    double best_err = kInf;
    for (int D = 1; D <= max_den; ++D) {
        std::vector<int> c;
        double err = 0.0;
        int total = 0;
        for (double p : probs) {
            c.push_back(static_cast<int>(std::lround(p * D)));
            total += c.back();
            err = std::max(err, std::abs(p - static_cast<double>(c.back()) / D));
        }
        if (total != D) continue;
        if (err < best_err - 1e-12) {
            best_err = err;
            best = c;
        }
        if (err < 1e-12) break;
    }
    if (best.empty()) throw InputError("no rational approximation of the distribution");
    return best;
}

// =============================================================================
// Threshold compositions
// =============================================================================

/// Th^k over arbitrary leaf programs: Th^{k+1}_S = OR_j (P_j AND k Th^k_{S\j}), Th^1_S = OR_j P_j.
/// Subprograms for equal (S, k) are shared.
inline ProgramRef threshold_over(const std::vector<ProgramRef>& leaves, int k) {
    const int n = static_cast<int>(leaves.size());
    if (n > 24) throw InputError("threshold composition supports at most 24 inputs");
    if (k < 1 || k > n) throw InputError("threshold needs 1 <= k <= n");
    std::map<std::pair<std::uint32_t, int>, ProgramRef> memo;
    std::function<ProgramRef(std::uint32_t, int)> th = [&](std::uint32_t S, int kk) -> ProgramRef {
        auto key = std::make_pair(S, kk);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
        std::vector<ProgramRef> kids;
        for (int j = 0; j < n; ++j) {
            if (!(S >> j & 1u)) continue;
            if (kk == 1)
                kids.push_back(leaves[j]);
            else
                kids.push_back(graph_program(and_compose({leaves[j], scaled(kk - 1, th(S & ~(1u << j), kk - 1))})));
        }
        auto p = graph_program(or_compose(kids));
        memo.emplace(key, p);
        return p;
    };
    const std::uint32_t all = n == 32 ? ~0u : ((1u << n) - 1);
    return th(all, k);
}

struct RandomizedConversion {
    ProgramRef program;
    std::vector<int> copies;  ///< duplicates of each tree
    int threshold = 0;
};

/// Gapped majority over tree-output bits; each bit is the tree's st-program.
inline RandomizedConversion randomized_to_st(const TreeFamily& fam, const std::vector<Input>& inputs,
                                             std::function<bool(const Input&)> f = {}) {
    fam.validate();
    RandomizedConversion out;
    out.copies = rational_weights(fam.probs);
    const int m = std::accumulate(out.copies.begin(), out.copies.end(), 0);
    if (m > 16) throw InputError("duplicated family exceeds 16 trees");
    for (const auto& x : inputs) {
        double p1 = 0.0;
        for (std::size_t j = 0; j < fam.trees.size(); ++j)
            if (fam.trees[j].run(x) == '1') p1 += fam.probs[j];
        const bool val = f ? f(x) : p1 >= 2.0 / 3.0 - 1e-12;
        if ((val ? p1 : 1.0 - p1) < 2.0 / 3.0 - 1e-12)
            throw InputError("family is not correct with probability 2/3 on '" + x + "'");
    }
    std::vector<ProgramRef> bits;
    for (std::size_t j = 0; j < fam.trees.size(); ++j) {
        ProgramRef b = fam.trees[j].has_one_leaf() ? graph_program(tree_to_st(fam.trees[j]))
                                                   : leaf(Predicate::constant(false));
        for (int c = 0; c < out.copies[j]; ++c) bits.push_back(b);
    }
    out.threshold = (m + 1) / 2;
    out.program = threshold_over(bits, out.threshold);
    return out;
}

// =============================================================================
// Formulas
// =============================================================================

struct Formula;
using FormulaRef = std::shared_ptr<const Formula>;

struct Formula {
    enum class Kind { Leaf, And, Or, Not };
    Kind kind = Kind::Leaf;
    ProgramRef program;  // Leaf
    std::vector<FormulaRef> kids;

    static FormulaRef leaf_of(ProgramRef p) {
        auto f = std::make_shared<Formula>();
        f->program = std::move(p);
        return f;
    }
    static FormulaRef op(Kind k, std::vector<FormulaRef> kids) {
        auto f = std::make_shared<Formula>();
        f->kind = k;
        f->kids = std::move(kids);
        return f;
    }
    static FormulaRef and_of(std::vector<FormulaRef> k) { return op(Kind::And, std::move(k)); }
    static FormulaRef or_of(std::vector<FormulaRef> k) { return op(Kind::Or, std::move(k)); }
    static FormulaRef not_of(FormulaRef k) { return op(Kind::Not, {std::move(k)}); }
};

inline void validate_formula(const FormulaRef& f) {
    if (!f) throw InputError("null formula node");
    switch (f->kind) {
        case Formula::Kind::Leaf:
            if (!f->program || !f->kids.empty()) throw InputError("formula leaf needs exactly a program");
            return;
        case Formula::Kind::Not:
            if (f->kids.size() != 1) throw InputError("negation takes one argument");
            break;
        default:
            if (f->kids.empty()) throw InputError("empty AND/OR");
    }
    for (const auto& k : f->kids) validate_formula(k);
}

inline bool eval_formula(const FormulaRef& f, const Input& x) {
    switch (f->kind) {
        case Formula::Kind::Leaf: return accepts(f->program, x);
        case Formula::Kind::Not: return !eval_formula(f->kids[0], x);
        case Formula::Kind::And:
            return std::all_of(f->kids.begin(), f->kids.end(), [&](const FormulaRef& k) { return eval_formula(k, x); });
        case Formula::Kind::Or:
            return std::any_of(f->kids.begin(), f->kids.end(), [&](const FormulaRef& k) { return eval_formula(k, x); });
    }
    return false;
}

inline int formula_depth(const FormulaRef& f) {
    int d = 0;
    for (const auto& k : f->kids) d = std::max(d, formula_depth(k));
    return f->kind == Formula::Kind::Leaf ? 0 : d + 1;
}

/// Series-parallel dual of a program built from and/or compositions; leaves are negated.
inline ProgramRef sp_negate(const ProgramRef& p) {
    switch (p->kind) {
        case ProgramNode::Kind::Scaled: return scaled(1.0 / p->alpha, sp_negate(p->child));
        case ProgramNode::Kind::Negated: return p->child;
        case ProgramNode::Kind::Graph: {
            const auto& g = *p->graph;
            std::vector<ProgramRef> kids;
            for (const auto& c : g.programs) kids.push_back(sp_negate(c));
            const bool parallel = g.net.num_vertices() == 2;
            if (!parallel && g.net.num_vertices() != g.num_edges() + 1)
                throw InputError("dual negation needs a series or parallel composition");
            return graph_program(parallel ? and_compose(kids) : or_compose(kids));
        }
        default: return negated(p);
    }
}

struct FormulaConversion {
    ProgramRef program;
    double c_squared = 0.0;
    double leaf_c_squared_sum = 0.0;
    int depth = 0;
};

/// OR levels are variable-time ORs with W+ measured on `inputs`; negation is the dual graph.
inline FormulaConversion formula_to_composition(const FormulaRef& f, const std::vector<Input>& inputs) {
    validate_formula(f);
    if (inputs.empty()) throw InputError("formula conversion needs evaluation inputs");
    std::vector<EvalCache> caches(inputs.size());
    std::map<const Formula*, ProgramRef> memo;
    std::vector<ProgramRef> measured;  // caches are keyed by node address
    auto measure = [&](const ProgramRef& p) {
        measured.push_back(p);
        double wp = 0.0, wm = 0.0;
        for (std::size_t i = 0; i < inputs.size(); ++i) {
            const auto w = evaluate(p, inputs[i], caches[i]);
            if (w.positive)
                wp = std::max(wp, w.w_plus);
            else
                wm = std::max(wm, w.w_minus);
        }
        return std::make_pair(wp, wm);
    };
    std::function<ProgramRef(const FormulaRef&)> build = [&](const FormulaRef& g) -> ProgramRef {
        auto it = memo.find(g.get());
        if (it != memo.end()) return it->second;
        ProgramRef out;
        switch (g->kind) {
            case Formula::Kind::Leaf: out = g->program; break;
            case Formula::Kind::Not: out = sp_negate(build(g->kids[0])); break;
            case Formula::Kind::Or:
            case Formula::Kind::And: {
                const bool is_and = g->kind == Formula::Kind::And;
                // children never positive on the inputs would get weight 1/0 and are left out
                std::vector<std::pair<ProgramRef, double>> kids, dead;
                for (const auto& k : g->kids) {
                    auto p = build(k);
                    if (is_and) p = sp_negate(p);
                    const double wp = measure(p).first;
                    (wp > 0.0 ? kids : dead).push_back({p, wp > 0.0 ? wp : 1.0});
                }
                out = graph_program(variable_time_or(kids.empty() ? dead : kids));
                if (is_and) out = sp_negate(out);
                break;
            }
        }
        memo.emplace(g.get(), out);
        return out;
    };
    FormulaConversion r;
    r.program = build(f);
    r.depth = formula_depth(f);
    const auto [wp, wm] = measure(r.program);
    r.c_squared = wp * wm;
    std::function<void(const FormulaRef&)> leaves = [&](const FormulaRef& g) {
        if (g->kind == Formula::Kind::Leaf) {
            const auto [a, b] = measure(g->program);
            r.leaf_c_squared_sum += a > 0.0 && b > 0.0 ? a * b : std::max(a, b);
            return;
        }
        for (const auto& k : g->kids) leaves(k);
    };
    leaves(f);
    return r;
}

// =============================================================================
// Divide and conquer, Savitch
// =============================================================================

struct DivideConquer {
    int m0 = 1;
    std::function<FormulaRef(int m)> base;                 ///< formula for m < m0
    std::function<std::vector<int>(int m)> split;          ///< subproblem sizes m_j
    std::function<std::vector<FormulaRef>(int m)> aux;     ///< auxiliary leaves
    /// Combining formula over the subproblem formulas followed by the aux formulas.
    std::function<FormulaRef(int m, const std::vector<FormulaRef>& args)> combine;
};

inline FormulaRef divide_and_conquer_formula(const DivideConquer& dc, int m) {
    if (m < dc.m0) return dc.base(m);
    std::vector<FormulaRef> args;
    for (int mj : dc.split(m)) {
        if (mj >= m) throw InputError("divide-and-conquer split does not decrease");
        args.push_back(divide_and_conquer_formula(dc, mj));
    }
    if (dc.aux)
        for (auto& a : dc.aux(m)) args.push_back(std::move(a));
    return dc.combine(m, args);
}

struct DivideConquerLevel {
    int m = 0;
    double c_squared = 0.0;
    double bound = 0.0;  ///< sum of child C^2 plus aux C^2
};

/// Converts each level and checks C(P_m)^2 <= sum C(P_mj)^2 + C(aux)^2.
inline std::vector<DivideConquerLevel> divide_and_conquer(const DivideConquer& dc, int m,
                                                          const std::vector<Input>& inputs) {
    std::vector<DivideConquerLevel> out;
    auto csq = [&](const FormulaRef& f) { return formula_to_composition(f, inputs).c_squared; };
    std::function<double(int)> rec = [&](int mm) -> double {
        if (mm < dc.m0) return csq(dc.base(mm));
        DivideConquerLevel lv;
        lv.m = mm;
        for (int mj : dc.split(mm)) lv.bound += rec(mj);
        if (dc.aux)
            for (const auto& a : dc.aux(mm)) lv.bound += csq(a);
        lv.c_squared = csq(divide_and_conquer_formula(dc, mm));
        out.push_back(lv);
        return lv.c_squared;
    };
    rec(m);
    return out;
}

/// phi^1_{s,t} = [s = t] or x_{(s,t)}; phi^l_{s,t} = OR_v phi^{l/2}_{s,v} AND phi^{l/2}_{v,t}.
/// x is the n*n adjacency string, row-major. Equal (s, t, l) share one node.
inline FormulaRef savitch_formula(int n, int s, int t) {
    if (n < 1 || (n & (n - 1))) throw InputError("savitch formula needs n a power of 2");
    if (s < 0 || s >= n || t < 0 || t >= n) throw InputError("terminal out of range");
    std::map<std::tuple<int, int, int>, FormulaRef> memo;
    std::function<FormulaRef(int, int, int)> phi = [&](int a, int b, int l) -> FormulaRef {
        auto key = std::make_tuple(a, b, l);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
        FormulaRef out;
        if (l == 1) {
            out = Formula::leaf_of(leaf(a == b ? Predicate::constant(true) : Predicate::bit(a * n + b)));
        } else {
            std::vector<FormulaRef> kids;
            for (int v = 0; v < n; ++v) kids.push_back(Formula::and_of({phi(a, v, l / 2), phi(v, b, l / 2)}));
            out = Formula::or_of(kids);
        }
        memo.emplace(key, out);
        return out;
    };
    return phi(s, t, n);
}

/// The same recursion as a divide-and-conquer strategy over l.
inline DivideConquer savitch_strategy(int n, int s, int t) {
    auto memo = std::make_shared<std::map<std::tuple<int, int, int>, FormulaRef>>();
    DivideConquer dc;
    dc.m0 = 2;
    auto node = std::make_shared<std::function<FormulaRef(int, int, int)>>();
    *node = [n, memo, node](int a, int b, int l) -> FormulaRef {
        auto key = std::make_tuple(a, b, l);
        auto it = memo->find(key);
        if (it != memo->end()) return it->second;
        FormulaRef out;
        if (l == 1) {
            out = Formula::leaf_of(leaf(a == b ? Predicate::constant(true) : Predicate::bit(a * n + b)));
        } else {
            std::vector<FormulaRef> kids;
            for (int v = 0; v < n; ++v) kids.push_back(Formula::and_of({(*node)(a, v, l / 2), (*node)(v, b, l / 2)}));
            out = Formula::or_of(kids);
        }
        memo->emplace(key, out);
        return out;
    };
    dc.base = [node, s, t](int l) { return (*node)(s, t, l); };
    dc.split = [n](int l) { return std::vector<int>(2 * n, l / 2); };
    dc.combine = [node, s, t](int l, const std::vector<FormulaRef>&) { return (*node)(s, t, l); };
    return dc;
}

/// Structural equality of formulas (leaf predicates compared by description).
inline bool same_formula(const FormulaRef& a, const FormulaRef& b) {
    if (a.get() == b.get()) return true;
    if (a->kind != b->kind || a->kids.size() != b->kids.size()) return false;
    if (a->kind == Formula::Kind::Leaf)
        return a->program->kind == ProgramNode::Kind::Leaf && b->program->kind == ProgramNode::Kind::Leaf &&
               a->program->pred.describe() == b->program->pred.describe() && a->program->alpha == b->program->alpha;
    for (std::size_t i = 0; i < a->kids.size(); ++i)
        if (!same_formula(a->kids[i], b->kids[i])) return false;
    return true;
}

inline bool bfs_reachable(const Input& adj, int n, int s, int t) {
    std::vector<char> seen(n, 0);
    std::vector<int> q{s};
    seen[s] = 1;
    for (std::size_t i = 0; i < q.size(); ++i)
        for (int v = 0; v < n; ++v)
            if (!seen[v] && adj[q[i] * n + v] == '1') {
                seen[v] = 1;
                q.push_back(v);
            }
    return seen[t];
}

// =============================================================================
// Learning graphs
// =============================================================================

struct LearningGraph {
    int n = 0;                                ///< input length
    std::vector<std::vector<int>> S;          ///< sorted index sets per vertex
    std::vector<std::pair<int, int>> edges;   ///< (u, v) with S(v) = S(u) + {j}
    /// Per edge: key "z|b" with z the assignment on S(v) in increasing index order.
    std::vector<std::map<std::string, double>> w;
    std::map<Input, std::vector<double>> flows;  ///< unit flows per positive input

    int root() const {
        int r = -1;
        for (std::size_t v = 0; v < S.size(); ++v)
            if (S[v].empty()) {
                if (r >= 0) throw InputError("learning graph has more than one root");
                r = static_cast<int>(v);
            }
        if (r < 0) throw InputError("learning graph has no root");
        return r;
    }

    int added_index(int e) const {
        const auto& [u, v] = edges[e];
        std::vector<int> d;
        std::set_difference(S[v].begin(), S[v].end(), S[u].begin(), S[u].end(), std::back_inserter(d));
        return d.empty() ? -1 : d[0];
    }

    static std::string restrict(const Input& x, const std::vector<int>& idx) {
        std::string z;
        for (int i : idx) z += i < static_cast<int>(x.size()) ? x[i] : '0';
        return z;
    }

    double weight(int e, const std::string& z, int b) const {
        auto it = w[e].find(z + "|" + std::to_string(b));
        return it == w[e].end() ? 0.0 : it->second;
    }

    double weight_on(const Input& x, int e, int b) const { return weight(e, restrict(x, S[edges[e].second]), b); }
};

namespace detail {
/// Inputs of the domain consistent with assignment z on idx.
inline std::vector<int> consistent(const std::vector<Input>& domain, const std::vector<int>& idx,
                                   const std::string& z) {
    std::vector<int> out;
    for (std::size_t i = 0; i < domain.size(); ++i)
        if (LearningGraph::restrict(domain[i], idx) == z) out.push_back(static_cast<int>(i));
    return out;
}
}  // namespace detail

/// Structure, condition (b) and flow checks on the supplied domain.
inline void validate_learning_graph(const LearningGraph& lg, const std::vector<Input>& domain,
                                    const std::function<bool(const Input&)>& f, double tol = 1e-9) {
    const int nv = static_cast<int>(lg.S.size());
    const int r = lg.root();
    if (lg.w.size() != lg.edges.size()) throw InputError("every learning-graph edge needs a weight table");
    for (const auto& s : lg.S)
        for (std::size_t i = 0; i < s.size(); ++i)
            if (s[i] < 0 || s[i] >= lg.n || (i && s[i] <= s[i - 1]))
                throw InputError("vertex index sets must be sorted, distinct and in range");
    for (std::size_t e = 0; e < lg.edges.size(); ++e) {
        const auto [u, v] = lg.edges[e];
        if (u < 0 || v < 0 || u >= nv || v >= nv) throw InputError("edge endpoint out of range");
        if (lg.S[v].size() != lg.S[u].size() + 1 ||
            !std::includes(lg.S[v].begin(), lg.S[v].end(), lg.S[u].begin(), lg.S[u].end()))
            throw InputError("edge " + std::to_string(e) + " must add exactly one index");
        for (const auto& [k, val] : lg.w[e])
            if (!(val >= 0.0) || std::isinf(val)) throw InputError("learning-graph weights must be finite and >= 0");
    }
    std::vector<Input> pos, neg;
    for (const auto& x : domain) (f(x) ? pos : neg).push_back(x);
    for (std::size_t e = 0; e < lg.edges.size(); ++e) {
        const auto [u, v] = lg.edges[e];
        const int j = lg.added_index(static_cast<int>(e));
        for (const auto& x : neg)
            for (const auto& y : pos) {
                if (LearningGraph::restrict(x, lg.S[u]) != LearningGraph::restrict(y, lg.S[u])) continue;
                if (x[j] == y[j]) continue;
                const double a = lg.weight_on(x, static_cast<int>(e), 0), b = lg.weight_on(y, static_cast<int>(e), 1);
                if (std::abs(a - b) > tol * std::max(1.0, std::abs(a)))
                    throw InputError("weight condition (b) fails on edge " + std::to_string(e) + " for " + x + "/" + y);
            }
    }
    for (const auto& y : pos) {
        auto it = lg.flows.find(y);
        if (it == lg.flows.end()) throw InputError("no flow for positive input '" + y + "'");
        const auto& p = it->second;
        if (p.size() != lg.edges.size()) throw InputError("flow has wrong length");
        std::vector<double> net(nv, 0.0);
        for (std::size_t e = 0; e < lg.edges.size(); ++e) {
            if (p[e] != 0.0 && lg.weight_on(y, static_cast<int>(e), 1) == 0.0)
                throw InputError("flow uses a zero-weight edge for '" + y + "'");
            net[lg.edges[e].first] -= p[e];
            net[lg.edges[e].second] += p[e];
        }
        for (int v = 0; v < nv; ++v) {
            if (v == r) {
                if (std::abs(net[v] + 1.0) > 1e-9) throw InputError("flow for '" + y + "' is not a unit flow");
                continue;
            }
            const auto cons = detail::consistent(domain, lg.S[v], LearningGraph::restrict(y, lg.S[v]));
            const bool cert = std::all_of(cons.begin(), cons.end(), [&](int i) { return f(domain[i]); });
            if (!cert && std::abs(net[v]) > 1e-9) throw InputError("flow for '" + y + "' is not conserved");
        }
    }
}

inline double lg_minus(const LearningGraph& lg, const Input& x) {
    double s = 0.0;
    for (std::size_t e = 0; e < lg.edges.size(); ++e) s += lg.weight_on(x, static_cast<int>(e), 0);
    return s;
}

inline double lg_plus(const LearningGraph& lg, const Input& y) {
    const auto& p = lg.flows.at(y);
    double s = 0.0;
    for (std::size_t e = 0; e < lg.edges.size(); ++e)
        if (p[e] != 0.0) s += p[e] * p[e] / lg.weight_on(y, static_cast<int>(e), 1);
    return s;
}

/// Vertices (v, z); unsatisfiable and negative-certificate nodes are pruned,
/// positive-certificate nodes contracted to t.
inline CompositionGraph learning_graph_to_st(const LearningGraph& lg, const std::vector<Input>& domain,
                                             const std::function<bool(const Input&)>& f) {
    validate_learning_graph(lg, domain, f);
    const int r = lg.root();
    ResistorNetwork net;
    const int s = net.add_vertex("s");
    const int t = net.add_vertex("t");
    net.set_terminals(s, t);
    // -1 pruned, otherwise network vertex
    std::map<std::pair<int, std::string>, int> id;
    auto node = [&](int v, const std::string& z) -> int {
        auto key = std::make_pair(v, z);
        auto it = id.find(key);
        if (it != id.end()) return it->second;
        const auto cons = detail::consistent(domain, lg.S[v], z);
        int out;
        if (cons.empty() || std::none_of(cons.begin(), cons.end(), [&](int i) { return f(domain[i]); }))
            out = -1;
        else if (std::all_of(cons.begin(), cons.end(), [&](int i) { return f(domain[i]); }))
            out = t;
        else if (v == r)
            out = s;
        else
            out = net.add_vertex("v" + std::to_string(v) + ":" + z);
        id.emplace(key, out);
        return out;
    };
    if (node(r, "") == t) throw InputError("function is constant 1 on the domain");
    std::vector<ProgramRef> ps;
    for (std::size_t e = 0; e < lg.edges.size(); ++e) {
        const auto [u, v] = lg.edges[e];
        const int j = lg.added_index(static_cast<int>(e));
        const auto& Sv = lg.S[v];
        const int pos = static_cast<int>(std::find(Sv.begin(), Sv.end(), j) - Sv.begin());
        const int k = static_cast<int>(Sv.size());
        for (long long mask = 0; mask < (1LL << k); ++mask) {
            std::string zv(k, '0');
            for (int i = 0; i < k; ++i)
                if (mask >> i & 1) zv[i] = '1';
            std::string zu = zv;
            zu.erase(pos, 1);
            const int a = node(u, zu);
            const int b = node(v, zv);
            if (a < 0 || b < 0 || a == b) continue;
            const double wt = lg.weight(static_cast<int>(e), zv, 1);
            if (wt == 0.0) continue;
            net.add_edge("e" + std::to_string(ps.size() + 1), a, b);
            ps.push_back(bit_edge(j, zv[pos] - '0', 1.0 / wt));
        }
    }
    return CompositionGraph(std::move(net), std::move(ps));
}

}  // namespace gcomp
