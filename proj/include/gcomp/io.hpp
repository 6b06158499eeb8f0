#pragma once

#include "gcomp/catalog.hpp"
#include "gcomp/decomp.hpp"
#include "gcomp/quantsim.hpp"

#include "json.hpp"

#include <fstream>
#include <sstream>

namespace gcomp::io {

using json = nlohmann::json;

inline json read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw InputError("malformed JSON in '" + path + "': " + e.what());
    }
}

inline double number_or_inf(const json& j) {
    if (j.is_string()) {
        if (j.get<std::string>() == "inf") return kInf;
        throw InputError("expected a number or \"inf\"");
    }
    if (!j.is_number()) throw InputError("expected a number");
    return j.get<double>();
}

inline json number_json(double v) { return std::isinf(v) ? json("inf") : json(v); }

template <class T>
T field(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw InputError(std::string("missing field '") + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const json::exception&) {
        throw InputError(std::string("field '") + key + "' has the wrong type");
    }
}

/// Like field<json>, without the copy; safe to iterate with items().
inline const json& member(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw InputError(std::string("missing field '") + key + "'");
    return j.at(key);
}

// =============================================================================
// Networks and flows
// =============================================================================

inline ResistorNetwork network_from_json(const json& j) {
    ResistorNetwork net;
    if (j.contains("vertices"))
        for (const auto& v : j.at("vertices")) net.add_vertex(v.get<std::string>());
    if (!j.contains("edges") || !j.at("edges").is_array()) throw InputError("network needs an edges array");
    for (const auto& e : j.at("edges")) {
        const auto tail = field<std::string>(e, "tail"), head = field<std::string>(e, "head");
        if (!net.has_vertex(tail) || !net.has_vertex(head)) {
            if (j.contains("vertices")) throw InputError("edge references an undeclared vertex");
        }
        Resistance r;
        if (e.contains("r")) r = resistance_from(number_or_inf(e.at("r")));
        net.add_edge(field<std::string>(e, "id"), tail, head, r);
    }
    if (j.contains("s") != j.contains("t")) throw InputError("give both s and t or neither");
    if (j.contains("s")) net.set_terminals(field<std::string>(j, "s"), field<std::string>(j, "t"));
    return net;
}

inline json network_to_json(const ResistorNetwork& net) {
    json j;
    j["vertices"] = net.vertex_names();
    j["edges"] = json::array();
    for (const auto& e : net.edges())
        j["edges"].push_back({{"id", e.id},
                              {"tail", net.vertex_name(e.tail)},
                              {"head", net.vertex_name(e.head)},
                              {"r", number_json(e.r.as_double())}});
    if (net.source()) {
        j["s"] = net.vertex_name(*net.source());
        j["t"] = net.vertex_name(*net.sink());
    }
    return j;
}

inline json flow_to_json(const ResistorNetwork& net, const Vec& coeffs) {
    json c = json::object();
    for (int e = 0; e < net.num_edges(); ++e) c[net.edge_at(e).id] = coeffs(e);
    return {{"coeffs", c}};
}

inline Vec flow_from_json(const ResistorNetwork& net, const json& j) {
    Vec v = Vec::Zero(net.num_edges());
    for (const auto& [id, val] : member(j, "coeffs").items()) v(net.edge(id)) = val.get<double>();
    return v;
}

// =============================================================================
// Span programs
// =============================================================================

inline Mat columns_from_json(const json& j, int dim) {
    if (!j.is_array()) throw InputError("expected an array of columns");
    Mat M(dim, static_cast<Index>(j.size()));
    for (std::size_t c = 0; c < j.size(); ++c) {
        if (j[c].size() != static_cast<std::size_t>(dim)) throw InputError("column has wrong length");
        for (int r = 0; r < dim; ++r) M(r, static_cast<Index>(c)) = j[c][r].get<double>();
    }
    return M;
}

inline json columns_to_json(const Mat& M) {
    json j = json::array();
    for (Index c = 0; c < M.cols(); ++c) {
        json col = json::array();
        for (Index r = 0; r < M.rows(); ++r) col.push_back(M(r, c));
        j.push_back(col);
    }
    return j;
}

inline SpanProgram span_program_from_json(const json& j) {
    const int dim = field<int>(j, "dim");
    const auto w0j = field<std::vector<double>>(j, "w0");
    if (static_cast<int>(w0j.size()) != dim) throw InputError("w0 has wrong length");
    Vec w0 = Eigen::Map<const Vec>(w0j.data(), dim);
    Mat K = j.contains("K") ? columns_from_json(j.at("K"), dim) : Mat(dim, 0);
    std::unordered_map<Input, Mat> table;
    for (const auto& [label, spec] : member(j, "inputs").items())
        table.emplace(label, columns_from_json(field<json>(spec, "H"), dim));
    return SpanProgram::from_table(dim, w0, K, std::move(table));
}

/// Only explicit-domain programs serialize; the basis of K is written, not the generators.
inline json span_program_to_json(const SpanProgram& p) {
    if (!p.domain()) throw InputError("span program has no explicit domain");
    json j;
    j["dim"] = p.dim();
    j["w0"] = std::vector<double>(p.w0().data(), p.w0().data() + p.dim());
    j["K"] = columns_to_json(p.k_basis());
    j["inputs"] = json::object();
    for (const auto& x : *p.domain()) j["inputs"][x] = {{"H", columns_to_json(p.hx(x))}};
    return j;
}

inline json witness_report_to_json(const WitnessReport& w) {
    return {{"input", w.input},
            {"positive", w.positive},
            {"size", number_json(w.size)},
            {"feasible", w.feasible},
            {"witness", std::vector<double>(w.witness.data(), w.witness.data() + w.witness.size())}};
}

// =============================================================================
// Programs and compositions
// =============================================================================

inline Predicate predicate_from_json(const json& j) {
    const auto kind = field<std::string>(j, "pred");
    if (kind == "const") return Predicate::constant(field<bool>(j, "value"));
    if (kind == "bit") return Predicate::bit(field<int>(j, "i"));
    if (kind == "eq") {
        const auto c = field<std::string>(j, "c");
        if (c.size() != 1) throw InputError("eq predicate needs a single character");
        return Predicate::char_eq(field<int>(j, "i"), c[0]);
    }
    if (kind == "less") return Predicate::less(field<int>(j, "i"), field<int>(j, "j"));
    if (kind == "geq") return Predicate::greater_eq(field<int>(j, "i"), field<int>(j, "j"));
    throw InputError("unknown predicate '" + kind + "'");
}

inline json predicate_to_json(const Predicate& p) {
    switch (p.kind) {
        case Predicate::Kind::Const: return {{"pred", "const"}, {"value", p.value}};
        case Predicate::Kind::CharEq:
            if (p.c == '1') return {{"pred", "bit"}, {"i", p.i}};
            return {{"pred", "eq"}, {"i", p.i}, {"c", std::string(1, p.c)}};
        case Predicate::Kind::Less: return {{"pred", "less"}, {"i", p.i}, {"j", p.j}};
        case Predicate::Kind::GreaterEq: return {{"pred", "geq"}, {"i", p.i}, {"j", p.j}};
    }
    return {};
}

inline CompositionGraph composition_from_json(const json& j, const json& library);

/// Shorthand strings: "x3" (bit 3), "!x3" (its negation), "true", "false"; other strings name library entries.
inline ProgramRef program_from_json(const json& j, const json& library) {
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (library.is_object() && library.contains(s)) return program_from_json(library.at(s), library);
        if (s == "true" || s == "false") return leaf(Predicate::constant(s == "true"));
        const bool neg = !s.empty() && s[0] == '!';
        const std::string body = neg ? s.substr(1) : s;
        if (body.size() >= 2 && body[0] == 'x' &&
            std::all_of(body.begin() + 1, body.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
            auto p = leaf(Predicate::bit(std::stoi(body.substr(1))));
            return neg ? negated(p) : p;
        }
        throw InputError("unknown program reference '" + s + "'");
    }
    const auto kind = field<std::string>(j, "kind");
    if (kind == "leaf") return leaf(predicate_from_json(j), j.value("alpha", 1.0));
    if (kind == "scaled") return scaled(field<double>(j, "alpha"), program_from_json(field<json>(j, "child"), library));
    if (kind == "negated") return negated(program_from_json(field<json>(j, "child"), library));
    if (kind == "graph") return graph_program(composition_from_json(j, library));
    if (kind == "explicit") return explicit_program(span_program_from_json(j));
    throw InputError("unknown program kind '" + kind + "'");
}

inline json composition_to_json(const CompositionGraph& g);

inline json program_to_json(const ProgramRef& p) {
    switch (p->kind) {
        case ProgramNode::Kind::Leaf: {
            json j = predicate_to_json(p->pred);
            j["kind"] = "leaf";
            if (p->alpha != 1.0) j["alpha"] = p->alpha;
            return j;
        }
        case ProgramNode::Kind::Scaled:
            return {{"kind", "scaled"}, {"alpha", p->alpha}, {"child", program_to_json(p->child)}};
        case ProgramNode::Kind::Negated: return {{"kind", "negated"}, {"child", program_to_json(p->child)}};
        case ProgramNode::Kind::Graph: {
            json j = composition_to_json(*p->graph);
            j["kind"] = "graph";
            return j;
        }
        case ProgramNode::Kind::Explicit: {
            json j = span_program_to_json(*p->program);
            j["kind"] = "explicit";
            return j;
        }
    }
    return {};
}

inline CompositionGraph composition_from_json(const json& j, const json& library) {
    const json& lib = j.contains("library") ? j.at("library") : library;
    ResistorNetwork net = network_from_json(j);
    const auto progs = field<json>(j, "programs");
    std::vector<ProgramRef> ps(net.num_edges());
    for (int e = 0; e < net.num_edges(); ++e) {
        const auto& id = net.edge_at(e).id;
        if (!progs.contains(id)) throw InputError("edge '" + id + "' has no program");
        ps[e] = program_from_json(progs.at(id), lib);
    }
    return CompositionGraph(std::move(net), std::move(ps));
}

inline CompositionGraph composition_from_json(const json& j) { return composition_from_json(j, json::object()); }

/// Resistances are implied by the programs and are left out.
inline json composition_to_json(const CompositionGraph& g) {
    json j = network_to_json(g.net);
    for (auto& e : j["edges"]) e.erase("r");
    j["programs"] = json::object();
    for (int e = 0; e < g.num_edges(); ++e) j["programs"][g.net.edge_at(e).id] = program_to_json(g.programs[e]);
    return j;
}

inline StConnInstance st_instance_from_json(const json& j) {
    StConnInstance inst;
    inst.net = network_from_json(j);
    const int m = inst.net.num_edges();
    inst.j.assign(m, -1);
    inst.b.assign(m, -1);
    for (const auto& [id, v] : member(j, "j").items()) inst.j[inst.net.edge(id)] = v.get<int>();
    for (const auto& [id, v] : member(j, "b").items()) inst.b[inst.net.edge(id)] = v.get<int>();
    for (int e = 0; e < m; ++e)
        if (inst.j[e] < 0 || inst.b[e] < 0) throw InputError("edge '" + inst.net.edge_at(e).id + "' lacks j or b");
    return inst;
}

inline json st_instance_to_json(const StConnInstance& inst) {
    json j = network_to_json(inst.net);
    j["j"] = json::object();
    j["b"] = json::object();
    for (int e = 0; e < inst.net.num_edges(); ++e) {
        j["j"][inst.net.edge_at(e).id] = inst.j[e];
        j["b"][inst.net.edge_at(e).id] = inst.b[e];
    }
    return j;
}

inline json witness_pair_to_json(const WitnessPair& w) {
    return {{"positive", w.positive}, {"w_plus", number_json(w.w_plus)}, {"w_minus", number_json(w.w_minus)}};
}

// =============================================================================
// Decomposition trees
// =============================================================================

inline DecompNode decomposition_from_json(const ResistorNetwork& net, const json& j) {
    DecompNode n;
    const auto kind = field<std::string>(j, "kind");
    if (kind == "leaf")
        n.kind = DecompNode::Kind::Leaf;
    else if (kind == "tree")
        n.kind = DecompNode::Kind::Tree;
    else if (kind == "parallel")
        n.kind = DecompNode::Kind::Parallel;
    else
        throw InputError("unknown decomposition kind '" + kind + "'");
    for (const auto& id : field<std::vector<std::string>>(j, "label")) n.label.push_back(net.edge(id));
    if (j.contains("st")) {
        const auto st = field<std::vector<std::string>>(j, "st");
        if (st.size() != 2) throw InputError("st must name two vertices");
        n.st = std::make_pair(net.vertex(st[0]), net.vertex(st[1]));
    }
    if (j.contains("children"))
        for (const auto& c : j.at("children")) n.children.push_back(decomposition_from_json(net, c));
    return n;
}

inline json decomposition_to_json(const ResistorNetwork& net, const DecompNode& n) {
    json j;
    j["kind"] = kind_name(n.kind);
    j["label"] = json::array();
    for (int e : n.label) j["label"].push_back(net.edge_at(e).id);
    if (n.st) j["st"] = {net.vertex_name(n.st->first), net.vertex_name(n.st->second)};
    if (!n.children.empty()) {
        j["children"] = json::array();
        for (const auto& c : n.children) j["children"].push_back(decomposition_to_json(net, c));
    }
    return j;
}

// =============================================================================
// Decision trees, families, learning graphs
// =============================================================================

inline int tree_node_from_json(DecisionTree& t, const json& j) {
    if (j.contains("leaf")) {
        const auto l = field<std::string>(j, "leaf");
        if (l.size() != 1) throw InputError("leaf label must be 0, 1 or ?");
        return t.add_leaf(l[0]);
    }
    const int c0 = tree_node_from_json(t, field<json>(j, "c0"));
    const int c1 = tree_node_from_json(t, field<json>(j, "c1"));
    const int v = t.add_query(field<int>(j, "query"), c0, c1, j.value("w0", 1.0), j.value("w1", 1.0));
    if (j.contains("guess")) t.nodes[v].guess = field<int>(j, "guess");
    return v;
}

inline DecisionTree decision_tree_from_json(const json& j) {
    DecisionTree t;
    t.set_root(tree_node_from_json(t, j));
    t.validate();
    return t;
}

inline json decision_tree_to_json(const DecisionTree& t, int v = 0) {
    const auto& n = t.nodes[v];
    if (n.is_leaf) return {{"leaf", std::string(1, n.label)}};
    return {{"query", n.query},
            {"w0", n.w[0]},
            {"w1", n.w[1]},
            {"guess", n.guess},
            {"c0", decision_tree_to_json(t, n.child[0])},
            {"c1", decision_tree_to_json(t, n.child[1])}};
}

inline TreeFamily tree_family_from_json(const json& j) {
    TreeFamily f;
    for (const auto& t : field<json>(j, "trees")) f.trees.push_back(decision_tree_from_json(t));
    f.probs = field<std::vector<double>>(j, "probs");
    f.validate();
    return f;
}

inline json tree_family_to_json(const TreeFamily& f) {
    json trees = json::array();
    for (const auto& t : f.trees) trees.push_back(decision_tree_to_json(t));
    return {{"trees", trees}, {"probs", f.probs}};
}

/// The function is given by its positive inputs; the domain defaults to {0,1}^n.
struct LearningGraphSpec {
    LearningGraph graph;
    std::vector<Input> domain;
    std::set<Input> positive;
    bool f(const Input& x) const { return positive.count(x) > 0; }
};

inline std::vector<Input> all_bit_strings(int n) {
    if (n < 0 || n > 20) throw InputError("bit-string domain limited to n <= 20");
    std::vector<Input> out;
    for (long long m = 0; m < (1LL << n); ++m) {
        Input x(n, '0');
        for (int i = 0; i < n; ++i)
            if (m >> i & 1) x[i] = '1';
        out.push_back(x);
    }
    return out;
}

inline LearningGraphSpec learning_graph_from_json(const json& j) {
    LearningGraphSpec spec;
    auto& lg = spec.graph;
    lg.n = field<int>(j, "n");
    for (const auto& v : field<json>(j, "vertices")) {
        auto S = field<std::vector<int>>(v, "S");
        std::sort(S.begin(), S.end());
        lg.S.push_back(S);
    }
    for (const auto& e : field<json>(j, "edges")) {
        lg.edges.push_back({field<int>(e, "from"), field<int>(e, "to")});
        std::map<std::string, double> w;
        for (const auto& [k, v] : member(e, "w").items()) w[k] = v.get<double>();
        lg.w.push_back(w);
    }
    if (j.contains("flows"))
        for (const auto& [y, p] : j.at("flows").items()) lg.flows[y] = p.get<std::vector<double>>();
    spec.domain = j.contains("domain") ? field<std::vector<Input>>(j, "domain") : all_bit_strings(lg.n);
    for (const auto& y : field<std::vector<Input>>(j, "positive")) spec.positive.insert(y);
    return spec;
}

inline json learning_graph_to_json(const LearningGraphSpec& spec) {
    const auto& lg = spec.graph;
    json j;
    j["n"] = lg.n;
    j["vertices"] = json::array();
    for (const auto& S : lg.S) j["vertices"].push_back({{"S", S}});
    j["edges"] = json::array();
    for (std::size_t e = 0; e < lg.edges.size(); ++e)
        j["edges"].push_back({{"from", lg.edges[e].first}, {"to", lg.edges[e].second}, {"w", lg.w[e]}});
    j["flows"] = json::object();
    for (const auto& [y, p] : lg.flows) j["flows"][y] = p;
    j["domain"] = spec.domain;
    j["positive"] = std::vector<Input>(spec.positive.begin(), spec.positive.end());
    return j;
}

/// "x3", "!x3", {"and": [...]}, {"or": [...]}, {"not": f}, or {"leaf": program}.
inline FormulaRef formula_from_json(const json& j, const json& library = json::object()) {
    if (j.is_string()) return Formula::leaf_of(program_from_json(j, library));
    if (!j.is_object() || j.size() != 1) throw InputError("formula node must have exactly one key");
    const auto& [key, val] = *j.items().begin();
    if (key == "leaf") return Formula::leaf_of(program_from_json(val, library));
    if (key == "not") return Formula::not_of(formula_from_json(val, library));
    if (key != "and" && key != "or") throw InputError("unknown formula node '" + key + "'");
    if (!val.is_array() || val.empty()) throw InputError("'" + key + "' needs a nonempty array");
    std::vector<FormulaRef> kids;
    for (const auto& k : val) kids.push_back(formula_from_json(k, library));
    return key == "and" ? Formula::and_of(kids) : Formula::or_of(kids);
}

inline json formula_to_json(const FormulaRef& f) {
    switch (f->kind) {
        case Formula::Kind::Leaf: return {{"leaf", program_to_json(f->program)}};
        case Formula::Kind::Not: return {{"not", formula_to_json(f->kids[0])}};
        case Formula::Kind::And:
        case Formula::Kind::Or: {
            json kids = json::array();
            for (const auto& k : f->kids) kids.push_back(formula_to_json(k));
            return {{f->kind == Formula::Kind::And ? "and" : "or", kids}};
        }
    }
    return {};
}

// =============================================================================
// Reports
// =============================================================================

inline json simulation_to_json(const SimulationResult& r) {
    return {{"input", r.input},
            {"iterations", r.iterations},
            {"p_one", r.p_one},
            {"success", r.success},
            {"expected_positive", r.expected_positive},
            {"norm_defect", r.norm_defect},
            {"w_plus_bound", r.w_plus_bound},
            {"w_minus_bound", r.w_minus_bound}};
}

inline json complexity_to_json(const ComplexityReport& c) {
    return {{"w_plus", c.w_plus}, {"w_minus", c.w_minus}, {"c", c.c}};
}

}  // namespace gcomp::io
