#include "gcomp/verify.hpp"

#include "CLI11.hpp"

#include <iostream>

using namespace gcomp;
using io::json;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitViolation = 1;
constexpr int kExitInput = 2;
constexpr const char* kSchema = "gcomp.report/1";

struct Options {
    double tolerance = 1e-9;
    std::uint64_t seed = 1;
    int max_dim = kDefaultMaxDim;
    std::string output = "json";
};

std::string scalar_text(const json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_float()) {
        std::ostringstream os;
        os.precision(10);
        os << v.get<double>();
        return os.str();
    }
    return v.dump();
}

/// Flat rendering: scalars as "key: value", arrays of objects as tab-separated rows.
void print_table(const json& j, const std::string& prefix, std::ostream& out) {
    for (const auto& [k, v] : j.items()) {
        const std::string key = prefix.empty() ? k : prefix + "." + k;
        if (v.is_object()) {
            print_table(v, key, out);
        } else if (v.is_array() && !v.empty() && v.front().is_object()) {
            out << key << ":\n";
            std::vector<std::string> cols;
            for (const auto& [ck, cv] : v.front().items()) cols.push_back(ck);
            out << "  ";
            for (std::size_t c = 0; c < cols.size(); ++c) out << (c ? "\t" : "") << cols[c];
            out << "\n";
            for (const auto& row : v) {
                out << "  ";
                for (std::size_t c = 0; c < cols.size(); ++c)
                    out << (c ? "\t" : "") << (row.contains(cols[c]) ? scalar_text(row[cols[c]]) : "");
                out << "\n";
            }
        } else {
            out << key << ": " << scalar_text(v) << "\n";
        }
    }
}

void emit(const Options& opt, const std::string& command, json body) {
    json report{{"schema", kSchema}, {"command", command}};
    report.update(body);
    if (opt.output == "table")
        print_table(report, "", std::cout);
    else
        std::cout << report.dump(2) << "\n";
}

std::vector<Input> split_inputs(const std::string& s) {
    std::vector<Input> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(item);
    return out;
}

bool is_binary(const Input& x) {
    return std::all_of(x.begin(), x.end(), [](char c) { return c == '0' || c == '1'; });
}

json pair_json(const WitnessPair& w) { return io::witness_pair_to_json(w); }

int vertex_arg(const ResistorNetwork& net, const std::string& name, std::optional<int> fallback) {
    if (!name.empty()) return net.vertex(name);
    if (!fallback) throw InputError("source and sink required: give --s/--t or set them in the file");
    return *fallback;
}

// =============================================================================
// Commands
// =============================================================================

int cmd_resistance(const Options& opt, const std::string& file, const std::string& s, const std::string& t) {
    const auto net = io::network_from_json(io::read_file(file));
    const int S = vertex_arg(net, s, net.source()), T = vertex_arg(net, t, net.sink());
    const auto R = effective_resistance(net, S, T);
    const auto flow = min_energy_unit_flow(net, S, T);
    json body;
    body["source"] = net.vertex_name(S);
    body["sink"] = net.vertex_name(T);
    body["resistance"] = io::number_json(R.as_double());
    body["routes"] = {
        {"grounded", io::number_json(R.as_double())},
        {"min_norm_flow", io::number_json(effective_resistance(net, S, T, ResistanceRoute::MinNormFlow).as_double())},
        {"laplacian_pinv", io::number_json(effective_resistance(net, S, T, ResistanceRoute::LaplacianPinv).as_double())}};
    body["short_circuit"] = flow.short_circuit;
    body["flow"] = io::flow_to_json(net, flow.flow.coeffs)["coeffs"];
    body["circulation_dim"] = static_cast<int>(circulation_basis(net).cols());
    emit(opt, "resistance", body);
    return kExitPass;
}

int cmd_witness(const Options& opt, const std::string& file, const Input& x) {
    const auto cg = io::composition_from_json(io::read_file(file));
    const auto a = witness_sizes_via_resistance(cg, x);
    json body{{"input", x}, {"positive", a.positive}, {"resistance_path", pair_json(a)}};
    bool ok = true;
    try {
        const auto sp = compose(cg, opt.max_dim);
        const auto b = witness(sp, x, opt.tolerance);
        const double disc = std::isinf(b.size) && std::isinf(a.size())
                                ? 0.0
                                : std::abs(a.size() - b.size) / std::max(1.0, std::abs(b.size));
        body["direct"] = {{"positive", b.positive}, {"size", io::number_json(b.size)}, {"dim", sp.dim()}};
        body["discrepancy"] = disc;
        ok = b.positive == a.positive && disc <= 1e-6;
    } catch (const InputError& e) {
        body["direct"] = {{"skipped", e.what()}};
    }
    body["ok"] = ok;
    emit(opt, "witness", body);
    return ok ? kExitPass : kExitViolation;
}

int cmd_compose(const Options& opt, const std::string& file, bool flatten, const std::string& inputs) {
    const auto cg = io::composition_from_json(io::read_file(file));
    json body;
    body["edges"] = cg.num_edges();
    body["flat_edges"] = flat_edge_count(graph_program(cg));
    if (flatten) body["flattened"] = io::composition_to_json(flatten_program(graph_program(cg)));
    const auto sp = compose(cg, opt.max_dim);
    body["dim"] = sp.dim();
    body["k_rank"] = static_cast<int>(sp.k_basis().cols());
    body["w0_norm2"] = sp.w0().squaredNorm();
    if (!inputs.empty()) {
        std::unordered_map<Input, Mat> table;
        for (const auto& x : split_inputs(inputs)) table.emplace(x, sp.hx(x));
        body["span_program"] = io::span_program_to_json(SpanProgram::from_table(sp.dim(), sp.w0(), sp.k_basis(), table));
    }
    emit(opt, "compose", body);
    return kExitPass;
}

int cmd_decompose(const Options& opt, const std::string& file, const std::string& tree_file, bool show_tree) {
    const auto net = io::network_from_json(io::read_file(file));
    const auto dec = tree_file.empty() ? auto_decompose(net) : io::decomposition_from_json(net, io::read_file(tree_file));
    const auto violations = validate_decomposition(net, dec);
    json body;
    body["violations"] = violations;
    body["depth"] = dec.depth();
    bool ok = violations.empty();
    if (ok) {
        const auto cost = decomposition_cost(dec);
        body["cost"] = {{"depth", cost.depth},
                        {"branching", cost.branching},
                        {"K", cost.K},
                        {"qrom_bits", cost.qrom_bits},
                        {"gates", cost.gates}};
        body["spectral_gap"] = spectral_gap(net);
        if (net.all_finite_positive()) {
            const double gap =
                la::op_norm(reflection_from_decomposition(net, dec).projector - circulation_projector_direct(net));
            body["projector_gap"] = gap;
            ok = gap <= std::max(opt.tolerance, 1e-9);
        }
    }
    if (show_tree) body["tree"] = io::decomposition_to_json(net, dec);
    body["ok"] = ok;
    emit(opt, "decompose", body);
    return ok ? kExitPass : kExitViolation;
}

int cmd_simulate(const Options& opt, const std::string& file, const Input& x, const std::string& bounds,
                 long long max_k) {
    const auto cg = io::composition_from_json(io::read_file(file));
    double wp = 0.0, wm = 0.0;
    std::string source;
    if (!bounds.empty()) {
        const auto parts = split_inputs(bounds);
        if (parts.size() != 2) throw InputError("--bounds expects W+,W-");
        try {
            wp = std::stod(parts[0]);
            wm = std::stod(parts[1]);
        } catch (const std::exception&) {
            throw InputError("--bounds values must be numbers");
        }
        source = "given";
    } else {
        if (!is_binary(x) || x.size() > 12) throw InputError("give --bounds for non-binary or long inputs");
        const auto b = verify::measured_bounds(cg, io::all_bit_strings(static_cast<int>(x.size())));
        wp = b.w_plus > 0.0 ? b.w_plus : 1.0;
        wm = b.w_minus > 0.0 ? b.w_minus : 1.0;
        source = "derived over {0,1}^" + std::to_string(x.size());
    }
    const auto w = witness_sizes_via_resistance(cg, x);
    const bool undersized = w.size() > (w.positive ? wp : wm) * (1 + 1e-9);
    const auto sp = compose(cg, opt.max_dim);
    const auto r = run_algorithm1(sp, wp, wm, x, max_k);
    json body = io::simulation_to_json(r);
    body["bounds_source"] = source;
    body["verdict"] = r.p_one > 0.5 ? "positive" : "negative";
    body["undersized_bounds"] = undersized;
    if (undersized) body["warning"] = "witness size of the input exceeds the supplied bound";
    const bool ok = undersized || r.success >= 2.0 / 3.0;
    body["ok"] = ok;
    emit(opt, "simulate", body);
    return ok ? kExitPass : kExitViolation;
}

/// Agreement of a converted program with its source model over {0,1}^n.
struct Agreement {
    int checked = 0;
    int agree = 0;
    double w_plus = 0.0, w_minus = 0.0;
    std::vector<std::string> bound_violations;
};

Agreement check_program(const ProgramRef& p, const std::vector<Input>& dom, const std::function<bool(const Input&)>& f,
                        const std::function<double(const Input&)>& bound = {}) {
    Agreement a;
    for (const auto& x : dom) {
        const auto w = evaluate(p, x);
        ++a.checked;
        a.agree += w.positive == f(x);
        (w.positive ? a.w_plus : a.w_minus) = std::max(w.positive ? a.w_plus : a.w_minus, w.size());
        if (bound && w.size() > bound(x) * (1 + 1e-6)) a.bound_violations.push_back(x);
    }
    return a;
}

json agreement_json(const Agreement& a) {
    return {{"checked", a.checked},
            {"agree", a.agree},
            {"W_plus", a.w_plus},
            {"W_minus", a.w_minus},
            {"C", std::sqrt(a.w_plus * a.w_minus)},
            {"bound_violations", a.bound_violations}};
}

int infer_n(const DecisionTree& t) {
    int n = 0;
    for (const auto& node : t.nodes)
        if (!node.is_leaf) n = std::max(n, node.query + 1);
    return n;
}

int cmd_convert(const Options& opt, const std::string& kind, const std::string& file, bool emit_graph) {
    const auto j = io::read_file(file);
    json body{{"kind", kind}};
    ProgramRef program;
    Agreement a;
    bool ok = true;
    auto domain_of = [](int n) {
        if (n > 12) throw InputError("exhaustive checks are limited to 12 bits");
        return io::all_bit_strings(n);
    };
    if (kind == "tree") {
        const auto t = io::decision_tree_from_json(j.contains("tree") ? j.at("tree") : j);
        const int n = j.value("n", infer_n(t));
        const auto dom = domain_of(n);
        program = graph_program(tree_to_st(t));
        a = check_program(program, dom, [&](const Input& x) { return t.run(x) == '1'; },
                          [&](const Input& x) { return wdt_on(t, x); });
        const auto wv = wdt_value(t, dom);
        body["wdt"] = {{"plus", wv.plus}, {"minus", wv.minus}, {"value", wv.value}, {"optimal", optimal_wdt(t)}};
        const auto gt = guessing_complexity(t);
        body["guessing"] = {{"G", gt.g}, {"T", gt.t}, {"sqrt_GT", gt.value}};
        ok = std::sqrt(a.w_plus * a.w_minus) <= wv.value * (1 + 1e-6);
    } else if (kind == "family" || kind == "randomized") {
        const auto fam = io::tree_family_from_json(j);
        int n = j.value("n", 0);
        for (const auto& t : fam.trees) n = std::max(n, infer_n(t));
        const auto dom = domain_of(n);
        if (kind == "family") {
            const auto conv = zero_error_family_to_st(fam, dom);
            program = graph_program(conv.graph);
            a = check_program(program, dom, [&](const Input& x) { return zero_error_value(fam, x); });
            double wdt = 0.0;
            for (const auto& t : fam.trees) wdt = std::max(wdt, wdt_value(t, dom).value);
            body["wdt_family"] = wdt;
            body["bound"] = std::sqrt(2.0) * wdt;
            ok = std::sqrt(a.w_plus * a.w_minus) <= std::sqrt(2.0) * wdt * (1 + 1e-6);
        } else {
            const auto rc = randomized_to_st(fam, dom);
            program = rc.program;
            a = check_program(program, dom, [&](const Input& x) {
                double p1 = 0.0;
                for (std::size_t i = 0; i < fam.trees.size(); ++i)
                    if (fam.trees[i].run(x) == '1') p1 += fam.probs[i];
                return p1 >= 2.0 / 3.0 - 1e-12;
            });
            body["copies"] = rc.copies;
            body["threshold"] = rc.threshold;
        }
    } else if (kind == "learning-graph") {
        const auto lg = io::learning_graph_from_json(j);
        auto f = [&](const Input& x) { return lg.f(x); };
        program = graph_program(learning_graph_to_st(lg.graph, lg.domain, f));
        a = check_program(program, lg.domain, f, [&](const Input& x) {
            return f(x) ? lg_plus(lg.graph, x) : lg_minus(lg.graph, x);
        });
    } else if (kind == "formula") {
        const auto F = io::formula_from_json(j.at("formula"), j.value("library", json::object()));
        const auto dom = domain_of(io::field<int>(j, "n"));
        const auto fc = formula_to_composition(F, dom);
        program = fc.program;
        a = check_program(program, dom, [&](const Input& x) { return eval_formula(F, x); });
        body["c_squared"] = fc.c_squared;
        body["leaf_c_squared_sum"] = fc.leaf_c_squared_sum;
        body["depth"] = fc.depth;
        ok = fc.c_squared <= fc.leaf_c_squared_sum * (1 + 1e-6);
    } else {
        throw InputError("unknown conversion '" + kind + "'");
    }
    ok = ok && a.agree == a.checked && a.bound_violations.empty();
    body["agreement"] = agreement_json(a);
    body["flat_edges"] = flat_edge_count(program);
    if (emit_graph) body["composition"] = io::composition_to_json(as_composition(program));
    body["ok"] = ok;
    emit(opt, "convert", body);
    return ok ? kExitPass : kExitViolation;
}

struct CatalogArgs {
    std::string problem;
    int n = 0, k = 0, m = 0, depth = 3;
    std::string pattern;
    std::string inputs;
    int samples = 200;
    bool emit_graph = false;
};

int cmd_catalog(const Options& opt, const CatalogArgs& c) {
    verify::Rng rng(opt.seed);
    ProgramRef program;
    std::function<bool(const Input&)> oracle;
    std::string alphabet = "01";
    std::function<Input()> sampler;
    json construction{{"problem", c.problem}, {"n", c.n}};
    const int n = c.n;
    if (n < 1) throw InputError("--n must be positive");
    if (c.problem == "threshold") {
        program = threshold_program(n, c.k);
        oracle = [&](const Input& x) { return verify::detail::weight(x) >= c.k; };
        construction["k"] = c.k;
    } else if (c.problem == "exact-weight") {
        program = exact_weight_program(n, c.k);
        oracle = [&](const Input& x) { return verify::detail::weight(x) == c.k; };
        construction["k"] = c.k;
    } else if (c.problem == "gapped-majority") {
        program = gapped_majority_program(n);
        oracle = [&](const Input& x) { return 3 * verify::detail::weight(x) > 2 * n; };
        sampler = [&]() {
            for (;;) {
                auto x = verify::detail::random_bits(n, rng);
                if (gapped_majority_promise(n, verify::detail::weight(x))) return x;
            }
        };
    } else if (c.problem == "pattern") {
        if (c.pattern.empty()) throw InputError("--pattern is required");
        PatternInfo info;
        program = graph_program(pattern_matching(n, c.pattern, &info));
        oracle = [&](const Input& x) { return pattern_oracle(x, c.pattern); };
        std::set<char> al(c.pattern.begin(), c.pattern.end());
        alphabet.assign(al.begin(), al.end());
        if (alphabet.size() < 2) alphabet += alphabet[0] == 'a' ? 'b' : 'a';
        construction["pattern"] = c.pattern;
        construction["period"] = info.period;
        construction["periodic"] = info.periodic;
        construction["sample"] = info.sample.J;
    } else if (c.problem == "or-psearch") {
        const int m = c.m > 0 ? c.m : 1;
        program = graph_program(or_psearch(n, m));
        oracle = [=](const Input& x) { return psearch_oracle(x, n, m); };
        sampler = [&, m]() {
            const int T = m + static_cast<int>(rng() % (n * m - m + 1));
            return psearch_instance(n, m, T, rng() & 1, rng);
        };
        construction["m"] = m;
    } else if (c.problem == "sigma202") {
        program = graph_program(sigma202(n));
        oracle = sigma202_oracle;
        alphabet = "012";
    } else if (c.problem == "dyck") {
        program = graph_program(dyck(n, c.depth));
        oracle = [&](const Input& x) { return dyck_oracle(x, c.depth); };
        alphabet = "()";
        construction["depth"] = c.depth;
    } else if (c.problem == "inc-subseq-3") {
        program = graph_program(inc_subseq_3(n));
        oracle = inc_subseq_3_oracle;
        alphabet = "0123";
    } else {
        throw InputError("unknown catalog problem '" + c.problem + "'");
    }
    construction["flat_edges"] = flat_edge_count(program);

    std::vector<Input> check;
    bool exhaustive = false;
    if (!sampler && std::pow(static_cast<double>(alphabet.size()), n) <= 16384.0) {
        check = verify::detail::words(n, alphabet);
        exhaustive = true;
    } else {
        if (!sampler)
            sampler = [&]() {
                Input x(n, alphabet[0]);
                for (auto& ch : x) ch = alphabet[rng() % alphabet.size()];
                return x;
            };
        for (int i = 0; i < c.samples; ++i) check.push_back(sampler());
    }
    AcceptCache cache;
    int agree = 0;
    std::vector<std::string> mismatches;
    for (const auto& x : check) {
        const bool ok = accepts(program, x) == oracle(x);
        agree += ok;
        if (!ok && mismatches.size() < 10) mismatches.push_back(x);
    }

    json table = json::array();
    for (const auto& x : split_inputs(c.inputs)) {
        if (x.size() != static_cast<std::size_t>(n)) throw InputError("input '" + x + "' has the wrong length");
        const auto w = evaluate(program, x);
        table.push_back({{"input", x},
                         {"positive", w.positive},
                         {"oracle", oracle(x)},
                         {"w_plus", io::number_json(w.w_plus)},
                         {"w_minus", io::number_json(w.w_minus)}});
    }

    json body{{"construction", construction},
              {"witness_table", table},
              {"agreement",
               {{"checked", static_cast<int>(check.size())},
                {"agree", agree},
                {"exhaustive", exhaustive},
                {"alphabet", alphabet},
                {"mismatches", mismatches}}}};
    if (c.emit_graph) body["composition"] = io::composition_to_json(as_composition(program));
    const bool ok = agree == static_cast<int>(check.size());
    body["ok"] = ok;
    emit(opt, "catalog", body);
    return ok ? kExitPass : kExitViolation;
}

int cmd_verify(const Options& opt, const std::string& suite, const std::string& fixtures) {
    verify::Config cfg;
    cfg.tolerance = opt.tolerance;
    cfg.seed = opt.seed;
    cfg.max_dim = opt.max_dim;
    cfg.fixtures = fixtures;
    const auto checks = verify::run_suite(suite, cfg);
    json list = json::array(), failures = json::array();
    for (const auto& c : checks) {
        list.push_back(verify::check_to_json(c));
        if (!c.ok()) failures.push_back(c.name);
    }
    emit(opt, "verify", {{"suite", suite}, {"checks", list}, {"failures", failures}, {"ok", failures.empty()}});
    return failures.empty() ? kExitPass : kExitViolation;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Graph composition toolkit: witness sizes, decompositions, simulation, converters"};
    app.require_subcommand(1);
    Options opt;
    app.add_option("--tolerance", opt.tolerance, "Numerical tolerance")->check(CLI::Range(1e-300, 1e-3));
    app.add_option("--seed", opt.seed, "Seed for randomized suites and sampling");
    app.add_option("--max-dim", opt.max_dim, "Largest span program dimension to materialize")->check(CLI::Range(2, 1 << 20));
    app.add_option("--output", opt.output, "Report format")->check(CLI::IsMember({"json", "table"}));

    std::string file, input, s, t, tree_file, bounds, inputs, kind, suite = "all", fixtures;
    bool flatten = false, show_tree = false, emit_graph = false;
    long long max_k = kDefaultMaxK;
    CatalogArgs cat;
    std::function<int()> action;

    auto* res = app.add_subcommand("resistance", "Effective resistance, min-energy flow, circulation dimension");
    res->add_option("file", file, "Network JSON")->required();
    res->add_option("--s", s, "Source vertex");
    res->add_option("--t", t, "Sink vertex");
    res->callback([&] { action = [&] { return cmd_resistance(opt, file, s, t); }; });

    auto* wit = app.add_subcommand("witness", "Witness sizes by resistance and by direct solve");
    wit->add_option("file", file, "Composition JSON")->required();
    wit->add_option("input", input, "Input string")->required();
    wit->callback([&] { action = [&] { return cmd_witness(opt, file, input); }; });

    auto* cmp = app.add_subcommand("compose", "Compose a graph into one span program");
    cmp->add_option("file", file, "Composition JSON")->required();
    cmp->add_flag("--flatten", flatten, "Emit the flattened composition");
    cmp->add_option("--inputs", inputs, "Comma-separated inputs to tabulate H(x) for");
    cmp->callback([&] { action = [&] { return cmd_compose(opt, file, flatten, inputs); }; });

    auto* dec = app.add_subcommand("decompose", "Tree-parallel decomposition and reflection check");
    dec->add_option("file", file, "Network JSON")->required();
    dec->add_option("--tree", tree_file, "Decomposition tree JSON (default: automatic)");
    dec->add_flag("--show-tree", show_tree, "Include the decomposition tree");
    dec->callback([&] { action = [&] { return cmd_decompose(opt, file, tree_file, show_tree); }; });

    auto* sim = app.add_subcommand("simulate", "State-vector run of the span program algorithm");
    sim->add_option("file", file, "Composition JSON")->required();
    sim->add_option("input", input, "Input string")->required();
    sim->add_option("--bounds", bounds, "W+,W- (default: measured over all binary inputs of that length)");
    sim->add_option("--max-K", max_k, "Largest iteration count to simulate")->check(CLI::PositiveNumber);
    sim->callback([&] { action = [&] { return cmd_simulate(opt, file, input, bounds, max_k); }; });

    auto* cnv = app.add_subcommand("convert", "Convert a decision tree, family, learning graph or formula");
    cnv->add_option("kind", kind, "tree | family | randomized | learning-graph | formula")
        ->required()
        ->check(CLI::IsMember({"tree", "family", "randomized", "learning-graph", "formula"}));
    cnv->add_option("file", file, "Source JSON")->required();
    cnv->add_flag("--emit", emit_graph, "Include the composition JSON");
    cnv->callback([&] { action = [&] { return cmd_convert(opt, kind, file, emit_graph); }; });

    auto* ctl = app.add_subcommand("catalog", "Build a catalog construction and check it against its oracle");
    ctl->add_option("problem", cat.problem,
                    "threshold | exact-weight | gapped-majority | pattern | or-psearch | sigma202 | dyck | inc-subseq-3")
        ->required();
    ctl->add_option("--n", cat.n, "Input length (block length for or-psearch)")->required();
    ctl->add_option("--k", cat.k, "Threshold or weight");
    ctl->add_option("--m", cat.m, "Number of blocks for or-psearch");
    ctl->add_option("--depth", cat.depth, "Dyck depth");
    ctl->add_option("--pattern", cat.pattern, "Pattern for pattern matching");
    ctl->add_option("--inputs", cat.inputs, "Comma-separated inputs for the witness table");
    ctl->add_option("--samples", cat.samples, "Random samples when exhaustive checking is too large");
    ctl->add_flag("--emit", cat.emit_graph, "Include the composition JSON");
    ctl->callback([&] { action = [&] { return cmd_catalog(opt, cat); }; });

    auto* ver = app.add_subcommand("verify", "Run a property suite");
    ver->add_option("suite", suite, "netlab | witnesses | decomp | simulate | converters | catalog | all")
        ->check(CLI::IsMember({"netlab", "witnesses", "decomp", "simulate", "converters", "catalog", "all"}));
    ver->add_option("--fixtures", fixtures, "Directory of fixture files");
    ver->callback([&] { action = [&] { return cmd_verify(opt, suite, fixtures); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInput;
    }
    try {
        return action();
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const io::json::exception& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
}
