#include "gcomp/verify.hpp"

#include <catch_amalgamated.hpp>

using namespace gcomp;
using io::json;
using Catch::Matchers::WithinRel;

namespace {

std::string fixture(const std::string& name) { return std::string(GCOMP_FIXTURES) + "/" + name; }

}  // namespace

TEST_CASE("network fixtures load with their expected resistance") {
    for (const auto* name : {"wheatstone.json", "parallel2.json", "series_parallel.json"}) {
        const auto j = io::read_file(fixture(name));
        const auto net = io::network_from_json(j);
        CHECK_THAT(effective_resistance(net).as_double(), WithinRel(j["expect"]["resistance"].get<double>(), 1e-12));
    }
    const auto cut = io::network_from_json(io::read_file(fixture("disconnected.json")));
    CHECK(std::isinf(effective_resistance(cut).as_double()));
}

TEST_CASE("network round trip") {
    const auto net = io::network_from_json(io::read_file(fixture("wheatstone.json")));
    const auto back = io::network_from_json(io::network_to_json(net));
    CHECK(io::network_to_json(back) == io::network_to_json(net));
    CHECK(effective_resistance(back).as_double() == effective_resistance(net).as_double());
}

TEST_CASE("composition round trip keeps witness sizes") {
    const auto g = io::composition_from_json(io::read_file(fixture("bridge5.json")));
    const auto back = io::composition_from_json(io::composition_to_json(g));
    for (const Input x : {"11111", "00000", "10011", "11000", "01010"}) {
        const auto a = witness_sizes_via_resistance(g, x), b = witness_sizes_via_resistance(back, x);
        CHECK(a.positive == b.positive);
        CHECK_THAT(a.size(), WithinRel(b.size(), 1e-12));
    }
}

TEST_CASE("program shorthand and nested kinds") {
    const json lib{{"both", {{"kind", "graph"},
                             {"edges", {{{"id", "a"}, {"tail", "s"}, {"head", "m"}}, {{"id", "b"}, {"tail", "m"}, {"head", "t"}}}},
                             {"s", "s"},
                             {"t", "t"},
                             {"programs", {{"a", "x0"}, {"b", "!x1"}}}}}};
    const auto p = io::program_from_json("both", lib);
    CHECK(accepts(p, "10"));
    CHECK_FALSE(accepts(p, "11"));
    const auto q = io::program_from_json(io::program_to_json(p), json::object());
    CHECK(accepts(q, "10"));
    CHECK_THROWS_AS(io::program_from_json("y7", lib), InputError);
}

TEST_CASE("decision tree, family and formula round trips") {
    const auto j = io::read_file(fixture("and_tree.json"));
    const auto t = io::decision_tree_from_json(j["tree"]);
    const auto t2 = io::decision_tree_from_json(io::decision_tree_to_json(t));
    for (const Input x : {"00", "01", "10", "11"}) CHECK(t.run(x) == t2.run(x));

    const auto fam = io::tree_family_from_json(io::read_file(fixture("family_or2.json")));
    CHECK(io::tree_family_to_json(io::tree_family_from_json(io::tree_family_to_json(fam))) == io::tree_family_to_json(fam));

    const auto fj = io::read_file(fixture("formula_maj3.json"));
    const auto F = io::formula_from_json(fj["formula"]);
    const auto F2 = io::formula_from_json(io::formula_to_json(F));
    for (const auto& x : io::all_bit_strings(3)) CHECK(eval_formula(F, x) == eval_formula(F2, x));
}

TEST_CASE("learning graph round trip") {
    const auto spec = io::learning_graph_from_json(io::read_file(fixture("or2_learning_graph.json")));
    const auto back = io::learning_graph_from_json(io::learning_graph_to_json(spec));
    CHECK(io::learning_graph_to_json(back) == io::learning_graph_to_json(spec));
}

TEST_CASE("malformed input is an input error") {
    CHECK_THROWS_AS(io::network_from_json(json::parse(R"({"vertices": ["s"]})")), InputError);
    CHECK_THROWS_AS(io::network_from_json(json::parse(R"({"vertices": ["s"], "edges": [{"id": "e", "tail": "s", "head": "q"}]})")),
                    InputError);
    CHECK_THROWS_AS(io::read_file(fixture("missing.json")), InputError);
    CHECK_THROWS_AS(io::formula_from_json(json::parse(R"({"xor": ["x0"]})")), InputError);
}

TEST_CASE("fixture suite passes") {
    verify::Config cfg;
    cfg.fixtures = GCOMP_FIXTURES;
    for (const auto& c : verify::network_fixtures(cfg)) CHECK(c.ok());
    for (const auto& c : verify::composition_fixtures(cfg)) CHECK(c.ok());
    for (const auto& c : verify::converter_fixtures(cfg)) {
        INFO(c.name << ": " << c.detail);
        CHECK(c.ok());
    }
}
