#include "gcomp/graphcomp.hpp"

#include <catch_amalgamated.hpp>

using namespace gcomp;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

std::vector<Input> bits(int n) {
    std::vector<Input> out;
    for (int m = 0; m < (1 << n); ++m) {
        Input x(n, '0');
        for (int i = 0; i < n; ++i)
            if (m >> i & 1) x[i] = '1';
        out.push_back(x);
    }
    return out;
}

CompositionGraph bridge_of_bits() {
    ResistorNetwork net;
    net.add_edge("sa", "s", "a");
    net.add_edge("sb", "s", "b");
    net.add_edge("at", "a", "t");
    net.add_edge("bt", "b", "t");
    net.add_edge("ab", "a", "b");
    net.set_terminals("s", "t");
    std::vector<ProgramRef> ps;
    for (int i = 0; i < 5; ++i) ps.push_back(leaf(Predicate::bit(i)));
    return CompositionGraph(std::move(net), std::move(ps));
}

}  // namespace

TEST_CASE("AND and OR of bits") {
    const auto a = graph_program(and_compose({leaf(Predicate::bit(0)), leaf(Predicate::bit(1))}));
    const auto o = graph_program(or_compose({leaf(Predicate::bit(0)), leaf(Predicate::bit(1))}));
    CHECK(evaluate(a, "11").positive);
    CHECK_THAT(evaluate(a, "11").size(), WithinAbs(2.0, 1e-12));
    CHECK_THAT(evaluate(a, "00").size(), WithinAbs(0.5, 1e-12));
    CHECK_FALSE(evaluate(o, "00").positive);
    CHECK_THAT(evaluate(o, "00").size(), WithinAbs(2.0, 1e-12));
    CHECK_THAT(evaluate(o, "11").size(), WithinAbs(0.5, 1e-12));
}

TEST_CASE("resistance witnesses match the composed span program") {
    const auto g = bridge_of_bits();
    const auto sp = compose(g);
    for (const auto& x : bits(5)) {
        const auto a = witness_sizes_via_resistance(g, x);
        const auto b = witness(sp, x);
        REQUIRE(a.positive == b.positive);
        CHECK_THAT(a.size(), WithinRel(b.size, 1e-8));
    }
}

TEST_CASE("flattening keeps witness sizes") {
    const auto inner = graph_program(or_compose({leaf(Predicate::bit(0)), scaled(2.0, leaf(Predicate::bit(1)))}));
    const auto outer = graph_program(and_compose({inner, negated(leaf(Predicate::bit(2)))}));
    const auto flat = flatten_program(outer);
    CHECK(flat_edge_count(outer) == flat.num_edges());
    for (const auto& x : bits(3)) {
        const auto a = evaluate(outer, x);
        const auto b = witness_sizes_via_resistance(flat, x);
        REQUIRE(a.positive == b.positive);
        CHECK_THAT(a.size(), WithinRel(b.size(), 1e-9));
    }
}

TEST_CASE("series-parallel dual computes the negation with equal sizes") {
    const auto n = SPNode::series({SPNode::edge(leaf(Predicate::bit(0))),
                                   SPNode::parallel({SPNode::edge(leaf(Predicate::bit(1))),
                                                     SPNode::edge(scaled(3.0, leaf(Predicate::bit(2))))})});
    const auto p = nest_sp(n), d = nest_sp(sp_dual(n));
    for (const auto& x : bits(3)) {
        const auto a = evaluate(p, x), b = evaluate(d, x);
        REQUIRE(a.positive != b.positive);
        CHECK_THAT(a.size(), WithinRel(b.size(), 1e-9));
    }
}

TEST_CASE("dimension cap is enforced") {
    CHECK_THROWS_AS(compose(bridge_of_bits(), 3), InputError);
}
