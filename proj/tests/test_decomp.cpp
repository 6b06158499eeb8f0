#include "gcomp/decomp.hpp"

#include <catch_amalgamated.hpp>

using namespace gcomp;

namespace {

ResistorNetwork wheatstone() {
    ResistorNetwork net;
    net.add_edge("sa", "s", "a", resistance_from(1));
    net.add_edge("sb", "s", "b", resistance_from(2));
    net.add_edge("at", "a", "t", resistance_from(3));
    net.add_edge("bt", "b", "t", resistance_from(1));
    net.add_edge("ab", "a", "b", resistance_from(0.5));
    net.set_terminals("s", "t");
    return net;
}

ResistorNetwork cycle(int k) {
    ResistorNetwork net;
    for (int i = 0; i < k; ++i)
        net.add_edge("e" + std::to_string(i), "v" + std::to_string(i), "v" + std::to_string((i + 1) % k),
                     resistance_from(1.0 + i));
    return net;
}

double projector_gap(const ResistorNetwork& net, const DecompNode& d) {
    return la::op_norm(reflection_from_decomposition(net, d).projector - circulation_projector_direct(net));
}

}  // namespace

TEST_CASE("automatic decomposition reproduces the circulation projector") {
    for (const auto& net : {wheatstone(), cycle(5)}) {
        const auto d = auto_decompose(net);
        CHECK(validate_decomposition(net, d).empty());
        CHECK(projector_gap(net, d) < 1e-9);
    }
}

TEST_CASE("every edge appears in exactly one leaf") {
    const auto net = wheatstone();
    std::multiset<int> seen;
    std::function<void(const DecompNode&)> walk = [&](const DecompNode& n) {
        if (n.kind == DecompNode::Kind::Leaf) seen.insert(n.label.begin(), n.label.end());
        for (const auto& c : n.children) walk(c);
    };
    walk(auto_decompose(net));
    CHECK(seen == std::multiset<int>{0, 1, 2, 3, 4});
}

TEST_CASE("a leaf with a missing edge is reported") {
    const auto net = cycle(3);
    DecompNode root{DecompNode::Kind::Tree, {0, 1, 2}, std::nullopt, {DecompNode::leaf(0), DecompNode::leaf(1)}};
    CHECK_FALSE(validate_decomposition(net, root).empty());
}

TEST_CASE("cost grows with depth") {
    const auto d = auto_decompose(wheatstone());
    const auto c = decomposition_cost(d);
    CHECK(c.depth == d.depth());
    CHECK(c.K >= 1.0);
    CHECK(spectral_gap(wheatstone()) > 0.0);
}
