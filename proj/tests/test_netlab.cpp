#include "gcomp/netlab.hpp"

#include <catch_amalgamated.hpp>

using namespace gcomp;
using Catch::Matchers::WithinAbs;

namespace {

ResistorNetwork bridge(double ab) {
    ResistorNetwork net;
    net.add_edge("sa", "s", "a", resistance_from(1));
    net.add_edge("sb", "s", "b", resistance_from(2));
    net.add_edge("at", "a", "t", resistance_from(2));
    net.add_edge("bt", "b", "t", resistance_from(1));
    net.add_edge("ab", "a", "b", resistance_from(ab));
    net.set_terminals("s", "t");
    return net;
}

}  // namespace

TEST_CASE("series and parallel resistances") {
    ResistorNetwork net;
    net.add_edge("e1", "s", "a", resistance_from(1));
    net.add_edge("e2", "a", "t", resistance_from(3));
    net.add_edge("e3", "s", "t", resistance_from(4));
    net.set_terminals("s", "t");
    CHECK_THAT(effective_resistance(net).as_double(), WithinAbs(2.0, 1e-12));
}

TEST_CASE("unbalanced bridge agrees across routes") {
    // node potentials 4/7 and 3/7 at unit voltage give R = 7/5
    const auto net = bridge(1.0);
    const double a = effective_resistance(net, {}, {}, ResistanceRoute::Grounded).as_double();
    const double b = effective_resistance(net, {}, {}, ResistanceRoute::MinNormFlow).as_double();
    const double c = effective_resistance(net, {}, {}, ResistanceRoute::LaplacianPinv).as_double();
    CHECK_THAT(a, WithinAbs(1.4, 1e-12));
    CHECK_THAT(b, WithinAbs(a, 1e-10));
    CHECK_THAT(c, WithinAbs(a, 1e-10));
    CHECK_THAT(inverse_resistance_via_potentials(net), WithinAbs(1.0 / a, 1e-10));
}

TEST_CASE("min-energy flow energy equals resistance") {
    const auto net = bridge(0.5);
    const auto f = min_energy_unit_flow(net);
    CHECK(f.connected);
    CHECK_THAT(f.energy, WithinAbs(effective_resistance(net).as_double(), 1e-10));
}

TEST_CASE("zero resistance short circuits and disconnection is infinite") {
    ResistorNetwork net;
    net.add_edge("e1", "s", "a", resistance_from(0));
    net.add_edge("e2", "a", "t", resistance_from(0));
    net.set_terminals("s", "t");
    CHECK(effective_resistance(net).as_double() == 0.0);

    ResistorNetwork cut;
    cut.add_edge("e1", "s", "a", resistance_from(1));
    cut.add_vertex("t");
    cut.set_terminals("s", "t");
    CHECK(std::isinf(effective_resistance(cut).as_double()));
}

TEST_CASE("circulation space dimension is m - n + components") {
    const auto net = bridge(1.0);
    CHECK(circulation_basis(net).cols() == 5 - 4 + 1);
    Mat B = incidence_matrix(net);
    for (int e = 0; e < net.num_edges(); ++e) B.col(e) /= std::sqrt(net.edge_at(e).r.value);
    CHECK((B * circulation_basis(net)).norm() < 1e-10);
}

TEST_CASE("duplicate edge ids and equal terminals are rejected") {
    ResistorNetwork net;
    net.add_edge("e", "s", "t");
    CHECK_THROWS_AS(net.add_edge("e", "s", "t"), InputError);
    CHECK_THROWS_AS(net.set_terminals("s", "s"), InputError);
}
