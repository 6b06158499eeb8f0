#include "gcomp/quantsim.hpp"

#include <catch_amalgamated.hpp>

using namespace gcomp;

namespace {

CompositionGraph or3() {
    return or_compose({leaf(Predicate::bit(0)), leaf(Predicate::bit(1)), leaf(Predicate::bit(2))});
}

}  // namespace

TEST_CASE("reflections square to the identity") {
    Mat Q(3, 1);
    Q << 1.0, 2.0, 2.0;
    const Mat R = reflection_through(la::orth(Q), 3);
    CHECK((R * R - Mat::Identity(3, 3)).norm() < 1e-12);
    CHECK(reflection_defect(R) < 1e-12);
}

TEST_CASE("algorithm 1 decides OR3 with probability at least 2/3") {
    const auto g = or3();
    for (const Input x : {"000", "100", "011", "111"}) {
        const auto r = run_algorithm1(g, 1.0, 3.0, x);
        CHECK(r.expected_positive == (x != "000"));
        CHECK(r.success >= 2.0 / 3.0);
        CHECK(r.norm_defect < 1e-9);
    }
}

TEST_CASE("iteration count grows with the bounds") {
    CHECK(algorithm1_iterations(1, 1) <= algorithm1_iterations(4, 4));
    CHECK(algorithm1_iterations(1, 1) >= 1);
}

TEST_CASE("transducer is orthogonal") {
    const auto sp = compose(or3());
    const auto inst = TwoSubspaceInstance::from_span_program(sp);
    for (const Input x : {"000", "010"}) {
        const Mat U = to_transducer(inst, x);
        CHECK((U.transpose() * U - Mat::Identity(U.rows(), U.cols())).norm() < 1e-9);
    }
}

TEST_CASE("adversary relations hold for an OR program") {
    const auto sp = compose(or3());
    std::vector<Input> dom{"000", "001", "010", "100", "111"};
    const auto rep = adversary_feasibility(sp, dom, [](const Input& x) { return x != "000"; });
    CHECK(rep.feasible());
    CHECK(rep.pairs > 0);
}
