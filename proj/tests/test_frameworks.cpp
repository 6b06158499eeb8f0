#include "gcomp/frameworks.hpp"

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

DecisionTree and2_tree(double w0) {
    DecisionTree t;
    const int inner = t.add_query(1, t.add_leaf('0'), t.add_leaf('1'));
    t.set_root(t.add_query(0, t.add_leaf('0'), inner, w0, 1.0));
    t.validate();
    return t;
}

FormulaRef var(int i) { return Formula::leaf_of(leaf(Predicate::bit(i))); }

}  // namespace

TEST_CASE("weighted decision tree value by hand") {
    const auto t = and2_tree(2.0);
    const auto v = wdt_value(t, bits(2));
    CHECK_THAT(v.plus, WithinAbs(2.0, 1e-12));
    CHECK_THAT(v.minus, WithinAbs(1.5, 1e-12));
    CHECK_THAT(v.value, WithinAbs(std::sqrt(3.0), 1e-12));
    CHECK_THAT(wdt_combine(0, 0), WithinAbs(1.0, 1e-12));
}

TEST_CASE("tree program agrees with the tree and respects its weights") {
    for (double w0 : {0.5, 1.0, 3.0}) {
        const auto t = and2_tree(w0);
        const auto P = graph_program(tree_to_st(t));
        for (const auto& x : bits(2)) {
            const auto w = evaluate(P, x);
            CHECK(w.positive == (t.run(x) == '1'));
            CHECK(w.size() <= wdt_on(t, x) * (1 + 1e-9));
        }
    }
}

TEST_CASE("formula conversion for majority of three") {
    const auto F = Formula::or_of({Formula::and_of({var(0), var(1)}), Formula::and_of({var(0), var(2)}),
                                   Formula::and_of({var(1), var(2)})});
    const auto dom = bits(3);
    const auto fc = formula_to_composition(F, dom);
    for (const auto& x : dom) CHECK(accepts(fc.program, x) == eval_formula(F, x));
    CHECK_THAT(fc.leaf_c_squared_sum, WithinAbs(6.0, 1e-12));
    CHECK(fc.c_squared <= fc.leaf_c_squared_sum * (1 + 1e-9));
    CHECK(fc.depth == 2);
}

TEST_CASE("constant subformulas do not inflate the bound") {
    const auto F = Formula::or_of({Formula::and_of({var(0), Formula::not_of(var(0))}), var(1)});
    const auto fc = formula_to_composition(F, bits(2));
    for (const auto& x : bits(2)) CHECK(accepts(fc.program, x) == (x[1] == '1'));
    CHECK(fc.c_squared <= fc.leaf_c_squared_sum * (1 + 1e-9));
}

TEST_CASE("savitch formula decides reachability on two vertices") {
    for (int s = 0; s < 2; ++s)
        for (int t = 0; t < 2; ++t) {
            const auto F = savitch_formula(2, s, t);
            for (const auto& x : bits(4)) CHECK(eval_formula(F, x) == bfs_reachable(x, 2, s, t));
        }
    CHECK_THROWS_AS(savitch_formula(3, 0, 1), InputError);
}

TEST_CASE("rational weights follow the probabilities") {
    const auto w = rational_weights({0.25, 0.75});
    REQUIRE(w.size() == 2);
    CHECK(w[1] == 3 * w[0]);
}

TEST_CASE("zero-error family of two OR trees") {
    DecisionTree a, b;
    a.set_root(a.add_query(0, a.add_query(1, a.add_leaf('0'), a.add_leaf('1')), a.add_leaf('1')));
    b.set_root(b.add_query(1, b.add_query(0, b.add_leaf('0'), b.add_leaf('1')), b.add_leaf('1')));
    TreeFamily fam;
    fam.trees = {a, b};
    fam.probs = {0.5, 0.5};
    const auto dom = bits(2);
    const auto conv = zero_error_family_to_st(fam, dom);
    for (const auto& x : dom) CHECK(accepts(conv.graph, x) == (x != "00"));
}
