#include "gcomp/catalog.hpp"

#include <catch_amalgamated.hpp>

using namespace gcomp;
using Catch::Matchers::WithinRel;

namespace {

std::vector<Input> words(int n, const std::string& alphabet) {
    std::vector<Input> out{""};
    for (int i = 0; i < n; ++i) {
        std::vector<Input> next;
        for (const auto& w : out)
            for (char c : alphabet) next.push_back(w + c);
        out = std::move(next);
    }
    return out;
}

int weight(const Input& x) { return static_cast<int>(std::count(x.begin(), x.end(), '1')); }

template <class G, class F>
void check_agreement(const G& g, const std::vector<Input>& dom, F oracle) {
    for (const auto& x : dom) {
        INFO(x);
        CHECK(accepts(g, x) == oracle(x));
    }
}

}  // namespace

TEST_CASE("threshold witnesses follow the closed forms") {
    const int n = 5, k = 2;
    const auto P = threshold_program(n, k);
    for (const auto& x : words(n, "01")) {
        const auto got = evaluate(P, x);
        const auto want = threshold_closed_form(n, k, weight(x));
        REQUIRE(got.positive == want.positive);
        CHECK_THAT(got.size(), WithinRel(want.size(), 1e-9));
    }
}

TEST_CASE("exact weight agrees with its oracle") {
    const auto P = exact_weight_program(5, 2);
    for (const auto& x : words(5, "01")) CHECK(evaluate(P, x).positive == (weight(x) == 2));
}

TEST_CASE("pattern matching") {
    CHECK(minimal_period("abab") == 2);
    CHECK(is_aperiodic("aab"));
    for (const std::string y : {"aab", "aba", "abbab"}) {
        CHECK(deterministic_sample_holds(y, deterministic_sample(y)));
        check_agreement(pattern_matching(7, y), words(7, "ab"), [&](const Input& x) { return pattern_oracle(x, y); });
    }
    for (const std::string y : {"aaa", "abab", "aaaa"}) {
        CHECK_FALSE(is_aperiodic(y));
        check_agreement(pattern_matching(7, y), words(7, "ab"), [&](const Input& x) { return pattern_oracle(x, y); });
    }
}

TEST_CASE("string languages agree with their oracles") {
    check_agreement(sigma202(5), words(5, "012"), sigma202_oracle);
    check_agreement(dyck(8, 3), words(8, "()"), [](const Input& x) { return dyck_oracle(x, 3); });
    check_agreement(inc_subseq_3(5), words(5, "0123"), inc_subseq_3_oracle);
    std::vector<Input> promise;
    for (const auto& x : words(6, "01*"))
        if (!psearch_positions(x, 3, 2).empty()) promise.push_back(x);
    CHECK(promise.size() == 36);
    check_agreement(or_psearch(3, 2), promise, [](const Input& x) { return psearch_oracle(x, 3, 2); });
}

TEST_CASE("gapped majority promise") {
    CHECK(gapped_majority_promise(6, 1));
    CHECK_FALSE(gapped_majority_promise(6, 3));
    CHECK(gapped_majority_promise(6, 5));
    CHECK_THROWS_AS(gapped_majority_bounds(5), InputError);
}

TEST_CASE("scaling fit prefers the logarithm on logarithmic data") {
    std::vector<double> ns{8, 16, 32, 64}, ws;
    for (double n : ns) ws.push_back(1.0 + 2.0 * std::log(n));
    const auto f = fit_scaling(ns, ws);
    CHECK(f.log_preferred());
    CHECK_THAT(f.b, WithinRel(2.0, 1e-9));
}
