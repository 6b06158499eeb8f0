#include "gcomp/spanprog.hpp"

#include <catch_amalgamated.hpp>

using namespace gcomp;
using Catch::Matchers::WithinAbs;

namespace {

/// OR of two bits: w0 = e0, H(x) = span e0 when some bit is 1.
SpanProgram or2() {
    Vec w0(1);
    w0 << 1.0;
    return SpanProgram(1, w0, Mat(1, 0), [](const Input& x) {
        int ones = 0;
        for (char c : x) ones += c == '1';
        return Mat(Mat::Ones(1, ones));
    });
}

}  // namespace

TEST_CASE("OR span program witnesses") {
    const auto p = or2();
    CHECK_FALSE(classify(p, "00"));
    CHECK(classify(p, "10"));
    CHECK_THAT(witness(p, "10").size, WithinAbs(1.0, 1e-12));
    CHECK_THAT(witness(p, "11").size, WithinAbs(1.0, 1e-12));
    const auto neg = witness(p, "00");
    CHECK_FALSE(neg.positive);
    CHECK_THAT(neg.size, WithinAbs(1.0, 1e-12));
}

TEST_CASE("scaling and negation laws") {
    const auto p = or2();
    const auto s = scalar_multiply(p, 3.0);
    CHECK_THAT(witness(s, "11").size, WithinAbs(3.0, 1e-10));
    CHECK_THAT(witness(s, "00").size, WithinAbs(1.0 / 3.0, 1e-10));
    const auto n = negate(p);
    for (const Input x : {"00", "01", "10", "11"}) {
        CHECK(classify(n, x) != classify(p, x));
        CHECK_THAT(witness(n, x).size, WithinAbs(witness(p, x).size, 1e-10));
    }
}

TEST_CASE("complexity report over a domain") {
    const auto r = complexity(or2(), {"00", "01", "10", "11"});
    CHECK_THAT(r.w_plus, WithinAbs(1.0, 1e-12));
    CHECK_THAT(r.w_minus, WithinAbs(1.0, 1e-12));
}

TEST_CASE("w0 must be orthogonal to K") {
    Vec w0(2);
    w0 << 1.0, 0.0;
    Mat K(2, 1);
    K << 1.0, 1.0;
    CHECK_THROWS_AS(SpanProgram(2, w0, K, [](const Input&) { return Mat(2, 0); }), InputError);
}
