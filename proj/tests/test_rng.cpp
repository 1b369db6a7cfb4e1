#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "lsa/rng.hpp"

using namespace lsa;

TEST_CASE("philox4x32-10 matches the Random123 known-answer vectors") {
    CHECK(philox4x32_10({0, 0, 0, 0}, {0, 0}) ==
          PhiloxCounter{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
    CHECK(philox4x32_10({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}) ==
          PhiloxCounter{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
    CHECK(philox4x32_10({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}) ==
          PhiloxCounter{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("streams are reproducible from seed and derivation path") {
    RngStream a = RngStream(7).child(3).child(1);
    RngStream b = RngStream(7).child(3).child(1);
    for (int i = 0; i < 1000; ++i) REQUIRE(a.next_u64() == b.next_u64());

    // Deriving a child does not advance the parent.
    RngStream parent(7);
    RngStream untouched(7);
    (void)parent.child(5);
    CHECK(parent.next_u64() == untouched.next_u64());
}

TEST_CASE("sibling streams differ and look uncorrelated") {
    RngStream root(11);
    RngStream x = root.child(0);
    RngStream y = root.child(1);
    CHECK(x.stream_id() != y.stream_id());
    const int n = 100000;
    double sx = 0, sy = 0, sxy = 0, sxx = 0, syy = 0;
    for (int i = 0; i < n; ++i) {
        const double u = x.uniform();
        const double v = y.uniform();
        sx += u;
        sy += v;
        sxy += u * v;
        sxx += u * u;
        syy += v * v;
    }
    const double cov = sxy / n - (sx / n) * (sy / n);
    const double corr = cov / std::sqrt((sxx / n - sx * sx / n / n) * (syy / n - sy * sy / n / n));
    // 4 sigma for a correlation estimate is 4 / sqrt(n).
    CHECK(std::fabs(corr) < 4.0 / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("uniform stays in the open unit interval with the right mean") {
    RngStream s(1);
    double sum = 0;
    const int n = 1'000'000;
    for (int i = 0; i < n; ++i) {
        const double u = s.uniform();
        REQUIRE(u > 0.0);
        REQUIRE(u < 1.0);
        sum += u;
    }
    // SE of the mean is sqrt(1/12 / n) ~ 2.9e-4.
    CHECK(std::fabs(sum / n - 0.5) < 1.5e-3);
}

TEST_CASE("normal draws have unit variance") {
    RngStream s(2);
    const int n = 500000;
    double sum = 0, sq = 0;
    for (int i = 0; i < n; ++i) {
        const double z = s.normal();
        sum += z;
        sq += z * z;
    }
    CHECK(std::fabs(sum / n) < 0.01);
    CHECK(std::fabs(sq / n - 1.0) < 0.01);
}

TEST_CASE("below() is unbiased over a small range") {
    RngStream s(3);
    std::vector<int> hist(7, 0);
    const int n = 700000;
    for (int i = 0; i < n; ++i) {
        const auto v = s.below(7);
        REQUIRE(v < 7);
        ++hist[v];
    }
    for (int h : hist) CHECK(std::abs(h - n / 7) < 1500);  // ~5 sigma
    CHECK(s.below(1) == 0);
}
