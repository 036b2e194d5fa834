#include <catch2/catch_amalgamated.hpp>

#include <random>

#include <qubitline/detection.hpp>
#include <qubitline/ordering.hpp>

#include "support/oracles.hpp"

using namespace qubitline;

TEST_CASE("product ordering") {
    CHECK(dominates({0.95, 0.65}, {0.9, 0.6}));
    CHECK(dominates({0.95, 0.65}, {0.95, 0.65}));
    CHECK_FALSE(dominates({0.95, 0.65}, {0.99, 0.1}));
}

TEST_CASE("stochastic degradedness witnesses") {
    auto c = TransitionMatrix::from_point({0.95, 0.65});
    auto cp = TransitionMatrix::from_point({0.9, 0.6});

    auto res = stochastically_degraded(cp, c);
    REQUIRE(res.degraded);
    REQUIRE(res.witness.has_value());
    CHECK(res.witness->valid(1e-9));
    // witness actually produces c' as a cascade
    TransitionMatrix cascade = *res.witness * c;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            CHECK_THAT(cascade.m[i][j], Catch::Matchers::WithinAbs(cp.m[i][j], 1e-9));

    // identity witness for equal channels
    auto self = stochastically_degraded(c, c);
    REQUIRE(self.degraded);
    CHECK_THAT(self.witness->m[0][0], Catch::Matchers::WithinAbs(1.0, 1e-12));
    CHECK_THAT(self.witness->m[1][1], Catch::Matchers::WithinAbs(1.0, 1e-12));

    // a better channel is not a degradation
    auto better = TransitionMatrix::from_point({0.99, 0.99});
    CHECK_FALSE(stochastically_degraded(better, c).degraded);
}

TEST_CASE("degradedness with singular base channel") {
    auto c = TransitionMatrix::from_point({0.3, 0.7});  // p11 + p00 = 1, rank 1
    auto constant = TransitionMatrix::from_point({0.4, 0.6});
    auto res = stochastically_degraded(constant, c);
    REQUIRE(res.degraded);
    TransitionMatrix cascade = *res.witness * c;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            CHECK_THAT(cascade.m[i][j], Catch::Matchers::WithinAbs(constant.m[i][j], 1e-9));

    auto informative = TransitionMatrix::from_point({0.9, 0.9});
    CHECK_FALSE(stochastically_degraded(informative, c).degraded);
}

TEST_CASE("capability ordering") {
    CHECK(less_capable({0.9, 0.6}, {0.95, 0.65}));
    // output relabeling: each is less capable than the other
    CHECK(less_capable({0.65, 0.95}, {0.95, 0.65}));
    CHECK(less_capable({0.95, 0.65}, {0.65, 0.95}));
    CHECK_FALSE(less_capable({0.99, 0.99}, {0.95, 0.65}));
}

TEST_CASE("implication chain on random pairs") {
    std::mt19937_64 rng(113);
    int dominated_pairs = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        TransitionPoint a{oracles::uniform(rng, 0, 1), oracles::uniform(rng, 0, 1)};
        TransitionPoint b{oracles::uniform(rng, 0, 1), oracles::uniform(rng, 0, 1)};
        if (a.p11 + a.p00 < 1.0 || b.p11 + b.p00 < 1.0) continue;
        if (!dominates(a, b)) continue;
        ++dominated_pairs;

        auto deg = stochastically_degraded(TransitionMatrix::from_point(b),
                                           TransitionMatrix::from_point(a));
        CHECK(deg.degraded);
        CHECK(less_capable(b, a));
        CHECK(optimal_prior(b).i <= optimal_prior(a).i + 1e-9);
        CHECK(pc_of_point(b, 0.5) <= pc_of_point(a, 0.5) + 1e-12);
    }
    CHECK(dominated_pairs > 30);
}

TEST_CASE("degraded implies less capable beyond domination") {
    std::mt19937_64 rng(127);
    int degraded_pairs = 0;
    for (int trial = 0; trial < 2000; ++trial) {
        TransitionPoint a{oracles::uniform(rng, 0, 1), oracles::uniform(rng, 0, 1)};
        TransitionPoint b{oracles::uniform(rng, 0, 1), oracles::uniform(rng, 0, 1)};
        if (a.p11 + a.p00 < 1.0 || b.p11 + b.p00 < 1.0) continue;
        auto deg = stochastically_degraded(TransitionMatrix::from_point(b),
                                           TransitionMatrix::from_point(a));
        if (!deg.degraded) continue;
        ++degraded_pairs;
        CHECK(less_capable(b, a));
        CHECK(optimal_prior(b).i <= optimal_prior(a).i + 1e-9);
        CHECK(pc_of_point(b, 0.5) <= pc_of_point(a, 0.5) + 1e-12);
    }
    CHECK(degraded_pairs > 100);
}

namespace {

// POVM with diagonal elements (q_a, q_b) in the eigenbasis of a unit axis n:
// E0 = q_a P+ + q_b P-, applied to output states w0, w1.
TransitionMatrix povm_channel(double qa, double qb, Vec3 n, Vec3 w0, Vec3 w1) {
    double l0 = 0.5 * (1.0 + dot(n, w0));
    double l1 = 0.5 * (1.0 + dot(n, w1));
    TransitionMatrix t;
    t.m[0][0] = qb + (qa - qb) * l0;
    t.m[0][1] = qb + (qa - qb) * l1;
    t.m[1][0] = 1.0 - t.m[0][0];
    t.m[1][1] = 1.0 - t.m[0][1];
    return t;
}

TransitionMatrix projective_channel(Vec3 n, Vec3 w0, Vec3 w1) {
    double l0 = 0.5 * (1.0 + dot(n, w0));
    double l1 = 0.5 * (1.0 + dot(n, w1));
    TransitionMatrix t;
    t.m[0][0] = l0;
    t.m[0][1] = l1;
    t.m[1][0] = 1.0 - l0;
    t.m[1][1] = 1.0 - l1;
    return t;
}

}  // namespace

TEST_CASE("projective measurements degrade any binary povm") {
    std::mt19937_64 rng(131);
    int checked = 0;
    while (checked < 100) {
        AffineChannel ch = oracles::random_cptp_channel(rng);
        Vec3 v0 = oracles::uniform(rng, 0, 1) * oracles::random_unit(rng);
        Vec3 v1 = oracles::uniform(rng, 0, 1) * oracles::random_unit(rng);
        Vec3 w0 = ch.apply(v0), w1 = ch.apply(v1);
        Vec3 n = oracles::random_unit(rng);
        if (std::abs(dot(n, w0 - w1)) < 1e-3) continue;  // keep the base well conditioned
        double qa = oracles::uniform(rng, 0.01, 0.99);
        double qb = oracles::uniform(rng, 0.01, 0.99);

        TransitionMatrix povm = povm_channel(qa, qb, n, w0, w1);
        TransitionMatrix proj = projective_channel(n, w0, w1);
        REQUIRE(povm.valid(1e-12));
        REQUIRE(proj.valid(1e-12));

        auto deg = stochastically_degraded(povm, proj, 1e-7);
        CHECK(deg.degraded);

        // best projective pc over the three candidate vertices beats the povm
        double p0 = oracles::uniform(rng, 0.05, 0.95);
        double pc_povm = p0 * povm.m[0][0] + (1.0 - p0) * povm.m[1][1];
        double best = std::max({p0 * proj.m[0][0] + (1.0 - p0) * proj.m[1][1],
                                p0, 1.0 - p0});
        // the mirrored projective channel (swapped outcome labels) is also available
        best = std::max(best, p0 * proj.m[1][0] + (1.0 - p0) * proj.m[0][1]);
        CHECK(best >= pc_povm - 1e-12);
        ++checked;
    }
}
