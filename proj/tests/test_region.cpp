#include <catch2/catch_amalgamated.hpp>

#include <random>

#include <qubitline/region.hpp>

#include "support/oracles.hpp"

using namespace qubitline;

namespace {
const AffineChannel kBench = AffineChannel::diagonal({0.1, 0.4, 0.1}, {0.23, 0.32, 0.05});
}

TEST_CASE("ellipse reduction round trip") {
    std::mt19937_64 rng(61);
    int built = 0;
    for (int trial = 0; trial < 500; ++trial) {
        Vec3 radii{oracles::uniform(rng, 0.02, 0.9), oracles::uniform(rng, 0.02, 0.9),
                   oracles::uniform(rng, 0.02, 0.9)};
        Vec3 xi = oracles::uniform(rng, 0.05, 0.8) * oracles::random_unit(rng);
        if (std::abs(xi.z) < 1e-3) continue;
        double k = oracles::uniform(rng, -0.99, 0.99) * norm(xi);
        auto ep = ellipse_reduction(radii, xi, k);
        if (!ep) continue;
        ++built;

        auto p5 = farthest_on_ellipse(*ep);
        // the conic point satisfies the conic equation (residual relative to
        // the coefficient scale)
        double conic = ep->A * p5[0] * p5[0] + ep->C * p5[1] * p5[1] + ep->D * p5[0] +
                       ep->E * p5[1] + ep->F;
        double scale = std::max({std::abs(ep->A), std::abs(ep->C), std::abs(ep->D),
                                 std::abs(ep->E), std::abs(ep->F), 1.0});
        CHECK(std::abs(conic) < 1e-8 * scale);
        // and maps back to a unit axis on the constraint plane
        Vec3 axis = ep->axis_from_conic_point(p5[0], p5[1]);
        CHECK_THAT(norm(axis), Catch::Matchers::WithinAbs(1.0, 1e-8));
        CHECK_THAT(dot(axis, xi), Catch::Matchers::WithinAbs(k, 1e-8));
    }
    CHECK(built > 300);
}

TEST_CASE("ellipse path agrees with the direct solver") {
    std::mt19937_64 rng(67);
    for (int trial = 0; trial < 500; ++trial) {
        Vec3 radii{oracles::uniform(rng, 0.02, 0.9), oracles::uniform(rng, 0.02, 0.9),
                   oracles::uniform(rng, 0.02, 0.9)};
        Vec3 xi = oracles::uniform(rng, 0.05, 0.8) * oracles::random_unit(rng);
        double k = oracles::uniform(rng, -0.98, 0.98) * norm(xi);

        auto via_ellipse = detail::edge_axis_ellipse(radii, xi, k);
        if (!via_ellipse) continue;
        Vec3 direct = detail::edge_axis_direct(radii, xi, k);

        Vec3 se{radii.x * via_ellipse->x, radii.y * via_ellipse->y, radii.z * via_ellipse->z};
        Vec3 sd{radii.x * direct.x, radii.y * direct.y, radii.z * direct.z};
        CHECK_THAT(norm(se), Catch::Matchers::WithinAbs(norm(sd), 1e-6));
    }
}

TEST_CASE("edge problem matches grid oracle and constraints") {
    std::mt19937_64 rng(71);
    for (int trial = 0; trial < 50; ++trial) {
        AffineChannel ch = oracles::random_cptp_channel(rng);
        DiagonalFrame f = diagonalize(ch);
        double l = f.shift_norm();
        if (l < 1e-6) continue;
        double k = oracles::uniform(rng, -0.95, 0.95) * l;
        RegionSample s = edge_problem(f, k);

        CHECK_THAT(norm(s.axis), Catch::Matchers::WithinAbs(1.0, 1e-9));
        CHECK_THAT(dot(s.axis, ch.b), Catch::Matchers::WithinAbs(k, 1e-9));
        double grid = oracles::edge_objective_grid(f.s, f.xi, k, 100000);
        CHECK(s.objective >= grid - 1e-5);
        CHECK_THAT(s.point.p11, Catch::Matchers::WithinAbs(0.5 * (1 + s.objective + k), 1e-12));
        CHECK_THAT(s.point.p00, Catch::Matchers::WithinAbs(0.5 * (1 + s.objective - k), 1e-12));
    }
}

TEST_CASE("edge problem endpoint and centered cases") {
    DiagonalFrame f = diagonalize(kBench);
    double l = f.shift_norm();
    RegionSample top = edge_problem(f, l);
    CHECK_THAT(dot(top.axis, kBench.b), Catch::Matchers::WithinAbs(l, 1e-10));
    CHECK_THAT(top.objective,
               Catch::Matchers::WithinAbs(norm(kBench.t.transposed() * top.axis), 1e-10));

    // unital channel: only k = 0 is feasible and the top singular value wins
    DiagonalFrame u = diagonalize(AffineChannel::diagonal({0.7, 0.4, 0.2}, {}));
    RegionSample c = edge_problem(u, 0.0);
    CHECK_THAT(c.objective, Catch::Matchers::WithinAbs(0.7, 1e-10));
}

TEST_CASE("benchmark region symmetries and containment") {
    Region region = generate_region(kBench, 256);

    // mirror symmetry across the bisecting line, verified by independently
    // re-solving the edge problem at -k: probabilities swap, axis flips
    std::size_t n = region.samples.size();
    for (std::size_t i = 0; i < n; i += 7) {
        const RegionSample& a = region.samples[i];
        RegionSample m = edge_problem(region.frame, -a.k);
        CHECK_THAT(a.point.p11, Catch::Matchers::WithinAbs(m.point.p00, 1e-6));
        CHECK_THAT(a.point.p00, Catch::Matchers::WithinAbs(m.point.p11, 1e-6));
        CHECK_THAT(a.objective, Catch::Matchers::WithinAbs(m.objective, 1e-6));
        // at k = 0 the axis sign is ambiguous, so the flip check skips it
        if (std::abs(a.k) > 1e-9) CHECK(norm(a.axis + m.axis) < 1e-5);
    }
    // ordering of the stored samples: ascending k, mirrored halves paired
    for (std::size_t i = 0; i + 1 < n; ++i) CHECK(region.samples[i].k <= region.samples[i + 1].k);
    for (std::size_t i = 0; i < n; ++i)
        CHECK_THAT(region.samples[i].k, Catch::Matchers::WithinAbs(-region.samples[n - 1 - i].k, 1e-12));

    CHECK(region_contains(region, {1.0, 0.0}));
    CHECK(region_contains(region, {0.0, 1.0}));
    CHECK(region_contains(region, {0.5, 0.5}));
    CHECK_FALSE(region_contains(region, {1.0, 1.0}));

    // every sample lies above the anti-bisecting line and inside the region
    for (const auto& s : region.samples) {
        CHECK(s.point.p11 + s.point.p00 >= 1.0 - 1e-12);
        CHECK(region_contains(region, s.point));
    }

    // border runs from (0,1) to (1,0)
    REQUIRE(region.border.size() >= 2);
    CHECK(region.border.front().p11 == 0.0);
    CHECK(region.border.front().p00 == 1.0);
    CHECK(region.border.back().p11 == 1.0);
    CHECK(region.border.back().p00 == 0.0);
}

TEST_CASE("identity and null channel regions") {
    Region full = generate_region(AffineChannel::identity(), 16);
    CHECK(region_contains(full, {1.0, 1.0}));
    CHECK_THAT(full.area_estimate, Catch::Matchers::WithinAbs(1.0, 1e-6));

    Region line = generate_region(AffineChannel{Mat3{}, {}}, 16);
    REQUIRE(line.samples.size() == 1);
    CHECK_THAT(line.samples[0].point.p11, Catch::Matchers::WithinAbs(0.5, 1e-12));
    CHECK_THAT(line.samples[0].point.p00, Catch::Matchers::WithinAbs(0.5, 1e-12));
    CHECK(line.area_estimate < 1e-9);
}

TEST_CASE("region area stabilizes under refinement") {
    Region coarse = generate_region(kBench, 128);
    Region fine = generate_region(kBench, 256);
    CHECK(std::abs(coarse.area_estimate - fine.area_estimate) < 1e-4);
    CHECK(fine.area_estimate > 0.0);
    CHECK(fine.area_estimate <= 1.0);
}
