#include <catch2/catch_amalgamated.hpp>

#include <random>

#include <qubitline/channel.hpp>

#include "support/oracles.hpp"

using namespace qubitline;

TEST_CASE("choi check on reference channels") {
    // identity: Choi eigenvalues {2,0,0,0}
    CHECK(choi_cptp_check(AffineChannel::identity()).is_cp);
    CHECK_THAT(choi_cptp_check(AffineChannel::identity()).min_eigenvalue,
               Catch::Matchers::WithinAbs(0.0, 1e-12));

    // transpose-like map is positive but not completely positive
    ChoiReport transpose = choi_cptp_check(AffineChannel::diagonal({1, -1, 1}, {}));
    CHECK_FALSE(transpose.is_cp);
    CHECK(transpose.min_eigenvalue < -0.9);

    // depolarizing
    CHECK(choi_cptp_check(AffineChannel::diagonal({0.5, 0.5, 0.5}, {})).is_cp);

    // shifted near-identity: image ellipsoid exits the unit ball
    CHECK_FALSE(choi_cptp_check(AffineChannel::diagonal({0.9, 0.9, 0.9}, {0.5, 0, 0})).is_cp);

    CHECK_THROWS_AS(require_cptp(AffineChannel::diagonal({1, -1, 1}, {})), cptp_error);
}

TEST_CASE("kraus-generated channels pass the choi check") {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 300; ++trial) {
        AffineChannel ch = oracles::random_cptp_channel(rng, trial % 2 ? 3 : 4);
        ChoiReport rep = choi_cptp_check(ch);
        CHECK(rep.is_cp);
        CHECK(rep.min_eigenvalue >= -1e-9);
    }
}

TEST_CASE("diagonal frame reconstructs the channel") {
    std::mt19937_64 rng(43);
    for (int trial = 0; trial < 300; ++trial) {
        AffineChannel ch = oracles::random_cptp_channel(rng);
        DiagonalFrame f = diagonalize(ch);
        CHECK(max_abs_diff(f.t(), ch.t) < 1e-10);
        CHECK(norm(f.shift() - ch.b) < 1e-12);
        CHECK(f.s.x >= f.s.y);
        CHECK(f.s.y >= f.s.z);
    }
}

TEST_CASE("support point properties") {
    std::mt19937_64 rng(47);
    for (int trial = 0; trial < 200; ++trial) {
        AffineChannel ch = oracles::random_cptp_channel(rng);
        DiagonalFrame f = diagonalize(ch);
        Vec3 axis = oracles::random_unit(rng);
        SupportPoint sp = support_point(f, axis);

        CHECK_THAT(sp.value, Catch::Matchers::WithinAbs(norm(ch.t.transposed() * axis) +
                                                            dot(axis, ch.b),
                                                        1e-10));
        REQUIRE(sp.v_in.has_value());
        CHECK_THAT(norm(*sp.v_in), Catch::Matchers::WithinAbs(1.0, 1e-12));
        CHECK(norm(ch.apply(*sp.v_in) - sp.w) < 1e-12);

        // antipodal inputs give antipodal-through-b outputs: w0 + w1 = 2b
        SupportPoint sn = support_point(f, -axis);
        CHECK(norm(sp.w + (ch.apply(-*sp.v_in)) - 2.0 * ch.b) < 1e-12);

        // support dominance over random surface points
        Vec3 dir = oracles::random_unit(rng);
        Vec3 w = ch.apply(dir);
        CHECK(dot(axis, w) <= sp.value + 1e-10);
        (void)sn;
    }
}

TEST_CASE("support point with degenerate direction") {
    // T kills z; axis along z has T^T axis = 0
    AffineChannel ch = AffineChannel::diagonal({0.5, 0.3, 0.0}, {0.1, 0.0, 0.2});
    DiagonalFrame f = diagonalize(ch);
    SupportPoint sp = support_point(f, {0, 0, 1});
    CHECK_FALSE(sp.v_in.has_value());
    CHECK_THAT(sp.value, Catch::Matchers::WithinAbs(0.2, 1e-12));
    CHECK(norm(sp.w - ch.b) < 1e-12);
}

TEST_CASE("farthest point vs grid oracle") {
    std::mt19937_64 rng(53);
    for (int trial = 0; trial < 100; ++trial) {
        AffineChannel ch = oracles::random_cptp_channel(rng);
        DiagonalFrame f = diagonalize(ch);
        Vec3 q = oracles::uniform(rng, 0, 1.5) * oracles::random_unit(rng);
        FarthestPoint fp = farthest_point(f, q);
        double grid = oracles::farthest_distance_grid(f, q, 100000);
        CHECK(fp.distance >= grid - 1e-5);
        CHECK_THAT(norm(fp.w - q), Catch::Matchers::WithinAbs(fp.distance, 1e-10));
    }
}
