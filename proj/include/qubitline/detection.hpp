#pragma once

// Probability of correct decision: Helstrom-style optimization of the
// measurement axis and antipodal input pair for a fixed prior, including the
// trivial-measurement regime where guessing the likelier symbol wins.

#include <cmath>
#include <optional>
#include <utility>

#include "channel.hpp"
#include "errors.hpp"
#include "linalg.hpp"

namespace qubitline {

enum class DetectionMode { projective, trivial_identity, trivial_null };

struct DetectionReport {
    double pc = 0.0;
    DetectionMode mode = DetectionMode::projective;
    std::optional<Vec3> axis;          // Pi1 axis, projective mode only
    Vec3 d;                            // difference vector w1 - 2 p0 b
    std::pair<Vec3, Vec3> inputs;      // antipodal unit input pair (v1, v0)
    TransitionPoint point;             // transition probabilities achieved
    bool degenerate = false;           // continuum of optimal axes detected
};

/// pc = p00 p0 + p11 (1 - p0).
inline double pc_of_point(TransitionPoint p, double p0) {
    if (p.p11 < -1e-9 || p.p11 > 1.0 + 1e-9 || p.p00 < -1e-9 || p.p00 > 1.0 + 1e-9 ||
        p0 < -1e-9 || p0 > 1.0 + 1e-9)
        throw error("probabilities must lie in [0,1]");
    return p.p00 * p0 + p.p11 * (1.0 - p0);
}

namespace detail {

/// Second optimum separated from w on the ellipsoid surface, scanned over a
/// deterministic direction grid.
inline bool has_second_optimum(const DiagonalFrame& frame, Vec3 q, Vec3 w, double dist) {
    const std::size_t n = 2000;
    const double golden_angle = M_PI * (3.0 - std::sqrt(5.0));
    for (std::size_t i = 0; i < n; ++i) {
        double z = 1.0 - 2.0 * (double(i) + 0.5) / double(n);
        double r = std::sqrt(std::max(0.0, 1.0 - z * z));
        double th = golden_angle * double(i);
        Vec3 dir{r * std::cos(th), r * std::sin(th), z};
        Vec3 wd = frame.xi + Vec3{frame.s.x * dir.x, frame.s.y * dir.y, frame.s.z * dir.z};
        Vec3 wg = frame.u * wd;
        if (norm(wg - q) >= dist - 1e-9 && norm(wg - w) > 1e-3) return true;
    }
    return false;
}

}  // namespace detail

/// Maximizes Pc over antipodal state pairs and binary measurements for prior
/// p0 = P(x=0).  The difference vector is maximized by the farthest point of
/// the image ellipsoid from 2 p0 b; if its norm does not exceed |1 - 2 p0|
/// the trivial measurement (always guess the likelier symbol) is optimal.
inline DetectionReport optimize_pc(const AffineChannel& ch, double p0) {
    if (p0 < -1e-12 || p0 > 1.0 + 1e-12) throw error("prior out of range");
    p0 = std::clamp(p0, 0.0, 1.0);
    require_cptp(ch);
    DiagonalFrame frame = diagonalize(ch);

    Vec3 q = (2.0 * p0) * ch.b;
    FarthestPoint fp = farthest_point(frame, q);
    Vec3 w1 = fp.w;
    double dn = fp.distance;

    DetectionReport rep;
    rep.d = w1 - q;
    rep.degenerate = detail::has_second_optimum(frame, q, w1, dn);

    if (dn >= std::abs(1.0 - 2.0 * p0)) {
        rep.mode = DetectionMode::projective;
        Vec3 axis = dn > 1e-15 ? (1.0 / dn) * rep.d : frame.u.column(0);
        rep.axis = axis;
        Vec3 tta = ch.t.transposed() * axis;
        double n = norm(tta);
        Vec3 v1 = n > 1e-13 ? (1.0 / n) * tta : axis;
        rep.inputs = {v1, -v1};
        rep.pc = 0.5 * (1.0 + dn);
        Vec3 w0 = 2.0 * ch.b - w1;
        rep.point = transition_probabilities(axis, w0, w1);
    } else {
        rep.mode = p0 >= 0.5 ? DetectionMode::trivial_identity : DetectionMode::trivial_null;
        rep.pc = std::max(p0, 1.0 - p0);
        // decision never consults the outcome: p11/p00 are 0/1
        rep.point = p0 >= 0.5 ? TransitionPoint{0.0, 1.0} : TransitionPoint{1.0, 0.0};
        Vec3 v1 = frame.v.column(0);
        rep.inputs = {v1, -v1};
    }
    return rep;
}

}  // namespace qubitline
