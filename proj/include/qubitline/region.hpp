#pragma once

// Achievable region of binary transition probabilities.  For each value of
// k = axis.xi the edge problem maximizes ||S^T axis|| over unit axes on the
// plane axis.xi = k; the resulting generating set G_R, mirrored across the
// bisecting line, spans the region as a union of parallelograms sharing the
// diagonal (0,1)-(1,0).
//
// The edge problem is reduced, through a chain of changes of variables
// (normalization, constraint elimination, rotation onto the shift, scaling,
// conic diagonalization), to finding the farthest point from the origin on
// an axis-aligned ellipse.  A direct solver on the feasible circle backs the
// reduction up whenever the chain is ill-conditioned (vanishing radius or
// vanishing shift component), and serves as an independent route in tests.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <optional>
#include <ostream>
#include <vector>

#include "channel.hpp"
#include "errors.hpp"
#include "linalg.hpp"
#include "parallel.hpp"
#include "secular.hpp"

namespace qubitline {

/// One extremal binary channel: the edge-problem solution at a given k.
/// `axis` is the Pi1 measurement axis in the original coordinates, so that
/// axis.b = k for the channel shift b.
struct RegionSample {
    double k = 0.0;
    Vec3 axis;
    TransitionPoint point;
    double objective = 0.0;  // ||S^T axis||
};

/// Full change-of-variables chain from the constrained sphere problem to an
/// axis-aligned conic, plus the conic's center/radii form.
struct EllipseProblem {
    // conic  A x^2 + B xy + C y^2 + D x + E y + F = 0  (B = 0 by construction)
    double A = 0, B = 0, C = 0, D = 0, E = 0, F = 0;
    double x_center = 0, y_center = 0, r_x = 0, r_y = 0;

    Vec3 h1_diag;                              // diag(1/a, 1/b, 1/c)
    std::array<std::array<double, 2>, 3> h2{}; // plane elimination
    Vec3 t2;
    std::array<double, 4> h3{};                // rotation onto the shift, row-major 2x2
    std::array<double, 2> h4_diag{};
    std::array<double, 2> t4{};
    std::array<double, 4> h5{};                // conic diagonalization, row-major 2x2

    double aux_r = 0, aux_s = 0, aux_v = 0, n1 = 1, n2 = 1;

    Vec3 radii;  // (a, b, c) of the frame this problem was built from
    Vec3 xi;
    double k = 0;

    /// Reverts the substitution chain: a point of the conic maps to a unit
    /// axis satisfying axis.xi = k.
    Vec3 axis_from_conic_point(double x5, double y5) const {
        double x4 = h5[0] * x5 + h5[1] * y5;
        double y4 = h5[2] * x5 + h5[3] * y5;
        double x3 = h4_diag[0] * x4 + t4[0];
        double y3 = h4_diag[1] * y4 + t4[1];
        double x2 = h3[0] * x3 + h3[1] * y3;
        double y2 = h3[2] * x3 + h3[3] * y3;
        Vec3 p1{h2[0][0] * x2 + h2[0][1] * y2 + t2.x,
                h2[1][0] * x2 + h2[1][1] * y2 + t2.y,
                h2[2][0] * x2 + h2[2][1] * y2 + t2.z};
        return {h1_diag.x * p1.x, h1_diag.y * p1.y, h1_diag.z * p1.z};
    }
};

/// Builds the substitution chain for radii (a,b,c) and diagonal-frame shift
/// xi at constraint level k.  Returns nullopt when the chain would divide by
/// a vanishing quantity (any radius or xi_z below 1e-9); the caller falls
/// back to the direct solver.  |k| > ||xi|| is infeasible.
inline std::optional<EllipseProblem> ellipse_reduction(Vec3 radii, Vec3 xi, double k) {
    const double a = radii.x, b = radii.y, c = radii.z;
    if (std::abs(k) > norm(xi) + 1e-12) throw error("edge constraint k exceeds ||xi||");
    if (a < 1e-9 || b < 1e-9 || c < 1e-9 || std::abs(xi.z) < 1e-9) return std::nullopt;

    EllipseProblem ep;
    ep.radii = radii;
    ep.xi = xi;
    ep.k = k;
    ep.h1_diag = {1.0 / a, 1.0 / b, 1.0 / c};

    const double ux = c * xi.x / (a * xi.z);
    const double uy = c * xi.y / (b * xi.z);
    const double m = c * k / xi.z;
    ep.h2 = {{{1, 0}, {0, 1}, {-ux, -uy}}};
    ep.t2 = {0, 0, m};

    const double v_aux = b * b * xi.x * xi.x + a * a * xi.y * xi.y;
    const double nv = std::sqrt(v_aux);
    if (nv > 0) {
        ep.h3 = {b * xi.x / nv, a * xi.y / nv, a * xi.y / nv, -b * xi.x / nv};
    } else {
        ep.h3 = {1, 0, 0, 1};
    }

    const double r_aux = std::sqrt(a * a * b * b * xi.z * xi.z + c * c * b * b * xi.x * xi.x +
                                   c * c * a * a * xi.y * xi.y);
    // completing the square: the xi_z factors of the plane offset and of the
    // rotated linear coefficient cancel as xi_z^2, so no sign term appears
    ep.h4_diag = {a * b / r_aux, 1.0 / xi.z};
    ep.t4 = {k * a * b * c * c * nv / (r_aux * r_aux), 0.0};
    ep.aux_r = r_aux;
    ep.aux_v = v_aux;

    // Constraint (the unit-sphere image under H1) pushed through the chain:
    // p1 = M p4 + t with p1^T W p1 = 1, W = diag(1/a^2, 1/b^2, 1/c^2).
    std::array<std::array<double, 2>, 3> M{};
    Vec3 t;
    {
        // 2D stage: p2 = H3 (H4 p4 + t4)
        std::array<double, 4> h34{ep.h3[0] * ep.h4_diag[0], ep.h3[1] * ep.h4_diag[1],
                                  ep.h3[2] * ep.h4_diag[0], ep.h3[3] * ep.h4_diag[1]};
        std::array<double, 2> toff{ep.h3[0] * ep.t4[0] + ep.h3[1] * ep.t4[1],
                                   ep.h3[2] * ep.t4[0] + ep.h3[3] * ep.t4[1]};
        for (std::size_t r = 0; r < 3; ++r) {
            M[r][0] = ep.h2[r][0] * h34[0] + ep.h2[r][1] * h34[2];
            M[r][1] = ep.h2[r][0] * h34[1] + ep.h2[r][1] * h34[3];
        }
        t = {ep.h2[0][0] * toff[0] + ep.h2[0][1] * toff[1] + ep.t2.x,
             ep.h2[1][0] * toff[0] + ep.h2[1][1] * toff[1] + ep.t2.y,
             ep.h2[2][0] * toff[0] + ep.h2[2][1] * toff[1] + ep.t2.z};
    }
    const Vec3 w{1.0 / (a * a), 1.0 / (b * b), 1.0 / (c * c)};
    double q00 = 0, q01 = 0, q11 = 0, l0 = 0, l1 = 0, f0 = -1.0;
    for (std::size_t r = 0; r < 3; ++r) {
        q00 += w[r] * M[r][0] * M[r][0];
        q01 += w[r] * M[r][0] * M[r][1];
        q11 += w[r] * M[r][1] * M[r][1];
        l0 += 2.0 * w[r] * M[r][0] * t[r];
        l1 += 2.0 * w[r] * M[r][1] * t[r];
        f0 += w[r] * t[r] * t[r];
    }

    // diagonalize the quadratic part with a rotation
    double theta = 0.5 * std::atan2(2.0 * q01, q00 - q11);
    double ct = std::cos(theta), st = std::sin(theta);
    double lam0 = q00 * ct * ct + 2.0 * q01 * ct * st + q11 * st * st;
    double lam1 = q00 * st * st - 2.0 * q01 * ct * st + q11 * ct * ct;
    std::array<double, 2> col0{ct, st}, col1{-st, ct};
    if (lam1 > lam0) {
        std::swap(lam0, lam1);
        std::swap(col0, col1);
    }
    auto fix_sign = [](std::array<double, 2>& col) {
        if ((std::abs(col[0]) >= std::abs(col[1]) ? col[0] : col[1]) < 0) {
            col[0] = -col[0];
            col[1] = -col[1];
        }
    };
    fix_sign(col0);
    fix_sign(col1);
    ep.h5 = {col0[0], col1[0], col0[1], col1[1]};

    ep.A = lam0;
    ep.B = 0.0;
    ep.C = lam1;
    ep.D = l0 * col0[0] + l1 * col0[1];
    ep.E = l0 * col1[0] + l1 * col1[1];
    ep.F = f0;
    ep.aux_s = (ep.A - ep.C) * (ep.A - ep.C) * r_aux * r_aux * r_aux * r_aux;

    if (ep.A <= 0 || ep.C <= 0) return std::nullopt;
    double rad = ep.D * ep.D * ep.C + ep.E * ep.E * ep.A - 4.0 * ep.A * ep.C * ep.F;
    if (rad < 0) rad = 0;  // feasibility shrinks the conic to (near) a point
    ep.x_center = -ep.D / (2.0 * ep.A);
    ep.y_center = -ep.E / (2.0 * ep.C);
    ep.r_x = std::sqrt(rad / (4.0 * ep.A * ep.A * ep.C));
    ep.r_y = std::sqrt(rad / (4.0 * ep.A * ep.C * ep.C));
    return ep;
}

/// Point of the conic maximizing x^2 + y^2; ties resolved toward the
/// lexicographically largest (x, y).
inline std::array<double, 2> farthest_on_ellipse(const EllipseProblem& ep) {
    if (ep.A <= 0 || ep.C <= 0) throw error("degenerate conic in ellipse problem");
    auto r = farthest_point_secular<2>({ep.r_x, ep.r_y}, {ep.x_center, ep.y_center});
    return {ep.x_center + r.x[0], ep.y_center + r.x[1]};
}

namespace detail {

inline Vec3 scale_by(Vec3 s, Vec3 p) { return {s.x * p.x, s.y * p.y, s.z * p.z}; }

/// Projects onto { unit sphere } cap { axis.xi = k } by a few alternating steps.
inline Vec3 project_feasible(Vec3 axis, Vec3 xi, double k) {
    double l2 = dot(xi, xi);
    for (int it = 0; it < 4; ++it) {
        if (l2 > 0) axis = axis + ((k - dot(axis, xi)) / l2) * xi;
        axis = normalized(axis);
    }
    return axis;
}

/// Direct solver on the feasible circle: 16 golden-section restarts over the
/// angular parametrization.
inline Vec3 edge_axis_direct(Vec3 radii, Vec3 xi, double k) {
    double l = norm(xi);
    Vec3 xh = (1.0 / l) * xi;
    double kap = std::clamp(k / l, -1.0, 1.0);
    double rho = std::sqrt(std::max(0.0, 1.0 - kap * kap));
    if (rho == 0.0) return kap >= 0 ? xh : -xh;

    // orthonormal completion, seeded from the least-aligned coordinate axis
    std::size_t ax = 0;
    for (std::size_t i = 1; i < 3; ++i)
        if (std::abs(xh[i]) < std::abs(xh[ax])) ax = i;
    Vec3 e1{ax == 0 ? 1.0 : 0.0, ax == 1 ? 1.0 : 0.0, ax == 2 ? 1.0 : 0.0};
    e1 = normalized(e1 - dot(e1, xh) * xh);
    Vec3 e2 = cross(xh, e1);

    auto axis_at = [&](double th) {
        return kap * xh + rho * std::cos(th) * e1 + rho * std::sin(th) * e2;
    };
    auto obj = [&](double th) {
        Vec3 sp = scale_by(radii, axis_at(th));
        return dot(sp, sp);
    };

    const double golden = 0.5 * (std::sqrt(5.0) - 1.0);
    double best_th = 0.0, best = obj(0.0);
    const int restarts = 16;
    for (int j = 0; j < restarts; ++j) {
        double centre = 2.0 * M_PI * j / restarts;
        double lo = centre - 2.0 * M_PI / restarts;
        double hi = centre + 2.0 * M_PI / restarts;
        double x1 = hi - golden * (hi - lo), x2 = lo + golden * (hi - lo);
        double f1 = obj(x1), f2 = obj(x2);
        while (hi - lo > 1e-13) {
            if (f1 < f2) {
                lo = x1;
                x1 = x2;
                f1 = f2;
                x2 = lo + golden * (hi - lo);
                f2 = obj(x2);
            } else {
                hi = x2;
                x2 = x1;
                f2 = f1;
                x1 = hi - golden * (hi - lo);
                f1 = obj(x1);
            }
        }
        double th = 0.5 * (lo + hi), f = obj(th);
        if (f > best) {
            best = f;
            best_th = th;
        }
    }
    return normalized(axis_at(best_th));
}

/// Conic-reduction route; nullopt when the reduction declines the input.
/// Coordinates are permuted first so the eliminated component is the
/// largest of |xi|.
inline std::optional<Vec3> edge_axis_ellipse(Vec3 radii, Vec3 xi, double k) {
    std::array<std::size_t, 3> perm{0, 1, 2};
    std::size_t iz = 0;
    for (std::size_t i = 1; i < 3; ++i)
        if (std::abs(xi[i]) > std::abs(xi[iz])) iz = i;
    perm = {(iz + 1) % 3, (iz + 2) % 3, iz};

    Vec3 pr{radii[perm[0]], radii[perm[1]], radii[perm[2]]};
    Vec3 px{xi[perm[0]], xi[perm[1]], xi[perm[2]]};
    auto ep = ellipse_reduction(pr, px, k);
    if (!ep) return std::nullopt;
    auto p5 = farthest_on_ellipse(*ep);
    Vec3 ap = ep->axis_from_conic_point(p5[0], p5[1]);
    Vec3 axis;
    for (std::size_t i = 0; i < 3; ++i) axis[perm[i]] = ap[i];
    return project_feasible(axis, xi, k);
}

}  // namespace detail

/// Solves the edge problem at level k for a diagonalized channel and reports
/// the resulting extremal binary channel.  The returned axis lives in the
/// original coordinates.
inline RegionSample edge_problem(const DiagonalFrame& frame, double k) {
    const Vec3 s = frame.s;
    const Vec3 xi = frame.xi;
    const double l = norm(xi);
    if (std::abs(k) > l + 1e-12) throw error("edge constraint k exceeds ||xi||");
    k = std::clamp(k, -l, l);

    Vec3 axis_d;
    if (l < 1e-12) {
        axis_d = {1, 0, 0};  // top singular direction; feasible set is the sphere
        k = 0.0;
    } else if (l - std::abs(k) < 1e-12) {
        axis_d = (k >= 0 ? 1.0 : -1.0) * (1.0 / l) * xi;
    } else {
        std::optional<Vec3> ax;
        if (std::min({s.x, s.y, s.z}) > 1e-9) ax = detail::edge_axis_ellipse(s, xi, k);
        axis_d = ax ? *ax : detail::edge_axis_direct(s, xi, k);
    }

    double obj = norm(detail::scale_by(s, axis_d));
    RegionSample out;
    out.k = k;
    out.axis = frame.u * axis_d;
    out.objective = obj;
    out.point.p11 = std::clamp(0.5 * (1.0 + obj + k), 0.0, 1.0);
    out.point.p00 = std::clamp(0.5 * (1.0 + obj - k), 0.0, 1.0);
    return out;
}

struct Region {
    AffineChannel channel;
    DiagonalFrame frame;
    std::vector<RegionSample> samples;     // G_R with its mirror image, k ascending
    std::vector<TransitionPoint> border;   // polyline B_R from (0,1) to (1,0)
    std::vector<std::size_t> maximal;      // indices of M_R within samples
    double area_estimate = 0.0;
};

namespace detail {

// base-line coordinates: position s in [0,1] along (0,1)->(1,0), height
// h = p11 + p00 - 1 above the anti-bisecting line
inline std::pair<double, double> base_coords(TransitionPoint p) {
    return {0.5 * (p.p11 - p.p00 + 1.0), p.p11 + p.p00 - 1.0};
}

inline double tent(double s_apex, double h_apex, double s) {
    if (h_apex <= 0) return 0.0;
    if (s <= 0 || s >= 1) return 0.0;
    if (s <= s_apex) return s_apex > 0 ? h_apex * s / s_apex : 0.0;
    return s_apex < 1 ? h_apex * (1.0 - s) / (1.0 - s_apex) : 0.0;
}

}  // namespace detail

inline std::vector<double> chebyshev_nodes(std::size_t n, double upper) {
    std::vector<double> ks(n);
    for (std::size_t i = 0; i < n; ++i)
        ks[i] = 0.5 * upper * (1.0 - std::cos(M_PI * double(i) / double(n - 1)));
    return ks;
}

inline Region generate_region(const AffineChannel& ch, std::size_t n_samples) {
    if (n_samples < 2) throw error("n_samples must be at least 2");
    require_cptp(ch);

    Region region;
    region.channel = ch;
    region.frame = diagonalize(ch);
    const double l = region.frame.shift_norm();

    std::vector<double> ks = l < 1e-12 ? std::vector<double>{0.0} : chebyshev_nodes(n_samples, l);
    std::vector<RegionSample> base(ks.size());
    parallel_for(ks.size(), [&](std::size_t i) { base[i] = edge_problem(region.frame, ks[i]); });

    // mirrored set first (descending k mirrored -> ascending -k)
    for (std::size_t i = base.size(); i-- > 0;) {
        if (base[i].k <= 1e-15) continue;
        RegionSample m;
        m.k = -base[i].k;
        m.axis = -base[i].axis;
        m.objective = base[i].objective;
        m.point = {base[i].point.p00, base[i].point.p11};
        region.samples.push_back(m);
    }
    region.samples.insert(region.samples.end(), base.begin(), base.end());

    // maximal set: samples not strictly under another sample's tent
    std::vector<std::pair<double, double>> sh(region.samples.size());
    for (std::size_t i = 0; i < sh.size(); ++i) sh[i] = detail::base_coords(region.samples[i].point);
    for (std::size_t i = 0; i < sh.size(); ++i) {
        double cover = 0.0;
        for (std::size_t j = 0; j < sh.size(); ++j) {
            if (j == i) continue;
            cover = std::max(cover, detail::tent(sh[j].first, sh[j].second, sh[i].first));
        }
        if (sh[i].second >= cover - 1e-9) region.maximal.push_back(i);
    }

    // border polyline: corners plus maximal samples ordered along the base line
    std::vector<std::size_t> order = region.maximal;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (sh[a].first != sh[b].first) return sh[a].first < sh[b].first;
        return sh[a].second > sh[b].second;
    });
    region.border.push_back({0.0, 1.0});
    for (std::size_t idx : order) {
        TransitionPoint p = region.samples[idx].point;
        if (!region.border.empty()) {
            TransitionPoint q = region.border.back();
            if (std::abs(p.p11 - q.p11) < 1e-12 && std::abs(p.p00 - q.p00) < 1e-12) continue;
        }
        region.border.push_back(p);
    }
    region.border.push_back({1.0, 0.0});

    // area: twice the integral of the tent envelope over the base line
    const std::size_t grid = 2001;
    double acc = 0.0, prev = 0.0;
    for (std::size_t g = 0; g < grid; ++g) {
        double sgrid = double(g) / double(grid - 1);
        double env = 0.0;
        for (auto& [sa, ha] : sh) env = std::max(env, detail::tent(sa, ha, sgrid));
        if (g > 0) acc += 0.5 * (env + prev) / double(grid - 1);
        prev = env;
    }
    region.area_estimate = 2.0 * acc;
    return region;
}

/// Membership in the union of parallelograms, with 1e-9 boundary tolerance.
inline bool region_contains(const Region& region, TransitionPoint p) {
    auto [sp, hp] = detail::base_coords(p);
    if (hp < 0) {  // mirror through the center
        sp = 1.0 - sp;
        hp = -hp;
    }
    if (sp < -1e-9 || sp > 1.0 + 1e-9) return false;
    double env = 0.0;
    for (const auto& sample : region.samples) {
        auto [sa, ha] = detail::base_coords(sample.point);
        env = std::max(env, detail::tent(sa, ha, sp));
    }
    return hp <= env + 1e-9;
}

inline void write_region_csv(std::ostream& os, const Region& region) {
    os << "k,axis_x,axis_y,axis_z,p11,p00,objective\n";
    char buf[512];
    for (const auto& s : region.samples) {
        std::snprintf(buf, sizeof(buf),
                      "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", s.k, s.axis.x,
                      s.axis.y, s.axis.z, s.point.p11, s.point.p00, s.objective);
        os << buf;
    }
}

inline void write_border_csv(std::ostream& os, const Region& region) {
    os << "p11,p00\n";
    char buf[128];
    for (const auto& p : region.border) {
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g\n", p.p11, p.p00);
        os << buf;
    }
}

}  // namespace qubitline
