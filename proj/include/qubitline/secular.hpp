#pragma once

// Farthest point of an axis-aligned ellipsoid from a given point, solved via
// safeguarded Newton on the secular equation of the Lagrange multiplier.
// Shared by the 3D ellipsoid geometry and the 2D conic-reduction step.
//
// Problem:  maximize ||c + x||  subject to  sum_i (x_i / r_i)^2 = 1,
// where c = center - query point.  Radii below 1e-12 are treated as exactly
// zero and the corresponding coordinates are pinned to the center (dimension
// reduction).  The stationarity condition x_i = c_i r_i^2 / (mu - r_i^2)
// yields a secular equation phi(mu) = sum c_i^2 r_i^2 / (mu - r_i^2)^2 - 1
// whose root on (r_max^2, inf) gives the global maximizer.  The hard case
// (c orthogonal to every largest-radius axis) is resolved by placing the
// residual weight, with positive sign, on the first largest-radius axis,
// which picks the lexicographically largest solution.

#include <array>
#include <cmath>
#include <cstddef>

namespace qubitline {

template <std::size_t N>
struct SecularResult {
    std::array<double, N> x{};  // offset from the ellipsoid center
    double distance = 0.0;      // ||c + x||
    bool hard_case = false;     // maximizer not unique (continuum of optima)
};

template <std::size_t N>
SecularResult<N> farthest_point_secular(const std::array<double, N>& radii,
                                        const std::array<double, N>& c_in,
                                        double zero_radius_tol = 1e-12) {
    SecularResult<N> out;

    std::array<double, N> c = c_in;
    std::array<bool, N> active{};
    double rmax = 0.0;
    double cnorm2 = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
        active[i] = radii[i] > zero_radius_tol;
        if (active[i]) rmax = std::max(rmax, radii[i]);
        cnorm2 += c[i] * c[i];
    }
    double cnorm = std::sqrt(cnorm2);

    if (rmax == 0.0) {  // point ellipsoid
        out.distance = cnorm;
        return out;
    }

    const double r2max = rmax * rmax;
    const double tie_tol = 1e-12 * std::max(1.0, rmax);
    std::array<bool, N> tied{};
    bool hard_candidate = true;
    for (std::size_t i = 0; i < N; ++i) {
        tied[i] = active[i] && (rmax - radii[i] <= tie_tol);
        if (!tied[i]) continue;
        if (std::abs(c[i]) <= 1e-15 * std::max(1.0, cnorm))
            c[i] = 0.0;  // numerically aligned with a symmetry axis
        else
            hard_candidate = false;
    }

    auto phi = [&](double mu) {
        double s = -1.0;
        for (std::size_t i = 0; i < N; ++i) {
            if (!active[i] || c[i] == 0.0) continue;
            double d = mu - radii[i] * radii[i];
            double term = c[i] * radii[i] / d;
            s += term * term;
        }
        return s;
    };

    // With hard_candidate, every tied c_i is exactly zero, so phi is finite
    // at r2max and the root may not exist.
    bool hard = hard_candidate && phi(r2max) <= 0.0;

    double mu = r2max;
    if (!hard) {
        double lo = r2max;
        double hi = r2max + rmax * cnorm * (1.0 + 1e-6) + 1e-30;
        while (phi(hi) > 0.0) hi = r2max + 2.0 * (hi - r2max) + 1e-30;
        mu = 0.5 * (lo + hi);
        for (int it = 0; it < 200; ++it) {
            double f = phi(mu);
            if (std::abs(f) < 1e-14) break;
            if (f > 0.0)
                lo = mu;
            else
                hi = mu;
            // Newton step; phi is decreasing on the bracket
            double df = 0.0;
            for (std::size_t i = 0; i < N; ++i) {
                if (!active[i] || c[i] == 0.0) continue;
                double r2 = radii[i] * radii[i];
                double d = mu - r2;
                df += -2.0 * c[i] * c[i] * r2 / (d * d * d);
            }
            double next = (df != 0.0) ? mu - f / df : mu;
            if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
            if (std::abs(next - mu) < 1e-16 * std::max(1.0, mu)) {
                mu = next;
                break;
            }
            mu = next;
        }
    }

    double used = 0.0;  // sum over determinate components of (x_i/r_i)^2
    for (std::size_t i = 0; i < N; ++i) {
        if (!active[i] || (hard && tied[i])) {
            out.x[i] = 0.0;
            continue;
        }
        double r2 = radii[i] * radii[i];
        double d = mu - r2;
        out.x[i] = (c[i] == 0.0) ? 0.0 : c[i] * r2 / d;
        double t = out.x[i] / radii[i];
        used += t * t;
    }
    if (hard) {
        double rho = std::sqrt(std::max(0.0, 1.0 - used));
        bool first = true;
        for (std::size_t i = 0; i < N; ++i) {
            if (!tied[i]) continue;
            out.x[i] = first ? rmax * rho : 0.0;
            first = false;
        }
        out.hard_case = rho > 1e-9;
    }

    double d2 = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
        double e = c[i] + out.x[i];
        d2 += e * e;
    }
    out.distance = std::sqrt(d2);
    return out;
}

}  // namespace qubitline
