#pragma once

// Binary classical capacity: the inner optimization over the prior has a
// closed form through the inverse derivative of the binary entropy; the
// outer optimization walks the maximal set of the region by sampling k and
// refining with a golden-section search.

#include <cmath>
#include <utility>
#include <vector>

#include "channel.hpp"
#include "errors.hpp"
#include "region.hpp"

namespace qubitline {

/// h(x) = -x log2 x - (1-x) log2 (1-x), with the 0 log 0 = 0 convention.
inline double binary_entropy(double x) {
    if (x < -1e-9 || x > 1.0 + 1e-9) throw error("binary_entropy argument out of [0,1]");
    x = std::clamp(x, 0.0, 1.0);
    if (x == 0.0 || x == 1.0) return 0.0;
    return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

/// h'(x) = log2(1/x - 1).
inline double binary_entropy_derivative(double x) {
    if (x <= 0.0 || x >= 1.0) throw error("binary_entropy_derivative argument out of (0,1)");
    return std::log2(1.0 / x - 1.0);
}

/// g = (h')^{-1}: g(x) = 1 / (2^x + 1).
inline double inverse_entropy_derivative(double x) { return 1.0 / (std::exp2(x) + 1.0); }

/// I(X;Y) = h(r) - p1 h(p11) - (1-p1) h(p00), r = P(Y=0).
inline double mutual_information(TransitionPoint p, double p1) {
    if (p1 < -1e-9 || p1 > 1.0 + 1e-9) throw error("prior out of range");
    p1 = std::clamp(p1, 0.0, 1.0);
    double r = p.p00 * (1.0 - p1) + (1.0 - p.p11) * p1;
    return binary_entropy(r) - p1 * binary_entropy(p.p11) - (1.0 - p1) * binary_entropy(p.p00);
}

struct OptimalPrior {
    double p1 = 0.5;
    double r = 0.5;  // P(Y=0) at the optimum
    double i = 0.0;  // bits per use
};

/// Closed-form inner maximization over the prior.  On the singular locus
/// p11 + p00 = 1 the output is input-independent: i = 0 and p1 = 0.5 by
/// convention.  A stationary point outside [0,1] is clamped and the mutual
/// information re-evaluated at the clamp.
inline OptimalPrior optimal_prior(TransitionPoint p) {
    OptimalPrior out;
    double den = 1.0 - p.p11 - p.p00;
    if (std::abs(den) < 1e-12) {
        out.p1 = 0.5;
        out.r = p.p00;
        out.i = 0.0;
        return out;
    }
    double r = inverse_entropy_derivative((binary_entropy(p.p11) - binary_entropy(p.p00)) / den);
    double p1 = (r - p.p00) / den;
    if (p1 < 0.0 || p1 > 1.0) {
        p1 = std::clamp(p1, 0.0, 1.0);
        r = p.p00 * (1.0 - p1) + (1.0 - p.p11) * p1;
    }
    out.p1 = p1;
    out.r = r;
    out.i = std::max(0.0, binary_entropy(r) - p1 * binary_entropy(p.p11) -
                              (1.0 - p1) * binary_entropy(p.p00));
    return out;
}

struct CapacityReport {
    double c_bin = 0.0;
    TransitionPoint point;
    double prior_p1 = 0.5;
    double r = 0.5;
    Vec3 axis;
    std::pair<Vec3, Vec3> inputs;
    double k_at_opt = 0.0;
    bool non_unimodal = false;  // refinement failed to improve on the seed
};

namespace detail {

struct KEval {
    RegionSample sample;
    OptimalPrior prior;
};

inline KEval eval_k(const DiagonalFrame& frame, double k) {
    KEval e;
    e.sample = edge_problem(frame, k);
    e.prior = optimal_prior(e.sample.point);
    return e;
}

}  // namespace detail

/// Two-step capacity optimization: closed-form inner prior, sampled outer
/// search over k with golden-section refinement around the best sample.
/// Reports the representative with smallest k >= 0 (ties toward larger p11).
inline CapacityReport optimize_capacity(const AffineChannel& ch, std::size_t n_samples = 256,
                                        double refine_tol = 1e-8) {
    if (n_samples < 8) throw error("n_samples must be at least 8");
    require_cptp(ch);
    DiagonalFrame frame = diagonalize(ch);
    const double l = frame.shift_norm();

    std::vector<double> ks = l < 1e-12 ? std::vector<double>{0.0} : chebyshev_nodes(n_samples, l);
    std::vector<detail::KEval> evals(ks.size());
    parallel_for(ks.size(), [&](std::size_t i) { evals[i] = detail::eval_k(frame, ks[i]); });

    std::size_t best = 0;
    for (std::size_t i = 1; i < evals.size(); ++i) {
        double di = evals[i].prior.i, db = evals[best].prior.i;
        if (di > db + 1e-15 ||
            (std::abs(di - db) <= 1e-15 &&
             (ks[i] < ks[best] ||
              (ks[i] == ks[best] && evals[i].sample.point.p11 > evals[best].sample.point.p11))))
            best = i;
    }

    detail::KEval opt = evals[best];
    bool non_unimodal = false;
    if (ks.size() > 1) {
        double lo = best > 0 ? ks[best - 1] : ks[best];
        double hi = best + 1 < ks.size() ? ks[best + 1] : ks[best];
        const double golden = 0.5 * (std::sqrt(5.0) - 1.0);
        double x1 = hi - golden * (hi - lo), x2 = lo + golden * (hi - lo);
        detail::KEval e1 = detail::eval_k(frame, x1), e2 = detail::eval_k(frame, x2);
        while (hi - lo > refine_tol) {
            if (e1.prior.i < e2.prior.i) {
                lo = x1;
                x1 = x2;
                e1 = e2;
                x2 = lo + golden * (hi - lo);
                e2 = detail::eval_k(frame, x2);
            } else {
                hi = x2;
                x2 = x1;
                e2 = e1;
                x1 = hi - golden * (hi - lo);
                e1 = detail::eval_k(frame, x1);
            }
        }
        detail::KEval refined = detail::eval_k(frame, 0.5 * (lo + hi));
        if (refined.prior.i >= opt.prior.i) {
            opt = refined;
        } else if (refined.prior.i < opt.prior.i - 1e-12) {
            non_unimodal = true;
        }
    }

    CapacityReport rep;
    rep.c_bin = opt.prior.i;
    rep.point = opt.sample.point;
    rep.prior_p1 = opt.prior.p1;
    rep.r = opt.prior.r;
    rep.axis = opt.sample.axis;
    rep.k_at_opt = opt.sample.k;
    rep.non_unimodal = non_unimodal;
    Vec3 tta = ch.t.transposed() * opt.sample.axis;
    double n = norm(tta);
    Vec3 v1 = n > 1e-13 ? (1.0 / n) * tta : opt.sample.axis;
    rep.inputs = {v1, -v1};
    return rep;
}

}  // namespace qubitline
