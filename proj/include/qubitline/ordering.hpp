#pragma once

// Partial orderings of classical binary channels: product ordering,
// stochastic degradedness (with explicit witness cascade), and the
// grid-checked capability ordering.

#include <array>
#include <cmath>
#include <optional>

#include "bloch.hpp"
#include "capacity.hpp"
#include "errors.hpp"

namespace qubitline {

/// Column-stochastic 2x2 transition matrix; columns indexed by input.
struct TransitionMatrix {
    // m[row][col] = P(y = row | x = col)
    std::array<std::array<double, 2>, 2> m{};

    static TransitionMatrix from_point(TransitionPoint p) {
        TransitionMatrix t;
        t.m = {{{p.p00, 1.0 - p.p11}, {1.0 - p.p00, p.p11}}};
        return t;
    }
    TransitionPoint point() const { return {m[1][1], m[0][0]}; }

    bool valid(double tol = 1e-12) const {
        for (int c = 0; c < 2; ++c) {
            if (std::abs(m[0][c] + m[1][c] - 1.0) > tol) return false;
            for (int r = 0; r < 2; ++r)
                if (m[r][c] < -tol || m[r][c] > 1.0 + tol) return false;
        }
        return true;
    }

    friend TransitionMatrix operator*(const TransitionMatrix& a, const TransitionMatrix& b) {
        TransitionMatrix r;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                r.m[i][j] = a.m[i][0] * b.m[0][j] + a.m[i][1] * b.m[1][j];
        return r;
    }
};

/// Product ordering: c dominates c' iff p00' <= p00 and p11' <= p11.
inline bool dominates(TransitionPoint c, TransitionPoint c_prime) {
    return c_prime.p00 <= c.p00 && c_prime.p11 <= c.p11;
}

struct DegradednessResult {
    bool degraded = false;
    std::optional<TransitionMatrix> witness;  // T'' with T' = T'' T
};

/// Is c' = (some channel) after c?  With invertible T the witness is
/// T'' = T' T^{-1}, checked for stochasticity; a singular T (constant
/// column) can only reach constant-column channels.
inline DegradednessResult stochastically_degraded(const TransitionMatrix& c_prime,
                                                  const TransitionMatrix& c,
                                                  double tol = 1e-9) {
    DegradednessResult out;
    double det = c.m[0][0] * c.m[1][1] - c.m[0][1] * c.m[1][0];
    if (std::abs(det) < 1e-12) {
        // both columns of T'' T equal T'' applied to the common column
        if (std::abs(c_prime.m[0][0] - c_prime.m[0][1]) <= tol &&
            std::abs(c_prime.m[1][0] - c_prime.m[1][1]) <= tol) {
            TransitionMatrix w;
            double q = std::clamp(0.5 * (c_prime.m[0][0] + c_prime.m[0][1]), 0.0, 1.0);
            w.m = {{{q, q}, {1.0 - q, 1.0 - q}}};
            out.degraded = true;
            out.witness = w;
        }
        return out;
    }
    TransitionMatrix inv;
    inv.m = {{{c.m[1][1] / det, -c.m[0][1] / det}, {-c.m[1][0] / det, c.m[0][0] / det}}};
    TransitionMatrix w = c_prime * inv;
    if (w.valid(tol)) {
        out.degraded = true;
        out.witness = w;
    }
    return out;
}

/// I(p1; c') <= I(p1; c) over a uniform prior grid (diagnostic check).
/// Binary input labels are arbitrary, so c' is compared under both input
/// relabelings; relabeling maps the information curve I'(p1) to I'(1-p1).
inline bool less_capable(TransitionPoint c_prime, TransitionPoint c, std::size_t grid_n = 1001) {
    if (grid_n < 2) throw error("grid_n must be at least 2");
    bool as_is = true, relabeled = true;
    for (std::size_t i = 0; i < grid_n && (as_is || relabeled); ++i) {
        double p1 = double(i) / double(grid_n - 1);
        double bound = mutual_information(c, p1) + 1e-9;
        if (mutual_information(c_prime, p1) > bound) as_is = false;
        if (mutual_information(c_prime, 1.0 - p1) > bound) relabeled = false;
    }
    return as_is || relabeled;
}

}  // namespace qubitline
