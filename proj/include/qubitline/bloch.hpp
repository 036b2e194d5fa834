#pragma once

// Coherence-vector algebra for qubit states and rank-1 projective
// measurements: rho = (I + v.sigma)/2 with v in the unit ball, measurement
// axes on the unit sphere, and the transition-probability map of a binary
// projective measurement.

#include <cmath>

#include "errors.hpp"
#include "linalg.hpp"

namespace qubitline {

/// Pauli expansion coefficients of a state (||v|| <= 1) or measurement axis
/// (||v|| = 1).
using CoherenceVector = Vec3;

constexpr double kStateTol = 1e-12;

/// 2x2 density matrix.
struct QubitState {
    Mat2c rho;
};

/// rho = (I + v.sigma)/2.
inline QubitState state_from_coherence(CoherenceVector v) {
    if (norm(v) > 1.0 + kStateTol)
        throw error("coherence vector outside the unit ball");
    QubitState s;
    s.rho(0, 0) = 0.5 * (1.0 + v.z);
    s.rho(1, 1) = 0.5 * (1.0 - v.z);
    s.rho(0, 1) = 0.5 * cplx(v.x, -v.y);
    s.rho(1, 0) = 0.5 * cplx(v.x, v.y);
    return s;
}

/// v_i = tr(rho sigma_i); validates hermiticity, unit trace and positivity.
inline CoherenceVector coherence_from_state(const QubitState& s) {
    const Mat2c& r = s.rho;
    if (std::abs(r(0, 1) - std::conj(r(1, 0))) > kStateTol ||
        std::abs(r(0, 0).imag()) > kStateTol || std::abs(r(1, 1).imag()) > kStateTol)
        throw error("density matrix is not Hermitian");
    if (std::abs(r.trace() - cplx(1.0)) > kStateTol)
        throw error("density matrix trace is not 1");
    CoherenceVector v{2.0 * r(1, 0).real() /* = tr(rho sx) */,
                      2.0 * r(1, 0).imag() /* = tr(rho sy) */,
                      (r(0, 0) - r(1, 1)).real()};
    if (norm(v) > 1.0 + kStateTol) throw error("density matrix has a negative eigenvalue");
    return v;
}

/// The projective pair Pi1 = (I + axis.sigma)/2, Pi0 = I - Pi1.
struct ProjectorPair {
    CoherenceVector axis;  // axis of Pi1; Pi0 has axis -axis
    Mat2c pi0, pi1;
};

inline void require_unit_axis(CoherenceVector axis, double tol = 1e-9) {
    if (std::abs(norm(axis) - 1.0) > tol) throw error("measurement axis is not unit norm");
}

inline ProjectorPair measurement_pair_from_axis(CoherenceVector axis) {
    require_unit_axis(axis);
    ProjectorPair p;
    p.axis = axis;
    p.pi1 = state_from_coherence(axis).rho;  // rank-1 projector for unit axis
    p.pi0 = Mat2c::identity() - p.pi1;
    return p;
}

/// A classical binary channel as its pair of correct transition
/// probabilities (p11, p00).
struct TransitionPoint {
    double p11 = 0.0, p00 = 0.0;
};

/// p11 = (1 + axis.w1)/2, p00 = (1 - axis.w0)/2 for the measurement pair
/// with Pi1-axis `axis` and output states w1, w0.
inline TransitionPoint transition_probabilities(CoherenceVector axis, CoherenceVector w0,
                                                CoherenceVector w1) {
    require_unit_axis(axis);
    TransitionPoint p;
    p.p11 = 0.5 * (1.0 + dot(axis, w1));
    p.p00 = 0.5 * (1.0 - dot(axis, w0));
    return p;
}

}  // namespace qubitline
