#pragma once

// Affine channel representation v -> Tv + b, CPTP validation via the Choi
// matrix, the deterministic diagonal (SVD) frame, and ellipsoid geometry:
// support point along an axis and farthest point from a query point.

#include <array>
#include <cmath>
#include <optional>
#include <string>

#include "bloch.hpp"
#include "errors.hpp"
#include "linalg.hpp"
#include "secular.hpp"
#include "svd3.hpp"

namespace qubitline {

struct AffineChannel {
    Mat3 t;
    Vec3 b;

    Vec3 apply(Vec3 v) const { return t * v + b; }

    static AffineChannel identity() { return {Mat3::identity(), {}}; }
    static AffineChannel diagonal(Vec3 s, Vec3 shift) { return {Mat3::diagonal(s), shift}; }
};

/// T = U S V^T with S = diag(a,b,c), a >= b >= c >= 0, and xi = U^T b.
struct DiagonalFrame {
    Mat3 u, v;
    Vec3 s;   // singular values, descending
    Vec3 xi;  // shift in the diagonal frame

    Mat3 t() const { return u * Mat3::diagonal(s) * v.transposed(); }
    Vec3 shift() const { return u * xi; }
    double shift_norm() const { return norm(xi); }
};

inline DiagonalFrame diagonalize(const AffineChannel& ch) {
    Svd3 f = svd3(ch.t);
    DiagonalFrame d;
    d.u = f.u;
    d.v = f.v;
    d.s = f.s;
    d.xi = f.u.transposed() * ch.b;
    return d;
}

struct ChoiReport {
    bool is_cp = false;
    double min_eigenvalue = 0.0;
};

namespace detail {

/// Linear extension of the channel to arbitrary 2x2 complex matrices:
/// Phi(X) = x0 (I + b.sigma) + (T x).sigma  with  X = x0 I + x.sigma.
inline Mat2c apply_to_matrix(const AffineChannel& ch, const Mat2c& x) {
    cplx x0 = 0.5 * x.trace();
    // x_i = tr(X sigma_i)/2, complex in general
    cplx cx = 0.5 * (x(0, 1) + x(1, 0));
    cplx cy = 0.5 * cplx(0, 1) * (x(0, 1) - x(1, 0));
    cplx cz = 0.5 * (x(0, 0) - x(1, 1));

    cplx ox = ch.t(0, 0) * cx + ch.t(0, 1) * cy + ch.t(0, 2) * cz + x0 * ch.b.x;
    cplx oy = ch.t(1, 0) * cx + ch.t(1, 1) * cy + ch.t(1, 2) * cz + x0 * ch.b.y;
    cplx oz = ch.t(2, 0) * cx + ch.t(2, 1) * cy + ch.t(2, 2) * cz + x0 * ch.b.z;

    Mat2c out = x0 * Mat2c::identity();
    out = out + ox * kSigmaX + oy * kSigmaY + oz * kSigmaZ;
    return out;
}

}  // namespace detail

/// Builds the (unnormalized) 4x4 Choi matrix C = sum_ij Phi(E_ij) (x) E_ij
/// and reports its minimum eigenvalue; is_cp <=> min eigenvalue >= -tol.
/// Eigenvalues are obtained by cyclic Jacobi on the real symmetric embedding
/// of the Hermitian matrix.
inline ChoiReport choi_cptp_check(const AffineChannel& ch, double tol = 1e-9) {
    std::array<std::array<cplx, 4>, 4> c{};
    for (std::size_t i = 0; i < 2; ++i) {
        for (std::size_t j = 0; j < 2; ++j) {
            Mat2c e;
            e(i, j) = 1.0;
            Mat2c phi = detail::apply_to_matrix(ch, e);
            for (std::size_t a = 0; a < 2; ++a)
                for (std::size_t b = 0; b < 2; ++b) c[2 * a + i][2 * b + j] = phi(a, b);
        }
    }

    // Hermitian H -> [[Re, -Im], [Im, Re]], eigenvalues doubled up
    std::array<double, 64> m{}, vecs{};
    for (std::size_t r = 0; r < 4; ++r) {
        for (std::size_t q = 0; q < 4; ++q) {
            m[8 * r + q] = c[r][q].real();
            m[8 * (r + 4) + (q + 4)] = c[r][q].real();
            m[8 * r + (q + 4)] = -c[r][q].imag();
            m[8 * (r + 4) + q] = c[r][q].imag();
        }
    }
    jacobi_symmetric<8>(m, vecs, 1e-14);

    double mn = m[0];
    for (std::size_t i = 1; i < 8; ++i) mn = std::min(mn, m[9 * i]);

    ChoiReport rep;
    rep.min_eigenvalue = mn;
    rep.is_cp = mn >= -tol;
    return rep;
}

inline void require_cptp(const AffineChannel& ch, double tol = 1e-9) {
    ChoiReport rep = choi_cptp_check(ch, tol);
    if (!rep.is_cp)
        throw cptp_error("channel is not completely positive (min Choi eigenvalue " +
                             std::to_string(rep.min_eigenvalue) + ")",
                         rep.min_eigenvalue);
}

struct SupportPoint {
    Vec3 w;                       // ellipsoid point maximizing axis.w
    double value = 0.0;           // axis.w = ||T^T axis|| + axis.b
    std::optional<Vec3> v_in;     // unit preimage of w; empty when T^T axis = 0
};

/// Support point of the image ellipsoid in direction `axis` (original
/// coordinates).  When axis lies in the left null space of T the direction
/// is degenerate: value = axis.b and w = b, with no preimage reported.
inline SupportPoint support_point(const DiagonalFrame& frame, Vec3 axis) {
    require_unit_axis(axis);
    Mat3 t = frame.t();
    Vec3 b = frame.shift();
    Vec3 tta = t.transposed() * axis;
    double n = norm(tta);

    SupportPoint sp;
    if (n <= 1e-13) {
        sp.w = b;
        sp.value = dot(axis, b);
        return sp;
    }
    Vec3 vin = {tta.x / n, tta.y / n, tta.z / n};
    sp.v_in = vin;
    sp.w = t * vin + b;
    sp.value = n + dot(axis, b);
    return sp;
}

struct FarthestPoint {
    Vec3 w;                  // ellipsoid surface point farthest from q
    double distance = 0.0;   // ||w - q||
    bool degenerate = false; // continuum of maximizers (hard case)
};

/// Farthest point of the image ellipsoid from `q` (original coordinates).
/// Solved in the diagonal frame by the secular-equation Newton iteration;
/// radii below 1e-12 reduce the dimension; the hard case picks the
/// lexicographically largest solution in the diagonal frame.
inline FarthestPoint farthest_point(const DiagonalFrame& frame, Vec3 q) {
    Vec3 qd = frame.u.transposed() * q;
    Vec3 c = frame.xi - qd;
    auto r = farthest_point_secular<3>({frame.s.x, frame.s.y, frame.s.z}, {c.x, c.y, c.z});
    Vec3 wd = frame.xi + Vec3{r.x[0], r.x[1], r.x[2]};
    FarthestPoint fp;
    fp.w = frame.u * wd;
    fp.distance = r.distance;
    fp.degenerate = r.hard_case;
    return fp;
}

}  // namespace qubitline
