#pragma once

// Small fixed-size real/complex linear algebra used throughout the library.
// Everything is value-semantic; matrices are row-major.

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>

namespace qubitline {

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;

    constexpr double operator[](std::size_t i) const { return i == 0 ? x : (i == 1 ? y : z); }
    double& operator[](std::size_t i) { return i == 0 ? x : (i == 1 ? y : z); }

    friend constexpr Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
    friend constexpr Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
    friend constexpr Vec3 operator*(double s, Vec3 a) { return {s * a.x, s * a.y, s * a.z}; }
    friend constexpr Vec3 operator-(Vec3 a) { return {-a.x, -a.y, -a.z}; }
};

constexpr double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline double norm(Vec3 a) { return std::sqrt(dot(a, a)); }
constexpr Vec3 cross(Vec3 a, Vec3 b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline Vec3 normalized(Vec3 a) {
    double n = norm(a);
    return {a.x / n, a.y / n, a.z / n};
}

struct Mat3 {
    std::array<double, 9> m{};  // row-major

    double operator()(std::size_t r, std::size_t c) const { return m[3 * r + c]; }
    double& operator()(std::size_t r, std::size_t c) { return m[3 * r + c]; }

    static Mat3 identity() { return {{1, 0, 0, 0, 1, 0, 0, 0, 1}}; }
    static Mat3 diagonal(Vec3 d) { return {{d.x, 0, 0, 0, d.y, 0, 0, 0, d.z}}; }
    static Mat3 from_columns(Vec3 a, Vec3 b, Vec3 c) {
        return {{a.x, b.x, c.x, a.y, b.y, c.y, a.z, b.z, c.z}};
    }

    Vec3 column(std::size_t c) const { return {m[c], m[3 + c], m[6 + c]}; }
    Vec3 row(std::size_t r) const { return {m[3 * r], m[3 * r + 1], m[3 * r + 2]}; }

    Mat3 transposed() const {
        Mat3 t;
        for (std::size_t r = 0; r < 3; ++r)
            for (std::size_t c = 0; c < 3; ++c) t(c, r) = (*this)(r, c);
        return t;
    }

    friend Vec3 operator*(const Mat3& a, Vec3 v) {
        return {a.m[0] * v.x + a.m[1] * v.y + a.m[2] * v.z,
                a.m[3] * v.x + a.m[4] * v.y + a.m[5] * v.z,
                a.m[6] * v.x + a.m[7] * v.y + a.m[8] * v.z};
    }
    friend Mat3 operator*(const Mat3& a, const Mat3& b) {
        Mat3 r;
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j) {
                double s = 0;
                for (std::size_t k = 0; k < 3; ++k) s += a(i, k) * b(k, j);
                r(i, j) = s;
            }
        return r;
    }
    friend Mat3 operator*(double s, const Mat3& a) {
        Mat3 r = a;
        for (auto& e : r.m) e *= s;
        return r;
    }
};

inline double max_abs_diff(const Mat3& a, const Mat3& b) {
    double d = 0;
    for (std::size_t i = 0; i < 9; ++i) d = std::max(d, std::abs(a.m[i] - b.m[i]));
    return d;
}

using cplx = std::complex<double>;

/// 2x2 complex matrix, row-major.
struct Mat2c {
    std::array<cplx, 4> m{};

    cplx operator()(std::size_t r, std::size_t c) const { return m[2 * r + c]; }
    cplx& operator()(std::size_t r, std::size_t c) { return m[2 * r + c]; }

    static Mat2c identity() { return {{cplx(1), cplx(0), cplx(0), cplx(1)}}; }

    friend Mat2c operator+(const Mat2c& a, const Mat2c& b) {
        Mat2c r;
        for (std::size_t i = 0; i < 4; ++i) r.m[i] = a.m[i] + b.m[i];
        return r;
    }
    friend Mat2c operator-(const Mat2c& a, const Mat2c& b) {
        Mat2c r;
        for (std::size_t i = 0; i < 4; ++i) r.m[i] = a.m[i] - b.m[i];
        return r;
    }
    friend Mat2c operator*(cplx s, const Mat2c& a) {
        Mat2c r = a;
        for (auto& e : r.m) e *= s;
        return r;
    }
    friend Mat2c operator*(const Mat2c& a, const Mat2c& b) {
        Mat2c r;
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 2; ++j)
                r(i, j) = a(i, 0) * b(0, j) + a(i, 1) * b(1, j);
        return r;
    }

    Mat2c adjoint() const {
        Mat2c r;
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 2; ++j) r(i, j) = std::conj((*this)(j, i));
        return r;
    }
    cplx trace() const { return m[0] + m[3]; }
};

inline const Mat2c kSigmaX{{cplx(0), cplx(1), cplx(1), cplx(0)}};
inline const Mat2c kSigmaY{{cplx(0), cplx(0, -1), cplx(0, 1), cplx(0)}};
inline const Mat2c kSigmaZ{{cplx(1), cplx(0), cplx(0), cplx(-1)}};

/// Cyclic Jacobi diagonalization of a symmetric NxN matrix.
/// On return `a` is (numerically) diagonal and `vecs` holds the eigenvectors
/// as columns, so that  A = V diag(a) V^T.  Iterates until the off-diagonal
/// Frobenius norm drops below `tol` times the matrix norm.
template <std::size_t N>
void jacobi_symmetric(std::array<double, N * N>& a, std::array<double, N * N>& vecs,
                      double tol = 1e-14) {
    auto at = [&](std::size_t r, std::size_t c) -> double& { return a[N * r + c]; };
    auto vt = [&](std::size_t r, std::size_t c) -> double& { return vecs[N * r + c]; };

    for (std::size_t i = 0; i < N * N; ++i) vecs[i] = 0;
    for (std::size_t i = 0; i < N; ++i) vt(i, i) = 1;

    double scale = 0;
    for (std::size_t i = 0; i < N; ++i) scale = std::max(scale, std::abs(at(i, i)));
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j) scale = std::max(scale, std::abs(at(i, j)));
    if (scale == 0) return;

    for (int sweep = 0; sweep < 64; ++sweep) {
        double off = 0;
        for (std::size_t p = 0; p < N; ++p)
            for (std::size_t q = p + 1; q < N; ++q) off += at(p, q) * at(p, q);
        if (std::sqrt(off) <= tol * scale) break;

        for (std::size_t p = 0; p < N; ++p) {
            for (std::size_t q = p + 1; q < N; ++q) {
                double apq = at(p, q);
                if (std::abs(apq) <= 1e-300) continue;
                double theta = (at(q, q) - at(p, p)) / (2 * apq);
                double t = (theta >= 0 ? 1.0 : -1.0) /
                           (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0);
                double s = t * c;

                for (std::size_t k = 0; k < N; ++k) {
                    double akp = at(k, p), akq = at(k, q);
                    at(k, p) = c * akp - s * akq;
                    at(k, q) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < N; ++k) {
                    double apk = at(p, k), aqk = at(q, k);
                    at(p, k) = c * apk - s * aqk;
                    at(q, k) = s * apk + c * aqk;
                }
                for (std::size_t k = 0; k < N; ++k) {
                    double vkp = vt(k, p), vkq = vt(k, q);
                    vt(k, p) = c * vkp - s * vkq;
                    vt(k, q) = s * vkp + c * vkq;
                }
            }
        }
    }
}

}  // namespace qubitline
