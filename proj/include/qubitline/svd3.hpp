#pragma once

// Deterministic 3x3 singular value decomposition via Jacobi diagonalization
// of T^T T.  Singular values come back sorted descending; the sign ambiguity
// is resolved by making the largest-magnitude entry of each left singular
// vector positive, and exact ties in the singular values are broken by
// lexicographic order of the left singular vectors.

#include <algorithm>
#include <array>
#include <cmath>

#include "linalg.hpp"

namespace qubitline {

struct Svd3 {
    Mat3 u, v;
    Vec3 s;  // descending, nonnegative
};

namespace detail {

inline bool lex_greater(Vec3 a, Vec3 b) {
    if (a.x != b.x) return a.x > b.x;
    if (a.y != b.y) return a.y > b.y;
    return a.z > b.z;
}

}  // namespace detail

inline Svd3 svd3(const Mat3& t) {
    Mat3 tt = t.transposed() * t;
    std::array<double, 9> a = tt.m, vecs{};
    jacobi_symmetric<3>(a, vecs, 1e-15);

    std::array<std::size_t, 3> order{0, 1, 2};
    std::array<double, 3> lam{a[0], a[4], a[8]};
    std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return lam[i] > lam[j]; });

    Mat3 vm{{vecs[0], vecs[1], vecs[2], vecs[3], vecs[4], vecs[5], vecs[6], vecs[7], vecs[8]}};
    std::array<Vec3, 3> v, u;
    std::array<double, 3> s;
    for (std::size_t i = 0; i < 3; ++i) {
        v[i] = vm.column(order[i]);
        s[i] = std::sqrt(std::max(lam[order[i]], 0.0));
    }

    // Left singular vectors; for (near) zero singular values complete an
    // orthonormal basis instead of dividing by a vanishing norm.
    double smax = std::max({s[0], s[1], s[2], 1e-300});
    for (std::size_t i = 0; i < 3; ++i) {
        Vec3 tv = t * v[i];
        double n = norm(tv);
        if (n > 1e-13 * std::max(1.0, smax)) {
            u[i] = {tv.x / n, tv.y / n, tv.z / n};
            s[i] = n;
        } else {
            s[i] = 0.0;
            if (i == 2) {
                u[2] = normalized(cross(u[0], u[1]));
            } else {
                Vec3 cand{1, 0, 0};
                for (std::size_t ax = 0; ax < 3; ++ax) {
                    Vec3 w{ax == 0 ? 1.0 : 0.0, ax == 1 ? 1.0 : 0.0, ax == 2 ? 1.0 : 0.0};
                    for (std::size_t j = 0; j < i; ++j) w = w - dot(w, u[j]) * u[j];
                    if (norm(w) > 0.5) {
                        cand = w;
                        break;
                    }
                }
                u[i] = normalized(cand);
            }
        }
    }

    // sign convention
    for (std::size_t i = 0; i < 3; ++i) {
        std::size_t arg = 0;
        for (std::size_t k = 1; k < 3; ++k)
            if (std::abs(u[i][k]) > std::abs(u[i][arg])) arg = k;
        if (u[i][arg] < 0) {
            u[i] = -u[i];
            v[i] = -v[i];
        }
    }
    // tie-break equal singular values
    for (std::size_t i = 0; i + 1 < 3; ++i) {
        if (std::abs(s[i] - s[i + 1]) <= 1e-12 && detail::lex_greater(u[i + 1], u[i])) {
            std::swap(u[i], u[i + 1]);
            std::swap(v[i], v[i + 1]);
            std::swap(s[i], s[i + 1]);
        }
    }

    Svd3 out;
    out.u = Mat3::from_columns(u[0], u[1], u[2]);
    out.v = Mat3::from_columns(v[0], v[1], v[2]);
    out.s = {s[0], s[1], s[2]};
    return out;
}

}  // namespace qubitline
