// Copyright 2026 The conefact Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "conefact/cone.hpp"

#include <random>
#include <string_view>

namespace conefact {

using Rng = std::mt19937_64;

/// Derives an independent stream seed for a named check from a base seed.
inline uint64_t stream_seed(uint64_t base, std::string_view name) {
    uint64_t h = 1469598103934665603ULL;
    for (char ch : name) {
        h = (h ^ static_cast<unsigned char>(ch)) * 1099511628211ULL;
    }
    uint64_t z = base + 0x9e3779b97f4a7c15ULL * (h | 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline int64_t uniform_int(Rng &rng, int64_t lo, int64_t hi) {
    return std::uniform_int_distribution<int64_t>(lo, hi)(rng);
}

/// Primitive integer vector with entries in [-bound, bound].
inline IVec random_axis(Rng &rng, size_t dim, int64_t bound = 8) {
    while (true) {
        IVec t(dim);
        for (auto &x : t) {
            x = uniform_int(rng, -bound, bound);
        }
        if (!is_zero(t) && gcd_of(t) == 1) {
            return t;
        }
    }
}

/// A value of the grid {-9/10, -8/10, ..., 9/10}.
inline Rational random_grid_cos(Rng &rng) { return Rational(uniform_int(rng, -9, 9), 10); }

/// Cone with integer apex in [-radius, radius]^dim, primitive axis and grid cosine.
inline ConeSpec random_cone(Rng &rng, size_t dim, int64_t radius) {
    IVec apex(dim);
    for (auto &x : apex) {
        x = uniform_int(rng, -radius, radius);
    }
    return ConeSpec(apex, random_axis(rng, dim), random_grid_cos(rng));
}

/// Random convex cone (cosine in {1/10, ..., 9/10}).
inline ConeSpec random_convex_cone(Rng &rng, size_t dim, int64_t radius) {
    IVec apex(dim);
    for (auto &x : apex) {
        x = uniform_int(rng, -radius, radius);
    }
    return ConeSpec(apex, random_axis(rng, dim), Rational(uniform_int(rng, 1, 9), 10));
}

/// Random subcone of `outer`: apex on a lattice point of the closure near a
/// random point of the outer axis ray (up to `reach` away), axis within the
/// outer half-angle, half-angle that fits.
/// Returns nullopt when the draw does not satisfy the shrink preconditions.
inline std::optional<ConeSpec> random_subcone(Rng &rng, const ConeSpec &outer, int64_t spread, int64_t reach = 0) {
    int64_t steps = 0;
    if (reach > 0) {
        int64_t longest = 1;
        for (auto a : outer.axis()) {
            longest = std::max(longest, std::abs(a));
        }
        steps = uniform_int(rng, 0, std::max<int64_t>(1, reach / longest));
    }
    IVec q(outer.dim());
    for (size_t i = 0; i < outer.dim(); i++) {
        q[i] = static_cast<int64_t>(std::llround(to_double(outer.apex()[i]))) + steps * outer.axis()[i] +
               uniform_int(rng, -spread, spread);
    }
    if (!outer.closure_contains(IVec(q))) {
        return std::nullopt;
    }
    IVec u;
    for (int attempt = 0; attempt < 8 && u.empty(); attempt++) {
        IVec cand = random_axis(rng, outer.dim());
        if (attempt % 2 == 1) {
            int64_t m = uniform_int(rng, 1, 4);
            for (size_t i = 0; i < cand.size(); i++) {
                cand[i] = m * outer.axis()[i] + uniform_int(rng, -3, 3);
            }
            if (is_zero(cand)) {
                continue;
            }
            int64_t g = gcd_of(cand);
            for (auto &x : cand) {
                x /= g;
            }
        }
        double slack = outer.half_angle() - detail::angle_between(outer.axis(), cand);
        if (slack > 1e-9 || (slack > -1e-9 && cmp_angle(outer.axis(), cand, outer.cos()) < 0)) {
            u = cand;
        }
    }
    if (u.empty()) {
        return std::nullopt;
    }
    // Floating-point prefilter; exact only near the boundary, and shrink_witness re-verifies.
    double room = outer.half_angle() - detail::angle_between(outer.axis(), u);
    std::vector<Rational> fitting;
    for (int k = -9; k <= 9; k++) {
        Rational c(k, 10);
        double beta = std::acos(k / 10.0);
        if (c <= outer.cos() || beta > room + 1e-9) {
            continue;
        }
        if (beta > room - 1e-9 && cmp_angle_diff(outer.axis(), u, outer.cos(), c) >= 0) {
            continue;
        }
        fitting.push_back(c);
    }
    if (fitting.empty()) {
        return std::nullopt;
    }
    // Biased towards narrow subcones so that siblings are often disjoint.
    int64_t n = static_cast<int64_t>(fitting.size());
    Rational c = fitting[static_cast<size_t>(uniform_int(rng, n / 2, n - 1))];
    try {
        return shrink_witness(outer, to_qvec(q), u, c);
    } catch (const PreconditionError &) {
        return std::nullopt;
    }
}

}  // namespace conefact
