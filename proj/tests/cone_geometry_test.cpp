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

#include "conefact/cone.hpp"
#include "conefact/sampling.hpp"
#include "conefact/serialize.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <gtest/gtest.h>

using namespace conefact;

namespace {

using Quad = boost::multiprecision::cpp_bin_float_quad;

ConeSpec cone2(int64_t px, int64_t py, int64_t tx, int64_t ty, Rational c) { return ConeSpec(IVec{px, py}, {tx, ty}, c); }

// Signed angular distance of x from the boundary of the cone, in quad precision.
Quad boundary_margin(const ConeSpec &cone, const IVec &x) {
    Quad lin = 0, ny = 0, nt = 0;
    for (size_t i = 0; i < x.size(); i++) {
        Quad y = Quad(x[i]) - Quad(to_double(cone.apex()[i]));
        lin += y * cone.axis()[i];
        ny += y * y;
        nt += Quad(cone.axis()[i]) * cone.axis()[i];
    }
    if (ny == 0) {
        return 0;
    }
    Quad ang = acos(lin / sqrt(ny * nt));
    return acos(Quad(to_double(cone.cos()))) - ang;
}

std::vector<IVec> scan_both(const ConeSpec &a, const ConeSpec &b, int64_t radius) {
    std::vector<IVec> out;
    LatticeWindow::box(a.dim(), radius).for_each([&](const IVec &x) {
        if (a.contains(x) && b.contains(x)) {
            out.push_back(x);
        }
        return true;
    });
    return out;
}

bool scan_subset(const ConeSpec &inner, const ConeSpec &outer, int64_t radius) {
    return LatticeWindow::box(inner.dim(), radius).for_each([&](const IVec &x) { return !inner.contains(x) || outer.contains(x); });
}

}  // namespace

TEST(cone_geometry, contains_point_half_plane) {
    ConeSpec h = cone2(0, 0, 1, 0, 0);
    EXPECT_TRUE(h.contains(IVec{3, 1}));
    EXPECT_FALSE(h.contains(IVec{0, 5}));
    EXPECT_FALSE(cone2(2, 2, 1, 0, 0).contains(IVec{2, 2}));
}

TEST(cone_geometry, contains_point_rejects_dimension_mismatch) {
    EXPECT_THROW(cone2(0, 0, 1, 0, 0).contains(IVec{1, 2, 3}), std::invalid_argument);
}

TEST(cone_geometry, constructor_validates) {
    EXPECT_THROW(cone2(0, 0, 0, 0, 0), std::invalid_argument);
    EXPECT_THROW(cone2(0, 0, 1, 0, 1), std::invalid_argument);
    EXPECT_THROW(cone2(0, 0, 1, 0, -1), std::invalid_argument);
    EXPECT_THROW(ConeSpec(IVec{0, 0}, {1, 0, 0}, Rational(0)), std::invalid_argument);
}

TEST(cone_geometry, canonical_form) {
    EXPECT_EQ(cone2(0, 0, 2, 4, rat(1, 2)), cone2(0, 0, 1, 2, rat(1, 2)));
    EXPECT_EQ(cone2(0, 7, 1, 0, 0), cone2(0, -3, 1, 0, 0));
    EXPECT_NE(cone2(0, 7, 1, 0, rat(1, 10)), cone2(0, -3, 1, 0, rat(1, 10)));
    EXPECT_EQ(cone2(0, 7, 1, 0, 0).apex(), (QVec{0, 0}));
}

TEST(cone_geometry, lattice_points_half_plane_window) {
    auto pts = lattice_points(cone2(0, 0, 1, 0, 0), LatticeWindow({0, 0}, {2, 2}));
    std::vector<IVec> expected = {{1, 0}, {1, 1}, {1, 2}, {2, 0}, {2, 1}, {2, 2}};
    EXPECT_EQ(pts, expected);
    EXPECT_TRUE(lattice_points(cone2(0, 0, 1, 0, 0), LatticeWindow({-5, -5}, {-1, 5})).empty());
}

TEST(cone_geometry, lattice_points_narrow_cone_frozen) {
    // x > 0 and 25 x^2 > 9 (x^2 + y^2); columns x = 1..4 hold 3, 5, 7, 9 points.
    auto pts = lattice_points(cone2(0, 0, 1, 0, rat(3, 5)), LatticeWindow::box(2, 4));
    std::vector<IVec> expected;
    for (int64_t x = -4; x <= 4; x++) {
        for (int64_t y = -4; y <= 4; y++) {
            if (x > 0 && 25 * x * x > 9 * (x * x + y * y)) {
                expected.push_back({x, y});
            }
        }
    }
    EXPECT_EQ(pts, expected);
    EXPECT_EQ(pts.size(), 24u);
}

TEST(cone_geometry, lattice_window_count_and_order) {
    LatticeWindow w({-1, 0, 2}, {1, 3, 2});
    EXPECT_EQ(w.count(), 12u);
    std::vector<IVec> seen;
    w.for_each([&](const IVec &x) {
        seen.push_back(x);
        return true;
    });
    EXPECT_EQ(seen.size(), 12u);
    EXPECT_TRUE(std::is_sorted(seen.begin(), seen.end()));
    EXPECT_THROW(LatticeWindow({1}, {0}), std::invalid_argument);
}

TEST(cone_geometry, membership_agrees_with_quad_precision) {
    Rng rng(7);
    int checked = 0;
    while (checked < 10000) {
        size_t dim = 2 + uniform_int(rng, 0, 1);
        IVec apex(dim);
        QVec qapex(dim);
        for (size_t i = 0; i < dim; i++) {
            qapex[i] = Rational(uniform_int(rng, -40, 40), uniform_int(rng, 1, 4));
        }
        ConeSpec c(qapex, random_axis(rng, dim), Rational(uniform_int(rng, -99, 99), 100));
        IVec x(dim);
        for (auto &v : x) {
            v = uniform_int(rng, -60, 60);
        }
        Quad m = boundary_margin(c, x);
        if (abs(m) < Quad(1e-6)) {
            continue;
        }
        ASSERT_EQ(c.contains(x), m > 0) << c;
        checked++;
    }
}

TEST(cone_geometry, big_coordinates_use_exact_fallback) {
    ConeSpec c(QVec{Rational(1, 3), Rational(0)}, {1, 1}, rat(999999, 1000000));
    int64_t big = int64_t(1) << 60;
    EXPECT_TRUE(c.contains(IVec{big, big}));
    EXPECT_FALSE(c.contains(IVec{big, big - (int64_t(1) << 55)}));
    EXPECT_EQ(c.contains(IVec{big, big}), c.contains(QVec{Rational(big), Rational(big)}));
}

TEST(cone_geometry, complement_witness_examples) {
    EXPECT_EQ(complement_witness(cone2(0, 0, 1, 0, 0)), cone2(0, 0, -1, 0, 0));
    EXPECT_EQ(complement_witness(cone2(0, 0, 0, 1, rat(3, 5))), cone2(0, 0, 0, -1, rat(-3, 5)));
}

TEST(cone_geometry, complement_soundness_random) {
    Rng rng(11);
    for (int i = 0; i < 60; i++) {
        ConeSpec u = random_cone(rng, 2, 10);
        ConeSpec v = complement_witness(u);
        EXPECT_TRUE(scan_both(u, v, 20).empty()) << u;
    }
    ConeSpec u = cone2(1, 0, 2, 1, rat(1, 2));
    EXPECT_TRUE(scan_both(u, complement_witness(u), 20).empty());
}

TEST(cone_geometry, shrink_witness_examples) {
    ConeSpec a = shrink_witness(cone2(0, 0, 1, 0, 0), QVec{0, 0}, {1, 0}, rat(3, 5));
    EXPECT_EQ(a, cone2(0, 0, 1, 0, rat(3, 5)));
    ConeSpec outer = cone2(0, 0, 1, 0, rat(1, 2));
    ConeSpec b = shrink_witness(outer, QVec{4, 1}, {1, 0}, rat(9, 10));
    EXPECT_TRUE(scan_subset(b, outer, 30));
    try {
        shrink_witness(outer, QVec{0, 0}, {0, 1}, rat(9, 10));
        FAIL();
    } catch (const PreconditionError &e) {
        EXPECT_EQ(e.which, "angle(t,u) < alpha");
    }
    try {
        shrink_witness(outer, QVec{-1, 0}, {1, 0}, rat(9, 10));
        FAIL();
    } catch (const PreconditionError &e) {
        EXPECT_EQ(e.which, "q in closure(outer)");
    }
    try {
        shrink_witness(outer, QVec{0, 0}, {1, 0}, rat(1, 2));
        FAIL();
    } catch (const PreconditionError &e) {
        EXPECT_EQ(e.which, "beta < alpha - angle(t,u)");
    }
}

// The three angle conditions alone do not make a subcone of a non-convex cone.
TEST(cone_geometry, shrink_witness_certifies_non_convex_outer) {
    ConeSpec outer = cone2(6, -5, -7, 6, rat(-4, 5));
    ConeSpec sub = cone2(9, -4, -5, 2, rat(-1, 2));
    EXPECT_TRUE(outer.closure_contains(sub.apex()));
    EXPECT_LT(cmp_angle(outer.axis(), sub.axis(), outer.cos()), 0);
    EXPECT_LT(cmp_angle_diff(outer.axis(), sub.axis(), outer.cos(), sub.cos()), 0);
    EXPECT_FALSE(scan_subset(sub, outer, 20));
    try {
        shrink_witness(outer, sub.apex(), sub.axis(), sub.cos());
        FAIL();
    } catch (const PreconditionError &e) {
        EXPECT_EQ(e.which, "cone (q,u,beta) inside outer");
    }
}

TEST(cone_geometry, eventual_containment_examples) {
    ConeSpec target = cone2(0, 0, 1, 0, rat(1, 2));
    auto r = eventual_containment(target, QVec{0, 10}, {1, 0});
    // lambda > 10/sqrt(3): lambda^2 > 100/3
    EXPECT_GT(r.lambda_star * r.lambda_star, Rational(100, 3));
    int64_t oracle = -1;
    for (int64_t lam = 20; lam >= 0; lam--) {
        if (!target.contains(IVec{lam, 10})) {
            oracle = lam + 1;
            break;
        }
    }
    EXPECT_EQ(oracle, 6);
    EXPECT_EQ(r.min_integer, oracle);

    auto inside = eventual_containment(target, QVec{3, 0}, {1, 0});
    EXPECT_EQ(inside.lambda_star, 0);
    EXPECT_EQ(inside.min_integer, 0);

    auto half = eventual_containment(cone2(0, 0, 1, 0, 0), QVec{-5, 0}, {1, 0});
    EXPECT_GT(half.lambda_star, 5);
    EXPECT_LE(half.lambda_star, Rational(5) + Rational(1, 1024));
    EXPECT_EQ(half.min_integer, 6);
    EXPECT_FALSE(cone2(0, 0, 1, 0, 0).contains(IVec{0, 0}));

    EXPECT_THROW(eventual_containment(target, QVec{0, 0}, {0, 1}), PreconditionError);
}

TEST(cone_geometry, eventual_containment_is_sound_beyond_probes) {
    Rng rng(5);
    for (int i = 0; i < 300; i++) {
        ConeSpec target = random_cone(rng, 2, 10);
        IVec u = random_axis(rng, 2);
        if (cmp_angle(target.axis(), u, target.cos()) >= 0) {
            continue;
        }
        QVec q = {Rational(uniform_int(rng, -20, 20)), Rational(uniform_int(rng, -20, 20), 3)};
        auto r = eventual_containment(target, q, u);
        for (int k = 0; k < 200; k++) {
            Rational lam = r.lambda_star + Rational(k * k, 7);
            ASSERT_TRUE(target.contains(axpy(q, lam, u))) << target;
        }
        for (int64_t m = r.min_integer; m < r.min_integer + 50; m++) {
            ASSERT_TRUE(target.contains(axpy(q, Rational(m), u)));
        }
        if (r.min_integer > 0) {
            EXPECT_FALSE(target.contains(axpy(q, Rational(r.min_integer - 1), u)));
        }
    }
}

TEST(cone_geometry, disjoint_examples) {
    EXPECT_EQ(disjoint(cone2(0, 0, 1, 0, 0), cone2(0, 0, -1, 0, 0)).verdict, Verdict::yes);
    auto q = disjoint(cone2(0, 0, 1, 0, 0), cone2(0, 0, 0, 1, 0));
    EXPECT_EQ(q.verdict, Verdict::no);
    ASSERT_TRUE(q.witness);
    EXPECT_TRUE(cone2(0, 0, 1, 0, 0).contains(*q.witness) && cone2(0, 0, 0, 1, 0).contains(*q.witness));
    ConeSpec a = cone2(0, 0, 1, 0, rat(3, 5));
    ConeSpec b = cone2(0, 0, 0, 1, rat(4, 5));
    EXPECT_EQ(disjoint(a, b).verdict, Verdict::yes);
    EXPECT_TRUE(scan_both(a, b, 100).empty());
    EXPECT_THROW(disjoint(a, ConeSpec(IVec{0, 0, 0}, {1, 0, 0}, Rational(0))), std::invalid_argument);
}

TEST(cone_geometry, disjoint_half_plane_strips) {
    // 0 < x < 1 has no lattice point; 0 < x < 2 has x = 1.
    EXPECT_EQ(disjoint(cone2(0, 0, 1, 0, 0), cone2(1, 0, -1, 0, 0)).verdict, Verdict::yes);
    auto r = disjoint(cone2(0, 0, 1, 0, 0), cone2(2, 0, -1, 0, 0));
    ASSERT_EQ(r.verdict, Verdict::no);
    EXPECT_EQ((*r.witness)[0], 1);
    // slanted strip 0 < 2x + 3y < 1 versus 0 < 2x + 3y < 2
    EXPECT_EQ(disjoint(cone2(0, 0, 2, 3, 0), ConeSpec(QVec{Rational(1, 2), 0}, {-2, -3}, Rational(0))).verdict,
              Verdict::yes);
    auto s = disjoint(cone2(0, 0, 2, 3, 0), cone2(1, 0, -2, -3, 0));
    ASSERT_EQ(s.verdict, Verdict::no);
    EXPECT_EQ(2 * (*s.witness)[0] + 3 * (*s.witness)[1], 1);
}

TEST(cone_geometry, disjoint_three_dimensional) {
    ConeSpec a(IVec{0, 0, 0}, {0, 0, 1}, rat(1, 2));
    ConeSpec b(IVec{0, 0, 0}, {0, 0, -1}, rat(1, 2));
    EXPECT_EQ(disjoint(a, b).verdict, Verdict::yes);
    ConeSpec c(IVec{0, 0, 0}, {1, 0, 1}, rat(1, 2));
    auto r = disjoint(a, c);
    ASSERT_EQ(r.verdict, Verdict::no);
    EXPECT_TRUE(a.contains(*r.witness) && c.contains(*r.witness));
    // convex versus non-convex with distinct apexes is exact in any dimension
    ConeSpec wide(IVec{0, 0, 0}, {0, 0, 1}, rat(-1, 2));
    EXPECT_EQ(disjoint(ConeSpec(IVec{0, 0, -5}, {0, 0, -1}, rat(1, 2)), wide).verdict, Verdict::yes);
    auto hit = disjoint(ConeSpec(IVec{0, 0, 5}, {0, 0, -1}, rat(1, 2)), wide);
    ASSERT_EQ(hit.verdict, Verdict::no);
    EXPECT_TRUE(wide.contains(*hit.witness));
}

// Soundness of every answer against an exhaustive window scan.
TEST(cone_geometry, disjoint_sound_on_random_pairs) {
    Rng rng(3);
    int yes = 0, no = 0;
    for (int i = 0; i < 400; i++) {
        ConeSpec a = random_cone(rng, 2, 12);
        ConeSpec b = random_cone(rng, 2, 12);
        auto r = disjoint(a, b);
        if (r.verdict == Verdict::yes) {
            yes++;
            EXPECT_TRUE(scan_both(a, b, 100).empty()) << a << " " << b;
        } else if (r.verdict == Verdict::no) {
            no++;
            ASSERT_TRUE(r.witness);
            EXPECT_TRUE(a.contains(*r.witness) && b.contains(*r.witness));
        }
    }
    EXPECT_GT(yes, 0);
    EXPECT_GT(no, 0);
}

TEST(cone_geometry, disjoint_convex_pairs_decided_in_plane) {
    Rng rng(4);
    for (int i = 0; i < 300; i++) {
        ConeSpec a = random_convex_cone(rng, 2, 15);
        ConeSpec b = random_convex_cone(rng, 2, 15);
        auto r = disjoint(a, b);
        int arc = cmp_angle_sum(a.axis(), b.axis(), a.cos(), b.cos());
        if (arc != 0) {
            EXPECT_NE(r.verdict, Verdict::unknown) << a << " " << b;
        }
        if (r.verdict == Verdict::yes) {
            EXPECT_TRUE(scan_both(a, b, 60).empty()) << a << " " << b;
        }
    }
}

TEST(cone_geometry, separated_cones_with_bounded_overlap) {
    // Two convex cones facing each other: the intersection is a bounded quadrilateral.
    ConeSpec a = cone2(0, 0, 1, 0, rat(1, 2));
    ConeSpec b = cone2(10, 0, -1, 0, rat(1, 2));
    auto r = disjoint(a, b);
    ASSERT_EQ(r.verdict, Verdict::no);
    auto common = scan_both(a, b, 30);
    EXPECT_FALSE(common.empty());
    // Narrow enough that the overlap misses every lattice point.
    ConeSpec c = ConeSpec(QVec{0, Rational(1, 2)}, {1, 0}, rat(99, 100));
    ConeSpec d = ConeSpec(QVec{3, Rational(1, 2)}, {-1, 0}, rat(99, 100));
    EXPECT_EQ(r_disjoint(c, d), Verdict::no);
    EXPECT_EQ(disjoint(c, d).verdict, Verdict::yes);
    EXPECT_TRUE(scan_both(c, d, 50).empty());
}

TEST(cone_geometry, contained_relations) {
    ConeSpec h = cone2(0, 0, 1, 0, 0);
    EXPECT_EQ(contained(cone2(1, 0, 1, 0, rat(1, 2)), h).verdict, Verdict::yes);
    auto r = contained(h, cone2(1, 0, 1, 0, rat(1, 2)));
    ASSERT_EQ(r.verdict, Verdict::no);
    EXPECT_TRUE(h.contains(*r.witness));
    // convex inside non-convex: quadrant cone far from the removed wedge
    ConeSpec wide = cone2(0, 0, 1, 0, rat(-1, 2));
    EXPECT_EQ(contained(cone2(0, 5, 0, 1, rat(9, 10)), wide).verdict, Verdict::yes);
    EXPECT_EQ(contained(cone2(-5, 0, -1, 0, rat(9, 10)), wide).verdict, Verdict::no);
}

TEST(cone_geometry, contained_sound_on_random_pairs) {
    Rng rng(9);
    for (int i = 0; i < 300; i++) {
        ConeSpec a = random_cone(rng, 2, 10);
        ConeSpec b = random_cone(rng, 2, 10);
        auto r = contained(a, b);
        if (r.verdict == Verdict::yes) {
            EXPECT_TRUE(scan_subset(a, b, 50)) << a << " " << b;
        } else if (r.verdict == Verdict::no) {
            EXPECT_TRUE(a.contains(*r.witness) && !b.contains(*r.witness));
        }
    }
}

TEST(cone_geometry, enlargement_examples) {
    ConeSpec h = cone2(0, 0, 1, 0, 0);
    auto same = enlargement_witness(h, h);
    EXPECT_EQ(same.v_prime, h);
    EXPECT_EQ(same.w, h);

    auto check = [](const ConeSpec &u, const ConeSpec &v) {
        auto e = enlargement_witness(u, v);
        EXPECT_TRUE(scan_subset(e.v_prime, v, 50)) << u << " " << v;
        EXPECT_TRUE(scan_subset(u, e.w, 50)) << u << " " << v;
        EXPECT_TRUE(scan_subset(e.v_prime, e.w, 50)) << u << " " << v;
        EXPECT_FALSE(lattice_points(e.v_prime, LatticeWindow::box(2, 400)).empty());
    };
    check(cone2(0, 0, 1, 0, rat(1, 2)), cone2(0, 0, -1, 0, rat(1, 2)));
    check(cone2(0, 0, 1, 0, rat(1, 2)), cone2(10, 0, 0, 1, rat(1, 2)));
}

TEST(cone_geometry, separation_examples) {
    ConeSpec u = cone2(0, 0, 1, 0, 0);
    EXPECT_EQ(separation_witness(u, {}), u);
    std::vector<ConeSpec> others = {cone2(0, 6, 0, 1, rat(1, 2)), cone2(0, -6, 0, -1, rat(1, 2))};
    ConeSpec v = separation_witness(u, others);
    EXPECT_TRUE(scan_subset(v, u, 60));
    int meets = 0;
    for (const auto &o : others) {
        meets += scan_both(v, o, 60).empty() ? 0 : 1;
    }
    EXPECT_LE(meets, 1);

    ConeSpec narrow = cone2(0, 0, 1, 0, rat(9, 10));
    ConeSpec w = separation_witness(cone2(0, 0, 1, 0, rat(1, 2)), {narrow});
    EXPECT_TRUE(scan_subset(w, narrow, 60));
    EXPECT_TRUE(scan_subset(w, cone2(0, 0, 1, 0, rat(1, 2)), 60));

    EXPECT_THROW(separation_witness(u, {cone2(0, 0, 1, 0, 0), cone2(0, 0, 0, 1, 0)}), std::invalid_argument);
}

TEST(cone_geometry, witnesses_sound_on_random_configurations) {
    Rng rng(2026);
    int configs = 0;
    while (configs < 200) {
        ConeSpec u = random_cone(rng, 2, 8);
        ConeSpec v = random_cone(rng, 2, 8);
        auto e = enlargement_witness(u, v);
        ASSERT_TRUE(scan_subset(e.v_prime, v, 50)) << u << " " << v;
        ASSERT_TRUE(scan_subset(u, e.w, 50)) << u << " " << v;
        ASSERT_TRUE(scan_subset(e.v_prime, e.w, 50)) << u << " " << v;

        auto s = random_subcone(rng, u, 3);
        if (s) {
            ASSERT_TRUE(scan_subset(*s, u, 50)) << *s << " in " << u;
        }

        ConeSpec o1 = random_cone(rng, 2, 8);
        ConeSpec o2 = random_cone(rng, 2, 8);
        if (disjoint(o1, o2).verdict == Verdict::yes) {
            ConeSpec sep = separation_witness(u, {o1, o2});
            ASSERT_TRUE(scan_subset(sep, u, 50)) << u;
            int meets = (scan_both(sep, o1, 50).empty() ? 0 : 1) + (scan_both(sep, o2, 50).empty() ? 0 : 1);
            ASSERT_LE(meets, 1) << u << " " << o1 << " " << o2;
        }
        configs++;
    }
}

TEST(cone_geometry, every_cone_has_lattice_points) {
    Rng rng(13);
    for (int i = 0; i < 200; i++) {
        ConeSpec c = random_cone(rng, 2, 20);
        bool found = false;
        LatticeWindow::box(2, 200).for_each([&](const IVec &x) {
            found = c.contains(x);
            return !found;
        });
        EXPECT_TRUE(found) << c;
    }
}

TEST(cone_geometry, json_round_trip) {
    ConeSpec c(QVec{Rational(1, 3), Rational(-2)}, {3, 6}, rat(-7, 10));
    Json j = cone_to_json(c);
    EXPECT_EQ(j.dump(), R"({"apex":[[1,3],[-2,1]],"axis":[1,2],"cos":[-7,10],"dim":2})");
    EXPECT_EQ(cone_from_json(j), c);
}
