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

#include "conefact/lattice.hpp"
#include "conefact/sampling.hpp"

#include <gtest/gtest.h>

using namespace conefact;

namespace {

PauliString random_pauli(Rng &rng, size_t n) {
    PauliString p(n);
    for (size_t q = 0; q < n; q++) {
        p.set_x(q, uniform_int(rng, 0, 1));
        p.set_z(q, uniform_int(rng, 0, 1));
    }
    p.phase = static_cast<uint8_t>(uniform_int(rng, 0, 3));
    return p;
}

bool dense_equal(const DenseMatrix &a, const DenseMatrix &b) { return (a - b).cwiseAbs().maxCoeff() < 1e-12; }

}  // namespace

TEST(local_net, single_qubit_table) {
    auto x = PauliString::single(1, 0, 'X');
    auto z = PauliString::single(1, 0, 'Z');
    auto y = PauliString::single(1, 0, 'Y');
    PauliString xz = pauli_mul(x, z);
    // X Z = -i Y
    PauliString minus_i_y = y;
    minus_i_y.phase = static_cast<uint8_t>((y.phase + 3) & 3);
    EXPECT_EQ(xz, minus_i_y);
    EXPECT_EQ(xz.str(), "-iY(e0)");
    EXPECT_EQ(y.str(), "+Y(e0)");
    EXPECT_EQ(pauli_mul(z, x).str(), "+iY(e0)");
    Eigen::Matrix2cd sy;
    sy << 0, std::complex<double>(0, -1), std::complex<double>(0, 1), 0;
    EXPECT_TRUE(dense_equal(dense_matrix(y), sy));
    EXPECT_TRUE(dense_equal(dense_matrix(xz), std::complex<double>(0, -1) * sy));
}

TEST(local_net, inverse_and_unit) {
    Rng rng(1);
    for (int i = 0; i < 100; i++) {
        PauliString a = random_pauli(rng, 70);
        EXPECT_EQ(pauli_mul(a, pauli_inverse(a)), PauliString::identity(70));
        EXPECT_EQ(pauli_mul(PauliString::identity(70), a), a);
        PauliString a4 = pauli_mul(pauli_mul(a, a), pauli_mul(a, a));
        EXPECT_EQ(a4, PauliString::identity(70));
    }
}

TEST(local_net, associativity) {
    Rng rng(2);
    for (int i = 0; i < 200; i++) {
        PauliString a = random_pauli(rng, 130), b = random_pauli(rng, 130), c = random_pauli(rng, 130);
        EXPECT_EQ(pauli_mul(pauli_mul(a, b), c), pauli_mul(a, pauli_mul(b, c)));
    }
}

TEST(local_net, window_mismatch) {
    EXPECT_THROW(pauli_mul(PauliString(3), PauliString(4)), std::invalid_argument);
    EXPECT_THROW(commutes(PauliString(3), PauliString(4)), std::invalid_argument);
}

TEST(local_net, rendering) {
    PauliString p(6);
    p.set_x(1, true);
    p.set_z(5, true);
    EXPECT_EQ(p.str(), "+X(e1)Z(e5)");
    EXPECT_EQ(p.hex(), "phase=0 x=2 z=20");
    EXPECT_EQ(PauliString(3).str(), "+I");
}

TEST(local_net, dense_oracle_products) {
    Rng rng(3);
    for (int i = 0; i < 200; i++) {
        size_t n = static_cast<size_t>(uniform_int(rng, 1, 10));
        PauliString a = random_pauli(rng, n), b = random_pauli(rng, n);
        EXPECT_TRUE(dense_equal(dense_multiply(dense_matrix(a), dense_matrix(b)), dense_matrix(pauli_mul(a, b))));
    }
}

TEST(local_net, dense_oracle_commutation) {
    Rng rng(4);
    int anti = 0;
    for (int i = 0; i < 200; i++) {
        size_t n = static_cast<size_t>(uniform_int(rng, 1, 10));
        PauliString a = random_pauli(rng, n), b = random_pauli(rng, n);
        DenseMatrix ma = dense_matrix(a), mb = dense_matrix(b);
        bool dense_commute = dense_equal(dense_multiply(ma, mb), dense_multiply(mb, ma));
        EXPECT_EQ(commutes(a, b), dense_commute);
        anti += dense_commute ? 0 : 1;
    }
    EXPECT_GT(anti, 20);
}

TEST(local_net, dense_matrix_examples) {
    EXPECT_TRUE(dense_equal(dense_matrix(PauliString::identity(3)), DenseMatrix::Identity(8, 8)));
    DenseMatrix x1 = dense_matrix(PauliString::single(2, 1, 'X'));
    DenseMatrix expect(4, 4);
    expect << 0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0;
    EXPECT_TRUE(dense_equal(x1, expect));
    PauliString xz = pauli_mul(PauliString::single(4, 0, 'X'), PauliString::single(4, 2, 'Z'));
    EXPECT_TRUE(dense_equal(dense_matrix(xz) * dense_matrix(xz), DenseMatrix::Identity(16, 16)));
    DenseMatrix m = dense_matrix(xz);
    EXPECT_TRUE(dense_equal(m * m.adjoint(), DenseMatrix::Identity(16, 16)));
    EXPECT_THROW(dense_matrix(PauliString(13)), std::invalid_argument);
}

TEST(local_net, block_dense_oracle) {
    Rng rng(5);
    for (int i = 0; i < 30; i++) {
        PauliString a = random_pauli(rng, 40), b = random_pauli(rng, 40);
        PauliString comm = pauli_mul(pauli_mul(a, b), pauli_mul(pauli_inverse(a), pauli_inverse(b)));
        auto s = dense_product_scalar({a, b, pauli_inverse(a), pauli_inverse(b)});
        ASSERT_TRUE(s);
        EXPECT_NEAR(s->real(), commutes(a, b) ? 1.0 : -1.0, 1e-12);
        EXPECT_NEAR(s->imag(), 0.0, 1e-12);
        EXPECT_TRUE(comm.is_identity_up_to_phase());
    }
    EXPECT_FALSE(dense_product_scalar({PauliString::single(20, 3, 'X')}));
}

TEST(local_net, edge_lattice_indexing) {
    EdgeLattice lat(LatticeWindow({0, 0}, {2, 2}));
    EXPECT_EQ(lat.num_edges(), 12u);
    for (size_t i = 0; i < lat.num_edges(); i++) {
        Edge e = lat.edge(i);
        EXPECT_EQ(lat.index(e.orientation, e.x, e.y), i);
    }
    EXPECT_FALSE(lat.index(Orientation::horizontal, 2, 0));
    EXPECT_FALSE(lat.index(Orientation::vertical, 0, 2));
    EXPECT_EQ(lat.midpoint(*lat.index(Orientation::vertical, 1, 0)), (QVec{1, Rational(1, 2)}));
    EdgeLattice big = EdgeLattice::square(5);
    EXPECT_EQ(big.num_edges(), 2u * 10 * 11);
    for (int64_t x = -4; x <= 4; x++) {
        for (int64_t y = -4; y <= 4; y++) {
            EXPECT_EQ(big.star(x, y).size(), 4u);
            EXPECT_EQ(big.plaquette(x, y).size(), 4u);
        }
    }
    EXPECT_EQ(big.star(-5, -5).size(), 2u);
    EXPECT_EQ(big.star(-5, 0).size(), 3u);
    EXPECT_TRUE(big.plaquette(5, 0).empty());
}

TEST(local_net, stabilizers_commute_on_3x3) {
    EdgeLattice lat(LatticeWindow({0, 0}, {3, 3}));
    auto s = stabilizers(lat);
    EXPECT_EQ(s.stars.size(), 16u);
    EXPECT_EQ(s.plaquettes.size(), 9u);
    std::vector<PauliString> all = s.stars;
    all.insert(all.end(), s.plaquettes.begin(), s.plaquettes.end());
    for (const auto &a : all) {
        EXPECT_EQ(pauli_mul(a, a), PauliString::identity(lat.num_edges()));
        for (const auto &b : all) {
            EXPECT_TRUE(commutes(a, b));
        }
    }
    EXPECT_EQ(star_operator(lat, 1, 1).weight(), 4u);
    EXPECT_EQ(plaquette_operator(lat, 1, 1).weight(), 4u);
}

TEST(local_net, star_and_plaquette_dense) {
    EdgeLattice lat(LatticeWindow({0, 0}, {2, 2}));
    PauliString a = star_operator(lat, 1, 1);
    PauliString b = plaquette_operator(lat, 0, 0);
    size_t shared = 0;
    for (size_t q : a.support()) {
        shared += b.z(q) ? 1 : 0;
    }
    EXPECT_EQ(shared, 2u);
    EXPECT_TRUE(commutes(a, b));
    DenseMatrix ma = dense_matrix(a), mb = dense_matrix(b);
    EXPECT_TRUE(dense_equal(dense_multiply(ma, mb), dense_multiply(mb, ma)));
}

TEST(local_net, region_algebra) {
    EdgeLattice lat(LatticeWindow({-2, -2}, {2, 2}));
    RegionAlgebra full(lat, [&] {
        std::vector<size_t> all(lat.num_edges());
        for (size_t i = 0; i < all.size(); i++) {
            all[i] = i;
        }
        return all;
    }());
    EXPECT_EQ(full.generators().size(), 2 * lat.num_edges());
    RegionAlgebra right(lat, ConeSpec(IVec{0, 0}, {1, 0}, Rational(0)));
    for (size_t e : right.edges()) {
        EXPECT_GT(lat.midpoint(e)[0], 0);
    }
    // x in {1/2, 1, 3/2, 2}: horizontal edges with x0 in {0, 1} (5 rows each), vertical with x in {1, 2} (4 each)
    EXPECT_EQ(right.edges().size(), 18u);
    EXPECT_TRUE(right.contains(PauliString::single(lat.num_edges(), right.edges().front(), 'Z')));
}

TEST(local_net, cone_mask_matches_rational_midpoints) {
    EdgeLattice lat = EdgeLattice::square(6);
    Rng rng(8);
    for (int i = 0; i < 30; i++) {
        ConeSpec c(QVec{Rational(uniform_int(rng, -9, 9), 3), Rational(uniform_int(rng, -9, 9), 2)}, random_axis(rng, 2),
                   random_grid_cos(rng));
        auto mask = lat.cone_mask(c);
        for (size_t e = 0; e < lat.num_edges(); e++) {
            EXPECT_EQ(mask[e], c.contains(lat.midpoint(e)));
        }
    }
}

TEST(local_net, perp_commutativity) {
    EdgeLattice lat = EdgeLattice::square(8);
    auto r = perp_commutativity_check(ConeSpec(IVec{0, 0}, {1, 0}, Rational(0)), ConeSpec(IVec{0, 0}, {-1, 0}, Rational(0)), lat);
    EXPECT_TRUE(r.pass());
    EXPECT_GT(r.pairs_checked, 10000u);
    auto t = perp_commutativity_check(ConeSpec(IVec{0, 0}, {1, 0}, rat(3, 5)), ConeSpec(IVec{0, 0}, {0, 1}, rat(4, 5)), lat);
    EXPECT_TRUE(t.pass());
    EXPECT_GT(t.generators_1, 0u);
    EXPECT_GT(t.generators_2, 0u);
    EXPECT_THROW(perp_commutativity_check(ConeSpec(IVec{0, 0}, {1, 0}, Rational(0)), ConeSpec(IVec{0, 0}, {0, 1}, Rational(0)), lat),
                 std::invalid_argument);
}

TEST(local_net, perp_commutativity_random_disjoint_pairs) {
    EdgeLattice lat = EdgeLattice::square(6);
    Rng rng(10);
    int tested = 0;
    while (tested < 40) {
        ConeSpec a = random_cone(rng, 2, 6), b = random_cone(rng, 2, 6);
        if (edge_disjoint(a, b) != Verdict::yes) {
            continue;
        }
        EXPECT_TRUE(perp_commutativity_check(a, b, lat).pass());
        tested++;
    }
}

TEST(local_net, lattice_disjoint_cones_can_share_edges) {
    EdgeLattice lat = EdgeLattice::square(3);
    ConeSpec right(IVec{0, 0}, {1, 0}, Rational(0));
    ConeSpec left(IVec{1, 0}, {-1, 0}, Rational(0));
    EXPECT_EQ(disjoint(right, left).verdict, Verdict::yes);
    EXPECT_NE(edge_disjoint(right, left), Verdict::yes);
    auto a = lat.cone_mask(right), b = lat.cone_mask(left);
    size_t shared = 0;
    for (size_t e = 0; e < lat.num_edges(); e++) {
        shared += a[e] && b[e];
    }
    EXPECT_EQ(shared, 7u);
    EXPECT_THROW(perp_commutativity_check(right, left, lat), std::invalid_argument);
}
