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

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <bit>
#include <complex>
#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace conefact {

/// Pauli operator i^phase * prod_q X_q^{x_q} Z_q^{z_q} on a fixed number of
/// qubits (X written before Z on each qubit, so Y = i X Z and X Z = -i Y).
struct PauliString {
    size_t num_qubits = 0;
    uint8_t phase = 0;  // power of i, mod 4
    std::vector<uint64_t> xs;
    std::vector<uint64_t> zs;

    PauliString() = default;
    explicit PauliString(size_t n) : num_qubits(n), xs((n + 63) / 64, 0), zs((n + 63) / 64, 0) {}

    static PauliString identity(size_t n) { return PauliString(n); }

    static PauliString single(size_t n, size_t q, char kind) {
        PauliString p(n);
        p.check_qubit(q);
        switch (kind) {
            case 'X':
                p.set_x(q, true);
                break;
            case 'Z':
                p.set_z(q, true);
                break;
            case 'Y':
                p.set_x(q, true);
                p.set_z(q, true);
                p.phase = 1;
                break;
            default:
                throw std::invalid_argument("Pauli kind must be X, Y or Z");
        }
        return p;
    }

    /// Product of `kind` over the given qubits (kind X or Z).
    static PauliString product(size_t n, const std::vector<size_t> &qubits, char kind) {
        PauliString p(n);
        for (size_t q : qubits) {
            p.check_qubit(q);
            if (kind == 'X') {
                p.set_x(q, !p.x(q));
            } else if (kind == 'Z') {
                p.set_z(q, !p.z(q));
            } else {
                throw std::invalid_argument("product kind must be X or Z");
            }
        }
        return p;
    }

    bool x(size_t q) const { return (xs[q >> 6] >> (q & 63)) & 1; }
    bool z(size_t q) const { return (zs[q >> 6] >> (q & 63)) & 1; }
    void set_x(size_t q, bool v) { set_bit(xs, q, v); }
    void set_z(size_t q, bool v) { set_bit(zs, q, v); }

    bool is_identity_up_to_phase() const {
        for (size_t i = 0; i < xs.size(); i++) {
            if (xs[i] | zs[i]) {
                return false;
            }
        }
        return true;
    }

    size_t weight() const {
        size_t w = 0;
        for (size_t i = 0; i < xs.size(); i++) {
            w += std::popcount(xs[i] | zs[i]);
        }
        return w;
    }

    std::vector<size_t> support() const {
        std::vector<size_t> out;
        for (size_t q = 0; q < num_qubits; q++) {
            if (x(q) || z(q)) {
                out.push_back(q);
            }
        }
        return out;
    }

    /// True iff every support qubit satisfies `pred`.
    template <typename Pred>
    bool supported_in(Pred &&pred) const {
        for (size_t q : support()) {
            if (!pred(q)) {
                return false;
            }
        }
        return true;
    }

    /// Complex scalar i^phase.
    std::complex<double> scalar() const {
        static const std::complex<double> powers[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
        return powers[phase & 3];
    }

    bool operator==(const PauliString &o) const = default;

    /// Renders e.g. "+X(e1)Z(e5)" or "-iY(e0)"; Y absorbs the factor i of X Z.
    std::string str() const {
        size_t ys = 0;
        std::ostringstream body;
        for (size_t q = 0; q < num_qubits; q++) {
            if (x(q) && z(q)) {
                ys++;
                body << "Y(e" << q << ")";
            } else if (x(q)) {
                body << "X(e" << q << ")";
            } else if (z(q)) {
                body << "Z(e" << q << ")";
            }
        }
        static const char *names[4] = {"+", "+i", "-", "-i"};
        std::string b = body.str();
        return std::string(names[(phase + 4 - ys % 4) & 3]) + (b.empty() ? "I" : b);
    }

    /// Bit-exact rendering: phase and the two masks as hex words (least significant word first).
    std::string hex() const {
        std::ostringstream out;
        out << "phase=" << int(phase) << " x=";
        for (size_t i = 0; i < xs.size(); i++) {
            out << (i ? ":" : "") << std::hex << xs[i];
        }
        out << " z=";
        for (size_t i = 0; i < zs.size(); i++) {
            out << (i ? ":" : "") << std::hex << zs[i];
        }
        return out.str();
    }

    void check_qubit(size_t q) const {
        if (q >= num_qubits) {
            throw std::out_of_range("qubit index out of range");
        }
    }

   private:
    static void set_bit(std::vector<uint64_t> &m, size_t q, bool v) {
        uint64_t bit = uint64_t(1) << (q & 63);
        m[q >> 6] = v ? (m[q >> 6] | bit) : (m[q >> 6] & ~bit);
    }
};

inline void require_same_window(const PauliString &a, const PauliString &b) {
    if (a.num_qubits != b.num_qubits) {
        throw std::invalid_argument("Pauli strings live on different windows");
    }
}

/// Group product with exact phase: moving Z^{z1} past X^{x2} gives (-1)^{z1.x2}.
inline PauliString pauli_mul(const PauliString &a, const PauliString &b) {
    require_same_window(a, b);
    PauliString out(a.num_qubits);
    size_t swaps = 0;
    for (size_t i = 0; i < a.xs.size(); i++) {
        swaps += std::popcount(a.zs[i] & b.xs[i]);
        out.xs[i] = a.xs[i] ^ b.xs[i];
        out.zs[i] = a.zs[i] ^ b.zs[i];
    }
    out.phase = static_cast<uint8_t>((a.phase + b.phase + 2 * (swaps & 1)) & 3);
    return out;
}

inline PauliString operator*(const PauliString &a, const PauliString &b) { return pauli_mul(a, b); }

/// Inverse (adjoint) of a Pauli string.
inline PauliString pauli_inverse(const PauliString &a) {
    PauliString out = a;
    size_t overlaps = 0;
    for (size_t i = 0; i < a.xs.size(); i++) {
        overlaps += std::popcount(a.xs[i] & a.zs[i]);
    }
    // (X^x Z^z)^{-1} = Z^z X^x = (-1)^{x.z} X^x Z^z
    out.phase = static_cast<uint8_t>((4 - a.phase + 2 * (overlaps & 1)) & 3);
    return out;
}

/// Symplectic form over F2: true iff a and b commute.
inline bool commutes(const PauliString &a, const PauliString &b) {
    require_same_window(a, b);
    size_t s = 0;
    for (size_t i = 0; i < a.xs.size(); i++) {
        s += std::popcount((a.xs[i] & b.zs[i]) ^ (a.zs[i] & b.xs[i]));
    }
    return (s & 1) == 0;
}

/// Conjugation a b a^{-1} = (+1 or -1) b for Pauli strings.
inline PauliString conjugate(const PauliString &a, const PauliString &b) {
    PauliString out = b;
    if (!commutes(a, b)) {
        out.phase = static_cast<uint8_t>((out.phase + 2) & 3);
    }
    return out;
}

using DenseMatrix = Eigen::MatrixXcd;

constexpr size_t kDenseQubitCap = 12;

namespace detail {

inline Eigen::Matrix2cd single_qubit_factor(bool x, bool z) {
    Eigen::Matrix2cd m = Eigen::Matrix2cd::Identity();
    if (x) {
        Eigen::Matrix2cd sx;
        sx << 0, 1, 1, 0;
        m = m * sx;
    }
    if (z) {
        Eigen::Matrix2cd sz;
        sz << 1, 0, 0, -1;
        m = m * sz;
    }
    return m;
}

inline DenseMatrix kron(const DenseMatrix &a, const DenseMatrix &b) {
    DenseMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); i++) {
        for (Eigen::Index j = 0; j < a.cols(); j++) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

/// Dense matrix of the restriction of `p` to the listed qubits (first listed = most significant).
inline DenseMatrix dense_on(const PauliString &p, const std::vector<size_t> &qubits, bool with_phase) {
    DenseMatrix out = DenseMatrix::Identity(1, 1);
    for (size_t q : qubits) {
        out = kron(out, single_qubit_factor(p.x(q), p.z(q)));
    }
    return with_phase ? DenseMatrix(p.scalar() * out) : out;
}

}  // namespace detail

/// Dense 2^n x 2^n matrix of a Pauli string on at most 12 qubits.
inline DenseMatrix dense_matrix(const PauliString &p) {
    if (p.num_qubits > kDenseQubitCap) {
        throw std::invalid_argument("dense_matrix: window has more than 12 qubits");
    }
    std::vector<size_t> all(p.num_qubits);
    for (size_t q = 0; q < p.num_qubits; q++) {
        all[q] = q;
    }
    return detail::dense_on(p, all, true);
}

/// Product of dense matrices computed through their sparse views (Pauli
/// matrices have one nonzero per row, so this stays exact and fast).
inline DenseMatrix dense_multiply(const DenseMatrix &a, const DenseMatrix &b) {
    Eigen::SparseMatrix<std::complex<double>> sa = a.sparseView();
    Eigen::SparseMatrix<std::complex<double>> sb = b.sparseView();
    return DenseMatrix(sa * sb);
}

/// Dense oracle for products of Pauli strings on large windows: the product
/// of tensor-product operators factorizes over qubit blocks, so each block of
/// at most `block` support qubits is multiplied as a dense matrix. Returns the
/// scalar s when the product equals s * identity, nullopt otherwise.
inline std::optional<std::complex<double>> dense_product_scalar(const std::vector<PauliString> &factors,
                                                                size_t block = 6) {
    if (factors.empty()) {
        return std::complex<double>(1, 0);
    }
    std::vector<size_t> support;
    std::complex<double> scalar(1, 0);
    for (const auto &f : factors) {
        require_same_window(f, factors.front());
        scalar *= f.scalar();
        for (size_t q : f.support()) {
            support.push_back(q);
        }
    }
    std::sort(support.begin(), support.end());
    support.erase(std::unique(support.begin(), support.end()), support.end());
    for (size_t start = 0; start < support.size(); start += block) {
        std::vector<size_t> qs(support.begin() + start, support.begin() + std::min(support.size(), start + block));
        DenseMatrix m = DenseMatrix::Identity(Eigen::Index(1) << qs.size(), Eigen::Index(1) << qs.size());
        for (const auto &f : factors) {
            m = dense_multiply(m, detail::dense_on(f, qs, false));
        }
        std::complex<double> s = m(0, 0);
        if ((m - s * DenseMatrix::Identity(m.rows(), m.cols())).cwiseAbs().maxCoeff() > 1e-9) {
            return std::nullopt;
        }
        scalar *= s;
    }
    return scalar;
}

}  // namespace conefact
