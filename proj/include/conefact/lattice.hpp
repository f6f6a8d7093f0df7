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
#include "conefact/operad.hpp"
#include "conefact/pauli.hpp"
#include "conefact/serialize.hpp"

namespace conefact {

enum class Orientation : uint8_t { horizontal = 0, vertical = 1 };

/// Edge from `base` to base + (1,0) (horizontal) or base + (0,1) (vertical).
struct Edge {
    Orientation orientation;
    int64_t x;
    int64_t y;

    bool operator==(const Edge &o) const = default;
};

/// C(2p, t, a); m lies in C(p, t, a) iff 2m lies in the doubled cone.
inline ConeSpec doubled(const ConeSpec &cone) {
    QVec apex = cone.apex();
    for (auto &v : apex) {
        v *= 2;
    }
    return ConeSpec(apex, cone.axis(), cone.cos());
}

/// Edges of the square lattice whose two endpoints lie in a 2D vertex window.
/// Horizontal edges are indexed first, then vertical ones, each in
/// lexicographic order of the base vertex.
class EdgeLattice {
   public:
    explicit EdgeLattice(LatticeWindow window) : window_(std::move(window)) {
        if (window_.dim() != 2) {
            throw std::invalid_argument("edge lattice needs a 2D window");
        }
        width_ = window_.hi[0] - window_.lo[0] + 1;
        height_ = window_.hi[1] - window_.lo[1] + 1;
        num_h_ = static_cast<size_t>((width_ - 1) * height_);
        num_v_ = static_cast<size_t>(width_ * (height_ - 1));
    }

    static EdgeLattice square(int64_t radius) { return EdgeLattice(LatticeWindow::box(2, radius)); }

    const LatticeWindow &window() const { return window_; }
    size_t num_edges() const { return num_h_ + num_v_; }

    Edge edge(size_t i) const {
        if (i < num_h_) {
            return {Orientation::horizontal, window_.lo[0] + int64_t(i) / height_, window_.lo[1] + int64_t(i) % height_};
        }
        i -= num_h_;
        if (i >= num_v_) {
            throw std::out_of_range("edge index out of range");
        }
        int64_t h = height_ - 1;
        return {Orientation::vertical, window_.lo[0] + int64_t(i) / h, window_.lo[1] + int64_t(i) % h};
    }

    std::optional<size_t> index(Orientation o, int64_t x, int64_t y) const {
        int64_t dx = x - window_.lo[0];
        int64_t dy = y - window_.lo[1];
        if (o == Orientation::horizontal) {
            if (dx < 0 || dx >= width_ - 1 || dy < 0 || dy >= height_) {
                return std::nullopt;
            }
            return static_cast<size_t>(dx * height_ + dy);
        }
        if (dx < 0 || dx >= width_ || dy < 0 || dy >= height_ - 1) {
            return std::nullopt;
        }
        return num_h_ + static_cast<size_t>(dx * (height_ - 1) + dy);
    }

    /// Edge between two adjacent vertices, if inside the window.
    std::optional<size_t> between(const IVec &a, const IVec &b) const {
        if (a[1] == b[1] && std::abs(a[0] - b[0]) == 1) {
            return index(Orientation::horizontal, std::min(a[0], b[0]), a[1]);
        }
        if (a[0] == b[0] && std::abs(a[1] - b[1]) == 1) {
            return index(Orientation::vertical, a[0], std::min(a[1], b[1]));
        }
        return std::nullopt;
    }

    /// Midpoint scaled by 2 (integer coordinates).
    IVec doubled_midpoint(size_t i) const {
        Edge e = edge(i);
        IVec m = {2 * e.x, 2 * e.y};
        m[e.orientation == Orientation::horizontal ? 0 : 1] += 1;
        return m;
    }

    QVec midpoint(size_t i) const {
        IVec m = doubled_midpoint(i);
        return {Rational(m[0], 2), Rational(m[1], 2)};
    }

    /// In-window edges incident to vertex (x, y).
    std::vector<size_t> star(int64_t x, int64_t y) const {
        std::vector<size_t> out;
        for (auto e : {index(Orientation::horizontal, x - 1, y), index(Orientation::horizontal, x, y),
                       index(Orientation::vertical, x, y - 1), index(Orientation::vertical, x, y)}) {
            if (e) {
                out.push_back(*e);
            }
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    /// Edges around the unit square with lower-left corner (x, y); empty if outside.
    std::vector<size_t> plaquette(int64_t x, int64_t y) const {
        auto b = index(Orientation::horizontal, x, y);
        auto t = index(Orientation::horizontal, x, y + 1);
        auto l = index(Orientation::vertical, x, y);
        auto r = index(Orientation::vertical, x + 1, y);
        if (!b || !t || !l || !r) {
            return {};
        }
        std::vector<size_t> out = {*b, *t, *l, *r};
        std::sort(out.begin(), out.end());
        return out;
    }

    /// Membership of each edge midpoint in the open cone.
    std::vector<bool> cone_mask(const ConeSpec &cone) const {
        require_same_dim(cone.dim(), 2);
        ConeSpec scaled = doubled(cone);
        std::vector<bool> mask(num_edges());
        for (size_t i = 0; i < num_edges(); i++) {
            mask[i] = scaled.contains(doubled_midpoint(i));
        }
        return mask;
    }

    /// Edges whose midpoint lies in [lo + margin, hi - margin] in both coordinates.
    std::vector<bool> interior_mask(int64_t margin) const {
        std::vector<bool> mask(num_edges());
        for (size_t i = 0; i < num_edges(); i++) {
            IVec m = doubled_midpoint(i);
            bool in = true;
            for (size_t k = 0; k < 2; k++) {
                in = in && m[k] >= 2 * (window_.lo[k] + margin) && m[k] <= 2 * (window_.hi[k] - margin);
            }
            mask[i] = in;
        }
        return mask;
    }

    std::string edge_name(size_t i) const {
        Edge e = edge(i);
        std::ostringstream out;
        out << (e.orientation == Orientation::horizontal ? "h" : "v") << "(" << e.x << "," << e.y << ")";
        return out.str();
    }

    Json to_json() const { return Json{{"lo", window_.lo}, {"hi", window_.hi}, {"edges", num_edges()}}; }

    bool operator==(const EdgeLattice &o) const { return window_ == o.window_; }

   private:
    LatticeWindow window_;
    int64_t width_ = 0;
    int64_t height_ = 0;
    size_t num_h_ = 0;
    size_t num_v_ = 0;
};

inline PauliString star_operator(const EdgeLattice &lat, int64_t x, int64_t y) {
    return PauliString::product(lat.num_edges(), lat.star(x, y), 'X');
}

inline PauliString plaquette_operator(const EdgeLattice &lat, int64_t x, int64_t y) {
    return PauliString::product(lat.num_edges(), lat.plaquette(x, y), 'Z');
}

struct Stabilizers {
    std::vector<PauliString> stars;
    std::vector<PauliString> plaquettes;
};

/// All vertex stars (truncated at the window boundary) and all plaquettes.
inline Stabilizers stabilizers(const EdgeLattice &lat) {
    Stabilizers out;
    const auto &w = lat.window();
    for (int64_t x = w.lo[0]; x <= w.hi[0]; x++) {
        for (int64_t y = w.lo[1]; y <= w.hi[1]; y++) {
            out.stars.push_back(star_operator(lat, x, y));
            if (x < w.hi[0] && y < w.hi[1]) {
                out.plaquettes.push_back(plaquette_operator(lat, x, y));
            }
        }
    }
    return out;
}

/// Orthogonality of the edge regions of two cones. Disjoint lattice cones can
/// still share half-integer edge midpoints, so the test runs on the doubled cones.
inline Verdict edge_disjoint(const ConeSpec &a, const ConeSpec &b) {
    if (r_disjoint(a, b) == Verdict::yes) {
        return Verdict::yes;
    }
    return disjoint(doubled(a), doubled(b)).verdict == Verdict::yes ? Verdict::yes : Verdict::unknown;
}

/// Containment of edge regions, certified on the doubled cones.
inline Verdict edge_contained(const ConeSpec &inner, const ConeSpec &outer) {
    if (inner == outer || r_contained(inner, outer) == Verdict::yes) {
        return Verdict::yes;
    }
    return contained(doubled(inner), doubled(outer)).verdict == Verdict::yes ? Verdict::yes : Verdict::unknown;
}

/// An operation of the net's orthogonal category: sources and target are
/// validated as edge regions. Throws OperationError like make_operation.
inline OperadOperation make_net_operation(const ConeSpec &target, const std::vector<ConeSpec> &sources) {
    std::vector<ConeSpec> scaled;
    for (const auto &c : sources) {
        scaled.push_back(doubled(c));
    }
    make_operation(doubled(target), scaled);
    return {target, sources};
}

/// Generators X_e, Z_e of the algebra of a region: the edges whose midpoint
/// lies in a cone, or an explicit edge set.
class RegionAlgebra {
   public:
    RegionAlgebra(const EdgeLattice &lat, const ConeSpec &cone) : num_qubits_(lat.num_edges()), cone_(cone) {
        auto mask = lat.cone_mask(cone);
        for (size_t i = 0; i < mask.size(); i++) {
            if (mask[i]) {
                edges_.push_back(i);
            }
        }
    }

    RegionAlgebra(const EdgeLattice &lat, std::vector<size_t> edges) : num_qubits_(lat.num_edges()), edges_(std::move(edges)) {
        std::sort(edges_.begin(), edges_.end());
        edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
        if (!edges_.empty() && edges_.back() >= num_qubits_) {
            throw std::out_of_range("region edge outside the window");
        }
    }

    const std::vector<size_t> &edges() const { return edges_; }
    const std::optional<ConeSpec> &cone() const { return cone_; }

    std::vector<PauliString> generators() const {
        std::vector<PauliString> out;
        for (size_t e : edges_) {
            out.push_back(PauliString::single(num_qubits_, e, 'X'));
            out.push_back(PauliString::single(num_qubits_, e, 'Z'));
        }
        return out;
    }

    /// True iff the operator is supported on the region's edges.
    bool contains(const PauliString &p) const {
        return p.supported_in([&](size_t q) { return std::binary_search(edges_.begin(), edges_.end(), q); });
    }

   private:
    size_t num_qubits_;
    std::optional<ConeSpec> cone_;
    std::vector<size_t> edges_;
};

struct PerpReport {
    size_t generators_1 = 0;
    size_t generators_2 = 0;
    size_t pairs_checked = 0;
    std::vector<std::pair<std::string, std::string>> violations;

    bool pass() const { return violations.empty(); }

    Json to_json() const {
        Json v = Json::array();
        for (const auto &[a, b] : violations) {
            v.push_back({a, b});
        }
        return Json{{"generators", {generators_1, generators_2}}, {"pairs_checked", pairs_checked}, {"violations", v}};
    }
};

/// Checks that every generator of the first region commutes with every
/// generator of the second; the edge regions must be certified disjoint.
inline PerpReport perp_commutativity_check(const ConeSpec &u1, const ConeSpec &u2, const EdgeLattice &lat) {
    if (edge_disjoint(u1, u2) != Verdict::yes) {
        throw std::invalid_argument("perp_commutativity_check: edge regions are not certified disjoint");
    }
    auto g1 = RegionAlgebra(lat, u1).generators();
    auto g2 = RegionAlgebra(lat, u2).generators();
    PerpReport report;
    report.generators_1 = g1.size();
    report.generators_2 = g2.size();
    for (const auto &a : g1) {
        for (const auto &b : g2) {
            report.pairs_checked++;
            if (!commutes(a, b)) {
                report.violations.push_back({a.str(), b.str()});
            }
        }
    }
    return report;
}

}  // namespace conefact
