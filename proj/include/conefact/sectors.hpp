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

#include "conefact/lattice.hpp"
#include "conefact/operad.hpp"
#include "conefact/sampling.hpp"

#include <array>
#include <functional>
#include <map>

namespace conefact {

/// Z2 x Z2 anyon labels; the low bit is the e charge, the high bit the m flux.
enum class SectorLabel : uint8_t { vacuum = 0, e = 1, m = 2, eps = 3 };

inline constexpr std::array<SectorLabel, 4> kSectorLabels = {SectorLabel::vacuum, SectorLabel::e, SectorLabel::m,
                                                             SectorLabel::eps};

inline SectorLabel fuse(SectorLabel a, SectorLabel b) {
    return static_cast<SectorLabel>(static_cast<uint8_t>(a) ^ static_cast<uint8_t>(b));
}

inline bool has_e(SectorLabel l) { return static_cast<uint8_t>(l) & 1; }
inline bool has_m(SectorLabel l) { return static_cast<uint8_t>(l) & 2; }

inline const char *to_string(SectorLabel l) {
    switch (l) {
        case SectorLabel::vacuum:
            return "vacuum";
        case SectorLabel::e:
            return "e";
        case SectorLabel::m:
            return "m";
        default:
            return "eps";
    }
}

inline SectorLabel parse_sector_label(std::string_view text) {
    for (SectorLabel l : kSectorLabels) {
        if (text == to_string(l)) {
            return l;
        }
    }
    if (text == "1") {
        return SectorLabel::vacuum;
    }
    throw std::invalid_argument("unknown sector label '" + std::string(text) + "'");
}

/// One string of a sector. An e string is Z on direct edges from a vertex to
/// a boundary vertex of the window. An m string is X on the edges crossed by
/// a dual path from a plaquette out of the window; its last edge is the
/// boundary edge crossed on the way out.
struct StringPath {
    SectorLabel label = SectorLabel::vacuum;
    ConeSpec asymptotic_cone;
    std::vector<IVec> sites;  // vertices (e) or plaquette corners (m), basepoint first
    std::vector<size_t> edges;

    const IVec &basepoint() const { return sites.front(); }
    const IVec &end() const { return sites.back(); }

    /// Edges strictly inside the window's plaquette ring (drops the exit edge of an m path).
    std::vector<size_t> inner_edges() const {
        if (label != SectorLabel::m || edges.empty()) {
            return edges;
        }
        return {edges.begin(), edges.end() - 1};
    }

    Json to_json(const EdgeLattice &lat) const {
        Json names = Json::array();
        for (size_t e : edges) {
            names.push_back(lat.edge_name(e));
        }
        return Json{{"label", to_string(label)}, {"basepoint", basepoint()}, {"edges", names}};
    }
};

/// A strictly localized sector: the endomorphism a -> F a F* of the window's
/// Pauli group, with F the product of the string operators.
struct Sector {
    SectorLabel label = SectorLabel::vacuum;
    ConeSpec cone;
    EdgeLattice lattice;
    std::vector<StringPath> strings;
    PauliString op;

    Json to_json() const {
        Json s = Json::array();
        for (const auto &p : strings) {
            s.push_back(p.to_json(lattice));
        }
        return Json{{"label", to_string(label)}, {"cone", cone_to_json(cone)}, {"strings", s}, {"op", op.hex()}};
    }
};

/// A morphism src -> dst: op rho_src(g) = rho_dst(g) op on margin generators.
struct Intertwiner {
    PauliString op;
    Sector src;
    Sector dst;

    Json to_json() const {
        return Json{{"src", to_string(src.label)}, {"dst", to_string(dst.label)}, {"op", op.str()}, {"hex", op.hex()}};
    }
};

/// Outcome of one exact identity checked over many instances.
struct SectorCheck {
    std::string name;
    size_t checked = 0;
    size_t failures = 0;
    std::vector<std::string> counterexamples;

    bool pass() const { return failures == 0; }

    void record(bool ok, const std::function<std::string()> &describe) {
        checked++;
        if (!ok) {
            failures++;
            if (counterexamples.size() < 8) {
                counterexamples.push_back(describe());
            }
        }
    }

    void absorb(const SectorCheck &other) {
        checked += other.checked;
        failures += other.failures;
        for (const auto &c : other.counterexamples) {
            if (counterexamples.size() < 8) {
                counterexamples.push_back(c);
            }
        }
    }

    Json to_json() const {
        return Json{{"name", name}, {"pass", pass()}, {"checked", checked}, {"failures", failures}, {"counterexamples", counterexamples}};
    }
};

namespace detail {

inline int64_t sgn(int64_t v) { return (v > 0) - (v < 0); }

inline void make_hermitian(PauliString &p) {
    size_t overlaps = 0;
    for (size_t i = 0; i < p.xs.size(); i++) {
        overlaps += std::popcount(p.xs[i] & p.zs[i]);
    }
    p.phase = static_cast<uint8_t>(overlaps & 1);
}

inline bool on_rim(const EdgeLattice &lat, const IVec &v) {
    const auto &w = lat.window();
    return v[0] == w.lo[0] || v[0] == w.hi[0] || v[1] == w.lo[1] || v[1] == w.hi[1];
}

inline bool vertex_inside(const EdgeLattice &lat, const IVec &v) { return lat.window().contains(v) && !on_rim(lat, v); }

inline bool plaquette_in_window(const EdgeLattice &lat, const IVec &p) {
    const auto &w = lat.window();
    return p[0] >= w.lo[0] && p[0] < w.hi[0] && p[1] >= w.lo[1] && p[1] < w.hi[1];
}

/// Edge shared by two adjacent plaquettes given by their lower-left corners.
inline std::optional<size_t> crossed_edge(const EdgeLattice &lat, const IVec &p, const IVec &q) {
    if (p[1] == q[1] && std::abs(p[0] - q[0]) == 1) {
        return lat.index(Orientation::vertical, std::max(p[0], q[0]), p[1]);
    }
    if (p[0] == q[0] && std::abs(p[1] - q[1]) == 1) {
        return lat.index(Orientation::horizontal, p[0], std::max(p[1], q[1]));
    }
    return std::nullopt;
}

/// Next staircase site from `cur` following the ray base + s*axis: one unit
/// step along x or y, whichever lands closer to the ray (x first on ties).
inline IVec staircase_step(const IVec &base, const IVec &cur, const IVec &axis) {
    auto deviation = [&](const IVec &c) { return std::abs((c[0] - base[0]) * axis[1] - (c[1] - base[1]) * axis[0]); };
    std::optional<IVec> best;
    for (size_t k = 0; k < 2; k++) {
        if (axis[k] == 0) {
            continue;
        }
        IVec c = cur;
        c[k] += sgn(axis[k]);
        if (!best || deviation(c) < deviation(*best)) {
            best = c;
        }
    }
    return *best;
}

inline std::optional<StringPath> e_path(const EdgeLattice &lat, const IVec &base, const ConeSpec &cone,
                                        const std::vector<bool> &mask) {
    if (!vertex_inside(lat, base)) {
        return std::nullopt;
    }
    StringPath path{SectorLabel::e, cone, {base}, {}};
    IVec cur = base;
    while (!on_rim(lat, cur)) {
        IVec next = staircase_step(base, cur, cone.axis());
        auto e = lat.between(cur, next);
        if (!e || !mask[*e]) {
            return std::nullopt;
        }
        path.edges.push_back(*e);
        path.sites.push_back(next);
        cur = next;
    }
    return path;
}

inline std::optional<StringPath> m_path(const EdgeLattice &lat, const IVec &base, const ConeSpec &cone,
                                        const std::vector<bool> &mask) {
    if (!plaquette_in_window(lat, base)) {
        return std::nullopt;
    }
    StringPath path{SectorLabel::m, cone, {base}, {}};
    IVec cur = base;
    while (true) {
        IVec next = staircase_step(base, cur, cone.axis());
        auto e = crossed_edge(lat, cur, next);
        if (!e || !mask[*e]) {
            return std::nullopt;
        }
        path.edges.push_back(*e);
        if (!plaquette_in_window(lat, next)) {
            return path;
        }
        path.sites.push_back(next);
        cur = next;
    }
}

/// Candidate basepoints: sites nearest to the axis ray, in order along the
/// ray, then every remaining site of the window whose center lies in the
/// cone, nearest to the apex first.
inline std::vector<IVec> basepoint_candidates(const EdgeLattice &lat, const ConeSpec &cone, bool plaquettes) {
    const auto &w = lat.window();
    const QVec &p = cone.apex();
    const IVec &t = cone.axis();
    std::vector<IVec> out;
    Rational lo(0), hi(0);
    bool empty = false, bounded = false;
    for (size_t k = 0; k < 2; k++) {
        Rational a(w.lo[k] - 1), b(w.hi[k] + 1);
        if (t[k] == 0) {
            empty = empty || p[k] < a || p[k] > b;
            continue;
        }
        Rational s0 = (a - p[k]) / t[k], s1 = (b - p[k]) / t[k];
        if (s0 > s1) {
            std::swap(s0, s1);
        }
        if (!bounded) {
            lo = s0;
            hi = s1;
            bounded = true;
        } else {
            lo = std::max(lo, s0);
            hi = std::min(hi, s1);
        }
    }
    lo = std::max(lo, Rational(0));
    if (!empty && lo <= hi) {
        int64_t den = 2 * std::max(std::abs(t[0]), std::abs(t[1]));
        int64_t j0 = (ceil_to_grid(lo, den) * den).convert_to<int64_t>();
        int64_t j1 = (floor_to_grid(hi, den) * den).convert_to<int64_t>();
        Rational shift = plaquettes ? Rational(0) : Rational(1, 2);
        for (int64_t j = j0; j <= j1; j++) {
            Rational s(j, den);
            IVec site = {floor_int(p[0] + s * t[0] + shift), floor_int(p[1] + s * t[1] + shift)};
            if (out.empty() || out.back() != site) {
                out.push_back(site);
            }
        }
    }
    std::vector<std::pair<Rational, IVec>> rest;
    for (int64_t x = w.lo[0]; x <= w.hi[0]; x++) {
        for (int64_t y = w.lo[1]; y <= w.hi[1]; y++) {
            IVec site = {x, y};
            QVec center = {Rational(x), Rational(y)};
            if (plaquettes) {
                if (!plaquette_in_window(lat, site)) {
                    continue;
                }
                center = {Rational(2 * x + 1, 2), Rational(2 * y + 1, 2)};
            }
            if (cone.contains(center)) {
                rest.push_back({norm2(sub(center, p)), site});
            }
        }
    }
    std::sort(rest.begin(), rest.end());
    for (auto &r : rest) {
        out.push_back(std::move(r.second));
    }
    return out;
}

inline StringPath canonical_path(const EdgeLattice &lat, const ConeSpec &cone, const std::vector<bool> &mask,
                                 bool dual) {
    for (const IVec &base : basepoint_candidates(lat, cone, dual)) {
        auto path = dual ? m_path(lat, base, cone, mask) : e_path(lat, base, cone, mask);
        if (path) {
            return *path;
        }
    }
    throw std::invalid_argument("make_sector: cone misses window");
}

inline PauliString string_operator(const EdgeLattice &lat, const std::vector<StringPath> &strings) {
    PauliString op(lat.num_edges());
    for (const auto &s : strings) {
        for (size_t e : s.edges) {
            if (s.label == SectorLabel::e) {
                op.set_z(e, !op.z(e));
            } else {
                op.set_x(e, !op.x(e));
            }
        }
    }
    make_hermitian(op);
    return op;
}

inline void require_ring(const EdgeLattice &lat) {
    const auto &w = lat.window();
    if (w.hi[0] - w.lo[0] < 2 || w.hi[1] - w.lo[1] < 2) {
        throw std::invalid_argument("no connecting path within window");
    }
}

/// Boundary vertices of the window, counterclockwise from the lower-left corner.
inline std::vector<IVec> rim_cycle(const EdgeLattice &lat) {
    require_ring(lat);
    const auto &w = lat.window();
    std::vector<IVec> out;
    for (int64_t x = w.lo[0]; x <= w.hi[0]; x++) {
        out.push_back({x, w.lo[1]});
    }
    for (int64_t y = w.lo[1] + 1; y <= w.hi[1]; y++) {
        out.push_back({w.hi[0], y});
    }
    for (int64_t x = w.hi[0] - 1; x >= w.lo[0]; x--) {
        out.push_back({x, w.hi[1]});
    }
    for (int64_t y = w.hi[1] - 1; y > w.lo[1]; y--) {
        out.push_back({w.lo[0], y});
    }
    return out;
}

/// Plaquettes touching the window boundary, counterclockwise.
inline std::vector<IVec> ring_cycle(const EdgeLattice &lat) {
    require_ring(lat);
    const auto &w = lat.window();
    int64_t x0 = w.lo[0], x1 = w.hi[0] - 1, y0 = w.lo[1], y1 = w.hi[1] - 1;
    std::vector<IVec> out;
    for (int64_t x = x0; x <= x1; x++) {
        out.push_back({x, y0});
    }
    for (int64_t y = y0 + 1; y <= y1; y++) {
        out.push_back({x1, y});
    }
    for (int64_t x = x1 - 1; x >= x0; x--) {
        out.push_back({x, y1});
    }
    for (int64_t y = y1 - 1; y > y0; y--) {
        out.push_back({x0, y});
    }
    return out;
}

/// Chain on a cycle with boundary `ends` (each listed once): one of the two
/// complementary choices, preferring the one whose edges lie in `ambient`,
/// then the shorter one.
inline std::vector<size_t> closing_arc(const std::vector<size_t> &steps, std::vector<size_t> ends,
                                       const std::vector<bool> *ambient) {
    if (ends.empty()) {
        return {};
    }
    std::sort(ends.begin(), ends.end());
    size_t n = steps.size();
    std::array<std::vector<size_t>, 2> options;
    for (size_t k = 0; k < ends.size(); k += 2) {
        for (size_t i = ends[k]; i < ends[k + 1]; i++) {
            options[0].push_back(steps[i]);
        }
        size_t from = ends[k + 1], to = k + 2 < ends.size() ? ends[k + 2] : ends[0] + n;
        for (size_t i = from; i < to; i++) {
            options[1].push_back(steps[i % n]);
        }
    }
    auto inside = [&](const std::vector<size_t> &arc) {
        return ambient && std::all_of(arc.begin(), arc.end(), [&](size_t e) { return (*ambient)[e]; });
    };
    bool in0 = inside(options[0]), in1 = inside(options[1]);
    if (in0 != in1) {
        return in0 ? options[0] : options[1];
    }
    return options[1].size() < options[0].size() ? options[1] : options[0];
}

inline std::vector<size_t> cycle_positions(const std::vector<IVec> &cycle, const std::vector<IVec> &points) {
    std::map<IVec, size_t> index;
    for (size_t i = 0; i < cycle.size(); i++) {
        index[cycle[i]] = i;
    }
    std::map<size_t, int> parity;
    for (const auto &p : points) {
        auto it = index.find(p);
        if (it == index.end()) {
            throw std::logic_error("string does not end on the window boundary");
        }
        parity[it->second] ^= 1;
    }
    std::vector<size_t> out;
    for (auto [i, odd] : parity) {
        if (odd) {
            out.push_back(i);
        }
    }
    return out;
}

/// Operator connecting the strings of two sectors through the boundary
/// band: the strings of both sectors closed up by arcs along the window rim
/// (e) and the ring of boundary plaquettes (m).
inline PauliString connecting_operator(const Sector &src, const Sector &dst, const std::optional<ConeSpec> &ambient) {
    const EdgeLattice &lat = src.lattice;
    PauliString op(lat.num_edges());
    std::vector<IVec> e_ends, m_ends;
    for (const Sector *s : {&src, &dst}) {
        for (const auto &path : s->strings) {
            if (path.label == SectorLabel::e) {
                for (size_t e : path.edges) {
                    op.set_z(e, !op.z(e));
                }
                e_ends.push_back(path.end());
            } else {
                for (size_t e : path.inner_edges()) {
                    op.set_x(e, !op.x(e));
                }
                m_ends.push_back(path.end());
            }
        }
    }
    std::vector<bool> mask;
    if (ambient) {
        mask = lat.cone_mask(*ambient);
    }
    const std::vector<bool> *amb = ambient ? &mask : nullptr;
    if (!e_ends.empty()) {
        auto rim = rim_cycle(lat);
        std::vector<size_t> steps;
        for (size_t i = 0; i < rim.size(); i++) {
            steps.push_back(*lat.between(rim[i], rim[(i + 1) % rim.size()]));
        }
        for (size_t e : closing_arc(steps, cycle_positions(rim, e_ends), amb)) {
            op.set_z(e, !op.z(e));
        }
    }
    if (!m_ends.empty()) {
        auto ring = ring_cycle(lat);
        std::vector<size_t> steps;
        for (size_t i = 0; i < ring.size(); i++) {
            steps.push_back(*crossed_edge(lat, ring[i], ring[(i + 1) % ring.size()]));
        }
        for (size_t e : closing_arc(steps, cycle_positions(ring, m_ends), amb)) {
            op.set_x(e, !op.x(e));
        }
    }
    make_hermitian(op);
    return op;
}

inline void require_same_lattice(const Sector &a, const Sector &b) {
    if (!(a.lattice == b.lattice)) {
        throw std::invalid_argument("window mismatch");
    }
}

inline std::string generator_name(const EdgeLattice &lat, size_t e, char kind) {
    return std::string(1, kind) + "(" + lat.edge_name(e) + ")";
}

}  // namespace detail

/// Edges whose midpoint lies in the interior margin, optionally restricted to a cone.
inline std::vector<size_t> margin_edges(const EdgeLattice &lat, int64_t margin, const ConeSpec *cone = nullptr) {
    auto interior = lat.interior_mask(margin);
    std::vector<bool> in_cone;
    if (cone) {
        in_cone = lat.cone_mask(*cone);
    }
    std::vector<size_t> out;
    for (size_t e = 0; e < lat.num_edges(); e++) {
        if (interior[e] && (!cone || in_cone[e])) {
            out.push_back(e);
        }
    }
    return out;
}

/// Calls fn(edge, kind, X_e or Z_e) for every generator on the given edges.
template <typename Fn>
void for_each_generator(const EdgeLattice &lat, const std::vector<size_t> &edges, Fn &&fn) {
    for (size_t e : edges) {
        for (char kind : {'X', 'Z'}) {
            fn(e, kind, PauliString::single(lat.num_edges(), e, kind));
        }
    }
}

inline Sector make_sector(SectorLabel label, const ConeSpec &cone, const EdgeLattice &lat) {
    require_same_dim(cone.dim(), 2);
    Sector s{label, cone, lat, {}, PauliString(lat.num_edges())};
    if (label == SectorLabel::vacuum) {
        return s;
    }
    auto mask = lat.cone_mask(cone);
    if (has_e(label)) {
        s.strings.push_back(detail::canonical_path(lat, cone, mask, false));
    }
    if (has_m(label)) {
        s.strings.push_back(detail::canonical_path(lat, cone, mask, true));
    }
    s.op = detail::string_operator(lat, s.strings);
    return s;
}

inline PauliString apply_endo(const Sector &s, const PauliString &a) {
    if (a.num_qubits != s.lattice.num_edges()) {
        throw std::invalid_argument("apply_endo: window mismatch");
    }
    return conjugate(s.op, a);
}

/// The same sector regarded as localized in a larger cone.
inline Sector localize_in(const Sector &s, const ConeSpec &cone) {
    if (edge_contained(s.cone, cone) != Verdict::yes) {
        throw std::invalid_argument("sector is not localized in the cone");
    }
    Sector out = s;
    out.cone = cone;
    return out;
}

/// Generators outside the sector's cone (within the margin) are fixed.
inline SectorCheck strict_localization(const Sector &s, int64_t margin) {
    SectorCheck check{"strict_localization"};
    auto in_cone = s.lattice.cone_mask(s.cone);
    std::vector<size_t> outside;
    for (size_t e : margin_edges(s.lattice, margin)) {
        if (!in_cone[e]) {
            outside.push_back(e);
        }
    }
    for_each_generator(s.lattice, outside, [&](size_t e, char kind, const PauliString &g) {
        check.record(apply_endo(s, g) == g, [&] { return detail::generator_name(s.lattice, e, kind); });
    });
    return check;
}

inline SectorCheck same_endomorphism(const Sector &a, const Sector &b, int64_t margin, std::string name = "endomorphism") {
    detail::require_same_lattice(a, b);
    SectorCheck check{std::move(name)};
    for_each_generator(a.lattice, margin_edges(a.lattice, margin), [&](size_t e, char kind, const PauliString &g) {
        check.record(apply_endo(a, g) == apply_endo(b, g), [&] { return detail::generator_name(a.lattice, e, kind); });
    });
    return check;
}

/// op rho_src(g) = rho_dst(g) op for every margin generator g.
inline SectorCheck intertwiner_check(const Intertwiner &u, int64_t margin, std::string name = "intertwiner") {
    detail::require_same_lattice(u.src, u.dst);
    SectorCheck check{std::move(name)};
    for_each_generator(u.src.lattice, margin_edges(u.src.lattice, margin), [&](size_t e, char kind, const PauliString &g) {
        check.record(u.op * apply_endo(u.src, g) == apply_endo(u.dst, g) * u.op,
                     [&] { return detail::generator_name(u.src.lattice, e, kind); });
    });
    return check;
}

inline Intertwiner identity_intertwiner(const Sector &s) { return {PauliString(s.lattice.num_edges()), s, s}; }

/// Intertwiner between two sectors of the same label, built from a
/// connecting path whose part at infinity runs inside `ambient` when possible.
inline Intertwiner connecting_intertwiner(const Sector &src, const Sector &dst,
                                          const std::optional<ConeSpec> &ambient = std::nullopt) {
    detail::require_same_lattice(src, dst);
    if (src.label != dst.label) {
        throw std::invalid_argument("no intertwiner between different labels");
    }
    return {detail::connecting_operator(src, dst, ambient), src, dst};
}

struct Transport {
    Intertwiner u;
    Sector moved;
};

/// Charge transporter into `target`: the canonical sector there plus the
/// string operator along the connecting path.
inline Transport transporter(const Sector &s, const ConeSpec &target, const std::optional<ConeSpec> &ambient = std::nullopt) {
    Sector t = make_sector(s.label, target, s.lattice);
    return {connecting_intertwiner(s, t, ambient), t};
}

/// Factorization product of sectors localized in the sources of an operation.
inline Sector fact_product(const std::vector<Sector> &parts, const ConeSpec &target, const EdgeLattice &lat) {
    std::vector<ConeSpec> cones;
    for (const auto &p : parts) {
        if (!(p.lattice == lat)) {
            throw std::invalid_argument("window mismatch");
        }
        cones.push_back(p.cone);
    }
    make_net_operation(target, cones);
    Sector out{SectorLabel::vacuum, target, lat, {}, PauliString(lat.num_edges())};
    for (const auto &p : parts) {
        out.label = fuse(out.label, p.label);
        out.strings.insert(out.strings.end(), p.strings.begin(), p.strings.end());
        out.op = out.op * p.op;
    }
    return out;
}

/// L_1 * ... * L_n on morphisms.
inline Intertwiner fact_product(const std::vector<Intertwiner> &parts, const ConeSpec &target, const EdgeLattice &lat) {
    std::vector<Sector> srcs, dsts;
    PauliString op(lat.num_edges());
    for (const auto &p : parts) {
        srcs.push_back(p.src);
        dsts.push_back(p.dst);
        op = op * p.op;
    }
    return {op, fact_product(srcs, target, lat), fact_product(dsts, target, lat)};
}

/// Monoidal product: composition of the endomorphisms, rho_s after rho_t.
inline Sector mono_product(const Sector &s, const Sector &t) {
    detail::require_same_lattice(s, t);
    if (!(s.cone == t.cone)) {
        throw std::invalid_argument("mono_product: cone mismatch");
    }
    Sector out = s;
    out.label = fuse(s.label, t.label);
    out.strings.insert(out.strings.end(), t.strings.begin(), t.strings.end());
    out.op = s.op * t.op;
    return out;
}

/// L ⋄ L' = L rho_src(L') on morphisms.
inline Intertwiner mono_product(const Intertwiner &l, const Intertwiner &lp) {
    return {l.op * apply_endo(l.src, lp.op), mono_product(l.src, lp.src), mono_product(l.dst, lp.dst)};
}

/// Writes p as i^k times a product of star and plaquette operators of the
/// window and returns k, or nullopt when p is not of that form.
inline std::optional<int> stabilizer_phase(const PauliString &p, const EdgeLattice &lat) {
    struct Basis {
        std::vector<std::vector<uint64_t>> rows, combos;
        std::vector<size_t> pivots;

        static std::optional<size_t> lowest(const std::vector<uint64_t> &v) {
            for (size_t i = 0; i < v.size(); i++) {
                if (v[i]) {
                    return i * 64 + std::countr_zero(v[i]);
                }
            }
            return std::nullopt;
        }
        static bool bit(const std::vector<uint64_t> &v, size_t b) { return (v[b >> 6] >> (b & 63)) & 1; }

        void reduce(std::vector<uint64_t> &row, std::vector<uint64_t> &combo) const {
            for (size_t k = 0; k < rows.size(); k++) {
                if (bit(row, pivots[k])) {
                    for (size_t i = 0; i < row.size(); i++) {
                        row[i] ^= rows[k][i];
                    }
                    for (size_t i = 0; i < combo.size(); i++) {
                        combo[i] ^= combos[k][i];
                    }
                }
            }
        }
    };
    auto solve = [](const std::vector<std::vector<uint64_t>> &gens, const std::vector<uint64_t> &target) {
        Basis b;
        size_t words = (gens.size() + 63) / 64;
        for (size_t g = 0; g < gens.size(); g++) {
            std::vector<uint64_t> row = gens[g], combo(words, 0);
            combo[g >> 6] |= uint64_t(1) << (g & 63);
            b.reduce(row, combo);
            if (auto piv = Basis::lowest(row)) {
                b.rows.push_back(row);
                b.combos.push_back(combo);
                b.pivots.push_back(*piv);
            }
        }
        std::vector<uint64_t> row = target, combo(words, 0);
        b.reduce(row, combo);
        return Basis::lowest(row) ? std::nullopt : std::optional<std::vector<uint64_t>>(combo);
    };
    Stabilizers stab = stabilizers(lat);
    std::vector<std::vector<uint64_t>> star_rows, plaq_rows;
    for (const auto &s : stab.stars) {
        star_rows.push_back(s.xs);
    }
    for (const auto &q : stab.plaquettes) {
        plaq_rows.push_back(q.zs);
    }
    auto xs = solve(star_rows, p.xs);
    auto zs = solve(plaq_rows, p.zs);
    if (!xs || !zs) {
        return std::nullopt;
    }
    PauliString prod(lat.num_edges());
    for (size_t i = 0; i < stab.stars.size(); i++) {
        if (Basis::bit(*xs, i)) {
            prod = prod * stab.stars[i];
        }
    }
    for (size_t i = 0; i < stab.plaquettes.size(); i++) {
        if (Basis::bit(*zs, i)) {
            prod = prod * stab.plaquettes[i];
        }
    }
    return static_cast<int>((p.phase + 4 - prod.phase) & 3);
}

/// Auxiliary binary operation (U1, U2) -> V for the braiding, U1
/// counterclockwise of U2 as seen from the apex of V.
struct BraidingConfig {
    ConeSpec u1;
    ConeSpec u2;
    ConeSpec v;

    Json to_json() const {
        return Json{{"U1", cone_to_json(u1)},
                    {"U2", cone_to_json(u2)},
                    {"V", cone_to_json(v)},
                    {"orientation", "U1 counterclockwise of U2"}};
    }
};

/// V the upper half-plane, U1 and U2 the upper-left and upper-right cones of half-angle acos(4/5).
inline BraidingConfig default_braiding_config() {
    return {ConeSpec(IVec{0, 0}, {-1, 1}, rat(4, 5)), ConeSpec(IVec{0, 0}, {1, 1}, rat(4, 5)),
            ConeSpec(IVec{0, 0}, {0, 1}, Rational(0))};
}

/// Random auxiliary operation: V with apex in [-radius, radius]^2 and two
/// disjoint subcones, ordered counterclockwise.
inline std::optional<BraidingConfig> random_braiding_config(Rng &rng, int64_t radius) {
    IVec apex = {uniform_int(rng, -radius, radius), uniform_int(rng, -radius, radius)};
    ConeSpec v(apex, random_axis(rng, 2, 3), Rational(uniform_int(rng, -6, 6), 10));
    auto a = random_subcone(rng, v, 1, 4), b = random_subcone(rng, v, 1, 4);
    if (!a || !b) {
        return std::nullopt;
    }
    int64_t cross = b->axis()[0] * a->axis()[1] - b->axis()[1] * a->axis()[0];
    if (cross == 0) {
        return std::nullopt;
    }
    if (cross < 0) {
        std::swap(a, b);
    }
    if (edge_disjoint(*a, *b) != Verdict::yes) {
        return std::nullopt;
    }
    try {
        make_net_operation(v, {*a, *b});
    } catch (const OperationError &) {
        return std::nullopt;
    }
    return BraidingConfig{*a, *b, v};
}

struct Braiding {
    Intertwiner tau;
    Intertwiner u;   // s1 -> s1 moved into U1
    Intertwiner ud;  // s2 -> s2 moved into U2
    std::vector<PauliString> factors;  // tau is their product, left to right
    std::optional<int> scalar;
};

inline std::optional<int> real_scalar(const PauliString &p) {
    if (!p.is_identity_up_to_phase() || (p.phase & 1)) {
        return std::nullopt;
    }
    return p.phase == 0 ? 1 : -1;
}

/// tau_{s1,s2} = rho_2(u*) ud* u rho_1(ud) : s1 ⋄ s2 -> s2 ⋄ s1.
inline Braiding braiding(const Sector &s1, const Sector &s2, const BraidingConfig &aux) {
    detail::require_same_lattice(s1, s2);
    try {
        make_net_operation(aux.v, {aux.u1, aux.u2});
    } catch (const OperationError &err) {
        throw std::invalid_argument(std::string("braiding: invalid auxiliary operation ") + err.what());
    }
    const IVec &a = aux.u2.axis(), &b = aux.u1.axis();
    if (a[0] * b[1] - a[1] * b[0] <= 0) {
        throw std::invalid_argument("braiding: U1 must lie counterclockwise of U2");
    }
    Sector p1 = localize_in(s1, aux.v), p2 = localize_in(s2, aux.v);
    Intertwiner u = connecting_intertwiner(p1, make_sector(p1.label, aux.u1, p1.lattice), aux.v);
    Intertwiner ud = connecting_intertwiner(p2, make_sector(p2.label, aux.u2, p2.lattice), aux.v);
    PauliString ui = pauli_inverse(u.op), udi = pauli_inverse(ud.op);
    PauliString tau = apply_endo(p2, ui) * udi * u.op * apply_endo(p1, ud.op);
    std::vector<PauliString> factors = {p2.op, ui, pauli_inverse(p2.op), udi, u.op, p1.op, ud.op, pauli_inverse(p1.op)};
    return {{tau, mono_product(p1, p2), mono_product(p2, p1)}, u, ud, factors, real_scalar(tau)};
}

struct Monodromy {
    Braiding forward;
    Braiding backward;
    std::optional<int> scalar;
};

/// tau_{s2,s1} tau_{s1,s2}.
inline Monodromy monodromy(const Sector &s1, const Sector &s2, const BraidingConfig &aux) {
    Braiding f = braiding(s1, s2, aux);
    Braiding b = braiding(s2, s1, aux);
    return {f, b, real_scalar(b.tau.op * f.tau.op)};
}

/// tau_{s1',s2} (L ⋄ 1) = (1 ⋄ L) tau_{s1,s2} for L : s1 -> s1' the
/// connecting intertwiner inside V, and the mirrored square in the second slot.
inline SectorCheck naturality_check(const Sector &s1, const Sector &s1p, const Sector &s2, const Sector &s2p,
                                    const BraidingConfig &aux) {
    SectorCheck check{"naturality"};
    Sector a = localize_in(s1, aux.v), ap = localize_in(s1p, aux.v);
    Sector b = localize_in(s2, aux.v), bp = localize_in(s2p, aux.v);
    Intertwiner L = connecting_intertwiner(a, ap, aux.v);
    Intertwiner M = connecting_intertwiner(b, bp, aux.v);
    PauliString lhs1 = braiding(ap, b, aux).tau.op * L.op;
    PauliString rhs1 = apply_endo(b, L.op) * braiding(a, b, aux).tau.op;
    check.record(lhs1 == rhs1, [&] { return "first slot: " + lhs1.str() + " != " + rhs1.str(); });
    PauliString lhs2 = braiding(a, bp, aux).tau.op * apply_endo(a, M.op);
    PauliString rhs2 = M.op * braiding(a, b, aux).tau.op;
    check.record(lhs2 == rhs2, [&] { return "second slot: " + lhs2.str() + " != " + rhs2.str(); });
    return check;
}

/// monodromy(s1 ⋄ s2, s3) = monodromy(s1, s3) monodromy(s2, s3).
inline SectorCheck hexagon_check(const Sector &s1, const Sector &s2, const Sector &s3, const BraidingConfig &aux) {
    SectorCheck check{"hexagon"};
    Sector a = localize_in(s1, aux.v), b = localize_in(s2, aux.v), c = localize_in(s3, aux.v);
    auto joint = monodromy(mono_product(a, b), c, aux).scalar;
    auto first = monodromy(a, c, aux).scalar, second = monodromy(b, c, aux).scalar;
    check.record(joint && first && second && *joint == *first * *second, [&] {
        return std::string(to_string(s1.label)) + "," + to_string(s2.label) + "," + to_string(s3.label);
    });
    return check;
}

/// Scalar of a product of Pauli factors from dense matrices: one dense
/// product on the joint support when it has at most `full` qubits, blockwise
/// otherwise.
inline std::optional<std::complex<double>> dense_scalar(const std::vector<PauliString> &factors, size_t full = 10) {
    std::vector<size_t> support;
    for (const auto &f : factors) {
        for (size_t q : f.support()) {
            support.push_back(q);
        }
    }
    std::sort(support.begin(), support.end());
    support.erase(std::unique(support.begin(), support.end()), support.end());
    return dense_product_scalar(factors, support.size() <= full ? std::max<size_t>(support.size(), 1) : 6);
}

/// V1 -> V2 <- V3 -> V4 <- V1, winding clockwise around the apex.
struct ZigZag {
    std::array<ConeSpec, 4> cones;

    Json to_json() const {
        Json out = Json::array();
        for (const auto &c : cones) {
            out.push_back(cone_to_json(c));
        }
        return out;
    }
};

/// Left cone, everything but a lower wedge, right cone, everything but an upper wedge.
inline ZigZag quadrant_zigzag() {
    return {{ConeSpec(IVec{0, 0}, {-1, 0}, rat(4, 5)), ConeSpec(IVec{0, 0}, {0, 1}, rat(-7, 10)),
             ConeSpec(IVec{0, 0}, {1, 0}, rat(4, 5)), ConeSpec(IVec{0, 0}, {0, -1}, rat(-7, 10))}};
}

struct Holonomy {
    Sector start;
    Sector result;
    std::array<Intertwiner, 2> steps;
    Intertwiner w;
    std::optional<int> vacuum_phase;  // w = i^k * (stars and plaquettes)
};

/// Transports s from V1 to V3 through V2, then back to V1 through V4.
inline Holonomy holonomy_T(const Sector &s, const ZigZag &z) {
    const auto &v = z.cones;
    std::array<std::pair<int, int>, 4> inclusions = {{{0, 1}, {2, 1}, {2, 3}, {0, 3}}};
    for (auto [i, j] : inclusions) {
        if (edge_contained(v[i], v[j]) != Verdict::yes) {
            throw std::invalid_argument("holonomy_T: invalid zig-zag");
        }
    }
    for (size_t k = 0; k < 4; k++) {
        const IVec &a = v[k].axis(), &b = v[(k + 1) % 4].axis();
        if (a[0] * b[1] - a[1] * b[0] >= 0) {
            throw std::invalid_argument("holonomy_T: zig-zag does not wind clockwise");
        }
    }
    Sector start = localize_in(s, v[0]);
    Transport first = transporter(start, v[2], v[1]);
    Transport second = transporter(first.moved, v[0], v[3]);
    Intertwiner w{second.u.op * first.u.op, start, second.moved};
    return {start, second.moved, {first.u, second.u}, w, stabilizer_phase(w.op, s.lattice)};
}

/// Items (1)-(3) of the locality assumption on disjoint cones u1, u2, with a
/// third cone v disjoint from u1 (default: the complement of u1).
inline std::vector<SectorCheck> assumption1_check(const ConeSpec &u1, const ConeSpec &u2, const EdgeLattice &lat,
                                                  int64_t margin, SectorLabel l1 = SectorLabel::e,
                                                  SectorLabel l2 = SectorLabel::m,
                                                  std::optional<ConeSpec> v = std::nullopt) {
    if (edge_disjoint(u1, u2) != Verdict::yes) {
        throw std::invalid_argument("assumption1_check: regions are not disjoint");
    }
    if (!v) {
        v = complement_witness(u1);
    }
    if (edge_disjoint(*v, u1) != Verdict::yes) {
        throw std::invalid_argument("assumption1_check: third cone meets the first region");
    }
    Sector pi1 = make_sector(l1, u1, lat), pi2 = make_sector(l2, u2, lat);
    auto morphism = [&](const Sector &s) {
        ConeSpec deeper(axpy(s.cone.apex(), Rational(3), s.cone.axis()), s.cone.axis(), s.cone.cos());
        try {
            Sector t = localize_in(make_sector(s.label, deeper, lat), s.cone);
            return connecting_intertwiner(s, t, s.cone);
        } catch (const std::invalid_argument &) {
            return identity_intertwiner(s);
        }
    };
    Intertwiner L1 = morphism(pi1), L2 = morphism(pi2);
    Intertwiner t2 = transporter(pi2, *v).u;

    auto e1 = margin_edges(lat, margin, &u1), e2 = margin_edges(lat, margin, &u2);
    std::vector<std::pair<std::string, PauliString>> img1, img2;
    for_each_generator(lat, e1, [&](size_t e, char k, const PauliString &g) {
        img1.push_back({detail::generator_name(lat, e, k), apply_endo(pi1, g)});
    });
    for_each_generator(lat, e2, [&](size_t e, char k, const PauliString &g) {
        img2.push_back({detail::generator_name(lat, e, k), apply_endo(pi2, g)});
    });

    SectorCheck images{"commuting_images"};
    for (const auto &[n1, a] : img1) {
        for (const auto &[n2, b] : img2) {
            images.record(a * b == b * a, [&] { return n1 + " vs " + n2; });
        }
    }
    SectorCheck morphisms{"intertwiners_commute"};
    morphisms.record(L1.op * L2.op == L2.op * L1.op, [&] { return L1.op.str() + " vs " + L2.op.str(); });
    SectorCheck diagrams{"intertwiner_diagrams"};
    for (const auto &[n2, b] : img2) {
        diagrams.record(L1.op * b == b * L1.op, [&] { return "L1 vs " + n2; });
    }
    for (const auto &[n1, a] : img1) {
        diagrams.record(L2.op * a == a * L2.op, [&] { return "L2 vs " + n1; });
    }
    SectorCheck transport{"transporter_diagram"};
    for (const auto &[n1, a] : img1) {
        transport.record(t2.op * a == a * t2.op, [&] { return "u2 vs " + n1; });
    }
    SectorCheck valid{"intertwiners_valid"};
    for (const auto *l : {&L1, &L2, &t2}) {
        valid.absorb(intertwiner_check(*l, margin));
    }
    return {images, morphisms, diagrams, transport, valid};
}

struct InterchangeReport {
    SectorCheck object_level{"object_level"};
    SectorCheck morphism_level{"morphism_level"};

    bool pass() const { return object_level.pass() && morphism_level.pass(); }
    Json to_json() const { return Json{{"object_level", object_level.to_json()}, {"morphism_level", morphism_level.to_json()}}; }
};

/// (s1 ⋄ sd1) * (s2 ⋄ sd2) = (s1 * s2) ⋄ (sd1 * sd2) on objects, and the
/// same identity on morphisms built from transporters inside each source.
inline InterchangeReport interchange_check(const std::array<std::pair<Sector, Sector>, 2> &pairs, const OperadOperation &op,
                                           int64_t margin) {
    if (op.arity() != 2) {
        throw std::invalid_argument("interchange_check: needs a binary operation");
    }
    const EdgeLattice &lat = pairs[0].first.lattice;
    const ConeSpec &v = op.target;
    std::array<std::pair<Sector, Sector>, 2> local = {
        std::pair{localize_in(pairs[0].first, op.sources[0]), localize_in(pairs[0].second, op.sources[0])},
        std::pair{localize_in(pairs[1].first, op.sources[1]), localize_in(pairs[1].second, op.sources[1])}};

    InterchangeReport report;
    Sector lhs = fact_product({mono_product(local[0].first, local[0].second), mono_product(local[1].first, local[1].second)}, v, lat);
    Sector rhs = mono_product(fact_product({local[0].first, local[1].first}, v, lat),
                              fact_product({local[0].second, local[1].second}, v, lat));
    report.object_level.record(lhs.label == rhs.label, [&] { return std::string("labels differ"); });
    report.object_level.absorb(same_endomorphism(lhs, rhs, margin));

    auto morphism = [&](const Sector &s) {
        ConeSpec deeper(axpy(s.cone.apex(), Rational(2), s.cone.axis()), s.cone.axis(), s.cone.cos());
        try {
            return connecting_intertwiner(s, localize_in(make_sector(s.label, deeper, lat), s.cone), s.cone);
        } catch (const std::invalid_argument &) {
            return identity_intertwiner(s);
        }
    };
    Intertwiner L1 = morphism(local[0].first), Ld1 = morphism(local[0].second);
    Intertwiner L2 = morphism(local[1].first), Ld2 = morphism(local[1].second);
    Intertwiner ml = fact_product({mono_product(L1, Ld1), mono_product(L2, Ld2)}, v, lat);
    Intertwiner mr = mono_product(fact_product({L1, L2}, v, lat), fact_product({Ld1, Ld2}, v, lat));
    report.morphism_level.record(ml.op == mr.op, [&] { return ml.op.str() + " != " + mr.op.str(); });
    report.morphism_level.absorb(intertwiner_check(ml, margin));
    report.morphism_level.absorb(same_endomorphism(ml.src, mr.src, margin, "sources"));
    report.morphism_level.absorb(same_endomorphism(ml.dst, mr.dst, margin, "targets"));
    return report;
}

}  // namespace conefact
