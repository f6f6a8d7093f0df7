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

#include "conefact/sectors.hpp"

#include <boost/version.hpp>
#include <chrono>
#include <fstream>
#include <sstream>

namespace conefact {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Check names in the order a full run executes them.
inline const std::vector<std::string> &known_checks() {
    static const std::vector<std::string> names = {"operad-laws",      "geometric-witnesses", "perp-commutativity",
                                                   "toric-statistics", "interchange",         "assumption1",
                                                   "holonomy"};
    return names;
}

struct RunConfig {
    int64_t dim = 2;
    int64_t window_radius = 16;
    int64_t margin = 2;
    int64_t samples = 0;  // 0 selects each check's default
    uint64_t seed = 2026;
    std::vector<std::string> checks = known_checks();
    int64_t operad_window = 32;
    int64_t scan_radius = 50;

    size_t samples_or(size_t fallback) const { return samples > 0 ? static_cast<size_t>(samples) : fallback; }

    Json to_json() const {
        return Json{{"dim", dim},
                    {"window", window_radius},
                    {"margin", margin},
                    {"samples", samples},
                    {"seed", seed},
                    {"checks", checks},
                    {"operad_window", operad_window},
                    {"scan_radius", scan_radius}};
    }

    void validate() const {
        if (checks.empty()) {
            throw ConfigError("no checks requested");
        }
        for (const auto &c : checks) {
            if (std::find(known_checks().begin(), known_checks().end(), c) == known_checks().end()) {
                throw ConfigError("unknown check '" + c + "'");
            }
        }
        if (dim < 1 || dim > 3) {
            throw ConfigError("dim must be 1, 2 or 3");
        }
        if (margin < 1) {
            throw ConfigError("margin must be at least 1");
        }
        if (window_radius <= 2 * margin) {
            throw ConfigError("window must exceed twice the margin");
        }
        if (samples < 0) {
            throw ConfigError("samples must be nonnegative");
        }
        if (operad_window < 1 || scan_radius < 1) {
            throw ConfigError("operad_window and scan_radius must be positive");
        }
        for (const auto &c : checks) {
            if (c != "operad-laws" && dim != 2) {
                throw ConfigError("check '" + c + "' needs dim 2");
            }
        }
    }
};

namespace detail {

inline std::string trim(std::string_view s) {
    size_t a = s.find_first_not_of(" \t\r\n"), b = s.find_last_not_of(" \t\r\n");
    return a == std::string_view::npos ? std::string() : std::string(s.substr(a, b - a + 1));
}

inline std::vector<std::string> split_list(std::string_view text) {
    std::vector<std::string> out;
    std::stringstream ss{std::string(text)};
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) {
            out.push_back(item);
        }
    }
    return out;
}

inline int64_t parse_int(const std::string &key, const std::string &value) {
    try {
        size_t used = 0;
        long long v = std::stoll(value, &used);
        if (used == value.size()) {
            return v;
        }
    } catch (const std::exception &) {
    }
    throw ConfigError("field '" + key + "': expected an integer, got '" + value + "'");
}

inline uint64_t parse_seed(const std::string &value) {
    try {
        size_t used = 0;
        unsigned long long v = std::stoull(value, &used, 0);
        if (used == value.size() && value.find('-') == std::string::npos) {
            return v;
        }
    } catch (const std::exception &) {
    }
    throw ConfigError("field 'seed': expected an unsigned 64-bit integer, got '" + value + "'");
}

}  // namespace detail

/// Sets one field from its textual value; keys match RunConfig::to_json.
inline void set_config_field(RunConfig &cfg, const std::string &key, const std::string &value) {
    if (key == "dim") {
        cfg.dim = detail::parse_int(key, value);
    } else if (key == "window" || key == "window_radius") {
        cfg.window_radius = detail::parse_int(key, value);
    } else if (key == "margin") {
        cfg.margin = detail::parse_int(key, value);
    } else if (key == "samples") {
        cfg.samples = detail::parse_int(key, value);
    } else if (key == "seed") {
        cfg.seed = detail::parse_seed(value);
    } else if (key == "checks") {
        cfg.checks = detail::split_list(value);
    } else if (key == "operad_window") {
        cfg.operad_window = detail::parse_int(key, value);
    } else if (key == "scan_radius") {
        cfg.scan_radius = detail::parse_int(key, value);
    } else {
        throw ConfigError("unknown field '" + key + "'");
    }
}

/// Reads a JSON object or `key = value` lines ('#' starts a comment).
inline RunConfig parse_config_text(const std::string &text, RunConfig cfg = {}, const std::string &origin = "config") {
    std::string body = detail::trim(text);
    if (!body.empty() && body.front() == '{') {
        Json j;
        try {
            j = Json::parse(body);
        } catch (const Json::parse_error &err) {
            throw ConfigError(origin + ": invalid JSON at byte " + std::to_string(err.byte));
        }
        for (const auto &[key, value] : j.items()) {
            std::string v;
            if (value.is_array()) {
                for (const auto &item : value) {
                    if (!item.is_string()) {
                        throw ConfigError(origin + ": field '" + key + "': expected a list of strings");
                    }
                    v += (v.empty() ? "" : ",") + item.get<std::string>();
                }
            } else if (value.is_string()) {
                v = value.get<std::string>();
            } else if (value.is_number_integer()) {
                v = value.dump();
            } else {
                throw ConfigError(origin + ": field '" + key + "': unsupported value " + value.dump());
            }
            try {
                set_config_field(cfg, key, v);
            } catch (const ConfigError &err) {
                throw ConfigError(origin + ": " + err.what());
            }
        }
        return cfg;
    }
    std::istringstream in(text);
    std::string line;
    for (size_t number = 1; std::getline(in, line); number++) {
        std::string content = detail::trim(line.substr(0, line.find('#')));
        if (content.empty()) {
            continue;
        }
        size_t eq = content.find('=');
        std::string where = origin + ":" + std::to_string(number);
        if (eq == std::string::npos) {
            throw ConfigError(where + ": expected 'key = value'");
        }
        try {
            set_config_field(cfg, detail::trim(content.substr(0, eq)), detail::trim(content.substr(eq + 1)));
        } catch (const ConfigError &err) {
            throw ConfigError(where + ": " + err.what());
        }
    }
    return cfg;
}

inline RunConfig load_config_file(const std::string &path, RunConfig cfg = {}) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot read config file '" + path + "'");
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_config_text(buffer.str(), std::move(cfg), path);
}

inline constexpr std::string_view kEnvPrefix = "CONEFACT_";

/// Applies CONEFACT_DIM, CONEFACT_WINDOW, ..., CONEFACT_SCAN_RADIUS.
inline RunConfig apply_env(RunConfig cfg, const std::function<const char *(const char *)> &lookup = [](const char *name) {
    return std::getenv(name);
}) {
    for (const char *key : {"dim", "window", "margin", "samples", "seed", "checks", "operad_window", "scan_radius"}) {
        std::string name(kEnvPrefix);
        for (const char *c = key; *c; c++) {
            name += static_cast<char>(std::toupper(static_cast<unsigned char>(*c)));
        }
        if (const char *value = lookup(name.c_str())) {
            try {
                set_config_field(cfg, key, value);
            } catch (const ConfigError &err) {
                throw ConfigError(name + ": " + err.what());
            }
        }
    }
    return cfg;
}

struct CheckResult {
    std::string name;
    bool pass = false;
    Json counterexamples = Json::array();
    Json scalars = Json::object();
    double seconds = 0;

    void fail(Json detail) {
        pass = false;
        if (counterexamples.size() < 20) {
            counterexamples.push_back(std::move(detail));
        }
    }

    void absorb(const SectorCheck &c, const Json &context) {
        if (!c.pass()) {
            fail(Json{{"check", c.name}, {"context", context}, {"failures", c.failures}, {"generators", c.counterexamples}});
        }
    }

    Json to_json() const {
        return Json{{"name", name}, {"pass", pass}, {"counterexamples", counterexamples}, {"scalars", scalars}};
    }
};

inline constexpr std::string_view kHaagNote =
    "Haag duality (equality of a cone algebra's bicommutant with the commutant of its complement's algebra) is an "
    "infinite-volume statement and is not verified here; the toric statistics, interchange, locality and holonomy "
    "checks are its finite-window consequences.";

inline Json versions_json() {
    return Json{{"conefact", CONEFACT_VERSION},
                {"boost", BOOST_LIB_VERSION},
                {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "." +
                              std::to_string(EIGEN_MINOR_VERSION)},
                {"nlohmann_json", std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                                      std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                                      std::to_string(NLOHMANN_JSON_VERSION_PATCH)}};
}

struct Report {
    RunConfig config;
    std::vector<CheckResult> checks;
    double wall_time = 0;

    bool pass() const {
        return std::all_of(checks.begin(), checks.end(), [](const CheckResult &c) { return c.pass; });
    }

    Json to_json() const {
        Json cs = Json::array();
        Json per_check = Json::object();
        for (const auto &c : checks) {
            cs.push_back(c.to_json());
            per_check[c.name] = c.seconds;
        }
        return Json{{"schema", 1},
                    {"config", config.to_json()},
                    {"checks", cs},
                    {"pass", pass()},
                    {"notes", {std::string(kHaagNote)}},
                    {"wall_time", {{"total_seconds", wall_time}, {"per_check_seconds", per_check}}},
                    {"versions", versions_json()}};
    }
};

namespace checks {

inline CheckResult operad_laws(const RunConfig &cfg) {
    CheckResult r{"operad-laws"};
    OrthogonalSite site{static_cast<size_t>(cfg.dim), cfg.operad_window, std::nullopt};
    OperadLawReport rep = check_operad_laws(site, cfg.samples_or(500), stream_seed(cfg.seed, r.name));
    r.pass = rep.pass();
    for (const auto &v : rep.violations) {
        r.fail(v);
    }
    r.scalars = rep.to_json();
    r.scalars.erase("violations");
    return r;
}

namespace detail {

inline bool scan_subset(const ConeSpec &inner, const ConeSpec &outer, int64_t radius, std::optional<IVec> &bad) {
    return LatticeWindow::box(2, radius).for_each([&](const IVec &x) {
        if (inner.contains(x) && !outer.contains(x)) {
            bad = x;
            return false;
        }
        return true;
    });
}

inline bool scan_disjoint(const ConeSpec &a, const ConeSpec &b, int64_t radius, std::optional<IVec> &bad) {
    return LatticeWindow::box(2, radius).for_each([&](const IVec &x) {
        if (a.contains(x) && b.contains(x)) {
            bad = x;
            return false;
        }
        return true;
    });
}

}  // namespace detail

/// Complement, enlargement and separation witnesses against exhaustive lattice scans.
inline CheckResult geometric_witnesses(const RunConfig &cfg) {
    CheckResult r{"geometric-witnesses"};
    Rng rng(stream_seed(cfg.seed, r.name));
    size_t configs = cfg.samples_or(200), scans = 0, separations = 0;
    int64_t R = cfg.scan_radius;
    auto claim = [&](bool ok, const std::string &what, const std::vector<ConeSpec> &cones, const std::optional<IVec> &at) {
        scans++;
        if (!ok) {
            Json cs = Json::array();
            for (const auto &c : cones) {
                cs.push_back(cone_to_json(c));
            }
            r.fail(Json{{"claim", what}, {"cones", cs}, {"point", at ? Json(*at) : Json()}});
        }
    };
    for (size_t n = 0; n < configs; n++) {
        ConeSpec u = random_cone(rng, 2, 8), v = random_cone(rng, 2, 8);
        std::optional<IVec> at;
        ConeSpec comp = complement_witness(u);
        claim(detail::scan_disjoint(u, comp, R, at), "complement disjoint from U", {u, comp}, at);
        try {
            Enlargement e = enlargement_witness(u, v);
            claim(detail::scan_subset(e.v_prime, v, R, at), "V' inside V", {u, v, e.v_prime}, at);
            claim(detail::scan_subset(u, e.w, R, at), "U inside W", {u, v, e.w}, at);
            claim(detail::scan_subset(e.v_prime, e.w, R, at), "V' inside W", {u, v, e.v_prime, e.w}, at);
        } catch (const std::exception &err) {
            r.fail(Json{{"claim", "enlargement constructed"}, {"error", err.what()}, {"cones", {cone_to_json(u), cone_to_json(v)}}});
        }
        std::vector<ConeSpec> others;
        for (int attempt = 0; attempt < 16 && others.empty(); attempt++) {
            ConeSpec o1 = random_cone(rng, 2, 8), o2 = random_cone(rng, 2, 8);
            if (disjoint(o1, o2).verdict == Verdict::yes) {
                others = {o1, o2};
            }
        }
        if (others.empty()) {
            ConeSpec o1 = random_cone(rng, 2, 8);
            others = {o1, complement_witness(o1)};
        }
        try {
            ConeSpec sep = separation_witness(u, others);
            separations++;
            claim(detail::scan_subset(sep, u, R, at), "separating cone inside U", {u, sep}, at);
            std::optional<IVec> hit1, hit2;
            bool miss1 = detail::scan_disjoint(sep, others[0], R, hit1);
            bool miss2 = detail::scan_disjoint(sep, others[1], R, hit2);
            claim(miss1 || miss2, "separating cone meets at most one", {u, sep, others[0], others[1]}, hit1);
        } catch (const std::exception &err) {
            r.fail(Json{{"claim", "separation constructed"}, {"error", err.what()}, {"cones", {cone_to_json(u)}}});
        }
    }
    r.pass = r.counterexamples.empty();
    r.scalars = Json{{"configurations", configs}, {"scans", scans}, {"separations", separations}, {"scan_radius", R}};
    return r;
}

/// Window with ten edges: 4 x 2 vertices.
inline EdgeLattice dense_oracle_window() { return EdgeLattice(LatticeWindow({-2, -1}, {1, 0})); }

/// Generator commutation on a <= 12 qubit window, decided from dense matrices.
inline std::map<std::pair<std::string, std::string>, bool> dense_commutation_table(const EdgeLattice &lat) {
    std::vector<PauliString> gens;
    for_each_generator(lat, margin_edges(lat, 0), [&](size_t, char, const PauliString &g) { gens.push_back(g); });
    std::map<std::pair<std::string, std::string>, bool> table;
    for (size_t i = 0; i < gens.size(); i++) {
        DenseMatrix a = dense_matrix(gens[i]);
        for (size_t j = i; j < gens.size(); j++) {
            DenseMatrix b = dense_matrix(gens[j]);
            bool c = (dense_multiply(a, b) - dense_multiply(b, a)).cwiseAbs().maxCoeff() < 1e-12;
            table[{gens[i].str(), gens[j].str()}] = c;
            table[{gens[j].str(), gens[i].str()}] = c;
        }
    }
    return table;
}

inline CheckResult perp_commutativity(const RunConfig &cfg) {
    CheckResult r{"perp-commutativity"};
    Rng rng(stream_seed(cfg.seed, r.name));
    size_t pairs = cfg.samples_or(100);
    EdgeLattice lat = EdgeLattice::square(cfg.window_radius);
    size_t tested = 0, generator_pairs = 0, nonempty = 0;
    for (size_t tries = 0; tested < pairs && tries < 200 * pairs; tries++) {
        ConeSpec a = random_cone(rng, 2, cfg.window_radius / 2), b = random_cone(rng, 2, cfg.window_radius / 2);
        if (edge_disjoint(a, b) != Verdict::yes) {
            continue;
        }
        tested++;
        PerpReport rep = perp_commutativity_check(a, b, lat);
        generator_pairs += rep.pairs_checked;
        nonempty += rep.pairs_checked > 0;
        if (!rep.pass()) {
            r.fail(Json{{"cones", {cone_to_json(a), cone_to_json(b)}}, {"report", rep.to_json()}});
        }
    }
    if (tested < pairs) {
        r.fail(Json{{"error", "could not draw enough certified-disjoint pairs"}, {"drawn", tested}});
    }

    EdgeLattice small = dense_oracle_window();
    auto table = dense_commutation_table(small);
    size_t oracle_pairs = 0, oracle_generator_pairs = 0;
    for (size_t tries = 0; oracle_pairs < pairs && tries < 500 * pairs; tries++) {
        ConeSpec a = random_cone(rng, 2, 2), b = random_cone(rng, 2, 2);
        if (edge_disjoint(a, b) != Verdict::yes) {
            continue;
        }
        auto ga = RegionAlgebra(small, a).generators(), gb = RegionAlgebra(small, b).generators();
        if (ga.empty() || gb.empty()) {
            continue;
        }
        oracle_pairs++;
        for (const auto &x : ga) {
            for (const auto &y : gb) {
                oracle_generator_pairs++;
                bool fast = commutes(x, y), dense = table.at({x.str(), y.str()});
                if (fast != dense || !fast) {
                    r.fail(Json{{"cones", {cone_to_json(a), cone_to_json(b)}}, {"generators", {x.str(), y.str()}},
                                {"symplectic", fast}, {"dense", dense}});
                }
            }
        }
    }
    if (oracle_pairs < pairs) {
        r.fail(Json{{"error", "could not draw enough oracle pairs"}, {"drawn", oracle_pairs}});
    }
    r.pass = r.counterexamples.empty();
    r.scalars = Json{{"pairs", tested},
                     {"pairs_with_generators", nonempty},
                     {"generator_pairs", generator_pairs},
                     {"oracle_pairs", oracle_pairs},
                     {"oracle_generator_pairs", oracle_generator_pairs},
                     {"oracle_qubits", small.num_edges()}};
    return r;
}

/// Raises ConfigError when the sector checks cannot place their standard cones in the window.
inline void require_sector_window(const RunConfig &cfg) {
    EdgeLattice lat = EdgeLattice::square(cfg.window_radius);
    try {
        BraidingConfig aux = default_braiding_config();
        for (SectorLabel l : kSectorLabels) {
            for (const ConeSpec &c : {aux.u1, aux.u2, aux.v}) {
                make_sector(l, c, lat);
            }
            for (const ConeSpec &c : quadrant_zigzag().cones) {
                make_sector(l, c, lat);
            }
        }
        conefact::detail::require_ring(lat);
    } catch (const std::invalid_argument &err) {
        throw ConfigError("infeasible window: radius " + std::to_string(cfg.window_radius) + " (" + err.what() + ")");
    }
}

inline std::string pair_key(SectorLabel a, SectorLabel b) { return std::string(to_string(a)) + "," + to_string(b); }

inline CheckResult toric_statistics(const RunConfig &cfg) {
    CheckResult r{"toric-statistics"};
    EdgeLattice lat = EdgeLattice::square(cfg.window_radius);
    BraidingConfig aux = default_braiding_config();
    Json mono_table = Json::object(), tau_table = Json::object(), dense_table = Json::object();
    std::map<std::pair<SectorLabel, SectorLabel>, int> mono, tau;
    auto expect = [&](bool ok, const std::string &what) {
        if (!ok) {
            r.fail(Json{{"claim", what}});
        }
    };
    for (SectorLabel a : kSectorLabels) {
        for (SectorLabel b : kSectorLabels) {
            Sector s1 = make_sector(a, aux.v, lat), s2 = make_sector(b, aux.v, lat);
            Monodromy m = monodromy(s1, s2, aux);
            std::string key = pair_key(a, b);
            expect(m.scalar.has_value() && m.forward.scalar.has_value(), key + ": braiding is a scalar");
            mono[{a, b}] = m.scalar.value_or(0);
            tau[{a, b}] = m.forward.scalar.value_or(0);
            mono_table[key] = mono[{a, b}];
            tau_table[key] = tau[{a, b}];
            r.absorb(intertwiner_check(m.forward.tau, cfg.margin), key);
            r.absorb(intertwiner_check(m.forward.u, cfg.margin), key + " transporter into U1");
            r.absorb(intertwiner_check(m.forward.ud, cfg.margin), key + " transporter into U2");
            auto dense = dense_scalar(m.forward.factors);
            expect(dense && std::abs(dense->imag()) < 1e-12 && std::abs(dense->real() - tau[{a, b}]) < 1e-12,
                   key + ": dense oracle agrees with the symplectic scalar");
            dense_table[key] = dense ? Json(dense->real()) : Json();
        }
    }
    using L = SectorLabel;
    expect(mono[{L::e, L::m}] == -1 && mono[{L::m, L::e}] == -1, "monodromy(e,m) = monodromy(m,e) = -1");
    expect(mono[{L::e, L::e}] == 1 && mono[{L::m, L::m}] == 1, "monodromy(e,e) = monodromy(m,m) = +1");
    expect(tau[{L::eps, L::eps}] == -1, "tau(eps,eps) = -1");
    for (SectorLabel l : kSectorLabels) {
        expect(tau[{l, L::vacuum}] == 1 && tau[{L::vacuum, l}] == 1, std::string("braiding with vacuum, ") + to_string(l));
    }

    // e in U1 fused with e in U2 is the vacuum through an explicit finite intertwiner.
    Sector pair = fact_product({make_sector(L::e, aux.u1, lat), make_sector(L::e, aux.u2, lat)}, aux.v, lat);
    Intertwiner fusion = connecting_intertwiner(pair, make_sector(L::vacuum, aux.v, lat), aux.v);
    expect(pair.label == L::vacuum, "e fused with e has trivial label");
    r.absorb(intertwiner_check(fusion, cfg.margin), "e*e -> vacuum");

    ConeSpec alt1(IVec{1, 2}, {0, 1}, rat(1, 2)), alt2(IVec{-2, 1}, {-1, 2}, rat(3, 5));
    size_t hexagons = 0;
    for (SectorLabel a : {L::e, L::m, L::eps}) {
        for (SectorLabel b : {L::e, L::m, L::eps}) {
            Sector s1 = make_sector(a, aux.v, lat), s2 = make_sector(b, aux.v, lat);
            r.absorb(naturality_check(s1, make_sector(a, alt1, lat), s2, make_sector(b, alt2, lat), aux), pair_key(a, b));
            for (SectorLabel c : {L::e, L::m}) {
                r.absorb(hexagon_check(s1, s2, make_sector(c, aux.v, lat), aux), pair_key(a, b) + "," + to_string(c));
                hexagons++;
            }
        }
    }
    r.pass = r.counterexamples.empty();
    r.scalars = Json{{"em", mono[{L::e, L::m}]},
                     {"me", mono[{L::m, L::e}]},
                     {"ee", mono[{L::e, L::e}]},
                     {"mm", mono[{L::m, L::m}]},
                     {"eps_self", tau[{L::eps, L::eps}]},
                     {"monodromy", mono_table},
                     {"braiding", tau_table},
                     {"dense_braiding", dense_table},
                     {"fusion_intertwiner_hex", fusion.op.hex()},
                     {"hexagons", hexagons},
                     {"orientation", aux.to_json()}};
    return r;
}

inline SectorLabel random_label(Rng &rng) { return kSectorLabels[uniform_int(rng, 0, 3)]; }

inline CheckResult interchange(const RunConfig &cfg) {
    CheckResult r{"interchange"};
    Rng rng(stream_seed(cfg.seed, r.name));
    EdgeLattice lat = EdgeLattice::square(cfg.window_radius);
    size_t random_configs = cfg.samples_or(20), done = 0, generators = 0;
    auto run_one = [&](const ConeSpec &v, const ConeSpec &a, const ConeSpec &b, std::array<SectorLabel, 4> labels) {
        OperadOperation op = make_net_operation(v, {a, b});
        std::array<std::pair<Sector, Sector>, 2> pairs = {
            std::pair{make_sector(labels[0], a, lat), make_sector(labels[1], a, lat)},
            std::pair{make_sector(labels[2], b, lat), make_sector(labels[3], b, lat)}};
        InterchangeReport rep = interchange_check(pairs, op, cfg.margin);
        Json ctx{{"operation", operation_to_json(op)},
                 {"labels", {to_string(labels[0]), to_string(labels[1]), to_string(labels[2]), to_string(labels[3])}}};
        r.absorb(rep.object_level, ctx);
        r.absorb(rep.morphism_level, ctx);
        generators += rep.object_level.checked;
    };
    using L = SectorLabel;
    ConeSpec whole(IVec{0, 0}, {1, 0}, rat(-9, 10));
    run_one(whole, ConeSpec(IVec{0, 1}, {0, 1}, rat(1, 2)), ConeSpec(IVec{0, -1}, {0, -1}, rat(1, 2)), {L::e, L::m, L::m, L::e});
    for (size_t tries = 0; done < random_configs && tries < 2000 * random_configs; tries++) {
        auto aux = random_braiding_config(rng, 2);
        if (!aux) {
            continue;
        }
        std::array<SectorLabel, 4> labels = {random_label(rng), random_label(rng), random_label(rng), random_label(rng)};
        try {
            run_one(aux->v, aux->u1, aux->u2, labels);
        } catch (const std::invalid_argument &) {
            continue;
        }
        done++;
    }
    if (done < random_configs) {
        r.fail(Json{{"error", "could not draw enough configurations"}, {"drawn", done}});
    }
    r.pass = r.counterexamples.empty();
    r.scalars = Json{{"configurations", done + 1}, {"object_generators_checked", generators}};
    return r;
}

inline CheckResult assumption1(const RunConfig &cfg) {
    CheckResult r{"assumption1"};
    Rng rng(stream_seed(cfg.seed, r.name));
    EdgeLattice lat = EdgeLattice::square(cfg.window_radius);
    size_t configs = cfg.samples_or(50), done = 0, custom_third = 0;
    std::map<std::string, size_t> checked;
    for (size_t tries = 0; done < configs && tries < 2000 * configs; tries++) {
        auto aux = random_braiding_config(rng, 3);
        if (!aux) {
            continue;
        }
        SectorLabel a = random_label(rng), b = random_label(rng);
        std::optional<ConeSpec> v;
        if (done % 2 == 1) {
            v = random_subcone(rng, complement_witness(aux->u1), 2, 4);
            if (!v || edge_disjoint(*v, aux->u1) != Verdict::yes) {
                continue;
            }
        }
        std::vector<SectorCheck> results;
        try {
            results = assumption1_check(aux->u1, aux->u2, lat, cfg.margin, a, b, v);
        } catch (const std::invalid_argument &) {
            continue;
        }
        done++;
        custom_third += v.has_value();
        Json ctx{{"U1", cone_to_json(aux->u1)}, {"U2", cone_to_json(aux->u2)}, {"labels", {to_string(a), to_string(b)}},
                 {"V", v ? cone_to_json(*v) : Json("complement of U1")}};
        for (const auto &c : results) {
            checked[c.name] += c.checked;
            r.absorb(c, ctx);
        }
    }
    if (done < configs) {
        r.fail(Json{{"error", "could not draw enough configurations"}, {"drawn", done}});
    }
    r.pass = r.counterexamples.empty();
    r.scalars = Json{{"configurations", done}, {"custom_third_cone", custom_third}, {"identities_checked", checked}};
    return r;
}

inline CheckResult holonomy(const RunConfig &cfg) {
    CheckResult r{"holonomy"};
    EdgeLattice lat = EdgeLattice::square(cfg.window_radius);
    ZigZag z = quadrant_zigzag();
    Json phases = Json::object(), ops = Json::object();
    for (SectorLabel l : kSectorLabels) {
        Holonomy h = holonomy_T(make_sector(l, z.cones[0], lat), z);
        std::string key = to_string(l);
        r.absorb(same_endomorphism(h.start, h.result, cfg.margin, "returns to the input"), key);
        r.absorb(intertwiner_check(h.w, cfg.margin, "composite intertwiner"), key);
        for (const auto &step : h.steps) {
            r.absorb(intertwiner_check(step, cfg.margin, "transport step"), key);
        }
        if (h.result.label != l || !(h.result.cone == h.start.cone)) {
            r.fail(Json{{"label", key}, {"claim", "same label and cone"}});
        }
        if (!h.vacuum_phase) {
            r.fail(Json{{"label", key}, {"claim", "intertwiner is a product of stabilizers"}});
        }
        phases[key] = h.vacuum_phase ? Json(*h.vacuum_phase) : Json();
        ops[key] = h.w.op.hex();
    }
    r.pass = r.counterexamples.empty();
    r.scalars = Json{{"vacuum_phase", phases}, {"intertwiner_hex", ops}, {"zigzag", z.to_json()}};
    return r;
}

}  // namespace checks

inline CheckResult run_check(const std::string &name, const RunConfig &cfg) {
    static const std::map<std::string, CheckResult (*)(const RunConfig &)> table = {
        {"operad-laws", checks::operad_laws},           {"geometric-witnesses", checks::geometric_witnesses},
        {"perp-commutativity", checks::perp_commutativity}, {"toric-statistics", checks::toric_statistics},
        {"interchange", checks::interchange},           {"assumption1", checks::assumption1},
        {"holonomy", checks::holonomy}};
    auto start = std::chrono::steady_clock::now();
    CheckResult r;
    try {
        r = table.at(name)(cfg);
    } catch (const std::exception &err) {
        r = CheckResult{name};
        r.fail(Json{{"error", err.what()}});
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

/// Validates the config, then runs the requested checks in declaration order.
inline Report run(const RunConfig &cfg) {
    cfg.validate();
    static const std::set<std::string> sector_checks = {"toric-statistics", "interchange", "assumption1", "holonomy"};
    if (std::any_of(cfg.checks.begin(), cfg.checks.end(), [](const std::string &c) { return sector_checks.count(c); })) {
        checks::require_sector_window(cfg);
    }
    auto start = std::chrono::steady_clock::now();
    Report report{cfg, {}, 0};
    for (const auto &name : cfg.checks) {
        report.checks.push_back(run_check(name, cfg));
    }
    report.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

}  // namespace conefact
