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

#include "conefact/harness.hpp"

#include <CLI11.hpp>
#include <iostream>

using namespace conefact;

namespace {

struct GlobalFlags {
    std::optional<int64_t> dim, window, margin, samples;
    std::optional<uint64_t> seed;
    std::optional<std::string> checks, config, report;
};

RunConfig resolve(const GlobalFlags &f) {
    RunConfig cfg;
    if (f.config) {
        cfg = load_config_file(*f.config, cfg);
    }
    cfg = apply_env(cfg);
    if (f.dim) cfg.dim = *f.dim;
    if (f.window) cfg.window_radius = *f.window;
    if (f.margin) cfg.margin = *f.margin;
    if (f.samples) cfg.samples = *f.samples;
    if (f.seed) cfg.seed = *f.seed;
    if (f.checks) cfg.checks = detail::split_list(*f.checks);
    return cfg;
}

void emit(const Json &j, const GlobalFlags &f) {
    std::string text = j.dump(2) + "\n";
    if (f.report) {
        std::ofstream out(*f.report);
        if (!out) {
            throw ConfigError("cannot write report '" + *f.report + "'");
        }
        out << text;
    } else {
        std::cout << text;
    }
}

int emit_report(const Report &report, const GlobalFlags &f) {
    for (const auto &c : report.checks) {
        std::cout << (c.pass ? "PASS " : "FAIL ") << c.name << " (" << c.seconds << " s)\n";
    }
    if (f.report) {
        emit(report.to_json(), f);
    }
    std::cout << (report.pass() ? "all checks passed" : "some checks failed") << " in " << report.wall_time << " s\n";
    return report.pass() ? 0 : 1;
}

std::pair<SectorLabel, SectorLabel> parse_pair(const std::string &text) {
    auto parts = detail::split_list(text);
    if (parts.size() != 2) {
        throw std::invalid_argument("expected two labels like 'e,m'");
    }
    return {parse_sector_label(parts[0]), parse_sector_label(parts[1])};
}

Json checks_json(const std::vector<SectorCheck> &checks) {
    Json out = Json::array();
    for (const auto &c : checks) {
        out.push_back(Json{{"name", c.name}, {"pass", c.pass()}, {"checked", c.checked}, {"counterexamples", c.counterexamples}});
    }
    return out;
}

bool all_pass(const std::vector<SectorCheck> &checks) {
    return std::all_of(checks.begin(), checks.end(), [](const SectorCheck &c) { return c.pass(); });
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Exact checks for cone nets, their operad and toric-code sectors."};
    app.require_subcommand(1);
    app.fallthrough();
    GlobalFlags flags;
    app.add_option("--dim", flags.dim, "ambient dimension");
    app.add_option("--window", flags.window, "lattice window radius");
    app.add_option("--margin", flags.margin, "interior margin width");
    app.add_option("--samples", flags.samples, "samples per check (0: check default)");
    app.add_option("--seed", flags.seed, "base seed");
    app.add_option("--checks", flags.checks, "comma-separated check names");
    app.add_option("--config", flags.config, "config file (JSON or key = value lines)");
    app.add_option("--report", flags.report, "write the JSON report here");
    app.footer("Environment overrides: CONEFACT_DIM, CONEFACT_WINDOW, CONEFACT_MARGIN, CONEFACT_SAMPLES, CONEFACT_SEED,\n"
               "CONEFACT_CHECKS, CONEFACT_OPERAD_WINDOW, CONEFACT_SCAN_RADIUS (file < env < flags).\n"
               "Cones are written 'px,py:tx,ty:cos', e.g. '0,0:1,0:1/2', or as JSON.");

    std::function<int()> action;

    auto *cone = app.add_subcommand("cone", "cone predicates and witnesses");
    cone->require_subcommand(1);
    std::string c_a, c_b, c_point, c_kind = "complement";
    std::vector<std::string> c_others;
    auto *contains_cmd = cone->add_subcommand("contains", "point membership");
    contains_cmd->add_option("--cone", c_a)->required();
    contains_cmd->add_option("--point", c_point)->required();
    contains_cmd->callback([&] {
        action = [&] {
            ConeSpec c = parse_cone(c_a);
            QVec x;
            for (const auto &s : detail::split_list(c_point)) {
                x.push_back(parse_rational(s));
            }
            emit(Json{{"cone", cone_to_json(c)}, {"point", c_point}, {"contains", c.contains(x)}}, flags);
            return 0;
        };
    });
    auto *disjoint_cmd = cone->add_subcommand("disjoint", "lattice disjointness");
    disjoint_cmd->add_option("--a", c_a)->required();
    disjoint_cmd->add_option("--b", c_b)->required();
    disjoint_cmd->callback([&] {
        action = [&] {
            ConeSpec a = parse_cone(c_a), b = parse_cone(c_b);
            DisjointResult d = disjoint(a, b);
            emit(Json{{"lattice", to_string(d.verdict)},
                      {"witness", d.witness ? Json(*d.witness) : Json()},
                      {"continuum", to_string(r_disjoint(a, b))},
                      {"edges", to_string(edge_disjoint(a, b))}},
                 flags);
            return 0;
        };
    });
    auto *contained_cmd = cone->add_subcommand("contained", "lattice containment");
    contained_cmd->add_option("--inner", c_a)->required();
    contained_cmd->add_option("--outer", c_b)->required();
    contained_cmd->callback([&] {
        action = [&] {
            ConeSpec a = parse_cone(c_a), b = parse_cone(c_b);
            ContainResult c = contained(a, b);
            emit(Json{{"lattice", to_string(c.verdict)},
                      {"witness", c.witness ? Json(*c.witness) : Json()},
                      {"continuum", to_string(r_contained(a, b))}},
                 flags);
            return 0;
        };
    });
    auto *witness_cmd = cone->add_subcommand("witness", "complement, enlargement or separation witness");
    witness_cmd->add_option("--kind", c_kind)->check(CLI::IsMember({"complement", "enlargement", "separation"}));
    witness_cmd->add_option("--u", c_a)->required();
    witness_cmd->add_option("--v", c_b, "second cone (enlargement)");
    witness_cmd->add_option("--others", c_others, "disjoint cones (separation)");
    witness_cmd->callback([&] {
        action = [&] {
            ConeSpec u = parse_cone(c_a);
            if (c_kind == "complement") {
                emit(Json{{"complement", cone_to_json(complement_witness(u))}}, flags);
            } else if (c_kind == "enlargement") {
                Enlargement e = enlargement_witness(u, parse_cone(c_b));
                emit(Json{{"v_prime", cone_to_json(e.v_prime)}, {"w", cone_to_json(e.w)}}, flags);
            } else {
                std::vector<ConeSpec> others;
                for (const auto &o : c_others) {
                    others.push_back(parse_cone(o));
                }
                emit(Json{{"separating", cone_to_json(separation_witness(u, others))}}, flags);
            }
            return 0;
        };
    });

    auto *operad = app.add_subcommand("operad", "operad law suite");
    operad->require_subcommand(1);
    operad->add_subcommand("laws", "unit, associativity and equivariance on sampled operations")->callback([&] {
        action = [&] {
            RunConfig cfg = resolve(flags);
            cfg.checks = {"operad-laws"};
            return emit_report(run(cfg), flags);
        };
    });

    auto *net = app.add_subcommand("net", "local net on the edge lattice");
    net->require_subcommand(1);
    std::string n_u1, n_u2;
    auto *perp = net->add_subcommand("perp", "commutation of the algebras of two disjoint cones");
    perp->add_option("--u1", n_u1);
    perp->add_option("--u2", n_u2);
    perp->callback([&] {
        action = [&] {
            RunConfig cfg = resolve(flags);
            if (n_u1.empty() || n_u2.empty()) {
                cfg.checks = {"perp-commutativity"};
                return emit_report(run(cfg), flags);
            }
            PerpReport rep = perp_commutativity_check(parse_cone(n_u1), parse_cone(n_u2), EdgeLattice::square(cfg.window_radius));
            emit(Json{{"pass", rep.pass()}, {"report", rep.to_json()}}, flags);
            return rep.pass() ? 0 : 1;
        };
    });

    auto *sectors = app.add_subcommand("sectors", "toric-code sectors");
    sectors->require_subcommand(1);
    std::string s_pair = "e,m", s_label = "e", s_zigzag = "quadrants", s_labels = "e,m,m,e", s_u1, s_u2;
    auto *braid = sectors->add_subcommand("braid", "braiding and monodromy of two sectors");
    braid->add_option("--pair", s_pair, "labels s1,s2");
    braid->callback([&] {
        action = [&] {
            RunConfig cfg = resolve(flags);
            EdgeLattice lat = EdgeLattice::square(cfg.window_radius);
            auto [a, b] = parse_pair(s_pair);
            BraidingConfig aux = default_braiding_config();
            Monodromy m = monodromy(make_sector(a, aux.v, lat), make_sector(b, aux.v, lat), aux);
            auto dense = dense_scalar(m.forward.factors);
            std::vector<SectorCheck> checks = {intertwiner_check(m.forward.tau, cfg.margin, "braiding intertwiner"),
                                               intertwiner_check(m.backward.tau, cfg.margin, "reverse braiding intertwiner")};
            SectorCheck oracle{"dense oracle"};
            oracle.record(dense && m.forward.scalar && std::abs(dense->real() - *m.forward.scalar) < 1e-12,
                          [] { return std::string("dense scalar differs"); });
            checks.push_back(oracle);
            auto scalar = [](const std::optional<int> &s) { return s ? Json(*s) : Json(); };
            emit(Json{{"config", {{"pair", s_pair}, {"window", cfg.window_radius}, {"margin", cfg.margin}, {"aux", aux.to_json()}}},
                      {"scalar_phase", {{"braiding", scalar(m.forward.scalar)}, {"monodromy", scalar(m.scalar)}}},
                      {"intertwiner_hex", m.forward.tau.op.hex()},
                      {"checks", checks_json(checks)}},
                 flags);
            return all_pass(checks) ? 0 : 1;
        };
    });
    auto *hol = sectors->add_subcommand("holonomy", "four-step zig-zag transport around the apex");
    hol->add_option("--label", s_label);
    hol->add_option("--zigzag", s_zigzag)->check(CLI::IsMember({"quadrants"}));
    hol->callback([&] {
        action = [&] {
            RunConfig cfg = resolve(flags);
            EdgeLattice lat = EdgeLattice::square(cfg.window_radius);
            ZigZag z = quadrant_zigzag();
            Holonomy h = holonomy_T(make_sector(parse_sector_label(s_label), z.cones[0], lat), z);
            std::vector<SectorCheck> checks = {same_endomorphism(h.start, h.result, cfg.margin, "returns to the input"),
                                               intertwiner_check(h.w, cfg.margin, "composite intertwiner")};
            SectorCheck stab{"product of stabilizers"};
            stab.record(h.vacuum_phase.has_value(), [] { return std::string("not a stabilizer product"); });
            checks.push_back(stab);
            emit(Json{{"config", {{"label", s_label}, {"zigzag", z.to_json()}, {"window", cfg.window_radius}}},
                      {"scalar_phase", h.vacuum_phase ? Json(*h.vacuum_phase) : Json()},
                      {"intertwiner_hex", h.w.op.hex()},
                      {"checks", checks_json(checks)}},
                 flags);
            return all_pass(checks) ? 0 : 1;
        };
    });
    auto *inter = sectors->add_subcommand("interchange", "interchange law for a binary operation");
    inter->add_option("--labels", s_labels, "s1,sd1,s2,sd2");
    inter->callback([&] {
        action = [&] {
            RunConfig cfg = resolve(flags);
            EdgeLattice lat = EdgeLattice::square(cfg.window_radius);
            auto l = detail::split_list(s_labels);
            if (l.size() != 4) {
                throw std::invalid_argument("expected four labels");
            }
            ConeSpec whole(IVec{0, 0}, {1, 0}, rat(-9, 10));
            ConeSpec up(IVec{0, 1}, {0, 1}, rat(1, 2)), down(IVec{0, -1}, {0, -1}, rat(1, 2));
            OperadOperation op = make_net_operation(whole, {up, down});
            std::array<std::pair<Sector, Sector>, 2> pairs = {
                std::pair{make_sector(parse_sector_label(l[0]), up, lat), make_sector(parse_sector_label(l[1]), up, lat)},
                std::pair{make_sector(parse_sector_label(l[2]), down, lat), make_sector(parse_sector_label(l[3]), down, lat)}};
            InterchangeReport rep = interchange_check(pairs, op, cfg.margin);
            emit(Json{{"config", {{"labels", s_labels}, {"operation", operation_to_json(op)}, {"window", cfg.window_radius}}},
                      {"checks", checks_json({rep.object_level, rep.morphism_level})}},
                 flags);
            return rep.pass() ? 0 : 1;
        };
    });
    auto *a1 = sectors->add_subcommand("assumption1", "locality identities for sectors in two disjoint cones");
    a1->add_option("--labels", s_pair, "labels in U1,U2");
    a1->add_option("--u1", s_u1);
    a1->add_option("--u2", s_u2);
    a1->callback([&] {
        action = [&] {
            RunConfig cfg = resolve(flags);
            EdgeLattice lat = EdgeLattice::square(cfg.window_radius);
            auto [a, b] = parse_pair(s_pair);
            ConeSpec u1 = s_u1.empty() ? ConeSpec(IVec{1, 0}, {1, 0}, rat(1, 2)) : parse_cone(s_u1);
            ConeSpec u2 = s_u2.empty() ? ConeSpec(IVec{-1, 0}, {-1, 0}, rat(1, 2)) : parse_cone(s_u2);
            auto checks = assumption1_check(u1, u2, lat, cfg.margin, a, b);
            emit(Json{{"config", {{"U1", cone_to_json(u1)}, {"U2", cone_to_json(u2)}, {"labels", s_pair}}},
                      {"checks", checks_json(checks)}},
                 flags);
            return all_pass(checks) ? 0 : 1;
        };
    });

    app.add_subcommand("verify-all", "every check with its acceptance defaults")->callback([&] {
        action = [&] {
            RunConfig cfg = resolve(flags);
            if (!flags.checks && !std::getenv("CONEFACT_CHECKS")) {
                cfg.checks = known_checks();
            }
            return emit_report(run(cfg), flags);
        };
    });
    app.add_subcommand("run", "the checks selected by config, environment and flags")->callback([&] {
        action = [&] { return emit_report(run(resolve(flags)), flags); };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        return app.exit(e);
    }
    try {
        return action();
    } catch (const ConfigError &e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
