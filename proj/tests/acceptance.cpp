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

// Runs the full suite once with its defaults and prints one line per acceptance criterion.

#include "conefact/harness.hpp"

#include <iostream>

using namespace conefact;

namespace {

int failures = 0;

void line(int number, const std::string &what, bool ok, const std::string &detail) {
    failures += ok ? 0 : 1;
    std::cout << (ok ? "PASS" : "FAIL") << " [" << number << "] " << what << ": " << detail << "\n";
}

const CheckResult &find(const Report &r, const std::string &name) {
    for (const auto &c : r.checks) {
        if (c.name == name) {
            return c;
        }
    }
    throw std::logic_error("missing check " + name);
}

std::string seconds(double s) {
    std::ostringstream out;
    out.precision(2);
    out << std::fixed << s << " s";
    return out.str();
}

}  // namespace

int main() {
    RunConfig cfg;
    Report report = run(cfg);
    Json j = report.to_json();

    const auto &operad = find(report, "operad-laws");
    line(1, "operad laws, 500 operations, window 32", operad.pass && operad.scalars["checked"] == 500 && operad.seconds < 10,
         std::to_string(operad.counterexamples.size()) + " counterexamples, " + seconds(operad.seconds));

    const auto &wit = find(report, "geometric-witnesses");
    line(2, "witnesses on 200 configurations, scans of radius 50",
         wit.pass && wit.scalars["configurations"] == 200 && wit.scalars["scan_radius"] == 50 && wit.seconds < 30,
         std::to_string(wit.scalars["scans"].get<size_t>()) + " scans, " + seconds(wit.seconds));

    const auto &perp = find(report, "perp-commutativity");
    line(3, "perp commutativity, 100 pairs plus 100 dense-oracle pairs",
         perp.pass && perp.scalars["pairs"] == 100 && perp.scalars["oracle_pairs"] == 100 &&
             perp.scalars["oracle_qubits"].get<size_t>() <= 10,
         std::to_string(perp.scalars["generator_pairs"].get<size_t>()) + " generator pairs, " + seconds(perp.seconds));

    const auto &tor = find(report, "toric-statistics");
    const Json &s = tor.scalars;
    bool table = s["em"] == -1 && s["me"] == -1 && s["ee"] == 1 && s["mm"] == 1 && s["eps_self"] == -1;
    line(4, "toric statistics em=-1 ee=mm=+1 tau(eps,eps)=-1, dense oracle agrees", tor.pass && table && tor.seconds < 5,
         "em=" + s["em"].dump() + " ee=" + s["ee"].dump() + " mm=" + s["mm"].dump() + " eps_self=" + s["eps_self"].dump() +
             ", " + seconds(tor.seconds));

    const auto &inter = find(report, "interchange");
    line(5, "interchange law on the (e,m)x(m,e) configuration and 20 random ones",
         inter.pass && inter.scalars["configurations"] == 21,
         std::to_string(inter.counterexamples.size()) + " violations, " + seconds(inter.seconds));

    const auto &a1 = find(report, "assumption1");
    line(6, "locality identities (1)-(3) on 50 configurations", a1.pass && a1.scalars["configurations"] == 50,
         std::to_string(a1.counterexamples.size()) + " violations, " + seconds(a1.seconds));

    const auto &hol = find(report, "holonomy");
    line(7, "holonomy is trivial for vacuum, e, m, eps", hol.pass && hol.seconds < 5,
         "vacuum phases " + hol.scalars["vacuum_phase"].dump() + ", " + seconds(hol.seconds));

    bool noted = j["notes"].size() == 1 && j["notes"][0].get<std::string>().find("not verified") != std::string::npos;
    line(8, "Haag duality stated as not verifiable, consequences checked", noted && tor.pass && inter.pass && a1.pass && hol.pass,
         "stated in report notes");

    line(9, "full verify-all suite under 2 minutes", report.pass() && report.wall_time < 120, seconds(report.wall_time));
    return failures == 0 ? 0 : 1;
}
