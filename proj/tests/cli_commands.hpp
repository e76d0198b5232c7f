#pragma once

#include <string>
#include <vector>

#include "support.hpp"

namespace testsupport {

/// One invocation of every subcommand on the shipped fixtures.
inline std::vector<std::vector<std::string>> cli_invocations() {
    auto f = [](const std::string& rel) { return source_path("fixtures/" + rel); };
    return {
        {"parse", f("presentations/surface2.grp")},
        {"weight", f("presentations/free2.grp"), "[[x,y],x]"},
        {"primitive-relator", f("presentations/surface2.grp")},
        {"primitive-relator", f("presentations/klein.grp")},
        {"nq", f("presentations/d8.grp"), "--class", "3"},
        {"torsion-probe", f("presentations/klein.grp"), "--class", "3"},
        {"plcs", f("pgroups/q16.json")},
        {"unipotent", f("modules/heisenberg_action.json"), "--transfer", "2,3"},
        {"power-lemma", "--matrix", f("modules/jordan5_mod3.json")},
        {"power-lemma", "--group", f("pgroups/d8.json")},
        {"tau-check", "--fixture", "heisenberg2_by_c2"},
        {"braid-quotient", "--braid", "3", "--class", "2"},
        {"torsion", "--braid", "3", "--class", "2"},
        {"link-primitive", f("links/hopf.json")},
        {"link-primitive", f("links/mod2_cut.json")},
        {"zones", "--r", "5", "--s-max", "10", "--t-depth", "10"},
        {"zones", "--r", "12", "--s-max", "60", "--t-depth", "60", "--exclusion"},
        {"deps", "--r", "5", "--s", "3", "--t", "-2", "--quadrant"},
        {"specseq", f("ssq/mixed_primes.json"), "--prime", "3"},
    };
}

}  // namespace testsupport
