#include <sstream>

#include <doctest.h>
#include <json.hpp>

#include "cli_commands.hpp"
#include "grouplab/cli.hpp"

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome invoke(std::vector<std::string> args, bool json = true) {
    args.insert(args.begin(), "grouplab");
    if (json) args.push_back("--json");
    std::ostringstream out, err;
    int code = grouplab::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string fixture(const std::string& rel) { return testsupport::source_path("fixtures/" + rel); }

}  // namespace

TEST_CASE("cli: every report carries the schema fields and a verdict matching the exit code") {
    for (const auto& args : testsupport::cli_invocations()) {
        CAPTURE(args[0]);
        auto r = invoke(args);
        REQUIRE(r.err.empty());
        auto j = nlohmann::json::parse(r.out);
        for (const char* key : {"tool", "version", "command", "inputs", "configuration", "verdict", "result"}) CHECK(j.contains(key));
        CHECK(j["command"] == args[0]);
        CHECK(j["configuration"]["search_bound"] == 65536);
        const std::string v = j["verdict"];
        if (v == "pass") CHECK(r.code == 0);
        else if (v == "inconclusive") CHECK(r.code == 3);
        else CHECK(r.code == 1);
    }
}

TEST_CASE("cli: documented examples") {
    auto surface = invoke({"primitive-relator", fixture("presentations/surface2.grp")});
    CHECK(surface.code == 0);
    CHECK(nlohmann::json::parse(surface.out)["result"]["primitive"] == true);

    auto klein = invoke({"primitive-relator", fixture("presentations/klein.grp")});
    CHECK(klein.code == 1);
    CHECK(nlohmann::json::parse(klein.out)["result"]["coefficient_gcd"] == 2);

    CHECK(invoke({"link-primitive", fixture("links/hopf.json")}).code == 0);
    CHECK(invoke({"link-primitive", fixture("links/mod2_cut.json")}).code == 1);

    auto torsion = invoke({"torsion", "--braid", "3", "--class", "2"});
    CHECK(torsion.code == 1);
    auto j = nlohmann::json::parse(torsion.out);
    CHECK(j["result"]["verdict"] == "torsion");
    CHECK(j["result"]["lcm_lower_bound"] == 3);

    auto free = invoke({"torsion", "--braid", "3", "--class", "3"});
    CHECK(free.code == 0);
    CHECK(nlohmann::json::parse(free.out)["result"]["verdict"] == "torsion_free");
}

TEST_CASE("cli: caps are echoed and flags accepted anywhere") {
    auto r = invoke({"--class-cap", "4", "nq", fixture("presentations/surface1.grp"), "--class", "2", "--weight-cap", "7"});
    REQUIRE(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["configuration"]["class_cap"] == 4);
    CHECK(j["configuration"]["weight_cap"] == 7);
}

TEST_CASE("cli: input errors give exit 2, a diagnostic and no report") {
    const std::vector<std::vector<std::string>> bad = {
        {},
        {"no-such-command"},
        {"nq", fixture("presentations/missing.grp")},
        {"primitive-relator", fixture("presentations/d8.grp")},
        {"link-primitive", fixture("presentations/surface1.grp")},
        {"torsion", "--braid", "9", "--class", "2"},
        {"zones", "--r", "1"},
        {"tau-check", "--fixture", "nope"},
        {"weight", fixture("presentations/free2.grp"), "x z"},
        {"--class-cap", "0", "nq", fixture("presentations/free2.grp")},
    };
    for (const auto& args : bad) {
        auto r = invoke(args);
        CAPTURE(r.out);
        CHECK(r.code == 2);
        CHECK(r.out.empty());
        CHECK(!r.err.empty());
    }
}

TEST_CASE("cli: exhausted caps are inconclusive with exit 3") {
    auto r = invoke({"--class-cap", "2", "nq", fixture("presentations/free2.grp"), "--class", "3"});
    CHECK(r.code == 3);
    CHECK(nlohmann::json::parse(r.out)["verdict"] == "inconclusive");
}

TEST_CASE("cli: text mode leads with the verdict") {
    auto r = invoke({"link-primitive", fixture("links/hopf.json")}, false);
    CHECK(r.code == 0);
    CHECK(r.out.find("verdict: pass\n") != std::string::npos);
}

TEST_CASE("cli: reports are byte-identical across runs") {
    for (const auto& args : testsupport::cli_invocations()) {
        CHECK(invoke(args).out == invoke(args).out);
        CHECK(invoke(args, false).out == invoke(args, false).out);
    }
}
