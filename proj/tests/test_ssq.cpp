#include <doctest.h>

#include <functional>
#include <map>

#include "grouplab/error.hpp"
#include "grouplab/ssq.hpp"
#include "support.hpp"

using namespace grouplab;
using namespace grouplab::ssq;

namespace {

// Membership in Z_r on the whole lattice, straight from the recursion.
class ZoneOracle {
public:
    bool member(int r, const Point& p) {
        if (p.first < 0 || p.second > 0) return false;
        if (r == 2) return p.second == 0 && p.first >= 1;
        const auto key = std::make_tuple(r, p.first, p.second);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        const int k = r - 1;
        const bool in = member(k, p) || member(k, {p.first - k, p.second + k - 1}) || member(k, {p.first + k, p.second - k + 1});
        return memo_[key] = in;
    }

private:
    std::map<std::tuple<int, Int, Int>, bool> memo_;
};

std::set<Point> naive_dependencies(int r, Int s, Int t) {
    if (r == 2) return {{s, t}};
    std::set<Point> out;
    for (const auto& p : {Point{s - r + 1, t + r - 2}, Point{s, t}, Point{s + r - 1, t - r + 2}}) {
        auto sub = naive_dependencies(r - 1, p.first, p.second);
        out.insert(sub.begin(), sub.end());
    }
    return out;
}

FiniteSpectralSequence fixture(const std::string& name) {
    return FiniteSpectralSequence::from_json(testsupport::read_json("fixtures/ssq/" + name + ".json"));
}

}  // namespace

TEST_CASE("zones of influence") {
    const Window w{10, 10};
    const auto z2 = zone(2, w);
    std::set<Point> row;
    for (Int x = 1; x <= 10; ++x) row.insert({x, 0});
    CHECK(z2.points == row);
    CHECK(zone(3, w).points.count({3, -1}));
    for (int r = 2; r <= 12; ++r) CHECK_FALSE(zone(r, {60, 60}).points.count({0, 0}));
    CHECK(zone_margin(2) == 0);
    CHECK(zone_margin(5) == 2 + 3 + 4);
    CHECK_THROWS_AS(zone(1, w), InputError);
    CHECK_THROWS_AS(zone(3, {0, 5}), InputError);

    SUBCASE("agrees with the unbounded recursion") {
        ZoneOracle oracle;
        for (int r = 2; r <= 9; ++r) {
            const Window win{25, 25};
            const auto z = zone(r, win);
            std::size_t mismatches = 0;
            for (Int s = 0; s <= win.s_max; ++s)
                for (Int t = -win.t_depth; t <= 0; ++t) mismatches += z.points.count({s, t}) != (oracle.member(r, {s, t}) ? 1u : 0u);
            CHECK(mismatches == 0);
        }
    }
    SUBCASE("monotone growth and window independence") {
        for (int r = 2; r < 12; ++r) {
            const auto a = zone(r, {30, 30}), b = zone(r + 1, {30, 30});
            CHECK(std::includes(b.points.begin(), b.points.end(), a.points.begin(), a.points.end()));
            std::set<Point> cut;
            for (const auto& p : zone(r, {50, 45}).points)
                if (Window{30, 30}.contains(p)) cut.insert(p);
            CHECK(cut == a.points);
        }
    }
}

TEST_CASE("zone exclusion") {
    const auto rec = zone_exclusion_check(12, {60, 60});
    CHECK(rec.verdict == Verdict::pass);
    CHECK(rec.details["violations"] == 0);
    CHECK(zone_exclusion_check(2, {60, 60}).verdict == Verdict::pass);
    // Without the quadrant cut points wander through t > 0 and come back.
    const auto control = zone_exclusion_check(12, {60, 60}, {false});
    CHECK(control.verdict == Verdict::fail);
    CHECK(control.details["violations"] > 0);
}

TEST_CASE("dependency sets") {
    CHECK(dependency_set(2, 5, -3) == std::set<Point>{{5, -3}});
    CHECK(dependency_set(3, 0, 0) == std::set<Point>{{-2, 1}, {0, 0}, {2, -1}});
    CHECK(quadrant_dependency_set(3, 0, 0) == std::set<Point>{{0, 0}, {2, -1}});
    CHECK_THROWS_AS(dependency_set(1, 0, 0), InputError);
    Int bound = 1;
    for (int r = 2; r <= 9; ++r, bound *= 3)
        for (int trial = 0; trial < 10; ++trial) {
            const Int s = testsupport::uniform(-5, 20), t = testsupport::uniform(-20, 5);
            const auto v = dependency_set(r, s, t);
            CHECK(v == naive_dependencies(r, s, t));
            CHECK(static_cast<Int>(v.size()) <= bound);
            CHECK(v.count({s, t}));
            // Every dependency lies within one diagonal step per page of (s, t).
            for (const auto& [x, y] : v) CHECK(std::abs((x + y) - (s + t)) <= r - 2);
        }
    const auto rec = dependency_exclusion_check(12, {60, 60});
    CHECK(rec.verdict == Verdict::pass);
}

TEST_CASE("finite spectral sequences") {
    SUBCASE("zero") {
        const auto e = fixture("zero");
        for (const auto& p : e.positions()) CHECK(e.order_infinity(p) == 1);
        CHECK(finspecseq_property_check(e, 2).verdict == Verdict::pass);
    }
    SUBCASE("one differential Z/4 -> Z/2") {
        const auto e = fixture("two_column");
        CHECK(e.last_page() == 2);
        CHECK(e.invariants({0, 0}, 3) == std::vector<Int>{2});
        CHECK(e.invariants({2, -1}, 3).empty());
        CHECK(e.order({0, 0}, 2) == 4);
        CHECK(e.order_infinity({2, -1}) == 1);
        CHECK(finspecseq_property_check(e, 2).verdict == Verdict::pass);
    }
    SUBCASE("degenerate diagonal of Z/2") {
        const auto e = fixture("z2_diagonal");
        for (const auto& p : e.positions()) CHECK(e.order_infinity(p) == e.order(p, 2));
        CHECK(e.invariants({2, -1}, 2) == std::vector<Int>{2, 2});
        const auto rec = finspecseq_property_check(e, 2);
        CHECK(rec.verdict == Verdict::pass);
        CHECK(rec.details["diagonals"][0]["abutment_order"] == 8);
        CHECK(finspecseq_property_check(e, 3).verdict == Verdict::inapplicable);
    }
    SUBCASE("two pages") {
        const auto e = fixture("three_page");
        CHECK(e.last_page() == 3);
        CHECK(e.order({0, 0}, 3) == 2);
        CHECK(e.order({0, 0}, 4) == 1);
        CHECK(e.invariants({3, -2}, 4) == std::vector<Int>{2});
        CHECK(e.order_infinity({2, -1}) == 1);
        CHECK(finspecseq_property_check(e, 2).verdict == Verdict::pass);
    }
    SUBCASE("mixed primes") {
        const auto e = fixture("mixed_primes");
        // Z/6 -> Z/3 on page 2 is onto with kernel generated by 3.
        CHECK(e.order_infinity({1, 0}) == 2);
        CHECK(e.order_infinity({3, -1}) == 1);
        CHECK(finspecseq_property_check(e, 2).verdict == Verdict::inapplicable);
        const auto rec = finspecseq_property_check(e, 3);
        CHECK(rec.verdict == Verdict::pass);
        CHECK(rec.details["diagonals"].size() == 1);
    }
    SUBCASE("orders of later pages divide earlier ones") {
        for (const char* name : {"zero", "two_column", "z2_diagonal", "three_page", "mixed_primes"}) {
            const auto e = fixture(name);
            for (const auto& p : e.positions())
                for (int r = 2; r <= e.last_page(); ++r) CHECK(e.order(p, r) % e.order(p, r + 1) == 0);
        }
    }
    SUBCASE("invalid input") {
        using Map = std::map<Point, FiniteAbelian>;
        // d o d = identity.
        CHECK_THROWS_AS(FiniteSpectralSequence("dd", Map{{{0, 0}, {{2}}}, {{2, -1}, {{2}}}, {{4, -2}, {{2}}}},
                                               {{2, {0, 0}, {{1}}}, {2, {2, -1}, {{1}}}}),
                        InputError);
        // Z/2 -> Z/4 sending 1 to 1 is not a homomorphism.
        CHECK_THROWS_AS(FiniteSpectralSequence("hom", Map{{{0, 0}, {{2}}}, {{2, -1}, {{4}}}}, {{2, {0, 0}, {{1}}}}), InputError);
        CHECK_THROWS_AS(FiniteSpectralSequence("shape", Map{{{0, 0}, {{2}}}, {{2, -1}, {{4}}}}, {{2, {0, 0}, {{1, 0}}}}), InputError);
        CHECK_THROWS_AS(FiniteSpectralSequence("quadrant", Map{{{0, 1}, {{2}}}}, {}), InputError);
        CHECK_THROWS_AS(FiniteSpectralSequence("modulus", Map{{{0, 0}, {{0}}}}, {}), InputError);
        CHECK_THROWS_AS(FiniteSpectralSequence::from_json(nlohmann::json::parse(R"({"e2": [{"at": [0]}]})")), InputError);
        CHECK_THROWS_AS(finspecseq_property_check(fixture("zero"), 4), InputError);
    }
}
