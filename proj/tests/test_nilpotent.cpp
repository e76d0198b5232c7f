#include <doctest.h>

#include <set>

#include "grouplab/error.hpp"
#include "grouplab/magnus.hpp"
#include "grouplab/nilpotent.hpp"
#include "support.hpp"

using namespace grouplab;
using namespace grouplab::nilpotent;
using grouplab::words::parse_presentation;
using grouplab::words::Word;

namespace {

const NqConfig kWide{6, 128};

std::vector<std::size_t> layer_sizes(const PcPresentation& p) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < p.size(); ++i) {
        std::size_t w = static_cast<std::size_t>(p.weight(i));
        if (out.size() < w) out.resize(w, 0);
        ++out[w - 1];
    }
    return out;
}

BigInt det(BigMatrix m) {
    // Fraction-free Bareiss elimination; independent of the SNF code.
    const std::size_t n = m.size();
    BigInt sign = 1, prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t r = k + 1;
            while (r < n && m[r][k] == 0) ++r;
            if (r == n) return 0;
            std::swap(m[k], m[r]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
        prev = m[k][k];
    }
    return n == 0 ? BigInt(1) : sign * m[n - 1][n - 1];
}

}  // namespace

TEST_CASE("snf examples") {
    CHECK(snf(IntMatrix{{2, 0}, {0, 0}}, 2).diagonal == std::vector<BigInt>{2, 0});
    CHECK(snf(IntMatrix{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, 3).diagonal == std::vector<BigInt>{1, 1, 1});
    CHECK(snf(IntMatrix{{2, 4}, {6, 8}}, 2).diagonal == std::vector<BigInt>{2, 4});
    CHECK(snf(IntMatrix{}, 3).diagonal.empty());
}

TEST_CASE("snf on random matrices") {
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t r = static_cast<std::size_t>(testsupport::uniform(1, 6));
        std::size_t c = static_cast<std::size_t>(testsupport::uniform(1, 6));
        IntMatrix a(r, std::vector<Int>(c));
        for (auto& row : a)
            for (auto& x : row) x = testsupport::uniform(-50, 50);
        if (testsupport::uniform(0, 3) == 0) a[0].assign(c, 0);
        SnfResult s = snf(a, c);
        BigMatrix d = big_multiply(big_multiply(s.left, to_big(a, c), r), s.right, c);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j) CHECK(d[i][j] == (i == j ? s.diagonal[i] : BigInt(0)));
        for (std::size_t i = 0; i + 1 < s.diagonal.size(); ++i) {
            CHECK(s.diagonal[i] >= 0);
            if (s.diagonal[i] == 0)
                CHECK(s.diagonal[i + 1] == 0);
            else
                CHECK(s.diagonal[i + 1] % s.diagonal[i] == 0);
        }
        BigInt du = det(s.left), dv = det(s.right);
        CHECK((du == 1 || du == -1));
        CHECK((dv == 1 || dv == -1));
    }
}

TEST_CASE("integer linear systems") {
    for (int trial = 0; trial < 100; ++trial) {
        std::size_t r = static_cast<std::size_t>(testsupport::uniform(1, 4));
        std::size_t c = static_cast<std::size_t>(testsupport::uniform(1, 4));
        BigMatrix a(r, std::vector<BigInt>(c));
        for (auto& row : a)
            for (auto& x : row) x = testsupport::uniform(-6, 6);
        std::vector<BigInt> x0(c), b(r);
        for (auto& x : x0) x = testsupport::uniform(-5, 5);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j) b[i] += a[i][j] * x0[j];
        auto sol = solve_integer(a, c, b);
        REQUIRE(sol.has_value());
        for (std::size_t i = 0; i < r; ++i) {
            BigInt lhs = 0;
            for (std::size_t j = 0; j < c; ++j) lhs += a[i][j] * sol->particular[j];
            CHECK(lhs == b[i]);
            for (const auto& k : sol->kernel) {
                BigInt z = 0;
                for (std::size_t j = 0; j < c; ++j) z += a[i][j] * k[j];
                CHECK(z == 0);
            }
        }
    }
    CHECK(!solve_integer(BigMatrix{{2}}, 1, {BigInt(1)}).has_value());
}

TEST_CASE("hermite rows") {
    BigMatrix h = hermite_rows(BigMatrix{{2, 4}, {6, 8}, {0, 0}}, 2);
    CHECK(h == BigMatrix{{2, 0}, {0, 4}});
}

TEST_CASE("free nilpotent groups") {
    CHECK(layer_sizes(free_nilpotent(2, 1)) == std::vector<std::size_t>{2});
    CHECK(layer_sizes(free_nilpotent(2, 2)) == std::vector<std::size_t>{2, 1});
    CHECK(layer_sizes(free_nilpotent(2, 3)) == std::vector<std::size_t>{2, 1, 2});
    PcPresentation h = free_nilpotent(2, 2);
    // g3 is [a, b], so [g2, g1] = g3^-1.
    CHECK(h.collect({{1, 1}, {0, 1}}) == ExponentVector{1, 1, -1});
    CHECK_THROWS_AS(free_nilpotent(3, 5), CapExceeded);
    CHECK_THROWS_AS(free_nilpotent(2, 7), CapExceeded);
    for (auto [d, c] : {std::pair{2, 4}, {3, 3}, {2, 5}}) {
        PcPresentation p = free_nilpotent(static_cast<std::size_t>(d), c);
        CHECK(p.consistency_failures().empty());
    }
}

TEST_CASE("collection is associative in free nilpotent groups") {
    FreeNilpotent f(3, 4);
    const PcPresentation& p = f.pc();
    for (int trial = 0; trial < 100; ++trial) {
        PcWord w;
        for (int k = 0; k < 8; ++k)
            w.emplace_back(static_cast<std::size_t>(testsupport::uniform(0, static_cast<long>(p.size()) - 1)),
                           testsupport::uniform(-2, 2));
        std::size_t g = static_cast<std::size_t>(testsupport::uniform(0, static_cast<long>(p.size()) - 1));
        PcWord gw{{g, 1}};
        gw.insert(gw.end(), w.begin(), w.end());
        CHECK(p.multiply(p.unit(g), p.collect(w)) == p.collect(gw));
    }
}

TEST_CASE("free nilpotent images agree with the Magnus expansion") {
    FreeNilpotent f(2, 5);
    for (int trial = 0; trial < 100; ++trial) {
        Word u = testsupport::random_word(2, 10), v = testsupport::random_word(2, 10);
        CHECK(f.image(u * v) == f.pc().multiply(f.image(u), f.image(v)));
        CHECK(f.image(u).size() == f.pc().size());
    }
}

TEST_CASE("nq examples") {
    auto z2 = nq(parse_presentation("gens: a b\nrel: [a,b]"), 3);
    CHECK(z2.layer_invariants ==
          std::vector<AbelianInvariants>{{2, {}}, {0, {}}, {0, {}}});
    CHECK(z2.quotient.size() == 2);

    auto f2 = nq(parse_presentation("gens: a b"), 3);
    CHECK(f2.layer_invariants == std::vector<AbelianInvariants>{{2, {}}, {1, {}}, {2, {}}});

    auto klein = nq(parse_presentation("gens: a b\nrel: a b a b^-1"), 1);
    CHECK(klein.layer_invariants == std::vector<AbelianInvariants>{{1, {2}}});
}

TEST_CASE("nq layer ranks of free groups are Witt numbers") {
    for (std::size_t d = 1; d <= 3; ++d)
        for (int c = 1; c <= 5; ++c) {
            words::Presentation free{{}, {}};
            for (std::size_t i = 0; i < d; ++i) free.generators.push_back("x" + std::to_string(i));
            auto q = nq(free, c, kWide);
            for (int k = 1; k <= c; ++k) {
                CHECK(q.layer_invariants[static_cast<std::size_t>(k - 1)].rank ==
                      static_cast<std::size_t>(magnus::witt_number(static_cast<Int>(d), k)));
                CHECK(q.layer_invariants[static_cast<std::size_t>(k - 1)].torsion.empty());
            }
        }
}

TEST_CASE("nq quotients are consistent and respect the quotient tower") {
    const char* groups[] = {
        "gens: a b\nrel: a b a b^-1",
        "gens: a b c d\nrel: [a,b][c,d]",
        "gens: a b\nrel: a^4\nrel: b^2\nrel: (a b)^2",
        "gens: a b\nrel: [[a,b],a]\nrel: [[a,b],b]^3",
        "gens: a b\nrel: a^2 b^3",
        "gens: x y z\nrel: [x,y] z^2\nrel: [y,z]",
    };
    for (const char* text : groups) {
        auto p = parse_presentation(text);
        for (int c = 1; c <= 3; ++c) {
            auto q = nq(p, c, kWide);
            CHECK(q.quotient.consistency_failures().empty());
            for (const auto& r : p.relators) CHECK(q.quotient.is_identity(q.image(r)));
            auto next = nq(p, c + 1, kWide);
            std::size_t keep = 0;
            while (keep < next.quotient.size() && next.quotient.weight(keep) <= c) ++keep;
            CHECK(next.quotient.truncate(keep).relations().powers == q.quotient.relations().powers);
            CHECK(next.quotient.truncate(keep).relations().commutators == q.quotient.relations().commutators);
            CHECK(next.quotient.truncate(keep).generators() == q.quotient.generators());
            for (int k = 0; k < c; ++k) CHECK(next.layer_invariants[k] == q.layer_invariants[k]);
        }
    }
}

TEST_CASE("lcs weight matches survival in free nilpotent quotients") {
    FreeNilpotent f(2, 5);
    for (int trial = 0; trial < 100; ++trial) {
        Word w = testsupport::random_word(2, 12);
        if (testsupport::uniform(0, 1)) w = words::commutator(w, testsupport::random_word(2, 4));
        std::optional<int> survive;
        ExponentVector image = f.image(w);
        for (std::size_t i = 0; i < image.size() && !survive; ++i)
            if (image[i] != 0) survive = f.pc().weight(i);
        std::optional<int> weight;
        try {
            weight = magnus::lcs_weight(w, 2, 5);
        } catch (const CapExceeded&) {
            weight = 6;
        }
        if (w.is_identity())
            CHECK(!survive.has_value());
        else
            CHECK(survive.value_or(6) == weight);
    }
}

TEST_CASE("torsion subgroups") {
    CHECK(torsion_subgroup(free_nilpotent(2, 2)).is_torsion_free());
    PcRelations r;
    r.generators = {{"g1", 1, 0}, {"g2", 1, 2}};
    r.powers[1] = {};
    CHECK(torsion_subgroup(PcPresentation::create(r)).order() == 2);

    auto klein = nq(parse_presentation("gens: a b\nrel: a b a b^-1"), 2);
    TorsionInfo t = torsion_subgroup(klein.quotient);
    CHECK(!t.is_torsion_free());
    for (const auto& x : t.elements) CHECK(klein.quotient.is_identity(klein.quotient.power(x, t.order())));
}

TEST_CASE("torsion subgroup agrees with bounded enumeration") {
    const char* groups[] = {
        "gens: a b\nrel: a b a b^-1",
        "gens: a b\nrel: [a,b]^2",
        "gens: a b\nrel: [[a,b],a]^2",
        "gens: a b\nrel: [a,b]",
        "gens: a b\nrel: a^2 b^2",
    };
    for (const char* text : groups) {
        auto q = nq(parse_presentation(text), 3);
        const PcPresentation& g = q.quotient;
        TorsionInfo t = torsion_subgroup(g);
        std::set<ExponentVector> tset(t.elements.begin(), t.elements.end());
        for (int trial = 0; trial < 300; ++trial) {
            ExponentVector x(g.size());
            for (std::size_t i = 0; i < g.size(); ++i)
                x[i] = g.relative_order(i) > 0 ? testsupport::uniform(0, g.relative_order(i) - 1) : testsupport::uniform(-2, 2);
            bool finite = false;
            ExponentVector y = x;
            for (int k = 1; k <= 12 && !finite; ++k) {
                if (g.is_identity(y)) finite = true;
                y = g.multiply(y, x);
            }
            if (finite) CHECK(tset.count(x) == 1);
            if (tset.count(x)) CHECK(g.is_identity(g.power(x, t.order())));
        }
    }
}

TEST_CASE("enough torsion-free quotients probe") {
    auto all = [](const std::vector<ProbeEntry>& es, bool v) {
        return std::all_of(es.begin(), es.end(), [v](const ProbeEntry& e) { return e.torsion_free == v; });
    };
    auto f2 = enough_tf_probe(parse_presentation("gens: a b"), 4);
    CHECK(f2.size() == 4);
    CHECK(all(f2, true));
    CHECK(all(enough_tf_probe(parse_presentation("gens: a b c d\nrel: [a,b][c,d]"), 3), true));
    CHECK(all(enough_tf_probe(parse_presentation("gens: a b\nrel: a b a b^-1"), 2), false));
}
