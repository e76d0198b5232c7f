#include <doctest.h>

#include <algorithm>
#include <map>
#include <numeric>

#include "grouplab/error.hpp"
#include "grouplab/finite_group.hpp"
#include "support.hpp"

using namespace grouplab;
using namespace grouplab::pgroups;
using nilpotent::PcPresentation;
using nilpotent::PcRelations;

namespace {

using Perm = std::vector<int>;

// Closure of the generators under composition, identity first.
FiniteGroup permutation_group(const std::vector<Perm>& gens) {
    const std::size_t n = gens.front().size();
    Perm id(n);
    std::iota(id.begin(), id.end(), 0);
    std::vector<Perm> elems{id};
    std::map<Perm, Elem> index{{id, 0}};
    auto compose = [&](const Perm& a, const Perm& b) {
        Perm c(n);
        for (std::size_t i = 0; i < n; ++i) c[i] = b[static_cast<std::size_t>(a[i])];
        return c;
    };
    for (std::size_t k = 0; k < elems.size(); ++k)
        for (const auto& g : gens) {
            Perm c = compose(elems[k], g);
            if (!index.count(c)) {
                index[c] = static_cast<Elem>(elems.size());
                elems.push_back(c);
            }
        }
    std::vector<std::vector<Elem>> table(elems.size(), std::vector<Elem>(elems.size()));
    for (std::size_t a = 0; a < elems.size(); ++a)
        for (std::size_t b = 0; b < elems.size(); ++b) table[a][b] = index.at(compose(elems[a], elems[b]));
    return FiniteGroup::from_table(table);
}

FiniteGroup symmetric4() { return permutation_group({{1, 0, 2, 3}, {1, 2, 3, 0}}); }

// D8 x C3 on a pc presentation with mixed relative orders.
FiniteGroup d8_times_c3() {
    PcRelations r;
    r.generators = {{"a", 1, 2}, {"b", 1, 2}, {"t", 1, 3}, {"z", 2, 2}};
    r.commutators[{1, 0}] = {{3, 1}};
    r.nilpotency_class = 2;
    return FiniteGroup::from_pc(PcPresentation::create(r));
}

ElementSet random_normal_subgroup(const FiniteGroup& g) {
    std::vector<Elem> gens;
    for (long k = testsupport::uniform(0, 2); k > 0; --k)
        gens.push_back(static_cast<Elem>(testsupport::uniform(0, static_cast<long>(g.order()) - 1)));
    return g.normal_closure(normalize_set(gens));
}

// Class of G/N: least c with gamma_{c+1}(G) inside N.
int quotient_class(const FiniteGroup& g, const ElementSet& n) {
    for (int c = 0; c < 32; ++c)
        if (is_subset(g.lower_central(c + 1), n)) return c;
    return -1;
}

int quotient_derived_length(const FiniteGroup& g, const ElementSet& n) {
    ElementSet d = g.whole();
    for (int l = 0; l < 32; ++l) {
        if (is_subset(d, n)) return l;
        d = g.commutator_subgroup(d, d);
    }
    return -1;
}

bool is_power_of(std::size_t n, std::size_t p) {
    while (n % p == 0) n /= p;
    return n == 1;
}

}  // namespace

TEST_CASE("finite groups from tables and pc presentations") {
    FiniteGroup s4 = symmetric4();
    CHECK(s4.order() == 24);
    CHECK(s4.lower_central(2).size() == 12);
    CHECK(s4.lower_central(3).size() == 12);
    CHECK(s4.commutator_subgroup(s4.lower_central(2), s4.lower_central(2)).size() == 4);

    FiniteGroup g = d8_times_c3();
    CHECK(g.order() == 24);
    CHECK(g.lower_central(2).size() == 2);
    CHECK(g.lower_central(3).size() == 1);
    for (Elem a = 0; a < g.order(); ++a) {
        CHECK(g.mul(a, g.inv(a)) == 0);
        for (Elem b = 0; b < g.order(); b += 5)
            for (Elem c = 0; c < g.order(); c += 7) CHECK(g.mul(g.mul(a, b), c) == g.mul(a, g.mul(b, c)));
    }
    std::map<Int, int> orders;
    for (Elem a = 0; a < g.order(); ++a) ++orders[g.element_order(a)];
    CHECK(orders == std::map<Int, int>{{1, 1}, {2, 5}, {3, 2}, {4, 2}, {6, 10}, {12, 4}});

    CHECK_THROWS_AS(FiniteGroup::from_table({{0, 1}, {1, 1}}), InputError);
    CHECK_FALSE(g.is_subgroup({0, 1, 2}));
    CHECK(g.is_subgroup(g.generate({1})));
}

TEST_CASE("intersections of normal subgroups keep quotient properties") {
    for (const FiniteGroup& g : {symmetric4(), d8_times_c3()}) {
        for (int trial = 0; trial < 40; ++trial) {
            std::vector<ElementSet> family;
            for (long k = testsupport::uniform(1, 4); k > 0; --k) family.push_back(random_normal_subgroup(g));
            ElementSet v = g.whole();
            int max_class = 0, max_length = 0;
            bool all_nilpotent = true, all_two = true, all_three = true;
            for (const auto& u : family) {
                v = set_intersection(v, u);
                int c = quotient_class(g, u);
                all_nilpotent = all_nilpotent && c >= 0;
                max_class = std::max(max_class, c);
                max_length = std::max(max_length, quotient_derived_length(g, u));
                all_two = all_two && is_power_of(g.order() / u.size(), 2);
                all_three = all_three && is_power_of(g.order() / u.size(), 3);
            }
            CHECK(g.is_normal(v));
            // Each G/U_i is a quotient of G/V, so the bounds are attained.
            if (all_nilpotent) CHECK(quotient_class(g, v) == max_class);
            else CHECK(quotient_class(g, v) == -1);
            CHECK(quotient_derived_length(g, v) == max_length);
            if (all_two) CHECK(is_power_of(g.order() / v.size(), 2));
            if (all_three) CHECK(is_power_of(g.order() / v.size(), 3));
        }
    }
}

TEST_CASE("intersection over automorphic images of a normal subgroup") {
    FiniteGroup g = d8_times_c3();
    // Generators a, b, t as elements: the mixed radix puts a most significant.
    const Elem a = 12, b = 6, t = 2;
    std::vector<std::vector<Elem>> autos;
    for (Elem x = 0; x < g.order(); ++x)
        for (Elem y = 0; y < g.order(); ++y)
            for (Elem s = 0; s < g.order(); ++s) {
                if (g.element_order(x) != 2 || g.element_order(y) != 2 || g.element_order(s) != 3) continue;
                if (g.generate({x, y, s}).size() != g.order()) continue;
                // Extend through words in a, b, t and check multiplicativity.
                std::vector<Elem> map(g.order(), 0);
                std::vector<bool> seen(g.order(), false);
                std::vector<Elem> queue{0};
                seen[0] = true;
                bool ok = true;
                for (std::size_t k = 0; k < queue.size() && ok; ++k)
                    for (auto [gen, img] : {std::pair{a, x}, std::pair{b, y}, std::pair{t, s}}) {
                        Elem e = g.mul(queue[k], gen), im = g.mul(map[queue[k]], img);
                        if (seen[e]) {
                            ok = ok && map[e] == im;
                        } else {
                            seen[e] = true;
                            map[e] = im;
                            queue.push_back(e);
                        }
                    }
                if (!ok) continue;
                for (Elem p = 0; p < g.order() && ok; ++p)
                    for (Elem q = 0; q < g.order() && ok; ++q) ok = map[g.mul(p, q)] == g.mul(map[p], map[q]);
                if (ok) autos.push_back(map);
            }
    // Aut(D8) x Aut(C3).
    REQUIRE(autos.size() == 16);

    for (int trial = 0; trial < 30; ++trial) {
        ElementSet u = random_normal_subgroup(g);
        ElementSet v = g.whole();
        for (const auto& alpha : autos) v = set_intersection(v, g.image(u, alpha));
        CHECK(g.is_normal(v));
        const std::size_t qu = g.order() / u.size(), qv = g.order() / v.size();
        for (std::size_t p : {2u, 3u})
            if (is_power_of(qu, p)) CHECK(is_power_of(qv, p));
        CHECK(quotient_class(g, v) == quotient_class(g, u));
        // G/V embeds in the product of the finitely many G/alpha(U).
        std::size_t bound = 1;
        for (std::size_t k = 0; k < autos.size() && bound % qv != 0; ++k) bound *= qu;
        CHECK(bound % qv == 0);
    }
}
