// Acceptance run: one line per criterion, nonzero exit if any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cli_commands.hpp"
#include "grouplab/cli.hpp"
#include "grouplab/error.hpp"
#include "grouplab/extensions.hpp"
#include "grouplab/links.hpp"
#include "grouplab/magnus.hpp"
#include "grouplab/nilpotent.hpp"
#include "grouplab/pgroups.hpp"
#include "grouplab/ssq.hpp"
#include "support.hpp"

using namespace grouplab;
using pgroups::Elem;
using nilpotent::ExponentVector;
using nilpotent::IntMatrix;
using words::Word;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

struct Criterion {
    int id;
    std::string name;
    std::string tolerance;
    double budget_seconds;
    std::function<Outcome()> run;
};

const nilpotent::NqConfig kWide{6, 128};

words::Presentation free_group(std::size_t d) {
    words::Presentation p;
    for (std::size_t i = 0; i < d; ++i) p.generators.push_back("x" + std::to_string(i + 1));
    return p;
}

// (1/n) sum_{e | n} mu(e) d^(n/e)
Int witt_oracle(Int d, Int n) {
    auto mobius = [](Int m) {
        int sign = 1;
        for (Int q = 2; q * q <= m; ++q)
            if (m % q == 0) {
                m /= q;
                if (m % q == 0) return 0;
                sign = -sign;
            }
        return m > 1 ? -sign : sign;
    };
    Int total = 0;
    for (Int e = 1; e <= n; ++e)
        if (n % e == 0) {
            Int power = 1;
            for (Int k = 0; k < n / e; ++k) power *= d;
            total += mobius(e) * power;
        }
    return total / n;
}

Outcome witt_lyndon_nq() {
    int mismatches = 0, checks = 0;
    for (std::size_t d = 1; d <= 3; ++d)
        for (int n = 1; n <= 5; ++n) {
            const auto q = nilpotent::nq(free_group(d), n, kWide);
            for (int k = 1; k <= n; ++k) {
                const Int witt = witt_oracle(static_cast<Int>(d), k);
                const auto& layer = q.layer_invariants.at(static_cast<std::size_t>(k - 1));
                mismatches += magnus::witt_number(static_cast<Int>(d), k) != witt;
                mismatches += static_cast<Int>(magnus::lyndon_basis(d, k).size()) != witt;
                mismatches += static_cast<Int>(layer.rank) != witt || !layer.torsion.empty();
                ++checks;
            }
        }
    return {mismatches == 0, std::to_string(checks) + " (d, n, layer) triples, " + std::to_string(mismatches) + " mismatches"};
}

// Nontrivial words of length <= 12, a third of them commutators and a third double commutators.
Word random_test_word(std::size_t d) {
    using testsupport::random_word;
    for (;;) {
        Word w;
        switch (testsupport::uniform(0, 2)) {
            case 0: w = random_word(d, 12, 1); break;
            case 1: w = words::commutator(random_word(d, 3, 1), random_word(d, 3, 1)); break;
            default: w = words::commutator(words::commutator(random_word(d, 1, 1), random_word(d, 1, 1)), random_word(d, 1, 1));
        }
        if (!w.is_identity() && w.length() <= 12) return w;
    }
}

Outcome magnus_vs_nq() {
    std::map<std::size_t, std::vector<nilpotent::NilpotentQuotient>> towers;
    for (std::size_t d : {2, 3})
        for (int c = 1; c <= 5; ++c) towers[d].push_back(nilpotent::nq(free_group(d), c, kWide));
    int disagreements = 0;
    std::map<int, int> histogram;
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t d = trial % 2 ? 3 : 2;
        const Word w = random_test_word(d);
        std::optional<int> survives;
        for (int c = 1; c <= 5 && !survives; ++c) {
            const auto& q = towers[d][static_cast<std::size_t>(c - 1)];
            if (!q.quotient.is_identity(q.image(w))) survives = c;
        }
        std::optional<int> weight;
        try {
            weight = magnus::lcs_weight(w, d, 5);
        } catch (const CapExceeded&) {
            weight.reset();
        }
        disagreements += weight != survives;
        ++histogram[survives.value_or(6)];
    }
    std::string spread;
    for (const auto& [c, count] : histogram) spread += (c > 5 ? std::string(" >5:") : " w" + std::to_string(c) + ":") + std::to_string(count);
    return {disagreements == 0, "200 words, " + std::to_string(disagreements) + " disagreements, weights" + spread};
}

Outcome one_relator_primitivity() {
    const auto torus = words::parse_presentation("gens: a b\nrel: [a,b]");
    const auto genus2 = words::parse_presentation("gens: a1 b1 a2 b2\nrel: [a1,b1] [a2,b2]");
    const auto klein = words::parse_presentation("gens: a b\nrel: a^2 b^2");
    const auto t = magnus::is_primitive_relator(torus), g2 = magnus::is_primitive_relator(genus2);
    const auto k = magnus::is_primitive_relator(klein), f = magnus::is_primitive_relator(free_group(2));
    const bool ok = t.verdict && g2.verdict && !k.verdict && k.coefficient_gcd == 2 && f.verdict;
    std::ostringstream s;
    s << "torus " << t.verdict << ", genus 2 " << g2.verdict << ", klein " << k.verdict << " (gcd " << k.coefficient_gcd
      << "), free " << f.verdict;
    return {ok, s.str()};
}

bool is_spanning_tree(std::size_t d, const std::vector<links::Edge>& edges) {
    if (edges.size() + 1 != d) return false;
    std::vector<std::size_t> comp(d + 1);
    std::iota(comp.begin(), comp.end(), 0);
    for (const auto& [a, b] : edges) {
        const std::size_t ca = comp[a], cb = comp[b];
        if (ca == cb) return false;
        for (auto& c : comp)
            if (c == cb) c = ca;
    }
    return true;
}

// Every prime up to max |label| + 1 needs a spanning tree of edges with labels prime to it.
bool naive_primitive(std::size_t d, const std::vector<links::Edge>& edges, const std::vector<Int>& labels) {
    if (d == 1) return true;
    Int top = 1;
    for (Int l : labels) top = std::max(top, std::abs(l));
    for (Int p = 2; p <= top + 1; ++p) {
        if (!is_prime(p)) continue;
        bool found = false;
        std::vector<bool> pick(edges.size(), false);
        std::fill(pick.end() - static_cast<long>(d - 1), pick.end(), true);
        do {
            std::vector<links::Edge> tree;
            bool ok = true;
            for (std::size_t e = 0; e < edges.size(); ++e)
                if (pick[e]) {
                    tree.push_back(edges[e]);
                    ok = ok && labels[e] % p != 0;
                }
            found = ok && is_spanning_tree(d, tree);
        } while (!found && std::next_permutation(pick.begin(), pick.end()));
        if (!found) return false;
    }
    return true;
}

Outcome link_primitivity() {
    std::size_t diagrams = 0, disagreements = 0, primitive = 0;
    for (std::size_t d = 1; d <= 4; ++d) {
        std::vector<links::Edge> edges;
        for (std::size_t i = 1; i <= d; ++i)
            for (std::size_t j = i + 1; j <= d; ++j) edges.emplace_back(i, j);
        std::vector<Int> labels(edges.size(), -4);
        for (;;) {
            std::vector<std::tuple<std::size_t, std::size_t, Int>> lk;
            for (std::size_t e = 0; e < edges.size(); ++e) lk.emplace_back(edges[e].first, edges[e].second, labels[e]);
            const bool got = links::is_primitive_link(links::LinkingDiagram(d, lk)).primitive;
            disagreements += got != naive_primitive(d, edges, labels);
            primitive += got;
            ++diagrams;
            std::size_t i = 0;
            while (i < labels.size() && labels[i] == 4) labels[i++] = -4;
            if (i == labels.size()) break;
            ++labels[i];
        }
    }
    return {disagreements == 0, std::to_string(diagrams) + " diagrams (full enumeration), " + std::to_string(primitive) + " primitive, " +
                                    std::to_string(disagreements) + " disagreements"};
}

IntMatrix identity_matrix(std::size_t n) {
    IntMatrix m(n, std::vector<Int>(n, 0));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

IntMatrix mat_mul(const IntMatrix& a, const IntMatrix& b, Int p) {
    const std::size_t n = a.size();
    IntMatrix c(n, std::vector<Int>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t j = 0; j < n; ++j) c[i][j] = mod_floor(c[i][j] + a[i][k] * b[k][j], p);
    return c;
}

Outcome matrix_power_lemma() {
    int failures = 0, trials = 0;
    for (Int p : {2, 3, 5})
        for (int t = 0; t < 500; ++t) {
            const auto n = static_cast<std::size_t>(testsupport::uniform(1, 6));
            // Q U Q^-1 with U unitriangular and Q a product of elementary matrices.
            IntMatrix u = identity_matrix(n), q = identity_matrix(n), qinv = identity_matrix(n);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = i + 1; j < n; ++j) u[i][j] = testsupport::uniform(0, p - 1);
            for (int step = 0; step < 12 && n > 1; ++step) {
                const auto i = static_cast<std::size_t>(testsupport::uniform(0, static_cast<long>(n) - 1));
                auto j = static_cast<std::size_t>(testsupport::uniform(0, static_cast<long>(n) - 2));
                if (j >= i) ++j;
                const Int c = testsupport::uniform(1, p - 1);
                IntMatrix e = identity_matrix(n), einv = identity_matrix(n);
                e[i][j] = c;
                einv[i][j] = mod_floor(-c, p);
                q = mat_mul(q, e, p);
                qinv = mat_mul(einv, qinv, p);
            }
            const IntMatrix a = mat_mul(mat_mul(q, u, p), qinv, p);
            const auto rec = pgroups::check_power_lemma_matrix({p, a});
            Int pk = 1;
            while (pk < static_cast<Int>(n)) pk *= p;
            IntMatrix power = identity_matrix(n);
            for (Int s = 0; s < pk; ++s) power = mat_mul(power, a, p);
            failures += !rec.unipotent || !rec.pass || rec.p_power > pk || power != identity_matrix(n);
            ++trials;
        }
    return {failures == 0, std::to_string(trials) + " matrices over F_2, F_3, F_5, " + std::to_string(failures) + " failures"};
}

Outcome automorphism_power_lemma() {
    const std::vector<std::string> groups = {"c8",   "c4xc2", "c2^3", "d8",    "q8",         "c16",   "c4xc4",    "c4xc2_semi_c2",
                                             "c4_semi_c4", "c8xc2", "m16", "d16", "qd16",   "q16",   "c4xc2^2", "c2xd8", "c2xq8", "pauli", "c2^4"};
    std::size_t autos = 0, failures = 0;
    for (const auto& name : groups) {
        const auto g = pgroups::load_p_group(testsupport::read_json("fixtures/pgroups/" + name + ".json"), name);
        const int k = pgroups::nilpotent_p_length(g);
        Int exponent = 1;
        for (int i = 1; i < k; ++i) exponent *= g.prime();
        for (const auto& alpha : pgroups::automorphisms(g, true)) {
            // Iterate the element map directly.
            const auto map = pgroups::automorphism_map(g, alpha);
            std::vector<Elem> power(map.size());
            std::iota(power.begin(), power.end(), Elem{0});
            for (Int s = 0; s < exponent; ++s)
                for (auto& x : power) x = map[x];
            bool identity = true;
            for (std::size_t x = 0; x < power.size(); ++x) identity = identity && power[x] == x;
            const auto rec = pgroups::check_power_lemma_automorphism(g, alpha);
            failures += !identity || rec.verdict != Verdict::pass;
            ++autos;
        }
    }
    return {failures == 0 && groups.size() == 19, std::to_string(groups.size()) + " groups of order 8 and 16, " + std::to_string(autos) +
                                                       " H_1-trivial automorphisms, " + std::to_string(failures) + " failures"};
}

Outcome tau_calculus() {
    std::size_t records = 0, failures = 0, fr_applicable = 0, hall_applicable = 0;
    for (const auto& name : extensions::split_fixture_names()) {
        const auto s = extensions::split_fixture(name);
        std::vector<VerificationRecord> recs{extensions::tau_equation_check(s)};
        for (int m = 0; m <= 3; ++m) {
            recs.push_back(extensions::falk_randell_inclusion_check(s, m));
            fr_applicable += recs.back().verdict != Verdict::inapplicable;
            recs.push_back(extensions::hall_inclusion_check(s.group(), s.kernel_subgroup(), m, name));
            hall_applicable += recs.back().verdict != Verdict::inapplicable;
        }
        for (const auto& r : recs) failures += r.verdict == Verdict::fail || r.verdict == Verdict::inconclusive;
        records += recs.size();
    }
    return {failures == 0 && fr_applicable > 0 && hall_applicable > 0,
            std::to_string(extensions::split_fixture_names().size()) + " fixtures, " + std::to_string(records) + " records (" +
                std::to_string(fr_applicable) + " Falk-Randell and " + std::to_string(hall_applicable) + " Hall applicable), " +
                std::to_string(failures) + " failures"};
}

Outcome zone_exclusion() {
    const ssq::Window w{60, 60};
    const auto zones = ssq::zone_exclusion_check(12, w);
    const auto deps = ssq::dependency_exclusion_check(12, w);
    const auto control = ssq::zone_exclusion_check(12, w, {false});
    return {zones.verdict == Verdict::pass && deps.verdict == Verdict::pass && control.verdict == Verdict::fail,
            "zones " + to_string(zones.verdict) + ", dependency sets " + to_string(deps.verdict) + ", uncut control " +
                to_string(control.verdict)};
}

std::vector<ExponentVector> box(std::size_t rank, Int bound) {
    std::vector<ExponentVector> out{ExponentVector(rank, -bound)};
    for (;;) {
        ExponentVector v = out.back();
        std::size_t i = 0;
        while (i < rank && v[i] == bound) v[i++] = -bound;
        if (i == rank) return out;
        ++v[i];
        out.push_back(v);
    }
}

// Orders of finite-order elements h t(q) with kernel coordinates in [-bound, bound].
std::set<Int> brute_force_orders(const extensions::ExtensionWithFactorSet& e, Int bound) {
    std::set<Int> found;
    const auto qn = static_cast<Int>(e.quotient().order());
    for (std::size_t q = 1; q < e.quotient().order(); ++q)
        for (const auto& h : box(e.kernel().size(), bound)) {
            extensions::ExtensionWithFactorSet::Element x{h, q}, p = x;
            for (Int k = 1; k <= qn; ++k, p = e.multiply(p, x))
                if (p == e.identity()) {
                    found.insert(k);
                    break;
                }
        }
    return found;
}

Outcome braid_quotients() {
    std::ostringstream s;
    bool ok = true;
    for (auto [n, big_n] : std::vector<std::pair<std::size_t, int>>{{2, 2}, {3, 2}, {3, 3}}) {
        const auto e = extensions::braid_quotient(n, big_n, kWide);
        const auto r = extensions::torsion_search(e);
        const auto brute = brute_force_orders(e, 3);
        bool agree = r.verdict != extensions::TorsionVerdict::inconclusive &&
                     (r.verdict == extensions::TorsionVerdict::torsion) == !brute.empty();
        for (const auto& w : r.witnesses) agree = agree && brute.count(w.order) && e.order({*w.solution, w.coset}) == w.order;
        ok = ok && agree;
        s << "B" << n << "/g" << big_n << " " << extensions::to_string(r.verdict) << (agree ? "" : " (disagrees)") << "; ";
    }
    s << "least torsion-free N:";
    for (std::size_t n : {2, 3, 4}) {
        std::optional<int> least;
        for (int big_n = 2; big_n <= 4 && !least; ++big_n)
            if (extensions::torsion_search(extensions::braid_quotient(n, big_n, kWide)).verdict == extensions::TorsionVerdict::torsion_free)
                least = big_n;
        s << " n=" << n << "->" << (least ? std::to_string(*least) : "none<=4");
        ok = ok && least.has_value();
    }
    return {ok, s.str()};
}

Outcome determinism() {
    std::size_t runs = 0, differing = 0;
    for (auto args : testsupport::cli_invocations()) {
        args.insert(args.begin(), "grouplab");
        for (bool json : {false, true}) {
            auto a = args;
            if (json) a.push_back("--json");
            std::ostringstream o1, e1, o2, e2;
            const int c1 = cli::run(a, o1, e1), c2 = cli::run(a, o2, e2);
            differing += c1 != c2 || o1.str() != o2.str() || e1.str() != e2.str() || o1.str().empty();
            ++runs;
        }
    }
    return {differing == 0, std::to_string(runs) + " report pairs over all subcommands, " + std::to_string(differing) + " differing"};
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1, "Witt/Lyndon/nq layer agreement, d<=3, n<=5", "exact", 30, witt_lyndon_nq},
        {2, "Magnus weight vs nq survival, 200 words", "exact", 60, magnus_vs_nq},
        {3, "one-relator primitivity", "exact verdicts, gcd 2", 5, one_relator_primitivity},
        {4, "link primitivity vs oracle, d<=4, labels in [-4,4]", "zero disagreements", 300, link_primitivity},
        {5, "matrix power lemma, 500 per p in {2,3,5}", "zero failures", 30, matrix_power_lemma},
        {6, "automorphism power lemma, orders 8 and 16", "zero failures", 300, automorphism_power_lemma},
        {7, "tau equation, Falk-Randell and Hall inclusions, m<=3", "zero failures", 300, tau_calculus},
        {8, "zone and dependency exclusion, r<=12, 60x60", "exact", 10, zone_exclusion},
        {9, "braid quotient torsion vs brute force", "exact verdict agreement", 600, braid_quotients},
        {10, "CLI determinism", "byte-identical", 600, determinism},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool pass = o.pass && secs < c.budget_seconds;
        failed += !pass;
        std::printf("criterion %2d: %s  %s [%s, < %.0f s] %.2f s: %s\n", c.id, pass ? "PASS" : "FAIL", c.name.c_str(), c.tolerance.c_str(),
                    c.budget_seconds, secs, o.detail.c_str());
        std::fflush(stdout);
    }
    return failed == 0 ? 0 : 1;
}
