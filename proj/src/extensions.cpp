#include "grouplab/extensions.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "grouplab/error.hpp"
#include "grouplab/snf.hpp"

namespace grouplab::extensions {

using nilpotent::BigInt;
using nilpotent::BigMatrix;
using pgroups::is_subset;
using pgroups::set_intersection;

namespace {

std::vector<Elem> compose_maps(const std::vector<Elem>& outer, const std::vector<Elem>& inner) {
    std::vector<Elem> out(inner.size());
    for (std::size_t x = 0; x < inner.size(); ++x) out[x] = outer[inner[x]];
    return out;
}

bool is_bijective_hom(const FiniteGroup& g, const std::vector<Elem>& map) {
    std::vector<bool> hit(g.order(), false);
    for (Elem x : map) hit[x] = true;
    if (std::count(hit.begin(), hit.end(), false) != 0) return false;
    for (Elem a = 0; a < g.order(); ++a)
        for (Elem b = 0; b < g.order(); ++b)
            if (map[g.mul(a, b)] != g.mul(map[a], map[b])) return false;
    return true;
}

}  // namespace

SemidirectProduct::SemidirectProduct(FinitePGroup kernel, FinitePGroup quotient, std::vector<Automorphism> action, std::string name)
    : name_(std::move(name)), kernel_(std::move(kernel)), quotient_(std::move(quotient)) {
    const FiniteGroup& H = kernel_.group();
    const FiniteGroup& Q = quotient_.group();
    if (action.size() != quotient_.rank()) throw InputError("need one automorphism per pc-generator of Q");
    std::vector<std::vector<Elem>> gen_maps;
    for (const auto& alpha : action) {
        auto map = pgroups::automorphism_map(kernel_, alpha);
        if (!is_bijective_hom(H, map)) throw InputError("an action image is not an automorphism of H");
        gen_maps.push_back(std::move(map));
    }
    std::vector<Elem> id(H.order());
    std::iota(id.begin(), id.end(), 0);
    act_.assign(Q.order(), id);
    for (Elem q = 0; q < Q.order(); ++q) {
        auto e = quotient_.exponents(q);
        std::vector<Elem> m = id;
        for (std::size_t i = 0; i < e.size(); ++i)
            for (Int k = 0; k < e[i]; ++k) m = compose_maps(m, gen_maps[i]);
        act_[q] = std::move(m);
    }
    // Q -> Aut(H) must be a homomorphism; this covers all defining relations of Q.
    for (Elem a = 0; a < Q.order(); ++a)
        for (Elem b = 0; b < Q.order(); ++b)
            if (act_[Q.mul(a, b)] != compose_maps(act_[a], act_[b])) throw InputError("the action does not respect the relations of Q");
    const std::size_t nh = H.order(), nq = Q.order(), n = nh * nq;
    std::vector<std::vector<Elem>> table(n, std::vector<Elem>(n));
    for (Elem h1 = 0; h1 < nh; ++h1)
        for (Elem q1 = 0; q1 < nq; ++q1)
            for (Elem h2 = 0; h2 < nh; ++h2)
                for (Elem q2 = 0; q2 < nq; ++q2)
                    table[pair(h1, q1)][pair(h2, q2)] = pair(H.mul(h1, act_[q1][h2]), Q.mul(q1, q2));
    group_ = FiniteGroup::from_table(std::move(table));
}

ElementSet SemidirectProduct::kernel_subgroup() const {
    ElementSet s;
    for (Elem h = 0; h < kernel_.group().order(); ++h) s.push_back(pair(h, 0));
    return s;
}

ElementSet SemidirectProduct::section_subgroup() const {
    ElementSet s;
    for (Elem q = 0; q < quotient_.group().order(); ++q) s.push_back(pair(0, q));
    return s;
}

Elem SemidirectProduct::tau(Elem g) const {
    Elem q = quotient_part(g);
    return group_.mul(pair(0, quotient_.group().inv(q)), g);
}

std::vector<std::string> split_fixture_names() {
    return {"heisenberg3_by_c3", "heisenberg2_by_c2", "c2sq_by_c2_swap", "c3_by_c2_inversion",
            "c4_by_c2_trivial",  "d8_by_c2_swap",     "d8sq_by_c2_wreath", "c2cube_by_ut3"};
}

namespace {

using nilpotent::PcRelations;
using nilpotent::PcWord;

FinitePGroup small_pgroup(Int p, std::size_t rank, const std::map<std::size_t, PcWord>& powers,
                          const std::map<std::pair<std::size_t, std::size_t>, PcWord>& comms, std::string name) {
    PcRelations r;
    for (std::size_t i = 0; i < rank; ++i) r.generators.push_back({"g" + std::to_string(i + 1), 1, p});
    for (std::size_t i = 0; i < rank; ++i) r.powers[i] = powers.count(i) ? powers.at(i) : PcWord{};
    r.commutators = comms;
    r.nilpotency_class = comms.empty() ? 1 : 2;
    return FinitePGroup(PcPresentation::create(r), p, std::move(name));
}

// Element of a p-group from an exponent vector.
Elem el(const FinitePGroup& g, ExponentVector e) { return g.element(e); }

}  // namespace

SemidirectProduct split_fixture(const std::string& name) {
    const auto c2 = small_pgroup(2, 1, {}, {}, "c2");
    if (name == "heisenberg3_by_c3") {
        auto h = small_pgroup(3, 3, {}, {{{1, 0}, {{2, 1}}}}, "heisenberg27");
        auto q = small_pgroup(3, 1, {}, {}, "c3");
        return SemidirectProduct(h, q, {{el(h, {1, 1, 0}), el(h, {0, 1, 0}), el(h, {0, 0, 1})}}, name);
    }
    if (name == "heisenberg2_by_c2") {
        auto h = small_pgroup(2, 3, {}, {{{1, 0}, {{2, 1}}}}, "heisenberg8");
        return SemidirectProduct(h, c2, {{el(h, {1, 0, 1}), el(h, {0, 1, 0}), el(h, {0, 0, 1})}}, name);
    }
    if (name == "c2sq_by_c2_swap") {
        auto h = small_pgroup(2, 2, {}, {}, "c2^2");
        return SemidirectProduct(h, c2, {{el(h, {0, 1}), el(h, {1, 0})}}, name);
    }
    if (name == "c3_by_c2_inversion") {
        auto h = small_pgroup(3, 1, {}, {}, "c3");
        return SemidirectProduct(h, c2, {{el(h, {2})}}, name);
    }
    if (name == "c4_by_c2_trivial") {
        auto h = small_pgroup(2, 2, {{0, {{1, 1}}}}, {}, "c4");
        return SemidirectProduct(h, c2, {{el(h, {1, 0}), el(h, {0, 1})}}, name);
    }
    if (name == "d8_by_c2_swap") {
        auto h = small_pgroup(2, 3, {}, {{{1, 0}, {{2, 1}}}}, "d8");
        return SemidirectProduct(h, c2, {{el(h, {0, 1, 0}), el(h, {1, 0, 0}), el(h, {0, 0, 1})}}, name);
    }
    if (name == "d8sq_by_c2_wreath") {
        auto h = small_pgroup(2, 6, {}, {{{1, 0}, {{2, 1}}}, {{4, 3}, {{5, 1}}}}, "d8^2");
        Automorphism swap;
        for (std::size_t i : {3, 4, 5, 0, 1, 2}) swap.push_back(h.generator(i));
        return SemidirectProduct(h, c2, {swap}, name);
    }
    if (name == "c2cube_by_ut3") {
        // Unitriangular 3x3 matrices over F_2 (a copy of D8) on column vectors.
        auto h = small_pgroup(2, 3, {}, {}, "c2^3");
        auto q = small_pgroup(2, 3, {}, {{{1, 0}, {{2, 1}}}}, "ut3");
        Automorphism x{el(h, {1, 0, 0}), el(h, {1, 1, 0}), el(h, {0, 0, 1})};
        Automorphism y{el(h, {1, 0, 0}), el(h, {0, 1, 0}), el(h, {0, 1, 1})};
        Automorphism z{el(h, {1, 0, 0}), el(h, {0, 1, 0}), el(h, {1, 0, 1})};
        return SemidirectProduct(h, q, {x, y, z}, name);
    }
    throw InputError("unknown split fixture " + name);
}

ElementSet iterated_commutator(const FiniteGroup& g, const ElementSet& h, int m) {
    ElementSet cur = h;
    const ElementSet all = g.whole();
    for (int k = 0; k < m; ++k) cur = g.commutator_subgroup(cur, all);
    return cur;
}

std::optional<int> unipotence_length(const FiniteGroup& g, const ElementSet& h, const ElementSet& floor) {
    ElementSet cur = g.join(h, floor);
    const ElementSet all = g.whole();
    for (int m = 0;; ++m) {
        if (is_subset(cur, floor)) return m;
        ElementSet next = g.join(g.commutator_subgroup(cur, all), floor);
        if (next == cur) return std::nullopt;
        cur = std::move(next);
    }
}

VerificationRecord tau_equation_check(const SemidirectProduct& s) {
    VerificationRecord rec;
    rec.lemma = "tau_equation";
    rec.instance = s.name();
    rec.hypotheses.push_back({"the extension is split", true});
    const FiniteGroup& G = s.group();
    std::size_t failures = 0;
    for (Elem a = 0; a < G.order(); ++a)
        for (Elem b = 0; b < G.order(); ++b) {
            Elem q2 = s.pair(0, s.quotient_part(b));
            Elem rhs = G.mul(G.conjugate(s.tau(a), q2), s.tau(b));
            if (s.tau(G.mul(a, b)) != rhs) ++failures;
        }
    std::size_t outside = 0;
    const ElementSet h = s.kernel_subgroup();
    for (Elem a = 0; a < G.order(); ++a) outside += !std::binary_search(h.begin(), h.end(), s.tau(a));
    rec.details["pairs_checked"] = G.order() * G.order();
    rec.details["failures"] = failures;
    rec.details["tau_outside_h"] = outside;
    rec.verdict = failures == 0 && outside == 0 ? Verdict::pass : Verdict::fail;
    return rec;
}

VerificationRecord falk_randell_inclusion_check(const SemidirectProduct& s, int m) {
    if (m < 0) throw InputError("m must be nonnegative");
    VerificationRecord rec;
    rec.lemma = "falk_randell_inclusion";
    rec.instance = s.name();
    const FiniteGroup& G = s.group();
    const ElementSet h = s.kernel_subgroup();
    const ElementSet hh = G.commutator_subgroup(h, h);
    auto unipotent = unipotence_length(G, h, hh);
    rec.hypotheses.push_back({"G acts unipotently on H_1(H; Z)", unipotent.has_value()});
    if (!unipotent) {
        rec.verdict = Verdict::inapplicable;
        return rec;
    }
    const ElementSet gamma = G.lower_central(1 << m);
    const ElementSet target = iterated_commutator(G, h, m);
    std::size_t outside = 0;
    for (Elem g : gamma) outside += !std::binary_search(target.begin(), target.end(), s.tau(g));
    rec.details["m"] = m;
    rec.details["unipotence_length"] = *unipotent;
    rec.details["order_gamma"] = gamma.size();
    rec.details["order_target"] = target.size();
    rec.details["outside"] = outside;
    rec.verdict = outside == 0 ? Verdict::pass : Verdict::fail;
    return rec;
}

VerificationRecord hall_inclusion_check(const FiniteGroup& g, const ElementSet& h, int m, const std::string& instance) {
    if (m < 0) throw InputError("m must be nonnegative");
    VerificationRecord rec;
    rec.lemma = "hall_inclusion";
    rec.instance = instance;
    if (!g.is_subgroup(h)) throw InputError("H must be a subgroup");
    rec.hypotheses.push_back({"H is normal in G", g.is_normal(h)});
    if (!rec.all_hypotheses()) {
        rec.verdict = Verdict::inapplicable;
        return rec;
    }
    const int k = m * (m - 1) / 2 + 1;
    const ElementSet left = g.commutator_subgroup(g.lower_central(k), h);
    const ElementSet right = iterated_commutator(g, h, m);
    rec.details["m"] = m;
    rec.details["k"] = k;
    rec.details["order_left"] = left.size();
    rec.details["order_right"] = right.size();
    rec.verdict = is_subset(left, right) ? Verdict::pass : Verdict::fail;
    return rec;
}

VerificationRecord iterated_unipotence_check(const FiniteGroup& g, const std::vector<ElementSet>& chain, const std::string& instance) {
    VerificationRecord rec;
    rec.lemma = "iterated_unipotence";
    rec.instance = instance;
    if (chain.size() < 2 || chain.front().size() != 1 || chain.back().size() != g.order())
        throw InputError("the chain must run from the trivial group to G");
    bool chain_ok = true;
    for (std::size_t i = 0; i < chain.size(); ++i) {
        chain_ok = chain_ok && g.is_subgroup(chain[i]) && g.is_normal(chain[i]);
        if (i > 0) chain_ok = chain_ok && is_subset(chain[i - 1], chain[i]);
    }
    rec.hypotheses.push_back({"each G_i is normal in G and the chain ascends", chain_ok});
    // G / G_i acts unipotently on H_1(G_{i+1} / G_i).
    auto layers = nlohmann::ordered_json::array();
    bool layers_ok = chain_ok;
    for (std::size_t i = 0; chain_ok && i + 1 < chain.size(); ++i) {
        const ElementSet floor = g.join(g.commutator_subgroup(chain[i + 1], chain[i + 1]), chain[i]);
        auto len = unipotence_length(g, chain[i + 1], floor);
        layers.push_back(len ? nlohmann::ordered_json(*len) : nlohmann::ordered_json(nullptr));
        layers_ok = layers_ok && len.has_value();
    }
    rec.hypotheses.push_back({"G acts unipotently on each H_1(G_{i+1}/G_i)", layers_ok});
    if (!rec.all_hypotheses()) {
        rec.verdict = Verdict::inapplicable;
        return rec;
    }
    auto conclusions = nlohmann::ordered_json::array();
    bool all = true;
    for (std::size_t i = 1; i < chain.size(); ++i) {
        auto len = unipotence_length(g, chain[i], g.commutator_subgroup(chain[i], chain[i]));
        conclusions.push_back(len ? nlohmann::ordered_json(*len) : nlohmann::ordered_json(nullptr));
        all = all && len.has_value();
    }
    rec.details["layer_lengths"] = layers;
    rec.details["h1_lengths"] = conclusions;
    rec.verdict = all ? Verdict::pass : Verdict::fail;
    return rec;
}

PermutationGroup PermutationGroup::generate(const std::vector<braid::Permutation>& generators, std::size_t degree) {
    PermutationGroup g;
    braid::Permutation id(degree);
    std::iota(id.begin(), id.end(), 0);
    for (const auto& p : generators) {
        braid::Permutation sorted = p;
        std::sort(sorted.begin(), sorted.end());
        if (sorted != id) throw InputError("generator is not a permutation of the given degree");
    }
    std::set<braid::Permutation> seen{id};
    std::vector<braid::Permutation> queue{id};
    for (std::size_t k = 0; k < queue.size(); ++k)
        for (const auto& p : generators) {
            auto x = braid::compose(queue[k], p);
            if (seen.insert(x).second) queue.push_back(x);
        }
    // Identity first, then lexicographic.
    g.elements.assign(seen.begin(), seen.end());
    g.table.assign(g.order(), std::vector<std::size_t>(g.order()));
    for (std::size_t a = 0; a < g.order(); ++a)
        for (std::size_t b = 0; b < g.order(); ++b) g.table[a][b] = g.index(braid::compose(g.elements[a], g.elements[b]));
    return g;
}

std::size_t PermutationGroup::index(const braid::Permutation& p) const {
    auto it = std::lower_bound(elements.begin(), elements.end(), p);
    if (it == elements.end() || *it != p) throw InputError("permutation not in the group");
    return static_cast<std::size_t>(it - elements.begin());
}

std::size_t PermutationGroup::element_order(std::size_t a) const {
    std::size_t k = 1;
    for (std::size_t x = a; x != 0; x = mul(x, a)) ++k;
    return k;
}

ExponentVector apply(const PcPresentation& n, const PcAutomorphism& phi, const ExponentVector& x) {
    ExponentVector r = n.identity();
    for (std::size_t l = 0; l < x.size(); ++l)
        if (x[l] != 0) r = n.multiply(r, n.power(phi[l], x[l]));
    return r;
}

namespace {

// Ranges [begin, end) of pc-generators sharing a weight.
std::vector<std::pair<std::size_t, std::size_t>> layers_of(const PcPresentation& n) {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t i = 0; i < n.size();) {
        std::size_t j = i;
        while (j < n.size() && n.weight(j) == n.weight(i)) ++j;
        out.push_back({i, j});
        i = j;
    }
    return out;
}

// Matrix of phi on the layer [b, e), columns the images of the layer generators.
nilpotent::IntMatrix layer_matrix(const PcAutomorphism& phi, std::size_t b, std::size_t e) {
    nilpotent::IntMatrix m(e - b, std::vector<Int>(e - b, 0));
    for (std::size_t c = b; c < e; ++c)
        for (std::size_t r = b; r < e; ++r) m[r - b][c - b] = phi[c][r];
    return m;
}

}  // namespace

ExtensionWithFactorSet::ExtensionWithFactorSet(std::string name, PcPresentation kernel, PermutationGroup q,
                                               std::vector<std::string> labels, std::vector<PcAutomorphism> action,
                                               std::vector<std::vector<ExponentVector>> factor_set)
    : name_(std::move(name)),
      kernel_(std::move(kernel)),
      q_(std::move(q)),
      labels_(std::move(labels)),
      action_(std::move(action)),
      factors_(std::move(factor_set)) {
    const std::size_t nq = q_.order(), r = kernel_.size();
    if (labels_.size() != nq || action_.size() != nq || factors_.size() != nq)
        throw InputError("labels, actions and factor set need one entry per element of Q");
    for (std::size_t i = 0; i < r; ++i)
        if (kernel_.relative_order(i) != 0) throw InputError("the kernel must have infinite relative orders");
    for (const auto& row : factors_) {
        if (row.size() != nq) throw InputError("factor set must be |Q| x |Q|");
        for (const auto& f : row)
            if (f.size() != r) throw InputError("factor set entry has the wrong length");
    }
    const auto layers = layers_of(kernel_);
    for (const auto& phi : action_) {
        if (phi.size() != r) throw InputError("action needs one image per kernel generator");
        for (std::size_t l = 0; l < r; ++l) {
            if (phi[l].size() != r) throw InputError("action image has the wrong length");
            auto d = kernel_.depth(phi[l]);
            if (!d || kernel_.weight(*d) < kernel_.weight(l)) throw InputError("the action does not preserve the weight layers");
        }
        for (std::size_t j = 0; j < r; ++j)
            for (std::size_t i = 0; i < j; ++i)
                if (kernel_.commutator(phi[j], phi[i]) != apply(kernel_, phi, kernel_.commutator_relation(j, i)))
                    throw InputError("the action does not respect a commutator relation of the kernel");
        for (const auto& [b, e] : layers) {
            auto s = nilpotent::snf(layer_matrix(phi, b, e), e - b);
            for (const auto& x : s.diagonal)
                if (x != 1) throw InputError("the action is not invertible on a layer of the kernel");
        }
    }
    for (std::size_t l = 0; l < r; ++l)
        if (action_[0][l] != kernel_.unit(l) || !kernel_.is_identity(factors_[0][0]))
            throw InputError("the identity of Q must act trivially with trivial factor");
    // q1 > (q2 > h) = f(q1, q2) ((q1 q2) > h) f(q1, q2)^-1 on generators.
    for (std::size_t a = 0; a < nq; ++a)
        for (std::size_t b = 0; b < nq; ++b) {
            const auto& f = factors_[a][b];
            const auto& phi = action_[q_.mul(a, b)];
            for (std::size_t l = 0; l < r; ++l) {
                auto left = apply(kernel_, action_[a], action_[b][l]);
                auto right = kernel_.multiply(kernel_.multiply(f, phi[l]), kernel_.inverse(f));
                if (left != right) throw InputError("action and factor set are incompatible");
            }
        }
    if (nq <= 720 && cocycle_failures() != 0) throw InputError("the factor set violates the cocycle identity");
}

ExtensionWithFactorSet::Element ExtensionWithFactorSet::multiply(const Element& a, const Element& b) const {
    ExponentVector h = kernel_.multiply(kernel_.multiply(a.h, apply(kernel_, action_[a.q], b.h)), factors_[a.q][b.q]);
    return {std::move(h), q_.mul(a.q, b.q)};
}

ExtensionWithFactorSet::Element ExtensionWithFactorSet::power(const Element& a, Int k) const {
    if (k < 0) throw InputError("negative powers are not supported");
    Element r = identity();
    for (Int i = 0; i < k; ++i) r = multiply(r, a);
    return r;
}

std::optional<Int> ExtensionWithFactorSet::order(const Element& a) const {
    Element x = a;
    for (Int k = 1; k <= static_cast<Int>(q_.order()); ++k) {
        if (x == identity()) return k;
        x = multiply(x, a);
    }
    return std::nullopt;
}

std::size_t ExtensionWithFactorSet::cocycle_failures() const {
    std::size_t failures = 0;
    const std::size_t nq = q_.order();
    for (std::size_t a = 0; a < nq; ++a)
        for (std::size_t b = 0; b < nq; ++b)
            for (std::size_t c = 0; c < nq; ++c) {
                auto left = kernel_.multiply(factors_[a][b], factors_[q_.mul(a, b)][c]);
                auto right = kernel_.multiply(apply(kernel_, action_[a], factors_[b][c]), factors_[a][q_.mul(b, c)]);
                failures += left != right;
            }
    return failures;
}

ExtensionWithFactorSet braid_quotient(std::size_t n, int big_n, const nilpotent::NqConfig& config) {
    if (n < 2 || n > 4) throw InputError("braid quotients are supported for 2 <= n <= 4");
    if (big_n < 2) throw InputError("N must be at least 2");
    const auto pure = braid::pure_braid_presentation(n);
    const auto act = braid::braid_action_on_pure(n);
    const auto quotient = nilpotent::nq(pure, big_n - 1, config);
    const PcPresentation& k = quotient.quotient;
    const std::size_t r = k.size();

    auto eval = [&](const words::Word& w, const std::vector<ExponentVector>& letters) {
        ExponentVector x = k.identity();
        for (const auto& s : w.syllables()) x = k.multiply(x, k.power(letters[s.gen], s.exp));
        return x;
    };
    // Each quotient generator is the image of the defining word of a cover generator.
    std::vector<words::Word> defs;
    for (std::size_t l = 0; l < r; ++l) {
        defs.push_back(quotient.cover->definitions().at(quotient.survivors.at(l)));
        if (quotient.image(defs.back()) != k.unit(l)) throw Error("quotient generator does not match its definition");
    }
    std::vector<PcAutomorphism> sigma;
    for (std::size_t s = 0; s + 1 < n; ++s) {
        std::vector<ExponentVector> letters;
        for (const auto& w : act.positive[s]) letters.push_back(quotient.image(w));
        PcAutomorphism phi;
        for (const auto& d : defs) phi.push_back(eval(d, letters));
        sigma.push_back(std::move(phi));
    }

    std::vector<braid::Permutation> swaps;
    for (std::size_t s = 0; s + 1 < n; ++s) swaps.push_back(braid::permutation_of(braid::make_braid(n, {static_cast<int>(s + 1)})));
    auto q = PermutationGroup::generate(swaps, n);

    const auto braid_names = braid::braid_presentation(n).generators;
    std::vector<braid::BraidWord> transversal;
    std::vector<std::string> labels;
    std::vector<PcAutomorphism> actions;
    for (const auto& p : q.elements) {
        auto t = braid::transversal_word(p);
        labels.push_back(t.word.is_identity() ? "1" : words::render(t.word, braid_names));
        // t = s_a1 ... s_ak acts by phi_a1 o ... o phi_ak.
        PcAutomorphism images;
        for (std::size_t l = 0; l < r; ++l) images.push_back(k.unit(l));
        const auto& syl = t.word.syllables();
        for (auto it = syl.rbegin(); it != syl.rend(); ++it)
            for (Int e = 0; e < it->exp; ++e)
                for (auto& x : images) x = apply(k, sigma[it->gen], x);
        actions.push_back(std::move(images));
        transversal.push_back(std::move(t));
    }
    std::vector<std::vector<ExponentVector>> factors(q.order(), std::vector<ExponentVector>(q.order()));
    for (std::size_t a = 0; a < q.order(); ++a)
        for (std::size_t b = 0; b < q.order(); ++b) {
            braid::BraidWord w{n, transversal[a].word * transversal[b].word * transversal[q.mul(a, b)].word.inverse()};
            auto [pure_word, perm] = braid::rewrite_pure(act, w);
            if (q.index(perm) != 0) throw Error("transversal product is not a pure braid");
            factors[a][b] = quotient.image(pure_word);
        }
    return ExtensionWithFactorSet("B" + std::to_string(n) + "/gamma" + std::to_string(big_n) + "(P" + std::to_string(n) + ")", k,
                                  std::move(q), std::move(labels), std::move(actions), std::move(factors));
}

std::string to_string(TorsionVerdict v) {
    switch (v) {
        case TorsionVerdict::torsion_free: return "torsion_free";
        case TorsionVerdict::torsion: return "torsion";
        case TorsionVerdict::inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

nlohmann::ordered_json TorsionReport::to_json(const std::vector<std::string>& labels) const {
    nlohmann::ordered_json j;
    j["group"] = group;
    j["primes"] = primes;
    j["witnesses"] = nlohmann::ordered_json::array();
    for (const auto& w : witnesses) {
        nlohmann::ordered_json x;
        x["order"] = w.order;
        x["coset"] = w.coset < labels.size() ? labels[w.coset] : std::to_string(w.coset);
        if (w.solution) x["solution"] = *w.solution;
        j["witnesses"].push_back(x);
    }
    j["lcm_lower_bound"] = lcm_lower_bound;
    j["verdict"] = to_string(verdict);
    j["bounds"] = {{"branch_cap", bounds.branch_cap}};
    return j;
}

namespace {

// Conjugacy class representatives of Q \ {1}, least index first.
std::vector<std::size_t> class_representatives(const PermutationGroup& q) {
    std::vector<bool> seen(q.order(), false);
    std::vector<std::size_t> inv(q.order());
    for (std::size_t a = 0; a < q.order(); ++a)
        for (std::size_t b = 0; b < q.order(); ++b)
            if (q.mul(a, b) == 0) inv[a] = b;
    std::vector<std::size_t> reps;
    for (std::size_t a = 1; a < q.order(); ++a) {
        if (seen[a]) continue;
        reps.push_back(a);
        for (std::size_t x = 0; x < q.order(); ++x) seen[q.mul(q.mul(inv[x], a), x)] = true;
    }
    return reps;
}

// h with (h, q)^d = 1, searched layer by layer.
struct ClassSearch {
    bool complete = true;
    std::optional<ExponentVector> witness;
    std::size_t branches = 0;
};

ClassSearch search_class(const ExtensionWithFactorSet& e, std::size_t q, Int d, std::size_t cap) {
    const PcPresentation& n = e.kernel();
    const auto& group = e.quotient();
    ClassSearch out;
    std::vector<std::size_t> qpow{0};
    for (Int j = 1; j < d; ++j) qpow.push_back(group.mul(qpow.back(), q));
    auto phi_of = [&](const ExponentVector& h) { return e.power({h, q}, d).h; };

    std::vector<ExponentVector> branches{n.identity()};
    for (const auto& [b, end] : layers_of(n)) {
        const std::size_t r = end - b;
        // M = sum_j A_{q^j} and A_q - 1 on this layer.
        nilpotent::IntMatrix m(r, std::vector<Int>(r, 0));
        for (Int j = 0; j < d; ++j) {
            auto a = layer_matrix(e.action(qpow[static_cast<std::size_t>(j)]), b, end);
            for (std::size_t x = 0; x < r; ++x)
                for (std::size_t y = 0; y < r; ++y) m[x][y] = checked_add(m[x][y], a[x][y]);
        }
        auto a1 = layer_matrix(e.action(q), b, end);
        for (std::size_t x = 0; x < r; ++x) a1[x][x] -= 1;

        std::vector<ExponentVector> next;
        for (const auto& h : branches) {
            const ExponentVector phi = phi_of(h);
            std::vector<BigInt> rhs(r);
            for (std::size_t x = 0; x < r; ++x) rhs[x] = -BigInt(phi[b + x]);
            auto sol = nilpotent::solve_integer(nilpotent::to_big(m, r), r, rhs);
            if (!sol) continue;
            // Solutions differing by (A_q - 1) y give conjugate elements, so
            // only ker M modulo that image matters; the quotient is finite.
            const std::size_t kd = sol->kernel.size();
            BigMatrix coords;
            if (kd > 0) {
                BigMatrix kmat(r, std::vector<BigInt>(kd));
                for (std::size_t c = 0; c < kd; ++c)
                    for (std::size_t x = 0; x < r; ++x) kmat[x][c] = sol->kernel[c][x];
                for (std::size_t c = 0; c < r; ++c) {
                    std::vector<BigInt> col(r);
                    for (std::size_t x = 0; x < r; ++x) col[x] = a1[x][c];
                    auto cs = nilpotent::solve_integer(kmat, kd, col);
                    if (!cs) throw Error("image of A - 1 is not inside ker M");
                    coords.push_back(cs->particular);
                }
            }
            BigMatrix hnf = nilpotent::hermite_rows(coords, kd);
            std::vector<Int> moduli(kd, 0);
            for (const auto& row : hnf)
                for (std::size_t c = 0; c < kd; ++c)
                    if (row[c] != 0) {
                        moduli[c] = nilpotent::to_int(row[c]);
                        break;
                    }
            std::size_t count = 1;
            for (Int mod : moduli) {
                if (mod == 0) {
                    out.complete = false;
                    return out;
                }
                count *= static_cast<std::size_t>(mod);
                if (count > cap) break;
            }
            if (count + next.size() > cap) {
                out.complete = false;
                return out;
            }
            // Residues a_c in [0, modulus_c) against the triangular basis.
            std::vector<Int> digits(kd, 0);
            for (std::size_t idx = 0; idx < count; ++idx) {
                std::vector<BigInt> v = sol->particular;
                for (std::size_t c = 0; c < kd; ++c)
                    for (std::size_t x = 0; x < r; ++x) v[x] += digits[c] * sol->kernel[c][x];
                ExponentVector x = n.identity();
                for (std::size_t t = 0; t < r; ++t) x[b + t] = nilpotent::to_int(v[t]);
                next.push_back(n.multiply(h, x));
                for (std::size_t c = 0; c < kd; ++c) {
                    if (++digits[c] < moduli[c]) break;
                    digits[c] = 0;
                }
            }
        }
        out.branches += next.size();
        branches = std::move(next);
        if (branches.empty()) return out;
    }
    for (const auto& h : branches)
        if (n.is_identity(phi_of(h))) {
            out.witness = h;
            return out;
        }
    throw Error("layer solutions do not lift to a torsion element");
}

}  // namespace

TorsionReport torsion_search(const ExtensionWithFactorSet& e, const TorsionSearchConfig& config) {
    if (!nilpotent::torsion_subgroup(e.kernel()).is_torsion_free()) throw InputError("torsion search needs a torsion-free kernel");
    TorsionReport report;
    report.group = e.name();
    report.bounds = config;
    report.primes = prime_divisors(static_cast<Int>(e.quotient().order()));
    bool complete = true;
    for (std::size_t q : class_representatives(e.quotient())) {
        // Every torsion element has a power of prime order.
        const Int d = static_cast<Int>(e.quotient().element_order(q));
        if (!is_prime(d)) continue;
        auto res = search_class(e, q, d, config.branch_cap);
        report.branches += res.branches;
        complete = complete && res.complete;
        if (res.witness) report.witnesses.push_back({d, q, res.witness});
    }
    Int l = 1;
    for (const auto& w : report.witnesses) l = lcm_checked(l, w.order);
    if (e.kernel().size() == 0) l = static_cast<Int>(e.quotient().order());
    report.lcm_lower_bound = l;
    if (!report.witnesses.empty()) report.verdict = TorsionVerdict::torsion;
    else report.verdict = complete ? TorsionVerdict::torsion_free : TorsionVerdict::inconclusive;
    return report;
}

Int lcm_report(const ExtensionWithFactorSet& e, const TorsionReport& report) {
    (void)e;
    if (report.verdict == TorsionVerdict::inconclusive) throw Error("torsion search was inconclusive");
    return report.lcm_lower_bound;
}

}  // namespace grouplab::extensions
