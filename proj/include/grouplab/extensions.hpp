#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "grouplab/braid.hpp"
#include "grouplab/finite_group.hpp"
#include "grouplab/nilpotent.hpp"
#include "grouplab/pgroups.hpp"
#include "grouplab/record.hpp"

namespace grouplab::extensions {

using nilpotent::ExponentVector;
using nilpotent::PcPresentation;
using pgroups::Automorphism;
using pgroups::Elem;
using pgroups::ElementSet;
using pgroups::FiniteGroup;
using pgroups::FinitePGroup;

/// H x| Q with (h1, q1)(h2, q2) = (h1 (q1 > h2), q1 q2), both factors finite.
/// Elements are numbered h * |Q| + q.
class SemidirectProduct {
public:
    /// action[i] is the automorphism of H by which the i-th pc-generator of Q acts.
    SemidirectProduct(FinitePGroup kernel, FinitePGroup quotient, std::vector<Automorphism> action, std::string name = {});

    const std::string& name() const noexcept { return name_; }
    const FinitePGroup& kernel() const noexcept { return kernel_; }
    const FinitePGroup& quotient() const noexcept { return quotient_; }
    const FiniteGroup& group() const noexcept { return group_; }

    Elem pair(Elem h, Elem q) const { return static_cast<Elem>(h * quotient_.group().order() + q); }
    Elem kernel_part(Elem g) const { return static_cast<Elem>(g / quotient_.group().order()); }
    Elem quotient_part(Elem g) const { return static_cast<Elem>(g % quotient_.group().order()); }
    /// q > h
    Elem act(Elem q, Elem h) const { return act_[q][h]; }

    /// H and the section j(Q) as subgroups of G.
    ElementSet kernel_subgroup() const;
    ElementSet section_subgroup() const;

    /// tau(g) = j(p(g)^-1) g, an element of H (returned as an element of G).
    Elem tau(Elem g) const;

private:
    std::string name_;
    FinitePGroup kernel_;
    FinitePGroup quotient_;
    std::vector<std::vector<Elem>> act_;
    FiniteGroup group_;
};

/// The split fixtures shipped with the library, by name.
std::vector<std::string> split_fixture_names();
SemidirectProduct split_fixture(const std::string& name);

/// [H, G, ..., G] with m copies of G (H itself for m = 0).
ElementSet iterated_commutator(const FiniteGroup& g, const ElementSet& h, int m);

/// Least m with gamma^m H G^m inside `floor` (a normal subgroup of G inside H),
/// or nullopt when the chain stalls above it.
std::optional<int> unipotence_length(const FiniteGroup& g, const ElementSet& h, const ElementSet& floor);

/// tau(g1 g2) = p(g2)^-1 tau(g1) p(g2) tau(g2) on all pairs.
VerificationRecord tau_equation_check(const SemidirectProduct& g);

/// tau(gamma_{2^m}(G)) inside gamma^m H G^m, when G acts unipotently on H_1(H; Z).
VerificationRecord falk_randell_inclusion_check(const SemidirectProduct& g, int m);

/// [gamma_k(G), H] inside gamma^m H G^m for k = m(m-1)/2 + 1.
VerificationRecord hall_inclusion_check(const FiniteGroup& g, const ElementSet& h, int m, const std::string& instance = {});

/// chain = G_0 = 1 <= G_1 <= ... <= G_n = G, all normal in G.
VerificationRecord iterated_unipotence_check(const FiniteGroup& g, const std::vector<ElementSet>& chain,
                                             const std::string& instance = {});

/// A finite permutation group with its elements listed, identity first.
struct PermutationGroup {
    std::vector<braid::Permutation> elements;
    std::vector<std::vector<std::size_t>> table;

    static PermutationGroup generate(const std::vector<braid::Permutation>& generators, std::size_t degree);
    std::size_t order() const noexcept { return elements.size(); }
    std::size_t index(const braid::Permutation& p) const;
    std::size_t mul(std::size_t a, std::size_t b) const { return table[a][b]; }
    std::size_t element_order(std::size_t a) const;
};

/// An automorphism of a pc group held by the images of its pc-generators.
using PcAutomorphism = std::vector<ExponentVector>;

ExponentVector apply(const PcPresentation& n, const PcAutomorphism& phi, const ExponentVector& x);

/// Extension 1 -> N -> E -> Q -> 1 with Q finite and N nilpotent: elements are
/// pairs (h, q) standing for h t(q) with t a fixed transversal, so
/// (h1, q1)(h2, q2) = (h1 (q1 > h2) f(q1, q2), q1 q2) with q > h = t(q) h t(q)^-1
/// and f(q1, q2) = t(q1) t(q2) t(q1 q2)^-1.
class ExtensionWithFactorSet {
public:
    struct Element {
        ExponentVector h;
        std::size_t q = 0;
        bool operator==(const Element&) const = default;
    };

    /// Checks that every action is an automorphism on the generators, the
    /// compatibility (q1 > (q2 > h)) = f(q1,q2) ((q1 q2) > h) f(q1,q2)^-1 and,
    /// for |Q| <= 720, the cocycle identity on all triples.
    ExtensionWithFactorSet(std::string name, PcPresentation kernel, PermutationGroup q, std::vector<std::string> labels,
                           std::vector<PcAutomorphism> action, std::vector<std::vector<ExponentVector>> factor_set);

    const std::string& name() const noexcept { return name_; }
    const PcPresentation& kernel() const noexcept { return kernel_; }
    const PermutationGroup& quotient() const noexcept { return q_; }
    /// Transversal label of each element of Q (a sigma-word for braid quotients).
    const std::vector<std::string>& labels() const noexcept { return labels_; }
    const PcAutomorphism& action(std::size_t q) const { return action_.at(q); }
    const ExponentVector& factor(std::size_t a, std::size_t b) const { return factors_.at(a).at(b); }

    Element identity() const { return {kernel_.identity(), 0}; }
    Element multiply(const Element& a, const Element& b) const;
    Element power(const Element& a, Int k) const;
    /// Order of an element, or nullopt if a^|Q| is not trivial (then it has infinite order).
    std::optional<Int> order(const Element& a) const;

    /// The cocycle identity on all triples; returns the number of failures.
    std::size_t cocycle_failures() const;

private:
    std::string name_;
    PcPresentation kernel_;
    PermutationGroup q_;
    std::vector<std::string> labels_;
    std::vector<PcAutomorphism> action_;
    std::vector<std::vector<ExponentVector>> factors_;
};

/// B_n / gamma_N(P_n) with kernel nq(P_n, N-1), Q = S_n and the insertion-sort
/// transversal; 2 <= n <= 4, N >= 2.
ExtensionWithFactorSet braid_quotient(std::size_t n, int big_n, const nilpotent::NqConfig& config = {});

struct TorsionSearchConfig {
    /// Cap on coset branches per element of Q; beyond it the verdict is inconclusive.
    std::size_t branch_cap = 1u << 16;
};

struct TorsionWitness {
    Int order = 0;
    std::size_t coset = 0;
    std::optional<ExponentVector> solution;
};

enum class TorsionVerdict { torsion_free, torsion, inconclusive };

struct TorsionReport {
    std::string group;
    std::vector<Int> primes;
    std::vector<TorsionWitness> witnesses;
    Int lcm_lower_bound = 1;
    TorsionVerdict verdict = TorsionVerdict::inconclusive;
    TorsionSearchConfig bounds;
    std::size_t branches = 0;

    bool torsion_free() const { return verdict == TorsionVerdict::torsion_free; }
    nlohmann::ordered_json to_json(const std::vector<std::string>& labels) const;
};

std::string to_string(TorsionVerdict v);

/// For each conjugacy class of Q whose representative q has prime order p,
/// decides whether some (h, q) has order p, solving (h, q)^p = 1 layer by layer
/// along the pc series of N. Requires N torsion-free.
TorsionReport torsion_search(const ExtensionWithFactorSet& e, const TorsionSearchConfig& config = {});

/// lcm of the witness orders; |Q| when N is trivial (E is then finite).
/// Throws Error for an inconclusive report.
Int lcm_report(const ExtensionWithFactorSet& e, const TorsionReport& report);

}  // namespace grouplab::extensions
