#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "grouplab/finite_group.hpp"
#include "grouplab/pc.hpp"
#include "grouplab/record.hpp"
#include "grouplab/snf.hpp"

namespace grouplab::pgroups {

using nilpotent::ExponentVector;
using nilpotent::IntMatrix;
using nilpotent::PcPresentation;

/// Finite p-group on a consistent pc presentation with every relative order p.
class FinitePGroup {
public:
    FinitePGroup(PcPresentation pc, Int p, std::string name = {});

    const std::string& name() const noexcept { return name_; }
    const PcPresentation& pc() const noexcept { return pc_; }
    Int prime() const noexcept { return p_; }
    std::size_t rank() const noexcept { return pc_.size(); }
    Int order() const { return static_cast<Int>(table_.order()); }
    const FiniteGroup& group() const noexcept { return table_; }

    Elem element(const ExponentVector& e) const;
    ExponentVector exponents(Elem x) const;
    /// The i-th pc-generator as an element.
    Elem generator(std::size_t i) const;

    /// Induced generating sequence of a subgroup: for each depth met by the
    /// subgroup, the lexicographically least member with that depth and
    /// leading exponent 1.
    std::vector<ExponentVector> canonical_generators(const ElementSet& subgroup) const;

    /// Value of a word in the pc-generators under generator images.
    Elem evaluate(const ExponentVector& e, const std::vector<Elem>& images, const FiniteGroup& target) const;

private:
    std::string name_;
    PcPresentation pc_;
    Int p_;
    FiniteGroup table_;
};

/// Reads the pc JSON format plus a "prime" field.
FinitePGroup load_p_group(const nlohmann::json& j, std::string name = {});

struct PSeriesChain {
    Int prime = 0;
    /// gamma_1^p = G, ..., ending with the trivial group.
    std::vector<ElementSet> subgroups;
    std::vector<std::vector<ExponentVector>> generators;
    /// Number of nontrivial terms.
    int length = 0;
};

PSeriesChain p_lower_central_series(const FinitePGroup& g);
int nilpotent_p_length(const FinitePGroup& g);

/// Square matrix over F_p, entries in [0, p).
struct FpMatrix {
    Int prime = 2;
    IntMatrix entries;

    std::size_t size() const noexcept { return entries.size(); }
    static FpMatrix identity(Int p, std::size_t n);
    FpMatrix operator*(const FpMatrix& other) const;
    bool operator==(const FpMatrix& other) const = default;
    FpMatrix pow(Int k) const;
    bool is_identity() const;
};

struct MatrixPowerRecord {
    bool unipotent = false;
    /// Least n with (A - I)^n = 0.
    int n = 0;
    /// Least k with p^k >= n.
    int k = 0;
    Int p_power = 1;
    bool pass = false;
};

MatrixPowerRecord check_power_lemma_matrix(const FpMatrix& a);

/// An automorphism given by the images of the pc-generators.
using Automorphism = std::vector<Elem>;

/// Extends generator images to a map on all elements.
std::vector<Elem> automorphism_map(const FinitePGroup& g, const Automorphism& alpha);

/// Whether alpha induces the identity on G / gamma_2^p(G) = H_1(G; Z/p).
bool acts_trivially_on_h1(const FinitePGroup& g, const Automorphism& alpha);

VerificationRecord check_power_lemma_automorphism(const FinitePGroup& g, const Automorphism& alpha);

/// All automorphisms by backtracking over generator images, last generator
/// first, pruning on the pc relations. With `h1_trivial_only`, images are
/// restricted to g_i * gamma_2^p(G).
std::vector<Automorphism> automorphisms(const FinitePGroup& g, bool h1_trivial_only = false);

Automorphism inner_automorphism(const FinitePGroup& g, Elem x);

/// Homomorphisms from a pc group into a finite group with the given
/// candidate sets per generator; `visit` returns false to stop.
void for_each_homomorphism(const FinitePGroup& source, const FiniteGroup& target,
                           const std::vector<std::vector<Elem>>& candidates,
                           const std::function<bool(const std::vector<Elem>&)>& visit);

bool are_isomorphic(const FinitePGroup& a, const FinitePGroup& b);

/// A group acting on Z^n (prime = 0) or F_p^n by matrices on column vectors.
struct ModuleAction {
    Int prime = 0;
    std::size_t dimension = 0;
    std::vector<IntMatrix> generators;
};

struct UnipotenceResult {
    bool unipotent = false;
    /// Least m with I^m V = 0, where I is the augmentation ideal.
    std::optional<int> m;
    /// Dimensions (ranks over Z) of V = V_0, V_1, ...
    std::vector<std::size_t> chain;
};

/// V_{k+1} is the submodule generated by (A_g - 1) V_k over the generators.
UnipotenceResult is_unipotent_action(const ModuleAction& action);

struct TransferRecord {
    Int prime = 0;
    bool unipotent = false;
    std::optional<int> m;
    bool pass = false;
};

struct TransferReport {
    UnipotenceResult integral;
    std::vector<TransferRecord> reductions;
    bool pass = false;
};

TransferReport unipotent_mod_p_transfer(const ModuleAction& action, const std::vector<Int>& primes);

/// Largest normal subgroup of G inside U. Throws InputError if U is not a subgroup.
ElementSet normal_core(const FiniteGroup& g, const ElementSet& u);

/// Finite instance of 1 -> H -> G -> Q -> 1 with W given by its preimage in G.
struct ExtensionInstance {
    std::string name;
    FiniteGroup g;
    ElementSet h;
    ElementSet v;
    int n = 1;
    ElementSet w_preimage;
};

/// Builds U = V (gamma_n(G) cap p^-1(W)) and checks normality and the exact
/// sequence 1 -> H/V -> G/U -> Q/W -> 1.
VerificationRecord lemma_extension_construction_check(const ExtensionInstance& inst, ElementSet* u_out = nullptr);

}  // namespace grouplab::pgroups
