#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "grouplab/arith.hpp"

namespace grouplab::nilpotent {

/// Normal form of a group element: one exponent per pc-generator, reduced
/// into [0, m) for generators of finite relative order m.
using ExponentVector = std::vector<Int>;

/// An arbitrary (unnormalized) word over pc-generators as (index, exponent) pairs.
using PcWord = std::vector<std::pair<std::size_t, Int>>;

struct PcGenerator {
    std::string id;
    int weight = 1;
    /// 0 means infinite.
    Int relative_order = 0;

    bool operator==(const PcGenerator&) const = default;
};

/// Raw relation data as read from JSON or built by the algorithms.
struct PcRelations {
    std::vector<PcGenerator> generators;
    /// g_i^{m_i} for generators of finite relative order, keyed by index.
    std::map<std::size_t, PcWord> powers;
    /// [g_j, g_i] for j > i, keyed by (j, i); absent entries are trivial.
    std::map<std::pair<std::size_t, std::size_t>, PcWord> commutators;
    int nilpotency_class = 1;
};

/// Weighted polycyclic presentation with collection from the left.
///
/// Structural requirements, checked by create():
///  - weights are nondecreasing along the generator order;
///  - the power relation of g_i only involves generators of index > i;
///  - the commutator [g_j, g_i] (j > i) only involves generators of index > j.
/// The last rule makes every tail <g_k, g_{k+1}, ...> central modulo the next
/// one, so the pc series refines a central series.
///
/// Commutators follow [x, y] = x^-1 y^-1 x y throughout.
class PcPresentation {
public:
    PcPresentation() = default;

    /// Validates structure and runs the overlap consistency checks.
    static PcPresentation create(PcRelations relations);
    /// Skips the consistency checks. Used by constructions that are
    /// consistent by construction (their tests run the checks explicitly).
    static PcPresentation create_unchecked(PcRelations relations);

    std::size_t size() const noexcept { return gens_.size(); }
    const std::vector<PcGenerator>& generators() const noexcept { return gens_; }
    const PcGenerator& generator(std::size_t i) const { return gens_.at(i); }
    Int relative_order(std::size_t i) const { return gens_.at(i).relative_order; }
    int weight(std::size_t i) const { return gens_.at(i).weight; }
    int nilpotency_class() const noexcept { return class_; }

    /// Right-hand sides in normal form.
    const ExponentVector& power_relation(std::size_t i) const;
    const ExponentVector& commutator_relation(std::size_t j, std::size_t i) const;
    const PcRelations& relations() const noexcept { return relations_; }

    ExponentVector identity() const { return ExponentVector(size(), 0); }
    ExponentVector unit(std::size_t i, Int e = 1) const;
    bool is_identity(const ExponentVector& x) const;

    /// Normal form of an arbitrary word.
    ExponentVector collect(const PcWord& w) const;
    ExponentVector multiply(const ExponentVector& x, const ExponentVector& y) const;
    ExponentVector inverse(const ExponentVector& x) const;
    ExponentVector power(const ExponentVector& x, Int k) const;
    ExponentVector commutator(const ExponentVector& x, const ExponentVector& y) const;
    /// y^-1 x y
    ExponentVector conjugate(const ExponentVector& x, const ExponentVector& y) const;

    /// Index of the first nonzero exponent, or nullopt for the identity.
    std::optional<std::size_t> depth(const ExponentVector& x) const;

    static PcWord to_word(const ExponentVector& x);

    /// Overlap checks; returns a description of each failure (empty when consistent).
    std::vector<std::string> consistency_failures() const;

    /// Order of the group when every relative order is finite.
    std::optional<Int> order() const;

    /// Drops generators >= k: the quotient by the tail <g_k, ...>.
    PcPresentation truncate(std::size_t k) const;

private:
    void build_tables();
    void collect_into(ExponentVector& e, std::vector<std::pair<std::size_t, Int>>& stack) const;
    void check_normal(const ExponentVector& x, const std::string& what) const;
    ExponentVector word_to_vector(const PcWord& normal) const;
    // g_i^-sign t g_i^sign for t supported after i.
    ExponentVector conjugate_step(std::size_t i, int sign, const ExponentVector& t) const;
    // g_i^-k t g_i^k for t supported after i.
    ExponentVector conjugate_power(std::size_t i, Int k, const ExponentVector& t) const;

    // Exponents up to this size are collected letter by letter; larger ones
    // go through powers of the conjugation automorphisms.
    static constexpr Int kSmallExponent = 4;

    PcRelations relations_;
    std::vector<PcGenerator> gens_;
    int class_ = 1;
    std::vector<ExponentVector> power_;      // g_i^{m_i}
    std::vector<PcWord> power_inv_word_;     // g_i^{-m_i}
    std::vector<std::vector<ExponentVector>> comm_;  // comm_[j][i], j > i
    // conj_pos_[j][i] = g_i^-1 g_j g_i, conj_neg_[j][i] = g_i g_j g_i^-1, as words.
    std::vector<std::vector<PcWord>> conj_pos_;
    std::vector<std::vector<PcWord>> conj_neg_;
};

}  // namespace grouplab::nilpotent
