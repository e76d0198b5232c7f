#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "grouplab/magnus.hpp"
#include "grouplab/pc.hpp"
#include "grouplab/snf.hpp"
#include "grouplab/words.hpp"

namespace grouplab::nilpotent {

inline constexpr int kDefaultClassCap = 6;
inline constexpr std::size_t kDefaultGeneratorCap = 64;

struct NqConfig {
    int class_cap = kDefaultClassCap;
    std::size_t generator_cap = kDefaultGeneratorCap;
};

/// F_d / gamma_{c+1}(F_d) on the Lyndon basic commutators of length <= c,
/// ordered by (length, lexicographic). The generator for a Lyndon word w with
/// standard factorization uv is the group commutator of the generators for u
/// and v, so the leading Magnus term of generator w is the bracketed w.
class FreeNilpotent {
public:
    FreeNilpotent(std::size_t rank, int nilpotency_class, const NqConfig& config = {});

    std::size_t rank() const noexcept { return rank_; }
    int nilpotency_class() const noexcept { return class_; }
    const PcPresentation& pc() const noexcept { return pc_; }
    /// Lyndon word defining each pc-generator.
    const std::vector<magnus::LyndonWord>& basis() const noexcept { return basis_; }
    /// Free-group word of each pc-generator.
    const std::vector<words::Word>& definitions() const noexcept { return definitions_; }

    /// Image of a free-group word.
    ExponentVector image(const words::Word& w) const;

private:
    std::size_t rank_;
    int class_;
    std::vector<magnus::LyndonWord> basis_;
    std::vector<words::Word> definitions_;
    PcPresentation pc_;
};

PcPresentation free_nilpotent(std::size_t d, int c, const NqConfig& config = {});

/// A subgroup of a group given by a pc presentation whose relative orders are
/// all infinite, stored as an induced sequence: at most one element per
/// leading depth, leading exponent positive.
class InducedSequence {
public:
    explicit InducedSequence(const PcPresentation* group);

    /// Adds generators and closes the sequence under commutators with itself
    /// and, when `normal_in` is nonempty, under conjugation by those elements
    /// and their inverses.
    void close(const std::vector<ExponentVector>& generators, const std::vector<ExponentVector>& normal_in);

    bool contains(const ExponentVector& x) const;
    /// Representative of x modulo the subgroup with entries at each leading
    /// depth d reduced into [0, lead_d).
    ExponentVector canonical(const ExponentVector& x) const;

    const std::map<std::size_t, ExponentVector>& rows() const noexcept { return rows_; }

private:
    // Sifts x; returns elements that became new or changed rows.
    void sift(ExponentVector x, std::vector<ExponentVector>& changed);
    // Reduces the entries after `depth` by the rows there.
    ExponentVector reduce_below(const ExponentVector& x, std::size_t depth) const;

    const PcPresentation* group_;
    std::map<std::size_t, ExponentVector> rows_;
};

struct NilpotentQuotient {
    int nilpotency_class = 1;
    PcPresentation quotient;
    /// Image of each presentation generator.
    std::vector<ExponentVector> gen_map;
    /// Per class k = 1..c: invariants of gamma_k / gamma_{k+1}.
    std::vector<AbelianInvariants> layer_invariants;
    /// Lyndon word of the free-nilpotent generator behind each quotient generator.
    std::vector<magnus::LyndonWord> definitions;

    /// Image of a word over the presentation generators.
    ExponentVector image(const words::Word& w) const;

    // Internal state for image(): the free nilpotent cover, the relation
    // subgroup, and the positions of the surviving generators.
    std::shared_ptr<const FreeNilpotent> cover;
    std::shared_ptr<const InducedSequence> kernel;
    std::vector<std::size_t> survivors;

    ExponentVector project(const ExponentVector& cover_element) const;
};

/// G / gamma_{c+1}(G) for a finitely presented G.
NilpotentQuotient nq(const words::Presentation& p, int c, const NqConfig& config = {});

struct TorsionInfo {
    /// Elements of finite order; the identity comes first.
    std::vector<ExponentVector> elements;
    Int order() const { return static_cast<Int>(elements.size()); }
    bool is_torsion_free() const { return elements.size() == 1; }
};

/// Torsion subgroup of a nilpotent group given by a pc presentation whose
/// generator order refines a central series.
TorsionInfo torsion_subgroup(const PcPresentation& p);

struct ProbeEntry {
    /// The quotient G / gamma_{c+1}(G).
    int nilpotency_class = 1;
    bool torsion_free = false;
    Int torsion_order = 1;
    std::vector<AbelianInvariants> layer_invariants;
};

/// Whether G / gamma_{c+1}(G) is torsion-free, for c = 1..c_max. Reported raw,
/// with no monotonicity assumed, and never a claim about unbounded classes.
std::vector<ProbeEntry> enough_tf_probe(const words::Presentation& p, int c_max, const NqConfig& config = {});

}  // namespace grouplab::nilpotent
