#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "grouplab/arith.hpp"
#include "grouplab/pc.hpp"

namespace grouplab::pgroups {

/// Element of a FiniteGroup, numbered 0..order-1 with 0 the identity.
using Elem = std::uint32_t;
/// Sorted, duplicate-free list of elements (usually a subgroup).
using ElementSet = std::vector<Elem>;

inline constexpr std::size_t kDefaultOrderCap = 1u << 12;

/// A finite group held as a Cayley table.
class FiniteGroup {
public:
    FiniteGroup() = default;

    /// Rows of the multiplication table; element 0 must be the identity.
    static FiniteGroup from_table(std::vector<std::vector<Elem>> table);
    /// Elements are numbered by their exponent vectors read as mixed-radix
    /// numbers, first generator most significant.
    static FiniteGroup from_pc(const nilpotent::PcPresentation& pc, std::size_t order_cap = kDefaultOrderCap);

    std::size_t order() const noexcept { return n_; }
    static constexpr Elem identity() noexcept { return 0; }
    Elem mul(Elem a, Elem b) const { return table_[static_cast<std::size_t>(a) * n_ + b]; }
    Elem inv(Elem a) const { return inv_[a]; }
    Elem power(Elem a, Int k) const;
    /// a^-1 b^-1 a b
    Elem commutator(Elem a, Elem b) const { return mul(mul(inv(a), inv(b)), mul(a, b)); }
    /// b^-1 a b
    Elem conjugate(Elem a, Elem b) const { return mul(mul(inv(b), a), b); }
    Int element_order(Elem a) const;

    ElementSet whole() const;
    ElementSet trivial() const { return {0}; }
    ElementSet generate(const std::vector<Elem>& generators) const;
    /// Subgroup generated by the union.
    ElementSet join(const ElementSet& a, const ElementSet& b) const;
    /// [A, B] = <[a, b] : a in A, b in B>.
    ElementSet commutator_subgroup(const ElementSet& a, const ElementSet& b) const;
    /// g^-1 S g
    ElementSet conjugate_set(const ElementSet& s, Elem g) const;
    ElementSet normal_closure(const ElementSet& s) const;
    /// gamma_k(G), gamma_1 = G.
    ElementSet lower_central(int k) const;

    bool is_subgroup(const ElementSet& s) const;
    bool is_normal(const ElementSet& s) const;

    /// Image of a set under a map given on all elements.
    ElementSet image(const ElementSet& s, const std::vector<Elem>& map) const;

private:
    std::size_t n_ = 0;
    std::vector<Elem> table_;
    std::vector<Elem> inv_;
};

ElementSet set_intersection(const ElementSet& a, const ElementSet& b);
bool is_subset(const ElementSet& a, const ElementSet& b);
ElementSet normalize_set(std::vector<Elem> s);

}  // namespace grouplab::pgroups
