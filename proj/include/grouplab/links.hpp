#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "grouplab/arith.hpp"

namespace grouplab::links {

inline constexpr Int kMaxLabel = 1'000'000'000'000;

/// Complete graph on the components of a link with linking numbers as edge
/// labels. Components are numbered from 1.
class LinkingDiagram {
public:
    /// Throws InputError unless every pair i < j appears exactly once.
    LinkingDiagram(std::size_t components, const std::vector<std::tuple<std::size_t, std::size_t, Int>>& linking);

    static LinkingDiagram from_json(const nlohmann::json& j);
    nlohmann::ordered_json to_json() const;

    std::size_t components() const noexcept { return d_; }
    Int label(std::size_t i, std::size_t j) const;
    /// All pairs i < j in lexicographic order.
    std::vector<std::pair<std::size_t, std::size_t>> edges() const;

private:
    std::size_t index(std::size_t i, std::size_t j) const;

    std::size_t d_;
    std::vector<Int> labels_;
};

using Edge = std::pair<std::size_t, std::size_t>;

struct PrimeCheck {
    /// Spanning tree with no label divisible by the prime, or for a failure
    /// the vertex set reachable from component 1 (a cut with no usable edge).
    std::optional<std::vector<Edge>> tree;
    std::vector<std::size_t> cut;
};

struct PrimitivityReport {
    bool primitive = false;
    /// "generic" stands for every prime dividing no nonzero label.
    std::map<std::string, PrimeCheck> checks;
    std::vector<Int> checked_primes;

    nlohmann::ordered_json to_json() const;
};

/// Primes dividing at least one nonzero label.
std::vector<Int> relevant_primes(const LinkingDiagram& d);

/// For every prime p, some spanning tree has all labels nonzero mod p. A prime
/// dividing no nonzero label sees exactly the nonzero edges, so the generic
/// check and the relevant primes together cover all primes.
PrimitivityReport is_primitive_link(const LinkingDiagram& d);

}  // namespace grouplab::links
