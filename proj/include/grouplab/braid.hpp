#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "grouplab/words.hpp"

namespace grouplab::braid {

using words::Word;

/// Word in the Artin generators: generator index k stands for sigma_{k+1}.
struct BraidWord {
    std::size_t strands = 2;
    Word word;
};

/// Validates 1 <= subscript <= n-1 and builds the word from signed subscripts.
BraidWord make_braid(std::size_t strands, const std::vector<int>& letters);

/// B_n with generators s1..s(n-1) and the braid relations.
words::Presentation braid_presentation(std::size_t n);

/// Index of A_ij (1 <= i < j <= n) among the pure braid generators,
/// ordered A12, A13, ..., A1n, A23, ...
std::size_t pure_index(std::size_t n, std::size_t i, std::size_t j);
std::pair<std::size_t, std::size_t> pure_pair(std::size_t n, std::size_t index);

/// A_ij = s(j-1) ... s(i+1) s(i)^2 s(i+1)^-1 ... s(j-1)^-1.
BraidWord pure_generator(std::size_t n, std::size_t i, std::size_t j);

/// P_n on the A_ij with the standard conjugation relations; 2 <= n <= 6.
words::Presentation pure_braid_presentation(std::size_t n);

/// Conjugation of the pure braid group by the Artin generators:
/// positive[k][a] = s(k+1) A_a s(k+1)^-1 and negative[k][a] = s(k+1)^-1 A_a s(k+1),
/// as words in the A's.
struct PureBraidAction {
    std::size_t strands = 2;
    std::vector<std::vector<Word>> positive;
    std::vector<std::vector<Word>> negative;

    /// b A b^-1 for a braid b and a word in the A's.
    Word conjugate(const BraidWord& b, const Word& pure) const;
};

PureBraidAction braid_action_on_pure(std::size_t n);

/// Artin representation: images of the free generators x1..xn under the
/// automorphism of a braid, with sigma_i: x_i -> x_i x_{i+1} x_i^-1, x_{i+1} -> x_i.
std::vector<Word> artin_image(const BraidWord& b);

/// A permutation of {0..n-1} as the array obtained by swapping positions
/// k, k+1 for each letter s(k+1); products compose as (a * b)[x] = a[b[x]],
/// so the permutation of a concatenation is the product.
using Permutation = std::vector<std::size_t>;

Permutation permutation_of(const BraidWord& b);
Permutation compose(const Permutation& a, const Permutation& b);
Permutation inverse(const Permutation& a);
std::size_t inversions(const Permutation& a);
/// All permutations of {0..n-1} in lexicographic order (identity first).
std::vector<Permutation> all_permutations(std::size_t n);

/// Positive word of minimal length for a permutation, from insertion sort.
BraidWord transversal_word(const Permutation& p);

/// Writes b as (pure part) * transversal_word(permutation_of(b)), the pure
/// part as a word in the A's.
std::pair<Word, Permutation> rewrite_pure(const PureBraidAction& action, const BraidWord& b);

}  // namespace grouplab::braid
