#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "grouplab/arith.hpp"

namespace grouplab::words {

/// Index of a generator in declaration order.
using GenIndex = std::size_t;

struct Syllable {
    GenIndex gen;
    Int exp;

    bool operator==(const Syllable&) const = default;
};

/// Freely reduced word in a free group, stored run-length encoded.
///
/// Adjacent syllables always have distinct generators and every exponent is
/// nonzero; the empty word is the identity. Words are plain values and carry
/// no generator names: the surrounding presentation fixes the alphabet.
class Word {
public:
    Word() = default;

    static Word letter(GenIndex g, Int exp = 1);
    /// Builds a word from arbitrary syllables, reducing freely.
    static Word from_syllables(const std::vector<Syllable>& syllables);
    /// Builds a word from a letter sequence where +(g+1) is g and -(g+1) is g^-1.
    static Word from_letters(const std::vector<int>& letters);

    const std::vector<Syllable>& syllables() const noexcept { return syllables_; }
    bool is_identity() const noexcept { return syllables_.empty(); }
    /// Number of letters, i.e. the sum of absolute exponents.
    Int length() const;
    /// Largest generator index used plus one (0 for the identity).
    std::size_t rank_used() const;

    Word inverse() const;
    Word pow(Int k) const;

    bool operator==(const Word&) const = default;
    auto operator<=>(const Word& other) const {
        return std::lexicographical_compare_three_way(
            syllables_.begin(), syllables_.end(), other.syllables_.begin(), other.syllables_.end(),
            [](const Syllable& a, const Syllable& b) {
                if (a.gen != b.gen) return a.gen <=> b.gen;
                return a.exp <=> b.exp;
            });
    }

    /// Appends a syllable and reduces at the seam.
    void append(GenIndex g, Int exp);
    void append(const Word& w);

private:
    std::vector<Syllable> syllables_;
};

Word multiply(const Word& u, const Word& v);
Word operator*(const Word& u, const Word& v);

/// [u, v] = u^-1 v^-1 u v.
Word commutator(const Word& u, const Word& v);

/// Image of w under the endomorphism sending generator g to images[g].
Word substitute(const Word& w, const std::vector<Word>& images);

/// Total exponent of each of the first `rank` generators.
std::vector<Int> exponent_sums(const Word& w, std::size_t rank);

/// Checks the generator-name rule: a letter followed by letters, digits or '_'.
bool is_valid_identifier(std::string_view name);

/// A finitely presented group: generator names in declaration order plus relators.
struct Presentation {
    std::vector<std::string> generators;
    std::vector<Word> relators;

    std::size_t rank() const noexcept { return generators.size(); }
    bool operator==(const Presentation&) const = default;
};

struct ParseOutput {
    Presentation presentation;
    std::vector<std::string> warnings;
};

/// Parses the line-oriented presentation format:
///
///     # comment
///     gens: a b
///     rel: [a,b] a^2
///
/// `gens:` must appear exactly once and before any `rel:`. Words follow
///     word := term+ ; term := atom ('^' int)? ;
///     atom := id | '[' word ',' word ']' | '(' word ')'
/// Commutator brackets expand to u^-1 v^-1 u v. Throws ParseError.
ParseOutput parse_presentation_with_diagnostics(std::string_view text);
Presentation parse_presentation(std::string_view text);

/// Parses a single word against a fixed list of generator names.
Word parse_word(std::string_view text, const std::vector<std::string>& generators);

/// Renders in the presentation syntax; parse_presentation(render(p)) == p.
std::string render(const Presentation& p);
std::string render(const Word& w, const std::vector<std::string>& generators);

}  // namespace grouplab::words
