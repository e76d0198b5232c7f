#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "grouplab/arith.hpp"
#include "grouplab/words.hpp"

namespace grouplab::magnus {

/// A noncommutative monomial: a sequence of generator indices.
using Monomial = std::vector<std::size_t>;

/// Element of Z<<X_1..X_d>> truncated above a fixed degree.
///
/// Storage is dense per degree: the coefficient of a degree-k monomial m
/// lives at the base-d value of m, so within one degree numeric order is the
/// lexicographic order of monomials. Only nonzero coefficients are reported
/// by terms().
class TruncSeries {
public:
    TruncSeries(std::size_t rank, int degree_cap);

    static TruncSeries one(std::size_t rank, int degree_cap);
    /// 1 + X_g, the image of the generator g.
    static TruncSeries generator(std::size_t rank, int degree_cap, std::size_t g);

    std::size_t rank() const noexcept { return rank_; }
    int degree_cap() const noexcept { return cap_; }

    Int constant() const noexcept { return by_degree_[0][0]; }
    Int coefficient(const Monomial& m) const;
    void set_coefficient(const Monomial& m, Int value);

    /// Dense coefficients of the degree-k part, indexed by monomial value.
    const std::vector<Int>& homogeneous(int k) const { return by_degree_.at(static_cast<std::size_t>(k)); }
    std::vector<Int>& homogeneous(int k) { return by_degree_.at(static_cast<std::size_t>(k)); }

    /// Nonzero terms of positive degree, ordered by degree then lexicographically.
    std::vector<std::pair<Monomial, Int>> terms() const;

    /// Smallest k >= 1 with a nonzero degree-k part, or nullopt when the
    /// series is constant.
    std::optional<int> lowest_nonconstant_degree() const;

    TruncSeries operator*(const TruncSeries& other) const;
    TruncSeries operator+(const TruncSeries& other) const;
    TruncSeries operator-(const TruncSeries& other) const;
    bool operator==(const TruncSeries& other) const = default;

    /// Multiplicative inverse; requires constant term +-1.
    TruncSeries inverse() const;
    TruncSeries pow(Int k) const;

    /// Right multiplication by (1 + X_g)^e, computed without a full product.
    void mul_generator_power(std::size_t g, Int e);

private:
    std::size_t rank_;
    int cap_;
    std::vector<std::vector<Int>> by_degree_;
};

/// Magnus map x_i -> 1 + X_i extended multiplicatively, truncated at degree D.
TruncSeries magnus_expand(const words::Word& w, std::size_t rank, int degree_cap);

/// Number of Lyndon words of length n over d letters: (1/n) sum_{k|n} mu(k) d^(n/k).
Int witt_number(Int d, Int n);

using LyndonWord = std::vector<std::size_t>;

/// All Lyndon words of length n over {0..d-1} in lexicographic order.
std::vector<LyndonWord> lyndon_basis(std::size_t d, int n);

bool is_lyndon(const LyndonWord& w);

/// Standard factorization w = u v with v the longest proper Lyndon suffix.
std::pair<LyndonWord, LyndonWord> standard_factorization(const LyndonWord& w);

/// Caches the tensor-algebra expansions of bracketed Lyndon words.
///
/// The bracketing P(w) = [P(u), P(v)] of a Lyndon word expands as w plus
/// lexicographically larger monomials of the same length; this triangularity
/// drives coefficient extraction.
class LyndonBrackets {
public:
    explicit LyndonBrackets(std::size_t rank) : rank_(rank) {}

    std::size_t rank() const noexcept { return rank_; }
    const std::vector<LyndonWord>& basis(int n);
    /// Dense degree-n polynomial of the bracketed Lyndon word.
    const std::vector<Int>& expansion(const LyndonWord& w);

    /// Coordinates of a homogeneous degree-n Lie polynomial over basis(n).
    /// Throws Error if the polynomial is not in the Lie ring.
    std::vector<Int> extract(int n, std::vector<Int> poly);

private:
    std::size_t rank_;
    std::map<int, std::vector<LyndonWord>> bases_;
    std::map<LyndonWord, std::vector<Int>> expansions_;
};

/// Image of a word in gamma_n(F)/gamma_{n+1}(F) in Lyndon coordinates.
struct LieElement {
    std::size_t rank = 0;
    int degree = 0;
    /// Zero coefficients are omitted.
    std::map<LyndonWord, Int> coeffs;

    bool operator==(const LieElement&) const = default;
};

inline constexpr int kDefaultWeightCap = 10;

/// Largest n with w in gamma_n(F); nullopt stands for "infinite" (w = 1).
/// Throws CapExceeded if w != 1 but the Magnus expansion vanishes through `cap`.
std::optional<int> lcs_weight(const words::Word& w, std::size_t rank, int cap = kDefaultWeightCap);

/// Requires w != 1 and a finite weight within the cap.
LieElement lie_image(const words::Word& w, std::size_t rank, int cap = kDefaultWeightCap);

struct PrimitivityCertificate {
    /// nullopt for the relator-free case ("infinite" weight).
    std::optional<int> weight;
    LieElement lie_image;
    Int coefficient_gcd = 0;
    bool verdict = false;
};

/// A presentation with at most one relator is primitive when the relator's
/// image in its lower-central layer is not a proper power (gcd of Lyndon
/// coordinates equal to 1). Relator-free presentations are primitive by
/// convention.
PrimitivityCertificate is_primitive_relator(const words::Presentation& p, int cap = kDefaultWeightCap);

/// Sufficient criterion via exponent sums. Default: gcd of the nonzero sums
/// is 1. With `strict_lcm`, the literal reading: lcm of all sums is 1.
bool exponent_sum_criterion(const words::Presentation& p, bool strict_lcm = false);

}  // namespace grouplab::magnus
