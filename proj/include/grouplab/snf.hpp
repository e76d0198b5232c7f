#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "grouplab/arith.hpp"

namespace grouplab::nilpotent {

using BigInt = boost::multiprecision::cpp_int;
using BigMatrix = std::vector<std::vector<BigInt>>;
using IntMatrix = std::vector<std::vector<Int>>;

BigMatrix to_big(const IntMatrix& a, std::size_t cols);
BigMatrix big_identity(std::size_t n);
BigMatrix big_multiply(const BigMatrix& a, const BigMatrix& b, std::size_t inner);
Int to_int(const BigInt& x);

/// Smith normal form with transforms: U * A * V = D, U and V unimodular.
struct SnfResult {
    std::size_t rows = 0;
    std::size_t cols = 0;
    /// min(rows, cols) nonnegative entries with d_1 | d_2 | ...
    std::vector<BigInt> diagonal;
    BigMatrix left;
    BigMatrix right;

    /// Number of nonzero diagonal entries.
    std::size_t rank() const;
};

/// `cols` is needed for empty matrices.
SnfResult snf(const BigMatrix& a, std::size_t cols);
SnfResult snf(const IntMatrix& a, std::size_t cols);

/// Invariants of Z^n / (row span): free rank and torsion divisors > 1, ascending.
struct AbelianInvariants {
    std::size_t rank = 0;
    std::vector<Int> torsion;

    bool operator==(const AbelianInvariants&) const = default;
};

AbelianInvariants abelian_invariants(const IntMatrix& relation_rows, std::size_t n);

/// Integer solutions of A x = b: x = particular + span(kernel).
struct IntegerSolution {
    std::vector<BigInt> particular;
    std::vector<std::vector<BigInt>> kernel;
};

std::optional<IntegerSolution> solve_integer(const BigMatrix& a, std::size_t cols, const std::vector<BigInt>& b);

/// Row-style Hermite normal form of the lattice spanned by `rows` in Z^n:
/// nonzero rows only, pivots strictly increasing, pivot entries positive,
/// entries above each pivot reduced into [0, pivot).
BigMatrix hermite_rows(const BigMatrix& rows, std::size_t n);

}  // namespace grouplab::nilpotent
