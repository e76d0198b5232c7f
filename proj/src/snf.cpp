#include "grouplab/snf.hpp"

#include <algorithm>
#include <utility>

#include "grouplab/error.hpp"

namespace grouplab::nilpotent {

namespace {

BigInt babs(const BigInt& x) { return x < 0 ? BigInt(-x) : x; }

// Floor division for BigInt with positive divisor.
BigInt bfloor_div(const BigInt& a, const BigInt& m) {
    BigInt q = a / m;
    if (q * m != a && (a < 0) != (m < 0)) --q;
    return q;
}

void swap_rows(BigMatrix& m, std::size_t i, std::size_t j) { std::swap(m[i], m[j]); }

void swap_cols(BigMatrix& m, std::size_t i, std::size_t j) {
    for (auto& row : m) std::swap(row[i], row[j]);
}

// row_i += f * row_j
void add_row(BigMatrix& m, std::size_t i, std::size_t j, const BigInt& f) {
    if (f == 0) return;
    for (std::size_t k = 0; k < m[i].size(); ++k) m[i][k] += f * m[j][k];
}

void add_col(BigMatrix& m, std::size_t i, std::size_t j, const BigInt& f) {
    if (f == 0) return;
    for (auto& row : m) row[i] += f * row[j];
}

}  // namespace

BigMatrix to_big(const IntMatrix& a, std::size_t cols) {
    BigMatrix out(a.size(), std::vector<BigInt>(cols));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].size() != cols) throw InputError("ragged matrix");
        for (std::size_t j = 0; j < cols; ++j) out[i][j] = a[i][j];
    }
    return out;
}

BigMatrix big_identity(std::size_t n) {
    BigMatrix out(n, std::vector<BigInt>(n));
    for (std::size_t i = 0; i < n; ++i) out[i][i] = 1;
    return out;
}

BigMatrix big_multiply(const BigMatrix& a, const BigMatrix& b, std::size_t inner) {
    std::size_t cols = b.empty() ? 0 : b[0].size();
    BigMatrix out(a.size(), std::vector<BigInt>(cols));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t k = 0; k < inner; ++k) {
            if (a[i][k] == 0) continue;
            for (std::size_t j = 0; j < cols; ++j) out[i][j] += a[i][k] * b[k][j];
        }
    return out;
}

Int to_int(const BigInt& x) {
    if (x > BigInt(std::numeric_limits<Int>::max()) || x < BigInt(std::numeric_limits<Int>::min()))
        throw OverflowError("integer does not fit in 64 bits");
    return static_cast<Int>(x);
}

std::size_t SnfResult::rank() const {
    return static_cast<std::size_t>(std::count_if(diagonal.begin(), diagonal.end(), [](const BigInt& d) { return d != 0; }));
}

SnfResult snf(const BigMatrix& a, std::size_t cols) {
    const std::size_t rows = a.size();
    BigMatrix d = a;
    BigMatrix u = big_identity(rows);
    BigMatrix v = big_identity(cols);
    const std::size_t steps = std::min(rows, cols);

    for (std::size_t t = 0; t < steps; ++t) {
        while (true) {
            // Smallest nonzero entry of the remaining block becomes the pivot.
            std::size_t pi = rows, pj = cols;
            for (std::size_t i = t; i < rows; ++i)
                for (std::size_t j = t; j < cols; ++j)
                    if (d[i][j] != 0 && (pi == rows || babs(d[i][j]) < babs(d[pi][pj]))) {
                        pi = i;
                        pj = j;
                    }
            if (pi == rows) break;
            if (pi != t) {
                swap_rows(d, t, pi);
                swap_rows(u, t, pi);
            }
            if (pj != t) {
                swap_cols(d, t, pj);
                swap_cols(v, t, pj);
            }
            bool clean = true;
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (d[i][t] == 0) continue;
                BigInt q = bfloor_div(d[i][t], d[t][t]);
                add_row(d, i, t, -q);
                add_row(u, i, t, -q);
                if (d[i][t] != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (d[t][j] == 0) continue;
                BigInt q = bfloor_div(d[t][j], d[t][t]);
                add_col(d, j, t, -q);
                add_col(v, j, t, -q);
                if (d[t][j] != 0) clean = false;
            }
            if (!clean) continue;
            // Divisibility: fold a row holding a non-multiple into row t.
            std::size_t bad = rows;
            for (std::size_t i = t + 1; i < rows && bad == rows; ++i)
                for (std::size_t j = t + 1; j < cols; ++j)
                    if (d[i][j] % d[t][t] != 0) {
                        bad = i;
                        break;
                    }
            if (bad == rows) break;
            add_row(d, t, bad, 1);
            add_row(u, t, bad, 1);
        }
        if (t < rows && t < cols && d[t][t] < 0) {
            for (auto& x : d[t]) x = -x;
            for (auto& x : u[t]) x = -x;
        }
    }

    SnfResult r;
    r.rows = rows;
    r.cols = cols;
    for (std::size_t t = 0; t < steps; ++t) r.diagonal.push_back(d[t][t]);
    r.left = std::move(u);
    r.right = std::move(v);

    // Internal check of the transform identity.
    BigMatrix check = big_multiply(big_multiply(r.left, a, rows), r.right, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) {
            BigInt expected = (i == j) ? r.diagonal[i] : BigInt(0);
            if (check[i][j] != expected) throw Error("internal error: SNF transform check failed");
        }
    return r;
}

SnfResult snf(const IntMatrix& a, std::size_t cols) { return snf(to_big(a, cols), cols); }

AbelianInvariants abelian_invariants(const IntMatrix& relation_rows, std::size_t n) {
    SnfResult s = snf(relation_rows, n);
    AbelianInvariants inv;
    inv.rank = n - s.rank();
    for (const auto& d : s.diagonal)
        if (d > 1) inv.torsion.push_back(to_int(d));
    std::sort(inv.torsion.begin(), inv.torsion.end());
    return inv;
}

std::optional<IntegerSolution> solve_integer(const BigMatrix& a, std::size_t cols, const std::vector<BigInt>& b) {
    const std::size_t rows = a.size();
    if (b.size() != rows) throw InputError("right-hand side has the wrong length");
    SnfResult s = snf(a, cols);
    // D y = U b with x = V y.
    std::vector<BigInt> ub(rows);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t k = 0; k < rows; ++k) ub[i] += s.left[i][k] * b[k];
    std::vector<BigInt> y(cols);
    for (std::size_t i = 0; i < rows; ++i) {
        BigInt di = i < s.diagonal.size() ? s.diagonal[i] : BigInt(0);
        if (di == 0) {
            if (ub[i] != 0) return std::nullopt;
        } else {
            if (ub[i] % di != 0) return std::nullopt;
            y[i] = ub[i] / di;
        }
    }
    IntegerSolution sol;
    sol.particular.assign(cols, 0);
    for (std::size_t i = 0; i < cols; ++i)
        for (std::size_t k = 0; k < cols; ++k) sol.particular[i] += s.right[i][k] * y[k];
    for (std::size_t k = 0; k < cols; ++k) {
        bool free = k >= s.diagonal.size() || s.diagonal[k] == 0;
        if (!free) continue;
        std::vector<BigInt> col(cols);
        for (std::size_t i = 0; i < cols; ++i) col[i] = s.right[i][k];
        sol.kernel.push_back(std::move(col));
    }
    return sol;
}

BigMatrix hermite_rows(const BigMatrix& rows_in, std::size_t n) {
    BigMatrix m = rows_in;
    std::size_t r = 0;
    for (std::size_t c = 0; c < n && r < m.size(); ++c) {
        while (true) {
            std::size_t pivot = m.size();
            for (std::size_t i = r; i < m.size(); ++i)
                if (m[i][c] != 0 && (pivot == m.size() || babs(m[i][c]) < babs(m[pivot][c]))) pivot = i;
            if (pivot == m.size()) break;
            std::swap(m[r], m[pivot]);
            bool done = true;
            for (std::size_t i = r + 1; i < m.size(); ++i) {
                if (m[i][c] == 0) continue;
                BigInt q = bfloor_div(m[i][c], m[r][c]);
                add_row(m, i, r, -q);
                if (m[i][c] != 0) done = false;
            }
            if (done) break;
        }
        if (r < m.size() && m[r][c] != 0) {
            if (m[r][c] < 0)
                for (auto& x : m[r]) x = -x;
            for (std::size_t i = 0; i < r; ++i) add_row(m, i, r, -bfloor_div(m[i][c], m[r][c]));
            ++r;
        }
    }
    m.resize(r);
    return m;
}

}  // namespace grouplab::nilpotent
