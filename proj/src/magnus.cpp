#include "grouplab/magnus.hpp"

#include <algorithm>

#include "grouplab/error.hpp"

namespace grouplab::magnus {

namespace {

std::size_t ipow(std::size_t base, int exp) {
    std::size_t r = 1;
    for (int i = 0; i < exp; ++i) r *= base;
    return r;
}

std::size_t monomial_index(const Monomial& m, std::size_t rank) {
    std::size_t idx = 0;
    for (std::size_t letter : m) {
        if (letter >= rank) throw InputError("monomial letter outside the alphabet");
        idx = idx * rank + letter;
    }
    return idx;
}

Monomial monomial_from_index(std::size_t idx, int degree, std::size_t rank) {
    Monomial m(static_cast<std::size_t>(degree));
    for (int i = degree - 1; i >= 0; --i) {
        m[static_cast<std::size_t>(i)] = idx % rank;
        idx /= rank;
    }
    return m;
}

}  // namespace

TruncSeries::TruncSeries(std::size_t rank, int degree_cap) : rank_(rank), cap_(degree_cap) {
    if (rank == 0) throw InputError("series rank must be positive");
    if (degree_cap < 0) throw InputError("degree cap must be nonnegative");
    by_degree_.resize(static_cast<std::size_t>(degree_cap) + 1);
    for (int k = 0; k <= degree_cap; ++k) by_degree_[static_cast<std::size_t>(k)].assign(ipow(rank, k), 0);
}

TruncSeries TruncSeries::one(std::size_t rank, int degree_cap) {
    TruncSeries s(rank, degree_cap);
    s.by_degree_[0][0] = 1;
    return s;
}

TruncSeries TruncSeries::generator(std::size_t rank, int degree_cap, std::size_t g) {
    TruncSeries s = one(rank, degree_cap);
    if (g >= rank) throw InputError("generator outside the alphabet");
    if (degree_cap >= 1) s.by_degree_[1][g] = 1;
    return s;
}

Int TruncSeries::coefficient(const Monomial& m) const {
    if (m.size() > static_cast<std::size_t>(cap_)) return 0;
    return by_degree_[m.size()][monomial_index(m, rank_)];
}

void TruncSeries::set_coefficient(const Monomial& m, Int value) {
    if (m.size() > static_cast<std::size_t>(cap_)) throw InputError("monomial longer than the degree cap");
    by_degree_[m.size()][monomial_index(m, rank_)] = value;
}

std::vector<std::pair<Monomial, Int>> TruncSeries::terms() const {
    std::vector<std::pair<Monomial, Int>> out;
    for (int k = 1; k <= cap_; ++k) {
        const auto& h = by_degree_[static_cast<std::size_t>(k)];
        for (std::size_t i = 0; i < h.size(); ++i)
            if (h[i] != 0) out.emplace_back(monomial_from_index(i, k, rank_), h[i]);
    }
    return out;
}

std::optional<int> TruncSeries::lowest_nonconstant_degree() const {
    for (int k = 1; k <= cap_; ++k) {
        const auto& h = by_degree_[static_cast<std::size_t>(k)];
        if (std::any_of(h.begin(), h.end(), [](Int c) { return c != 0; })) return k;
    }
    return std::nullopt;
}

TruncSeries TruncSeries::operator*(const TruncSeries& other) const {
    if (rank_ != other.rank_ || cap_ != other.cap_) throw InputError("series shapes differ");
    TruncSeries out(rank_, cap_);
    for (int a = 0; a <= cap_; ++a) {
        const auto& lhs = by_degree_[static_cast<std::size_t>(a)];
        for (int b = 0; a + b <= cap_; ++b) {
            const auto& rhs = other.by_degree_[static_cast<std::size_t>(b)];
            auto& dst = out.by_degree_[static_cast<std::size_t>(a + b)];
            const std::size_t stride = rhs.size();
            for (std::size_t i = 0; i < lhs.size(); ++i) {
                if (lhs[i] == 0) continue;
                for (std::size_t j = 0; j < stride; ++j) {
                    if (rhs[j] == 0) continue;
                    dst[i * stride + j] = checked_add(dst[i * stride + j], checked_mul(lhs[i], rhs[j]));
                }
            }
        }
    }
    return out;
}

TruncSeries TruncSeries::operator+(const TruncSeries& other) const {
    if (rank_ != other.rank_ || cap_ != other.cap_) throw InputError("series shapes differ");
    TruncSeries out = *this;
    for (std::size_t k = 0; k < by_degree_.size(); ++k)
        for (std::size_t i = 0; i < by_degree_[k].size(); ++i)
            out.by_degree_[k][i] = checked_add(out.by_degree_[k][i], other.by_degree_[k][i]);
    return out;
}

TruncSeries TruncSeries::operator-(const TruncSeries& other) const {
    if (rank_ != other.rank_ || cap_ != other.cap_) throw InputError("series shapes differ");
    TruncSeries out = *this;
    for (std::size_t k = 0; k < by_degree_.size(); ++k)
        for (std::size_t i = 0; i < by_degree_[k].size(); ++i)
            out.by_degree_[k][i] = checked_sub(out.by_degree_[k][i], other.by_degree_[k][i]);
    return out;
}

TruncSeries TruncSeries::inverse() const {
    const Int c = constant();
    if (c != 1 && c != -1) throw InputError("series is not invertible over Z");
    // c*S = 1 + T, so S^-1 = c * sum_k (-T)^k.
    TruncSeries minus_t(rank_, cap_);
    for (int k = 1; k <= cap_; ++k) {
        const auto& src = by_degree_[static_cast<std::size_t>(k)];
        auto& dst = minus_t.by_degree_[static_cast<std::size_t>(k)];
        for (std::size_t i = 0; i < src.size(); ++i) dst[i] = checked_mul(-c, src[i]);
    }
    TruncSeries result = one(rank_, cap_);
    TruncSeries term = one(rank_, cap_);
    for (int k = 1; k <= cap_; ++k) {
        term = term * minus_t;
        result = result + term;
    }
    if (c == -1)
        for (auto& h : result.by_degree_)
            for (auto& x : h) x = -x;
    return result;
}

TruncSeries TruncSeries::pow(Int k) const {
    TruncSeries base = k < 0 ? inverse() : *this;
    Int n = k < 0 ? -k : k;
    TruncSeries result = one(rank_, cap_);
    while (n > 0) {
        if (n & 1) result = result * base;
        n >>= 1;
        if (n > 0) base = base * base;
    }
    return result;
}

void TruncSeries::mul_generator_power(std::size_t g, Int e) {
    if (g >= rank_) throw InputError("generator outside the alphabet");
    if (e == 0) return;
    // (1 + X)^e = sum_k binom(e, k) X^k, valid for negative e as well.
    std::vector<Int> binom(static_cast<std::size_t>(cap_) + 1, 0);
    binom[0] = 1;
    for (int k = 1; k <= cap_; ++k) {
        Int prev = binom[static_cast<std::size_t>(k - 1)];
        if (prev == 0) break;
        binom[static_cast<std::size_t>(k)] = checked_mul(prev, e - (k - 1)) / k;
    }
    auto result = by_degree_;
    for (int k = 1; k <= cap_; ++k) {
        const Int bk = binom[static_cast<std::size_t>(k)];
        if (bk == 0) continue;
        std::size_t suffix = 0;
        for (int i = 0; i < k; ++i) suffix = suffix * rank_ + g;
        const std::size_t shift = ipow(rank_, k);
        for (int a = 0; a + k <= cap_; ++a) {
            const auto& src = by_degree_[static_cast<std::size_t>(a)];
            auto& dst = result[static_cast<std::size_t>(a + k)];
            for (std::size_t i = 0; i < src.size(); ++i) {
                if (src[i] == 0) continue;
                std::size_t j = i * shift + suffix;
                dst[j] = checked_add(dst[j], checked_mul(src[i], bk));
            }
        }
    }
    by_degree_ = std::move(result);
}

TruncSeries magnus_expand(const words::Word& w, std::size_t rank, int degree_cap) {
    if (degree_cap < 1) throw InputError("degree cap must be at least 1");
    TruncSeries s = TruncSeries::one(rank, degree_cap);
    for (const auto& syl : w.syllables()) s.mul_generator_power(syl.gen, syl.exp);
    return s;
}

Int witt_number(Int d, Int n) {
    if (d < 1 || n < 1) throw InputError("witt_number needs d >= 1 and n >= 1");
    auto mobius = [](Int k) {
        Int result = 1;
        for (Int p = 2; p * p <= k; ++p) {
            if (k % p == 0) {
                k /= p;
                if (k % p == 0) return Int{0};
                result = -result;
            }
        }
        if (k > 1) result = -result;
        return result;
    };
    Int total = 0;
    for (Int k = 1; k <= n; ++k) {
        if (n % k != 0) continue;
        Int mu = mobius(k);
        if (mu == 0) continue;
        Int power = 1;
        for (Int i = 0; i < n / k; ++i) power = checked_mul(power, d);
        total = checked_add(total, mu * power);
    }
    return total / n;
}

bool is_lyndon(const LyndonWord& w) {
    if (w.empty()) return false;
    for (std::size_t i = 1; i < w.size(); ++i)
        if (!std::lexicographical_compare(w.begin(), w.end(), w.begin() + static_cast<std::ptrdiff_t>(i), w.end()))
            return false;
    return true;
}

std::vector<LyndonWord> lyndon_basis(std::size_t d, int n) {
    if (d < 1 || n < 1) throw InputError("lyndon_basis needs d >= 1 and n >= 1");
    // Duval's generator visits every Lyndon word of length <= n in lexicographic order.
    std::vector<LyndonWord> out;
    LyndonWord w{0};
    while (!w.empty()) {
        if (static_cast<int>(w.size()) == n) out.push_back(w);
        const std::size_t m = w.size();
        while (static_cast<int>(w.size()) < n) w.push_back(w[w.size() - m]);
        while (!w.empty() && w.back() == d - 1) w.pop_back();
        if (!w.empty()) ++w.back();
    }
    return out;
}

std::pair<LyndonWord, LyndonWord> standard_factorization(const LyndonWord& w) {
    if (w.size() < 2) throw InputError("standard factorization needs length >= 2");
    for (std::size_t i = 1; i < w.size(); ++i) {
        LyndonWord v(w.begin() + static_cast<std::ptrdiff_t>(i), w.end());
        if (is_lyndon(v)) return {LyndonWord(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(i)), v};
    }
    throw Error("no proper Lyndon suffix");
}

const std::vector<LyndonWord>& LyndonBrackets::basis(int n) {
    auto it = bases_.find(n);
    if (it == bases_.end()) it = bases_.emplace(n, lyndon_basis(rank_, n)).first;
    return it->second;
}

const std::vector<Int>& LyndonBrackets::expansion(const LyndonWord& w) {
    auto it = expansions_.find(w);
    if (it != expansions_.end()) return it->second;
    std::vector<Int> poly(ipow(rank_, static_cast<int>(w.size())), 0);
    if (w.size() == 1) {
        poly[w[0]] = 1;
    } else {
        auto [u, v] = standard_factorization(w);
        // std::map references stay valid across the recursive insertions.
        const std::vector<Int>& pu = expansion(u);
        const std::vector<Int>& pv = expansion(v);
        const std::size_t su = pu.size(), sv = pv.size();
        for (std::size_t i = 0; i < su; ++i) {
            if (pu[i] == 0) continue;
            for (std::size_t j = 0; j < sv; ++j) {
                if (pv[j] == 0) continue;
                const Int c = checked_mul(pu[i], pv[j]);
                poly[i * sv + j] = checked_add(poly[i * sv + j], c);
                poly[j * su + i] = checked_sub(poly[j * su + i], c);
            }
        }
    }
    return expansions_.emplace(w, std::move(poly)).first->second;
}

std::vector<Int> LyndonBrackets::extract(int n, std::vector<Int> poly) {
    const auto& words = basis(n);
    std::vector<Int> coords(words.size(), 0);
    for (std::size_t k = 0; k < words.size(); ++k) {
        std::size_t idx = monomial_index(words[k], rank_);
        const Int c = poly[idx];
        if (c == 0) continue;
        coords[k] = c;
        const auto& e = expansion(words[k]);
        for (std::size_t i = idx; i < e.size(); ++i)
            if (e[i] != 0) poly[i] = checked_sub(poly[i], checked_mul(c, e[i]));
    }
    if (std::any_of(poly.begin(), poly.end(), [](Int c) { return c != 0; }))
        throw Error("homogeneous polynomial is not a Lie element");
    return coords;
}

std::optional<int> lcs_weight(const words::Word& w, std::size_t rank, int cap) {
    if (w.is_identity()) return std::nullopt;
    if (cap < 1) throw InputError("weight cap must be at least 1");
    for (int d = 1; d <= cap; ++d) {
        if (auto k = magnus_expand(w, rank, d).lowest_nonconstant_degree()) return k;
    }
    throw CapExceeded("weight exceeds cap " + std::to_string(cap));
}

LieElement lie_image(const words::Word& w, std::size_t rank, int cap) {
    auto weight = lcs_weight(w, rank, cap);
    if (!weight) throw InputError("lie_image of the identity is undefined");
    const int n = *weight;
    TruncSeries s = magnus_expand(w, rank, n);
    LyndonBrackets brackets(rank);
    std::vector<Int> coords = brackets.extract(n, s.homogeneous(n));
    LieElement out{rank, n, {}};
    const auto& basis = brackets.basis(n);
    for (std::size_t k = 0; k < basis.size(); ++k)
        if (coords[k] != 0) out.coeffs.emplace(basis[k], coords[k]);
    return out;
}

PrimitivityCertificate is_primitive_relator(const words::Presentation& p, int cap) {
    if (p.relators.size() > 1) throw InputError("primitivity test needs at most one relator");
    PrimitivityCertificate cert;
    cert.lie_image.rank = p.rank();
    if (p.relators.empty()) {
        cert.verdict = true;
        return cert;
    }
    const auto& r = p.relators.front();
    if (r.is_identity()) throw InputError("relator is the identity");
    cert.lie_image = lie_image(r, p.rank(), cap);
    cert.weight = cert.lie_image.degree;
    Int g = 0;
    for (const auto& [word, c] : cert.lie_image.coeffs) g = gcd_abs(g, c);
    cert.coefficient_gcd = g;
    cert.verdict = (g == 1);
    return cert;
}

bool exponent_sum_criterion(const words::Presentation& p, bool strict_lcm) {
    if (p.relators.size() != 1) throw InputError("exponent-sum criterion needs exactly one relator");
    const auto sums = words::exponent_sums(p.relators.front(), p.rank());
    if (strict_lcm) {
        Int l = 1;
        for (Int s : sums) l = lcm_checked(l, s);
        return l == 1;
    }
    Int g = 0;
    for (Int s : sums) g = gcd_abs(g, s);
    return g == 1;
}

}  // namespace grouplab::magnus
