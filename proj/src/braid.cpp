#include "grouplab/braid.hpp"

#include <algorithm>
#include <numeric>

#include "grouplab/error.hpp"

namespace grouplab::braid {

namespace {

constexpr std::size_t kMaxPureStrands = 6;

void check_strands(std::size_t n, std::size_t max) {
    if (n < 2 || n > max)
        throw InputError("strand count " + std::to_string(n) + " outside 2.." + std::to_string(max));
}

Word a_letter(std::size_t n, std::size_t i, std::size_t j, Int e = 1) { return Word::letter(pure_index(n, i, j), e); }

}  // namespace

BraidWord make_braid(std::size_t strands, const std::vector<int>& letters) {
    if (strands < 1) throw InputError("a braid needs at least one strand");
    std::vector<int> shifted;
    for (int l : letters) {
        int k = l < 0 ? -l : l;
        if (k < 1 || static_cast<std::size_t>(k) >= strands)
            throw InputError("braid generator subscript " + std::to_string(k) + " outside 1.." + std::to_string(strands - 1));
        shifted.push_back(l);
    }
    return {strands, Word::from_letters(shifted)};
}

words::Presentation braid_presentation(std::size_t n) {
    if (n < 1) throw InputError("a braid group needs at least one strand");
    words::Presentation p;
    for (std::size_t k = 1; k < n; ++k) p.generators.push_back("s" + std::to_string(k));
    for (std::size_t a = 0; a + 1 < n; ++a)
        for (std::size_t b = a + 1; b + 1 < n; ++b) {
            Word l = Word::letter(a), r = Word::letter(b);
            if (b == a + 1) p.relators.push_back(l * r * l * (r * l * r).inverse());
            else p.relators.push_back(words::commutator(l, r));
        }
    return p;
}

std::size_t pure_index(std::size_t n, std::size_t i, std::size_t j) {
    if (!(1 <= i && i < j && j <= n)) throw InputError("pure braid generator A_ij needs 1 <= i < j <= n");
    // Generators before row i: (n-1) + (n-2) + ... + (n-i+1).
    std::size_t before = (i - 1) * n - (i - 1) * i / 2;
    return before + (j - i - 1);
}

std::pair<std::size_t, std::size_t> pure_pair(std::size_t n, std::size_t index) {
    for (std::size_t i = 1; i < n; ++i) {
        if (index < n - i) return {i, i + 1 + index};
        index -= n - i;
    }
    throw InputError("pure braid generator index out of range");
}

BraidWord pure_generator(std::size_t n, std::size_t i, std::size_t j) {
    pure_index(n, i, j);
    std::vector<int> letters;
    for (std::size_t k = j - 1; k > i; --k) letters.push_back(static_cast<int>(k));
    letters.push_back(static_cast<int>(i));
    letters.push_back(static_cast<int>(i));
    for (std::size_t k = i + 1; k < j; ++k) letters.push_back(-static_cast<int>(k));
    return make_braid(n, letters);
}

words::Presentation pure_braid_presentation(std::size_t n) {
    check_strands(n, kMaxPureStrands);
    words::Presentation p;
    for (std::size_t i = 1; i <= n; ++i)
        for (std::size_t j = i + 1; j <= n; ++j) p.generators.push_back("A" + std::to_string(i) + std::to_string(j));
    auto A = [&](std::size_t i, std::size_t j) { return a_letter(n, i, j); };
    // A_rs^-1 A_ij A_rs = rhs for r < s < j.
    for (std::size_t r = 1; r <= n; ++r)
        for (std::size_t s = r + 1; s <= n; ++s)
            for (std::size_t i = 1; i <= n; ++i)
                for (std::size_t j = std::max(i, s) + 1; j <= n; ++j) {
                    Word rhs;
                    if (s < i || i < r) rhs = A(i, j);
                    else if (s == i) rhs = A(r, j) * A(i, j) * A(r, j).inverse();
                    else if (i == r) rhs = A(r, j) * A(s, j) * A(i, j) * (A(r, j) * A(s, j)).inverse();
                    else {
                        Word c = A(r, j) * A(s, j) * A(r, j).inverse() * A(s, j).inverse();
                        rhs = c * A(i, j) * c.inverse();
                    }
                    Word lhs = A(r, s).inverse() * A(i, j) * A(r, s);
                    p.relators.push_back(lhs * rhs.inverse());
                }
    return p;
}

Word PureBraidAction::conjugate(const BraidWord& b, const Word& pure) const {
    Word w = pure;
    const auto& syl = b.word.syllables();
    for (auto it = syl.rbegin(); it != syl.rend(); ++it) {
        const auto& table = it->exp > 0 ? positive.at(it->gen) : negative.at(it->gen);
        for (Int e = 0; e < (it->exp > 0 ? it->exp : -it->exp); ++e) w = words::substitute(w, table);
    }
    return w;
}

PureBraidAction braid_action_on_pure(std::size_t n) {
    check_strands(n, kMaxPureStrands);
    PureBraidAction act;
    act.strands = n;
    auto A = [&](std::size_t i, std::size_t j) { return a_letter(n, i, j); };
    for (std::size_t k = 1; k < n; ++k) {
        std::vector<Word> pos, neg;
        for (std::size_t i = 1; i <= n; ++i)
            for (std::size_t j = i + 1; j <= n; ++j) {
                Word p = A(i, j), q = A(i, j);
                if (k == i && j > i + 1) {
                    p = A(i + 1, j);
                    q = A(i, i + 1).inverse() * A(i + 1, j) * A(i, i + 1);
                } else if (k + 1 == i) {
                    p = A(k, i) * A(k, j) * A(k, i).inverse();
                    q = A(k, j);
                } else if (k + 1 == j && k > i) {
                    p = A(i, j).inverse() * A(i, k) * A(i, j);
                    q = A(i, k);
                } else if (k == j) {
                    p = A(i, j + 1);
                    q = A(i, j) * A(i, j + 1) * A(i, j).inverse();
                }
                pos.push_back(p);
                neg.push_back(q);
            }
        act.positive.push_back(std::move(pos));
        act.negative.push_back(std::move(neg));
    }
    return act;
}

std::vector<Word> artin_image(const BraidWord& b) {
    const std::size_t n = b.strands;
    std::vector<Word> images;
    for (std::size_t g = 0; g < n; ++g) images.push_back(Word::letter(g));
    // The image of a product is the composite, so substitute letter maps in order.
    for (const auto& s : b.word.syllables()) {
        const std::size_t i = s.gen;
        if (i + 1 >= n) throw InputError("braid letter outside the strand count");
        std::vector<Word> step;
        for (std::size_t g = 0; g < n; ++g) step.push_back(Word::letter(g));
        Word xi = Word::letter(i), xj = Word::letter(i + 1);
        if (s.exp > 0) {
            step[i] = xi * xj * xi.inverse();
            step[i + 1] = xi;
        } else {
            step[i] = xj;
            step[i + 1] = xj.inverse() * xi * xj;
        }
        for (Int e = 0; e < (s.exp > 0 ? s.exp : -s.exp); ++e)
            for (auto& w : images) w = words::substitute(w, step);
    }
    return images;
}

Permutation permutation_of(const BraidWord& b) {
    Permutation p(b.strands);
    std::iota(p.begin(), p.end(), 0);
    for (const auto& s : b.word.syllables()) {
        if (s.gen + 1 >= b.strands) throw InputError("braid letter outside the strand count");
        if (s.exp % 2 != 0) std::swap(p[s.gen], p[s.gen + 1]);
    }
    return p;
}

Permutation compose(const Permutation& a, const Permutation& b) {
    Permutation c(a.size());
    for (std::size_t x = 0; x < a.size(); ++x) c[x] = a[b[x]];
    return c;
}

Permutation inverse(const Permutation& a) {
    Permutation c(a.size());
    for (std::size_t x = 0; x < a.size(); ++x) c[a[x]] = x;
    return c;
}

std::size_t inversions(const Permutation& a) {
    std::size_t count = 0;
    for (std::size_t x = 0; x < a.size(); ++x)
        for (std::size_t y = x + 1; y < a.size(); ++y) count += a[x] > a[y];
    return count;
}

std::vector<Permutation> all_permutations(std::size_t n) {
    Permutation p(n);
    std::iota(p.begin(), p.end(), 0);
    std::vector<Permutation> out;
    do out.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    return out;
}

BraidWord transversal_word(const Permutation& p) {
    // Swaps s_1..s_m sorting p give p = s_m ... s_1.
    Permutation work = p;
    std::vector<int> swaps;
    for (std::size_t x = 1; x < work.size(); ++x)
        for (std::size_t y = x; y > 0 && work[y - 1] > work[y]; --y) {
            std::swap(work[y - 1], work[y]);
            swaps.push_back(static_cast<int>(y));
        }
    std::reverse(swaps.begin(), swaps.end());
    return make_braid(p.size(), swaps);
}

std::pair<Word, Permutation> rewrite_pure(const PureBraidAction& action, const BraidWord& b) {
    const std::size_t n = b.strands;
    if (n != action.strands) throw InputError("braid and action have different strand counts");
    Permutation current(n);
    std::iota(current.begin(), current.end(), 0);
    Word pure;
    for (const auto& s : b.word.syllables()) {
        const std::size_t i = s.gen;
        Permutation swap(n);
        std::iota(swap.begin(), swap.end(), 0);
        std::swap(swap[i], swap[i + 1]);
        for (Int e = 0; e < (s.exp > 0 ? s.exp : -s.exp); ++e) {
            // t(p) s = c t(p s): c = 1 when the length grows, and otherwise
            // t(p) = t(p s) s, so t(p) s = t(p s) A t(p s)^-1 t(p s) with A = s^2.
            Permutation next = compose(current, swap);
            Word c;
            const Word square = a_letter(n, i + 1, i + 2);
            if (inversions(next) < inversions(current)) c = action.conjugate(transversal_word(next), square);
            if (s.exp < 0) c = c * action.conjugate(transversal_word(next), square).inverse();
            pure.append(c);
            current = std::move(next);
        }
    }
    return {pure, current};
}

}  // namespace grouplab::braid
