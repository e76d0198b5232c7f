#include "grouplab/pc.hpp"

#include <algorithm>

#include "grouplab/error.hpp"

namespace grouplab::nilpotent {

namespace {

void push_word_reversed(std::vector<std::pair<std::size_t, Int>>& stack, const PcWord& w, Int copies) {
    for (Int c = 0; c < copies; ++c)
        for (auto it = w.rbegin(); it != w.rend(); ++it) stack.push_back(*it);
}

// Pushes w^-1 so that it is processed next: w^-1 reversed is w with negated exponents.
void push_inverse_word(std::vector<std::pair<std::size_t, Int>>& stack, const PcWord& w, Int copies) {
    for (Int c = 0; c < copies; ++c)
        for (const auto& [g, e] : w) stack.emplace_back(g, -e);
}

}  // namespace

PcPresentation PcPresentation::create(PcRelations relations) {
    PcPresentation p = create_unchecked(std::move(relations));
    auto failures = p.consistency_failures();
    if (!failures.empty()) throw InputError("inconsistent pc presentation: " + failures.front());
    return p;
}

PcPresentation PcPresentation::create_unchecked(PcRelations relations) {
    PcPresentation p;
    const std::size_t n = relations.generators.size();
    for (std::size_t i = 0; i < n; ++i) {
        const auto& g = relations.generators[i];
        if (g.weight < 1) throw InputError("generator " + g.id + " has weight < 1");
        if (i > 0 && g.weight < relations.generators[i - 1].weight)
            throw InputError("weights must be nondecreasing (generator " + g.id + ")");
        if (g.relative_order < 0 || g.relative_order == 1)
            throw InputError("generator " + g.id + " has invalid relative order");
    }
    for (const auto& [i, w] : relations.powers) {
        if (i >= n) throw InputError("power relation for unknown generator");
        if (relations.generators[i].relative_order == 0)
            throw InputError("power relation given for infinite generator " + relations.generators[i].id);
        for (const auto& [g, e] : w)
            if (g <= i || g >= n)
                throw InputError("power relation of " + relations.generators[i].id + " must use later generators");
    }
    for (const auto& [key, w] : relations.commutators) {
        auto [j, i] = key;
        if (j >= n || i >= j) throw InputError("commutator relations are keyed by (j, i) with j > i");
        for (const auto& [g, e] : w)
            if (g <= j || g >= n)
                throw InputError("commutator [" + relations.generators[j].id + "," + relations.generators[i].id +
                                 "] must only involve generators after " + relations.generators[j].id);
    }
    p.gens_ = relations.generators;
    p.class_ = relations.nilpotency_class;
    p.relations_ = std::move(relations);
    p.build_tables();
    return p;
}

void PcPresentation::build_tables() {
    const std::size_t n = gens_.size();
    power_.assign(n, ExponentVector(n, 0));
    power_inv_word_.assign(n, {});
    comm_.assign(n, std::vector<ExponentVector>(n, ExponentVector(n, 0)));
    conj_pos_.assign(n, std::vector<PcWord>(n));
    conj_neg_.assign(n, std::vector<PcWord>(n));

    // Relation right-hand sides only involve later generators, so building
    // tables from the last generator backwards keeps every collection inside
    // a tail whose tables already exist.
    for (std::size_t ii = n; ii-- > 0;) {
        const std::size_t i = ii;
        if (gens_[i].relative_order > 0) {
            auto it = relations_.powers.find(i);
            PcWord w = it == relations_.powers.end() ? PcWord{} : it->second;
            power_[i] = collect(w);
            check_normal(power_[i], "power relation of " + gens_[i].id);
        }
        for (std::size_t j = i + 1; j < n; ++j) {
            auto it = relations_.commutators.find({j, i});
            PcWord w = it == relations_.commutators.end() ? PcWord{} : it->second;
            comm_[j][i] = collect(w);
            check_normal(comm_[j][i], "commutator relation");
            PcWord pos{{j, 1}};
            for (const auto& s : to_word(comm_[j][i])) pos.push_back(s);
            conj_pos_[j][i] = std::move(pos);
        }
        for (std::size_t j = n; j-- > i + 1;) {
            // g_i g_j g_i^-1 = g_j z with z = g_i [g_j,g_i]^-1 g_i^-1.
            ExponentVector z = conjugate_step(i, -1, inverse(comm_[j][i]));
            PcWord neg{{j, 1}};
            for (const auto& s : to_word(z)) neg.push_back(s);
            conj_neg_[j][i] = std::move(neg);
        }
        if (gens_[i].relative_order > 0) power_inv_word_[i] = to_word(inverse(power_[i]));
    }
}

void PcPresentation::check_normal(const ExponentVector& x, const std::string& what) const {
    for (std::size_t i = 0; i < x.size(); ++i) {
        Int m = gens_[i].relative_order;
        if (m > 0 && (x[i] < 0 || x[i] >= m)) throw Error(what + " is not in normal form");
    }
}

const ExponentVector& PcPresentation::power_relation(std::size_t i) const {
    if (gens_.at(i).relative_order == 0) throw InputError("generator has infinite relative order");
    return power_[i];
}

const ExponentVector& PcPresentation::commutator_relation(std::size_t j, std::size_t i) const {
    if (j >= size() || i >= j) throw InputError("commutator_relation needs j > i");
    return comm_[j][i];
}

ExponentVector PcPresentation::unit(std::size_t i, Int e) const {
    ExponentVector x = identity();
    x.at(i) = e;
    if (gens_[i].relative_order > 0 && (e < 0 || e >= gens_[i].relative_order)) return collect({{i, e}});
    return x;
}

bool PcPresentation::is_identity(const ExponentVector& x) const {
    return std::all_of(x.begin(), x.end(), [](Int v) { return v == 0; });
}

ExponentVector PcPresentation::word_to_vector(const PcWord& normal) const {
    ExponentVector x = identity();
    for (const auto& [g, e] : normal) x[g] = e;
    return x;
}

ExponentVector PcPresentation::conjugate_step(std::size_t i, int sign, const ExponentVector& t) const {
    ExponentVector result = identity();
    for (std::size_t j = i + 1; j < t.size(); ++j) {
        if (t[j] == 0) continue;
        ExponentVector image = word_to_vector(sign > 0 ? conj_pos_[j][i] : conj_neg_[j][i]);
        result = multiply(result, power(image, t[j]));
    }
    return result;
}

ExponentVector PcPresentation::conjugate_power(std::size_t i, Int k, const ExponentVector& t) const {
    const int sign = k > 0 ? 1 : -1;
    Int n = k > 0 ? k : -k;
    if (n <= kSmallExponent) {
        ExponentVector z = t;
        for (Int r = 0; r < n; ++r) z = conjugate_step(i, sign, z);
        return z;
    }
    // Binary powering of the automorphism y -> g_i^-sign y g_i^sign, kept as
    // images of the generators after i.
    const std::size_t size = gens_.size();
    auto apply = [&](const std::vector<ExponentVector>& images, const ExponentVector& y) {
        ExponentVector out = identity();
        for (std::size_t j = i + 1; j < size; ++j)
            if (y[j] != 0) out = multiply(out, power(images[j], y[j]));
        return out;
    };
    std::vector<ExponentVector> base(size), acc(size);
    for (std::size_t j = i + 1; j < size; ++j) {
        base[j] = word_to_vector(sign > 0 ? conj_pos_[j][i] : conj_neg_[j][i]);
        acc[j] = unit(j);
    }
    while (n > 0) {
        if (n & 1)
            for (std::size_t j = i + 1; j < size; ++j) acc[j] = apply(base, acc[j]);
        n >>= 1;
        if (n > 0) {
            std::vector<ExponentVector> squared(size);
            for (std::size_t j = i + 1; j < size; ++j) squared[j] = apply(base, base[j]);
            base = std::move(squared);
        }
    }
    return apply(acc, t);
}

void PcPresentation::collect_into(ExponentVector& e, std::vector<std::pair<std::size_t, Int>>& stack) const {
    const std::size_t n = gens_.size();
    std::vector<std::pair<std::size_t, Int>> tail;
    while (!stack.empty()) {
        auto [i, k] = stack.back();
        stack.pop_back();
        if (k == 0) continue;
        if (i >= n) throw InputError("pc word uses an unknown generator");
        const Int m = gens_[i].relative_order;
        bool has_tail = false;
        bool large = k > kSmallExponent || k < -kSmallExponent;
        for (std::size_t j = i + 1; j < n; ++j)
            if (e[j] != 0) {
                has_tail = true;
                if (e[j] > kSmallExponent || e[j] < -kSmallExponent) large = true;
            }
        if (!has_tail || large) {
            // x g_i^k = head g_i^(a+k) (g_i^-k tail g_i^k), and g_i^(qm) = P_i^q.
            ExponentVector t = identity();
            for (std::size_t j = i + 1; j < n; ++j) {
                t[j] = e[j];
                e[j] = 0;
            }
            Int v = checked_add(e[i], k);
            Int q = 0;
            if (m > 0) {
                q = floor_div(v, m);
                v -= q * m;
            }
            e[i] = v;
            ExponentVector z = has_tail ? conjugate_power(i, k, t) : t;
            if (q != 0) z = multiply(power(power_[i], q), z);
            PcWord zw = to_word(z);
            push_word_reversed(stack, zw, 1);
            continue;
        }
        const Int s = k > 0 ? 1 : -1;
        if (k != s) stack.emplace_back(i, k - s);
        tail.clear();
        for (std::size_t j = i + 1; j < n; ++j)
            if (e[j] != 0) {
                tail.emplace_back(j, e[j]);
                e[j] = 0;
            }
        Int v = e[i] + s;
        const PcWord* inserted = nullptr;
        PcWord power_word;
        if (m > 0 && v == m) {
            v = 0;
            power_word = to_word(power_[i]);
            inserted = &power_word;
        } else if (m > 0 && v == -1) {
            v = m - 1;
            inserted = &power_inv_word_[i];
        }
        e[i] = v;
        for (auto it = tail.rbegin(); it != tail.rend(); ++it) {
            const auto [j, t] = *it;
            const PcWord& c = s > 0 ? conj_pos_[j][i] : conj_neg_[j][i];
            if (t > 0)
                push_word_reversed(stack, c, t);
            else
                push_inverse_word(stack, c, -t);
        }
        if (inserted) push_word_reversed(stack, *inserted, 1);
    }
}

ExponentVector PcPresentation::collect(const PcWord& w) const {
    ExponentVector e = identity();
    std::vector<std::pair<std::size_t, Int>> stack(w.rbegin(), w.rend());
    collect_into(e, stack);
    return e;
}

ExponentVector PcPresentation::multiply(const ExponentVector& x, const ExponentVector& y) const {
    ExponentVector e = x;
    std::vector<std::pair<std::size_t, Int>> stack;
    for (std::size_t i = y.size(); i-- > 0;)
        if (y[i] != 0) stack.emplace_back(i, y[i]);
    collect_into(e, stack);
    return e;
}

ExponentVector PcPresentation::inverse(const ExponentVector& x) const {
    PcWord w;
    for (std::size_t i = x.size(); i-- > 0;)
        if (x[i] != 0) w.emplace_back(i, -x[i]);
    return collect(w);
}

ExponentVector PcPresentation::power(const ExponentVector& x, Int k) const {
    ExponentVector base = k < 0 ? inverse(x) : x;
    Int n = k < 0 ? -k : k;
    ExponentVector result = identity();
    while (n > 0) {
        if (n & 1) result = multiply(result, base);
        n >>= 1;
        if (n > 0) base = multiply(base, base);
    }
    return result;
}

ExponentVector PcPresentation::commutator(const ExponentVector& x, const ExponentVector& y) const {
    return multiply(multiply(inverse(x), inverse(y)), multiply(x, y));
}

ExponentVector PcPresentation::conjugate(const ExponentVector& x, const ExponentVector& y) const {
    return multiply(multiply(inverse(y), x), y);
}

std::optional<std::size_t> PcPresentation::depth(const ExponentVector& x) const {
    for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i] != 0) return i;
    return std::nullopt;
}

PcWord PcPresentation::to_word(const ExponentVector& x) {
    PcWord w;
    for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i] != 0) w.emplace_back(i, x[i]);
    return w;
}

std::optional<Int> PcPresentation::order() const {
    Int n = 1;
    for (const auto& g : gens_) {
        if (g.relative_order == 0) return std::nullopt;
        n = checked_mul(n, g.relative_order);
    }
    return n;
}

PcPresentation PcPresentation::truncate(std::size_t k) const {
    if (k > size()) throw InputError("truncate beyond the number of generators");
    PcRelations r;
    r.generators.assign(gens_.begin(), gens_.begin() + static_cast<std::ptrdiff_t>(k));
    r.nilpotency_class = class_;
    auto cut = [k](const ExponentVector& x) {
        PcWord w;
        for (std::size_t i = 0; i < k; ++i)
            if (x[i] != 0) w.emplace_back(i, x[i]);
        return w;
    };
    for (std::size_t i = 0; i < k; ++i) {
        if (gens_[i].relative_order > 0) r.powers[i] = cut(power_[i]);
        for (std::size_t j = i + 1; j < k; ++j) {
            PcWord w = cut(comm_[j][i]);
            if (!w.empty()) r.commutators[{j, i}] = std::move(w);
        }
    }
    return create_unchecked(std::move(r));
}

std::vector<std::string> PcPresentation::consistency_failures() const {
    std::vector<std::string> failures;
    const std::size_t n = size();
    auto name = [this](std::size_t i) { return gens_[i].id; };
    auto check = [&](const ExponentVector& a, const ExponentVector& b, const std::string& what) {
        if (a != b) failures.push_back(what);
    };
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const ExponentVector ji = collect({{j, 1}, {i, 1}});
            for (std::size_t k = j + 1; k < n; ++k) {
                ExponentVector lhs = multiply(collect({{k, 1}, {j, 1}}), unit(i));
                ExponentVector rhs = multiply(unit(k), ji);
                check(lhs, rhs, "(" + name(k) + name(j) + ")" + name(i) + " != " + name(k) + "(" + name(j) + name(i) + ")");
            }
            const Int mj = gens_[j].relative_order;
            const Int mi = gens_[i].relative_order;
            if (mj > 0) {
                ExponentVector lhs = multiply(power_[j], unit(i));
                ExponentVector rhs = multiply(collect({{j, mj - 1}}), ji);
                check(lhs, rhs, "power overlap " + name(j) + "^" + std::to_string(mj) + " " + name(i));
            } else {
                ExponentVector rhs = multiply(collect({{j, -1}}), ji);
                check(unit(i), rhs, "inverse overlap " + name(j) + "^-1 (" + name(j) + name(i) + ")");
            }
            if (mi > 0) {
                ExponentVector lhs = multiply(unit(j), power_[i]);
                ExponentVector rhs = multiply(ji, collect({{i, mi - 1}}));
                check(lhs, rhs, "power overlap " + name(j) + " " + name(i) + "^" + std::to_string(mi));
            } else {
                ExponentVector lhs = multiply(collect({{j, 1}, {i, -1}}), unit(i));
                check(unit(j), lhs, "inverse overlap (" + name(j) + name(i) + "^-1)" + name(i));
                if (mj == 0) {
                    ExponentVector l2 = multiply(collect({{j, -1}, {i, -1}}), unit(i));
                    check(collect({{j, -1}}), l2, "inverse overlap (" + name(j) + "^-1" + name(i) + "^-1)" + name(i));
                }
            }
        }
        if (gens_[i].relative_order > 0) {
            ExponentVector lhs = multiply(power_[i], unit(i));
            ExponentVector rhs = multiply(unit(i), power_[i]);
            check(lhs, rhs, "power overlap " + name(i) + "^" + std::to_string(gens_[i].relative_order) + " " + name(i));
        }
    }
    return failures;
}

}  // namespace grouplab::nilpotent
