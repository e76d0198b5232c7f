#include "grouplab/finite_group.hpp"

#include <algorithm>
#include <string>

#include "grouplab/error.hpp"

namespace grouplab::pgroups {

FiniteGroup FiniteGroup::from_table(std::vector<std::vector<Elem>> table) {
    FiniteGroup g;
    g.n_ = table.size();
    if (g.n_ == 0) throw InputError("empty multiplication table");
    g.table_.reserve(g.n_ * g.n_);
    for (const auto& row : table) {
        if (row.size() != g.n_) throw InputError("multiplication table is not square");
        for (Elem x : row) {
            if (x >= g.n_) throw InputError("multiplication table entry out of range");
            g.table_.push_back(x);
        }
    }
    for (Elem a = 0; a < g.n_; ++a)
        if (g.mul(0, a) != a || g.mul(a, 0) != a) throw InputError("element 0 is not the identity");
    g.inv_.assign(g.n_, 0);
    for (Elem a = 0; a < g.n_; ++a) {
        bool found = false;
        for (Elem b = 0; b < g.n_ && !found; ++b)
            if (g.mul(a, b) == 0) {
                g.inv_[a] = b;
                found = true;
            }
        if (!found) throw InputError("multiplication table has no inverses");
    }
    return g;
}

FiniteGroup FiniteGroup::from_pc(const nilpotent::PcPresentation& pc, std::size_t order_cap) {
    auto order = pc.order();
    if (!order) throw InputError("pc presentation defines an infinite group");
    if (static_cast<std::size_t>(*order) > order_cap)
        throw CapExceeded("group order " + std::to_string(*order) + " exceeds the cap " + std::to_string(order_cap));
    const std::size_t n = static_cast<std::size_t>(*order);
    const std::size_t rank = pc.size();
    auto decode = [&](std::size_t idx) {
        nilpotent::ExponentVector e(rank);
        for (std::size_t i = rank; i-- > 0;) {
            Int m = pc.relative_order(i);
            e[i] = static_cast<Int>(idx % static_cast<std::size_t>(m));
            idx /= static_cast<std::size_t>(m);
        }
        return e;
    };
    auto encode = [&](const nilpotent::ExponentVector& e) {
        std::size_t idx = 0;
        for (std::size_t i = 0; i < rank; ++i) idx = idx * static_cast<std::size_t>(pc.relative_order(i)) + static_cast<std::size_t>(e[i]);
        return static_cast<Elem>(idx);
    };
    // Right multiplication by each generator, then every product as a walk.
    std::vector<std::vector<Elem>> by_gen(rank, std::vector<Elem>(n));
    for (std::size_t a = 0; a < n; ++a) {
        auto e = decode(a);
        for (std::size_t i = 0; i < rank; ++i) by_gen[i][a] = encode(pc.multiply(e, pc.unit(i)));
    }
    FiniteGroup g;
    g.n_ = n;
    g.table_.assign(n * n, 0);
    for (std::size_t b = 0; b < n; ++b) {
        auto e = decode(b);
        for (std::size_t a = 0; a < n; ++a) {
            Elem x = static_cast<Elem>(a);
            for (std::size_t i = 0; i < rank; ++i)
                for (Int k = 0; k < e[i]; ++k) x = by_gen[i][x];
            g.table_[a * n + b] = x;
        }
    }
    g.inv_.assign(n, 0);
    for (std::size_t a = 0; a < n; ++a) g.inv_[a] = encode(pc.inverse(decode(a)));
    return g;
}

Elem FiniteGroup::power(Elem a, Int k) const {
    Elem base = k < 0 ? inv(a) : a;
    Int e = k < 0 ? -k : k;
    Elem r = 0;
    while (e > 0) {
        if (e & 1) r = mul(r, base);
        base = mul(base, base);
        e >>= 1;
    }
    return r;
}

Int FiniteGroup::element_order(Elem a) const {
    Int k = 1;
    for (Elem x = a; x != 0; x = mul(x, a)) ++k;
    return k;
}

ElementSet FiniteGroup::whole() const {
    ElementSet s(n_);
    for (Elem a = 0; a < n_; ++a) s[a] = a;
    return s;
}

ElementSet FiniteGroup::generate(const std::vector<Elem>& generators) const {
    std::vector<char> seen(n_, 0);
    std::vector<Elem> found{0};
    seen[0] = 1;
    for (std::size_t k = 0; k < found.size(); ++k)
        for (Elem g : generators) {
            Elem x = mul(found[k], g);
            if (!seen[x]) {
                seen[x] = 1;
                found.push_back(x);
            }
        }
    std::sort(found.begin(), found.end());
    return found;
}

ElementSet FiniteGroup::join(const ElementSet& a, const ElementSet& b) const {
    std::vector<Elem> gens(a);
    gens.insert(gens.end(), b.begin(), b.end());
    return generate(gens);
}

ElementSet FiniteGroup::commutator_subgroup(const ElementSet& a, const ElementSet& b) const {
    std::vector<char> seen(n_, 0);
    std::vector<Elem> gens;
    for (Elem x : a)
        for (Elem y : b) {
            Elem c = commutator(x, y);
            if (!seen[c]) {
                seen[c] = 1;
                gens.push_back(c);
            }
        }
    return generate(gens);
}

ElementSet FiniteGroup::conjugate_set(const ElementSet& s, Elem g) const {
    std::vector<Elem> out;
    out.reserve(s.size());
    for (Elem x : s) out.push_back(conjugate(x, g));
    return normalize_set(std::move(out));
}

ElementSet FiniteGroup::normal_closure(const ElementSet& s) const {
    ElementSet current = generate(s);
    while (true) {
        std::vector<Elem> gens(current);
        for (Elem g = 0; g < n_; ++g)
            for (Elem x : current) gens.push_back(conjugate(x, g));
        ElementSet next = generate(normalize_set(std::move(gens)));
        if (next == current) return current;
        current = std::move(next);
    }
}

ElementSet FiniteGroup::lower_central(int k) const {
    ElementSet g = whole();
    ElementSet out = g;
    for (int i = 1; i < k; ++i) out = commutator_subgroup(out, g);
    return out;
}

bool FiniteGroup::is_subgroup(const ElementSet& s) const {
    if (s.empty() || s.front() != 0) return false;
    for (Elem a : s)
        for (Elem b : s)
            if (!std::binary_search(s.begin(), s.end(), mul(a, b))) return false;
    return true;
}

bool FiniteGroup::is_normal(const ElementSet& s) const {
    if (!is_subgroup(s)) return false;
    for (Elem g = 0; g < n_; ++g)
        for (Elem x : s)
            if (!std::binary_search(s.begin(), s.end(), conjugate(x, g))) return false;
    return true;
}

ElementSet FiniteGroup::image(const ElementSet& s, const std::vector<Elem>& map) const {
    std::vector<Elem> out;
    out.reserve(s.size());
    for (Elem x : s) out.push_back(map.at(x));
    return normalize_set(std::move(out));
}

ElementSet set_intersection(const ElementSet& a, const ElementSet& b) {
    ElementSet out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

bool is_subset(const ElementSet& a, const ElementSet& b) { return std::includes(b.begin(), b.end(), a.begin(), a.end()); }

ElementSet normalize_set(std::vector<Elem> s) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    return s;
}

}  // namespace grouplab::pgroups
