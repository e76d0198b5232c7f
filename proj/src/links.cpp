#include "grouplab/links.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "grouplab/error.hpp"

namespace grouplab::links {

LinkingDiagram::LinkingDiagram(std::size_t components, const std::vector<std::tuple<std::size_t, std::size_t, Int>>& linking)
    : d_(components), labels_(components * (components - (components > 0)) / 2, 0) {
    if (components == 0) throw InputError("a link needs at least one component");
    std::vector<bool> seen(labels_.size(), false);
    for (const auto& [i, j, lk] : linking) {
        if (i < 1 || j > d_ || i >= j) throw InputError("linking pairs need 1 <= i < j <= components");
        const std::size_t k = index(i, j);
        if (seen[k]) throw InputError("pair " + std::to_string(i) + "," + std::to_string(j) + " given twice");
        seen[k] = true;
        // Labels are factored by trial division.
        if (lk > kMaxLabel || lk < -kMaxLabel) throw InputError("linking numbers are limited to 10^12 in absolute value");
        labels_[k] = lk;
    }
    for (std::size_t k = 0; k < seen.size(); ++k)
        if (!seen[k]) throw InputError("linking numbers must be given for every pair");
}

std::size_t LinkingDiagram::index(std::size_t i, std::size_t j) const {
    // Row-major over pairs (1,2), (1,3), ..., (2,3), ...
    return (i - 1) * d_ - (i - 1) * i / 2 + (j - i - 1);
}

Int LinkingDiagram::label(std::size_t i, std::size_t j) const {
    if (i > j) std::swap(i, j);
    if (i < 1 || j > d_ || i == j) throw InputError("no such pair of components");
    return labels_[index(i, j)];
}

std::vector<Edge> LinkingDiagram::edges() const {
    std::vector<Edge> out;
    for (std::size_t i = 1; i <= d_; ++i)
        for (std::size_t j = i + 1; j <= d_; ++j) out.push_back({i, j});
    return out;
}

LinkingDiagram LinkingDiagram::from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("components") || !j.contains("linking"))
        throw InputError("link JSON needs \"components\" and \"linking\"");
    const auto& c = j.at("components");
    if (!c.is_number_integer() || c.get<long long>() < 1) throw InputError("\"components\" must be a positive integer");
    std::vector<std::tuple<std::size_t, std::size_t, Int>> linking;
    if (!j.at("linking").is_array()) throw InputError("\"linking\" must be an array");
    for (const auto& e : j.at("linking")) {
        if (!e.is_array() || e.size() != 3 || !e[0].is_number_integer() || !e[1].is_number_integer() || !e[2].is_number_integer())
            throw InputError("each linking entry must be [i, j, lk]");
        if (e[0].get<long long>() < 1 || e[1].get<long long>() < 1) throw InputError("components are numbered from 1");
        linking.emplace_back(e[0].get<std::size_t>(), e[1].get<std::size_t>(), e[2].get<Int>());
    }
    return LinkingDiagram(c.get<std::size_t>(), linking);
}

nlohmann::ordered_json LinkingDiagram::to_json() const {
    nlohmann::ordered_json j;
    j["components"] = d_;
    j["linking"] = nlohmann::ordered_json::array();
    for (const auto& [a, b] : edges()) j["linking"].push_back({a, b, label(a, b)});
    return j;
}

namespace {

struct UnionFind {
    std::vector<std::size_t> parent;
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    std::size_t find(std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    bool unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent[b] = a;
        return true;
    }
};

// Spanning forest on the edges whose label is nonzero modulo p (p = 0: nonzero).
PrimeCheck check_prime(const LinkingDiagram& d, Int p) {
    UnionFind uf(d.components() + 1);
    std::vector<Edge> tree;
    for (const auto& [i, j] : d.edges()) {
        const Int lk = d.label(i, j);
        const bool usable = p == 0 ? lk != 0 : mod_floor(lk, p) != 0;
        if (usable && uf.unite(i, j)) tree.push_back({i, j});
    }
    PrimeCheck out;
    if (tree.size() + 1 == d.components()) {
        out.tree = std::move(tree);
        return out;
    }
    for (std::size_t v = 1; v <= d.components(); ++v)
        if (uf.find(v) == uf.find(1)) out.cut.push_back(v);
    return out;
}

}  // namespace

std::vector<Int> relevant_primes(const LinkingDiagram& d) {
    std::set<Int> primes;
    for (const auto& [i, j] : d.edges()) {
        const Int lk = d.label(i, j);
        if (lk == 0) continue;
        for (Int p : prime_divisors(lk)) primes.insert(p);
    }
    return {primes.begin(), primes.end()};
}

PrimitivityReport is_primitive_link(const LinkingDiagram& d) {
    PrimitivityReport r;
    r.checked_primes = relevant_primes(d);
    r.checks["generic"] = check_prime(d, 0);
    for (Int p : r.checked_primes) r.checks[std::to_string(p)] = check_prime(d, p);
    r.primitive = std::all_of(r.checks.begin(), r.checks.end(), [](const auto& kv) { return kv.second.tree.has_value(); });
    return r;
}

nlohmann::ordered_json PrimitivityReport::to_json() const {
    nlohmann::ordered_json j;
    j["primitive"] = primitive;
    j["checked_primes"] = checked_primes;
    auto w = nlohmann::ordered_json::object();
    auto entry = [](const PrimeCheck& c) {
        nlohmann::ordered_json e;
        if (c.tree) {
            e["tree"] = nlohmann::ordered_json::array();
            for (const auto& [a, b] : *c.tree) e["tree"].push_back({a, b});
        } else {
            e["cut"] = c.cut;
        }
        return e;
    };
    w["generic"] = entry(checks.at("generic"));
    for (Int p : checked_primes) w[std::to_string(p)] = entry(checks.at(std::to_string(p)));
    j["witnesses"] = w;
    return j;
}

}  // namespace grouplab::links
