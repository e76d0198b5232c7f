#include "grouplab/pgroups.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <utility>

#include "grouplab/error.hpp"
#include "grouplab/pc_json.hpp"

namespace grouplab::pgroups {

using nilpotent::BigInt;
using nilpotent::BigMatrix;

namespace {

// Automorphism search is exhaustive; keep it to tiny groups.
constexpr Int kAutomorphismOrderCap = Int{1} << 10;

Int pow_int(Int base, Int e) {
    Int r = 1;
    for (Int i = 0; i < e; ++i) r = checked_mul(r, base);
    return r;
}

Int inverse_mod(Int a, Int p) {
    Int x = 0, y = 0;
    ext_gcd(mod_floor(a, p), p, x, y);
    return mod_floor(x, p);
}

}  // namespace

FinitePGroup::FinitePGroup(PcPresentation pc, Int p, std::string name) : name_(std::move(name)), pc_(std::move(pc)), p_(p) {
    if (!is_prime(p)) throw InputError("p-group prime " + std::to_string(p) + " is not prime");
    for (std::size_t i = 0; i < pc_.size(); ++i)
        if (pc_.relative_order(i) != p)
            throw InputError("generator " + pc_.generator(i).id + " has relative order " + std::to_string(pc_.relative_order(i)) +
                             ", expected " + std::to_string(p));
    auto failures = pc_.consistency_failures();
    if (!failures.empty()) throw InputError("inconsistent pc presentation: " + failures.front());
    table_ = FiniteGroup::from_pc(pc_);
}

Elem FinitePGroup::element(const ExponentVector& e) const {
    if (e.size() != rank()) throw InputError("exponent vector has the wrong length");
    std::size_t idx = 0;
    for (Int x : e) {
        if (x < 0 || x >= p_) throw InputError("exponent vector is not in normal form");
        idx = idx * static_cast<std::size_t>(p_) + static_cast<std::size_t>(x);
    }
    return static_cast<Elem>(idx);
}

ExponentVector FinitePGroup::exponents(Elem x) const {
    ExponentVector e(rank());
    std::size_t idx = x;
    for (std::size_t i = rank(); i-- > 0;) {
        e[i] = static_cast<Int>(idx % static_cast<std::size_t>(p_));
        idx /= static_cast<std::size_t>(p_);
    }
    return e;
}

Elem FinitePGroup::generator(std::size_t i) const { return element(pc_.unit(i)); }

std::vector<ExponentVector> FinitePGroup::canonical_generators(const ElementSet& subgroup) const {
    std::map<std::size_t, ExponentVector> best;
    for (Elem x : subgroup) {
        ExponentVector e = exponents(x);
        auto d = pc_.depth(e);
        if (!d || e[*d] != 1) continue;
        auto it = best.find(*d);
        if (it == best.end() || e < it->second) best[*d] = e;
    }
    std::vector<ExponentVector> out;
    for (auto& [d, e] : best) out.push_back(std::move(e));
    return out;
}

Elem FinitePGroup::evaluate(const ExponentVector& e, const std::vector<Elem>& images, const FiniteGroup& target) const {
    Elem r = FiniteGroup::identity();
    for (std::size_t i = 0; i < e.size(); ++i)
        if (e[i] != 0) r = target.mul(r, target.power(images[i], e[i]));
    return r;
}

FinitePGroup load_p_group(const nlohmann::json& j, std::string name) {
    if (!j.is_object() || !j.contains("prime") || !j["prime"].is_number_integer())
        throw InputError("p-group JSON needs an integer \"prime\" field");
    if (name.empty()) name = j.value("name", std::string{});
    return FinitePGroup(nilpotent::pc_from_json(j), j["prime"].get<Int>(), std::move(name));
}

PSeriesChain p_lower_central_series(const FinitePGroup& g) {
    const FiniteGroup& G = g.group();
    PSeriesChain chain;
    chain.prime = g.prime();
    ElementSet current = G.whole();
    const ElementSet all = current;
    while (true) {
        chain.subgroups.push_back(current);
        chain.generators.push_back(g.canonical_generators(current));
        if (current.size() == 1) break;
        ElementSet next = G.commutator_subgroup(current, all);
        std::vector<Elem> powers;
        for (Elem x : current) powers.push_back(G.power(x, g.prime()));
        next = G.join(next, G.generate(powers));
        if (next.size() == current.size()) throw Error("p-lower central series stalled; the group is not a p-group");
        current = std::move(next);
    }
    chain.length = static_cast<int>(chain.subgroups.size()) - 1;
    return chain;
}

int nilpotent_p_length(const FinitePGroup& g) {
    if (g.order() == 1) throw InputError("nilpotent p-length of the trivial group is undefined");
    return p_lower_central_series(g).length;
}

FpMatrix FpMatrix::identity(Int p, std::size_t n) {
    FpMatrix m{p, IntMatrix(n, std::vector<Int>(n, 0))};
    for (std::size_t i = 0; i < n; ++i) m.entries[i][i] = 1;
    return m;
}

FpMatrix FpMatrix::operator*(const FpMatrix& other) const {
    const std::size_t n = size();
    if (other.size() != n || other.prime != prime) throw InputError("matrix shapes or primes differ");
    FpMatrix r{prime, IntMatrix(n, std::vector<Int>(n, 0))};
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            Int a = entries[i][k];
            if (a == 0) continue;
            for (std::size_t j = 0; j < n; ++j) r.entries[i][j] = (r.entries[i][j] + a * other.entries[k][j]) % prime;
        }
    return r;
}

FpMatrix FpMatrix::pow(Int k) const {
    if (k < 0) throw InputError("negative matrix power");
    FpMatrix result = identity(prime, size());
    FpMatrix base = *this;
    while (k > 0) {
        if (k & 1) result = result * base;
        k >>= 1;
        if (k > 0) base = base * base;
    }
    return result;
}

bool FpMatrix::is_identity() const { return *this == identity(prime, size()); }

MatrixPowerRecord check_power_lemma_matrix(const FpMatrix& a) {
    if (!is_prime(a.prime)) throw InputError("matrix prime is not prime");
    const std::size_t n = a.size();
    for (const auto& row : a.entries) {
        if (row.size() != n) throw InputError("matrix is not square");
        for (Int x : row)
            if (x < 0 || x >= a.prime) throw InputError("matrix entries must lie in [0, p)");
    }
    MatrixPowerRecord rec;
    FpMatrix nil = a;
    for (std::size_t i = 0; i < n; ++i) nil.entries[i][i] = mod_floor(nil.entries[i][i] - 1, a.prime);
    const FpMatrix zero{a.prime, IntMatrix(n, std::vector<Int>(n, 0))};
    // (A - I)^0 = I is zero only on the zero space.
    if (n == 0) {
        rec.unipotent = true;
        rec.pass = true;
        return rec;
    }
    FpMatrix power = nil;
    int exponent = 1;
    while (!(power == zero)) {
        if (exponent >= static_cast<int>(n)) return rec;
        power = power * nil;
        ++exponent;
    }
    rec.unipotent = true;
    rec.n = exponent;
    while (rec.p_power < rec.n) {
        rec.p_power = checked_mul(rec.p_power, a.prime);
        ++rec.k;
    }
    rec.pass = a.pow(rec.p_power).is_identity();
    return rec;
}

std::vector<Elem> automorphism_map(const FinitePGroup& g, const Automorphism& alpha) {
    if (alpha.size() != g.rank()) throw InputError("automorphism needs one image per pc-generator");
    for (Elem x : alpha)
        if (x >= g.group().order()) throw InputError("automorphism image out of range");
    std::vector<Elem> map(g.group().order());
    for (Elem x = 0; x < map.size(); ++x) map[x] = g.evaluate(g.exponents(x), alpha, g.group());
    return map;
}

namespace {

ElementSet frattini(const FinitePGroup& g) {
    auto chain = p_lower_central_series(g);
    return chain.subgroups.size() > 1 ? chain.subgroups[1] : chain.subgroups[0];
}

bool is_automorphism_map(const FiniteGroup& G, const std::vector<Elem>& map) {
    std::vector<bool> hit(G.order(), false);
    for (Elem x : map) hit[x] = true;
    if (std::find(hit.begin(), hit.end(), false) != hit.end()) return false;
    for (Elem a = 0; a < G.order(); ++a)
        for (Elem b = 0; b < G.order(); ++b)
            if (map[G.mul(a, b)] != G.mul(map[a], map[b])) return false;
    return true;
}

}  // namespace

bool acts_trivially_on_h1(const FinitePGroup& g, const Automorphism& alpha) {
    const ElementSet phi = frattini(g);
    const FiniteGroup& G = g.group();
    for (std::size_t i = 0; i < g.rank(); ++i) {
        Elem q = G.mul(alpha.at(i), G.inv(g.generator(i)));
        if (!std::binary_search(phi.begin(), phi.end(), q)) return false;
    }
    return true;
}

VerificationRecord check_power_lemma_automorphism(const FinitePGroup& g, const Automorphism& alpha) {
    VerificationRecord rec;
    rec.lemma = "automorphism_p_power";
    rec.instance = g.name();
    const FiniteGroup& G = g.group();
    const std::vector<Elem> map = automorphism_map(g, alpha);
    if (!is_automorphism_map(G, map)) throw InputError("the generator images do not define an automorphism");
    const bool trivial_h1 = acts_trivially_on_h1(g, alpha);
    rec.hypotheses.push_back({"alpha is an automorphism", true});
    rec.hypotheses.push_back({"alpha acts trivially on H_1(G; Z/p)", trivial_h1});
    if (!trivial_h1) {
        rec.verdict = Verdict::inapplicable;
        return rec;
    }
    if (G.order() == 1) {
        rec.verdict = Verdict::pass;
        return rec;
    }
    const int k = nilpotent_p_length(g);
    const Int exponent = pow_int(g.prime(), k - 1);
    // Apply alpha `exponent` times to every pc-generator.
    std::vector<Elem> images(g.rank());
    for (std::size_t i = 0; i < g.rank(); ++i) images[i] = g.generator(i);
    for (Int step = 0; step < exponent; ++step)
        for (Elem& x : images) x = map[x];
    bool identity = true;
    for (std::size_t i = 0; i < g.rank(); ++i) identity = identity && images[i] == g.generator(i);
    Int order = 1;
    std::vector<Elem> power = map;
    auto is_id = [](const std::vector<Elem>& m) {
        for (Elem x = 0; x < m.size(); ++x)
            if (m[x] != x) return false;
        return true;
    };
    while (!is_id(power)) {
        for (Elem& x : power) x = map[x];
        ++order;
    }
    rec.details["p_length"] = k;
    rec.details["exponent"] = exponent;
    rec.details["automorphism_order"] = order;
    rec.verdict = identity ? Verdict::pass : Verdict::fail;
    return rec;
}

void for_each_homomorphism(const FinitePGroup& source, const FiniteGroup& target,
                           const std::vector<std::vector<Elem>>& candidates,
                           const std::function<bool(const std::vector<Elem>&)>& visit) {
    const std::size_t n = source.rank();
    if (candidates.size() != n) throw InputError("need one candidate list per pc-generator");
    const PcPresentation& pc = source.pc();
    std::vector<Elem> images(n, FiniteGroup::identity());
    bool stop = false;
    auto fits = [&](std::size_t i) {
        Elem c = images[i];
        if (target.power(c, source.prime()) != source.evaluate(pc.power_relation(i), images, target)) return false;
        for (std::size_t j = i + 1; j < n; ++j)
            if (target.commutator(images[j], c) != source.evaluate(pc.commutator_relation(j, i), images, target)) return false;
        return true;
    };
    std::function<void(std::size_t)> assign = [&](std::size_t remaining) {
        if (stop) return;
        if (remaining == 0) {
            if (!visit(images)) stop = true;
            return;
        }
        const std::size_t i = remaining - 1;
        for (Elem c : candidates[i]) {
            images[i] = c;
            if (fits(i)) assign(i);
            if (stop) return;
        }
        images[i] = FiniteGroup::identity();
    };
    assign(n);
}

std::vector<Automorphism> automorphisms(const FinitePGroup& g, bool h1_trivial_only) {
    if (g.order() > kAutomorphismOrderCap)
        throw CapExceeded("automorphism enumeration is limited to groups of order " + std::to_string(kAutomorphismOrderCap));
    const FiniteGroup& G = g.group();
    std::vector<std::vector<Elem>> candidates(g.rank());
    if (h1_trivial_only) {
        const ElementSet phi = frattini(g);
        for (std::size_t i = 0; i < g.rank(); ++i)
            for (Elem f : phi) candidates[i].push_back(G.mul(g.generator(i), f));
    } else {
        for (auto& c : candidates) c = G.whole();
    }
    std::vector<Automorphism> out;
    for_each_homomorphism(g, G, candidates, [&](const std::vector<Elem>& images) {
        if (G.generate(images).size() == G.order()) out.push_back(images);
        return true;
    });
    return out;
}

Automorphism inner_automorphism(const FinitePGroup& g, Elem x) {
    Automorphism alpha(g.rank());
    for (std::size_t i = 0; i < g.rank(); ++i) alpha[i] = g.group().conjugate(g.generator(i), x);
    return alpha;
}

bool are_isomorphic(const FinitePGroup& a, const FinitePGroup& b) {
    if (a.order() != b.order()) return false;
    const FiniteGroup& B = b.group();
    std::vector<std::vector<Elem>> candidates(a.rank(), B.whole());
    bool found = false;
    for_each_homomorphism(a, B, candidates, [&](const std::vector<Elem>& images) {
        found = B.generate(images).size() == B.order();
        return !found;
    });
    return found;
}

namespace {

// Submodules are stored as echelon row bases: reduced row echelon form mod p,
// or Hermite form over Z.
class Lattice {
public:
    Lattice(Int prime, std::size_t dim) : prime_(prime), dim_(dim) {}

    BigMatrix span(const BigMatrix& rows) const {
        if (prime_ == 0) return nilpotent::hermite_rows(rows, dim_);
        std::vector<std::vector<Int>> m;
        for (const auto& r : rows) {
            std::vector<Int> v(dim_);
            for (std::size_t j = 0; j < dim_; ++j) v[j] = nilpotent::to_int(BigInt(r[j] % prime_ + prime_) % prime_);
            m.push_back(std::move(v));
        }
        std::size_t rank = 0;
        for (std::size_t col = 0; col < dim_ && rank < m.size(); ++col) {
            std::size_t pivot = rank;
            while (pivot < m.size() && m[pivot][col] == 0) ++pivot;
            if (pivot == m.size()) continue;
            std::swap(m[rank], m[pivot]);
            Int inv = inverse_mod(m[rank][col], prime_);
            for (Int& x : m[rank]) x = x * inv % prime_;
            for (std::size_t r = 0; r < m.size(); ++r) {
                if (r == rank || m[r][col] == 0) continue;
                Int f = m[r][col];
                for (std::size_t j = 0; j < dim_; ++j) m[r][j] = mod_floor(m[r][j] - f * m[rank][j], prime_);
            }
            ++rank;
        }
        BigMatrix out;
        for (std::size_t r = 0; r < rank; ++r) out.emplace_back(m[r].begin(), m[r].end());
        return out;
    }

    static std::vector<BigInt> apply(const IntMatrix& a, const std::vector<BigInt>& v) {
        std::vector<BigInt> out(v.size(), 0);
        for (std::size_t i = 0; i < v.size(); ++i)
            for (std::size_t j = 0; j < v.size(); ++j) out[i] += a[i][j] * v[j];
        return out;
    }

    // Smallest submodule containing the rows, invariant under every generator.
    BigMatrix invariant_closure(const BigMatrix& rows, const std::vector<IntMatrix>& gens) const {
        BigMatrix basis = span(rows);
        while (true) {
            BigMatrix extended = basis;
            for (const auto& v : basis)
                for (const auto& a : gens) extended.push_back(apply(a, v));
            BigMatrix next = span(extended);
            if (next == basis) return basis;
            basis = std::move(next);
        }
    }

private:
    Int prime_;
    std::size_t dim_;
};

void validate_action(const ModuleAction& action) {
    if (action.prime != 0 && !is_prime(action.prime)) throw InputError("module prime is not prime");
    const std::size_t n = action.dimension;
    for (const auto& a : action.generators) {
        if (a.size() != n) throw InputError("action matrix has the wrong size");
        for (const auto& row : a)
            if (row.size() != n) throw InputError("action matrix is not square");
        auto d = nilpotent::snf(a, n);
        bool invertible = d.rank() == n;
        for (const auto& x : d.diagonal) {
            if (action.prime == 0) invertible = invertible && x == 1;
            else invertible = invertible && x % action.prime != 0;
        }
        if (!invertible) throw InputError("action matrix is not an automorphism of the module");
    }
}

}  // namespace

UnipotenceResult is_unipotent_action(const ModuleAction& action) {
    validate_action(action);
    const std::size_t n = action.dimension;
    Lattice lattice(action.prime, n);
    BigMatrix current = nilpotent::big_identity(n);
    if (action.prime != 0) current = lattice.span(current);
    UnipotenceResult result;
    result.chain.push_back(current.size());
    int step = 0;
    while (!current.empty()) {
        BigMatrix images;
        for (const auto& v : current)
            for (const auto& a : action.generators) {
                auto w = Lattice::apply(a, v);
                for (std::size_t i = 0; i < n; ++i) w[i] -= v[i];
                images.push_back(std::move(w));
            }
        BigMatrix next = lattice.invariant_closure(images, action.generators);
        ++step;
        result.chain.push_back(next.size());
        if (next.size() == current.size()) return result;
        current = std::move(next);
    }
    result.unipotent = true;
    result.m = step;
    return result;
}

TransferReport unipotent_mod_p_transfer(const ModuleAction& action, const std::vector<Int>& primes) {
    if (action.prime != 0) throw InputError("the transfer check takes an action over Z");
    TransferReport report;
    report.integral = is_unipotent_action(action);
    report.pass = report.integral.unipotent;
    for (Int p : primes) {
        ModuleAction reduced{p, action.dimension, action.generators};
        for (auto& a : reduced.generators)
            for (auto& row : a)
                for (Int& x : row) x = mod_floor(x, p);
        TransferRecord rec;
        rec.prime = p;
        auto r = is_unipotent_action(reduced);
        rec.unipotent = r.unipotent;
        rec.m = r.m;
        rec.pass = r.unipotent && report.integral.m && r.m && *r.m <= *report.integral.m;
        report.pass = report.pass && rec.pass;
        report.reductions.push_back(rec);
    }
    return report;
}

ElementSet normal_core(const FiniteGroup& g, const ElementSet& u) {
    if (!g.is_subgroup(u)) throw InputError("normal core needs a subgroup");
    ElementSet core = u;
    for (Elem x = 0; x < g.order() && core.size() > 1; ++x) core = set_intersection(core, g.conjugate_set(u, x));
    return core;
}

VerificationRecord lemma_extension_construction_check(const ExtensionInstance& inst, ElementSet* u_out) {
    const FiniteGroup& G = inst.g;
    VerificationRecord rec;
    rec.lemma = "extension_construction";
    rec.instance = inst.name;
    if (inst.n < 1) throw InputError("n must be positive");
    for (const ElementSet* s : {&inst.h, &inst.v, &inst.w_preimage})
        if (!G.is_subgroup(*s)) throw InputError("H, V and the preimage of W must be subgroups");

    const ElementSet gamma_n = G.lower_central(inst.n);
    const ElementSet h_gamma = G.join(inst.h, gamma_n);
    rec.hypotheses.push_back({"H is normal in G", G.is_normal(inst.h)});
    rec.hypotheses.push_back({"V is a subgroup of H normal in G", is_subset(inst.v, inst.h) && G.is_normal(inst.v)});
    rec.hypotheses.push_back({"p^-1(W) contains H and is normal in G", is_subset(inst.h, inst.w_preimage) && G.is_normal(inst.w_preimage)});
    rec.hypotheses.push_back({"W lies in gamma_n(Q)", is_subset(inst.w_preimage, h_gamma)});
    rec.hypotheses.push_back({"gamma_n(G) cap H lies in V", is_subset(set_intersection(gamma_n, inst.h), inst.v)});
    if (!rec.all_hypotheses()) {
        rec.verdict = Verdict::inapplicable;
        return rec;
    }

    const ElementSet u = G.join(inst.v, set_intersection(gamma_n, inst.w_preimage));
    if (u_out) *u_out = u;
    const bool normal = G.is_normal(u);
    const bool kernel = set_intersection(inst.h, u) == inst.v;
    const bool image = G.join(inst.h, u) == inst.w_preimage;
    const std::size_t g_mod_u = G.order() / u.size();
    const std::size_t h_mod_v = inst.h.size() / inst.v.size();
    const std::size_t q_mod_w = G.order() / inst.w_preimage.size();
    const bool orders = g_mod_u == h_mod_v * q_mod_w;
    rec.details["order_U"] = u.size();
    rec.details["order_G_mod_U"] = g_mod_u;
    rec.details["order_H_mod_V"] = h_mod_v;
    rec.details["order_Q_mod_W"] = q_mod_w;
    rec.details["U_normal"] = normal;
    rec.details["H_cap_U_is_V"] = kernel;
    rec.details["HU_is_preimage_of_W"] = image;
    rec.verdict = normal && kernel && image && orders ? Verdict::pass : Verdict::fail;
    return rec;
}

}  // namespace grouplab::pgroups
