#include "grouplab/nilpotent.hpp"

#include <algorithm>
#include <deque>
#include <string>

#include "grouplab/error.hpp"

namespace grouplab::nilpotent {

using magnus::LyndonWord;
using magnus::TruncSeries;

namespace {

words::Word define(const LyndonWord& w) {
    if (w.size() == 1) return words::Word::letter(w[0]);
    auto [u, v] = magnus::standard_factorization(w);
    return words::commutator(define(u), define(v));
}

}  // namespace

FreeNilpotent::FreeNilpotent(std::size_t rank, int nilpotency_class, const NqConfig& config)
    : rank_(rank), class_(nilpotency_class) {
    if (rank < 1) throw InputError("free nilpotent group needs at least one generator");
    if (nilpotency_class < 1) throw InputError("nilpotency class must be positive");
    if (nilpotency_class > config.class_cap)
        throw CapExceeded("class " + std::to_string(nilpotency_class) + " exceeds the class cap " +
                          std::to_string(config.class_cap));
    std::size_t total = 0;
    for (int k = 1; k <= nilpotency_class; ++k)
        total += static_cast<std::size_t>(magnus::witt_number(static_cast<Int>(rank), k));
    if (total > config.generator_cap)
        throw CapExceeded(std::to_string(total) + " pc-generators exceed the generator cap " +
                          std::to_string(config.generator_cap));

    magnus::LyndonBrackets brackets(rank);
    std::map<LyndonWord, std::size_t> index;
    for (int k = 1; k <= nilpotency_class; ++k)
        for (const auto& w : brackets.basis(k)) {
            index[w] = basis_.size();
            basis_.push_back(w);
        }
    const std::size_t n = basis_.size();
    std::vector<TruncSeries> series, inverses;
    for (const auto& w : basis_) {
        definitions_.push_back(define(w));
        series.push_back(magnus::magnus_expand(definitions_.back(), rank, nilpotency_class));
        inverses.push_back(series.back().inverse());
    }

    // Peels generator powers off the left of r, layer by layer.
    auto decompose = [&](TruncSeries r) {
        PcWord word;
        for (int k = 1; k <= nilpotency_class; ++k) {
            std::vector<Int> coords = brackets.extract(k, r.homogeneous(k));
            const auto& layer = brackets.basis(k);
            for (std::size_t t = 0; t < layer.size(); ++t) {
                if (coords[t] == 0) continue;
                std::size_t g = index.at(layer[t]);
                word.emplace_back(g, coords[t]);
                r = inverses[g].pow(coords[t]) * r;
            }
        }
        if (r != TruncSeries::one(rank, nilpotency_class))
            throw Error("internal error: Magnus decomposition left a remainder");
        return word;
    };

    PcRelations rel;
    rel.nilpotency_class = nilpotency_class;
    for (std::size_t i = 0; i < n; ++i)
        rel.generators.push_back({"g" + std::to_string(i + 1), static_cast<int>(basis_[i].size()), 0});
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < j; ++i) {
            if (basis_[i].size() + basis_[j].size() > static_cast<std::size_t>(nilpotency_class)) continue;
            TruncSeries c = inverses[j] * inverses[i] * series[j] * series[i];
            PcWord w = decompose(c);
            if (!w.empty()) rel.commutators[{j, i}] = std::move(w);
        }
    pc_ = PcPresentation::create_unchecked(std::move(rel));
}

ExponentVector FreeNilpotent::image(const words::Word& w) const {
    PcWord word;
    for (const auto& s : w.syllables()) {
        if (s.gen >= rank_) throw InputError("word uses a generator outside the free group");
        word.emplace_back(s.gen, s.exp);
    }
    return pc_.collect(word);
}

PcPresentation free_nilpotent(std::size_t d, int c, const NqConfig& config) {
    return FreeNilpotent(d, c, config).pc();
}

InducedSequence::InducedSequence(const PcPresentation* group) : group_(group) {
    for (const auto& g : group->generators())
        if (g.relative_order != 0) throw InputError("induced sequences need infinite relative orders");
}

void InducedSequence::sift(ExponentVector x, std::vector<ExponentVector>& changed) {
    std::vector<ExponentVector> pending{std::move(x)};
    while (!pending.empty()) {
        ExponentVector y = std::move(pending.back());
        pending.pop_back();
        while (auto d = group_->depth(y)) {
            auto it = rows_.find(*d);
            if (it == rows_.end()) {
                if (y[*d] < 0) y = group_->inverse(y);
                y = reduce_below(y, *d);
                rows_.emplace(*d, y);
                changed.push_back(y);
                break;
            }
            const Int b = it->second[*d];
            const Int a = y[*d];
            if (a % b == 0) {
                y = group_->multiply(y, group_->power(it->second, -(a / b)));
                continue;
            }
            Int s, t;
            Int g = ext_gcd(b, a, s, t);
            ExponentVector combined = group_->multiply(group_->power(it->second, s), group_->power(y, t));
            combined = reduce_below(combined, *d);
            ExponentVector old = it->second;
            it->second = combined;
            changed.push_back(combined);
            pending.push_back(group_->multiply(old, group_->power(combined, -(b / g))));
            y = group_->multiply(y, group_->power(combined, -(a / g)));
        }
    }
}

void InducedSequence::close(const std::vector<ExponentVector>& generators, const std::vector<ExponentVector>& normal_in) {
    std::vector<ExponentVector> conjugators;
    for (const auto& g : normal_in) {
        conjugators.push_back(g);
        conjugators.push_back(group_->inverse(g));
    }
    std::deque<ExponentVector> queue(generators.begin(), generators.end());
    while (!queue.empty()) {
        ExponentVector x = std::move(queue.front());
        queue.pop_front();
        std::vector<ExponentVector> changed;
        sift(std::move(x), changed);
        for (const auto& r : changed) {
            for (const auto& g : conjugators) queue.push_back(group_->commutator(r, g));
            for (const auto& [d, s] : rows_) {
                queue.push_back(group_->commutator(r, s));
                queue.push_back(group_->commutator(r, group_->inverse(s)));
            }
        }
    }
}

ExponentVector InducedSequence::reduce_below(const ExponentVector& x, std::size_t depth) const {
    ExponentVector y = x;
    for (auto it = rows_.upper_bound(depth); it != rows_.end(); ++it) {
        const auto& [d, row] = *it;
        Int q = floor_div(y[d], row[d]);
        if (q != 0) y = group_->multiply(y, group_->power(row, -q));
    }
    return y;
}

ExponentVector InducedSequence::canonical(const ExponentVector& x) const {
    ExponentVector y = x;
    for (const auto& [d, row] : rows_) {
        Int q = floor_div(y[d], row[d]);
        if (q != 0) y = group_->multiply(y, group_->power(row, -q));
    }
    return y;
}

bool InducedSequence::contains(const ExponentVector& x) const { return group_->is_identity(canonical(x)); }

ExponentVector NilpotentQuotient::project(const ExponentVector& cover_element) const {
    ExponentVector c = kernel->canonical(cover_element);
    ExponentVector out;
    out.reserve(survivors.size());
    for (auto s : survivors) out.push_back(c[s]);
    return out;
}

ExponentVector NilpotentQuotient::image(const words::Word& w) const {
    if (!cover) {
        if (!w.is_identity()) throw InputError("word uses a generator outside the presentation");
        return {};
    }
    return project(cover->image(w));
}

NilpotentQuotient nq(const words::Presentation& p, int c, const NqConfig& config) {
    if (c < 1) throw InputError("nilpotency class must be positive");
    if (c > config.class_cap)
        throw CapExceeded("class " + std::to_string(c) + " exceeds the class cap " + std::to_string(config.class_cap));
    NilpotentQuotient q;
    q.nilpotency_class = c;
    if (p.rank() == 0) {
        q.quotient = PcPresentation::create_unchecked(PcRelations{{}, {}, {}, c});
        q.layer_invariants.assign(static_cast<std::size_t>(c), AbelianInvariants{});
        return q;
    }
    auto cover = std::make_shared<FreeNilpotent>(p.rank(), c, config);
    const PcPresentation& n = cover->pc();
    auto kernel = std::make_shared<InducedSequence>(&n);
    std::vector<ExponentVector> relators, letters;
    for (const auto& r : p.relators) relators.push_back(cover->image(r));
    for (std::size_t i = 0; i < p.rank(); ++i) letters.push_back(n.unit(i));
    kernel->close(relators, letters);

    const auto& rows = kernel->rows();
    for (std::size_t d = 0; d < n.size(); ++d) {
        auto it = rows.find(d);
        if (it == rows.end() || it->second[d] > 1) q.survivors.push_back(d);
    }
    q.cover = cover;
    q.kernel = kernel;

    std::vector<std::size_t> position(n.size(), n.size());
    for (std::size_t k = 0; k < q.survivors.size(); ++k) position[q.survivors[k]] = k;
    auto to_quotient_word = [&](const ExponentVector& x) {
        ExponentVector y = q.project(x);
        return PcPresentation::to_word(y);
    };

    PcRelations rel;
    rel.nilpotency_class = c;
    for (std::size_t k = 0; k < q.survivors.size(); ++k) {
        std::size_t d = q.survivors[k];
        auto it = rows.find(d);
        Int order = it == rows.end() ? 0 : it->second[d];
        rel.generators.push_back({"g" + std::to_string(k + 1), n.weight(d), order});
        q.definitions.push_back(cover->basis()[d]);
        if (order > 0) rel.powers[k] = to_quotient_word(n.unit(d, order));
    }
    for (std::size_t kj = 0; kj < q.survivors.size(); ++kj)
        for (std::size_t ki = 0; ki < kj; ++ki) {
            PcWord w = to_quotient_word(n.commutator(n.unit(q.survivors[kj]), n.unit(q.survivors[ki])));
            if (!w.empty()) rel.commutators[{kj, ki}] = std::move(w);
        }
    q.quotient = PcPresentation::create_unchecked(std::move(rel));

    for (std::size_t i = 0; i < p.rank(); ++i) q.gen_map.push_back(q.project(n.unit(i)));

    std::size_t start = 0;
    for (int k = 1; k <= c; ++k) {
        std::size_t width = static_cast<std::size_t>(magnus::witt_number(static_cast<Int>(p.rank()), k));
        IntMatrix layer_rows;
        for (const auto& [d, row] : rows)
            if (d >= start && d < start + width)
                layer_rows.emplace_back(row.begin() + static_cast<std::ptrdiff_t>(start),
                                        row.begin() + static_cast<std::ptrdiff_t>(start + width));
        q.layer_invariants.push_back(abelian_invariants(layer_rows, width));
        start += width;
    }
    return q;
}

TorsionInfo torsion_subgroup(const PcPresentation& p) {
    const std::size_t n = p.size();
    std::vector<ExponentVector> torsion{p.identity()};
    for (std::size_t d = 0; d < n; ++d) {
        const Int m = p.relative_order(d);
        std::vector<ExponentVector> next;
        if (m > 0) {
            for (const auto& t : torsion)
                for (Int e = 0; e < m; ++e) {
                    ExponentVector x = t;
                    x[d] = e;
                    next.push_back(std::move(x));
                }
        } else {
            for (const auto& t : torsion) {
                // t has finite order o modulo <g_d, g_{d+1}, ...>; t^o = g_d^k there.
                ExponentVector y = t;
                Int o = 1;
                auto top_trivial = [&](const ExponentVector& v) {
                    return std::all_of(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(d), [](Int e) { return e == 0; });
                };
                while (!top_trivial(y)) {
                    y = p.multiply(y, t);
                    ++o;
                }
                Int k = y[d];
                if (k % o != 0) continue;
                ExponentVector x = t;
                x[d] = -(k / o);
                next.push_back(std::move(x));
            }
        }
        torsion = std::move(next);
    }
    return {torsion};
}

std::vector<ProbeEntry> enough_tf_probe(const words::Presentation& p, int c_max, const NqConfig& config) {
    NilpotentQuotient full = nq(p, c_max, config);
    std::vector<ProbeEntry> out;
    for (int c = 1; c <= c_max; ++c) {
        std::size_t keep = 0;
        while (keep < full.quotient.size() && full.quotient.weight(keep) <= c) ++keep;
        TorsionInfo t = torsion_subgroup(full.quotient.truncate(keep));
        ProbeEntry e;
        e.nilpotency_class = c;
        e.torsion_free = t.is_torsion_free();
        e.torsion_order = t.order();
        e.layer_invariants.assign(full.layer_invariants.begin(), full.layer_invariants.begin() + c);
        out.push_back(std::move(e));
    }
    return out;
}

}  // namespace grouplab::nilpotent
