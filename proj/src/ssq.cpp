#include "grouplab/ssq.hpp"

#include <algorithm>

#include "grouplab/error.hpp"

namespace grouplab::ssq {

using nilpotent::BigInt;
using nilpotent::BigMatrix;

namespace {

void check_page(int r, int max = kMaxPage) {
    if (r < 2 || r > max) throw InputError("page must lie in [2, " + std::to_string(max) + "]");
}

void check_window(const Window& w) {
    if (w.s_max < 1 || w.t_depth < 0) throw InputError("window needs s_max >= 1 and t_depth >= 0");
    if (w.s_max > 100000 || w.t_depth > 100000) throw InputError("window is limited to 100000 in each direction");
}

}  // namespace

Int zone_margin(int r) {
    Int m = 0;
    for (int k = 2; k < r; ++k) m += k;
    return m;
}

nlohmann::ordered_json points_to_json(const std::set<Point>& points) {
    auto j = nlohmann::ordered_json::array();
    for (const auto& [s, t] : points) j.push_back({s, t});
    return j;
}

nlohmann::ordered_json ZoneSet::to_json() const {
    nlohmann::ordered_json j;
    j["r"] = r;
    j["window"] = {{"s_max", window.s_max}, {"t_depth", window.t_depth}};
    j["points"] = points_to_json(points);
    return j;
}

ZoneSet zone(int r, const Window& window, const ZoneOptions& options) {
    check_page(r);
    check_window(window);
    const Int m = zone_margin(r);
    const Int x_lo = options.quadrant_cut ? 0 : -m, x_hi = window.s_max + m;
    const Int y_lo = -window.t_depth - m, y_hi = options.quadrant_cut ? 0 : m;
    auto inside = [&](const Point& p) { return p.first >= x_lo && p.first <= x_hi && p.second >= y_lo && p.second <= y_hi; };

    std::set<Point> z;
    for (Int x = 1; x <= x_hi; ++x) z.insert({x, 0});
    for (int k = 2; k < r; ++k) {
        std::set<Point> next = z;
        for (const auto& [x, y] : z) {
            const Point fwd{x + k, y - k + 1}, back{x - k, y + k - 1};
            if (inside(fwd)) next.insert(fwd);
            if (inside(back)) next.insert(back);
        }
        z = std::move(next);
    }
    ZoneSet out;
    out.r = r;
    out.window = window;
    for (const auto& p : z)
        if (window.contains(p)) out.points.insert(p);
    return out;
}

VerificationRecord zone_exclusion_check(int r_max, const Window& window, const ZoneOptions& options) {
    check_page(r_max);
    VerificationRecord rec;
    rec.lemma = "zone_exclusion";
    rec.instance = "window " + std::to_string(window.s_max) + "x" + std::to_string(window.t_depth);
    if (!options.quadrant_cut) rec.instance += ", no quadrant cut";
    auto sizes = nlohmann::ordered_json::array();
    auto violations = nlohmann::ordered_json::array();
    std::size_t count = 0;
    for (int r = 2; r <= r_max; ++r) {
        const auto z = zone(r, window, options);
        sizes.push_back(z.points.size());
        for (const auto& [s, t] : z.points)
            if (s + t <= 0) {
                if (count++ < 10) violations.push_back({r, s, t});
            }
    }
    rec.details["r_max"] = r_max;
    rec.details["zone_sizes"] = sizes;
    rec.details["violations"] = count;
    rec.details["first_violations"] = violations;
    rec.verdict = count == 0 ? Verdict::pass : Verdict::fail;
    return rec;
}

namespace {

std::set<Point> dependencies(int r, Int s, Int t, bool quadrant) {
    check_page(r, 40);
    auto keep = [&](const Point& p) { return !quadrant || (p.first >= 0 && p.second <= 0); };
    std::set<Point> cur;
    if (keep({s, t})) cur.insert({s, t});
    for (Int k = r; k >= 3; --k) {
        std::set<Point> next;
        for (const auto& [x, y] : cur)
            for (const Point& p : {Point{x - k + 1, y + k - 2}, Point{x, y}, Point{x + k - 1, y - k + 2}})
                if (keep(p)) next.insert(p);
        cur = std::move(next);
    }
    return cur;
}

}  // namespace

std::set<Point> dependency_set(int r, Int s, Int t) { return dependencies(r, s, t, false); }

std::set<Point> quadrant_dependency_set(int r, Int s, Int t) { return dependencies(r, s, t, true); }

VerificationRecord dependency_exclusion_check(int r_max, const Window& window) {
    check_page(r_max, 40);
    check_window(window);
    VerificationRecord rec;
    rec.lemma = "dependency_exclusion";
    rec.instance = "window " + std::to_string(window.s_max) + "x" + std::to_string(window.t_depth);
    std::size_t checked = 0, count = 0;
    auto violations = nlohmann::ordered_json::array();
    for (Int s = 0; s <= window.s_max; ++s)
        for (Int t = -window.t_depth; t <= 0 && s + t <= 0; ++t)
            for (int r = 2; r <= r_max; ++r) {
                ++checked;
                for (const auto& [x, y] : quadrant_dependency_set(r, s, t))
                    if (y == 0 && x >= 1 && count++ < 10) violations.push_back({r, s, t, x});
            }
    rec.details["r_max"] = r_max;
    rec.details["sets_checked"] = checked;
    rec.details["violations"] = count;
    rec.details["first_violations"] = violations;
    rec.verdict = count == 0 ? Verdict::pass : Verdict::fail;
    return rec;
}

// Lattices between diag(m) Z^n and Z^n, held as Hermite rows.
namespace {

BigMatrix lattice(const BigMatrix& rows, std::size_t n) { return nilpotent::hermite_rows(rows, n); }

BigMatrix sum(const BigMatrix& a, const BigMatrix& b, std::size_t n) {
    BigMatrix rows = a;
    rows.insert(rows.end(), b.begin(), b.end());
    return lattice(rows, n);
}

// Coordinates of v in the row basis, if v lies in the lattice.
std::optional<std::vector<BigInt>> coordinates(const BigMatrix& basis, std::size_t n, const std::vector<BigInt>& v) {
    BigMatrix a(n, std::vector<BigInt>(basis.size()));
    for (std::size_t c = 0; c < basis.size(); ++c)
        for (std::size_t x = 0; x < n; ++x) a[x][c] = basis[c][x];
    auto sol = nilpotent::solve_integer(a, basis.size(), v);
    if (!sol) return std::nullopt;
    return sol->particular;
}

bool contains_all(const BigMatrix& outer, const BigMatrix& inner, std::size_t n) {
    for (const auto& v : inner)
        if (!coordinates(outer, n, v)) return false;
    return true;
}

std::vector<BigInt> apply(const nilpotent::IntMatrix& d, const std::vector<BigInt>& x) {
    std::vector<BigInt> y(d.size(), 0);
    for (std::size_t r = 0; r < d.size(); ++r)
        for (std::size_t c = 0; c < x.size(); ++c) y[r] += d[r][c] * x[c];
    return y;
}

BigMatrix image(const nilpotent::IntMatrix& d, const BigMatrix& rows, std::size_t target_n) {
    BigMatrix out;
    for (const auto& v : rows) out.push_back(apply(d, v));
    return lattice(out, target_n);
}

// {x in z : d x in b}.
BigMatrix preimage(const nilpotent::IntMatrix& d, const BigMatrix& z, const BigMatrix& b, std::size_t n, std::size_t target_n) {
    const std::size_t cols = z.size() + b.size();
    BigMatrix a(target_n, std::vector<BigInt>(cols, 0));
    for (std::size_t c = 0; c < z.size(); ++c) {
        auto img = apply(d, z[c]);
        for (std::size_t x = 0; x < target_n; ++x) a[x][c] = img[x];
    }
    for (std::size_t c = 0; c < b.size(); ++c)
        for (std::size_t x = 0; x < target_n; ++x) a[x][z.size() + c] = -b[c][x];
    auto sol = nilpotent::solve_integer(a, cols, std::vector<BigInt>(target_n, 0));
    BigMatrix rows;
    for (const auto& k : sol->kernel) {
        std::vector<BigInt> v(n, 0);
        for (std::size_t c = 0; c < z.size(); ++c)
            for (std::size_t x = 0; x < n; ++x) v[x] += k[c] * z[c][x];
        rows.push_back(v);
    }
    return lattice(rows, n);
}

BigInt determinant(const BigMatrix& hnf) {
    BigInt d = 1;
    for (std::size_t i = 0; i < hnf.size(); ++i) d *= hnf[i][i];
    return d;
}

Point target_of(const Differential& d) { return {d.source.first + d.page, d.source.second + 1 - d.page}; }

}  // namespace

FiniteSpectralSequence::FiniteSpectralSequence(std::string name, std::map<Point, FiniteAbelian> e2, std::vector<Differential> differentials)
    : name_(std::move(name)), e2_(std::move(e2)), differentials_(std::move(differentials)) {
    for (const auto& [p, g] : e2_) {
        if (p.first < 0 || p.second > 0) throw InputError("E_2 positions must satisfy s >= 0 and t <= 0");
        for (Int m : g.moduli)
            if (m < 1) throw InputError("moduli must be positive");
    }
    auto dim = [&](const Point& p) { return e2_.count(p) ? e2_.at(p).moduli.size() : std::size_t{0}; };
    std::set<std::pair<int, Point>> seen;
    for (const auto& d : differentials_) {
        check_page(d.page);
        if (!seen.insert({d.page, d.source}).second) throw InputError("two differentials share a page and source");
        const std::size_t n = dim(d.source), k = dim(target_of(d));
        if (d.matrix.size() != k) throw InputError("differential needs one row per target generator");
        for (const auto& row : d.matrix)
            if (row.size() != n) throw InputError("differential needs one column per source generator");
        last_page_ = std::max(last_page_, d.page);
    }
    last_page_ = std::max(last_page_, 2);

    std::map<Point, Layer> cur;
    for (const auto& [p, g] : e2_) {
        const std::size_t n = g.moduli.size();
        Layer l;
        l.cycles = nilpotent::big_identity(n);
        for (std::size_t i = 0; i < n; ++i) {
            std::vector<BigInt> row(n, 0);
            row[i] = g.moduli[i];
            l.boundaries.push_back(row);
        }
        l.boundaries = lattice(l.boundaries, n);
        cur[p] = l;
    }
    pages_.push_back(cur);
    for (int r = 2; r <= last_page_; ++r) {
        std::map<Point, Layer> next = cur;
        std::map<Point, const Differential*> out;
        for (const auto& d : differentials_)
            if (d.page == r) out[d.source] = &d;
        for (const auto& [p, d] : out) {
            const Point q = target_of(*d);
            const std::size_t n = dim(p), k = dim(q);
            if (n == 0 || k == 0) continue;
            const Layer& src = cur.at(p);
            const Layer& dst = cur.at(q);
            // Well defined on E_r: cycles to cycles, boundaries to boundaries.
            if (!contains_all(dst.cycles, image(d->matrix, src.cycles, k), k) ||
                !contains_all(dst.boundaries, image(d->matrix, src.boundaries, k), k))
                throw InputError("d_" + std::to_string(r) + " at (" + std::to_string(p.first) + "," + std::to_string(p.second) +
                                 ") is not well defined on E_" + std::to_string(r));
            if (out.count(q)) {
                const Point q2 = target_of(*out.at(q));
                if (dim(q2) > 0) {
                    const auto twice = image(out.at(q)->matrix, image(d->matrix, src.cycles, k), dim(q2));
                    if (!contains_all(cur.at(q2).boundaries, twice, dim(q2))) throw InputError("d o d is not zero");
                }
            }
            next[p].cycles = preimage(d->matrix, src.cycles, dst.boundaries, n, k);
            next[q].boundaries = sum(next[q].boundaries, image(d->matrix, src.cycles, k), k);
        }
        pages_.push_back(next);
        cur = std::move(next);
    }
}

std::vector<Point> FiniteSpectralSequence::positions() const {
    std::vector<Point> out;
    for (const auto& [p, g] : e2_) out.push_back(p);
    return out;
}

Int FiniteSpectralSequence::order(const Point& p, int r) const {
    if (r < 2 || r > last_page_ + 1) throw InputError("page out of range");
    if (!e2_.count(p)) return 1;
    const Layer& l = pages_.at(static_cast<std::size_t>(r - 2)).at(p);
    return nilpotent::to_int(determinant(l.boundaries) / determinant(l.cycles));
}

std::vector<Int> FiniteSpectralSequence::invariants(const Point& p, int r) const {
    if (r < 2 || r > last_page_ + 1) throw InputError("page out of range");
    if (!e2_.count(p)) return {};
    const Layer& l = pages_.at(static_cast<std::size_t>(r - 2)).at(p);
    const std::size_t n = l.cycles.size();
    BigMatrix rel;
    for (const auto& b : l.boundaries) rel.push_back(*coordinates(l.cycles, n, b));
    auto s = nilpotent::snf(rel, n);
    std::vector<Int> out;
    for (const auto& x : s.diagonal)
        if (x > 1) out.push_back(nilpotent::to_int(x));
    return out;
}

FiniteSpectralSequence FiniteSpectralSequence::from_json(const nlohmann::json& j) {
    auto point = [](const nlohmann::json& v) {
        if (!v.is_array() || v.size() != 2 || !v[0].is_number_integer() || !v[1].is_number_integer())
            throw InputError("positions are [s, t] integer pairs");
        return Point{v[0].get<Int>(), v[1].get<Int>()};
    };
    try {
        std::map<Point, FiniteAbelian> e2;
        for (const auto& g : j.at("e2")) {
            const Point p = point(g.at("at"));
            if (e2.count(p)) throw InputError("position given twice in e2");
            e2[p] = {g.at("moduli").get<std::vector<Int>>()};
        }
        std::vector<Differential> ds;
        if (j.contains("differentials"))
            for (const auto& d : j.at("differentials"))
                ds.push_back({d.at("page").get<int>(), point(d.at("from")), d.at("matrix").get<nilpotent::IntMatrix>()});
        return FiniteSpectralSequence(j.value("name", std::string{}), std::move(e2), std::move(ds));
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("malformed spectral sequence JSON: ") + e.what());
    }
}

VerificationRecord finspecseq_property_check(const FiniteSpectralSequence& e, Int p) {
    if (!is_prime(p)) throw InputError("p must be prime");
    VerificationRecord rec;
    rec.lemma = "finite_spectral_sequence";
    rec.instance = e.name();
    auto is_p_power = [p](Int x) {
        while (x % p == 0) x /= p;
        return x == 1;
    };
    std::map<Int, std::vector<Point>> diagonals;
    for (const auto& pt : e.positions()) diagonals[pt.first + pt.second].push_back(pt);
    auto report = nlohmann::ordered_json::array();
    bool any = false, ok = true;
    for (const auto& [n, pts] : diagonals) {
        bool p_diagonal = std::all_of(pts.begin(), pts.end(), [&](const Point& q) { return is_p_power(e.order(q, 2)); });
        if (!p_diagonal) continue;
        any = true;
        Int abutment = 1;
        bool fine = true;
        for (const auto& q : pts) {
            const Int o = e.order_infinity(q);
            fine = fine && is_p_power(o);
            abutment = checked_mul(abutment, o);
        }
        ok = ok && fine && is_p_power(abutment);
        report.push_back({{"degree", n}, {"abutment_order", abutment}, {"p_group", fine && is_p_power(abutment)}});
    }
    rec.hypotheses.push_back({"some diagonal has only p-groups on E_2", any});
    rec.details["p"] = p;
    rec.details["diagonals"] = report;
    rec.verdict = !any ? Verdict::inapplicable : ok ? Verdict::pass : Verdict::fail;
    return rec;
}

}  // namespace grouplab::ssq
