#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "grouplab/arith.hpp"
#include "grouplab/record.hpp"
#include "grouplab/snf.hpp"

namespace grouplab::ssq {

/// Position (s, t) of a cohomological spectral sequence; d_r has bidegree (r, 1 - r).
using Point = std::pair<Int, Int>;

inline constexpr int kMaxPage = 64;

/// The rectangle 0 <= s <= s_max, -t_depth <= t <= 0.
struct Window {
    Int s_max = 0;
    Int t_depth = 0;

    bool contains(const Point& p) const { return p.first >= 0 && p.first <= s_max && p.second <= 0 && p.second >= -t_depth; }
};

struct ZoneOptions {
    /// Intersect with s >= 0, t <= 0 after each step. Turning it off exists
    /// only as a negative control for the exclusion check.
    bool quadrant_cut = true;
};

struct ZoneSet {
    int r = 2;
    Window window;
    std::set<Point> points;

    nlohmann::ordered_json to_json() const;
};

/// Furthest a point can move in s or t over the steps 2 .. r-1.
Int zone_margin(int r);

/// Z_2 = {(x, 0) : x >= 1} and Z_{k+1} = Z_k u d_k(Z_k) u d_k^-1(Z_k), cut to
/// the quadrant. Computed on the window enlarged by zone_margin(r) on every
/// side, which no path of r - 2 steps can leave and re-enter, then restricted.
ZoneSet zone(int r, const Window& window, const ZoneOptions& options = {});

/// No point of Z_r with s + t <= 0 in the window, for 2 <= r <= r_max.
VerificationRecord zone_exclusion_check(int r_max, const Window& window, const ZoneOptions& options = {});

/// V(2, s, t) = {(s, t)} and
/// V(r, s, t) = V(r-1, s-r+1, t+r-2) u V(r-1, s, t) u V(r-1, s+r-1, t-r+2).
std::set<Point> dependency_set(int r, Int s, Int t);
/// The same recursion with positions outside the quadrant dropped, since the
/// groups there vanish.
std::set<Point> quadrant_dependency_set(int r, Int s, Int t);

/// For every (s, t) in the window with s + t <= 0 and r <= r_max, the
/// quadrant dependency set contains no (x, 0) with x >= 1.
VerificationRecord dependency_exclusion_check(int r_max, const Window& window);

nlohmann::ordered_json points_to_json(const std::set<Point>& points);

/// Z/m_1 + ... + Z/m_k with every m_i >= 1.
struct FiniteAbelian {
    std::vector<Int> moduli;
};

/// d_r from `source` to source + (r, 1 - r). Column c is the image of the c-th
/// generator of E_2 at the source, in the generators of E_2 at the target;
/// it is only read on cycles, modulo boundaries, of the earlier pages.
struct Differential {
    int page = 2;
    Point source;
    nilpotent::IntMatrix matrix;
};

/// A fourth-quadrant spectral sequence of finite abelian groups given by E_2
/// and explicit differentials; d_r vanishes wherever none is listed.
class FiniteSpectralSequence {
public:
    /// Validates shapes, well-definedness and d o d = 0; throws InputError.
    FiniteSpectralSequence(std::string name, std::map<Point, FiniteAbelian> e2, std::vector<Differential> differentials);
    static FiniteSpectralSequence from_json(const nlohmann::json& j);

    const std::string& name() const noexcept { return name_; }
    /// Last page with a differential; E_infinity is the page after it.
    int last_page() const noexcept { return last_page_; }
    std::vector<Point> positions() const;

    /// |E_r| at p, for 2 <= r <= last_page() + 1.
    Int order(const Point& p, int r) const;
    /// Torsion invariants of E_r at p.
    std::vector<Int> invariants(const Point& p, int r) const;
    Int order_infinity(const Point& p) const { return order(p, last_page_ + 1); }

private:
    struct Layer {
        nilpotent::BigMatrix cycles;
        nilpotent::BigMatrix boundaries;
    };

    std::string name_;
    std::map<Point, FiniteAbelian> e2_;
    std::vector<Differential> differentials_;
    int last_page_ = 1;
    // pages_[r - 2][p] = (Z_r, B_r) at p as lattices in Z^n.
    std::vector<std::map<Point, Layer>> pages_;
};

/// If every E_2 on the diagonal s + t = n is a p-group, then so is every
/// E_infinity there, hence so is the abutment in degree n, which is an
/// iterated extension of those quotients.
VerificationRecord finspecseq_property_check(const FiniteSpectralSequence& e, Int p);

}  // namespace grouplab::ssq
