#pragma once

// Multicurves on the annulus, pair of pants and punctured torus in normal
// coordinates, and their closures on the torus.
//
// The annulus is S^1 x [0,1] with a seam at x = 0. A side with N marked
// points carries point i at x = (2i+1)/(2N). Every arc stores the signed
// number of seam crossings ("winding") from its first to its second endpoint,
// so its horizontal displacement is x_b - x_a + winding.

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tight/lattice.hpp"

namespace tight {

enum class Side : int { bottom = 0, top = 1, hole = 2 };
enum class Sign : int { positive = 0, negative = 1 };

inline Sign opposite(Sign s) { return s == Sign::positive ? Sign::negative : Sign::positive; }
inline Int sign_value(Sign s) { return s == Sign::positive ? 1 : -1; }

struct Endpoint {
    Side side = Side::bottom;
    Int index = 0;
    friend bool operator==(const Endpoint&, const Endpoint&) = default;
    friend auto operator<=>(const Endpoint&, const Endpoint&) = default;
};

struct Arc {
    Endpoint a;
    Endpoint b;
    Int winding = 0;
    friend bool operator==(const Arc&, const Arc&) = default;
    friend auto operator<=>(const Arc&, const Arc&) = default;
};

/// Same arc with endpoints in increasing order.
inline Arc canonical(const Arc& arc) {
    if (arc.b < arc.a) return Arc{arc.b, arc.a, -arc.winding};
    return arc;
}

struct AnnulusMulticurve {
    Int bottom = 0;
    Int top = 0;
    std::vector<Arc> arcs;
    Int cores = 0;        // closed curves parallel to the boundary
    Int contractible = 0;  // closed curves bounding discs
    std::optional<Sign> sign;  // sign of the region along bottom interval 0 (or of the bottom-most region)
    friend bool operator==(const AnnulusMulticurve&, const AnnulusMulticurve&) = default;
    friend auto operator<=>(const AnnulusMulticurve&, const AnnulusMulticurve&) = default;
};

struct PantsMulticurve {
    Int bottom = 0;
    Int top = 0;
    Int hole = 0;
    std::vector<Arc> arcs;
    Int bottom_parallel = 0;
    Int top_parallel = 0;
    Int hole_parallel = 0;
    Int contractible = 0;
    std::optional<Sign> sign;
    friend bool operator==(const PantsMulticurve&, const PantsMulticurve&) = default;
};

/// Arc on the once-punctured torus between boundary points a and b. Its class
/// is the homology class of the closed curve obtained by joining its ends
/// through the puncture; (0,0) marks a boundary-parallel arc.
struct PuncturedArc {
    Int a = 0;
    Int b = 1;
    Int hx = 0;
    Int hy = 0;
    friend bool operator==(const PuncturedArc&, const PuncturedArc&) = default;
};

struct PuncturedTorusMulticurve {
    Int boundary = 0;
    std::vector<PuncturedArc> arcs;
    std::vector<std::pair<Slope, Int>> closed;  // essential classes with multiplicity
    Int contractible = 0;
    std::optional<Sign> sign;
    friend bool operator==(const PuncturedTorusMulticurve&, const PuncturedTorusMulticurve&) = default;
};

struct Region {
    Int chi = 0;
    std::optional<Sign> sign;
    friend bool operator==(const Region&, const Region&) = default;
};

/// A closed multicurve on T^2: parallel essential curves of one slope plus
/// contractible curves, with its complementary regions.
struct TorusMulticurve {
    std::optional<Slope> slope;
    Int essential = 0;
    Int contractible = 0;
    std::vector<Region> regions;
    bool signs_consistent = true;

    /// Regions for the standard picture: `essential` parallel curves cut T^2
    /// into annuli with alternating signs starting at `outer`; contractible
    /// curves bound disjoint discs inside the first annulus (or inside the
    /// complement of the discs when there are no essential curves).
    static TorusMulticurve standard(std::optional<Slope> slope, Int essential, Int contractible,
                                    std::optional<Sign> outer) {
        if (essential > 0 && !slope) throw DomainError("essential curves need a slope");
        if (essential % 2 != 0) {
            if (outer) throw DomainError("odd number of essential curves has no consistent signing");
            outer.reset();
        }
        TorusMulticurve m{essential ? slope : std::nullopt, essential, contractible, {}, !(essential % 2)};
        Int annuli = std::max<Int>(essential, 1);
        for (Int i = 0; i < annuli; ++i) {
            std::optional<Sign> s = outer;
            if (s && i % 2 == 1) s = opposite(*s);
            m.regions.push_back({i == 0 ? -contractible : 0, s});
        }
        for (Int i = 0; i < contractible; ++i)
            m.regions.push_back({1, outer ? std::optional<Sign>(opposite(*outer)) : std::nullopt});
        return m;
    }

    std::optional<TorusDividingSet> dividing_set() const {
        if (!slope || essential == 0 || essential % 2 != 0) return std::nullopt;
        return TorusDividingSet{*slope, essential / 2, contractible};
    }
};

// ---------------------------------------------------------------------------
// Annulus geometry

inline Int side_count(const AnnulusMulticurve& m, Side s) {
    if (s == Side::bottom) return m.bottom;
    if (s == Side::top) return m.top;
    throw DomainError("annulus has no hole");
}

inline Rational position(Int count, Int index) { return Rational(2 * index + 1, 2 * count); }

inline Rational position(const AnnulusMulticurve& m, const Endpoint& e) {
    return position(side_count(m, e.side), e.index);
}

/// Horizontal displacement from a to b.
inline Rational displacement(const AnnulusMulticurve& m, const Arc& arc) {
    return position(m, arc.b) - position(m, arc.a) + Rational(arc.winding);
}

inline bool is_through(const Arc& arc) { return arc.a.side != arc.b.side; }

/// Same arc traversed from `from`.
inline Arc oriented_from(const Arc& arc, const Endpoint& from) {
    if (arc.a == from) return arc;
    return Arc{arc.b, arc.a, -arc.winding};
}

namespace detail {

inline Rational circle_offset(const Rational& from, const Rational& to) {
    Rational d = to - from;
    return d - Rational(d.floor());
}

struct CutInterval {
    Rational start;
    Rational length;
};

// Boundary interval cut off by a boundary-parallel arc.
inline CutInterval cut_interval(const AnnulusMulticurve& m, const Arc& arc) {
    Rational d = displacement(m, arc);
    if (d > Rational(0) && d < Rational(1)) return {position(m, arc.a), d};
    if (d < Rational(0) && d > Rational(-1)) return {position(m, arc.b), -d};
    throw DomainError("boundary-parallel arc winds around the annulus");
}

inline bool strictly_inside(const CutInterval& iv, const Rational& x) {
    Rational o = circle_offset(iv.start, x);
    return o > Rational(0) && o < iv.length;
}

inline bool nested(const CutInterval& outer, const CutInterval& inner) {
    Rational o = circle_offset(outer.start, inner.start);
    return o > Rational(0) && o + inner.length < outer.length;
}

// Arc index at each marked point of each side.
struct Incidence {
    std::vector<int> bottom, top;
    int at(const Endpoint& e) const { return e.side == Side::bottom ? bottom.at(e.index) : top.at(e.index); }
};

inline Incidence incidence(const AnnulusMulticurve& m) {
    if (m.bottom < 0 || m.top < 0) throw DomainError("negative marked point count");
    Incidence inc{std::vector<int>(m.bottom, -1), std::vector<int>(m.top, -1)};
    auto mark = [&](const Endpoint& e, int id) {
        if (e.side == Side::hole) throw DomainError("annulus arcs cannot end on a hole");
        auto& v = e.side == Side::bottom ? inc.bottom : inc.top;
        if (e.index < 0 || e.index >= static_cast<Int>(v.size())) throw DomainError("endpoint index out of range");
        if (v[e.index] != -1) throw DomainError("marked point used twice");
        v[e.index] = id;
    };
    for (std::size_t i = 0; i < m.arcs.size(); ++i) {
        if (m.arcs[i].a == m.arcs[i].b) throw DomainError("arc with coincident endpoints");
        mark(m.arcs[i].a, static_cast<int>(i));
        mark(m.arcs[i].b, static_cast<int>(i));
    }
    for (int v : inc.bottom)
        if (v == -1) throw DomainError("unused bottom marked point");
    for (int v : inc.top)
        if (v == -1) throw DomainError("unused top marked point");
    return inc;
}

}  // namespace detail

/// Checks that the arcs are pairwise disjoint and embedded.
inline void validate(const AnnulusMulticurve& m) {
    detail::incidence(m);
    if (m.cores < 0 || m.contractible < 0) throw DomainError("negative closed-curve count");
    std::vector<std::pair<Rational, Rational>> through;  // (bottom x, lifted top x)
    for (const auto& arc : m.arcs) {
        if (!is_through(arc)) continue;
        Arc up = arc.a.side == Side::bottom ? arc : oriented_from(arc, arc.b);
        Rational xb = position(m, up.a);
        through.emplace_back(xb, xb + displacement(m, up));
    }
    if (!through.empty() && m.cores > 0) throw DomainError("core curves cannot coexist with through arcs");
    std::sort(through.begin(), through.end());
    for (std::size_t i = 0; i + 1 < through.size(); ++i)
        if (!(through[i].second < through[i + 1].second)) throw DomainError("through arcs cross");
    if (!through.empty() && !(through.back().second < through.front().second + Rational(1)))
        throw DomainError("through arcs cross");

    for (const auto& arc : m.arcs) {
        if (is_through(arc)) continue;
        auto iv = detail::cut_interval(m, arc);
        Int n = side_count(m, arc.a.side);
        for (Int p = 0; p < n; ++p) {
            Endpoint e{arc.a.side, p};
            if (e == arc.a || e == arc.b || !detail::strictly_inside(iv, position(m, e))) continue;
            const Arc* other = nullptr;
            for (const auto& o : m.arcs)
                if (o.a == e || o.b == e) other = &o;
            if (is_through(*other)) throw DomainError("through arc starts inside a boundary-parallel arc");
            if (!detail::nested(iv, detail::cut_interval(m, *other))) throw DomainError("boundary-parallel arcs cross");
        }
    }
}

/// Sorted, canonically oriented arcs; through-arc windings shifted so the
/// through arc at the smallest bottom index has winding 0 (a Dehn twist along
/// the core does not change the class we care about).
inline AnnulusMulticurve normalize_twist(AnnulusMulticurve m) {
    for (auto& a : m.arcs) a = canonical(a);
    std::sort(m.arcs.begin(), m.arcs.end());
    for (const auto& a : m.arcs)
        if (is_through(a)) {
            Int k = a.winding;
            for (auto& b : m.arcs)
                if (is_through(b)) b.winding -= k;
            break;
        }
    return m;
}

inline AnnulusMulticurve sorted(AnnulusMulticurve m) {
    for (auto& a : m.arcs) a = canonical(a);
    std::sort(m.arcs.begin(), m.arcs.end());
    return m;
}

/// Rigid rotation of the annulus by one marked point (both sides must carry
/// the same number of points). Point 0 moves across the seam.
inline AnnulusMulticurve rotate(const AnnulusMulticurve& m) {
    if (m.bottom != m.top || m.bottom == 0) throw DomainError("rotation needs equal nonzero point counts");
    Int n = m.bottom;
    AnnulusMulticurve out = m;
    for (auto& arc : out.arcs) {
        Rational d = displacement(m, arc);
        arc.a.index = (arc.a.index + n - 1) % n;
        arc.b.index = (arc.b.index + n - 1) % n;
        Rational rest = d - (position(n, arc.b.index) - position(n, arc.a.index));
        if (!rest.is_integer()) throw InconsistencyError("rotation broke integrality");
        arc.winding = rest.num();
    }
    return sorted(out);
}

// ---------------------------------------------------------------------------
// Regions of the annulus

struct AnnulusRegions {
    std::vector<Region> regions;
    std::vector<int> bottom_interval;  // region along bottom interval j
    std::vector<int> top_interval;     // region along top interval j
    int bottom_circle = -1;            // region along the bottom circle when it has no points
    int top_circle = -1;
    int host = -1;                     // region carrying the stored sign
    bool colorable = true;
};

/// Traces the faces of the complement. Bottom intervals are walked in +x and
/// top intervals in -x, so the face is always on the left.
inline AnnulusRegions annulus_regions(const AnnulusMulticurve& m) {
    validate(m);
    auto inc = detail::incidence(m);
    AnnulusRegions out;
    out.bottom_interval.assign(m.bottom, -1);
    out.top_interval.assign(m.top, -1);
    std::vector<std::vector<int>> arc_faces(m.arcs.size());
    bool has_through = std::any_of(m.arcs.begin(), m.arcs.end(), is_through);

    auto next_interval = [&](const Endpoint& e) -> std::pair<Side, Int> {
        if (e.side == Side::bottom) return {Side::bottom, e.index};
        return {Side::top, (e.index + m.top - 1) % m.top};
    };
    int faces = 0;
    for (Side side : {Side::bottom, Side::top}) {
        Int n = side == Side::bottom ? m.bottom : m.top;
        for (Int j0 = 0; j0 < n; ++j0) {
            auto& slot0 = side == Side::bottom ? out.bottom_interval[j0] : out.top_interval[j0];
            if (slot0 != -1) continue;
            int f = faces++;
            Side s = side;
            Int j = j0;
            while (true) {
                auto& slot = s == Side::bottom ? out.bottom_interval[j] : out.top_interval[j];
                if (slot != -1) break;
                slot = f;
                Endpoint p = s == Side::bottom ? Endpoint{Side::bottom, (j + 1) % m.bottom} : Endpoint{Side::top, j};
                int id = inc.at(p);
                arc_faces[id].push_back(f);
                const Arc& arc = m.arcs[id];
                std::tie(s, j) = next_interval(arc.a == p ? arc.b : arc.a);
            }
        }
    }

    std::vector<Int> chi(faces, 1);
    std::vector<std::pair<int, int>> adjacent;
    for (const auto& fs : arc_faces) {
        if (fs.size() != 2) throw InconsistencyError("face tracing visited an arc the wrong number of times");
        adjacent.emplace_back(fs[0], fs[1]);
    }
    auto new_face = [&](Int c) {
        chi.push_back(c);
        return faces++;
    };
    std::vector<std::pair<int, int>> same;  // faces forming one region

    if (has_through) {
        out.host = out.bottom_interval.at(0);
    } else {
        // The face along an interval outside every cut interval is one end of
        // an annular region.
        auto outer_face = [&](Side side) -> int {
            Int n = side == Side::bottom ? m.bottom : m.top;
            for (Int j = 0; j < n; ++j) {
                Rational mid = position(n, j) + Rational(1, 2 * n);
                bool covered = false;
                for (const auto& arc : m.arcs)
                    if (arc.a.side == side && detail::strictly_inside(detail::cut_interval(m, arc), mid)) covered = true;
                if (!covered) return side == Side::bottom ? out.bottom_interval[j] : out.top_interval[j];
            }
            if (n > 0) throw InconsistencyError("every boundary interval is cut off");
            return new_face(0);
        };
        int ob = outer_face(Side::bottom), ot = outer_face(Side::top);
        chi[ob] = 0;
        chi[ot] = 0;
        if (m.bottom == 0) out.bottom_circle = ob;
        if (m.top == 0) out.top_circle = ot;
        if (m.cores == 0) {
            same.emplace_back(ob, ot);
        } else {
            int prev = ob;
            for (Int c = 1; c < m.cores; ++c) {
                int mid = new_face(0);
                adjacent.emplace_back(prev, mid);
                prev = mid;
            }
            adjacent.emplace_back(prev, ot);
        }
        out.host = ob;
    }
    for (Int c = 0; c < m.contractible; ++c) {
        chi[out.host] -= 1;
        adjacent.emplace_back(out.host, new_face(1));
    }

    // Merge faces belonging to one region and renumber.
    std::vector<int> parent(faces);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
    for (auto [a, b] : same) parent[find(a)] = find(b);
    std::vector<int> id(faces, -1);
    std::vector<Int> rchi;
    for (int f = 0; f < faces; ++f) {
        int r = find(f);
        if (id[r] == -1) id[r] = static_cast<int>(rchi.size()), rchi.push_back(0);
        rchi[id[r]] += chi[f];
    }
    auto rid = [&](int f) { return f < 0 ? f : id[find(f)]; };
    for (auto& s : out.bottom_interval) s = rid(s);
    for (auto& s : out.top_interval) s = rid(s);
    for (auto& [a, b] : adjacent) a = rid(a), b = rid(b);
    out.bottom_circle = rid(out.bottom_circle);
    out.top_circle = rid(out.top_circle);
    out.host = rid(out.host);
    chi = rchi;
    faces = static_cast<int>(rchi.size());

    // Two-colour the faces starting from the host.
    std::vector<std::vector<int>> nbr(faces);
    for (auto [a, b] : adjacent) {
        if (a == b) out.colorable = false;
        nbr[a].push_back(b);
        nbr[b].push_back(a);
    }
    std::vector<int> colour(faces, -1);
    for (int start = 0; start < faces; ++start) {
        int root = start == 0 ? out.host : start;
        if (colour[root] != -1) continue;
        colour[root] = 0;
        std::vector<int> stack{root};
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (int v : nbr[u]) {
                if (colour[v] == -1) {
                    colour[v] = 1 - colour[u];
                    stack.push_back(v);
                } else if (colour[v] == colour[u]) {
                    out.colorable = false;
                }
            }
        }
    }
    for (int f = 0; f < faces; ++f) {
        std::optional<Sign> s;
        if (m.sign && out.colorable) s = colour[f] == 0 ? *m.sign : opposite(*m.sign);
        out.regions.push_back({chi[f], s});
    }
    return out;
}

/// Sum of sign * chi over the complementary regions.
inline Int euler_signature(const AnnulusMulticurve& m) {
    if (!m.sign) throw DomainError("multicurve carries no sign map");
    auto r = annulus_regions(m);
    if (!r.colorable) throw DomainError("no consistent sign map");
    Int total = 0;
    for (const auto& reg : r.regions) total += sign_value(*reg.sign) * reg.chi;
    return total;
}

inline Int euler_signature(const TorusMulticurve& m) {
    if (!m.signs_consistent) throw DomainError("no consistent sign map");
    Int total = 0;
    for (const auto& reg : m.regions) {
        if (!reg.sign) throw DomainError("multicurve carries no sign map");
        total += sign_value(*reg.sign) * reg.chi;
    }
    return total;
}

/// Same multicurve with every region sign flipped.
inline AnnulusMulticurve swap_signs(AnnulusMulticurve m) {
    if (m.sign) m.sign = opposite(*m.sign);
    return m;
}

/// Rotation that also carries the sign map along.
inline AnnulusMulticurve rotate_signed(const AnnulusMulticurve& m) {
    AnnulusMulticurve out = rotate(m);
    // Without through arcs the sign sits on the bottom-most annulus, which
    // rotation does not move; otherwise it moves from interval 1 to interval 0.
    if (m.sign && std::any_of(m.arcs.begin(), m.arcs.end(), is_through)) {
        auto r = annulus_regions(m);
        out.sign = r.regions.at(r.bottom_interval.at(1 % m.bottom)).sign;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Closing the annulus into a torus

/// Glues top point i to bottom point i and classifies the resulting closed
/// curves. Horizontal direction is the first homology coordinate.
inline TorusMulticurve close_annulus(const AnnulusMulticurve& m) {
    if (m.bottom != m.top) throw DomainError("top and bottom carry different numbers of marked points");
    auto inc = detail::incidence(m);
    validate(m);
    Int n = m.bottom;

    std::vector<char> used(m.arcs.size(), 0);
    std::vector<std::pair<Int, Int>> classes;
    for (std::size_t start = 0; start < m.arcs.size(); ++start) {
        if (used[start]) continue;
        Rational h(0);
        Int v = 0;
        Endpoint at = m.arcs[start].a;
        int id = static_cast<int>(start);
        while (!used[id]) {
            used[id] = 1;
            Arc arc = oriented_from(m.arcs[id], at);
            h = h + displacement(m, arc);
            if (arc.a.side != arc.b.side) v += arc.b.side == Side::top ? 1 : -1;
            Endpoint glued{arc.b.side == Side::top ? Side::bottom : Side::top, arc.b.index};
            at = glued;
            id = inc.at(at);
        }
        if (!h.is_integer()) throw InconsistencyError("closed component with fractional displacement");
        classes.emplace_back(h.num(), v);
    }
    for (Int c = 0; c < m.cores; ++c) classes.emplace_back(1, 0);

    std::optional<Slope> slope;
    Int essential = 0, contractible = m.contractible;
    for (auto [h, v] : classes) {
        if (h == 0 && v == 0) {
            ++contractible;
            continue;
        }
        if (std::gcd(h, v) != 1) throw InconsistencyError("closed component is not primitive");
        Slope s = reduce_slope(h, v);
        if (slope && *slope != s) throw InconsistencyError("disjoint essential curves with different slopes");
        slope = s;
        ++essential;
    }

    // Regions: glue annulus faces along matching boundary intervals.
    auto ar = annulus_regions(m);
    std::vector<int> parent(ar.regions.size());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
    std::vector<std::pair<int, int>> glue;
    if (n == 0) {
        glue.emplace_back(ar.bottom_circle, ar.top_circle);
    } else {
        for (Int j = 0; j < n; ++j) glue.emplace_back(ar.bottom_interval[j], ar.top_interval[j]);
    }
    bool consistent = ar.colorable;
    std::vector<Int> lost(ar.regions.size(), 0);
    for (auto [a, b] : glue) {
        if (ar.regions[a].sign != ar.regions[b].sign) consistent = false;
        if (n > 0) lost[a] += 1;
        parent[find(a)] = find(b);
    }
    std::map<int, Region> merged;
    for (std::size_t f = 0; f < ar.regions.size(); ++f) {
        auto& r = merged[find(static_cast<int>(f))];
        r.chi += ar.regions[f].chi - lost[f];
        r.sign = ar.regions[f].sign;
    }
    TorusMulticurve out{slope, essential, contractible, {}, consistent && m.sign.has_value()};
    for (auto& [root, r] : merged) {
        if (!out.signs_consistent) r.sign.reset();
        out.regions.push_back(r);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Stacking annuli and elementary templates

/// Stacks `upper` on top of `lower`, identifying lower's top points with
/// upper's bottom points.
inline AnnulusMulticurve stack(const AnnulusMulticurve& lower, const AnnulusMulticurve& upper) {
    if (lower.top != upper.bottom) throw DomainError("stacked annuli do not match along the middle circle");
    auto li = detail::incidence(lower);
    auto ui = detail::incidence(upper);
    AnnulusMulticurve out;
    out.bottom = lower.bottom;
    out.top = upper.top;
    out.cores = lower.cores + upper.cores;
    out.contractible = lower.contractible + upper.contractible;

    std::vector<char> lused(lower.arcs.size(), 0), uused(upper.arcs.size(), 0);
    // Walk from an endpoint in one of the two annuli until an outer endpoint.
    auto walk = [&](bool in_upper, Endpoint at, Rational& disp) -> std::pair<bool, Endpoint> {
        while (true) {
            const AnnulusMulticurve& m = in_upper ? upper : lower;
            int id = in_upper ? ui.at(at) : li.at(at);
            auto& used = in_upper ? uused : lused;
            if (used[id]) return {in_upper, at};
            used[id] = 1;
            Arc arc = oriented_from(m.arcs[id], at);
            disp = disp + displacement(m, arc);
            bool middle = in_upper ? arc.b.side == Side::bottom : arc.b.side == Side::top;
            if (!middle) return {in_upper, arc.b};
            in_upper = !in_upper;
            at = Endpoint{in_upper ? Side::bottom : Side::top, arc.b.index};
        }
    };
    auto outer_pos = [&](bool in_upper, const Endpoint& e) {
        return in_upper ? position(upper.top, e.index) : position(lower.bottom, e.index);
    };
    auto add_open = [&](bool in_upper, Endpoint start) {
        Rational disp(0);
        auto [end_upper, end] = walk(in_upper, start, disp);
        Endpoint a{in_upper ? Side::top : Side::bottom, start.index};
        Endpoint b{end_upper ? Side::top : Side::bottom, end.index};
        Rational w = disp - (outer_pos(end_upper, end) - outer_pos(in_upper, start));
        if (!w.is_integer()) throw InconsistencyError("stacked arc with fractional winding");
        out.arcs.push_back(canonical(Arc{a, b, w.num()}));
    };
    for (Int i = 0; i < lower.bottom; ++i)
        if (!lused[li.bottom[i]]) add_open(false, Endpoint{Side::bottom, i});
    for (Int i = 0; i < upper.top; ++i)
        if (!uused[ui.top[i]]) add_open(true, Endpoint{Side::top, i});
    // Whatever remains closes up through the middle circle.
    for (std::size_t id = 0; id < lower.arcs.size(); ++id) {
        if (lused[id]) continue;
        Rational disp(0);
        walk(false, lower.arcs[id].a, disp);
        if (!disp.is_integer()) throw InconsistencyError("closed curve with fractional displacement");
        if (disp.num() == 0) {
            ++out.contractible;
        } else if (std::llabs(disp.num()) == 1) {
            ++out.cores;
        } else {
            throw InconsistencyError("closed curve winds more than once");
        }
    }
    return sorted(out);
}

/// Annulus whose `side` carries 2n points with one boundary-parallel arc over
/// interval `span` (from point span to point span+1) and whose other side
/// carries 2(n-1) points joined straight across.
inline AnnulusMulticurve elementary_template(Side side, Int n, Int span) {
    if (n < 1) throw DomainError("template size must be positive");
    Int big = 2 * n, small = 2 * n - 2;
    AnnulusMulticurve k;
    k.bottom = side == Side::bottom ? big : small;
    k.top = side == Side::top ? big : small;
    Int i = span, j = (span + 1) % big;
    k.arcs.push_back(canonical(Arc{{side, i}, {side, j}, j < i ? 1 : 0}));
    Side far = side == Side::bottom ? Side::top : Side::bottom;
    Int idx = 0;
    for (Int p = 0; p < big; ++p) {
        if (p == i || p == j) continue;
        Arc a{{side, p}, {far, idx++}, 0};
        k.arcs.push_back(canonical(a));
    }
    return sorted(k);
}

struct TemplateVerdict {
    bool overtwisted = false;
    std::optional<AnnulusMulticurve> result;  // set when tight
};

/// Interval index of an adjacent pair of marked points on a side with n points.
inline Int span_interval(Int n, Int p, Int q) {
    if (n < 2 || p < 0 || q < 0 || p >= n || q >= n) throw DomainError("span endpoints out of range");
    if (q == (p + 1) % n) return p;
    if (p == (q + 1) % n) return q;
    throw DomainError("span endpoints are not adjacent");
}

/// Attaches an elementary template of size n along `side` of m, its
/// boundary-parallel arc facing the interval between p and q. The result is
/// overtwisted exactly when m has a boundary-parallel arc over the same interval.
inline TemplateVerdict attach_template(const AnnulusMulticurve& m, Side side, std::pair<Int, Int> span, Int n) {
    validate(m);
    if (side == Side::hole) throw DomainError("templates attach to the annulus boundary");
    Int count = side_count(m, side);
    if (count != 2 * n) throw DomainError("template size does not match the number of marked points");
    Int i = span_interval(count, span.first, span.second);
    Int j = (i + 1) % count;

    auto inc = detail::incidence(m);
    const Arc& arc = m.arcs[inc.at({side, i})];
    if (!is_through(arc) && (arc.a == Endpoint{side, j} || arc.b == Endpoint{side, j})) {
        auto iv = detail::cut_interval(m, arc);
        if (iv.start == position(count, i) && iv.length == Rational(1, count)) return {true, std::nullopt};
    }
    Side glued = side == Side::bottom ? Side::top : Side::bottom;
    AnnulusMulticurve k = elementary_template(glued, n, i);
    AnnulusMulticurve joined = side == Side::bottom ? stack(k, m) : stack(m, k);
    if (joined.contractible != m.contractible)
        throw InconsistencyError("template attachment produced an unexpected disc");
    return {false, joined};
}

// ---------------------------------------------------------------------------
// Pants and punctured torus

inline void validate(const PantsMulticurve& m) {
    std::map<Endpoint, int> seen;
    for (const auto& arc : m.arcs)
        for (const auto& e : {arc.a, arc.b}) {
            Int n = e.side == Side::bottom ? m.bottom : e.side == Side::top ? m.top : m.hole;
            if (e.index < 0 || e.index >= n) throw DomainError("endpoint index out of range");
            if (seen[e]++) throw DomainError("marked point used twice");
        }
    if (static_cast<Int>(seen.size()) != m.bottom + m.top + m.hole) throw DomainError("unused marked point");
}

/// Fills the hole of a pair of pants carrying two marked points, joining the
/// two arcs that end there.
inline AnnulusMulticurve fill_hole(const PantsMulticurve& p) {
    validate(p);
    if (p.hole != 2) throw DomainError("filling needs exactly two marked points on the hole");
    AnnulusMulticurve out;
    out.bottom = p.bottom;
    out.top = p.top;
    out.cores = p.bottom_parallel + p.top_parallel;
    out.contractible = p.contractible + p.hole_parallel;
    out.sign = p.sign;
    auto pos = [&](const Endpoint& e) {
        if (e.side == Side::hole) return Rational(1, 2);
        return position(e.side == Side::bottom ? p.bottom : p.top, e.index);
    };
    auto disp = [&](const Arc& a) { return pos(a.b) - pos(a.a) + Rational(a.winding); };
    std::vector<Arc> at_hole;
    for (const auto& arc : p.arcs) {
        if (arc.a.side == Side::hole || arc.b.side == Side::hole) {
            at_hole.push_back(arc);
        } else {
            out.arcs.push_back(canonical(arc));
        }
    }
    if (at_hole.size() == 1) {
        Rational h = disp(at_hole[0]);
        if (!h.is_integer()) throw InconsistencyError("hole arc with fractional displacement");
        if (h.num() == 0) {
            ++out.contractible;
        } else if (std::llabs(h.num()) == 1) {
            ++out.cores;
        } else {
            throw DomainError("hole arc winds more than once");
        }
    } else {
        Arc first = at_hole[0].b.side == Side::hole ? at_hole[0] : oriented_from(at_hole[0], at_hole[0].b);
        Arc second = at_hole[1].a.side == Side::hole ? at_hole[1] : oriented_from(at_hole[1], at_hole[1].b);
        Rational total = disp(first) + disp(second);
        Rational w = total - (pos(second.b) - pos(first.a));
        if (!w.is_integer()) throw InconsistencyError("joined arc with fractional winding");
        out.arcs.push_back(canonical(Arc{first.a, second.b, w.num()}));
    }
    out = sorted(out);
    validate(out);
    return out;
}

inline void validate(const PuncturedTorusMulticurve& m) {
    std::vector<int> seen(std::max<Int>(m.boundary, 0), 0);
    for (const auto& a : m.arcs)
        for (Int e : {a.a, a.b}) {
            if (e < 0 || e >= m.boundary) throw DomainError("endpoint index out of range");
            if (seen[e]++) throw DomainError("marked point used twice");
        }
    for (int s : seen)
        if (!s) throw DomainError("unused marked point");
    for (const auto& a : m.arcs)
        if (!(a.hx == 0 && a.hy == 0) && std::gcd(a.hx, a.hy) != 1)
            throw DomainError("arc class must be primitive or zero");
    for (std::size_t i = 0; i < m.arcs.size(); ++i)
        for (std::size_t j = i + 1; j < m.arcs.size(); ++j)
            if (std::llabs(det(m.arcs[i].hx, m.arcs[i].hy, m.arcs[j].hx, m.arcs[j].hy)) > 1)
                throw DomainError("arcs intersect");
    for (const auto& [s, k] : m.closed) {
        if (k < 0) throw DomainError("negative multiplicity");
        for (const auto& [t, l] : m.closed)
            if (det(s, t) != 0 && k > 0 && l > 0) throw DomainError("closed curves intersect");
        for (const auto& a : m.arcs)
            if (det(s.x, s.y, a.hx, a.hy) != 0 && k > 0) throw DomainError("closed curve meets an arc");
    }
}

/// Fills the puncture of a punctured torus whose boundary carries two points.
inline TorusMulticurve complete_punctured_torus(const PuncturedTorusMulticurve& m) {
    validate(m);
    if (m.boundary != 2) throw DomainError("completion needs exactly two boundary points");
    const auto& arc = m.arcs.at(0);
    std::optional<Slope> slope;
    Int essential = 0, contractible = m.contractible;
    if (arc.hx == 0 && arc.hy == 0) {
        ++contractible;
    } else {
        slope = reduce_slope(arc.hx, arc.hy);
        essential = 1;
    }
    for (const auto& [s, k] : m.closed) {
        if (k == 0) continue;
        slope = s;
        essential += k;
    }
    std::optional<Sign> outer = m.sign;
    if (essential % 2 != 0) outer.reset();
    return TorusMulticurve::standard(slope, essential, contractible, outer);
}

// ---------------------------------------------------------------------------
// Tightness and the hat operation

inline bool is_tight(const TorusDividingSet& g) { return g.contractible == 0; }
inline bool is_tight(const TorusMulticurve& m) { return m.contractible == 0; }
inline bool is_tight(const AnnulusMulticurve& m) { return m.contractible == 0; }
inline bool is_tight(const PantsMulticurve& m) { return m.contractible == 0; }
inline bool is_tight(const PuncturedTorusMulticurve& m) { return m.contractible == 0; }

/// Removes pairs of parallel closed curves.
inline AnnulusMulticurve hat(AnnulusMulticurve m) {
    m.cores %= 2;
    return m;
}
inline PantsMulticurve hat(PantsMulticurve m) {
    m.bottom_parallel %= 2;
    m.top_parallel %= 2;
    m.hole_parallel %= 2;
    return m;
}
inline PuncturedTorusMulticurve hat(PuncturedTorusMulticurve m) {
    for (auto& [s, k] : m.closed) k %= 2;
    return m;
}

inline Int euler_signature(const PuncturedTorusMulticurve& m) {
    // Filling the puncture adds two half discs of opposite sign, each glued
    // along one interval, which leaves the signature unchanged.
    if (!m.sign) throw DomainError("multicurve carries no sign map");
    return euler_signature(complete_punctured_torus(m));
}

inline Int euler_signature(const PantsMulticurve& m) {
    if (!m.sign) throw DomainError("multicurve carries no sign map");
    return euler_signature(fill_hole(m));
}

// ---------------------------------------------------------------------------
// Enumeration of small annulus multicurves

namespace detail {

// Non-crossing perfect matchings of points listed in forward order; each pair
// (u, v) cuts off the forward interval from u to v.
inline void forward_matchings(const std::vector<Int>& pts, Side side,
                              std::vector<std::vector<Arc>>& out) {
    if (pts.empty()) {
        out.push_back({});
        return;
    }
    if (pts.size() % 2) return;
    for (std::size_t k = 1; k < pts.size(); k += 2) {
        std::vector<Int> inner(pts.begin() + 1, pts.begin() + k);
        std::vector<Int> outer(pts.begin() + k + 1, pts.end());
        std::vector<std::vector<Arc>> a, b;
        forward_matchings(inner, side, a);
        forward_matchings(outer, side, b);
        Arc top{{side, pts[0]}, {side, pts[k]}, pts[k] < pts[0] ? 1 : 0};
        for (const auto& x : a)
            for (const auto& y : b) {
                std::vector<Arc> arcs{canonical(top)};
                arcs.insert(arcs.end(), x.begin(), x.end());
                arcs.insert(arcs.end(), y.begin(), y.end());
                out.push_back(arcs);
            }
    }
}

// All laminar boundary-parallel systems on a side with n points and no
// through arcs.
inline std::vector<std::vector<Arc>> closed_side_systems(Side side, Int n) {
    std::set<std::vector<Arc>> found;
    if (n == 0) return {{}};
    for (Int o = 0; o < n; ++o) {
        std::vector<Int> pts;
        for (Int k = 1; k <= n; ++k) pts.push_back((o + k) % n);
        std::vector<std::vector<Arc>> ms;
        forward_matchings(pts, side, ms);
        for (auto& arcs : ms) {
            std::sort(arcs.begin(), arcs.end());
            found.insert(arcs);
        }
    }
    return {found.begin(), found.end()};
}

// Boundary-parallel systems filling the gaps between chosen through-arc feet.
inline std::vector<std::vector<Arc>> gap_systems(Side side, Int n, const std::vector<Int>& feet) {
    std::vector<std::vector<Arc>> acc{{}};
    for (std::size_t g = 0; g < feet.size(); ++g) {
        Int from = feet[g], to = feet[(g + 1) % feet.size()];
        std::vector<Int> pts;
        for (Int p = (from + 1) % n; p != to; p = (p + 1) % n) pts.push_back(p);
        std::vector<std::vector<Arc>> ms;
        forward_matchings(pts, side, ms);
        std::vector<std::vector<Arc>> next;
        for (const auto& a : acc)
            for (const auto& b : ms) {
                auto c = a;
                c.insert(c.end(), b.begin(), b.end());
                next.push_back(c);
            }
        acc.swap(next);
        if (acc.empty()) break;
    }
    return acc;
}

inline void subsets(Int n, Int k, Int from, std::vector<Int>& cur, std::vector<std::vector<Int>>& out) {
    if (static_cast<Int>(cur.size()) == k) {
        out.push_back(cur);
        return;
    }
    for (Int i = from; i < n; ++i) {
        cur.push_back(i);
        subsets(n, k, i + 1, cur, out);
        cur.pop_back();
    }
}

}  // namespace detail

/// Every embedded arc system (no closed curves) with the given numbers of
/// marked points, one representative per Dehn twist along the core.
inline std::vector<AnnulusMulticurve> enumerate_annulus_multicurves(Int bottom, Int top) {
    std::vector<AnnulusMulticurve> out;
    if ((bottom + top) % 2) return out;
    for (Int t = 0; t <= std::min(bottom, top); ++t) {
        if ((bottom - t) % 2 || (top - t) % 2) continue;
        if (t == 0) {
            for (const auto& b : detail::closed_side_systems(Side::bottom, bottom))
                for (const auto& u : detail::closed_side_systems(Side::top, top)) {
                    AnnulusMulticurve m{bottom, top, b, 0, 0, std::nullopt};
                    m.arcs.insert(m.arcs.end(), u.begin(), u.end());
                    out.push_back(sorted(m));
                }
            continue;
        }
        std::vector<std::vector<Int>> bs, ts;
        std::vector<Int> cur;
        detail::subsets(bottom, t, 0, cur, bs);
        detail::subsets(top, t, 0, cur, ts);
        for (const auto& sb : bs)
            for (const auto& st : ts) {
                auto bsys = detail::gap_systems(Side::bottom, bottom, sb);
                auto tsys = detail::gap_systems(Side::top, top, st);
                for (Int sigma = 0; sigma < t; ++sigma)
                    for (const auto& b : bsys)
                        for (const auto& u : tsys) {
                            AnnulusMulticurve m{bottom, top, b, 0, 0, std::nullopt};
                            m.arcs.insert(m.arcs.end(), u.begin(), u.end());
                            for (Int j = 0; j < t; ++j) {
                                Int k = (j + sigma) % t;
                                m.arcs.push_back(Arc{{Side::bottom, sb[j]}, {Side::top, st[k]}, j + sigma >= t ? 1 : 0});
                            }
                            out.push_back(sorted(m));
                        }
            }
    }
    return out;
}

}  // namespace tight
