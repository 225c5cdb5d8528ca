#pragma once

#include <algorithm>
#include <cstdlib>
#include <vector>

#include "tight/lattice.hpp"

namespace tight {

inline bool is_farey_edge(const Slope& s, const Slope& t) { return std::llabs(det(s, t)) == 1; }

/// Direction in which a path sweeps the circle of slopes.
enum class Sweep { increasing, decreasing };

struct FareyPath {
    std::vector<Slope> vertices;
    std::size_t length() const { return vertices.empty() ? 0 : vertices.size() - 1; }
    friend bool operator==(const FareyPath&, const FareyPath&) = default;
};

/// True when v lies on the closed arc of the slope circle swept from a to b in
/// the increasing direction (passing through infinity if needed).
inline bool on_arc(const Slope& a, const Slope& b, const Slope& v) {
    if (v == a || v == b) return true;
    if (a == b) return false;
    // Position along the circle starting at a: map a to infinity by an
    // orientation preserving element and compare values.
    Bezout bz = bezout(a.x, a.y);
    IntMatrix2 g{a.y, -a.x, bz.u, bz.v};
    Slope bb = mobius(g, b), vv = mobius(g, v);
    if (vv.is_infinite()) return false;
    return vv.value() <= bb.value();
}

/// The unique shortest Farey path from a to b that stays on the arc swept from a
/// to b in the given direction. Built by continued-fraction descent.
inline FareyPath shortest_path(const Slope& a, const Slope& b, Sweep sweep = Sweep::increasing) {
    if (sweep == Sweep::decreasing) {
        FareyPath p = shortest_path(b, a, Sweep::increasing);
        std::reverse(p.vertices.begin(), p.vertices.end());
        return p;
    }
    FareyPath path{{a}};
    if (a == b) return path;
    // cur maps original coordinates to working coordinates in which the last
    // emitted vertex sits at infinity.
    Bezout bz = bezout(a.x, a.y);
    IntMatrix2 cur{a.y, -a.x, bz.u, bz.v};
    Slope target = mobius(cur, b);
    while (!target.is_infinite()) {
        Int k = target.value().floor();
        IntMatrix2 back = cur.inverse();
        path.vertices.push_back(mobius(back, Slope{1, k}));
        IntMatrix2 step{-k, 1, -1, 0};  // z -> -1/(z - k)
        cur = step * cur;
        target = mobius(step, target);
    }
    return path;
}

struct Block {
    std::vector<Slope> vertices;  // consecutive blocks share an endpoint
    Slope pivot;                  // common Farey neighbour of the block's fan
    Int size() const { return static_cast<Int>(vertices.size()) - 1; }
};

struct BlockDecomposition {
    std::vector<Block> blocks;
    std::vector<Int> sizes() const {
        std::vector<Int> out;
        for (const auto& b : blocks) out.push_back(b.size());
        return out;
    }
    /// Number of sign assignments up to shuffling inside blocks.
    Int sign_classes() const {
        Int p = 1;
        for (const auto& b : blocks) p *= b.size() + 1;
        return p;
    }
};

/// Splits a path into maximal runs of edges sharing a pivot: edges (v_{i-1}, v_i)
/// and (v_i, v_{i+1}) share one exactly when v_{i-1} + v_{i+1} = 2 v_i for
/// consistently lifted vectors.
inline BlockDecomposition block_decomposition(const FareyPath& p) {
    const auto& vs = p.vertices;
    for (std::size_t i = 0; i + 1 < vs.size(); ++i)
        if (!is_farey_edge(vs[i], vs[i + 1])) throw DomainError("path has a non-Farey edge");
    BlockDecomposition out;
    if (vs.size() < 2) return out;

    // Lift so that every edge has the same determinant; of the two choices
    // take the one travelling forward, i.e. v_{i-1} + v_{i+1} = k v_i with k > 0.
    std::vector<std::pair<Int, Int>> lift;
    auto lift_with = [&](Int orient) {
        lift.assign(1, {vs[0].x, vs[0].y});
        for (std::size_t i = 1; i < vs.size(); ++i) {
            auto [px, py] = lift.back();
            Int x = vs[i].x, y = vs[i].y;
            if (det(px, py, x, y) != orient) x = -x, y = -y;
            lift.emplace_back(x, y);
        }
    };
    lift_with(det(vs[0], vs[1]));
    if (vs.size() >= 3) {
        auto [ax, ay] = lift[0];
        auto [bx, by] = lift[1];
        auto [cx, cy] = lift[2];
        Int k = bx != 0 ? (ax + cx) / bx : (ay + cy) / by;
        if (k < 0) lift_with(-det(vs[0], vs[1]));
    }
    auto pivot = [&](std::size_t i) {
        return reduce_slope(lift[i + 1].first - lift[i].first, lift[i + 1].second - lift[i].second);
    };
    Block cur{{vs[0], vs[1]}, pivot(0)};
    for (std::size_t i = 1; i + 1 < vs.size(); ++i) {
        Slope pv = pivot(i);
        if (pv == cur.pivot) {
            cur.vertices.push_back(vs[i + 1]);
        } else {
            out.blocks.push_back(cur);
            cur = Block{{vs[i], vs[i + 1]}, pv};
        }
    }
    out.blocks.push_back(cur);
    return out;
}

}  // namespace tight
