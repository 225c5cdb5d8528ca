#pragma once

// Independent checks for closure and template attachment: closed components
// are cycles of the product of two involutions on marked points (the arc
// pairing and the gluing map).

#include <map>
#include <vector>

#include "tight/dividing_sets.hpp"

namespace tight::oracle {

/// Number of closed components of the torus obtained by gluing top i to bottom i.
inline int closure_components(const AnnulusMulticurve& m) {
    int n = static_cast<int>(m.bottom);
    // Points 0..n-1 bottom, n..2n-1 top.
    auto key = [&](const Endpoint& e) { return static_cast<int>(e.index) + (e.side == Side::top ? n : 0); };
    std::vector<int> pair(2 * n), parent(2 * n);
    for (const auto& a : m.arcs) {
        pair[key(a.a)] = key(a.b);
        pair[key(a.b)] = key(a.a);
    }
    for (int i = 0; i < 2 * n; ++i) parent[i] = i;
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    auto unite = [&](int a, int b) { parent[find(a)] = find(b); };
    for (int i = 0; i < 2 * n; ++i) unite(i, pair[i]);
    for (int i = 0; i < n; ++i) unite(i, i + n);
    int cycles = 0;
    for (int i = 0; i < 2 * n; ++i) cycles += find(i) == i;
    return cycles + static_cast<int>(m.cores + m.contractible);
}

/// Glues an elementary template to `side` of m (the template's bp arc over
/// interval `span`) and reports whether a closed curve bounding a disc appears.
inline bool template_closes_disc(const AnnulusMulticurve& m, Side side, Int span) {
    Int big = side == Side::bottom ? m.bottom : m.top;
    Int j = (span + 1) % big;
    // Template involution on the glued points; all other points run straight
    // to the template's far side.
    std::map<Int, std::pair<Int, Rational>> tau;
    tau[span] = {j, Rational(1, big)};
    tau[j] = {span, -Rational(1, big)};
    // m's involution on the glued points.
    std::map<Int, std::pair<Endpoint, Rational>> mu;
    for (const auto& a : m.arcs)
        for (const Arc& o : {a, Arc{a.b, a.a, -a.winding}})
            if (o.a.side == side) mu[o.a.index] = {o.b, displacement(m, o)};
    for (Int p = 0; p < big; ++p) {
        Int at = p;
        Rational h(0);
        for (Int steps = 0; steps <= big; ++steps) {
            auto t = tau.find(at);
            if (t == tau.end()) break;
            h = h + t->second.second;
            auto [end, d] = mu.at(t->second.first);
            h = h + d;
            if (end.side != side) break;
            at = end.index;
            if (at == p) {
                if (h == Rational(0)) return true;
                break;
            }
        }
    }
    return false;
}

}  // namespace tight::oracle
