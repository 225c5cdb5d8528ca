#pragma once

// Breadth-first traversal of the states of M(e0, r) cut along a vertical
// torus. Finite-slope states are indexed by the normalized wall slope p/q in
// (0, 1]; infinite-slope states by an annulus multicurve that closes up to a
// single contractible curve. Every state carries the class of exceptional
// labels (l, eta) it represents.

#include <algorithm>
#include <deque>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <variant>
#include <vector>

#include "tight/census.hpp"
#include "tight/dividing_sets.hpp"

namespace tight {

struct FiniteSlope {
    Int p = 1;
    Int q = 1;
    friend bool operator==(const FiniteSlope&, const FiniteSlope&) = default;
    friend auto operator<=>(const FiniteSlope&, const FiniteSlope&) = default;
};

struct InfiniteSlope {
    AnnulusMulticurve gamma;
    friend bool operator==(const InfiniteSlope&, const InfiniteSlope&) = default;
    friend auto operator<=>(const InfiniteSlope&, const InfiniteSlope&) = default;
};

struct TraversalState {
    std::variant<FiniteSlope, InfiniteSlope> where;
    std::vector<LabeledEta> labels;  // sorted; more than one when labels are identified here
    std::pair<Int, Int> euler{0, 0};

    bool finite() const { return std::holds_alternative<FiniteSlope>(where); }
    friend bool operator==(const TraversalState&, const TraversalState&) = default;
    friend auto operator<=>(const TraversalState&, const TraversalState&) = default;
};

struct TraversalOptions {
    Int denom_bound = 8;
    Int max_division = 3;  // infinite-slope states use at most 2 * max_division points per side
};

// ---------------------------------------------------------------------------
// Infinite-slope configurations

namespace detail {

// Removes the boundary-parallel arc over interval i of `side` (points i and
// i+1) and renumbers the remaining points on that side.
inline AnnulusMulticurve remove_span(const AnnulusMulticurve& m, Side side, Int i) {
    Int n = side_count(m, side);
    Int j = (i + 1) % n;
    auto renum = [&](Int p) {
        Int k = p;
        if (p > i) --k;
        if (p > j) --k;
        return k;
    };
    AnnulusMulticurve out = m;
    (side == Side::bottom ? out.bottom : out.top) = n - 2;
    out.arcs.clear();
    for (const auto& arc : m.arcs) {
        bool ai = arc.a.side == side && (arc.a.index == i || arc.a.index == j);
        bool bi = arc.b.side == side && (arc.b.index == i || arc.b.index == j);
        if (ai && bi) continue;
        Arc a = arc;
        if (a.a.side == side) a.a.index = renum(a.a.index);
        if (a.b.side == side) a.b.index = renum(a.b.index);
        out.arcs.push_back(canonical(a));
    }
    return sorted(out);
}

inline bool is_short_arc(const AnnulusMulticurve& m, Side side, Int i) {
    Int n = side_count(m, side);
    Endpoint a{side, i}, b{side, (i + 1) % n};
    for (const auto& arc : m.arcs)
        if ((arc.a == a && arc.b == b) || (arc.a == b && arc.b == a)) {
            auto iv = cut_interval(m, arc);
            return iv.start == position(n, i) && iv.length == Rational(1, n);
        }
    return false;
}

inline bool closes_to_one_disc(const AnnulusMulticurve& m) {
    auto c = close_annulus(m);
    return c.essential == 0 && c.contractible == 1;
}

}  // namespace detail

/// Pushes the innermost boundary-parallel arc over interval i of `side`
/// across the wall, moving the collar containing it to the opposite side.
/// Returns nothing when the move would create a closed contractible curve.
inline std::optional<AnnulusMulticurve> push_across(const AnnulusMulticurve& m, Side side, Int i) {
    if (!detail::is_short_arc(m, side, i)) throw DomainError("no innermost arc over that interval");
    Int n = side_count(m, side);
    AnnulusMulticurve rest = detail::remove_span(m, side, i);
    AnnulusMulticurve collar = elementary_template(side, n / 2, i);
    AnnulusMulticurve moved = side == Side::top ? stack(collar, rest) : stack(rest, collar);
    if (moved.contractible > m.contractible) return std::nullopt;
    return normalize_twist(moved);
}

/// Configurations with 2..2K points per side closing to one contractible
/// curve, joined by pushes (down) and their inverses (up).
struct InfiniteSlopeGraph {
    Int max_division = 0;
    std::vector<AnnulusMulticurve> configs;
    std::map<AnnulusMulticurve, int> index;
    std::vector<std::vector<int>> down, up;
    std::vector<int> minimal;

    explicit InfiniteSlopeGraph(Int k) : max_division(k) {
        for (Int n = 2; n <= 2 * k; n += 2)
            for (const auto& m : enumerate_annulus_multicurves(n, n))
                if (detail::closes_to_one_disc(m)) {
                    index.emplace(m, static_cast<int>(configs.size()));
                    configs.push_back(m);
                    if (n == 2) minimal.push_back(static_cast<int>(configs.size()) - 1);
                }
        down.resize(configs.size());
        up.resize(configs.size());
        for (std::size_t c = 0; c < configs.size(); ++c) {
            const auto& m = configs[c];
            std::set<int> targets;
            for (Side side : {Side::bottom, Side::top})
                for (Int i = 0; i < m.bottom; ++i) {
                    if (!detail::is_short_arc(m, side, i)) continue;
                    auto moved = push_across(m, side, i);
                    if (!moved) continue;
                    if (!detail::closes_to_one_disc(*moved))
                        throw InconsistencyError("push changed the closed-up curve");
                    auto it = index.find(*moved);
                    if (it == index.end()) throw InconsistencyError("push left the configuration space");
                    targets.insert(it->second);
                }
            for (int t : targets) {
                down[c].push_back(t);
                up[t].push_back(static_cast<int>(c));
            }
        }
    }

    static std::shared_ptr<const InfiniteSlopeGraph> get(Int k) {
        static std::mutex mu;
        static std::map<Int, std::shared_ptr<const InfiniteSlopeGraph>> cache;
        std::lock_guard<std::mutex> lock(mu);
        auto& slot = cache[k];
        if (!slot) slot = std::make_shared<const InfiniteSlopeGraph>(k);
        return slot;
    }
};

// ---------------------------------------------------------------------------
// States

namespace detail {

inline void require_exceptional(const SeifertDescriptor& sd) {
    sd.validate();
    if (sd.e0 < 1) throw DomainError("state traversal covers e0 >= 1");
}

// Labels are identified at integer-slope walls and at infinite slope.
inline bool identifies(const std::variant<FiniteSlope, InfiniteSlope>& where) {
    if (auto* f = std::get_if<FiniteSlope>(&where)) return f->q == 1;
    return true;
}

inline std::vector<LabeledEta> label_class(const SeifertDescriptor& sd, const LabeledEta& x, bool merge) {
    std::vector<LabeledEta> out{x};
    if (merge)
        if (auto y = relation_image(sd, x)) out.push_back(*y);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace detail

/// Relative Euler class representative of a state.
inline std::pair<Int, Int> euler_vector(const SeifertDescriptor& sd, const std::variant<FiniteSlope, InfiniteSlope>& where,
                                        Int l) {
    Int s = l > 0 ? 1 : -1;
    if (auto* f = std::get_if<FiniteSlope>(&where)) return {-s * f->q, s * (-1 - f->p + sd.e0 * f->q)};
    return {0, l};
}

inline TraversalState make_state(const SeifertDescriptor& sd, std::variant<FiniteSlope, InfiniteSlope> where,
                                 const LabeledEta& label) {
    TraversalState st{std::move(where), {}, {}};
    st.labels = detail::label_class(sd, label, detail::identifies(st.where));
    st.euler = euler_vector(sd, st.where, st.labels.front().l);
    return st;
}

/// Starting state for (l, eta): the minimal infinite-slope configuration.
inline TraversalState initial_state(const SeifertDescriptor& sd, Int l, const RInvariants& eta,
                                    const TraversalOptions& opt = {}) {
    detail::require_exceptional(sd);
    if (l != 2 && l != -2) throw DomainError("l must be +2 or -2");
    auto expected = exceptional_etas(sd);
    if (std::find(expected.begin(), expected.end(), eta) == expected.end())
        throw DomainError("eta is not an r-invariant of the exceptional filling");
    auto g = InfiniteSlopeGraph::get(opt.max_division);
    return make_state(sd, InfiniteSlope{g->configs.at(g->minimal.at(0))}, LabeledEta{l, eta});
}

inline bool state_tight(const TraversalState& s, const SeifertDescriptor& sd) {
    detail::require_exceptional(sd);
    auto* f = std::get_if<FiniteSlope>(&s.where);
    if (!f) return true;
    Rational s0 = Rational(f->p, f->q) - Rational(sd.e0);
    if (s0 < Rational(0)) return true;
    if (s0 > Rational(0)) throw InconsistencyError("wall slope outside the normalized range");
    for (const auto& x : s.labels)
        if (!exceptional_tight(sd, x.l, x.eta)) return false;
    return true;
}

/// Affine change e -> sign * e + shift of the Euler vector along an edge.
struct EulerTransform {
    Int sign = 1;
    std::pair<Int, Int> shift{0, 0};
    std::pair<Int, Int> apply(std::pair<Int, Int> e) const {
        return {sign * e.first + shift.first, sign * e.second + shift.second};
    }
};

struct Transition {
    TraversalState target;
    EulerTransform transform;
};

/// Layer vector between walls of slopes p1/q1 and p2/q2, moved to the far
/// side of the cut: (dq, dp - e0 dq) with d = first - second.
inline std::pair<Int, Int> layer_vector(Int e0, const FiniteSlope& a, const FiniteSlope& b) {
    Int dq = a.q - b.q, dp = a.p - b.p;
    return {dq, dp - e0 * dq};
}

inline std::vector<Transition> transition_edges(const TraversalState& s, const SeifertDescriptor& sd,
                                                const TraversalOptions& opt) {
    detail::require_exceptional(sd);
    if (opt.denom_bound < 1) throw DomainError("denominator bound must be positive");
    std::vector<std::variant<FiniteSlope, InfiniteSlope>> places;
    auto g = InfiniteSlopeGraph::get(opt.max_division);
    if (auto* f = std::get_if<FiniteSlope>(&s.where)) {
        std::set<FiniteSlope> seen;
        for (Int q2 = 1; q2 <= opt.denom_bound; ++q2)
            for (Int sign : {1, -1}) {
                // p * q2 - q * p2 = sign
                Int num = f->p * q2 - sign;
                if (num % f->q != 0) continue;
                Int p2 = num / f->q;
                Rational v(p2, q2);
                v = v - Rational(v.floor());
                if (v == Rational(0)) v = Rational(1);
                FiniteSlope t{v.num(), v.den()};
                if (t == *f || !seen.insert(t).second) continue;
                places.push_back(t);
            }
        if (f->q == 1)
            for (int c : g->minimal) places.push_back(InfiniteSlope{g->configs[c]});
    } else {
        const auto& m = std::get<InfiniteSlope>(s.where).gamma;
        auto it = g->index.find(m);
        if (it == g->index.end()) throw DomainError("configuration outside the traversal bounds");
        for (int t : g->down[it->second]) places.push_back(InfiniteSlope{g->configs[t]});
        for (int t : g->up[it->second]) places.push_back(InfiniteSlope{g->configs[t]});
        if (m.bottom == 2) places.push_back(FiniteSlope{1, 1});
    }

    std::vector<Transition> out;
    std::set<TraversalState> emitted;
    for (const auto& where : places)
        for (const auto& x : s.labels) {
            TraversalState t = make_state(sd, where, x);
            if (!emitted.insert(t).second) continue;
            EulerTransform tr;
            tr.sign = (s.labels.front().l > 0) == (t.labels.front().l > 0) ? 1 : -1;
            tr.shift = {t.euler.first - tr.sign * s.euler.first, t.euler.second - tr.sign * s.euler.second};
            out.push_back({t, tr});
        }
    return out;
}

inline std::vector<TraversalState> transitions(const TraversalState& s, const SeifertDescriptor& sd,
                                               const TraversalOptions& opt) {
    std::vector<TraversalState> out;
    for (auto& e : transition_edges(s, sd, opt)) out.push_back(std::move(e.target));
    return out;
}

struct Verdict {
    bool tight = true;
    std::set<TraversalState> visited;        // when tight
    std::vector<TraversalState> witness;     // when overtwisted: path from the initial state
};

inline Verdict traverse(const SeifertDescriptor& sd, const TraversalState& initial, const TraversalOptions& opt = {}) {
    detail::require_exceptional(sd);
    std::map<TraversalState, const TraversalState*> parent;
    auto root = parent.emplace(initial, nullptr).first;
    std::deque<const TraversalState*> queue{&root->first};
    while (!queue.empty()) {
        const TraversalState* cur = queue.front();
        queue.pop_front();
        if (!state_tight(*cur, sd)) {
            Verdict v{false, {}, {}};
            for (const TraversalState* s = cur; s; s = parent.at(*s)) v.witness.push_back(*s);
            std::reverse(v.witness.begin(), v.witness.end());
            return v;
        }
        for (auto& next : transitions(*cur, sd, opt)) {
            auto [it, fresh] = parent.emplace(std::move(next), cur);
            if (fresh) queue.push_back(&it->first);
        }
    }
    Verdict v;
    for (auto& [s, p] : parent) v.visited.insert(s);
    return v;
}

/// Two tight inputs are isotopic when their traversals reach the same states.
inline bool isotopic(const SeifertDescriptor& sd, const LabeledEta& a, const LabeledEta& b,
                     const TraversalOptions& opt = {}) {
    auto va = traverse(sd, initial_state(sd, a.l, a.eta, opt), opt);
    auto vb = traverse(sd, initial_state(sd, b.l, b.eta, opt), opt);
    if (!va.tight || !vb.tight) throw DomainError("input is overtwisted");
    return va.visited == vb.visited;
}

/// Number of isotopy classes among the tight inputs (l, eta), or nothing if
/// the traversal disagrees with itself.
struct TraversalCensus {
    Int tight_inputs = 0;
    Int overtwisted_inputs = 0;
    Int classes = 0;
};

inline TraversalCensus traversal_census(const SeifertDescriptor& sd, const TraversalOptions& opt = {}) {
    TraversalCensus out;
    std::set<std::set<TraversalState>> components;
    for (Int l : {-2, 2})
        for (const auto& eta : exceptional_etas(sd)) {
            auto v = traverse(sd, initial_state(sd, l, eta, opt), opt);
            if (!v.tight) {
                ++out.overtwisted_inputs;
                continue;
            }
            ++out.tight_inputs;
            components.insert(std::move(v.visited));
        }
    out.classes = static_cast<Int>(components.size());
    return out;
}

}  // namespace tight
