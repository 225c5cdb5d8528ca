#pragma once

#include <algorithm>
#include <cstdlib>
#include <map>
#include <optional>
#include <set>
#include <variant>
#include <vector>

#include "tight/solid_torus.hpp"

namespace tight {

/// M(e0, r): the Seifert manifold over the torus with one singular fibre of type r.
struct SeifertDescriptor {
    Int e0 = 0;
    Rational r{1, 2};

    void validate() const { require_unit_interval(r); }
    /// Coefficients of -1/r.
    std::vector<Int> d() const { return cf_expand(Rational(-1) / r).coefficients; }
};

inline std::vector<Int> admissible_twisting(const SeifertDescriptor& sd) {
    sd.validate();
    std::vector<Int> out;
    if (sd.e0 < 0) {
        out = {-1, 0};
    } else if (sd.e0 == 0) {
        for (Int t = 0; Rational(t) > Rational(-1) / sd.r; --t) out.push_back(t);
        std::reverse(out.begin(), out.end());
    } else {
        out = {0};
    }
    for (Int t : out)
        if (t < 0 && !(Rational(sd.e0) + Rational(1, t) < -sd.r))
            throw InconsistencyError("twisting bound violated at t=" + std::to_string(t));
    return out;
}

struct TorusInvariants {
    Int n1;
    Slope s1;
    Int n2;
    Slope s2;
    Int t;
    friend bool operator==(const TorusInvariants&, const TorusInvariants&) = default;
};

struct Triple {
    Int c1, c2, c3;
    friend bool operator==(const Triple&, const Triple&) = default;
    friend auto operator<=>(const Triple&, const Triple&) = default;
};

/// Dividing data of the two tori T_1, T_2 and the twisting number of the T^3
/// structure labelled (n, c).
inline TorusInvariants torus_invariants(Int n, const Triple& c) {
    if (n < 1) throw DomainError("n must be positive");
    if (c.c3 == 0) throw DomainError("c3 must be nonzero");
    if (std::gcd(std::gcd(c.c1, c.c2), c.c3) != 1) throw DomainError("c must be primitive");
    return TorusInvariants{n * std::gcd(c.c1, c.c3), reduce_slope(c.c3, c.c1), n * std::gcd(c.c2, c.c3),
                           reduce_slope(c.c3, c.c2), -std::llabs(n * c.c3)};
}

/// Recovers (n, c) with c3 > 0 from the invariants.
inline std::pair<Int, Triple> torus_label(const TorusInvariants& inv) {
    if (inv.t >= 0 || inv.n1 < 1 || inv.n2 < 1) throw DomainError("invariants out of range");
    if (inv.s1.is_infinite() || inv.s2.is_infinite()) throw DomainError("slopes must be finite");
    Int n = std::gcd(inv.n1, inv.n2);
    if (-inv.t % n != 0) throw DomainError("twisting not divisible by n");
    Int c3 = -inv.t / n;
    Triple c{inv.s1.y * inv.n1 / n, inv.s2.y * inv.n2 / n, c3};
    if (inv.s1.x * inv.n1 / n != c3 || inv.s2.x * inv.n2 / n != c3)
        throw DomainError("invariants are not realized by any label");
    return {n, c};
}

/// e0 = 1 tightness of (l, eta) on the exceptional background: r_0 = l * m_0 / 2.
inline bool exceptional_tight(const SeifertDescriptor& sd, Int l, const RInvariants& eta) {
    if (sd.e0 >= 2) return true;
    if (sd.e0 <= 0) throw DomainError("exceptional structures need e0 >= 1");
    return eta.values.at(0) * 2 == l * eta.block_sizes.at(0);
}

struct LabeledEta {
    Int l;
    RInvariants eta;
    friend bool operator==(const LabeledEta&, const LabeledEta&) = default;
    friend auto operator<=>(const LabeledEta&, const LabeledEta&) = default;
};

/// Identification of exceptional labels: (l, r0) ~ (-l, r0 + l) when e0 = 2,
/// (l, r0, r1) ~ (-l, -r0, r1 + l) between tight labels when e0 = 1.
inline std::optional<LabeledEta> relation_image(const SeifertDescriptor& sd, const LabeledEta& x) {
    LabeledEta y{-x.l, x.eta};
    if (sd.e0 == 2) {
        y.eta.values.at(0) += x.l;
    } else if (sd.e0 == 1) {
        if (x.eta.values.size() < 2 || !exceptional_tight(sd, x.l, x.eta)) return std::nullopt;
        y.eta.values[0] = -x.eta.values[0];
        y.eta.values[1] += x.l;
        if (is_valid(y.eta) && !exceptional_tight(sd, y.l, y.eta)) return std::nullopt;
    } else {
        return std::nullopt;
    }
    if (!is_valid(y.eta)) return std::nullopt;
    return y;
}

/// The r-invariants of the solid torus filling the exceptional background.
inline std::vector<RInvariants> exceptional_etas(const SeifertDescriptor& sd) {
    sd.validate();
    return enumerate_tight(fiber_boundary(0, sd.r));
}

inline Int exceptional_count(const SeifertDescriptor& sd) {
    sd.validate();
    if (sd.e0 <= 0) return 0;
    auto d = sd.d();
    Int tail = 1;
    for (std::size_t i = 1; i < d.size(); ++i) tail *= d[i] + 1;
    if (sd.e0 > 2) return std::llabs(2 * d[0] * tail);
    if (sd.e0 == 2) return std::llabs((d[0] - 1) * tail);
    if (d.size() == 1) return 2;
    Int rest = 1;
    for (std::size_t i = 2; i < d.size(); ++i) rest *= d[i] + 1;
    return std::llabs(d[1] * rest);
}

/// Tight exceptional labels grouped into isotopy classes.
inline std::vector<std::vector<LabeledEta>> exceptional_enumerate(const SeifertDescriptor& sd) {
    sd.validate();
    if (sd.e0 <= 0) throw DomainError("exceptional structures exist only for e0 > 0");
    std::vector<LabeledEta> raw;
    for (Int l : {-2, 2})
        for (const auto& eta : exceptional_etas(sd))
            if (exceptional_tight(sd, l, eta)) raw.push_back({l, eta});
    std::sort(raw.begin(), raw.end());
    std::map<LabeledEta, std::size_t> cls;
    std::vector<std::vector<LabeledEta>> out;
    for (const auto& x : raw) {
        if (cls.count(x)) continue;
        std::vector<LabeledEta> members{x};
        auto y = relation_image(sd, x);
        if (y && std::binary_search(raw.begin(), raw.end(), *y) && !cls.count(*y)) members.push_back(*y);
        std::sort(members.begin(), members.end());
        for (const auto& m : members) cls[m] = out.size();
        out.push_back(members);
    }
    return out;
}

/// Tight structures with t = 0 on the circle bundle T(e0) that are virtually overtwisted.
inline Int virtually_overtwisted_background_count(Int e0) {
    if (e0 == 2) return 1;
    if (e0 > 2) return 2;
    return 0;
}

struct NegativeBase {
    Int index;
    Int t = -1;
};
struct ThreeTorus {
    Int n;
    Triple c;
    Int t;
};
struct InvariantT0 {
    Int n;
    Slope slope;
    Int t = 0;
};
struct ExceptionalBase {
    Int l;
};
using Background = std::variant<NegativeBase, ThreeTorus, InvariantT0, ExceptionalBase>;

struct BackgroundEntry {
    Background background;
    Int fiber_count;
};

struct BackgroundBounds {
    Int max_division = 2;
    Int max_denominator = 2;
    Int max_c = 2;
};

struct BackgroundCensus {
    std::vector<BackgroundEntry> entries;
    bool truncated = false;  // some family was cut off by the bounds
};

/// Primitive slopes (x, y) with max(|x|, |y|) <= h, canonical representatives.
inline std::vector<Slope> slopes_up_to_height(Int h) {
    std::vector<Slope> out;
    for (Int x = 0; x <= h; ++x)
        for (Int y = -h; y <= h; ++y) {
            if (std::gcd(x, y) != 1) continue;
            Slope s = reduce_slope(x, y);
            if (s.x == x && s.y == y) out.push_back(s);
        }
    return out;
}

inline BackgroundCensus enumerate_backgrounds(const SeifertDescriptor& sd, const BackgroundBounds& b) {
    sd.validate();
    BackgroundCensus out;
    if (sd.e0 < 0) {
        Int f = fiber_count(-1, sd.r);
        for (Int k = 0; k < std::llabs(sd.e0 - 1); ++k) out.entries.push_back({NegativeBase{k}, f});
    } else if (sd.e0 == 0) {
        Rational bound = Rational(1) / sd.r;
        for (Int n = 1; n <= b.max_division; ++n)
            for (Int c3 = 1; Rational(n * c3) < bound && c3 <= b.max_c; ++c3)
                for (Int c1 = -b.max_c; c1 <= b.max_c; ++c1)
                    for (Int c2 = -b.max_c; c2 <= b.max_c; ++c2) {
                        if (std::gcd(std::gcd(c1, c2), c3) != 1) continue;
                        Triple c{c1, c2, c3};
                        Int t = torus_invariants(n, c).t;
                        out.entries.push_back({ThreeTorus{n, c, t}, fiber_count(t, sd.r)});
                    }
        out.truncated = true;
    }
    Int f0 = fiber_count(0, sd.r);
    for (Int n = 1; n <= b.max_division; ++n)
        for (const auto& s : slopes_up_to_height(b.max_denominator)) out.entries.push_back({InvariantT0{n, s}, f0});
    out.truncated = true;
    if (sd.e0 > 0) {
        auto etas = exceptional_etas(sd);
        for (Int l : {-2, 2}) {
            Int k = 0;
            for (const auto& eta : etas) k += exceptional_tight(sd, l, eta) ? 1 : 0;
            out.entries.push_back({ExceptionalBase{l}, k});
        }
    }
    return out;
}

}  // namespace tight
