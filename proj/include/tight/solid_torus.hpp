#pragma once

#include <cstdlib>
#include <vector>

#include "tight/farey.hpp"
#include "tight/lattice.hpp"

namespace tight {

struct SolidTorusBoundary {
    Slope meridian{1, 0};
    Slope dividing;
    Int division = 1;
};

/// Signed basic-slice counts per continued fraction block, read from the
/// boundary inwards. Blocks of size zero are kept so indices line up with the
/// continued fraction coefficients.
struct RInvariants {
    std::vector<Int> values;
    std::vector<Int> block_sizes;
    friend bool operator==(const RInvariants&, const RInvariants&) = default;
    friend auto operator<=>(const RInvariants&, const RInvariants&) = default;
};

inline bool is_valid(const RInvariants& r) {
    if (r.values.size() != r.block_sizes.size()) return false;
    for (std::size_t i = 0; i < r.values.size(); ++i) {
        Int v = r.values[i], m = r.block_sizes[i];
        if (std::llabs(v) > m || (v + m) % 2 != 0) return false;
    }
    return true;
}

/// Changes coordinates so the meridian is (1,0), then twists along the
/// meridian to bring the dividing slope into [-inf, -1]. Returns the slope,
/// whose value is <= -1.
inline Slope normalize_boundary(const SolidTorusBoundary& b) {
    if (b.meridian == b.dividing) throw DomainError("meridian equals dividing slope");
    Bezout bz = bezout(b.meridian.x, b.meridian.y);
    IntMatrix2 m{bz.u, bz.v, -b.meridian.y, b.meridian.x};
    auto [x, y] = m.apply(b.dividing.x, b.dividing.y);
    if (y < 0) x = -x, y = -y;
    x = detail::mod_floor(x, y) - y;
    return reduce_slope(x, y);
}

namespace detail {

inline void require_minimal(const SolidTorusBoundary& b) {
    if (b.division != 1) throw DomainError("only boundaries with two dividing curves are supported");
}

inline Int product_formula(const std::vector<Int>& e) {
    Int p = 1;
    for (std::size_t i = 0; i + 1 < e.size(); ++i) p *= e[i] + 1;
    return std::llabs(p * e.back());
}

// Block sizes indexed from the boundary: block i comes from e_{m-i}.
inline std::vector<Int> cf_block_sizes(const std::vector<Int>& e) {
    std::vector<Int> sizes;
    for (std::size_t i = 0; i < e.size(); ++i) {
        Int c = std::llabs(e[e.size() - 1 - i]);
        sizes.push_back(i == 0 ? c - 1 : c - 2);
    }
    return sizes;
}

}  // namespace detail

inline Int count_tight(const SolidTorusBoundary& b) {
    detail::require_minimal(b);
    Slope s = normalize_boundary(b);
    if (s == Slope{1, -1}) return 1;
    return detail::product_formula(cf_expand(s.value()).coefficients);
}

/// Block sizes of the normalized slope, checked against the block
/// decomposition of its Farey path to -1.
inline std::vector<Int> tight_block_sizes(const SolidTorusBoundary& b) {
    detail::require_minimal(b);
    Slope s = normalize_boundary(b);
    if (s == Slope{1, -1}) return {};
    auto sizes = detail::cf_block_sizes(cf_expand(s.value()).coefficients);
    auto path_sizes = block_decomposition(shortest_path(s, Slope{1, -1})).sizes();
    std::vector<Int> nonzero;
    for (Int m : sizes)
        if (m > 0) nonzero.push_back(m);
    if (nonzero != path_sizes)
        throw InconsistencyError("continued fraction blocks disagree with Farey path blocks at slope " + s.str());
    return sizes;
}

/// All tuples (r_0,...,r_k) with |r_i| <= m_i and r_i = m_i mod 2, in lexicographic order.
inline std::vector<RInvariants> enumerate_rinvariants(const std::vector<Int>& sizes) {
    std::vector<RInvariants> out;
    RInvariants cur{std::vector<Int>(sizes.size()), sizes};
    auto rec = [&](auto& self, std::size_t i) -> void {
        if (i == sizes.size()) {
            out.push_back(cur);
            return;
        }
        for (Int v = -sizes[i]; v <= sizes[i]; v += 2) {
            cur.values[i] = v;
            self(self, i + 1);
        }
    };
    rec(rec, 0);
    return out;
}

inline std::vector<RInvariants> enumerate_tight(const SolidTorusBoundary& b) {
    return enumerate_rinvariants(tight_block_sizes(b));
}

/// Boundary of the solid torus glued in along A(r) when the background has
/// twisting t: meridian (1,0), dividing slope A(r)^{-1} applied to 1/t.
inline SolidTorusBoundary fiber_boundary(Int t, const Rational& r) {
    Slope src = reduce_slope(t, 1);
    return SolidTorusBoundary{Slope{1, 0}, mobius(surgery_matrix(r).inverse(), src), 1};
}

inline Int fiber_count(Int t, const Rational& r) {
    if (t > 0) throw DomainError("twisting number must be nonpositive");
    require_unit_interval(r);
    Rational s = Rational(-1) / r;
    if (Rational(t) <= s) return 0;
    auto d = cf_expand(s).coefficients;
    Int p = d[0] - t;
    for (std::size_t i = 1; i < d.size(); ++i) p *= d[i] + 1;
    return std::llabs(p);
}

/// r' = 1/(1/r + t + 1), the coefficient after the coordinate change.
inline Rational shifted_coefficient(Int t, const Rational& r) {
    return Rational(1) / (Rational(1) / r + Rational(t + 1));
}

/// Same count computed through r': |(d'_0+1)...(d'_n+1)|.
inline Int fiber_count_shifted(Int t, const Rational& r) {
    if (t > 0) throw DomainError("twisting number must be nonpositive");
    require_unit_interval(r);
    if (Rational(t) <= Rational(-1) / r) return 0;
    auto d = cf_expand(Rational(-1) / shifted_coefficient(t, r)).coefficients;
    Int p = 1;
    for (Int x : d) p *= x + 1;
    return std::llabs(p);
}

}  // namespace tight
