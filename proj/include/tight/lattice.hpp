#pragma once

#include <compare>
#include <cstdlib>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "tight/error.hpp"
#include "tight/rational.hpp"

namespace tight {

/// Primitive integer vector (x, y) up to sign; the slope value is y/x.
/// Canonical representative has x > 0, or is (0, 1) for infinity.
struct Slope {
    Int x = 0;
    Int y = 1;

    bool is_infinite() const { return x == 0; }
    Rational value() const {
        if (x == 0) throw DomainError("slope is infinite");
        return Rational(y, x);
    }

    static Slope of(const Rational& v) { return Slope{v.den(), v.num()}; }
    static Slope infinity() { return Slope{0, 1}; }

    /// "p/q" or "inf".
    std::string str() const { return x == 0 ? "inf" : value().str(); }
    static Slope parse(const std::string& text);

    friend bool operator==(const Slope&, const Slope&) = default;
    friend auto operator<=>(const Slope&, const Slope&) = default;
};

inline Slope reduce_slope(Int x, Int y) {
    if (x == 0 && y == 0) throw DomainError("zero vector has no slope");
    Int g = std::gcd(x, y);
    x /= g;
    y /= g;
    if (x < 0 || (x == 0 && y < 0)) x = -x, y = -y;
    return Slope{x, y};
}

inline Slope Slope::parse(const std::string& text) {
    if (text == "inf" || text == "infinity") return infinity();
    return of(Rational::parse(text));
}

inline Int det(Int x1, Int y1, Int x2, Int y2) {
    return detail::checked(static_cast<__int128>(x1) * y2 - static_cast<__int128>(y1) * x2);
}
inline Int det(const Slope& a, const Slope& b) { return det(a.x, a.y, b.x, b.y); }

struct IntMatrix2 {
    Int a = 1, b = 0, c = 0, d = 1;

    Int determinant() const { return det(a, c, b, d); }

    /// Inverse of a unimodular matrix.
    IntMatrix2 inverse() const {
        Int dt = determinant();
        if (dt != 1 && dt != -1) throw DomainError("matrix is not invertible over Z");
        return IntMatrix2{d * dt, -b * dt, -c * dt, a * dt};
    }

    std::pair<Int, Int> apply(Int x, Int y) const {
        return {detail::checked(static_cast<__int128>(a) * x + static_cast<__int128>(b) * y),
                detail::checked(static_cast<__int128>(c) * x + static_cast<__int128>(d) * y)};
    }

    friend IntMatrix2 operator*(const IntMatrix2& l, const IntMatrix2& r) {
        auto [a, c] = l.apply(r.a, r.c);
        auto [b, d] = l.apply(r.b, r.d);
        return IntMatrix2{a, b, c, d};
    }

    friend bool operator==(const IntMatrix2&, const IntMatrix2&) = default;
};

inline Slope mobius(const IntMatrix2& g, const Slope& s) {
    auto [x, y] = g.apply(s.x, s.y);
    return reduce_slope(x, y);
}

/// Returns (g, u, v) with u*a + v*b = g = gcd(a, b) >= 0.
struct Bezout {
    Int g, u, v;
};
inline Bezout bezout(Int a, Int b) {
    Int old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
    while (r != 0) {
        Int q = old_r / r;
        Int tmp = old_r - q * r;
        old_r = r;
        r = tmp;
        tmp = old_s - q * s;
        old_s = s;
        s = tmp;
        tmp = old_t - q * t;
        old_t = t;
        t = tmp;
    }
    if (old_r < 0) old_r = -old_r, old_s = -old_s, old_t = -old_t;
    return {old_r, old_s, old_t};
}

inline void require_unit_interval(const Rational& r) {
    if (!(r > Rational(0) && r < Rational(1))) throw DomainError("r must lie in (0,1), got " + r.str());
}

/// A(r) = (alpha alpha'; -beta -beta') for r = beta/alpha, with 0 <= alpha' < alpha
/// and alpha' * beta - alpha * beta' = 1.
inline IntMatrix2 surgery_matrix(const Rational& r) {
    require_unit_interval(r);
    Int alpha = r.den(), beta = r.num();
    Int alpha_p = detail::mod_floor(bezout(beta, alpha).u, alpha);
    Int beta_p = (alpha_p * beta - 1) / alpha;
    return IntMatrix2{alpha, alpha_p, -beta, -beta_p};
}

struct CFExpansion {
    std::vector<Int> coefficients;
    friend bool operator==(const CFExpansion&, const CFExpansion&) = default;
};

/// Negative continued fraction s = d0 - 1/(d1 - 1/(...)) with d_i <= -2 for i >= 1.
inline CFExpansion cf_expand(Rational s) {
    if (s >= Rational(-1)) throw DomainError("cf_expand needs s < -1, got " + s.str());
    CFExpansion out;
    while (true) {
        Int d = s.floor();
        out.coefficients.push_back(d);
        if (s.is_integer()) break;
        s = Rational(-1) / (s - Rational(d));
    }
    return out;
}

/// Evaluates a formal expansion from the right.
inline Rational cf_value(const std::vector<Int>& e) {
    if (e.empty()) throw DomainError("empty continued fraction");
    Rational v(e.back());
    for (std::size_t i = e.size() - 1; i-- > 0;) {
        if (v.num() == 0) throw DomainError("zero denominator while evaluating continued fraction");
        v = Rational(e[i]) - Rational(1) / v;
    }
    return v;
}

/// Slope of the boundary of a standard neighbourhood of the singular fibre
/// with twisting n, i.e. the image of (n, 1) under A(r).
inline Slope standard_nbhd_slope(Int n, const Rational& r) {
    auto [x, y] = surgery_matrix(r).apply(n, 1);
    if (x == 0) throw DomainError("degenerate denominator in neighbourhood slope");
    return reduce_slope(x, y);
}

/// 2n parallel curves of one slope, plus c contractible curves (c > 0 means overtwisted).
struct TorusDividingSet {
    Slope slope;
    Int n = 1;
    Int contractible = 0;
    friend bool operator==(const TorusDividingSet&, const TorusDividingSet&) = default;
};

inline Int intersection_number(const Slope& gamma, const TorusDividingSet& g) {
    if (g.n < 1) throw DomainError("division number must be positive");
    return 2 * g.n * std::llabs(det(gamma, g.slope));
}

/// Minimal division number of a Legendrian curve of slope gamma.
inline Int min_division(const Slope& gamma, const TorusDividingSet& g) { return intersection_number(gamma, g) / 2; }

}  // namespace tight
