#pragma once

#include <compare>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <string>

#include "tight/error.hpp"

namespace tight {

using Int = std::int64_t;

namespace detail {

inline Int checked(__int128 v) {
    if (v > INT64_MAX || v < INT64_MIN) throw DomainError("integer overflow");
    return static_cast<Int>(v);
}

inline Int floor_div(Int a, Int b) {
    Int q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

inline Int mod_floor(Int a, Int b) { return a - floor_div(a, b) * b; }

}  // namespace detail

// Exact rational with positive denominator, always in lowest terms.
class Rational {
public:
    constexpr Rational() = default;
    Rational(Int n) : num_(n), den_(1) {}  // NOLINT(implicit)
    Rational(Int n, Int d) { assign(n, d); }

    Int num() const { return num_; }
    Int den() const { return den_; }
    bool is_integer() const { return den_ == 1; }

    Int floor() const { return detail::floor_div(num_, den_); }

    Rational operator-() const { return Rational(-num_, den_); }

    friend Rational operator+(const Rational& a, const Rational& b) {
        __int128 n = static_cast<__int128>(a.num_) * b.den_ + static_cast<__int128>(b.num_) * a.den_;
        __int128 d = static_cast<__int128>(a.den_) * b.den_;
        return from_wide(n, d);
    }
    friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return from_wide(static_cast<__int128>(a.num_) * b.num_, static_cast<__int128>(a.den_) * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) throw DomainError("division by zero");
        return from_wide(static_cast<__int128>(a.num_) * b.den_, static_cast<__int128>(a.den_) * b.num_);
    }

    friend bool operator==(const Rational&, const Rational&) = default;
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        __int128 l = static_cast<__int128>(a.num_) * b.den_;
        __int128 r = static_cast<__int128>(b.num_) * a.den_;
        return l <=> r;
    }

    /// Always "p/q", including integers ("-3/1").
    std::string str() const { return std::to_string(num_) + "/" + std::to_string(den_); }

    /// Accepts "p/q" or a bare integer "p".
    static Rational parse(const std::string& text) {
        auto slash = text.find('/');
        try {
            std::size_t used = 0;
            if (slash == std::string::npos) {
                Int n = std::stoll(text, &used);
                if (used != text.size()) throw DomainError("bad rational: " + text);
                return Rational(n);
            }
            std::string a = text.substr(0, slash), b = text.substr(slash + 1);
            std::size_t ua = 0, ub = 0;
            Int n = std::stoll(a, &ua);
            Int d = std::stoll(b, &ub);
            if (ua != a.size() || ub != b.size()) throw DomainError("bad rational: " + text);
            return Rational(n, d);
        } catch (const std::logic_error&) {
            throw DomainError("bad rational: " + text);
        }
    }

private:
    static Rational from_wide(__int128 n, __int128 d) {
        if (d == 0) throw DomainError("zero denominator");
        if (d < 0) n = -n, d = -d;
        __int128 a = n < 0 ? -n : n, b = d;
        while (b != 0) {
            __int128 t = a % b;
            a = b;
            b = t;
        }
        Rational r;
        r.num_ = detail::checked(n / a);
        r.den_ = detail::checked(d / a);
        return r;
    }

    void assign(Int n, Int d) {
        if (d == 0) throw DomainError("zero denominator");
        if (d < 0) n = -n, d = -d;
        Int g = std::gcd(n, d);
        num_ = n / g;
        den_ = d / g;
    }

    Int num_ = 0;
    Int den_ = 1;
};

inline std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace tight
