// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>

// Unevaluated-sum (hi + lo) arithmetic. Enough precision to reduce phases of
// order 1e7 cycles modulo 1 with ~1e-20 absolute error.
namespace rydberg::detail {

struct DoubleDouble {
    double hi = 0.0;
    double lo = 0.0;

    constexpr DoubleDouble() = default;
    constexpr DoubleDouble(double h) : hi(h), lo(0.0) {} // NOLINT(google-explicit-constructor)
    constexpr DoubleDouble(double h, double l) : hi(h), lo(l) {}

    double value() const noexcept { return hi + lo; }
};

inline DoubleDouble two_sum(double a, double b) noexcept {
    const double s = a + b;
    const double bb = s - a;
    const double err = (a - (s - bb)) + (b - bb);
    return {s, err};
}

inline DoubleDouble quick_two_sum(double a, double b) noexcept {
    const double s = a + b;
    return {s, b - (s - a)};
}

inline DoubleDouble two_prod(double a, double b) noexcept {
    const double p = a * b;
    return {p, std::fma(a, b, -p)};
}

inline DoubleDouble operator+(const DoubleDouble& a, const DoubleDouble& b) noexcept {
    DoubleDouble s = two_sum(a.hi, b.hi);
    const DoubleDouble t = two_sum(a.lo, b.lo);
    s.lo += t.hi;
    s = quick_two_sum(s.hi, s.lo);
    s.lo += t.lo;
    return quick_two_sum(s.hi, s.lo);
}

inline DoubleDouble operator-(const DoubleDouble& a) noexcept { return {-a.hi, -a.lo}; }

inline DoubleDouble operator-(const DoubleDouble& a, const DoubleDouble& b) noexcept {
    return a + (-b);
}

inline DoubleDouble operator*(const DoubleDouble& a, double b) noexcept {
    DoubleDouble p = two_prod(a.hi, b);
    p.lo = std::fma(a.lo, b, p.lo);
    return quick_two_sum(p.hi, p.lo);
}

inline DoubleDouble operator*(const DoubleDouble& a, const DoubleDouble& b) noexcept {
    DoubleDouble p = two_prod(a.hi, b.hi);
    p.lo += a.hi * b.lo + a.lo * b.hi;
    return quick_two_sum(p.hi, p.lo);
}

inline DoubleDouble operator/(const DoubleDouble& a, const DoubleDouble& b) noexcept {
    const double q1 = a.hi / b.hi;
    const DoubleDouble r = a - b * q1;
    const double q2 = r.hi / b.hi;
    const DoubleDouble r2 = r - b * q2;
    const double q3 = r2.hi / b.hi;
    return quick_two_sum(q1, q2) + DoubleDouble(q3);
}

/// x − floor(x), kept in double-double.
inline DoubleDouble frac_dd(const DoubleDouble& x) noexcept {
    const double int_hi = std::floor(x.hi);
    DoubleDouble r = quick_two_sum(x.hi - int_hi, x.lo);
    const double int_r = std::floor(r.hi);
    return quick_two_sum(r.hi - int_r, r.lo);
}

/// Fractional part of x in [0, 1).
inline double frac(const DoubleDouble& x) noexcept {
    const double int_hi = std::floor(x.hi);
    DoubleDouble r = two_sum(x.hi - int_hi, x.lo); // x.hi - floor(x.hi) is exact
    double f = r.hi - std::floor(r.hi);
    f += r.lo;
    f -= std::floor(f);
    return f >= 1.0 ? 0.0 : f;
}

/// 2*pi to double-double precision.
inline constexpr DoubleDouble two_pi_dd{6.283185307179586232e+00, 2.449293598294706414e-16};

} // namespace rydberg::detail
