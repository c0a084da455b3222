// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <string>
#include <string_view>
#include <vector>

#include "rydberg/autocorr.hpp"
#include "rydberg/errors.hpp"
#include "rydberg/packet.hpp"
#include "rydberg/spectrum.hpp"
#include "rydberg/units.hpp"

/// Long-time structure near t ≈ t_sr/q: the packet is a finite superposition
/// of copies of the "classical" packet ψ_cl (linear phase only), shifted in
/// time by multiples of (α/l) T_cl and weighted by b_s.
namespace rydberg {

/// Denominator q of t ≈ t_sr/q; a positive multiple of 3.
class FractionSpec {
public:
    explicit FractionSpec(int q) : q_(q) {
        if (q <= 0) {
            throw DomainError("q must be a positive integer");
        }
        if (q % 3 != 0) {
            throw DomainError("q must be a multiple of 3 (got " + std::to_string(q) + ")");
        }
    }
    int q() const noexcept { return q_; }

private:
    int q_;
};

struct IntegerConstants {
    std::int64_t l;
    std::int64_t N;
    std::int64_t alpha;
};

enum class RevivalKind { full, fractional };

inline std::string_view to_string(RevivalKind k) noexcept {
    return k == RevivalKind::full ? "full" : "fractional";
}

/// |b_s| above this counts as a nonzero weight.
inline constexpr double nonzero_weight = 1e-9;

struct SuperrevivalPrediction {
    std::int64_t nbar = 0;
    int q = 0;
    std::int64_t l = 0;
    std::int64_t alpha = 0;
    std::int64_t N = 0;
    std::vector<std::complex<double>> b;
    double time_center = 0.0; ///< t_sr/q, a.u.
    double periodicity = 0.0; ///< (3/q) t_rev, a.u.
    RevivalKind kind = RevivalKind::fractional;

    double time_center_si() const noexcept { return units::to_si(time_center); }
    double periodicity_si() const noexcept { return units::to_si(periodicity); }
    /// t_rev recovered from the periodicity.
    double t_rev() const noexcept { return periodicity * q / 3.0; }

    std::size_t nonzero_count() const noexcept {
        return static_cast<std::size_t>(std::count_if(
            b.begin(), b.end(), [](const auto& z) { return std::abs(z) > nonzero_weight; }));
    }
};

namespace detail {

/// Integer value of n̄* or a domain error.
inline std::int64_t integral_nbar(double n) {
    if (!(n >= 1.0) || n != std::floor(n) || n > 1e9) {
        throw DomainError("superrevival theory needs an integer effective nbar (got " +
                          std::to_string(n) + ")");
    }
    return static_cast<std::int64_t>(n);
}

inline std::int64_t posmod(std::int64_t a, std::int64_t m) noexcept {
    const std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

/// a·b mod m for m < 2^31, so the reduced product fits in 64 bits.
inline std::int64_t mulmod(std::int64_t a, std::int64_t b, std::int64_t m) noexcept {
    return posmod(posmod(a, m) * posmod(b, m), m);
}

inline constexpr std::int64_t max_phase_denominator = std::int64_t{1} << 31;

/// Numerator (mod den) of 3n̄k²/(4q) − k³/q over den = lcm(l, 4q), which is
/// the exponent of the quadratic+cubic phase factor at t = t_sr/q.
struct PhaseFraction {
    std::int64_t den;
    std::int64_t nbar;
    std::int64_t q;
    std::int64_t l;

    PhaseFraction(std::int64_t nbar_, std::int64_t q_, std::int64_t l_)
        : den(std::lcm(l_, 4 * q_)), nbar(nbar_), q(q_), l(l_) {
        if (den >= max_phase_denominator) {
            throw DomainError("q too large for exact phase reduction");
        }
    }

    std::int64_t nonlinear(std::int64_t k) const noexcept {
        const std::int64_t kk = posmod(k, den);
        const std::int64_t k2 = mulmod(kk, kk, den);
        const std::int64_t k3 = mulmod(k2, kk, den);
        const std::int64_t quad = mulmod(mulmod(3 * posmod(nbar, den), k2, den), den / (4 * q), den);
        const std::int64_t cubic = mulmod(k3, den / q, den);
        return posmod(quad - cubic, den);
    }

    /// α s k'/l, as a numerator over den.
    std::int64_t shift(std::int64_t alpha, std::int64_t s, std::int64_t k) const noexcept {
        return mulmod(mulmod(alpha, mulmod(s, k, den), den), den / l, den);
    }

    static std::complex<double> unit(std::int64_t num, std::int64_t den) noexcept {
        const double angle = units::two_pi * static_cast<double>(num) / static_cast<double>(den);
        return {std::cos(angle), std::sin(angle)};
    }
};

} // namespace detail

/// l = q unless 9 | q (then q/3); N = product of the full prime powers of 2n̄
/// over primes that also divide l; α = 2n̄/N. Every prime shared by 2n̄ and l
/// is removed from α, so gcd(α, l) = 1.
inline IntegerConstants integer_constants(std::int64_t nbar, FractionSpec fraction) {
    if (nbar < 1) {
        throw DomainError("integer_constants: nbar must be a positive integer");
    }
    const std::int64_t q = fraction.q();
    const std::int64_t l = (q % 9 == 0) ? q / 3 : q;
    const std::int64_t two_n = 2 * nbar;

    std::int64_t N = 1;
    std::int64_t rest = l;
    for (std::int64_t p = 2; p <= rest; ++p) {
        if (rest % p != 0) {
            continue;
        }
        while (rest % p == 0) {
            rest /= p;
        }
        std::int64_t m = two_n;
        while (m % p == 0) {
            m /= p;
            N *= p;
        }
    }
    return {l, N, two_n / N};
}

/// Overload for a real-valued effective n̄; rejects non-integers.
inline IntegerConstants integer_constants(double nbar, FractionSpec fraction) {
    return integer_constants(detail::integral_nbar(nbar), fraction);
}

/// b_s = (1/l) Σ_{k'=0}^{l−1} exp[2πi(αsk'/l + 3n̄k'²/(4q) − k'³/q)], with
/// the exponent reduced exactly as a rational before exponentiation.
/// `alpha` may override the constant from integer_constants.
inline std::vector<std::complex<double>> weight_vector(std::int64_t nbar, int q, std::int64_t l,
                                                       std::int64_t alpha) {
    const detail::PhaseFraction pf(nbar, q, l);
    std::vector<std::complex<double>> b(static_cast<std::size_t>(l));
    for (std::int64_t s = 0; s < l; ++s) {
        std::complex<double> sum{0.0, 0.0};
        for (std::int64_t k = 0; k < l; ++k) {
            const std::int64_t num = detail::posmod(pf.shift(alpha, s, k) + pf.nonlinear(k), pf.den);
            sum += detail::PhaseFraction::unit(num, pf.den);
        }
        b[static_cast<std::size_t>(s)] = sum / static_cast<double>(l);
    }
    return b;
}

inline SuperrevivalPrediction weights(std::int64_t nbar, FractionSpec fraction) {
    const IntegerConstants ic = integer_constants(nbar, fraction);
    SuperrevivalPrediction p;
    p.nbar = nbar;
    p.q = fraction.q();
    p.l = ic.l;
    p.alpha = ic.alpha;
    p.N = ic.N;
    p.b = weight_vector(nbar, p.q, ic.l, ic.alpha);

    // The time scales are those of a packet at n̄; sigma is irrelevant here.
    const TimeScales ts = timescales(AtomSpec(static_cast<double>(nbar), 0.5));
    p.time_center = ts.t_sr / p.q;
    p.periodicity = 3.0 * ts.t_rev / p.q;
    p.kind = p.nonzero_count() == 1 ? RevivalKind::full : RevivalKind::fractional;
    return p;
}

/// Whether exp[2πi(3n̄k²/(4q) − k³/q)] repeats with period l in k. The
/// expansion in shifted classical packets is exact only when it does.
inline bool phase_factor_is_periodic(std::int64_t nbar, FractionSpec fraction) {
    const IntegerConstants ic = integer_constants(nbar, fraction);
    const detail::PhaseFraction pf(nbar, fraction.q(), ic.l);
    // F(k + l) − F(k) is a quadratic in k: integer-valued everywhere iff it
    // is on three consecutive integers.
    for (std::int64_t k = 0; k < std::max<std::int64_t>(ic.l, 3); ++k) {
        if (pf.nonlinear(k + ic.l) != pf.nonlinear(k)) {
            return false;
        }
    }
    return true;
}

/// Root-sum-square difference, weighted by |c_k|, between the order-3
/// evolved coefficients and the superposition Σ_s b_s ψ_cl(t + sαT_cl/l).
/// Vanishes at t = t_sr/q whenever the nonlinear phase factor is l-periodic.
inline double reconstruct(const CoefficientSet& coeffs, const SuperrevivalPrediction& pred,
                          const AtomSpec& spec, double t) {
    const PhaseEvaluator order3(spec, PhaseModel::order3);
    const PhaseEvaluator order1(spec, PhaseModel::order1);
    const auto s3 = order3.sample(t);
    const auto s1 = order1.sample(t);
    const detail::PhaseFraction pf(pred.nbar, pred.q, pred.l);

    double acc = 0.0;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        const int k = coeffs.offsets[i];
        const double evolved = -order3.cycles(k, s3, {});
        const double linear = -order1.cycles(k, s1, {});
        const std::complex<double> lhs = std::polar(1.0, units::two_pi * evolved);

        std::complex<double> rhs{0.0, 0.0};
        for (std::int64_t s = 0; s < pred.l; ++s) {
            // exp(−2πi k s α / l), exact rational reduction
            const std::int64_t num = detail::posmod(-pf.shift(pred.alpha, s, k), pf.den);
            rhs += pred.b[static_cast<std::size_t>(s)] * detail::PhaseFraction::unit(num, pf.den);
        }
        rhs *= std::polar(1.0, units::two_pi * linear);
        acc += std::norm(coeffs.weights[i]) * std::norm(lhs - rhs);
    }
    return std::sqrt(acc);
}

/// One prediction per q, sorted by time_center.
inline std::vector<SuperrevivalPrediction> prediction_table(const AtomSpec& spec,
                                                            const std::vector<FractionSpec>& qs) {
    const std::int64_t n = detail::integral_nbar(spec.effective_nbar());
    std::vector<SuperrevivalPrediction> out;
    out.reserve(qs.size());
    for (const auto& q : qs) {
        out.push_back(weights(n, q));
    }
    std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        return a.time_center < b.time_center;
    });
    return out;
}

} // namespace rydberg
