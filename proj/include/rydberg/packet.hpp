// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <concepts>
#include <cstddef>
#include <vector>

#include "rydberg/errors.hpp"
#include "rydberg/spectrum.hpp"
#include "rydberg/units.hpp"

namespace rydberg {

/// Default truncation half-width, in units of sigma.
inline constexpr double default_window_sigmas = 7.0;

/// Expansion coefficients c_k of a packet over n = nbar + k.
struct CoefficientSet {
    double nbar = 0.0;
    std::vector<int> offsets;
    std::vector<std::complex<double>> weights;

    std::size_t size() const noexcept { return offsets.size(); }

    /// |c_k|², aligned with offsets.
    std::vector<double> populations() const {
        std::vector<double> p(weights.size());
        for (std::size_t i = 0; i < weights.size(); ++i) {
            p[i] = std::norm(weights[i]);
        }
        return p;
    }

    double norm_squared() const noexcept {
        double s = 0.0;
        for (const auto& c : weights) {
            s += std::norm(c);
        }
        return s;
    }
};

/// Anything that assigns an unnormalized population |c_k|² to an offset.
template <class D>
concept Distribution = requires(const D& d, int k) {
    { d.population(k) } -> std::convertible_to<double>;
    { d.half_width() } -> std::convertible_to<int>;
};

struct GaussianDistribution {
    double sigma;
    double window_sigmas = default_window_sigmas;

    double population(int k) const noexcept {
        const double x = static_cast<double>(k) / sigma;
        return std::exp(-0.5 * x * x);
    }
    int half_width() const noexcept { return static_cast<int>(std::ceil(window_sigmas * sigma)); }
};

/// Builds a normalized, real non-negative CoefficientSet from a distribution.
/// Offsets run over [-w, w], clipped on the low side so that every state has
/// n >= 1 and a positive effective quantum number.
template <Distribution D>
CoefficientSet build_packet(const AtomSpec& spec, const D& dist) {
    const int w = dist.half_width();
    const double lowest_allowed = std::max(1.0, spec.defect() + 1e-12);
    int k_lo = -w;
    while (k_lo <= w && spec.nbar() + k_lo < lowest_allowed) {
        ++k_lo;
    }
    if (k_lo > w) {
        throw DomainError("build_packet: truncation window is empty after clipping");
    }

    CoefficientSet out;
    out.nbar = spec.nbar();
    double total = 0.0;
    std::vector<double> pops;
    for (int k = k_lo; k <= w; ++k) {
        const double p = dist.population(k);
        out.offsets.push_back(k);
        pops.push_back(p);
        total += p;
    }
    if (!(total > 0.0)) {
        throw DomainError("build_packet: distribution has no weight in the window");
    }
    out.weights.reserve(pops.size());
    for (double p : pops) {
        out.weights.emplace_back(std::sqrt(p / total), 0.0);
    }
    return out;
}

inline CoefficientSet gaussian_packet(const AtomSpec& spec,
                                      double window_sigmas = default_window_sigmas) {
    if (!(window_sigmas > 0.0)) {
        throw DomainError("gaussian_packet: window must be positive");
    }
    return build_packet(spec, GaussianDistribution{spec.sigma(), window_sigmas});
}

/// Excitation pulse length matching a packet of width sigma: (n̄*)³/(2σ) a.u.
/// This is a calibration against two reported (n̄, σ, pulse) triples, not a
/// model of the excitation.
inline double pulse_duration(const AtomSpec& spec) noexcept {
    const double n = spec.effective_nbar();
    return units::to_si(n * n * n / (2.0 * spec.sigma()));
}

} // namespace rydberg
