// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numbers>
#include <optional>
#include <vector>

#include "rydberg/autocorr.hpp"
#include "rydberg/errors.hpp"
#include "rydberg/packet.hpp"
#include "rydberg/spectrum.hpp"
#include "rydberg/units.hpp"

namespace rydberg {

/// Ψ(φ) on a ring of radius r in the orbital plane, on an arbitrary common
/// scale (the largest single-state amplitude is rescaled to 1).
struct AngularSlice {
    double phi0 = 0.0;
    double dphi = 0.0;
    std::vector<std::complex<double>> values;
    double t = 0.0;
    double r = 0.0;

    std::size_t size() const noexcept { return values.size(); }
    double phi(std::size_t i) const noexcept { return phi0 + static_cast<double>(i) * dphi; }

    std::vector<double> magnitudes() const {
        std::vector<double> m(values.size());
        std::transform(values.begin(), values.end(), m.begin(),
                       [](const auto& z) { return std::abs(z); });
        return m;
    }
};

struct AngularGrid {
    double phi0 = -std::numbers::pi;
    double dphi = 0.0;
    std::size_t count = 0;

    /// `count` points covering [−π, π).
    static AngularGrid full_turn(std::size_t count) {
        if (count == 0) {
            throw DomainError("AngularGrid: need at least one point");
        }
        return {-std::numbers::pi, units::two_pi / static_cast<double>(count), count};
    }
};

/// ⟨r⟩ = n̄(2n̄ + 1)/2 for a circular state.
constexpr double expectation_radius(double nbar) noexcept { return 0.5 * nbar * (2.0 * nbar + 1.0); }

/// log|R_{n,n−1}(r) Y_{n−1}^{n−1}(π/2, ·)|.
///
/// R_{n,n−1}(r) = (2/n)^{n+1/2} r^{n−1} e^{−r/n} / sqrt((2n)!)
/// |Y_l^l(π/2)| = sqrt((2l+1)!/(4π)) / (2^l l!)
/// Every factorial and power is taken in log form; for n = 320 the powers
/// alone exceed 1e800.
inline double log_amplitude(int n, double r) {
    if (n < 1 || !(r > 0.0)) {
        throw DomainError("log_amplitude: need n >= 1 and r > 0");
    }
    const double nd = n;
    const double l = nd - 1.0;
    const double radial = (nd + 0.5) * std::log(2.0 / nd) - 0.5 * std::lgamma(2.0 * nd + 1.0) +
                          l * std::log(r) - r / nd;
    const double angular = 0.5 * std::lgamma(2.0 * l + 2.0) -
                           0.5 * std::log(4.0 * std::numbers::pi) - l * std::numbers::ln2 -
                           std::lgamma(l + 1.0);
    return radial + angular;
}

/// Cross-section of a circular packet (l = m = n − 1 for every component) at
/// radius r (default ⟨r⟩) and time t, using exact level energies.
inline AngularSlice slice(const CoefficientSet& coeffs, const AtomSpec& spec, double t,
                          const AngularGrid& grid, std::optional<double> radius = std::nullopt) {
    if (grid.count == 0 || !(grid.dphi > 0.0)) {
        throw DomainError("slice: empty angular grid");
    }
    if (coeffs.nbar != std::floor(coeffs.nbar)) {
        throw DomainError("slice: circular states need integer principal quantum numbers");
    }
    const double r = radius.value_or(expectation_radius(coeffs.nbar));
    if (!(r > 0.0)) {
        throw DomainError("slice: radius must be positive");
    }

    const std::size_t m = coeffs.size();
    std::vector<int> n_of(m);
    std::vector<double> log_amp(m);
    double log_max = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < m; ++j) {
        n_of[j] = static_cast<int>(coeffs.nbar) + coeffs.offsets[j];
        log_amp[j] = log_amplitude(n_of[j], r);
        log_max = std::max(log_max, log_amp[j]);
    }

    const PhaseEvaluator eval(spec, PhaseModel::exact);
    const auto sample = eval.sample(t);
    std::vector<std::complex<double>> term(m);
    for (std::size_t j = 0; j < m; ++j) {
        const double theta = units::two_pi * eval.cycles(coeffs.offsets[j], sample,
                                                         eval.rate(coeffs.offsets[j]));
        term[j] = coeffs.weights[j] * std::exp(log_amp[j] - log_max) * std::polar(1.0, -theta);
    }

    AngularSlice out{grid.phi0, grid.dphi, std::vector<std::complex<double>>(grid.count), t, r};
    for (std::size_t i = 0; i < grid.count; ++i) {
        const double phi = out.phi(i);
        std::complex<double> psi{0.0, 0.0};
        for (std::size_t j = 0; j < m; ++j) {
            const double ang = std::remainder(static_cast<double>(n_of[j] - 1) * phi, units::two_pi);
            psi += term[j] * std::polar(1.0, ang);
        }
        out.values[i] = psi;
    }
    return out;
}

/// Overlap of |Ψ| with a reference |Ψ_ref|, normalized to 1 for identical
/// shapes and maximized over rigid rotations (cyclic shifts of the grid).
/// Both slices must share one full-turn grid.
inline double resemblance(const AngularSlice& a, const AngularSlice& ref) {
    if (a.size() != ref.size() || a.size() == 0) {
        throw DomainError("resemblance: slices must share a grid");
    }
    const auto x = a.magnitudes();
    const auto y = ref.magnitudes();
    double nx = 0.0;
    double ny = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        nx += x[i] * x[i];
        ny += y[i] * y[i];
    }
    if (!(nx > 0.0) || !(ny > 0.0)) {
        return 0.0;
    }
    const std::size_t n = x.size();
    double best = 0.0;
    for (std::size_t shift = 0; shift < n; ++shift) {
        double dot = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            dot += x[(i + shift) % n] * y[i];
        }
        best = std::max(best, dot);
    }
    return best / std::sqrt(nx * ny);
}

} // namespace rydberg
