// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <numbers>
#include <sstream>

#include "rydberg/detail/double_double.hpp"
#include "rydberg/errors.hpp"
#include "rydberg/units.hpp"

/// Hydrogenic (optionally quantum-defected) level structure and the three
/// characteristic clocks of a wave packet centred on nbar. Everything is in
/// hartree atomic units.
namespace rydberg {

/// Central quantum number, distribution width and quantum defect of a packet.
class AtomSpec {
public:
    AtomSpec(double nbar, double sigma, double defect = 0.0)
        : nbar_(nbar), sigma_(sigma), defect_(defect) {
        if (!std::isfinite(nbar) || !std::isfinite(sigma) || !std::isfinite(defect)) {
            throw DomainError("AtomSpec: non-finite parameter");
        }
        if (nbar < 1.0) {
            throw DomainError("AtomSpec: nbar must be >= 1");
        }
        if (sigma <= 0.0) {
            throw DomainError("AtomSpec: sigma must be > 0");
        }
        if (defect < 0.0) {
            throw DomainError("AtomSpec: quantum defect must be >= 0");
        }
        if (nbar - defect <= sigma) {
            std::ostringstream os;
            os << "AtomSpec: effective nbar " << nbar - defect << " must exceed sigma " << sigma;
            throw DomainError(os.str());
        }
    }

    double nbar() const noexcept { return nbar_; }
    double sigma() const noexcept { return sigma_; }
    double defect() const noexcept { return defect_; }
    /// n̄* = n̄ − δ, the quantum number that sets every time scale.
    double effective_nbar() const noexcept { return nbar_ - defect_; }

    AtomSpec with_sigma(double sigma) const { return {nbar_, sigma, defect_}; }

private:
    double nbar_;
    double sigma_;
    double defect_;
};

/// Classical period, revival time and superrevival time (a.u.).
struct TimeScales {
    double t_cl;
    double t_rev;
    double t_sr;

    double t_cl_si() const noexcept { return units::to_si(t_cl); }
    double t_rev_si() const noexcept { return units::to_si(t_rev); }
    double t_sr_si() const noexcept { return units::to_si(t_sr); }
};

/// Bound-state energy −1/(2(n−δ)²).
inline double energy(double n, double defect = 0.0) {
    const double n_eff = n - defect;
    if (!(n_eff > 0.0)) {
        throw DomainError("energy: effective quantum number must be positive");
    }
    return -0.5 / (n_eff * n_eff);
}

inline TimeScales timescales(const AtomSpec& spec) noexcept {
    const double n = spec.effective_nbar();
    const double t_cl = 2.0 * std::numbers::pi * n * n * n;
    const double t_rev = (2.0 * n / 3.0) * t_cl;
    const double t_sr = (3.0 * n / 4.0) * t_rev;
    return {t_cl, t_rev, t_sr};
}

namespace detail {

/// The three clocks again, in double-double, for phase reduction.
struct PreciseScales {
    DoubleDouble t_cl;
    DoubleDouble t_rev;
    DoubleDouble t_sr;
};

inline PreciseScales precise_timescales(double n_eff) noexcept {
    const DoubleDouble n3 = DoubleDouble(n_eff) * n_eff * n_eff;
    const DoubleDouble t_cl = two_pi_dd * n3;
    const DoubleDouble t_rev = t_cl * (2.0 * n_eff) / DoubleDouble(3.0);
    const DoubleDouble t_sr = t_rev * (3.0 * n_eff) / DoubleDouble(4.0);
    return {t_cl, t_rev, t_sr};
}

/// (E_{n+k} − E_n)/(2π) in cycles per atomic time unit, evaluated without the
/// cancellation of subtracting two nearly equal energies.
inline DoubleDouble transition_frequency(double n_eff, int k) {
    const double n_k = n_eff + k;
    if (!(n_k > 0.0)) {
        throw DomainError("transition_frequency: effective quantum number must be positive");
    }
    // k (2n + k) / (2 n² (n+k)²)
    const DoubleDouble num = two_sum(2.0 * n_eff, static_cast<double>(k)) * static_cast<double>(k);
    const DoubleDouble n2 = two_prod(n_eff, n_eff);
    const DoubleDouble nk = two_sum(n_eff, static_cast<double>(k));
    const DoubleDouble den = n2 * (nk * nk) * 2.0;
    return num / den / two_pi_dd;
}

} // namespace detail

} // namespace rydberg
