// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "rydberg/detail/double_double.hpp"
#include "rydberg/errors.hpp"
#include "rydberg/packet.hpp"
#include "rydberg/spectrum.hpp"
#include "rydberg/units.hpp"

namespace rydberg {

/// Exact level energies, or the expansion about n̄ truncated after the
/// linear, quadratic or cubic term in k.
enum class PhaseModel { exact, order1, order2, order3 };

inline std::string_view to_string(PhaseModel m) noexcept {
    switch (m) {
    case PhaseModel::exact: return "exact";
    case PhaseModel::order1: return "order1";
    case PhaseModel::order2: return "order2";
    case PhaseModel::order3: return "order3";
    }
    return "exact";
}

inline PhaseModel parse_phase_model(std::string_view s) {
    if (s == "exact") return PhaseModel::exact;
    if (s == "order1") return PhaseModel::order1;
    if (s == "order2") return PhaseModel::order2;
    if (s == "order3") return PhaseModel::order3;
    throw DomainError("unknown phase model '" + std::string(s) + "'");
}

/// Uniform time grid t_i = t0 + i*dt, i in [0, count).
struct TimeGrid {
    double t0 = 0.0;
    double dt = 1.0;
    std::size_t count = 1;

    double at(std::size_t i) const noexcept { return std::fma(static_cast<double>(i), dt, t0); }

    void validate() const {
        if (count == 0) {
            throw DomainError("TimeGrid: count must be >= 1");
        }
        if (!(dt > 0.0) || !std::isfinite(dt) || !std::isfinite(t0)) {
            throw DomainError("TimeGrid: dt must be positive and finite");
        }
        if (!std::isfinite(at(count - 1)) || !std::isfinite(static_cast<double>(count) * dt)) {
            throw DomainError("TimeGrid: grid end is not finite");
        }
    }
};

/// Sampled |A(t)|².
struct Signal {
    double t0 = 0.0;
    double dt = 1.0;
    std::vector<double> values;

    std::size_t size() const noexcept { return values.size(); }
    bool empty() const noexcept { return values.empty(); }
    double time(std::size_t i) const noexcept { return std::fma(static_cast<double>(i), dt, t0); }
    double t_end() const noexcept { return values.empty() ? t0 : time(values.size() - 1); }
};

/// Precomputed per-offset phase rates for one (spec, model) pair. Phases are
/// carried in cycles as double-double and reduced modulo 1 before the
/// trigonometric evaluation, so t ~ 1e13 a.u. costs no accuracy.
class PhaseEvaluator {
public:
    PhaseEvaluator(const AtomSpec& spec, PhaseModel model) : model_(model) {
        const double n = spec.effective_nbar();
        if (model == PhaseModel::exact) {
            n_eff_ = n;
        } else {
            scales_ = detail::precise_timescales(n);
        }
    }

    PhaseModel model() const noexcept { return model_; }

    /// Precomputes the exact-model rate for offset k (ignored by the others).
    detail::DoubleDouble rate(int k) const {
        if (model_ != PhaseModel::exact) {
            return {};
        }
        return detail::transition_frequency(n_eff_, k);
    }

    /// Per-sample quantities shared by every offset: t and the reduced
    /// ratios t/T_cl, t/t_rev, t/t_sr.
    struct Sample {
        double t = 0.0;
        detail::DoubleDouble r_cl, r_rev, r_sr;
    };

    Sample sample(double t) const noexcept {
        using detail::DoubleDouble;
        Sample s{t, {}, {}, {}};
        if (model_ != PhaseModel::exact) {
            s.r_cl = detail::frac_dd(DoubleDouble(t) / scales_.t_cl);
            s.r_rev = detail::frac_dd(DoubleDouble(t) / scales_.t_rev);
            s.r_sr = detail::frac_dd(DoubleDouble(t) / scales_.t_sr);
        }
        return s;
    }

    /// Phase θ_k(t)/(2π) modulo 1, in [0, 1).
    double cycles(int k, const Sample& s, const detail::DoubleDouble& rate) const noexcept {
        using detail::frac;
        if (model_ == PhaseModel::exact) {
            return frac(rate * s.t);
        }
        const auto kd = static_cast<double>(k);
        // k, k², k³ are exact integers; the ratios were reduced mod 1 first.
        double c = frac(s.r_cl * kd);
        if (model_ != PhaseModel::order1) {
            c -= frac(s.r_rev * (kd * kd));
        }
        if (model_ == PhaseModel::order3) {
            c += frac(s.r_sr * (kd * kd * kd));
        }
        c -= std::floor(c);
        return c >= 1.0 ? 0.0 : c;
    }

    double cycles(int k, double t) const { return cycles(k, sample(t), rate(k)); }

private:
    PhaseModel model_;
    double n_eff_ = 0.0;
    detail::PreciseScales scales_{};
};

/// θ_k(t) in [0, 2π): (E_{n̄+k} − E_{n̄}) t for the exact model, otherwise
/// 2π(k t/T_cl − k² t/t_rev + k³ t/t_sr) truncated to the model's order.
inline double phase(PhaseModel model, int k, double t, const AtomSpec& spec) {
    const double c = PhaseEvaluator(spec, model).cycles(k, t);
    return units::two_pi * c;
}

namespace detail {

inline void autocorrelation_range(const PhaseEvaluator& eval, const std::vector<int>& offsets,
                                  const std::vector<double>& pops,
                                  const std::vector<DoubleDouble>& rates, const TimeGrid& grid,
                                  std::size_t begin, std::size_t end, double* out) {
    for (std::size_t i = begin; i < end; ++i) {
        const auto sample = eval.sample(grid.at(i));
        double re = 0.0;
        double im = 0.0;
        for (std::size_t j = 0; j < offsets.size(); ++j) {
            const double angle = units::two_pi * eval.cycles(offsets[j], sample, rates[j]);
            re += pops[j] * std::cos(angle);
            im -= pops[j] * std::sin(angle);
        }
        out[i] = re * re + im * im;
    }
}

} // namespace detail

/// |A(t)|² = |Σ_k |c_k|² exp(−iθ_k(t))|² on a grid.
///
/// Samples are independent; `workers` threads each take a contiguous block.
/// The result does not depend on the number of workers. workers == 0 picks
/// the hardware concurrency.
inline Signal autocorrelation(const CoefficientSet& coeffs, PhaseModel model,
                              const AtomSpec& spec, const TimeGrid& grid,
                              unsigned workers = 1) {
    grid.validate();
    if (coeffs.offsets.size() != coeffs.weights.size() || coeffs.offsets.empty()) {
        throw DomainError("autocorrelation: malformed coefficient set");
    }
    const PhaseEvaluator eval(spec, model);
    const std::vector<double> pops = coeffs.populations();
    std::vector<detail::DoubleDouble> rates;
    rates.reserve(coeffs.offsets.size());
    for (int k : coeffs.offsets) {
        rates.push_back(eval.rate(k));
    }

    Signal s{grid.t0, grid.dt, std::vector<double>(grid.count)};
    if (workers == 0) {
        workers = std::max(1u, std::thread::hardware_concurrency());
    }
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, grid.count));
    if (workers <= 1) {
        detail::autocorrelation_range(eval, coeffs.offsets, pops, rates, grid, 0, grid.count,
                                      s.values.data());
        return s;
    }
    std::vector<std::jthread> pool;
    const std::size_t block = (grid.count + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
        const std::size_t begin = w * block;
        const std::size_t end = std::min(grid.count, begin + block);
        if (begin >= end) {
            break;
        }
        pool.emplace_back([&, begin, end] {
            detail::autocorrelation_range(eval, coeffs.offsets, pops, rates, grid, begin, end,
                                          s.values.data());
        });
    }
    pool.clear();
    return s;
}

/// Grid of `count` samples from t0 at the default spacing T_cl/20.
inline TimeGrid default_grid(const AtomSpec& spec, double t0, std::size_t count) {
    return {t0, timescales(spec).t_cl / 20.0, count};
}

} // namespace rydberg
