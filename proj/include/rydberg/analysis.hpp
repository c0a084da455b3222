// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <optional>
#include <set>
#include <string_view>
#include <vector>

#include "rydberg/autocorr.hpp"
#include "rydberg/errors.hpp"
#include "rydberg/superrevival.hpp"

namespace rydberg {

struct PeakTrain {
    std::vector<double> times;
    std::vector<double> heights;
    double t_lo = 0.0;
    double t_hi = 0.0;

    std::size_t size() const noexcept { return times.size(); }
    bool empty() const noexcept { return times.empty(); }
};

struct PeriodicityEstimate {
    double period = 0.0;
    double spread = 0.0;
    std::optional<double> offset_from_prediction;
};

namespace detail {

/// Index range [first, last) of samples with t in [t_lo, t_hi].
inline std::pair<std::size_t, std::size_t> index_window(const Signal& s, double t_lo, double t_hi) {
    if (s.empty() || t_hi < t_lo) {
        return {0, 0};
    }
    const double a = std::ceil((t_lo - s.t0) / s.dt);
    const double b = std::floor((t_hi - s.t0) / s.dt);
    const double n = static_cast<double>(s.size());
    const auto first = static_cast<std::size_t>(std::clamp(a, 0.0, n));
    const auto last = static_cast<std::size_t>(std::clamp(b + 1.0, 0.0, n));
    return {first, std::max(first, last)};
}

inline double median(std::vector<double> v) {
    const std::size_t mid = v.size() / 2;
    std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
    const double hi = v[mid];
    if (v.size() % 2 == 1) {
        return hi;
    }
    const double lo = *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid));
    return 0.5 * (lo + hi);
}

} // namespace detail

/// Largest sample with t in [t_lo, t_hi]; 0 for an empty range.
inline double window_max(const Signal& s, double t_lo, double t_hi) {
    const auto [first, last] = detail::index_window(s, t_lo, t_hi);
    double m = 0.0;
    for (std::size_t i = first; i < last; ++i) {
        m = std::max(m, s.values[i]);
    }
    return m;
}

/// Local maxima at or above `threshold` times the window maximum, thinned
/// greedily (tallest first) so that no two are closer than `min_separation`.
/// Peak times are refined by a parabola through the three samples around
/// each maximum; heights are the sampled values.
inline PeakTrain find_peaks(const Signal& s, double threshold, double min_separation,
                            std::optional<double> t_lo = std::nullopt,
                            std::optional<double> t_hi = std::nullopt) {
    if (!(threshold > 0.0) || threshold > 1.0) {
        throw DomainError("find_peaks: threshold must lie in (0, 1]");
    }
    if (min_separation < 0.0) {
        throw DomainError("find_peaks: min_separation must be >= 0");
    }
    PeakTrain train;
    train.t_lo = t_lo.value_or(s.t0);
    train.t_hi = t_hi.value_or(s.t_end());
    const auto [first, last] = detail::index_window(s, train.t_lo, train.t_hi);
    if (last - first < 3) {
        return train;
    }
    const auto& v = s.values;
    const double vmax = *std::max_element(v.begin() + static_cast<std::ptrdiff_t>(first),
                                          v.begin() + static_cast<std::ptrdiff_t>(last));
    if (!(vmax > 0.0)) {
        return train;
    }
    const double floor_value = threshold * vmax;

    std::vector<std::size_t> candidates;
    for (std::size_t i = first + 1; i + 1 < last; ++i) {
        if (v[i] > v[i - 1] && v[i] >= v[i + 1] && v[i] >= floor_value) {
            candidates.push_back(i);
        }
    }
    std::stable_sort(candidates.begin(), candidates.end(),
                     [&](std::size_t a, std::size_t b) { return v[a] > v[b]; });

    std::set<std::size_t> kept;
    for (std::size_t i : candidates) {
        const double ti = s.time(i);
        auto it = kept.lower_bound(i);
        if (it != kept.end() && s.time(*it) - ti < min_separation) {
            continue;
        }
        if (it != kept.begin() && ti - s.time(*std::prev(it)) < min_separation) {
            continue;
        }
        kept.insert(i);
    }

    for (std::size_t i : kept) {
        const double ym = v[i - 1];
        const double y0 = v[i];
        const double yp = v[i + 1];
        const double curvature = ym - 2.0 * y0 + yp;
        double delta = 0.0;
        if (curvature < 0.0) {
            delta = std::clamp(0.5 * (ym - yp) / curvature, -0.5, 0.5);
        }
        train.times.push_back(s.time(i) + delta * s.dt);
        train.heights.push_back(y0);
    }
    return train;
}

/// Median spacing of a peak train, with the median absolute deviation of the
/// spacings as spread.
inline PeriodicityEstimate estimate_periodicity(const PeakTrain& train,
                                                std::optional<double> predicted = std::nullopt) {
    if (train.size() < 3) {
        throw InsufficientData("estimate_periodicity: need at least 3 peaks");
    }
    std::vector<double> gaps(train.size() - 1);
    for (std::size_t i = 1; i < train.size(); ++i) {
        gaps[i - 1] = train.times[i] - train.times[i - 1];
    }
    PeriodicityEstimate est;
    est.period = detail::median(gaps);
    std::vector<double> dev(gaps.size());
    std::transform(gaps.begin(), gaps.end(), dev.begin(),
                   [&](double g) { return std::abs(g - est.period); });
    est.spread = detail::median(dev);
    if (predicted) {
        est.offset_from_prediction = est.period - *predicted;
    }
    return est;
}

enum class VerifyStatus { pass, fail, not_evaluated };

inline std::string_view to_string(VerifyStatus s) noexcept {
    switch (s) {
    case VerifyStatus::pass: return "pass";
    case VerifyStatus::fail: return "fail";
    case VerifyStatus::not_evaluated: return "not_evaluated";
    }
    return "not_evaluated";
}

struct VerifyOptions {
    /// Window half-width around t_sr/q, in units of t_rev.
    double half_width_trev = 1.0;
    double threshold = 0.3;
    /// Minimum peak separation as a fraction of the predicted period.
    double min_separation_fraction = 0.75;
    double full_tolerance = 0.05;
    double fractional_tolerance = 0.10;
    /// Replaces both tolerances when set.
    std::optional<double> tolerance;
};

struct VerificationEntry {
    int q = 0;
    RevivalKind kind = RevivalKind::fractional;
    double time_center = 0.0;
    double predicted_period = 0.0;
    std::optional<double> measured_period;
    std::optional<double> offset;
    std::optional<double> deviation; ///< |measured − predicted| / predicted
    double peak_height = 0.0;
    std::size_t peak_count = 0;
    double tolerance = 0.0;
    VerifyStatus status = VerifyStatus::not_evaluated;
};

struct VerificationReport {
    std::vector<VerificationEntry> entries;

    /// True when no evaluated prediction failed.
    bool passed() const noexcept {
        return std::none_of(entries.begin(), entries.end(),
                            [](const auto& e) { return e.status == VerifyStatus::fail; });
    }
};

/// Window [t_sr/q − w, t_sr/q + w] that verify() analyses for a prediction.
inline std::pair<double, double> verification_window(const SuperrevivalPrediction& p,
                                                     const VerifyOptions& opt = {}) {
    const double w = opt.half_width_trev * p.t_rev();
    return {p.time_center - w, p.time_center + w};
}

/// Measures the peak-train periodicity of `signal` around each predicted
/// superrevival and compares it with (3/q) t_rev.
inline VerificationReport verify(const std::vector<SuperrevivalPrediction>& predictions,
                                 const Signal& signal, const VerifyOptions& opt = {}) {
    VerificationReport report;
    for (const auto& p : predictions) {
        VerificationEntry e;
        e.q = p.q;
        e.kind = p.kind;
        e.time_center = p.time_center;
        e.predicted_period = p.periodicity;
        e.tolerance = opt.tolerance.value_or(p.kind == RevivalKind::full ? opt.full_tolerance
                                                                         : opt.fractional_tolerance);
        const auto [lo, hi] = verification_window(p, opt);
        const bool covered = !signal.empty() && signal.t0 <= lo + signal.dt &&
                             signal.t_end() >= hi - signal.dt;
        if (!covered) {
            report.entries.push_back(e);
            continue;
        }
        const PeakTrain train =
            find_peaks(signal, opt.threshold, opt.min_separation_fraction * p.periodicity, lo, hi);
        e.peak_count = train.size();
        e.peak_height = window_max(signal, lo, hi);
        if (train.size() < 3) {
            e.status = VerifyStatus::fail;
            report.entries.push_back(e);
            continue;
        }
        const PeriodicityEstimate est = estimate_periodicity(train, p.periodicity);
        e.measured_period = est.period;
        e.offset = est.offset_from_prediction;
        e.deviation = std::abs(est.period - p.periodicity) / p.periodicity;
        e.status = *e.deviation <= e.tolerance ? VerifyStatus::pass : VerifyStatus::fail;
        report.entries.push_back(e);
    }
    return report;
}

} // namespace rydberg
