// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <numbers>

namespace rydberg::units {

/// Hartree atomic unit of time, in seconds (CODATA 2018).
inline constexpr double atomic_time_s = 2.4188843265857e-17;

inline constexpr double picosecond = 1e-12;
inline constexpr double nanosecond = 1e-9;
inline constexpr double microsecond = 1e-6;

/// Atomic units of time -> seconds.
constexpr double to_si(double t_au) noexcept { return t_au * atomic_time_s; }

/// Seconds -> atomic units of time.
constexpr double from_si(double t_s) noexcept { return t_s / atomic_time_s; }

inline constexpr double two_pi = 2.0 * std::numbers::pi;

} // namespace rydberg::units
