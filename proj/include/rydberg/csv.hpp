// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdio>
#include <ostream>
#include <string>

#include "rydberg/autocorr.hpp"
#include "rydberg/circular.hpp"
#include "rydberg/units.hpp"

namespace rydberg::csv {

/// Scientific notation with 12 significant digits, '.' decimal point.
inline std::string number(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.11e", x);
    return buf;
}

/// Header `t_au,t_si,a2`, one row per sample in ascending t.
inline void write_signal(std::ostream& os, const Signal& s) {
    os << "t_au,t_si,a2\n";
    for (std::size_t i = 0; i < s.size(); ++i) {
        const double t = s.time(i);
        os << number(t) << ',' << number(units::to_si(t)) << ',' << number(s.values[i]) << '\n';
    }
}

/// Header `phi,re,im,abs`.
inline void write_slice(std::ostream& os, const AngularSlice& s) {
    os << "phi,re,im,abs\n";
    for (std::size_t i = 0; i < s.size(); ++i) {
        const auto z = s.values[i];
        os << number(s.phi(i)) << ',' << number(z.real()) << ',' << number(z.imag()) << ','
           << number(std::abs(z)) << '\n';
    }
}

} // namespace rydberg::csv
