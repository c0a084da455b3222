// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <optional>
#include <vector>

#include <nlohmann/json.hpp>

#include "rydberg/analysis.hpp"
#include "rydberg/errors.hpp"
#include "rydberg/packet.hpp"
#include "rydberg/superrevival.hpp"
#include "rydberg/units.hpp"

// JSON records for reproducibility files and reports. Complex numbers are
// [re, im] pairs; times carry an _si (seconds) or _au suffix.
namespace rydberg {

namespace detail {

inline nlohmann::json complex_array(const std::vector<std::complex<double>>& v) {
    auto arr = nlohmann::json::array();
    for (const auto& z : v) {
        arr.push_back({z.real(), z.imag()});
    }
    return arr;
}

inline nlohmann::json optional_number(const std::optional<double>& v) {
    return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

} // namespace detail

inline void to_json(nlohmann::json& j, const CoefficientSet& c) {
    j = {{"nbar", c.nbar}, {"offsets", c.offsets}, {"weights", detail::complex_array(c.weights)}};
}

inline void from_json(const nlohmann::json& j, CoefficientSet& c) {
    c.nbar = j.at("nbar").get<double>();
    c.offsets = j.at("offsets").get<std::vector<int>>();
    c.weights.clear();
    for (const auto& w : j.at("weights")) {
        if (!w.is_array() || w.size() != 2) {
            throw DomainError("CoefficientSet JSON: weights must be [re, im] pairs");
        }
        c.weights.emplace_back(w[0].get<double>(), w[1].get<double>());
    }
    if (c.weights.size() != c.offsets.size()) {
        throw DomainError("CoefficientSet JSON: offsets and weights differ in length");
    }
}

inline void to_json(nlohmann::json& j, const SuperrevivalPrediction& p) {
    j = {{"q", p.q},
         {"l", p.l},
         {"alpha", p.alpha},
         {"N", p.N},
         {"b", detail::complex_array(p.b)},
         {"time_center_si", p.time_center_si()},
         {"periodicity_si", p.periodicity_si()},
         {"kind", to_string(p.kind)},
         {"nbar", p.nbar},
         {"time_center_au", p.time_center},
         {"periodicity_au", p.periodicity},
         {"nonzero_weights", p.nonzero_count()}};
}

inline void to_json(nlohmann::json& j, const VerificationEntry& e) {
    const auto si = [](const std::optional<double>& v) -> std::optional<double> {
        return v ? std::optional<double>(units::to_si(*v)) : std::nullopt;
    };
    j = {{"q", e.q},
         {"kind", to_string(e.kind)},
         {"time_center_si", units::to_si(e.time_center)},
         {"predicted_si", units::to_si(e.predicted_period)},
         {"measured_si", detail::optional_number(si(e.measured_period))},
         {"offset_si", detail::optional_number(si(e.offset))},
         {"deviation", detail::optional_number(e.deviation)},
         {"tolerance", e.tolerance},
         {"peak_height", e.peak_height},
         {"peak_count", e.peak_count},
         {"status", to_string(e.status)}};
}

inline void to_json(nlohmann::json& j, const VerificationReport& r) {
    j = {{"passed", r.passed()}, {"predictions", r.entries}};
}

} // namespace rydberg
