// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch_amalgamated.hpp>

#include <chrono>
#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "rydberg/analysis.hpp"
#include "rydberg/autocorr.hpp"

using namespace rydberg;
using Catch::Approx;

namespace {

double angle_distance(double a, double b) {
    const double d = std::remainder(a - b, 2.0 * std::numbers::pi);
    return std::abs(d);
}

} // namespace

TEST_CASE("phase model names round-trip", "[autocorr]") {
    for (auto m : {PhaseModel::exact, PhaseModel::order1, PhaseModel::order2, PhaseModel::order3}) {
        CHECK(parse_phase_model(to_string(m)) == m);
    }
    CHECK_THROWS_AS(parse_phase_model("order4"), DomainError);
}

TEST_CASE("truncated phases vanish at their own periods", "[autocorr][phase]") {
    const AtomSpec spec(48, 1.5);
    const TimeScales ts = timescales(spec);
    CHECK(angle_distance(phase(PhaseModel::order1, 1, ts.t_cl, spec), 0.0) < 1e-12);
    CHECK(angle_distance(phase(PhaseModel::order2, 1, ts.t_rev, spec), 0.0) < 1e-9);
    const AtomSpec big(320, 2.5);
    CHECK(angle_distance(phase(PhaseModel::order1, 7, timescales(big).t_cl * 3, big), 0.0) < 1e-12);
}

TEST_CASE("order-3 phase at t_sr/6 from exact fractions", "[autocorr][phase][oracle]") {
    const AtomSpec spec(320, 2.5);
    const TimeScales ts = timescales(spec);
    const double t = ts.t_sr / 6;
    for (int k = -13; k <= 13; ++k) {
        // cycles = k t/T_cl − k² t/t_rev + k³ t/t_sr with t/T_cl = n̄²/12,
        // t/t_rev = 3n̄/24 = 40, t/t_sr = 1/6.
        const oracle::rational cyc = oracle::rational(k * 320 * 320, 12) -
                                     oracle::rational(k * k * 40) +
                                     oracle::rational(k * k * k, 6);
        const oracle::rational f = oracle::frac(cyc);
        const double expected = 2.0 * std::numbers::pi * static_cast<double>(f.numerator()) /
                                static_cast<double>(f.denominator());
        CHECK(angle_distance(phase(PhaseModel::order3, k, t, spec), expected) < 1e-9);
    }
    // The cubic term alone for k = 2: 8/6 cycles ≡ 1/3.
    const double cubic_only =
        phase(PhaseModel::order3, 2, t, spec) - phase(PhaseModel::order2, 2, t, spec);
    CHECK(angle_distance(cubic_only, 2.0 * std::numbers::pi / 3.0) < 1e-9);
}

TEST_CASE("exact phase is accurate to 1e-6 rad at t_sr", "[autocorr][phase][oracle]") {
    for (const auto& spec : {AtomSpec(48, 1.5), AtomSpec(320, 2.5)}) {
        const TimeScales ts = timescales(spec);
        const int w = static_cast<int>(std::ceil(5 * spec.sigma()));
        for (double frac : {1.0, 1.0 / 6.0, 0.37}) {
            const double t = ts.t_sr * frac;
            for (int k = -w; k <= w; ++k) {
                const double ref = oracle::exact_phase(spec.nbar(), k, oracle::mp(t));
                CHECK(angle_distance(phase(PhaseModel::exact, k, t, spec), ref) < 1e-6);
            }
        }
    }
}

TEST_CASE("exact phase with a quantum defect", "[autocorr][phase][oracle]") {
    const AtomSpec spec(48, 1.5, 0.35);
    const double t = timescales(spec).t_sr * 0.8;
    for (int k = -8; k <= 8; ++k) {
        const double ref = oracle::exact_phase(spec.effective_nbar(), k, oracle::mp(t));
        CHECK(angle_distance(phase(PhaseModel::exact, k, t, spec), ref) < 1e-6);
    }
}

TEST_CASE("autocorrelation against the 50-digit oracle", "[autocorr][oracle]") {
    // Frozen with an independent 50-digit evaluation over absolute energies.
    struct Case {
        double nbar, sigma, t, a2;
    };
    const Case cases[] = {
        {48, 1.5, 347435.01474580241383, 1.9296528555297263e-8},
        {48, 1.5, 22235840.943731354485, 0.53022191740204699},
        {48, 1.5, 133415045.66238812691, 0.18665214315569274},
        {48, 1.5, 73378275.114313469554, 0.10715237309357938},
        {320, 2.5, 43922648777.740947131, 0.0001661288254939904},
        {320, 2.5, 1756905951109.6378852, 0.0019797233301811388},
        {320, 2.5, 891629770188.14122627, 0.10545477358702567},
    };
    for (const auto& c : cases) {
        const AtomSpec spec(c.nbar, c.sigma);
        const auto s = autocorrelation(gaussian_packet(spec), PhaseModel::exact, spec,
                                       TimeGrid{c.t, 1.0, 1});
        CHECK(s.values[0] == Approx(c.a2).margin(1e-10));
        const int w = static_cast<int>(std::ceil(default_window_sigmas * c.sigma));
        CHECK(s.values[0] ==
              Approx(oracle::autocorrelation(c.nbar, c.sigma, w, oracle::mp(c.t))).margin(1e-11));
    }
}

TEST_CASE("unit value at t = 0 and bound everywhere", "[autocorr][property]") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> n_dist(20, 400);
    std::uniform_real_distribution<double> s_dist(0.5, 4.0);
    std::uniform_real_distribution<double> d_dist(0.0, 0.5);
    std::uniform_real_distribution<double> f_dist(0.0, 1.0);
    const PhaseModel models[] = {PhaseModel::exact, PhaseModel::order1, PhaseModel::order2,
                                 PhaseModel::order3};
    for (int i = 0; i < 40; ++i) {
        const AtomSpec spec(std::floor(n_dist(rng)), s_dist(rng), d_dist(rng));
        const auto c = gaussian_packet(spec);
        const TimeScales ts = timescales(spec);
        for (auto m : models) {
            const auto at0 = autocorrelation(c, m, spec, TimeGrid{0.0, 1.0, 1});
            CHECK(at0.values[0] == Approx(1.0).margin(1e-12));
            const auto s =
                autocorrelation(c, m, spec, TimeGrid{f_dist(rng) * ts.t_sr, ts.t_cl / 7.3, 500});
            for (double v : s.values) {
                CHECK(v >= 0.0);
                CHECK(v <= 1.0 + 1e-12);
            }
        }
    }
}

TEST_CASE("single-state packet has unit autocorrelation", "[autocorr]") {
    const AtomSpec spec(100, 1.0);
    CoefficientSet c;
    c.nbar = 100;
    c.offsets = {0};
    c.weights = {{1.0, 0.0}};
    const auto s = autocorrelation(c, PhaseModel::exact, spec, TimeGrid{0.0, 12345.6, 1000});
    for (double v : s.values) {
        CHECK(v == Approx(1.0).margin(1e-14));
    }
}

TEST_CASE("coefficient phases do not change |A|^2", "[autocorr][property]") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> ph(0.0, 2.0 * std::numbers::pi);
    const AtomSpec spec(48, 1.5);
    const auto c = gaussian_packet(spec);
    const TimeGrid grid{1e6, 5e4, 2000};
    const auto ref = autocorrelation(c, PhaseModel::exact, spec, grid);
    for (int trial = 0; trial < 5; ++trial) {
        auto d = c;
        for (auto& w : d.weights) {
            w *= std::polar(1.0, ph(rng));
        }
        const auto s = autocorrelation(d, PhaseModel::exact, spec, grid);
        for (std::size_t i = 0; i < s.size(); ++i) {
            CHECK(s.values[i] == Approx(ref.values[i]).margin(1e-13));
        }
    }
}

TEST_CASE("order-2 model repeats exactly after t_rev at n = 48", "[autocorr][property]") {
    // 2n̄/3 = 32 is an integer, so every order-2 phase returns to a multiple of 2π.
    const AtomSpec spec(48, 1.5);
    const TimeScales ts = timescales(spec);
    const auto c = gaussian_packet(spec);
    const std::size_t n = 4000;
    const TimeGrid g0{0.0, ts.t_rev / 2000.0, n};
    const TimeGrid g1{ts.t_rev, ts.t_rev / 2000.0, n};
    const TimeGrid g5{5 * ts.t_rev, ts.t_rev / 2000.0, n};
    const auto a = autocorrelation(c, PhaseModel::order2, spec, g0);
    const auto b = autocorrelation(c, PhaseModel::order2, spec, g1);
    const auto e = autocorrelation(c, PhaseModel::order2, spec, g5);
    for (std::size_t i = 0; i < n; ++i) {
        CHECK(a.values[i] == Approx(b.values[i]).margin(1e-9));
        CHECK(a.values[i] == Approx(e.values[i]).margin(1e-9));
    }
}

TEST_CASE("result is independent of the worker count", "[autocorr][concurrency]") {
    const AtomSpec spec(320, 2.5);
    const auto c = gaussian_packet(spec);
    const TimeGrid grid = default_grid(spec, 1.7e12, 10007);
    const auto one = autocorrelation(c, PhaseModel::exact, spec, grid, 1);
    for (unsigned w : {2u, 3u, 8u, 0u}) {
        const auto many = autocorrelation(c, PhaseModel::exact, spec, grid, w);
        REQUIRE(many.values == one.values);
    }
}

TEST_CASE("grid validation", "[autocorr]") {
    const AtomSpec spec(48, 1.5);
    const auto c = gaussian_packet(spec);
    CHECK_THROWS_AS(autocorrelation(c, PhaseModel::exact, spec, TimeGrid{0.0, 1.0, 0}), DomainError);
    CHECK_THROWS_AS(autocorrelation(c, PhaseModel::exact, spec, TimeGrid{0.0, 0.0, 5}), DomainError);
    CHECK_THROWS_AS(autocorrelation(c, PhaseModel::exact, spec, TimeGrid{0.0, 1e300, 1u << 30}),
                    DomainError);
}

TEST_CASE("exact and order-3 superrevival maxima near 42.5 us", "[autocorr][models]") {
    const AtomSpec spec(320, 2.5);
    const TimeScales ts = timescales(spec);
    const auto c = gaussian_packet(spec);
    const double dt = units::from_si(50e-12);
    const double lo = units::from_si(42.0e-6);
    const auto count = static_cast<std::size_t>(units::from_si(1.0e-6) / dt);
    const TimeGrid grid{lo, dt, count};
    const auto ex = autocorrelation(c, PhaseModel::exact, spec, grid);
    const auto o3 = autocorrelation(c, PhaseModel::order3, spec, grid);
    const auto argmax = [](const Signal& s) {
        return static_cast<std::size_t>(
            std::max_element(s.values.begin(), s.values.end()) - s.values.begin());
    };
    // Order 3 reforms a single classical packet at t_sr/6, displaced by
    // sαT_cl/l = 25T_cl/6; with t_sr/(6T_cl) ≡ 1/3 (mod 1) it passes its
    // starting point half an orbit later.
    CHECK(std::abs(o3.time(argmax(o3)) - (ts.t_sr / 6 + ts.t_cl / 2)) <= 2 * dt);
    CHECK(o3.values[argmax(o3)] > 0.98);
    // The quartic term −5πk⁴/(12n̄) (≈ 2.6 rad at k = 2σ) moves the tallest
    // classical-period spike of the exact signal a few orbits earlier.
    CHECK(std::abs(ex.time(argmax(ex)) - o3.time(argmax(o3))) < 5 * ts.t_cl);
    CHECK(ex.values[argmax(ex)] < o3.values[argmax(o3)]);
}

TEST_CASE("exact minus order-3 phase is the quartic remainder", "[autocorr][models]") {
    const AtomSpec spec(320, 2.5);
    const double n = spec.nbar();
    const double t = timescales(spec).t_sr / 6;
    for (int k = -8; k <= 8; ++k) {
        const double diff = phase(PhaseModel::exact, k, t, spec) - phase(PhaseModel::order3, k, t, spec);
        const double kd = k;
        // E(n+k) − E(n) beyond cubic order: −5k⁴/(2n⁶) + 3k⁵/n⁷ − ...
        const double quartic = (-5.0 * std::pow(kd, 4) / (2 * std::pow(n, 6)) +
                                3.0 * std::pow(kd, 5) / std::pow(n, 7)) * t;
        CHECK(angle_distance(diff, quartic) < 0.02 * std::max(1.0, std::abs(quartic)));
    }
}

TEST_CASE("10^6 samples of a 25-term packet run in interactive time", "[autocorr][perf]") {
    const AtomSpec spec(320, 2.5);
    const auto c = gaussian_packet(spec, 4.75);
    REQUIRE(c.size() == 25);
    const auto t0 = std::chrono::steady_clock::now();
    const auto s = autocorrelation(c, PhaseModel::exact, spec, default_grid(spec, 0.0, 1000000));
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    CHECK(s.size() == 1000000);
    CHECK(secs < 10.0);
}
