// SPDX-License-Identifier: Apache-2.0

// rydberg: superrevival predictions, autocorrelation traces, circular-packet
// slices and end-to-end verification from the command line.
//
// Exit codes: 0 success, 1 verification failure, 2 usage error.

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "rydberg/csv.hpp"
#include "rydberg/json.hpp"
#include "rydberg/rydberg.hpp"

namespace {

using namespace rydberg;
using nlohmann::json;

constexpr int exit_ok = 0;
constexpr int exit_failed = 1;
constexpr int exit_usage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct AtomFlags {
    double nbar = 0.0;
    double sigma = 2.5;
    double defect = 0.0;

    void attach(CLI::App* cmd) {
        cmd->add_option("--nbar", nbar, "central principal quantum number")->required();
        cmd->add_option("--sigma", sigma, "width of the |c_n|^2 distribution")
            ->capture_default_str();
        cmd->add_option("--defect", defect, "quantum defect")->capture_default_str();
    }
    AtomSpec spec() const { return {nbar, sigma, defect}; }
};

struct OutputFlags {
    std::string format;
    std::string out;

    void attach(CLI::App* cmd, const std::string& default_format) {
        format = default_format;
        cmd->add_option("--format", format, "output format")
            ->check(CLI::IsMember({"csv", "json"}))
            ->capture_default_str();
        cmd->add_option("--out", out, "output file (default: standard output)");
    }
};

/// Writes `text` to --out or stdout.
void emit(const OutputFlags& o, const std::string& text) {
    if (o.out.empty()) {
        std::cout << text;
        std::cout.flush();
        return;
    }
    std::ofstream f(o.out, std::ios::binary);
    if (!f) {
        throw UsageError("cannot open output file '" + o.out + "'");
    }
    f << text;
}

std::vector<FractionSpec> fractions(const std::vector<int>& qs) {
    std::vector<FractionSpec> out;
    out.reserve(qs.size());
    for (int q : qs) {
        out.emplace_back(q);
    }
    return out;
}

// --- predict -------------------------------------------------------------

struct PredictCmd {
    AtomFlags atom;
    OutputFlags output;
    std::vector<int> qs{36, 18, 12, 9, 6};

    void attach(CLI::App& app) {
        auto* cmd = app.add_subcommand("predict", "superrevival times, periodicities and weights");
        atom.attach(cmd);
        output.attach(cmd, "json");
        cmd->add_option("--q", qs, "denominators q of t ~ t_sr/q (repeatable)")
            ->capture_default_str();
        cmd->callback([this] { run(); });
    }

    void run() {
        const AtomSpec spec = atom.spec();
        const auto table = prediction_table(spec, fractions(qs));
        const TimeScales ts = timescales(spec);
        if (output.format == "csv") {
            std::ostringstream os;
            os << "q,l,alpha,N,time_center_si,periodicity_si,kind,nonzero_weights\n";
            for (const auto& p : table) {
                os << p.q << ',' << p.l << ',' << p.alpha << ',' << p.N << ','
                   << csv::number(p.time_center_si()) << ',' << csv::number(p.periodicity_si())
                   << ',' << to_string(p.kind) << ',' << p.nonzero_count() << '\n';
            }
            emit(output, os.str());
            return;
        }
        json j = {{"nbar", spec.nbar()},
                  {"sigma", spec.sigma()},
                  {"defect", spec.defect()},
                  {"t_cl_si", ts.t_cl_si()},
                  {"t_rev_si", ts.t_rev_si()},
                  {"t_sr_si", ts.t_sr_si()},
                  {"predictions", table}};
        emit(output, j.dump(2) + "\n");
    }
};

// --- autocorr ------------------------------------------------------------

struct AutocorrCmd {
    AtomFlags atom;
    OutputFlags output;
    double tmin = 0.0;
    double tmax = 0.0;
    std::optional<long long> samples;
    std::string model = "exact";
    unsigned workers = 1;
    double window_sigmas = default_window_sigmas;

    void attach(CLI::App& app) {
        auto* cmd = app.add_subcommand("autocorr", "|A(t)|^2 on a uniform time grid");
        atom.attach(cmd);
        output.attach(cmd, "csv");
        cmd->add_option("--tmin", tmin, "start time in seconds")->capture_default_str();
        cmd->add_option("--tmax", tmax, "end time in seconds")->required();
        cmd->add_option("--samples", samples, "number of samples (default: spacing T_cl/20)");
        cmd->add_option("--model", model, "phase model")
            ->check(CLI::IsMember({"exact", "order1", "order2", "order3"}))
            ->capture_default_str();
        cmd->add_option("--workers", workers, "worker threads (0: all cores)")
            ->capture_default_str();
        cmd->add_option("--window", window_sigmas, "truncation half-width in units of sigma")
            ->capture_default_str();
        cmd->callback([this] { run(); });
    }

    void run() {
        if (!std::isfinite(tmin) || !std::isfinite(tmax) || tmax < tmin) {
            throw UsageError("--tmax must be >= --tmin");
        }
        if (samples && *samples < 1) {
            throw UsageError("--samples must be >= 1");
        }
        const AtomSpec spec = atom.spec();
        const double t0 = units::from_si(tmin);
        const double t1 = units::from_si(tmax);
        const double t_cl = timescales(spec).t_cl;

        TimeGrid grid;
        grid.t0 = t0;
        if (samples) {
            grid.count = static_cast<std::size_t>(*samples);
            grid.dt = grid.count > 1 ? (t1 - t0) / static_cast<double>(grid.count - 1) : t_cl / 20.0;
            if (grid.count > 1 && !(grid.dt > 0.0)) {
                throw UsageError("--tmax must exceed --tmin when --samples > 1");
            }
        } else {
            grid.dt = t_cl / 20.0;
            grid.count = static_cast<std::size_t>(std::floor((t1 - t0) / grid.dt)) + 1;
        }
        const auto coeffs = gaussian_packet(spec, window_sigmas);
        const Signal s = autocorrelation(coeffs, parse_phase_model(model), spec, grid, workers);

        if (output.format == "json") {
            std::vector<double> t_au(s.size());
            std::vector<double> t_si(s.size());
            for (std::size_t i = 0; i < s.size(); ++i) {
                t_au[i] = s.time(i);
                t_si[i] = units::to_si(t_au[i]);
            }
            json j = {{"nbar", spec.nbar()}, {"sigma", spec.sigma()}, {"defect", spec.defect()},
                      {"model", model},      {"t_au", t_au},          {"t_si", t_si},
                      {"a2", s.values}};
            emit(output, j.dump() + "\n");
            return;
        }
        std::ostringstream os;
        csv::write_signal(os, s);
        emit(output, os.str());
    }
};

// --- slice ---------------------------------------------------------------

struct SliceCmd {
    AtomFlags atom;
    OutputFlags output;
    double t = 0.0;
    long long points = 4096;
    std::optional<double> radius;

    void attach(CLI::App& app) {
        auto* cmd = app.add_subcommand("slice", "angular cross-section of a circular packet");
        atom.attach(cmd);
        output.attach(cmd, "csv");
        cmd->add_option("--t", t, "time in seconds")->capture_default_str();
        cmd->add_option("--points", points, "samples over [-pi, pi)")->capture_default_str();
        cmd->add_option("--radius", radius, "radius in a.u. (default <r>)");
        cmd->callback([this] { run(); });
    }

    void run() {
        if (points < 1) {
            throw UsageError("--points must be >= 1");
        }
        if (!std::isfinite(t)) {
            throw UsageError("--t must be finite");
        }
        const AtomSpec spec = atom.spec();
        const auto coeffs = gaussian_packet(spec);
        const AngularSlice s = slice(coeffs, spec, units::from_si(t),
                                     AngularGrid::full_turn(static_cast<std::size_t>(points)),
                                     radius);
        if (output.format == "json") {
            std::vector<double> phi(s.size());
            std::vector<double> re(s.size());
            std::vector<double> im(s.size());
            std::vector<double> ab(s.size());
            for (std::size_t i = 0; i < s.size(); ++i) {
                phi[i] = s.phi(i);
                re[i] = s.values[i].real();
                im[i] = s.values[i].imag();
                ab[i] = std::abs(s.values[i]);
            }
            json j = {{"t_si", t}, {"r_au", s.r}, {"phi", phi}, {"re", re}, {"im", im}, {"abs", ab}};
            emit(output, j.dump() + "\n");
            return;
        }
        std::ostringstream os;
        csv::write_slice(os, s);
        emit(output, os.str());
    }
};

// --- verify --------------------------------------------------------------

struct VerifyCmd {
    AtomFlags atom;
    OutputFlags output;
    std::vector<int> qs{36, 18, 12, 9, 6};
    std::optional<double> tolerance;
    unsigned workers = 1;
    int* exit_code = nullptr;

    void attach(CLI::App& app, int& code) {
        exit_code = &code;
        auto* cmd = app.add_subcommand("verify", "simulate, detect peak trains, compare with theory");
        atom.attach(cmd);
        output.attach(cmd, "json");
        cmd->add_option("--q", qs, "denominators q to check (repeatable)")->capture_default_str();
        cmd->add_option("--tolerance", tolerance, "relative period tolerance for every q");
        cmd->add_option("--workers", workers, "worker threads (0: all cores)")
            ->capture_default_str();
        cmd->callback([this] { run(); });
    }

    void run() {
        if (tolerance && !(*tolerance >= 0.0)) {
            throw UsageError("--tolerance must be >= 0");
        }
        const AtomSpec spec = atom.spec();
        const auto table = prediction_table(spec, fractions(qs));
        VerifyOptions opt;
        opt.tolerance = tolerance;

        // One grid spanning every window, clipped at t = 0.
        double lo = 0.0;
        double hi = 0.0;
        bool first = true;
        for (const auto& p : table) {
            const auto [a, b] = verification_window(p, opt);
            lo = first ? a : std::min(lo, a);
            hi = first ? b : std::max(hi, b);
            first = false;
        }
        lo = std::max(lo, 0.0);
        Signal signal;
        if (!table.empty()) {
            const double dt = timescales(spec).t_cl / 20.0;
            const auto count = static_cast<std::size_t>(std::ceil((hi - lo) / dt)) + 2;
            signal = autocorrelation(gaussian_packet(spec), PhaseModel::exact, spec,
                                     TimeGrid{lo, dt, count}, workers);
        }
        const VerificationReport report = verify(table, signal, opt);
        json j = report;
        j["nbar"] = spec.nbar();
        j["sigma"] = spec.sigma();
        j["defect"] = spec.defect();
        emit(output, j.dump(2) + "\n");
        for (const auto& e : report.entries) {
            if (e.status == VerifyStatus::fail) {
                std::cerr << "q=" << e.q << ": "
                          << (e.deviation ? "period deviation " + std::to_string(*e.deviation) +
                                                " exceeds tolerance " + std::to_string(e.tolerance)
                                          : "fewer than 3 peaks detected")
                          << '\n';
            }
        }
        *exit_code = report.passed() ? exit_ok : exit_failed;
    }
};

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Long-time revival structure of Rydberg wave packets"};
    app.require_subcommand(1);

    int code = exit_ok;
    PredictCmd predict;
    AutocorrCmd autocorr;
    SliceCmd slice_cmd;
    VerifyCmd verify_cmd;
    predict.attach(app);
    autocorr.attach(app);
    slice_cmd.attach(app);
    verify_cmd.attach(app, code);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_usage;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const rydberg::DomainError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_failed;
    }
    return code;
}
