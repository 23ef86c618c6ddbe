#include "qcsim/commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <ostream>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "qcsim/errors.hpp"
#include "qcsim/report.hpp"

namespace qcsim {

namespace fs = std::filesystem;

int exit_code_for(OutcomeKind kind) {
    switch (kind) {
        case OutcomeKind::Accept: return kExitAccept;
        case OutcomeKind::AbortEveSuspected: return kExitEveSuspected;
        case OutcomeKind::AbortNoKey: return kExitNoKey;
    }
    return kExitUsage;
}

void write_spectrum_csv(std::ostream& os, const NoiseSpectrum& spectrum) {
    os << "freq_hz,snl_db,single_beam_db,correlation_db\n";
    for (const auto& b : spectrum.bins) {
        fmt::print(os, "{:.1f},{:.6f},{:.6f},{:.6f}\n", b.freq_hz, b.snl_db, b.single_beam_db, b.correlation_db);
    }
}

void write_trace_csv(std::ostream& os, const BlockTraces& traces) {
    os << "point,alice,bob\n";
    for (std::size_t i = 0; i < traces.alice.samples.size(); ++i) {
        fmt::print(os, "{},{:.6f},{:.6f}\n", i, traces.alice.samples[i], traces.bob.samples[i]);
    }
}

namespace {

std::ofstream open_out(const fs::path& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ConfigError("out", fmt::format("cannot write '{}'", path.string()));
    return f;
}

RunConfig resolve_config(const fs::path& path, const std::vector<std::string>& overrides,
                         const std::optional<std::uint64_t>& seed) {
    RunConfig rc = load_config(path, overrides);
    if (seed) {
        rc.session.seed = *seed;
        rc.has_seed = true;
    }
    if (!rc.has_seed) throw ConfigError("protocol.seed", "is required (set it in the config or pass --seed)");
    validate(rc.session);
    return rc;
}

}  // namespace

int cmd_run(const RunOptions& opts, std::ostream& out, std::ostream& err) {
    try {
        const RunConfig rc = resolve_config(opts.config, opts.overrides, opts.seed);
        const SessionTranscript t = run_session(rc.session);

        fs::create_directories(opts.out_dir);
        {
            auto f = open_out(opts.out_dir / "report.json");
            nlohmann::ordered_json j = make_report(t);
            f << j.dump(2) << '\n';
        }
        for (const auto& traces : t.traces) {
            auto f = open_out(opts.out_dir / fmt::format("trace_frame_{:04d}.csv", traces.alice.frame_index));
            write_trace_csv(f, traces);
        }
        if (opts.spectrum) {
            const double r = rc.session.r;
            const Quadrature q = rc.session.key_bits.front() == '1' ? Quadrature::X : Quadrature::Y;
            const SpectrumSignal signal{rc.spectrum_signal_hz, t.amplitude * t.amplitude, q};
            const auto spec = spectrum(std::span<const double>(&r, 1), signal, rc.spectrum, rc.session.detector,
                                       derive_seed(rc.session.seed, static_cast<std::uint64_t>(StreamTag::Spectrum)));
            auto f = open_out(opts.out_dir / "spectrum.csv");
            write_spectrum_csv(f, spec);
        }

        fmt::print(out, "status: {}\n", outcome_name(t.outcome.kind));
        if (t.outcome.accepted()) fmt::print(out, "key: {}\n", t.outcome.key);
        for (auto reason : t.outcome.reasons) fmt::print(out, "reason: {}\n", reason_name(reason));
        return exit_code_for(t.outcome.kind);
    } catch (const Error& e) {
        fmt::print(err, "error: {}\n", e.what());
        return kExitUsage;
    } catch (const fs::filesystem_error& e) {
        fmt::print(err, "error: {}\n", e.what());
        return kExitUsage;
    }
}

const std::vector<std::string>& sweep_parameters() {
    static const std::vector<std::string> names{"r", "tau", "eta", "sigma_m", "fake_r", "margin"};
    return names;
}

std::vector<double> parse_grid(const std::string& grid) {
    double a = 0.0;
    double b = 0.0;
    double step = 0.0;
    char c1 = 0;
    char c2 = 0;
    std::istringstream in(grid);
    in >> a >> c1 >> b >> c2 >> step;
    if (in.fail() || c1 != ':' || c2 != ':' || !(in >> std::ws).eof()) {
        throw InputError(fmt::format("grid '{}' must look like start:stop:step", grid));
    }
    if (!(step > 0.0) || !std::isfinite(a) || !std::isfinite(b)) throw InputError("grid step must be > 0");
    std::vector<double> values;
    for (std::size_t k = 0;; ++k) {
        const double v = a + static_cast<double>(k) * step;
        if (v > b + 1e-9 * step) break;
        values.push_back(v);
    }
    if (values.empty()) throw InputError(fmt::format("grid '{}' is empty", grid));
    return values;
}

void apply_sweep_value(SessionConfig& cfg, const std::string& param, double value) {
    if (param == "r") {
        cfg.r = value;
    } else if (param == "tau") {
        cfg.attack = TapAttack{value};
    } else if (param == "eta") {
        cfg.eta_out = value;
        cfg.eta_back = value;
    } else if (param == "sigma_m") {
        const auto* q = std::get_if<QndAttack>(&cfg.attack);
        cfg.attack = QndAttack{q ? q->measured : Quadrature::X, value};
    } else if (param == "fake_r") {
        cfg.attack = InterceptResendAttack{value};
    } else if (param == "margin") {
        cfg.margin = value;
    } else {
        throw InputError(fmt::format("unknown sweep parameter '{}' (r, tau, eta, sigma_m, fake_r, margin)", param));
    }
}

int cmd_sweep(const SweepOptions& opts, std::ostream& out, std::ostream& err) {
    try {
        const auto& names = sweep_parameters();
        if (std::find(names.begin(), names.end(), opts.param) == names.end()) {
            throw InputError(fmt::format("unknown sweep parameter '{}' (r, tau, eta, sigma_m, fake_r, margin)",
                                         opts.param));
        }
        const auto grid = parse_grid(opts.grid);
        const RunConfig rc = resolve_config(opts.config, opts.overrides, opts.seed);

        if (!opts.out.parent_path().empty()) fs::create_directories(opts.out.parent_path());
        auto f = open_out(opts.out);
        f << "param,value,cd_db,ber,detection_rate\n";
        for (double value : grid) {
            SessionConfig cfg = rc.session;
            apply_sweep_value(cfg, opts.param, value);
            validate(cfg);
            if (hiding_window(SqueezeParam(cfg.r)).empty) {
                const auto cd = measure_channel(cfg, rc.calibration_slots);
                fmt::print(f, "{},{:.6f},{:.6f},,\n", opts.param, value, std::min(cd.cd_db, cd.cd_db_minus));
                continue;
            }
            double cd_sum = 0.0;
            double ber_sum = 0.0;
            std::size_t detected = 0;
            for (std::size_t rep = 0; rep < rc.sweep_repeats; ++rep) {
                // Same per-repetition seeds at every grid point.
                cfg.seed = derive_seed(rc.session.seed, rep);
                const auto t = run_session(cfg);
                cd_sum += t.verdict.final_cd_db;
                ber_sum += t.sent_bits.empty() ? 0.0 : t.key_comparison().ber;
                if (t.verdict.status == VerdictStatus::EveSuspected) ++detected;
            }
            const auto n = static_cast<double>(rc.sweep_repeats);
            fmt::print(f, "{},{:.6f},{:.6f},{:.6f},{:.6f}\n", opts.param, value, cd_sum / n, ber_sum / n,
                       static_cast<double>(detected) / n);
        }
        fmt::print(out, "wrote {} rows to {}\n", grid.size(), opts.out.string());
        return kExitAccept;
    } catch (const Error& e) {
        fmt::print(err, "error: {}\n", e.what());
        return kExitUsage;
    } catch (const fs::filesystem_error& e) {
        fmt::print(err, "error: {}\n", e.what());
        return kExitUsage;
    }
}

}  // namespace qcsim
