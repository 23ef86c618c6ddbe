#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qcsim/config.hpp"
#include "qcsim/detection.hpp"
#include "qcsim/session.hpp"
#include "qcsim/verification.hpp"

namespace qcsim {

/// Process exit codes of the CLI.
enum ExitCode : int {
    kExitAccept = 0,
    kExitUsage = 1,
    kExitEveSuspected = 2,
    kExitNoKey = 3,
};

int exit_code_for(OutcomeKind kind);

struct RunOptions {
    std::filesystem::path config;
    std::vector<std::string> overrides;
    std::optional<std::uint64_t> seed;
    std::filesystem::path out_dir = ".";
    bool spectrum = false;
};

/// Runs one session and writes report.json, trace_frame_<k>.csv for every
/// blocked frame and, on request, spectrum.csv. Returns the exit code;
/// configuration problems are reported on `err` with code 1.
int cmd_run(const RunOptions& opts, std::ostream& out, std::ostream& err);

struct SweepOptions {
    std::filesystem::path config;
    std::vector<std::string> overrides;
    std::optional<std::uint64_t> seed;
    std::string param;
    std::string grid;
    std::filesystem::path out;
};

/// Parameters accepted by cmd_sweep.
const std::vector<std::string>& sweep_parameters();

/// "a:b:step" with step > 0; throws InputError for a malformed or empty grid.
std::vector<double> parse_grid(const std::string& grid);

/// Sets `param` to `value` in the config; throws InputError for unknown names.
void apply_sweep_value(SessionConfig& cfg, const std::string& param, double value);

/// Writes `param,value,cd_db,ber,detection_rate`, one row per grid point.
/// Rows whose r leaves no concealment window carry a channel-only cd_db and
/// blank ber and detection_rate.
int cmd_sweep(const SweepOptions& opts, std::ostream& out, std::ostream& err);

void write_spectrum_csv(std::ostream& os, const NoiseSpectrum& spectrum);
void write_trace_csv(std::ostream& os, const BlockTraces& traces);

}  // namespace qcsim
