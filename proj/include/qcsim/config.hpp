#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "qcsim/detection.hpp"
#include "qcsim/session.hpp"

namespace qcsim {

/// Everything a CLI invocation reads from the config file.
struct RunConfig {
    SessionConfig session;
    bool has_seed = false;
    SpectrumRequest spectrum;
    double spectrum_signal_hz = 2.0e6;
    std::size_t sweep_repeats = 5;
    std::size_t calibration_slots = 100000;
};

/// Parses INI-style text with the sections [protocol], [channel],
/// [detector], [attack], [thresholds], [spectrum] and [sweep]. Each
/// override has the form "section.key=value" and is applied on top of the
/// file. Unknown keys and malformed values raise ConfigError naming the
/// field. The returned session config has not been validated.
RunConfig parse_config(const std::string& text, const std::vector<std::string>& overrides = {});

RunConfig load_config(const std::filesystem::path& path, const std::vector<std::string>& overrides = {});

}  // namespace qcsim
