#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "qcsim/session.hpp"

namespace qcsim {

inline constexpr int kReportSchemaVersion = 1;

struct CdStats {
    double final_plus = 0.0;
    double final_minus = 0.0;
    double expected = 0.0;
    double frame_mean = 0.0;
    double frame_min = 0.0;
    double frame_max = 0.0;

    friend bool operator==(const CdStats&, const CdStats&) = default;
};

/// Machine-readable summary of one session.
struct RunReport {
    int schema_version = kReportSchemaVersion;
    std::string version;
    std::uint64_t seed = 0;
    std::string status;
    std::string key;
    double ber = 0.0;
    std::string attack;
    double r = 0.0;
    double signal_power = 0.0;
    std::size_t frames = 0;
    std::size_t slots_per_frame = 0;
    std::string sent_bits;
    std::string decoded_bits;
    std::vector<double> confidences;
    std::vector<std::size_t> blocked_frames;
    CdStats cd_db;
    double mean_pearson = 0.0;
    double mean_rms_ratio = 0.0;
    std::vector<std::string> reasons;
    std::string eve_decoded_bits;

    friend bool operator==(const RunReport&, const RunReport&) = default;
};

RunReport make_report(const SessionTranscript& t);

void to_json(nlohmann::ordered_json& j, const CdStats& s);
void from_json(const nlohmann::ordered_json& j, CdStats& s);
void to_json(nlohmann::ordered_json& j, const RunReport& r);
/// Throws InputError on an unknown schema version.
void from_json(const nlohmann::ordered_json& j, RunReport& r);

}  // namespace qcsim
