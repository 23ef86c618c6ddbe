#include "qcsim/report.hpp"

#include <algorithm>
#include <limits>

#include "qcsim/errors.hpp"

#ifndef QCSIM_VERSION
#define QCSIM_VERSION "0.0.0"
#endif

namespace qcsim {

namespace {
std::string bits_to_string(const std::vector<std::uint8_t>& bits) {
    std::string s;
    s.reserve(bits.size());
    for (auto b : bits) s.push_back(b ? '1' : '0');
    return s;
}
}  // namespace

RunReport make_report(const SessionTranscript& t) {
    RunReport r;
    r.version = QCSIM_VERSION;
    r.seed = t.config.seed;
    r.status = outcome_name(t.outcome.kind);
    r.key = t.outcome.key;
    r.ber = t.key_comparison().ber;
    r.attack = attack_name(t.config.attack);
    r.r = t.config.r;
    r.signal_power = t.amplitude * t.amplitude;
    r.frames = t.frames.size();
    r.slots_per_frame = t.config.slots_per_frame;
    r.sent_bits = bits_to_string(t.sent_bits);
    r.decoded_bits = bits_to_string(t.decoded_bits);
    r.blocked_frames = t.schedule.indices();
    r.cd_db.expected = t.expected_cd_db;

    double sum = 0.0;
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    std::size_t n = 0;
    for (const auto& f : t.frames) {
        if (f.decoded) r.confidences.push_back(f.decoded->confidence);
        if (!f.cd) continue;
        sum += f.cd->cd_db;
        lo = std::min(lo, f.cd->cd_db);
        hi = std::max(hi, f.cd->cd_db);
        ++n;
    }
    if (n > 0) {
        r.cd_db.frame_mean = sum / static_cast<double>(n);
        r.cd_db.frame_min = lo;
        r.cd_db.frame_max = hi;
    }
    if (!t.cd_history.empty()) {
        r.cd_db.final_plus = t.cd_history.back().cd_plus;
        r.cd_db.final_minus = t.cd_history.back().cd_minus;
    }
    r.mean_pearson = t.verdict.mean_pearson;
    r.mean_rms_ratio = t.verdict.mean_ratio;
    for (auto reason : t.verdict.reasons) r.reasons.push_back(reason_name(reason));
    r.eve_decoded_bits = bits_to_string(t.eve.decoded_bits);
    return r;
}

void to_json(nlohmann::ordered_json& j, const CdStats& s) {
    j = nlohmann::ordered_json{{"final_plus", s.final_plus}, {"final_minus", s.final_minus},
                               {"expected", s.expected},     {"frame_mean", s.frame_mean},
                               {"frame_min", s.frame_min},   {"frame_max", s.frame_max}};
}

void from_json(const nlohmann::ordered_json& j, CdStats& s) {
    j.at("final_plus").get_to(s.final_plus);
    j.at("final_minus").get_to(s.final_minus);
    j.at("expected").get_to(s.expected);
    j.at("frame_mean").get_to(s.frame_mean);
    j.at("frame_min").get_to(s.frame_min);
    j.at("frame_max").get_to(s.frame_max);
}

void to_json(nlohmann::ordered_json& j, const RunReport& r) {
    j = nlohmann::ordered_json{
        {"schema_version", r.schema_version},
        {"version", r.version},
        {"seed", r.seed},
        {"status", r.status},
        {"key", r.key},
        {"ber", r.ber},
        {"attack", r.attack},
        {"r", r.r},
        {"signal_power", r.signal_power},
        {"frames", r.frames},
        {"slots_per_frame", r.slots_per_frame},
        {"sent_bits", r.sent_bits},
        {"decoded_bits", r.decoded_bits},
        {"confidences", r.confidences},
        {"blocked_frames", r.blocked_frames},
        {"cd_db", r.cd_db},
        {"mean_pearson", r.mean_pearson},
        {"mean_rms_ratio", r.mean_rms_ratio},
        {"reasons", r.reasons},
        {"eve_decoded_bits", r.eve_decoded_bits},
    };
}

void from_json(const nlohmann::ordered_json& j, RunReport& r) {
    j.at("schema_version").get_to(r.schema_version);
    if (r.schema_version != kReportSchemaVersion) {
        throw InputError("unsupported report schema version " + std::to_string(r.schema_version));
    }
    j.at("version").get_to(r.version);
    j.at("seed").get_to(r.seed);
    j.at("status").get_to(r.status);
    j.at("key").get_to(r.key);
    j.at("ber").get_to(r.ber);
    j.at("attack").get_to(r.attack);
    j.at("r").get_to(r.r);
    j.at("signal_power").get_to(r.signal_power);
    j.at("frames").get_to(r.frames);
    j.at("slots_per_frame").get_to(r.slots_per_frame);
    j.at("sent_bits").get_to(r.sent_bits);
    j.at("decoded_bits").get_to(r.decoded_bits);
    j.at("confidences").get_to(r.confidences);
    j.at("blocked_frames").get_to(r.blocked_frames);
    j.at("cd_db").get_to(r.cd_db);
    j.at("mean_pearson").get_to(r.mean_pearson);
    j.at("mean_rms_ratio").get_to(r.mean_rms_ratio);
    j.at("reasons").get_to(r.reasons);
    j.at("eve_decoded_bits").get_to(r.eve_decoded_bits);
}

}  // namespace qcsim
