#include "qcsim/verification.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "qcsim/errors.hpp"
#include "qcsim/stats.hpp"

namespace qcsim {

std::size_t BlockSchedule::count() const {
    return static_cast<std::size_t>(std::count(blocked.begin(), blocked.end(), true));
}

std::vector<std::size_t> BlockSchedule::indices() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < blocked.size(); ++i) {
        if (blocked[i]) out.push_back(i);
    }
    return out;
}

BlockSchedule schedule_blocks(std::size_t n_frames, double block_prob, RngStream& rng) {
    if (!(block_prob >= 0.0 && block_prob <= 1.0)) {
        throw DomainError(fmt::format("block_prob must lie in [0, 1], got {}", block_prob));
    }
    BlockSchedule s{std::vector<bool>(n_frames, false), block_prob};
    for (std::size_t i = 0; i < n_frames; ++i) s.blocked[i] = rng.uniform() < block_prob;
    return s;
}

namespace {

FluctuationTrace record_trace(Party owner, StreamTag tag, std::size_t frame_index, const BlockSchedule& schedule,
                              std::span<const Beam> beams, const DetectorConfig& cfg, std::uint64_t seed,
                              std::uint64_t first_slot) {
    if (!schedule.is_blocked(frame_index)) {
        throw ProtocolError(fmt::format("frame {} is not blocked; no trace may be recorded", frame_index));
    }
    cfg.validate();
    const double sd = std::sqrt(cfg.electronic_noise_var);
    FluctuationTrace t{{}, owner, frame_index};
    t.samples.reserve(beams.size());
    for (std::size_t k = 0; k < beams.size(); ++k) {
        double v = beams[k].x;
        if (sd > 0.0) {
            auto rng = RngStream::for_slot(seed, tag, first_slot + k);
            v += sd * rng.normal();
        }
        t.samples.push_back(v);
    }
    return t;
}

}  // namespace

FluctuationTrace record_alice_trace(std::size_t frame_index, const BlockSchedule& schedule,
                                    std::span<const Beam> arriving, const DetectorConfig& cfg,
                                    std::uint64_t seed, std::uint64_t first_slot) {
    return record_trace(Party::Alice, StreamTag::AliceDetector, frame_index, schedule, arriving, cfg, seed,
                        first_slot);
}

FluctuationTrace record_bob_trace(std::size_t frame_index, const BlockSchedule& schedule,
                                  std::span<const Beam> idler, const DetectorConfig& cfg, std::uint64_t seed,
                                  std::uint64_t first_slot) {
    return record_trace(Party::Bob, StreamTag::BobDetector, frame_index, schedule, idler, cfg, seed, first_slot);
}

BlockTraces record_block_traces(std::size_t frame_index, const BlockSchedule& schedule,
                                std::span<const Beam> arriving, std::span<const Beam> idler,
                                const DetectorConfig& cfg, std::uint64_t seed, std::uint64_t first_slot) {
    if (arriving.size() != idler.size()) throw InputError("trace sources differ in length");
    return {record_alice_trace(frame_index, schedule, arriving, cfg, seed, first_slot),
            record_bob_trace(frame_index, schedule, idler, cfg, seed, first_slot)};
}

TraceStats trace_stats(const FluctuationTrace& alice, const FluctuationTrace& bob) {
    if (alice.samples.size() != bob.samples.size()) {
        throw InputError(fmt::format("trace length mismatch: {} vs {}", alice.samples.size(), bob.samples.size()));
    }
    if (alice.frame_index != bob.frame_index) throw InputError("traces belong to different frames");
    if (alice.samples.size() < 2) throw InputError("trace_stats needs at least 2 points");

    std::vector<double> sum(alice.samples.size());
    std::vector<double> diff(alice.samples.size());
    for (std::size_t i = 0; i < sum.size(); ++i) {
        sum[i] = alice.samples[i] + bob.samples[i];
        diff[i] = alice.samples[i] - bob.samples[i];
    }
    return {stats::pearson(alice.samples, bob.samples), stats::rms(sum), stats::rms(diff)};
}

Thresholds Thresholds::defaults_for(SqueezeParam r) {
    const double two_r = 2.0 * r.value();
    return {-std::tanh(two_r) / 2.0, (std::exp(-two_r) + 1.0) / 2.0, 0.5};
}

std::string reason_name(Reason reason) {
    switch (reason) {
        case Reason::AnticorrelationAbsent: return "anticorrelation_absent";
        case Reason::RmsSumDiffEqual: return "rms_sum_diff_equal";
        case Reason::CorrelationDegreeDrop: return "correlation_degree_drop";
    }
    return "unknown";
}

bool Verdict::has(Reason r) const {
    return std::find(reasons.begin(), reasons.end(), r) != reasons.end();
}

Verdict verdict(std::span<const TraceStats> blocked, std::span<const CdSample> cd_history, double expected_cd_db,
                const Thresholds& thresholds) {
    if (blocked.empty() && cd_history.empty()) {
        throw InputError("verdict needs at least one blocked frame or correlation-degree sample");
    }
    Verdict v;
    v.expected_cd_db = expected_cd_db;
    v.frames_analyzed = blocked.size();
    if (!blocked.empty()) {
        double pearson_sum = 0.0;
        double ratio_sum = 0.0;
        for (const auto& s : blocked) {
            pearson_sum += s.pearson;
            ratio_sum += s.ratio();
        }
        const auto n = static_cast<double>(blocked.size());
        v.mean_pearson = pearson_sum / n;
        v.mean_ratio = ratio_sum / n;
        if (v.mean_pearson > thresholds.pearson) v.reasons.push_back(Reason::AnticorrelationAbsent);
        if (v.mean_ratio > thresholds.ratio) v.reasons.push_back(Reason::RmsSumDiffEqual);
    }
    if (!cd_history.empty()) {
        const auto& last = cd_history.back();
        v.final_cd_db = std::min(last.cd_plus, last.cd_minus);
        if (v.final_cd_db < expected_cd_db - thresholds.cd_margin) {
            v.reasons.push_back(Reason::CorrelationDegreeDrop);
        }
    }
    v.status = v.reasons.empty() ? VerdictStatus::Honest : VerdictStatus::EveSuspected;
    return v;
}

}  // namespace qcsim
