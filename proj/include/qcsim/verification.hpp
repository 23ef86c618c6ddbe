#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "qcsim/detection.hpp"
#include "qcsim/quadrature.hpp"
#include "qcsim/rng.hpp"

namespace qcsim {

/// Frames in which Alice interrupts the signal beam. Drawn from Alice's
/// private randomness and disclosed only after the session.
struct BlockSchedule {
    std::vector<bool> blocked;
    double block_prob = 0.0;

    bool is_blocked(std::size_t frame) const { return frame < blocked.size() && blocked[frame]; }
    std::size_t count() const;
    std::vector<std::size_t> indices() const;
};

/// Each frame is blocked independently with probability block_prob.
BlockSchedule schedule_blocks(std::size_t n_frames, double block_prob, RngStream& rng);

enum class Party { Alice, Bob };

struct FluctuationTrace {
    std::vector<double> samples;
    Party owner;
    std::size_t frame_index;
};

/// Alice's oscilloscope: amplitude fluctuation of whatever beam reaches her
/// while blocked, plus her detector's electronic noise. Slot k of the frame
/// uses substream first_slot + k. Throws ProtocolError for an unblocked frame.
FluctuationTrace record_alice_trace(std::size_t frame_index, const BlockSchedule& schedule,
                                    std::span<const Beam> arriving, const DetectorConfig& cfg,
                                    std::uint64_t seed, std::uint64_t first_slot);

/// Bob's oscilloscope: the retained idler's amplitude quadrature plus his
/// electronic noise (the signal port is dark during the block).
FluctuationTrace record_bob_trace(std::size_t frame_index, const BlockSchedule& schedule,
                                  std::span<const Beam> idler, const DetectorConfig& cfg, std::uint64_t seed,
                                  std::uint64_t first_slot);

struct BlockTraces {
    FluctuationTrace alice;
    FluctuationTrace bob;
};

BlockTraces record_block_traces(std::size_t frame_index, const BlockSchedule& schedule,
                                std::span<const Beam> arriving, std::span<const Beam> idler,
                                const DetectorConfig& cfg, std::uint64_t seed, std::uint64_t first_slot);

struct TraceStats {
    double pearson;
    double rms_sum;
    double rms_diff;

    double ratio() const { return rms_diff > 0.0 ? rms_sum / rms_diff : 0.0; }
};

/// Throws InputError for misaligned traces or fewer than two points.
TraceStats trace_stats(const FluctuationTrace& alice, const FluctuationTrace& bob);

/// Decision thresholds; EveSuspected when the mean pearson rises above
/// `pearson`, the mean rms ratio rises above `ratio`, or the final running
/// correlation degree drops more than `cd_margin` dB below expectation.
struct Thresholds {
    double pearson;
    double ratio;
    double cd_margin;

    /// -tanh(2r)/2, (e^{-2r} + 1)/2 and 0.5 dB.
    static Thresholds defaults_for(SqueezeParam r);
};

enum class VerdictStatus { Honest, EveSuspected };

enum class Reason { AnticorrelationAbsent, RmsSumDiffEqual, CorrelationDegreeDrop };

std::string reason_name(Reason reason);

/// Running correlation degree after a frame, from both Bell outputs.
struct CdSample {
    double cd_plus;
    double cd_minus;
};

struct Verdict {
    VerdictStatus status = VerdictStatus::Honest;
    std::vector<Reason> reasons;
    std::size_t frames_analyzed = 0;
    double mean_pearson = 0.0;
    double mean_ratio = 0.0;
    double final_cd_db = 0.0;
    double expected_cd_db = 0.0;

    bool has(Reason r) const;
};

/// Throws InputError when there is neither a blocked frame nor a cd sample.
Verdict verdict(std::span<const TraceStats> blocked, std::span<const CdSample> cd_history, double expected_cd_db,
                const Thresholds& thresholds);

}  // namespace qcsim
