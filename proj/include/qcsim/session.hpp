#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qcsim/adversary.hpp"
#include "qcsim/codec.hpp"
#include "qcsim/detection.hpp"
#include "qcsim/quadrature.hpp"
#include "qcsim/verification.hpp"

namespace qcsim {

/// Per-field overrides of the r-aware default thresholds.
struct ThresholdOverrides {
    std::optional<double> pearson;
    std::optional<double> ratio;
    std::optional<double> cd_margin;

    Thresholds resolve(SqueezeParam r) const;
};

struct SessionConfig {
    double r = 0.4375;
    std::size_t frames = 0;  ///< 0: one frame per key bit
    std::size_t slots_per_frame = 64;
    std::string key_bits;
    double margin = 0.5;
    double eta_out = 1.0;
    double eta_back = 1.0;
    double block_prob = 0.0;
    DetectorConfig detector;
    AttackSpec attack = NoAttack{};
    ThresholdOverrides thresholds;
    std::uint64_t seed = 0;

    std::size_t frame_count() const { return frames == 0 ? key_bits.size() : frames; }
};

/// Throws ConfigError naming the first offending field.
void validate(const SessionConfig& cfg);

struct FrameRecord {
    std::size_t index = 0;
    bool blocked = false;
    std::optional<std::uint8_t> sent_bit;
    std::optional<DecodedBit> decoded;
    std::optional<CorrelationDegree> cd;        ///< this frame alone
    std::optional<CdSample> running_cd;         ///< pooled over unblocked frames so far
};

struct KeyComparison {
    double ber;
    std::vector<std::size_t> mismatches;
};

/// Throws InputError on length mismatch.
KeyComparison compare_keys(std::span<const std::uint8_t> sent, std::span<const std::uint8_t> decoded);

enum class OutcomeKind { Accept, AbortEveSuspected, AbortNoKey };

struct Outcome {
    OutcomeKind kind = OutcomeKind::AbortNoKey;
    std::string key;  ///< decoded bits of unblocked frames, frame order
    std::vector<Reason> reasons;

    bool accepted() const { return kind == OutcomeKind::Accept; }
};

std::string outcome_name(OutcomeKind kind);

struct SessionTranscript {
    SessionConfig config;
    double amplitude = 0.0;
    HidingWindow window{};
    Thresholds thresholds{};
    double expected_cd_db = 0.0;
    BlockSchedule schedule;
    std::vector<FrameRecord> frames;
    std::vector<std::uint8_t> sent_bits;
    std::vector<std::uint8_t> decoded_bits;
    std::vector<BlockTraces> traces;
    std::vector<TraceStats> trace_stats;
    std::vector<CdSample> cd_history;
    EveRecord eve;
    Verdict verdict;
    Outcome outcome;

    KeyComparison key_comparison() const { return compare_keys(sent_bits, decoded_bits); }
};

/// Accept iff the verdict is Honest and at least one key bit was decoded.
Outcome finalize(const SessionTranscript& transcript, const Verdict& verdict);

enum class Phase { Ready, Distributed, Encoded, Returned, Verified, Complete };

/// One protocol run as an explicit state machine. Each frame cycles
/// Ready -> distribute -> Distributed -> encode -> Encoded -> send_back ->
/// Returned -> measure -> Ready; once every frame is measured, verify()
/// discloses Alice's traces and finish() yields the transcript.
/// Calling a step out of order throws ProtocolError.
class ProtocolRun {
public:
    /// Validates the configuration and rejects an empty concealment window
    /// with ThresholdError before any sampling.
    explicit ProtocolRun(SessionConfig cfg);

    Phase phase() const noexcept { return phase_; }
    std::size_t current_frame() const noexcept { return frame_; }
    bool frames_remaining() const noexcept { return frame_ < schedule_.blocked.size(); }

    /// Source emits the frame's EPR pairs; Bob keeps the idlers and the
    /// signal beams travel to Alice (through Eve, if any).
    void distribute();
    /// Alice modulates the arriving beams, or blocks them and records a trace.
    void encode();
    /// Return leg: attack hooks and channel loss.
    void send_back();
    /// Bob's Bell measurement, decoding and correlation-degree bookkeeping.
    void measure();

    /// Alice discloses her traces; Bob compares them and applies the thresholds.
    const Verdict& verify();
    SessionTranscript finish();

    /// Bob's retained idler beams of the current frame.
    std::span<const Beam> retained_idler() const noexcept { return idler_; }

private:
    std::uint64_t slot_index(std::size_t k) const noexcept;
    void require(Phase expected, const char* step) const;

    SessionConfig cfg_;
    SqueezeParam r_;
    double eta_total_;
    double noise_var_;
    Phase phase_ = Phase::Ready;
    std::size_t frame_ = 0;
    std::size_t key_cursor_ = 0;
    BlockSchedule schedule_;
    std::optional<InterceptResendEve> intercept_;
    EveRecord eve_;

    // Bob's station
    std::vector<Beam> idler_;
    std::vector<FluctuationTrace> bob_traces_;
    double pooled_plus_ = 0.0;
    double pooled_minus_ = 0.0;
    double pooled_dof_ = 0.0;

    // Alice's station; traces stay private until verify()
    std::vector<Beam> at_alice_;
    std::vector<FluctuationTrace> alice_traces_;

    std::vector<Beam> in_flight_;
    std::optional<BitFrame> current_bit_;
    SessionTranscript transcript_;
};

SessionTranscript run_session(const SessionConfig& cfg);

/// Bob's correlation degree over n unmodulated slots passing the configured
/// channel and attack; needs no key and works for any r.
CorrelationDegree measure_channel(const SessionConfig& cfg, std::size_t n_slots);

}  // namespace qcsim
