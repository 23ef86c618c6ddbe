#include "qcsim/session.hpp"

#include <cmath>
#include <utility>

#include <fmt/format.h>

#include "qcsim/errors.hpp"
#include "qcsim/stats.hpp"

namespace qcsim {

namespace {

void check_unit_interval(double v, const char* field) {
    if (!(v >= 0.0 && v <= 1.0)) throw ConfigError(field, fmt::format("must lie in [0, 1], got {}", v));
}

}  // namespace

Thresholds ThresholdOverrides::resolve(SqueezeParam r) const {
    Thresholds t = Thresholds::defaults_for(r);
    if (pearson) t.pearson = *pearson;
    if (ratio) t.ratio = *ratio;
    if (cd_margin) t.cd_margin = *cd_margin;
    return t;
}

void validate(const SessionConfig& cfg) {
    if (!std::isfinite(cfg.r) || cfg.r < 0.0) {
        throw ConfigError("protocol.r", fmt::format("must be finite and >= 0, got {}", cfg.r));
    }
    if (cfg.key_bits.empty()) throw ConfigError("protocol.key_bits", "is required and must be non-empty");
    for (char c : cfg.key_bits) {
        if (c != '0' && c != '1') throw ConfigError("protocol.key_bits", "may contain only '0' and '1'");
    }
    if (cfg.key_bits.size() > cfg.frame_count()) {
        throw ConfigError("protocol.frames",
                          fmt::format("{} frames cannot carry a {}-bit key", cfg.frame_count(), cfg.key_bits.size()));
    }
    if (cfg.slots_per_frame < 2) {
        throw ConfigError("protocol.slots_per_frame", "must be >= 2 (the correlation monitor needs a variance)");
    }
    if (!(cfg.margin > 0.0 && cfg.margin < 1.0)) {
        throw ConfigError("protocol.margin", fmt::format("must lie in (0, 1), got {}", cfg.margin));
    }
    check_unit_interval(cfg.eta_out, "channel.eta_out");
    check_unit_interval(cfg.eta_back, "channel.eta_back");
    check_unit_interval(cfg.block_prob, "protocol.block_prob");
    if (!(cfg.detector.electronic_noise_var >= 0.0) || !std::isfinite(cfg.detector.electronic_noise_var)) {
        throw ConfigError("detector.electronic_noise_var", "must be finite and >= 0");
    }
    try {
        validate(cfg.attack);
    } catch (const DomainError& e) {
        throw ConfigError("attack", e.what());
    }
    if (cfg.thresholds.cd_margin && !(*cfg.thresholds.cd_margin >= 0.0)) {
        throw ConfigError("thresholds.cd_margin", "must be >= 0");
    }
}

KeyComparison compare_keys(std::span<const std::uint8_t> sent, std::span<const std::uint8_t> decoded) {
    if (sent.size() != decoded.size()) {
        throw InputError(fmt::format("key length mismatch: {} sent, {} decoded", sent.size(), decoded.size()));
    }
    KeyComparison out{0.0, {}};
    for (std::size_t i = 0; i < sent.size(); ++i) {
        if (sent[i] != decoded[i]) out.mismatches.push_back(i);
    }
    if (!sent.empty()) out.ber = static_cast<double>(out.mismatches.size()) / static_cast<double>(sent.size());
    return out;
}

std::string outcome_name(OutcomeKind kind) {
    switch (kind) {
        case OutcomeKind::Accept: return "accept";
        case OutcomeKind::AbortEveSuspected: return "abort_eve_suspected";
        case OutcomeKind::AbortNoKey: return "abort_no_key";
    }
    return "unknown";
}

Outcome finalize(const SessionTranscript& transcript, const Verdict& verdict) {
    Outcome out;
    if (verdict.status == VerdictStatus::EveSuspected) {
        out.kind = OutcomeKind::AbortEveSuspected;
        out.reasons = verdict.reasons;
        return out;
    }
    if (transcript.decoded_bits.empty()) {
        out.kind = OutcomeKind::AbortNoKey;
        return out;
    }
    out.kind = OutcomeKind::Accept;
    out.key.reserve(transcript.decoded_bits.size());
    for (auto b : transcript.decoded_bits) out.key.push_back(b ? '1' : '0');
    return out;
}

// ---------------------------------------------------------------------------

ProtocolRun::ProtocolRun(SessionConfig cfg)
    : cfg_((validate(cfg), std::move(cfg))),
      r_(cfg_.r),
      eta_total_(cfg_.eta_out * cfg_.eta_back),
      noise_var_(expected_bell_variance(r_, eta_total_, cfg_.detector)) {
    transcript_.config = cfg_;
    transcript_.window = hiding_window(r_);
    transcript_.amplitude = signal_amplitude_for(r_, cfg_.margin);
    transcript_.thresholds = cfg_.thresholds.resolve(r_);
    transcript_.expected_cd_db = variance_to_cd_db(noise_var_);

    RngStream schedule_rng(derive_seed(cfg_.seed, static_cast<std::uint64_t>(StreamTag::Schedule)), 0);
    schedule_ = schedule_blocks(cfg_.frame_count(), cfg_.block_prob, schedule_rng);
    transcript_.schedule = schedule_;

    if (const auto* ir = std::get_if<InterceptResendAttack>(&cfg_.attack)) {
        intercept_.emplace(SqueezeParam(ir->fake_r), transcript_.amplitude, transcript_.window);
    }
}

std::uint64_t ProtocolRun::slot_index(std::size_t k) const noexcept {
    return static_cast<std::uint64_t>(frame_) * cfg_.slots_per_frame + k;
}

void ProtocolRun::require(Phase expected, const char* step) const {
    if (phase_ != expected) throw ProtocolError(fmt::format("{} called out of order", step));
}

void ProtocolRun::distribute() {
    require(Phase::Ready, "distribute");
    if (!frames_remaining()) throw ProtocolError("all frames already distributed");
    const std::size_t m = cfg_.slots_per_frame;
    idler_.clear();
    at_alice_.clear();
    idler_.reserve(m);
    at_alice_.reserve(m);
    for (std::size_t k = 0; k < m; ++k) {
        const auto g = slot_index(k);
        auto source = RngStream::for_slot(cfg_.seed, StreamTag::Source, g);
        const SlotPair pair = sample_slot(r_, source);
        idler_.push_back(pair.idler());

        auto loss = RngStream::for_slot(cfg_.seed, StreamTag::LossOut, g);
        Beam outbound = apply_loss(pair.signal(), cfg_.eta_out, loss);
        if (intercept_) {
            auto fake = RngStream::for_slot(cfg_.seed, StreamTag::FakeSource, g);
            outbound = intercept_->intercept_outbound(outbound, fake);
        }
        at_alice_.push_back(outbound);
    }
    phase_ = Phase::Distributed;
}

void ProtocolRun::encode() {
    require(Phase::Distributed, "encode");
    in_flight_.clear();
    current_bit_.reset();
    FrameRecord rec;
    rec.index = frame_;
    rec.blocked = schedule_.is_blocked(frame_);
    if (rec.blocked) {
        alice_traces_.push_back(
            record_alice_trace(frame_, schedule_, at_alice_, cfg_.detector, cfg_.seed, slot_index(0)));
    } else {
        const char c = cfg_.key_bits[key_cursor_ % cfg_.key_bits.size()];
        ++key_cursor_;
        const auto bit = static_cast<std::uint8_t>(c == '1');
        const BitFrame frame = make_frame(frame_, bit, transcript_.amplitude, cfg_.slots_per_frame);
        in_flight_.reserve(at_alice_.size());
        for (const Beam& b : at_alice_) in_flight_.push_back(encode_bit(frame, b, transcript_.window));
        current_bit_ = frame;
        rec.sent_bit = bit;
        transcript_.sent_bits.push_back(bit);
    }
    transcript_.frames.push_back(rec);
    phase_ = Phase::Encoded;
}

void ProtocolRun::send_back() {
    require(Phase::Encoded, "send_back");
    if (!current_bit_) {
        if (intercept_) intercept_->drop_frame();
        phase_ = Phase::Returned;
        return;
    }
    if (intercept_) {
        for (const Beam& b : in_flight_) intercept_->intercept_return(b);
        in_flight_ = intercept_->release_frame(frame_);
    }
    for (std::size_t k = 0; k < in_flight_.size(); ++k) {
        const auto g = slot_index(k);
        Beam beam = in_flight_[k];
        if (const auto* t = std::get_if<TapAttack>(&cfg_.attack)) {
            auto rng = RngStream::for_slot(cfg_.seed, StreamTag::Attack, g);
            const auto res = tap(beam, t->tau, rng);
            eve_.observations.push_back(res.eve.x);
            beam = res.to_bob;
        } else if (const auto* q = std::get_if<QndAttack>(&cfg_.attack)) {
            auto rng = RngStream::for_slot(cfg_.seed, StreamTag::Attack, g);
            const auto res = qnd_measure(beam, q->measured, q->sigma_m, rng);
            eve_.observations.push_back(res.eve_estimate);
            beam = res.disturbed;
        }
        auto loss = RngStream::for_slot(cfg_.seed, StreamTag::LossBack, g);
        in_flight_[k] = apply_loss(beam, cfg_.eta_back, loss);
    }
    phase_ = Phase::Returned;
}

void ProtocolRun::measure() {
    require(Phase::Returned, "measure");
    FrameRecord& rec = transcript_.frames.back();
    if (!current_bit_) {
        bob_traces_.push_back(record_bob_trace(frame_, schedule_, idler_, cfg_.detector, cfg_.seed, slot_index(0)));
    } else {
        std::vector<JointMeasurement> joint;
        joint.reserve(in_flight_.size());
        for (std::size_t k = 0; k < in_flight_.size(); ++k) {
            auto rng = RngStream::for_slot(cfg_.seed, StreamTag::BobDetector, slot_index(k));
            joint.push_back(bell_measure(in_flight_[k], idler_[k], cfg_.detector, rng));
        }
        const DecodedBit decoded = decode_bit(joint, transcript_.amplitude, noise_var_);
        rec.decoded = decoded;
        transcript_.decoded_bits.push_back(decoded.bit);

        const CorrelationDegree cd = correlation_degree(joint);
        rec.cd = cd;
        const double dof = static_cast<double>(joint.size() - 1);
        pooled_plus_ += cd.var_plus * dof;
        pooled_minus_ += cd.var_minus * dof;
        pooled_dof_ += dof;
        const CdSample running{variance_to_cd_db(pooled_plus_ / pooled_dof_),
                               variance_to_cd_db(pooled_minus_ / pooled_dof_)};
        rec.running_cd = running;
        transcript_.cd_history.push_back(running);
    }
    ++frame_;
    phase_ = Phase::Ready;
}

const Verdict& ProtocolRun::verify() {
    require(Phase::Ready, "verify");
    if (frames_remaining()) throw ProtocolError("verify called before every frame was measured");
    // Disclosure happens here, after the last frame.
    for (std::size_t i = 0; i < alice_traces_.size(); ++i) {
        const auto stats = trace_stats(alice_traces_[i], bob_traces_[i]);
        transcript_.trace_stats.push_back(stats);
        transcript_.traces.push_back({std::move(alice_traces_[i]), std::move(bob_traces_[i])});
    }
    alice_traces_.clear();
    bob_traces_.clear();
    transcript_.verdict = verdict(transcript_.trace_stats, transcript_.cd_history, transcript_.expected_cd_db,
                                  transcript_.thresholds);
    phase_ = Phase::Verified;
    return transcript_.verdict;
}

SessionTranscript ProtocolRun::finish() {
    require(Phase::Verified, "finish");
    transcript_.eve = intercept_ ? intercept_->record() : eve_;
    transcript_.outcome = finalize(transcript_, transcript_.verdict);
    phase_ = Phase::Complete;
    return std::move(transcript_);
}

SessionTranscript run_session(const SessionConfig& cfg) {
    ProtocolRun run(cfg);
    while (run.frames_remaining()) {
        run.distribute();
        run.encode();
        run.send_back();
        run.measure();
    }
    run.verify();
    return run.finish();
}

CorrelationDegree measure_channel(const SessionConfig& cfg, std::size_t n_slots) {
    const SqueezeParam r(cfg.r);
    validate(cfg.attack);
    std::vector<JointMeasurement> joint;
    joint.reserve(n_slots);
    for (std::size_t g = 0; g < n_slots; ++g) {
        auto source = RngStream::for_slot(cfg.seed, StreamTag::Source, g);
        const SlotPair pair = sample_slot(r, source);
        auto loss_out = RngStream::for_slot(cfg.seed, StreamTag::LossOut, g);
        Beam beam = apply_loss(pair.signal(), cfg.eta_out, loss_out);
        auto attack = RngStream::for_slot(cfg.seed, StreamTag::Attack, g);
        if (const auto* t = std::get_if<TapAttack>(&cfg.attack)) {
            beam = tap(beam, t->tau, attack).to_bob;
        } else if (const auto* q = std::get_if<QndAttack>(&cfg.attack)) {
            beam = qnd_measure(beam, q->measured, q->sigma_m, attack).disturbed;
        }
        auto loss_back = RngStream::for_slot(cfg.seed, StreamTag::LossBack, g);
        beam = apply_loss(beam, cfg.eta_back, loss_back);
        auto det = RngStream::for_slot(cfg.seed, StreamTag::BobDetector, g);
        joint.push_back(bell_measure(beam, pair.idler(), cfg.detector, det));
    }
    return correlation_degree(joint);
}

}  // namespace qcsim
