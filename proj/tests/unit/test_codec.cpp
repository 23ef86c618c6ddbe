#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "mc.hpp"
#include "qcsim/codec.hpp"
#include "qcsim/errors.hpp"

using namespace qcsim;

namespace {

// Per-slot Bell outputs for one frame over a lossless channel.
std::vector<JointMeasurement> frame_outputs(const BitFrame& f, SqueezeParam r, const HidingWindow& w,
                                            const DetectorConfig& det, std::uint64_t seed) {
    std::vector<JointMeasurement> out;
    for (std::size_t k = 0; k < f.slot_count; ++k) {
        const auto g = f.frame_index * f.slot_count + k;
        auto src = RngStream::for_slot(seed, StreamTag::Source, g);
        auto noise = RngStream::for_slot(seed, StreamTag::BobDetector, g);
        const SlotPair s = encode_bit(f, sample_slot(r, src), w);
        out.push_back(bell_measure(s.signal(), s.idler(), det, noise));
    }
    return out;
}

}  // namespace

TEST_CASE("encode_bit displaces one quadrature") {
    const auto w = hiding_window(SqueezeParam(1.0));
    const SlotPair slot{0.2, -0.4, 0.7, 1.1};

    const auto am = encode_bit(make_frame(0, 1, 1.0, 8), slot, w);
    CHECK(am.x1 == doctest::Approx(1.2));
    CHECK(am.y1 == slot.y1);

    const auto pm = encode_bit(make_frame(0, 0, 1.0, 8), slot, w);
    CHECK(pm.y1 == doctest::Approx(0.6));
    CHECK(pm.x1 == slot.x1);

    for (const auto& s : {am, pm}) {
        CHECK(s.x2 == slot.x2);
        CHECK(s.y2 == slot.y2);
    }
}

TEST_CASE("encode_bit enforces the concealment window") {
    const auto w = hiding_window(SqueezeParam(1.0));
    CHECK_NOTHROW(encode_bit(make_frame(0, 1, 1.0, 1), Beam{}, w));
    CHECK_THROWS_AS(encode_bit(make_frame(0, 1, std::sqrt(0.2), 1), Beam{}, w), BudgetError);
    CHECK_THROWS_AS(encode_bit(make_frame(0, 0, 2.0, 1), Beam{}, w), BudgetError);
    CHECK_THROWS_AS(encode_bit(make_frame(0, 0, 1.0, 1), Beam{}, hiding_window(SqueezeParam(0.2))), BudgetError);
}

TEST_CASE("make_frame invariants") {
    const auto f = make_frame(3, 1, 0.9, 16);
    CHECK(f.symbol.kind == Modulation::AM);
    CHECK(make_frame(3, 0, 0.9, 16).symbol.kind == Modulation::PM);
    CHECK_THROWS_AS(make_frame(0, 2, 1.0, 1), InputError);
    CHECK_THROWS_AS(make_frame(0, 1, 0.0, 1), InputError);
    CHECK_THROWS_AS(make_frame(0, 1, 1.0, 0), InputError);
}

TEST_CASE("signal_amplitude_for") {
    const double s = signal_amplitude_for(SqueezeParam(1.0), 0.5);
    CHECK(s * s == doctest::Approx(1.0091162662888427).epsilon(1e-12));

    const double edge = signal_amplitude_for(SqueezeParam(kHidingThreshold + 1e-9), 0.3);
    CHECK(edge * edge == doctest::Approx(2.0 / std::sqrt(3.0)).epsilon(1e-6));

    try {
        signal_amplitude_for(SqueezeParam(0.2), 0.5);
        FAIL("expected ThresholdError");
    } catch (const ThresholdError& e) {
        CHECK(std::string(e.what()).find("0.27") != std::string::npos);
    }
    CHECK_THROWS_AS(signal_amplitude_for(SqueezeParam(1.0), 0.0), DomainError);
    CHECK_THROWS_AS(signal_amplitude_for(SqueezeParam(1.0), 1.0), DomainError);
}

TEST_CASE("hiding inequality: concealed in the beam, visible to the decoder") {
    RngStream pick(31, 0);
    for (int i = 0; i < 200; ++i) {
        const double r = kHidingThreshold + 1e-6 + (2.0 - kHidingThreshold) * pick.uniform();
        const double margin = 0.001 + 0.998 * pick.uniform();
        const double s = signal_amplitude_for(SqueezeParam(r), margin);
        const double power = s * s;
        CHECK(power / std::cosh(2.0 * r) < 1.0);
        CHECK(power / (2.0 * std::exp(-2.0 * r)) > 1.0);
        CHECK(hiding_window(SqueezeParam(r)).contains(power));
    }
}

TEST_CASE("decode_bit noiseless limits and errors") {
    const std::vector<JointMeasurement> am(8, {1.0, 0.0});
    const std::vector<JointMeasurement> pm(8, {0.0, 1.0});
    const std::vector<JointMeasurement> tie(8, {0.5, -0.5});
    CHECK(decode_bit(am, 1.0, 0.27).bit == 1);
    CHECK(decode_bit(pm, 1.0, 0.27).bit == 0);
    const auto t = decode_bit(tie, 1.0, 0.27);
    CHECK(t.bit == 0);
    CHECK(t.confidence == 0.0);
    CHECK_THROWS_AS(decode_bit(std::vector<JointMeasurement>{}, 1.0, 0.27), InputError);

    // confidence = | |m+| - |m-| | / sqrt(noise_var / M)
    const auto c = decode_bit(am, 1.0, 0.25);
    CHECK(c.confidence == doctest::Approx(1.0 / std::sqrt(0.25 / 8.0)));
}

TEST_CASE("decoding at r = 1, s^2 = 1, M = 64 is essentially error free") {
    const SqueezeParam r(1.0);
    const auto w = hiding_window(r);
    const auto det = DetectorConfig::noiseless();
    RngStream bits(99, 0);
    std::size_t errors = 0;
    const std::size_t frames = 10000;
    for (std::size_t i = 0; i < frames; ++i) {
        const auto bit = static_cast<std::uint8_t>(bits.uniform() < 0.5);
        const auto f = make_frame(i, bit, 1.0, 64);
        const auto d = decode_bit(frame_outputs(f, r, w, det, 17), 1.0, w.lower);
        if (d.bit != bit) ++errors;
    }
    CHECK(static_cast<double>(errors) / frames < 1e-3);
}

TEST_CASE("decoder error rate does not depend on the bit value") {
    // Small frames at modest squeezing so that errors actually occur.
    const SqueezeParam r(0.4375);
    const auto w = hiding_window(r);
    const double s = signal_amplitude_for(r, 0.5);
    const auto det = DetectorConfig::noiseless();
    const std::size_t n = 20000;
    std::size_t err[2] = {0, 0};
    for (std::uint8_t bit : {0, 1}) {
        for (std::size_t i = 0; i < n; ++i) {
            const auto f = make_frame(i, bit, s, 1);
            if (decode_bit(frame_outputs(f, r, w, det, 1000 + bit), s, w.lower).bit != bit) ++err[bit];
        }
    }
    const double p0 = static_cast<double>(err[0]) / n;
    const double p1 = static_cast<double>(err[1]) / n;
    const double p = (p0 + p1) / 2.0;
    CAPTURE(p0);
    CAPTURE(p1);
    CHECK(p > 0.01);
    CHECK(std::abs(p0 - p1) < 3.0 * std::sqrt(2.0 * p * (1.0 - p) / n));
}
