#include "qcsim/codec.hpp"

#include <cmath>
#include <string>

#include <fmt/format.h>

#include "qcsim/errors.hpp"

namespace qcsim {

Modulation modulation_for(std::uint8_t bit) noexcept {
    return bit == 1 ? Modulation::AM : Modulation::PM;
}

BitFrame make_frame(std::size_t frame_index, std::uint8_t bit, double amplitude, std::size_t slot_count) {
    if (bit > 1) throw InputError("bit must be 0 or 1");
    if (!(amplitude > 0.0) || !std::isfinite(amplitude)) throw InputError("modulation amplitude must be > 0");
    if (slot_count == 0) throw InputError("a frame needs at least one slot");
    return {frame_index, bit, {modulation_for(bit), amplitude}, slot_count};
}

Beam encode_bit(const BitFrame& frame, Beam signal, const HidingWindow& window) {
    const double s = frame.symbol.amplitude;
    const double power = s * s;
    if (!window.contains(power)) {
        throw BudgetError(fmt::format("signal power {:.6f} outside concealment window ({:.6f}, {:.6f})",
                                      power, window.lower, window.upper));
    }
    if (frame.symbol.kind == Modulation::AM) {
        signal.x += s;
    } else {
        signal.y += s;
    }
    return signal;
}

SlotPair encode_bit(const BitFrame& frame, SlotPair slot, const HidingWindow& window) {
    const Beam out = encode_bit(frame, slot.signal(), window);
    slot.x1 = out.x;
    slot.y1 = out.y;
    return slot;
}

double signal_amplitude_for(SqueezeParam r, double margin) {
    if (!(margin > 0.0 && margin < 1.0)) {
        throw DomainError(fmt::format("margin must lie in (0, 1), got {}", margin));
    }
    const HidingWindow w = hiding_window(r);
    if (w.empty) {
        throw ThresholdError(fmt::format(
            "no signal can be hidden at r = {:.4f}: need r > ln(3)/4 = {:.4f} (r > 0.27)", r.value(),
            kHidingThreshold));
    }
    const double power = std::pow(w.lower, 1.0 - margin) * std::pow(w.upper, margin);
    return std::sqrt(power);
}

DecodedBit decode_bit(std::span<const JointMeasurement> joint, double amplitude, double noise_var) {
    if (joint.empty()) throw InputError("cannot decode an empty frame");
    if (!(amplitude > 0.0)) throw InputError("amplitude must be > 0");
    if (!(noise_var > 0.0)) throw InputError("noise variance must be > 0");

    double sum_plus = 0.0;
    double sum_minus = 0.0;
    for (const auto& j : joint) {
        sum_plus += j.d_plus;
        sum_minus += j.d_minus;
    }
    const double m = static_cast<double>(joint.size());
    const double mean_plus = sum_plus / m;
    const double mean_minus = sum_minus / m;
    const double gap = std::abs(mean_plus) - std::abs(mean_minus);
    if (gap == 0.0) {
        return {0, 0.0, mean_plus, mean_minus};
    }
    const double noise_of_mean = std::sqrt(noise_var / m);
    return {static_cast<std::uint8_t>(gap > 0.0 ? 1 : 0), std::abs(gap) / noise_of_mean, mean_plus, mean_minus};
}

}  // namespace qcsim
