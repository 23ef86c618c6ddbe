#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

#include "qcsim/detection.hpp"
#include "qcsim/quadrature.hpp"

namespace qcsim {

/// Amplitude modulation carries a 1, phase modulation a 0.
enum class Modulation { AM, PM };

struct ModulationSymbol {
    Modulation kind;
    double amplitude;  ///< displacement s; signal power is s^2
};

struct BitFrame {
    std::size_t frame_index;
    std::uint8_t bit;
    ModulationSymbol symbol;
    std::size_t slot_count;
};

/// Builds a frame whose modulation matches the bit. Throws InputError when
/// bit is not 0/1, amplitude <= 0 or slot_count == 0.
BitFrame make_frame(std::size_t frame_index, std::uint8_t bit, double amplitude, std::size_t slot_count);

Modulation modulation_for(std::uint8_t bit) noexcept;

/// Displaces the signal beam. Throws BudgetError when s^2 is not strictly
/// inside `window`, since such a signal would either show above the
/// single-beam noise or vanish below the correlation noise.
Beam encode_bit(const BitFrame& frame, Beam signal, const HidingWindow& window);

/// Same as above on a full slot; the idler quadratures are returned as given.
SlotPair encode_bit(const BitFrame& frame, SlotPair slot, const HidingWindow& window);

/// s with s^2 = lower^(1-margin) * upper^margin. Throws ThresholdError for an
/// empty window and DomainError unless 0 < margin < 1.
double signal_amplitude_for(SqueezeParam r, double margin);

struct DecodedBit {
    std::uint8_t bit;
    double confidence;
    double mean_plus;
    double mean_minus;
};

/// Compares block means of the two Bell outputs; the larger one names the
/// modulated quadrature. `noise_var` is the expected per-slot variance of the
/// outputs and only scales the confidence. Ties decode as 0 with confidence 0.
DecodedBit decode_bit(std::span<const JointMeasurement> joint, double amplitude, double noise_var);

}  // namespace qcsim
