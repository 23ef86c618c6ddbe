#pragma once

#include <cstdint>
#include <limits>

namespace qcsim {

/// Independent random streams used within one simulated slot. Each purpose
/// draws from its own substream so that adding an attack or a detector does
/// not shift the samples of any other component.
enum class StreamTag : std::uint64_t {
    Source = 1,
    LossOut,
    LossBack,
    Attack,
    FakeSource,
    AliceDetector,
    BobDetector,
    Schedule,
    Spectrum,
    Calibration,
};

std::uint64_t mix64(std::uint64_t x) noexcept;

/// Counter-based generator: the n-th output is a pure function of
/// (seed, substream, n). Identical keys give bit-identical sequences
/// regardless of the order in which streams are created or consumed.
class RngStream {
public:
    using result_type = std::uint64_t;

    RngStream(std::uint64_t seed, std::uint64_t substream) noexcept;

    /// Stream for one purpose within one slot.
    static RngStream for_slot(std::uint64_t seed, StreamTag tag, std::uint64_t slot) noexcept;

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    result_type operator()() noexcept;

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() noexcept;

    /// Standard normal (Box-Muller). Implemented here rather than through
    /// std::normal_distribution so output is identical across standard libraries.
    double normal() noexcept;

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t substream() const noexcept { return substream_; }

private:
    std::uint64_t seed_;
    std::uint64_t substream_;
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

/// Derive a child seed, e.g. one per sweep repetition.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept;

}  // namespace qcsim
