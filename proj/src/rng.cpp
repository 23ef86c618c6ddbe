#include "qcsim/rng.hpp"

#include <cmath>
#include <numbers>

namespace qcsim {

namespace {
constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;
}

std::uint64_t mix64(std::uint64_t x) noexcept {
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ULL;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebULL;
    x ^= x >> 31;
    return x;
}

RngStream::RngStream(std::uint64_t seed, std::uint64_t substream) noexcept
    : seed_(seed), substream_(substream),
      key_(mix64(mix64(seed + kGolden) ^ (substream * kGolden + 0x632be59bd9b4e019ULL))) {}

RngStream RngStream::for_slot(std::uint64_t seed, StreamTag tag, std::uint64_t slot) noexcept {
    return RngStream(derive_seed(seed, static_cast<std::uint64_t>(tag)), slot);
}

RngStream::result_type RngStream::operator()() noexcept {
    ++counter_;
    return mix64(key_ + counter_ * kGolden);
}

double RngStream::uniform() noexcept {
    return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
}

double RngStream::normal() noexcept {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept {
    return mix64(master ^ mix64(index + kGolden));
}

}  // namespace qcsim
