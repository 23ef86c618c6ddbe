#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "qcsim/quadrature.hpp"
#include "qcsim/rng.hpp"

namespace qcsim {

/// Bob's Bell-state outputs for one slot: amplitude sum and phase difference.
struct JointMeasurement {
    double d_plus = 0.0;   ///< x1' + x2 (+ electronic noise)
    double d_minus = 0.0;  ///< y1' - y2 (+ electronic noise)
};

/// Electronic noise 8 dB below the two-beam shot-noise level of 2.
inline constexpr double kDefaultElectronicNoiseVar = 0.31697863849222268;

struct DetectorConfig {
    double electronic_noise_var = kDefaultElectronicNoiseVar;

    static DetectorConfig noiseless() { return DetectorConfig{0.0}; }
    void validate() const;
};

JointMeasurement bell_measure(Beam received, Beam idler, const DetectorConfig& cfg, RngStream& rng);

struct SnlReference {
    double variance;     ///< mean square of d_plus over two vacuum inputs
    std::size_t samples;
    bool low_precision;  ///< fewer than kSnlMinSamples samples
};

inline constexpr std::size_t kSnlMinSamples = 100;

/// Shot-noise calibration with two independent vacuum beams; the draws
/// come from consecutive substreams starting at `first_slot`.
SnlReference snl_reference(std::size_t n, const DetectorConfig& cfg, std::uint64_t seed,
                           std::uint64_t first_slot = 0);

/// dB below the two-beam shot-noise level computed from the sample variance
/// of each Bell output.
struct CorrelationDegree {
    double cd_db;        ///< from d_plus
    double cd_db_minus;  ///< from d_minus
    double var_plus;
    double var_minus;
};

double variance_to_cd_db(double variance);

/// Throws InputError for fewer than two samples.
CorrelationDegree correlation_degree(std::span<const JointMeasurement> samples);

/// Expected Var(d_plus) for correlation r, overall signal transmission eta and
/// the detector's electronic noise.
double expected_bell_variance(SqueezeParam r, double eta, const DetectorConfig& cfg);

double expected_cd_db(SqueezeParam r, double eta, const DetectorConfig& cfg);

// ---------------------------------------------------------------------------
// Spectrum-analyzer emulation

enum class Quadrature { X, Y };

struct SpectrumSignal {
    double freq_hz;
    double power;  ///< s^2 in shot-noise units
    Quadrature quadrature = Quadrature::X;
};

struct SpectrumRequest {
    double start_hz = 1.0e6;
    double stop_hz = 3.0e6;
    double rbw_hz = 30.0e3;
    std::size_t averages = 1000;
};

struct SpectrumBin {
    double freq_hz;
    double snl_db;
    double single_beam_db;
    double correlation_db;
};

struct NoiseSpectrum {
    std::vector<SpectrumBin> bins;
    double rbw_hz;
    double start_hz;
    double stop_hz;
    std::size_t signal_bin;  ///< bins.size() when no signal
};

/// Bin centres start, start + rbw, ... up to stop. Throws InputError for an
/// empty span or rbw wider than the span.
std::vector<double> spectrum_bin_centres(const SpectrumRequest& req);

/// `r_profile` holds either one value for every bin or exactly one value per
/// bin. The signal frequency snaps to the nearest bin centre.
NoiseSpectrum spectrum(std::span<const double> r_profile, const std::optional<SpectrumSignal>& signal,
                       const SpectrumRequest& req, const DetectorConfig& cfg, std::uint64_t seed);

}  // namespace qcsim
