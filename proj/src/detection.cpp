#include "qcsim/detection.hpp"

#include <cmath>
#include <string>

#include <fmt/format.h>

#include "qcsim/errors.hpp"
#include "qcsim/stats.hpp"

namespace qcsim {

void DetectorConfig::validate() const {
    if (!(electronic_noise_var >= 0.0) || !std::isfinite(electronic_noise_var)) {
        throw DomainError("electronic_noise_var must be finite and >= 0");
    }
}

JointMeasurement bell_measure(Beam received, Beam idler, const DetectorConfig& cfg, RngStream& rng) {
    JointMeasurement out{received.x + idler.x, received.y - idler.y};
    if (cfg.electronic_noise_var > 0.0) {
        const double sd = std::sqrt(cfg.electronic_noise_var);
        out.d_plus += sd * rng.normal();
        out.d_minus += sd * rng.normal();
    }
    return out;
}

SnlReference snl_reference(std::size_t n, const DetectorConfig& cfg, std::uint64_t seed,
                           std::uint64_t first_slot) {
    if (n == 0) throw InputError("snl_reference needs at least one slot");
    cfg.validate();
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        auto rng = RngStream::for_slot(seed, StreamTag::Calibration, first_slot + i);
        const Beam a{rng.normal(), rng.normal()};
        const Beam b{rng.normal(), rng.normal()};
        const auto j = bell_measure(a, b, cfg, rng);
        acc += j.d_plus * j.d_plus;
    }
    return {acc / static_cast<double>(n), n, n < kSnlMinSamples};
}

double variance_to_cd_db(double variance) {
    return -10.0 * std::log10(variance / 2.0);
}

CorrelationDegree correlation_degree(std::span<const JointMeasurement> samples) {
    if (samples.size() < 2) throw InputError("correlation_degree needs at least 2 samples");
    std::vector<double> plus;
    std::vector<double> minus;
    plus.reserve(samples.size());
    minus.reserve(samples.size());
    for (const auto& j : samples) {
        plus.push_back(j.d_plus);
        minus.push_back(j.d_minus);
    }
    const double vp = stats::variance(plus);
    const double vm = stats::variance(minus);
    return {variance_to_cd_db(vp), variance_to_cd_db(vm), vp, vm};
}

double expected_bell_variance(SqueezeParam r, double eta, const DetectorConfig& cfg) {
    return lossy_corr_var(r, eta) + cfg.electronic_noise_var;
}

double expected_cd_db(SqueezeParam r, double eta, const DetectorConfig& cfg) {
    return variance_to_cd_db(expected_bell_variance(r, eta, cfg));
}

std::vector<double> spectrum_bin_centres(const SpectrumRequest& req) {
    if (!(req.stop_hz > req.start_hz)) {
        throw InputError(fmt::format("empty span {}..{} Hz", req.start_hz, req.stop_hz));
    }
    if (!(req.rbw_hz > 0.0)) throw InputError("resolution bandwidth must be > 0");
    const double width = req.stop_hz - req.start_hz;
    if (req.rbw_hz > width) {
        throw InputError(fmt::format("resolution bandwidth {} Hz exceeds span {} Hz", req.rbw_hz, width));
    }
    const auto count = static_cast<std::size_t>(std::floor(width / req.rbw_hz + 1e-9)) + 1;
    std::vector<double> centres(count);
    for (std::size_t i = 0; i < count; ++i) {
        centres[i] = req.start_hz + static_cast<double>(i) * req.rbw_hz;
    }
    return centres;
}

NoiseSpectrum spectrum(std::span<const double> r_profile, const std::optional<SpectrumSignal>& signal,
                       const SpectrumRequest& req, const DetectorConfig& cfg, std::uint64_t seed) {
    cfg.validate();
    if (req.averages == 0) throw InputError("spectrum needs at least one average");
    const auto centres = spectrum_bin_centres(req);
    if (r_profile.size() != 1 && r_profile.size() != centres.size()) {
        throw InputError(fmt::format("r profile has {} entries, expected 1 or {}", r_profile.size(),
                                     centres.size()));
    }

    std::size_t signal_bin = centres.size();
    double displacement = 0.0;
    if (signal) {
        if (signal->freq_hz < req.start_hz || signal->freq_hz > req.stop_hz) {
            throw InputError(fmt::format("signal at {} Hz lies outside the span", signal->freq_hz));
        }
        if (!(signal->power >= 0.0)) throw InputError("signal power must be >= 0");
        signal_bin = static_cast<std::size_t>(std::lround((signal->freq_hz - req.start_hz) / req.rbw_hz));
        if (signal_bin >= centres.size()) signal_bin = centres.size() - 1;
        displacement = std::sqrt(signal->power);
    }
    const bool on_y = signal && signal->quadrature == Quadrature::Y;

    NoiseSpectrum out{{}, req.rbw_hz, req.start_hz, req.stop_hz, signal_bin};
    out.bins.reserve(centres.size());
    const auto n = static_cast<double>(req.averages);
    for (std::size_t b = 0; b < centres.size(); ++b) {
        const SqueezeParam r(r_profile.size() == 1 ? r_profile[0] : r_profile[b]);
        const double s = b == signal_bin ? displacement : 0.0;
        auto rng = RngStream::for_slot(seed, StreamTag::Spectrum, b);
        double single_power = 0.0;
        double corr_power = 0.0;
        for (std::size_t k = 0; k < req.averages; ++k) {
            SlotPair slot = sample_slot(r, rng);
            (on_y ? slot.y1 : slot.x1) += s;
            const auto j = bell_measure(slot.signal(), slot.idler(), cfg, rng);
            const double single = on_y ? slot.y1 : slot.x1;
            const double corr = on_y ? j.d_minus : j.d_plus;
            single_power += single * single;
            corr_power += corr * corr;
        }
        out.bins.push_back({
            centres[b],
            0.0,
            10.0 * std::log10(single_power / n),
            10.0 * std::log10(corr_power / n / 2.0),
        });
    }
    return out;
}

}  // namespace qcsim
