#include "qcsim/adversary.hpp"

#include <cmath>

#include <fmt/format.h>

#include "qcsim/errors.hpp"

namespace qcsim {

namespace {
template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void check_tau(double tau) {
    if (!(tau >= 0.0 && tau <= 1.0)) throw DomainError(fmt::format("tap fraction tau must lie in [0, 1], got {}", tau));
}

void check_sigma(double sigma_m) {
    if (!(sigma_m > 0.0) || !std::isfinite(sigma_m)) {
        throw DomainError(fmt::format("QND resolution sigma_m must be finite and > 0, got {}", sigma_m));
    }
}
}  // namespace

void validate(const AttackSpec& attack) {
    std::visit(overloaded{
                   [](const NoAttack&) {},
                   [](const TapAttack& a) { check_tau(a.tau); },
                   [](const InterceptResendAttack& a) { (void)SqueezeParam(a.fake_r); },
                   [](const QndAttack& a) { check_sigma(a.sigma_m); },
               },
               attack);
}

std::string attack_name(const AttackSpec& attack) {
    return std::visit(overloaded{
                          [](const NoAttack&) { return std::string("none"); },
                          [](const TapAttack&) { return std::string("tap"); },
                          [](const InterceptResendAttack&) { return std::string("intercept_resend"); },
                          [](const QndAttack&) { return std::string("qnd"); },
                      },
                      attack);
}

TapResult tap(Beam signal, double tau, RngStream& rng) {
    check_tau(tau);
    const double t = std::sqrt(1.0 - tau);
    const double d = std::sqrt(tau);
    const double vx = rng.normal();
    const double vy = rng.normal();
    return {
        {t * signal.x + d * vx, t * signal.y + d * vy},
        {d * signal.x - t * vx, d * signal.y - t * vy},
    };
}

QndResult qnd_measure(Beam signal, Quadrature measured, double sigma_m, RngStream& rng) {
    check_sigma(sigma_m);
    const double readout_noise = std::sqrt(sigma_m) * rng.normal();
    const double back_action = std::sqrt(1.0 / sigma_m) * rng.normal();
    if (measured == Quadrature::X) {
        return {signal.x + readout_noise, {signal.x, signal.y + back_action}};
    }
    return {signal.y + readout_noise, {signal.x + back_action, signal.y}};
}

InterceptResendEve::InterceptResendEve(SqueezeParam fake_r, double resend_amplitude, HidingWindow resend_window)
    : fake_r_(fake_r),
      resend_amplitude_(resend_amplitude),
      resend_window_(resend_window),
      decode_noise_var_(epr_variance(fake_r).corr_var) {}

Beam InterceptResendEve::intercept_outbound(Beam genuine, RngStream& fake_source) {
    const SlotPair fake = sample_slot(fake_r_, fake_source);
    genuine_.push_back(genuine);
    fake_idler_.push_back(fake.idler());
    return fake.signal();
}

void InterceptResendEve::intercept_return(Beam from_alice) {
    if (readout_.size() >= fake_idler_.size()) {
        throw ProtocolError("intercept_return called more often than intercept_outbound");
    }
    // Eve's detector is ideal: no electronic noise, so no randomness needed.
    RngStream unused(0, 0);
    const auto j = bell_measure(from_alice, fake_idler_[readout_.size()], DetectorConfig::noiseless(), unused);
    readout_.push_back(j);
    record_.observations.push_back(j.d_plus);
}

std::vector<Beam> InterceptResendEve::release_frame(std::size_t frame_index) {
    if (readout_.empty() || readout_.size() != genuine_.size()) {
        throw ProtocolError("release_frame needs one return measurement per intercepted slot");
    }
    const auto decoded = decode_bit(readout_, resend_amplitude_, decode_noise_var_);
    record_.decoded_bits.push_back(decoded.bit);
    const BitFrame frame = make_frame(frame_index, decoded.bit, resend_amplitude_, genuine_.size());
    std::vector<Beam> out;
    out.reserve(genuine_.size());
    for (const Beam& b : genuine_) out.push_back(encode_bit(frame, b, resend_window_));
    drop_frame();
    return out;
}

void InterceptResendEve::drop_frame() {
    genuine_.clear();
    fake_idler_.clear();
    readout_.clear();
}

}  // namespace qcsim
