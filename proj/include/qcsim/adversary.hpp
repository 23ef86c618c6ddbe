#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "qcsim/codec.hpp"
#include "qcsim/detection.hpp"
#include "qcsim/quadrature.hpp"
#include "qcsim/rng.hpp"

namespace qcsim {

struct NoAttack {};

/// Passive beamsplitter tap diverting a fraction tau of the signal to Eve.
struct TapAttack {
    double tau;
};

/// Eve swaps in a beam from her own EPR source toward Alice, reads Alice's
/// modulation with her retained half, and re-modulates the genuine beam.
struct InterceptResendAttack {
    double fake_r;
};

/// Quantum non-demolition measurement of one quadrature with resolution sigma_m.
struct QndAttack {
    Quadrature measured;
    double sigma_m;
};

using AttackSpec = std::variant<NoAttack, TapAttack, InterceptResendAttack, QndAttack>;

/// Throws DomainError when a parameter is out of range.
void validate(const AttackSpec& attack);

/// "none", "tap", "intercept_resend" or "qnd".
std::string attack_name(const AttackSpec& attack);

/// What Eve learned. Observations are per slot: the tapped amplitude
/// quadrature, the QND estimate, or the d_plus of her own Bell detector.
struct EveRecord {
    std::vector<double> observations;
    std::vector<std::uint8_t> decoded_bits;
};

struct TapResult {
    Beam to_bob;
    Beam eve;
};

TapResult tap(Beam signal, double tau, RngStream& rng);

struct QndResult {
    double eve_estimate;
    Beam disturbed;
};

/// The measured quadrature passes unchanged; the conjugate one picks up
/// back-action noise of variance 1/sigma_m.
QndResult qnd_measure(Beam signal, Quadrature measured, double sigma_m, RngStream& rng);

/// Stateful intercept-resend adversary. Per frame the session calls
/// intercept_outbound() for every slot, then either intercept_return() for
/// every slot followed by release_frame(), or drop_frame() when Alice blocked.
class InterceptResendEve {
public:
    /// `resend_amplitude` and `resend_window` size the re-modulation of the
    /// genuine beam; Eve uses the same sizing rule as Alice.
    InterceptResendEve(SqueezeParam fake_r, double resend_amplitude, HidingWindow resend_window);

    /// Keeps the genuine beam and returns the fake signal beam sent to Alice.
    Beam intercept_outbound(Beam genuine, RngStream& fake_source);

    /// Measures Alice's modulated fake beam against Eve's retained fake idler.
    void intercept_return(Beam from_alice);

    /// Decodes the frame and returns the genuine beams re-modulated with the
    /// decoded bit, in slot order.
    std::vector<Beam> release_frame(std::size_t frame_index);

    /// Alice blocked the frame; nothing is forwarded.
    void drop_frame();

    const EveRecord& record() const noexcept { return record_; }

private:
    SqueezeParam fake_r_;
    double resend_amplitude_;
    HidingWindow resend_window_;
    double decode_noise_var_;
    std::vector<Beam> genuine_;
    std::vector<Beam> fake_idler_;
    std::vector<JointMeasurement> readout_;
    EveRecord record_;
};

}  // namespace qcsim
