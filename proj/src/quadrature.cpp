#include "qcsim/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "qcsim/errors.hpp"

namespace qcsim {

SqueezeParam::SqueezeParam(double r) : r_(r) {
    if (!std::isfinite(r) || r < 0.0) {
        throw DomainError("correlation parameter r must be finite and >= 0, got " + std::to_string(r));
    }
}

VariancePair epr_variance(SqueezeParam r) {
    const double two_r = 2.0 * r.value();
    return {(std::exp(two_r) + std::exp(-two_r)) / 2.0, 2.0 * std::exp(-two_r)};
}

SlotPair epr_slot_from_draws(SqueezeParam r, const NormalDraws& d) noexcept {
    const double squeezed = std::exp(-r.value()) / std::numbers::sqrt2;
    const double stretched = std::exp(r.value()) / std::numbers::sqrt2;
    return {
        squeezed * d.u + stretched * d.v,
        stretched * d.w + squeezed * d.z,
        squeezed * d.u - stretched * d.v,
        stretched * d.w - squeezed * d.z,
    };
}

SlotPair sample_slot(SqueezeParam r, RngStream& rng) {
    NormalDraws d{};
    d.u = rng.normal();
    d.v = rng.normal();
    d.w = rng.normal();
    d.z = rng.normal();
    return epr_slot_from_draws(r, d);
}

std::array<std::array<double, 4>, 4> epr_covariance(SqueezeParam r) {
    const double c = std::cosh(2.0 * r.value());
    const double s = std::sinh(2.0 * r.value());
    // order: x1, y1, x2, y2
    return {{
        {c, 0.0, -s, 0.0},
        {0.0, c, 0.0, s},
        {-s, 0.0, c, 0.0},
        {0.0, s, 0.0, c},
    }};
}

Beam apply_loss(Beam in, double eta, RngStream& rng) {
    if (!(eta >= 0.0 && eta <= 1.0)) {
        throw DomainError("transmission eta must lie in [0, 1], got " + std::to_string(eta));
    }
    if (eta == 1.0) {
        return in;
    }
    const double keep = std::sqrt(eta);
    const double admix = std::sqrt(1.0 - eta);
    const double vx = rng.normal();
    const double vy = rng.normal();
    return {keep * in.x + admix * vx, keep * in.y + admix * vy};
}

HidingWindow hiding_window(SqueezeParam r) {
    const auto v = epr_variance(r);
    // lower >= upper  <=>  e^{4r} <= 3; decided on r so the boundary is exact.
    return {v.corr_var, v.beam_var, r.value() <= kHidingThreshold};
}

double lossy_corr_var(SqueezeParam r, double eta) {
    const double c = std::cosh(2.0 * r.value());
    const double s = std::sinh(2.0 * r.value());
    return eta * c + c - 2.0 * std::sqrt(eta) * s + (1.0 - eta);
}

}  // namespace qcsim
