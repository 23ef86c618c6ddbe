#pragma once

#include <array>

#include "qcsim/rng.hpp"

namespace qcsim {

/// ln(3)/4: below or at this correlation parameter the single-beam noise
/// does not exceed the correlation noise and no signal can be hidden.
inline constexpr double kHidingThreshold = 0.27465307216702745;

/// Correlation parameter of the EPR source; r = 0 is uncorrelated vacuum.
class SqueezeParam {
public:
    /// Throws DomainError for negative or non-finite r.
    explicit SqueezeParam(double r);

    double value() const noexcept { return r_; }

private:
    double r_;
};

/// Quadratures of one beam in shot-noise units (vacuum variance 1).
struct Beam {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Beam&, const Beam&) = default;
};

/// One time slot of the two EPR beams: signal (x1, y1) and idler (x2, y2).
struct SlotPair {
    double x1 = 0.0;
    double y1 = 0.0;
    double x2 = 0.0;
    double y2 = 0.0;

    Beam signal() const noexcept { return {x1, y1}; }
    Beam idler() const noexcept { return {x2, y2}; }

    friend bool operator==(const SlotPair&, const SlotPair&) = default;
};

struct VariancePair {
    double beam_var;  ///< single-quadrature variance, cosh(2r)
    double corr_var;  ///< Var(X1+X2) = Var(Y1-Y2) = 2 exp(-2r)
};

/// Allowed signal power interval (lower, upper); empty when lower >= upper.
struct HidingWindow {
    double lower;
    double upper;
    bool empty;

    bool contains(double power) const noexcept { return !empty && power > lower && power < upper; }
};

VariancePair epr_variance(SqueezeParam r);

/// Four independent standard normals feeding one slot.
struct NormalDraws {
    double u, v, w, z;
};

/// Deterministic part of the sampler: amplitude quadratures from (u, v)
/// are anticorrelated, phase quadratures from (w, z) are correlated.
SlotPair epr_slot_from_draws(SqueezeParam r, const NormalDraws& d) noexcept;

SlotPair sample_slot(SqueezeParam r, RngStream& rng);

/// Covariance matrix of (x1, y1, x2, y2).
std::array<std::array<double, 4>, 4> epr_covariance(SqueezeParam r);

/// Beamsplitter loss with vacuum admixture. Throws DomainError unless 0 <= eta <= 1.
Beam apply_loss(Beam in, double eta, RngStream& rng);

HidingWindow hiding_window(SqueezeParam r);

/// Closed-form Var(X1' + X2) after loss eta on the signal beam only.
double lossy_corr_var(SqueezeParam r, double eta);

}  // namespace qcsim
