#pragma once

// Test-only Monte Carlo accumulators, kept independent of qcsim::stats.

#include <cmath>
#include <cstddef>

namespace mc {

/// Running mean/variance (Welford).
class Moments {
public:
    void add(double x) {
        ++n_;
        const double d = x - mean_;
        mean_ += d / static_cast<double>(n_);
        m2_ += d * (x - mean_);
    }
    std::size_t count() const { return n_; }
    double mean() const { return mean_; }
    double variance() const { return m2_ / static_cast<double>(n_ - 1); }

private:
    std::size_t n_ = 0;
    double mean_ = 0.0;
    double m2_ = 0.0;
};

/// Running covariance of two streams.
class CoMoments {
public:
    void add(double a, double b) {
        ++n_;
        const double da = a - ma_;
        ma_ += da / static_cast<double>(n_);
        mb_ += (b - mb_) / static_cast<double>(n_);
        c_ += da * (b - mb_);
        va_.add(a);
        vb_.add(b);
    }
    double covariance() const { return c_ / static_cast<double>(n_ - 1); }
    double correlation() const { return covariance() / std::sqrt(va_.variance() * vb_.variance()); }

private:
    std::size_t n_ = 0;
    double ma_ = 0.0;
    double mb_ = 0.0;
    double c_ = 0.0;
    Moments va_;
    Moments vb_;
};

/// Standard error of a Gaussian sample variance.
inline double variance_sigma(double variance, std::size_t n) {
    return variance * std::sqrt(2.0 / static_cast<double>(n - 1));
}

/// Standard error of a correlation degree (dB) estimated from n samples.
inline double cd_sigma_db(std::size_t n) {
    return 10.0 / std::log(10.0) * std::sqrt(2.0 / static_cast<double>(n - 1));
}

inline double cd_db(double variance) { return -10.0 * std::log10(variance / 2.0); }

}  // namespace mc
