#pragma once

#include <span>

namespace qcsim::stats {

double mean(std::span<const double> xs);

/// Unbiased sample variance; requires at least two values.
double variance(std::span<const double> xs);

double covariance(std::span<const double> a, std::span<const double> b);

double pearson(std::span<const double> a, std::span<const double> b);

/// Mean of squares about zero (no mean subtraction).
double mean_square(std::span<const double> xs);

double rms(std::span<const double> xs);

}  // namespace qcsim::stats
