#include "qcsim/stats.hpp"

#include <cmath>

#include "qcsim/errors.hpp"

namespace qcsim::stats {

namespace {
void require(std::size_t n, std::size_t at_least, const char* what) {
    if (n < at_least) {
        throw InputError(std::string(what) + " needs at least " + std::to_string(at_least) + " values");
    }
}
}  // namespace

double mean(std::span<const double> xs) {
    require(xs.size(), 1, "mean");
    double sum = 0.0;
    for (double x : xs) sum += x;
    return sum / static_cast<double>(xs.size());
}

double variance(std::span<const double> xs) {
    return covariance(xs, xs);
}

double covariance(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw InputError("covariance: length mismatch");
    require(a.size(), 2, "covariance");
    const double ma = mean(a);
    const double mb = mean(b);
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += (a[i] - ma) * (b[i] - mb);
    return acc / static_cast<double>(a.size() - 1);
}

double pearson(std::span<const double> a, std::span<const double> b) {
    const double va = variance(a);
    const double vb = variance(b);
    if (va == 0.0 || vb == 0.0) return 0.0;
    return covariance(a, b) / std::sqrt(va * vb);
}

double mean_square(std::span<const double> xs) {
    require(xs.size(), 1, "mean_square");
    double acc = 0.0;
    for (double x : xs) acc += x * x;
    return acc / static_cast<double>(xs.size());
}

double rms(std::span<const double> xs) {
    return std::sqrt(mean_square(xs));
}

}  // namespace qcsim::stats
