#include "lendsim/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace lendsim {

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Median of sorted[first, last).
double median_of(const std::vector<double>& sorted, std::size_t first,
                 std::size_t last) {
    const std::size_t n = last - first;
    if (n == 0) return kNaN;
    const std::size_t mid = first + n / 2;
    if (n % 2 == 1) return sorted[mid];
    return 0.5 * (sorted[mid - 1] + sorted[mid]);
}
}  // namespace

bool is_defined(double value) { return !std::isnan(value); }

std::vector<double> one_period_return(const std::vector<double>& values) {
    if (values.size() < 2) {
        throw std::invalid_argument("series must have at least two values");
    }
    for (double v : values) {
        if (!(v > 0.0)) {
            throw std::invalid_argument("series values must be positive");
        }
    }
    std::vector<double> out(values.size(), kNaN);
    for (std::size_t t = 1; t < values.size(); ++t) {
        out[t] = values[t] / values[t - 1] - 1.0;
    }
    return out;
}

std::vector<double> trailing_annualized_return(const std::vector<double>& values,
                                               int window, int periods_per_year) {
    if (window < 1) {
        throw std::invalid_argument("window must be >= 1");
    }
    if (periods_per_year < 1) {
        throw std::invalid_argument("periods_per_year must be >= 1");
    }
    std::vector<double> out(values.size(), kNaN);
    const double per_year = static_cast<double>(periods_per_year) / window;
    for (std::size_t t = static_cast<std::size_t>(window); t < values.size(); ++t) {
        const double then = values[t - static_cast<std::size_t>(window)];
        if (!(then > 0.0) || !(values[t] > 0.0)) continue;
        out[t] = std::pow(values[t] / then, per_year) - 1.0;
    }
    return out;
}

std::vector<double> allocation_ratio(const RunResult& result) {
    std::vector<double> out;
    out.reserve(result.total_assets.size());
    for (std::size_t t = 0; t < result.total_assets.size(); ++t) {
        const double assets = result.total_assets[t];
        if (!(assets > 0.0)) {
            throw std::invalid_argument("total assets must be positive");
        }
        out.push_back((assets - result.cash[t]) / assets);
    }
    return out;
}

SeriesStats ensemble_stats(const std::vector<std::vector<double>>& ensemble) {
    if (ensemble.empty()) {
        throw std::invalid_argument("ensemble is empty");
    }
    const std::size_t length = ensemble.front().size();
    for (const auto& series : ensemble) {
        if (series.size() != length) {
            throw std::invalid_argument("ensemble series lengths differ");
        }
    }
    SeriesStats stats;
    stats.mean.resize(length, kNaN);
    stats.min.resize(length, kNaN);
    stats.q1.resize(length, kNaN);
    stats.median.resize(length, kNaN);
    stats.q3.resize(length, kNaN);
    stats.max.resize(length, kNaN);

    std::vector<double> column;
    for (std::size_t t = 0; t < length; ++t) {
        column.clear();
        for (const auto& series : ensemble) {
            if (is_defined(series[t])) column.push_back(series[t]);
        }
        if (column.empty()) continue;
        std::sort(column.begin(), column.end());
        const std::size_t n = column.size();
        double sum = 0.0;
        for (double v : column) sum += v;
        stats.mean[t] = sum / static_cast<double>(n);
        stats.min[t] = column.front();
        stats.max[t] = column.back();
        stats.median[t] = median_of(column, 0, n);
        if (n == 1) {
            stats.q1[t] = column[0];
            stats.q3[t] = column[0];
        } else {
            // Median-of-halves, excluding the middle element when n is odd.
            stats.q1[t] = median_of(column, 0, n / 2);
            stats.q3[t] = median_of(column, (n + 1) / 2, n);
        }
    }
    return stats;
}

double series_mean(const std::vector<double>& values) {
    double sum = 0.0;
    std::size_t count = 0;
    for (double v : values) {
        if (!is_defined(v)) continue;
        sum += v;
        ++count;
    }
    return count == 0 ? kNaN : sum / static_cast<double>(count);
}

double sample_std_error(const std::vector<double>& values) {
    std::vector<double> defined;
    for (double v : values) {
        if (is_defined(v)) defined.push_back(v);
    }
    if (defined.size() < 2) return 0.0;
    const double mean = series_mean(defined);
    double ss = 0.0;
    for (double v : defined) ss += (v - mean) * (v - mean);
    const double variance = ss / static_cast<double>(defined.size() - 1);
    return std::sqrt(variance / static_cast<double>(defined.size()));
}

}  // namespace lendsim
