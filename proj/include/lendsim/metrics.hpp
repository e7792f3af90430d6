#pragma once

#include <vector>

#include "lendsim/engine.hpp"

namespace lendsim {

// Per-period order statistics across an ensemble (boxplot data).
struct SeriesStats {
    std::vector<double> mean;
    std::vector<double> min;
    std::vector<double> q1;
    std::vector<double> median;
    std::vector<double> q3;
    std::vector<double> max;
};

bool is_defined(double value);

// Element t = values[t] / values[t-1] - 1; element 0 is NaN.
std::vector<double> one_period_return(const std::vector<double>& values);

// Element t = (values[t] / values[t-window])^(periods_per_year/window) - 1,
// defined for t >= window; NaN elsewhere. A window longer than the series
// yields an all-NaN series.
std::vector<double> trailing_annualized_return(const std::vector<double>& values,
                                               int window, int periods_per_year);

// Share of total assets out on loan: (total_assets - cash) / total_assets.
std::vector<double> allocation_ratio(const RunResult& result);

// Quartiles use the median-of-halves (exclusive) convention; NaN entries are
// skipped, and a period with no defined values yields NaN stats.
SeriesStats ensemble_stats(const std::vector<std::vector<double>>& ensemble);

double series_mean(const std::vector<double>& values);
double sample_std_error(const std::vector<double>& values);

}  // namespace lendsim
