#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "qmm/mobility.hpp"
#include "qmm/stochastic.hpp"

namespace qmm {

// Row-major cell counts; row indexes y, column indexes x.
struct OccupancyGrid {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<std::uint64_t> counts;
    std::uint64_t total = 0;

    std::uint64_t at(std::size_t row, std::size_t col) const { return counts.at(row * cols + col); }
};

struct UniformityReport {
    double chi_square = 0.0;
    std::size_t cells = 0;
    Position centroid;
    double mean_neighbors = 0.0;
};

// Bins by half-open cells [i*w/cols, (i+1)*w/cols); the last row and column
// are closed so points on the far edges are counted. Throws ValidationError
// for positions outside the area or a zero-sized grid.
OccupancyGrid occupancy_grid(const Snapshot& snapshot, const Area& area, std::size_t rows,
                             std::size_t cols);

// Pearson statistic against equal expected counts. Throws on an empty grid.
double chi_square_uniformity(const OccupancyGrid& grid);

Position centroid(const Snapshot& snapshot);

// Average number of other nodes within distance <= radius.
double mean_neighbor_count(const Snapshot& snapshot, double radius);

UniformityReport uniformity_report(const Snapshot& snapshot, const Area& area, std::size_t rows,
                                   std::size_t cols, double neighbor_radius);

// counts[k] = #arrivals in [k*window, (k+1)*window), k < ceil(horizon/window).
std::vector<std::uint64_t> arrival_histogram(std::span<const double> arrivals, double window,
                                             double horizon);

struct PoissonFit {
    double chi_square = 0.0;
    double total_variation = 0.0;
    std::size_t degrees_of_freedom = 0;  // pooled bins - 1
};

// Compares the distribution of per-window counts with Poisson(rate*window).
// Chi-square bins are pooled left to right until each expected count is at
// least 5; the last bin absorbs the upper tail. TV is taken over all counts,
// including the theoretical tail beyond the largest observed count.
PoissonFit compare_to_poisson(std::span<const std::uint64_t> histogram, RateParam rate,
                              double window);

// Kolmogorov-Smirnov sup distance between the empirical CDF and `cdf`.
double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf);

// Upper critical value of the chi-square distribution.
double chi_square_critical(std::size_t degrees_of_freedom, double significance);

}  // namespace qmm
