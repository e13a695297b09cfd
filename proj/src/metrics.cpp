#include "qmm/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include <boost/math/distributions/chi_squared.hpp>

#include "qmm/errors.hpp"

namespace qmm {

namespace {

constexpr double kMinExpected = 5.0;

std::size_t bin_index(double v, double extent, std::size_t bins) {
    const auto i = static_cast<std::size_t>(std::floor(v / extent * static_cast<double>(bins)));
    return std::min(i, bins - 1);
}

}  // namespace

OccupancyGrid occupancy_grid(const Snapshot& snapshot, const Area& area, std::size_t rows,
                             std::size_t cols) {
    if (rows < 1 || cols < 1) {
        throw ValidationError("occupancy_grid: rows and cols must be >= 1");
    }
    OccupancyGrid grid{rows, cols, std::vector<std::uint64_t>(rows * cols, 0), 0};
    for (const auto& p : snapshot.positions) {
        if (!area.contains(p.x, p.y)) {
            throw ValidationError("occupancy_grid: node " + std::to_string(p.id) +
                                  " lies outside the area");
        }
        const auto col = bin_index(p.x, area.width(), cols);
        const auto row = bin_index(p.y, area.height(), rows);
        ++grid.counts[row * cols + col];
        ++grid.total;
    }
    return grid;
}

double chi_square_uniformity(const OccupancyGrid& grid) {
    if (grid.total == 0 || grid.counts.empty()) {
        throw ValidationError("chi_square_uniformity: grid is empty");
    }
    const double expected =
        static_cast<double>(grid.total) / static_cast<double>(grid.counts.size());
    double stat = 0.0;
    for (const auto c : grid.counts) {
        const double diff = static_cast<double>(c) - expected;
        stat += diff * diff / expected;
    }
    return stat;
}

Position centroid(const Snapshot& snapshot) {
    if (snapshot.positions.empty()) {
        throw ValidationError("centroid: snapshot is empty");
    }
    double sx = 0.0;
    double sy = 0.0;
    for (const auto& p : snapshot.positions) {
        sx += p.x;
        sy += p.y;
    }
    const auto n = static_cast<double>(snapshot.positions.size());
    return {sx / n, sy / n};
}

double mean_neighbor_count(const Snapshot& snapshot, double radius) {
    if (!(radius >= 0.0)) {
        throw ValidationError("mean_neighbor_count: radius must be >= 0");
    }
    const auto& pts = snapshot.positions;
    if (pts.empty()) {
        return 0.0;
    }
    const double r2 = radius * radius;
    std::uint64_t pairs = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            const double dx = pts[i].x - pts[j].x;
            const double dy = pts[i].y - pts[j].y;
            if (dx * dx + dy * dy <= r2) {
                ++pairs;
            }
        }
    }
    // Each unordered pair contributes one neighbor to both endpoints.
    return 2.0 * static_cast<double>(pairs) / static_cast<double>(pts.size());
}

UniformityReport uniformity_report(const Snapshot& snapshot, const Area& area, std::size_t rows,
                                   std::size_t cols, double neighbor_radius) {
    const auto grid = occupancy_grid(snapshot, area, rows, cols);
    return {chi_square_uniformity(grid), grid.counts.size(), centroid(snapshot),
            mean_neighbor_count(snapshot, neighbor_radius)};
}

std::vector<std::uint64_t> arrival_histogram(std::span<const double> arrivals, double window,
                                             double horizon) {
    if (!(window > 0.0) || !(horizon > 0.0) || !std::isfinite(window) ||
        !std::isfinite(horizon)) {
        throw ValidationError("arrival_histogram: window and horizon must be > 0");
    }
    const auto bins = static_cast<std::size_t>(std::ceil(horizon / window));
    std::vector<std::uint64_t> counts(bins, 0);
    for (const double a : arrivals) {
        if (!(a >= 0.0)) {
            continue;
        }
        const auto k = static_cast<std::size_t>(std::floor(a / window));
        if (k < bins) {
            ++counts[k];
        }
    }
    return counts;
}

PoissonFit compare_to_poisson(std::span<const std::uint64_t> histogram, RateParam rate,
                              double window) {
    if (histogram.empty()) {
        throw ValidationError("compare_to_poisson: histogram is empty");
    }
    std::map<std::uint64_t, std::uint64_t> frequency;  // per-window count -> #windows
    for (const auto c : histogram) {
        ++frequency[c];
    }
    const double windows = static_cast<double>(histogram.size());
    const std::uint64_t max_count = frequency.rbegin()->first;

    auto observed_at = [&](std::uint64_t k) -> double {
        const auto it = frequency.find(k);
        return it == frequency.end() ? 0.0 : static_cast<double>(it->second);
    };

    PoissonFit fit;

    // Total variation over all counts; beyond max_count only the model has mass.
    double tv = 0.0;
    double model_mass = 0.0;
    for (std::uint64_t k = 0; k <= max_count; ++k) {
        const double p = poisson_pmf(k, rate, window);
        model_mass += p;
        tv += std::abs(observed_at(k) / windows - p);
    }
    tv += std::max(0.0, 1.0 - model_mass);
    fit.total_variation = 0.5 * tv;

    // Pooled chi-square. Close a bin once it reaches the expected-count floor,
    // provided the remaining tail can still form a bin of its own.
    struct Bin {
        double observed = 0.0;
        double expected = 0.0;
    };
    std::vector<Bin> bins;
    Bin open;
    double cumulative = 0.0;
    double observed_so_far = 0.0;
    for (std::uint64_t k = 0;; ++k) {
        const double p = poisson_pmf(k, rate, window);
        open.expected += windows * p;
        open.observed += observed_at(k);
        cumulative += p;
        observed_so_far += observed_at(k);
        const double tail_expected = windows * std::max(0.0, 1.0 - cumulative);
        if (open.expected >= kMinExpected && tail_expected >= kMinExpected) {
            bins.push_back(open);
            open = {};
            continue;
        }
        if (tail_expected < kMinExpected && k >= max_count) {
            open.expected += tail_expected;
            open.observed += windows - observed_so_far;
            break;
        }
    }
    if (open.expected < kMinExpected && !bins.empty()) {
        bins.back().expected += open.expected;
        bins.back().observed += open.observed;
    } else {
        bins.push_back(open);
    }

    for (const auto& b : bins) {
        const double diff = b.observed - b.expected;
        fit.chi_square += diff * diff / b.expected;
    }
    fit.degrees_of_freedom = bins.size() - 1;
    return fit;
}

double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf) {
    if (samples.empty()) {
        throw ValidationError("ks_statistic: no samples");
    }
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double f = cdf(samples[i]);
        d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
    }
    return d;
}

double chi_square_critical(std::size_t degrees_of_freedom, double significance) {
    if (degrees_of_freedom == 0 || !(significance > 0.0 && significance < 1.0)) {
        throw ValidationError("chi_square_critical: need dof >= 1 and significance in (0, 1)");
    }
    const boost::math::chi_squared dist(static_cast<double>(degrees_of_freedom));
    return boost::math::quantile(boost::math::complement(dist, significance));
}

}  // namespace qmm
