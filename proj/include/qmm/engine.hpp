#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "qmm/config.hpp"
#include "qmm/metrics.hpp"

namespace qmm {

struct SnapshotMetrics {
    std::uint64_t step = 0;
    std::size_t nodes = 0;
    std::optional<UniformityReport> uniformity;  // absent for an empty snapshot
};

struct RunReport {
    ScenarioConfig config;
    std::vector<SnapshotMetrics> per_snapshot;  // in config.snapshot_steps order
    std::optional<PoissonFit> arrival_fit;      // QMM only
    std::optional<double> mean_in_system;       // QMM only
};

struct RunOptions {
    std::filesystem::path out_dir;  // empty: compute the report, write nothing
    bool write_trace = true;
};

// Arrival fit over unit windows up to the last complete window before the
// final arrival; nullopt when there is not a single complete window.
std::optional<PoissonFit> arrival_fit(const ArrivalSchedule& schedule, RateParam rate);

SnapshotMetrics snapshot_metrics(const Snapshot& snapshot, const ScenarioConfig& config);

// Runs one scenario. With an output directory it writes trace.csv (unless
// disabled), snapshot_<step>.csv per requested step and report.txt.
RunReport run_scenario(const ScenarioConfig& config, const RunOptions& options = {});

struct BatchCell {
    double lambda = 0.0;
    std::uint64_t seed = 0;
    std::optional<RunReport> report;  // absent when the run failed
    std::string error;
};

// Every (lambda, seed) pair in lambda-major order. A failing cell is
// recorded with its error and the sweep continues. With an output directory
// each cell writes into lambda_<lambda>_seed_<seed>/ and a batch_summary.csv
// lists every cell. Throws ValidationError for an empty grid.
std::vector<BatchCell> run_batch(const ScenarioConfig& base, const std::vector<RateParam>& lambdas,
                                 const std::vector<std::uint64_t>& seeds,
                                 const RunOptions& options = {});

struct PmfTable {
    double t = 0.0;
    std::vector<double> lambdas;
    std::vector<PmfCurve> curves;  // one per lambda
};

PmfTable emit_pmf_curves(const std::vector<RateParam>& lambdas, double t, std::uint64_t n_max);

}  // namespace qmm
