#include "qmm/engine.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <system_error>

#include "qmm/errors.hpp"
#include "qmm/io.hpp"
#include "qmm/text.hpp"

namespace qmm {

namespace {

constexpr double kArrivalWindow = 1.0;

void ensure_dir(const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) {
        throw IoError(dir.string(), ec.message());
    }
}

}  // namespace

std::optional<PoissonFit> arrival_fit(const ArrivalSchedule& schedule, RateParam rate) {
    if (schedule.empty()) {
        return std::nullopt;
    }
    const double last = schedule.arrivals().back();
    const double horizon = std::floor(last / kArrivalWindow) * kArrivalWindow;
    if (horizon < kArrivalWindow) {
        return std::nullopt;
    }
    const auto histogram = arrival_histogram(schedule.arrivals(), kArrivalWindow, horizon);
    return compare_to_poisson(histogram, rate, kArrivalWindow);
}

SnapshotMetrics snapshot_metrics(const Snapshot& snapshot, const ScenarioConfig& config) {
    SnapshotMetrics m;
    m.step = snapshot.step;
    m.nodes = snapshot.positions.size();
    if (snapshot.positions.empty()) {
        return m;
    }
    // Unbounded runs can leave the area; grid a clipped copy but keep the
    // centroid and neighborhoods on the true positions.
    Snapshot clipped = snapshot;
    for (auto& p : clipped.positions) {
        p.x = std::clamp(p.x, 0.0, config.area.width());
        p.y = std::clamp(p.y, 0.0, config.area.height());
    }
    const auto grid = occupancy_grid(clipped, config.area, config.grid.rows, config.grid.cols);
    m.uniformity = UniformityReport{chi_square_uniformity(grid), grid.counts.size(),
                                    centroid(snapshot),
                                    mean_neighbor_count(snapshot, config.neighbor_radius)};
    return m;
}

RunReport run_scenario(const ScenarioConfig& config, const RunOptions& options) {
    validate(config);
    const bool writing = !options.out_dir.empty();
    if (writing) {
        ensure_dir(options.out_dir);
    }

    std::optional<TraceWriter> trace;
    if (writing && options.write_trace) {
        trace.emplace(options.out_dir / "trace.csv");
    }
    StepObserver on_step;
    if (trace) {
        on_step = [&trace](std::uint64_t step, std::span<const NodeState> nodes) {
            trace->append(step, nodes);
        };
    }

    RandomStream stream(config.seed);
    const auto run = run_mobility(config, stream, on_step);
    if (trace) {
        trace->close();
    }

    RunReport report{config, {}, std::nullopt, std::nullopt};
    for (const auto& snap : run.snapshots) {
        report.per_snapshot.push_back(snapshot_metrics(snap, config));
    }
    if (run.schedule) {
        report.arrival_fit = arrival_fit(*run.schedule, config.lambda);
        if (!run.schedule->empty()) {
            report.mean_in_system =
                mean_number_in_system(*run.schedule, run.schedule->departures().back());
        }
    }

    if (writing) {
        for (const auto& snap : run.snapshots) {
            write_snapshot(options.out_dir, snap);
        }
        write_report(options.out_dir / "report.txt", report);
    }
    return report;
}

std::vector<BatchCell> run_batch(const ScenarioConfig& base, const std::vector<RateParam>& lambdas,
                                 const std::vector<std::uint64_t>& seeds,
                                 const RunOptions& options) {
    if (lambdas.empty()) {
        throw ValidationError("batch: lambda grid is empty");
    }
    if (seeds.empty()) {
        throw ValidationError("batch: seed list is empty");
    }
    const bool writing = !options.out_dir.empty();
    if (writing) {
        ensure_dir(options.out_dir);
    }

    std::vector<BatchCell> cells;
    cells.reserve(lambdas.size() * seeds.size());
    for (const auto lambda : lambdas) {
        for (const auto seed : seeds) {
            BatchCell cell{lambda.value(), seed, std::nullopt, {}};
            ScenarioConfig config = base;
            config.lambda = lambda;
            config.seed = seed;
            RunOptions cell_options = options;
            if (writing) {
                cell_options.out_dir = options.out_dir / ("lambda_" + format_real(lambda.value()) +
                                                          "_seed_" + std::to_string(seed));
            }
            try {
                cell.report = run_scenario(config, cell_options);
            } catch (const std::exception& e) {
                cell.error = e.what();
            }
            cells.push_back(std::move(cell));
        }
    }

    if (writing) {
        std::string summary = "lambda,seed,status,mean_in_system,arrival_tv,error\n";
        for (const auto& c : cells) {
            summary += format_real(c.lambda) + ',' + std::to_string(c.seed) + ',';
            if (!c.report) {
                std::string msg = c.error;
                std::replace(msg.begin(), msg.end(), ',', ';');
                std::replace(msg.begin(), msg.end(), '\n', ' ');
                summary += "failed,,," + msg + '\n';
                continue;
            }
            summary += "ok,";
            summary += c.report->mean_in_system ? format_real(*c.report->mean_in_system) : "";
            summary += ',';
            summary += c.report->arrival_fit ? format_real(c.report->arrival_fit->total_variation)
                                             : "";
            summary += ",\n";
        }
        write_text(options.out_dir / "batch_summary.csv", summary);
    }
    return cells;
}

PmfTable emit_pmf_curves(const std::vector<RateParam>& lambdas, double t, std::uint64_t n_max) {
    if (lambdas.empty()) {
        throw ValidationError("pmf: lambda grid is empty");
    }
    PmfTable table;
    table.t = t;
    for (const auto lambda : lambdas) {
        table.lambdas.push_back(lambda.value());
        table.curves.push_back(poisson_curve(lambda, t, n_max));
    }
    return table;
}

}  // namespace qmm
