#include "qmm/mobility.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "qmm/config.hpp"
#include "qmm/errors.hpp"

namespace qmm {

Area::Area(double width, double height) : width_(width), height_(height) {
    if (!(width > 0.0) || !(height > 0.0) || !std::isfinite(width) || !std::isfinite(height)) {
        throw ValidationError("area: width and height must be finite and > 0");
    }
}

double step_displacement(double u, double speed, StepModel model) noexcept {
    switch (model) {
        case StepModel::PaperLiteral:
            return speed * u;
        case StepModel::Symmetric:
            return speed * (u - 0.5);
    }
    return 0.0;
}

double apply_boundary(double proposed, double extent, int& heading, BoundaryPolicy policy) {
    switch (policy) {
        case BoundaryPolicy::Unbounded:
            return proposed;
        case BoundaryPolicy::Clamp:
            return std::clamp(proposed, 0.0, extent);
        case BoundaryPolicy::Reflect: {
            if (proposed >= 0.0 && proposed <= extent) {
                return proposed;
            }
            // Reflection between two walls is periodic with period 2*extent:
            // the first half is traversed forward, the second mirrored.
            const double period = 2.0 * extent;
            double folded = std::fmod(proposed, period);
            if (folded < 0.0) {
                folded += period;
            }
            if (folded <= extent) {
                return folded;
            }
            heading = -heading;
            return period - folded;
        }
    }
    return proposed;
}

void apply_boundary(NodeState& node, const Area& area, BoundaryPolicy policy) {
    node.position.x = apply_boundary(node.position.x, area.width(), node.heading.x, policy);
    node.position.y = apply_boundary(node.position.y, area.height(), node.heading.y, policy);
}

std::vector<NodeState> initial_placement_qmm(const ArrivalSchedule& schedule) {
    const auto a = schedule.arrivals();
    const auto d = schedule.departures();
    std::vector<NodeState> nodes(schedule.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        nodes[i].id = i;
        nodes[i].position = {a[i], d[i]};
        nodes[i].arrival_time = a[i];
        nodes[i].departure_time = d[i];
    }
    return nodes;
}

std::vector<NodeState> initial_placement_rwm(std::size_t n, RandomStream& stream) {
    std::vector<NodeState> nodes(n);
    for (std::size_t i = 0; i < n; ++i) {
        nodes[i].id = i;
        nodes[i].position.x = stream.next_uniform();
        nodes[i].position.y = stream.next_uniform();
        nodes[i].arrival_time = 0.0;
        nodes[i].departure_time = std::numeric_limits<double>::infinity();
    }
    return nodes;
}

std::vector<NodeState> mobility_step(std::vector<NodeState> nodes, double speed,
                                     RandomStream& stream, StepModel model,
                                     BoundaryPolicy boundary, const Area& area) {
    if (!(speed >= 0.0)) {
        throw ValidationError("mobility_step: speed must be >= 0");
    }
    for (auto& node : nodes) {
        if (!node.active) {
            continue;
        }
        const double dx = step_displacement(stream.next_uniform(), speed, model);
        const double dy = step_displacement(stream.next_uniform(), speed, model);
        node.position.x += node.heading.x * dx;
        node.position.y += node.heading.y * dy;
        apply_boundary(node, area, boundary);
    }
    return nodes;
}

std::vector<NodeState> set_activity(std::vector<NodeState> nodes, std::uint64_t step,
                                    double time_per_step, bool gated) {
    if (!(time_per_step > 0.0)) {
        throw ValidationError("set_activity: time_per_step must be > 0");
    }
    const double now = static_cast<double>(step) * time_per_step;
    for (auto& node : nodes) {
        node.active = !gated || (node.arrival_time <= now && now < node.departure_time);
    }
    return nodes;
}

Snapshot take_snapshot(std::span<const NodeState> nodes, std::uint64_t step) {
    Snapshot snap;
    snap.step = step;
    for (const auto& node : nodes) {
        if (node.active) {
            snap.positions.push_back({node.id, node.position.x, node.position.y});
        }
    }
    std::sort(snap.positions.begin(), snap.positions.end(),
              [](const SnapshotEntry& a, const SnapshotEntry& b) { return a.id < b.id; });
    return snap;
}

namespace {

void record(Trace& trace, std::uint64_t step, std::span<const NodeState> nodes) {
    for (const auto& node : nodes) {
        if (node.active) {
            trace.records.push_back({step, node.id, node.position.x, node.position.y});
        }
    }
}

}  // namespace

MobilityRun run_mobility(const ScenarioConfig& config, RandomStream& stream) {
    Trace trace;
    auto run = run_mobility(config, stream, [&trace](std::uint64_t step, auto nodes) {
        record(trace, step, nodes);
    });
    run.trace = std::move(trace);
    return run;
}

MobilityRun run_mobility(const ScenarioConfig& config, RandomStream& stream,
                         const StepObserver& on_step) {
    validate(config);

    MobilityRun run;
    std::vector<NodeState> nodes;
    if (config.model == ModelKind::QMM) {
        run.schedule = build_schedule(config.n, config.lambda, config.mu, stream);
        nodes = initial_placement_qmm(*run.schedule);
    } else {
        nodes = initial_placement_rwm(config.n, stream);
    }
    for (auto& node : nodes) {
        apply_boundary(node, config.area, config.boundary);
    }

    // Snapshot requests in ascending order, mapped back to config order at the end.
    std::vector<std::uint64_t> wanted = config.snapshot_steps;
    std::sort(wanted.begin(), wanted.end());
    std::vector<Snapshot> captured;
    captured.reserve(wanted.size());
    auto next_wanted = wanted.begin();

    auto observe = [&](std::uint64_t step) {
        if (on_step) {
            on_step(step, nodes);
        }
        while (next_wanted != wanted.end() && *next_wanted == step) {
            captured.push_back(take_snapshot(nodes, step));
            ++next_wanted;
        }
    };

    nodes = set_activity(std::move(nodes), 0, config.time_per_step, config.gated);
    observe(0);
    for (std::uint64_t step = 1; step <= config.steps; ++step) {
        nodes = set_activity(std::move(nodes), step, config.time_per_step, config.gated);
        nodes = mobility_step(std::move(nodes), config.speed, stream, config.step_model,
                              config.boundary, config.area);
        observe(step);
    }

    run.snapshots.reserve(config.snapshot_steps.size());
    for (const auto step : config.snapshot_steps) {
        const auto it = std::find_if(captured.begin(), captured.end(),
                                     [step](const Snapshot& s) { return s.step == step; });
        run.snapshots.push_back(*it);
    }
    return run;
}

}  // namespace qmm
