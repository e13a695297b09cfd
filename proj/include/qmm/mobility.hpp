#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "qmm/queueing.hpp"
#include "qmm/stochastic.hpp"

namespace qmm {

struct ScenarioConfig;

// Rectangular simulation area anchored at the origin, in meters.
class Area {
  public:
    Area(double width, double height);

    double width() const noexcept { return width_; }
    double height() const noexcept { return height_; }
    bool contains(double x, double y) const noexcept {
        return x >= 0.0 && x <= width_ && y >= 0.0 && y <= height_;
    }

    friend bool operator==(const Area&, const Area&) = default;

  private:
    double width_;
    double height_;
};

struct Position {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Position&, const Position&) = default;
};

// Per-axis direction of travel (+1 or -1). Reflect flips the sign of the
// axis it bounces on, so a reflected node keeps moving away from the wall.
struct Heading {
    int x = 1;
    int y = 1;
};

struct NodeState {
    std::uint64_t id = 0;
    Position position;
    double arrival_time = 0.0;
    double departure_time = 0.0;
    bool active = true;
    Heading heading;
};

struct SnapshotEntry {
    std::uint64_t id = 0;
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const SnapshotEntry&, const SnapshotEntry&) = default;
};

struct Snapshot {
    std::uint64_t step = 0;
    std::vector<SnapshotEntry> positions;  // active nodes, ids ascending

    friend bool operator==(const Snapshot&, const Snapshot&) = default;
};

struct TraceRecord {
    std::uint64_t step = 0;
    std::uint64_t id = 0;
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const TraceRecord&, const TraceRecord&) = default;
};

struct Trace {
    std::vector<TraceRecord> records;  // steps ascending, ids ascending per step

    friend bool operator==(const Trace&, const Trace&) = default;
};

enum class StepModel {
    PaperLiteral,  // s * u per axis, u in [0, 1): drifts toward +x, +y
    Symmetric,     // s * (u - 1/2) per axis: zero mean
};

enum class BoundaryPolicy { Reflect, Clamp, Unbounded };

// Displacement along one axis for a uniform draw u in [0, 1).
double step_displacement(double u, double speed, StepModel model) noexcept;

// Applies the boundary policy to one coordinate in [0, extent]. Reflect folds
// any overshoot (however large) back inside and flips `heading` once per
// bounce; Clamp projects onto the boundary; Unbounded returns the input.
double apply_boundary(double proposed, double extent, int& heading, BoundaryPolicy policy);

void apply_boundary(NodeState& node, const Area& area, BoundaryPolicy policy);

// Node i sits at (arrivals[i], departures[i]): the queue's time schedule is
// the initial geometry, which lies above the 45 degree diagonal.
std::vector<NodeState> initial_placement_qmm(const ArrivalSchedule& schedule);

// Uniform in the unit square at the origin corner; draws x then y per node.
// arrival 0, departure +inf, all active.
std::vector<NodeState> initial_placement_rwm(std::size_t n, RandomStream& stream);

// One mobility step. For each active node in id order: draw x, draw y, move
// along the node's heading, then apply the boundary policy per axis.
// Inactive nodes are neither moved nor consume draws.
std::vector<NodeState> mobility_step(std::vector<NodeState> nodes, double speed,
                                     RandomStream& stream, StepModel model,
                                     BoundaryPolicy boundary, const Area& area);

// gated == false: everyone active. gated == true: active iff
// arrival_time <= step * time_per_step < departure_time.
std::vector<NodeState> set_activity(std::vector<NodeState> nodes, std::uint64_t step,
                                    double time_per_step, bool gated);

Snapshot take_snapshot(std::span<const NodeState> nodes, std::uint64_t step);

struct MobilityRun {
    std::optional<ArrivalSchedule> schedule;  // QMM only
    Trace trace;
    std::vector<Snapshot> snapshots;          // in config.snapshot_steps order
};

using StepObserver = std::function<void(std::uint64_t step, std::span<const NodeState> nodes)>;

// Full run recording every step into the returned trace.
MobilityRun run_mobility(const ScenarioConfig& config, RandomStream& stream);

// Same run, but each step is handed to `on_step` (may be empty) instead of
// being accumulated; the returned trace is empty.
MobilityRun run_mobility(const ScenarioConfig& config, RandomStream& stream,
                         const StepObserver& on_step);

}  // namespace qmm
