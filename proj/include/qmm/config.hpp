#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qmm/mobility.hpp"
#include "qmm/stochastic.hpp"

namespace qmm {

enum class ModelKind { QMM, RWM };

struct GridShape {
    std::size_t rows = 10;
    std::size_t cols = 10;

    friend bool operator==(const GridShape&, const GridShape&) = default;
};

// One run, fully parameterised. Defaults are the ones a config document
// falls back to for unspecified keys; `model` and `n` must always be given.
struct ScenarioConfig {
    ModelKind model = ModelKind::QMM;
    std::size_t n = 0;
    RateParam lambda{0.5};
    RateParam mu{1.0};
    double speed = 0.5;  // meters per step
    std::uint64_t steps = 1000;
    std::vector<std::uint64_t> snapshot_steps;
    Area area{300.0, 300.0};
    StepModel step_model = StepModel::PaperLiteral;
    BoundaryPolicy boundary = BoundaryPolicy::Reflect;
    bool gated = false;
    double time_per_step = 1.0;
    std::uint64_t seed = 1;
    GridShape grid;
    double neighbor_radius = 30.0;

    friend bool operator==(const ScenarioConfig&, const ScenarioConfig&) = default;
};

using ConfigOverride = std::pair<std::string, std::string>;

// Parses `key = value` lines (`#` starts a comment). Overrides are applied
// after the document, as if appended to it. A missing snapshot_steps key
// means "the final step". Throws ValidationError naming the offending key.
ScenarioConfig parse_config(std::string_view text, std::span<const ConfigOverride> overrides = {});

// Throws ValidationError naming the field and the violated constraint.
void validate(const ScenarioConfig& config);

// Every key in canonical order; parse_config(format_config(c)) == c up to
// the 9-significant-digit rounding of reals.
std::string format_config(const ScenarioConfig& config);

// True for keys that format_config emits.
bool is_config_key(std::string_view key);

std::string to_string(ModelKind kind);
std::string to_string(StepModel model);
std::string to_string(BoundaryPolicy policy);

}  // namespace qmm
