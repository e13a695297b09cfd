#include "qmm/config.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <functional>
#include <set>
#include <sstream>
#include <string>

#include "qmm/errors.hpp"
#include "qmm/text.hpp"

namespace qmm {

namespace {

constexpr std::array<std::string_view, 15> kKeys = {
    "model",      "n",        "lambda", "mu",            "speed",
    "steps",      "snapshot_steps",     "area",          "step_model",
    "boundary",   "gated",    "time_per_step",           "seed",
    "grid",       "neighbor_radius",
};

[[noreturn]] void fail(std::string_view key, const std::string& msg) {
    throw ValidationError(std::string(key) + ": " + msg);
}

std::string lower(std::string_view text) {
    std::string out(text);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

double positive_real(std::string_view key, std::string_view value) {
    const double v = parse_real(value, key);
    if (!(v > 0.0) || !std::isfinite(v)) {
        fail(key, "must be > 0 (got " + std::string(value) + ")");
    }
    return v;
}

double nonnegative_real(std::string_view key, std::string_view value) {
    const double v = parse_real(value, key);
    if (!(v >= 0.0) || !std::isfinite(v)) {
        fail(key, "must be >= 0 (got " + std::string(value) + ")");
    }
    return v;
}

std::pair<double, double> parse_pair(std::string_view key, std::string_view value) {
    const auto lowered = lower(value);
    const auto parts = split(lowered, 'x');
    if (parts.size() != 2) {
        fail(key, "expected <width>x<height>, got '" + std::string(value) + "'");
    }
    return {parse_real(parts[0], key), parse_real(parts[1], key)};
}

bool parse_bool(std::string_view key, std::string_view value) {
    const auto v = lower(value);
    if (v == "true" || v == "1" || v == "yes") {
        return true;
    }
    if (v == "false" || v == "0" || v == "no") {
        return false;
    }
    fail(key, "expected true or false, got '" + std::string(value) + "'");
}

ModelKind parse_model(std::string_view value) {
    const auto v = lower(value);
    if (v == "qmm") return ModelKind::QMM;
    if (v == "rwm") return ModelKind::RWM;
    fail("model", "expected qmm or rwm, got '" + std::string(value) + "'");
}

StepModel parse_step_model(std::string_view value) {
    const auto v = lower(value);
    if (v == "paper_literal") return StepModel::PaperLiteral;
    if (v == "symmetric") return StepModel::Symmetric;
    fail("step_model", "expected paper_literal or symmetric, got '" + std::string(value) + "'");
}

BoundaryPolicy parse_boundary(std::string_view value) {
    const auto v = lower(value);
    if (v == "reflect") return BoundaryPolicy::Reflect;
    if (v == "clamp") return BoundaryPolicy::Clamp;
    if (v == "unbounded") return BoundaryPolicy::Unbounded;
    fail("boundary", "expected reflect, clamp or unbounded, got '" + std::string(value) + "'");
}

void set_value(ScenarioConfig& c, std::string_view key, std::string_view value) {
    if (key == "model") {
        c.model = parse_model(value);
    } else if (key == "n") {
        std::int64_t n = 0;
        const auto t = trim(value);
        const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), n);
        if (t.empty() || ec != std::errc{} || ptr != t.data() + t.size()) {
            fail(key, "not an integer: '" + std::string(value) + "'");
        }
        if (n < 1) {
            fail(key, "must be >= 1 (got " + std::to_string(n) + ")");
        }
        c.n = static_cast<std::size_t>(n);
    } else if (key == "lambda") {
        c.lambda = RateParam(positive_real(key, value));
    } else if (key == "mu") {
        c.mu = RateParam(positive_real(key, value));
    } else if (key == "speed") {
        c.speed = nonnegative_real(key, value);
    } else if (key == "steps") {
        c.steps = parse_u64(value, key);
    } else if (key == "snapshot_steps") {
        c.snapshot_steps.clear();
        if (!trim(value).empty()) {
            for (const auto part : split(value, ',')) {
                c.snapshot_steps.push_back(parse_u64(part, key));
            }
        }
    } else if (key == "area") {
        const auto [w, h] = parse_pair(key, value);
        if (!(w > 0.0) || !(h > 0.0)) {
            fail(key, "width and height must be > 0");
        }
        c.area = Area(w, h);
    } else if (key == "step_model") {
        c.step_model = parse_step_model(value);
    } else if (key == "boundary") {
        c.boundary = parse_boundary(value);
    } else if (key == "gated") {
        c.gated = parse_bool(key, value);
    } else if (key == "time_per_step") {
        c.time_per_step = positive_real(key, value);
    } else if (key == "seed") {
        c.seed = parse_u64(value, key);
    } else if (key == "grid") {
        const auto [rows, cols] = parse_pair(key, value);
        if (rows < 1 || cols < 1 || rows != std::floor(rows) || cols != std::floor(cols)) {
            fail(key, "rows and cols must be integers >= 1");
        }
        c.grid = {static_cast<std::size_t>(rows), static_cast<std::size_t>(cols)};
    } else if (key == "neighbor_radius") {
        c.neighbor_radius = nonnegative_real(key, value);
    } else {
        throw ValidationError("unknown key '" + std::string(key) + "'");
    }
}

}  // namespace

bool is_config_key(std::string_view key) {
    return std::find(kKeys.begin(), kKeys.end(), key) != kKeys.end();
}

ScenarioConfig parse_config(std::string_view text, std::span<const ConfigOverride> overrides) {
    ScenarioConfig config;
    std::set<std::string, std::less<>> seen;

    std::size_t line_no = 0;
    for (auto line : split(text, '\n')) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ValidationError("line " + std::to_string(line_no) + ": expected key = value");
        }
        const auto key = trim(line.substr(0, eq));
        set_value(config, key, trim(line.substr(eq + 1)));
        seen.emplace(key);
    }
    for (const auto& [key, value] : overrides) {
        set_value(config, key, value);
        seen.emplace(key);
    }

    for (const auto required : {"model", "n"}) {
        if (!seen.contains(required)) {
            throw ValidationError(std::string(required) + ": required key is missing");
        }
    }
    if (!seen.contains("snapshot_steps")) {
        config.snapshot_steps = {config.steps};
    }
    validate(config);
    return config;
}

void validate(const ScenarioConfig& c) {
    if (c.n < 1) {
        fail("n", "must be >= 1");
    }
    if (!(c.speed >= 0.0) || !std::isfinite(c.speed)) {
        fail("speed", "must be >= 0");
    }
    if (!(c.time_per_step > 0.0)) {
        fail("time_per_step", "must be > 0");
    }
    if (c.grid.rows < 1 || c.grid.cols < 1) {
        fail("grid", "rows and cols must be >= 1");
    }
    if (!(c.neighbor_radius >= 0.0)) {
        fail("neighbor_radius", "must be >= 0");
    }
    std::set<std::uint64_t> unique;
    for (const auto step : c.snapshot_steps) {
        if (step > c.steps) {
            fail("snapshot_steps", "step " + std::to_string(step) + " exceeds steps = " +
                                       std::to_string(c.steps));
        }
        if (!unique.insert(step).second) {
            fail("snapshot_steps", "duplicate step " + std::to_string(step));
        }
    }
}

std::string to_string(ModelKind kind) {
    return kind == ModelKind::QMM ? "qmm" : "rwm";
}

std::string to_string(StepModel model) {
    return model == StepModel::PaperLiteral ? "paper_literal" : "symmetric";
}

std::string to_string(BoundaryPolicy policy) {
    switch (policy) {
        case BoundaryPolicy::Reflect:
            return "reflect";
        case BoundaryPolicy::Clamp:
            return "clamp";
        case BoundaryPolicy::Unbounded:
            return "unbounded";
    }
    return "reflect";
}

std::string format_config(const ScenarioConfig& c) {
    std::ostringstream out;
    out << "model = " << to_string(c.model) << '\n';
    out << "n = " << c.n << '\n';
    out << "lambda = " << format_real(c.lambda.value()) << '\n';
    out << "mu = " << format_real(c.mu.value()) << '\n';
    out << "speed = " << format_real(c.speed) << '\n';
    out << "steps = " << c.steps << '\n';
    out << "snapshot_steps = ";
    for (std::size_t i = 0; i < c.snapshot_steps.size(); ++i) {
        out << (i ? "," : "") << c.snapshot_steps[i];
    }
    out << '\n';
    out << "area = " << format_real(c.area.width()) << 'x' << format_real(c.area.height())
        << '\n';
    out << "step_model = " << to_string(c.step_model) << '\n';
    out << "boundary = " << to_string(c.boundary) << '\n';
    out << "gated = " << (c.gated ? "true" : "false") << '\n';
    out << "time_per_step = " << format_real(c.time_per_step) << '\n';
    out << "seed = " << c.seed << '\n';
    out << "grid = " << c.grid.rows << 'x' << c.grid.cols << '\n';
    out << "neighbor_radius = " << format_real(c.neighbor_radius) << '\n';
    return out.str();
}

}  // namespace qmm
