// qmmsim: batch driver for the queueing and random-walk mobility simulator.
//
//   qmmsim simulate --config scenario.cfg [--seed 7] [--out-dir out]
//   qmmsim batch --config scenario.cfg --lambdas 0.3,0.4,0.5,0.8,0.9 --seeds 20
//   qmmsim pmf --lambdas 0.3,0.5 --t 20 --nmax 40
//
// Exit codes: 0 success, 1 validation error, 2 I/O error.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "qmm/config.hpp"
#include "qmm/engine.hpp"
#include "qmm/errors.hpp"
#include "qmm/io.hpp"
#include "qmm/text.hpp"

namespace {

constexpr int kExitValidation = 1;
constexpr int kExitIo = 2;

struct Overrides {
    std::optional<std::string> model;
    std::optional<std::string> nodes;
    std::optional<std::string> speed;
    std::optional<std::string> steps;
    std::optional<std::string> boundary;
    std::optional<std::string> step_model;
    std::optional<std::uint64_t> seed;
    bool gated = false;
    bool no_gated = false;

    void attach(CLI::App& app) {
        app.add_option("--model", model, "qmm or rwm");
        app.add_option("--nodes", nodes, "Number of nodes");
        app.add_option("--speed", speed, "Displacement scale s, meters per step");
        app.add_option("--steps", steps, "Mobility steps");
        app.add_option("--boundary", boundary, "reflect, clamp or unbounded");
        app.add_option("--step-model", step_model, "paper_literal or symmetric");
        app.add_option("--seed", seed, "Scenario seed");
        app.add_flag("--gated", gated, "Nodes are present only between arrival and departure");
        app.add_flag("--no-gated", no_gated, "Every node moves at every step");
    }

    std::vector<qmm::ConfigOverride> collect() const {
        std::vector<qmm::ConfigOverride> out;
        auto put = [&out](const char* key, const std::optional<std::string>& v) {
            if (v) {
                out.emplace_back(key, *v);
            }
        };
        put("model", model);
        put("n", nodes);
        put("speed", speed);
        put("steps", steps);
        put("boundary", boundary);
        put("step_model", step_model);
        if (seed) {
            out.emplace_back("seed", std::to_string(*seed));
        }
        if (gated) {
            out.emplace_back("gated", "true");
        }
        if (no_gated) {
            out.emplace_back("gated", "false");
        }
        return out;
    }
};

std::vector<qmm::RateParam> parse_lambdas(const std::string& list) {
    std::vector<qmm::RateParam> out;
    for (const auto part : qmm::split(list, ',')) {
        const double v = qmm::parse_real(part, "lambdas");
        if (!(v > 0.0)) {
            throw qmm::ValidationError("lambdas: every rate must be > 0");
        }
        out.emplace_back(v);
    }
    return out;
}

qmm::ScenarioConfig load_config(const std::string& path, const Overrides& overrides) {
    const auto ov = overrides.collect();
    return qmm::parse_config(qmm::read_text(path), ov);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Queueing and random-walk mobility simulator"};
    app.require_subcommand(1);

    std::string config_path;
    std::filesystem::path out_dir = ".";
    bool no_trace = false;

    auto* simulate = app.add_subcommand("simulate", "Run one scenario");
    Overrides sim_overrides;
    simulate->add_option("--config", config_path, "Scenario file (key = value)")->required();
    simulate->add_option("--out-dir", out_dir, "Directory for trace, snapshots and report");
    simulate->add_flag("--no-trace", no_trace, "Skip trace.csv");
    sim_overrides.attach(*simulate);

    auto* batch = app.add_subcommand("batch", "Sweep arrival rates across seeds");
    Overrides batch_overrides;
    std::string batch_lambdas;
    std::size_t seed_count = 0;
    batch->add_option("--config", config_path, "Base scenario file")->required();
    batch->add_option("--lambdas", batch_lambdas, "Comma-separated arrival rates")->required();
    batch->add_option("--seeds", seed_count, "Seeds per rate: seed, seed+1, ...")->required();
    batch->add_option("--out-dir", out_dir, "Root directory for per-run outputs");
    batch->add_flag("--no-trace", no_trace, "Skip trace.csv in every run");
    batch_overrides.attach(*batch);

    auto* pmf = app.add_subcommand("pmf", "Tabulate Poisson arrival-count curves");
    std::string pmf_lambdas;
    double t = 0.0;
    std::uint64_t n_max = 0;
    std::string pmf_out;
    pmf->add_option("--lambdas", pmf_lambdas, "Comma-separated arrival rates")->required();
    pmf->add_option("--t", t, "Interval length")->required();
    pmf->add_option("--nmax", n_max, "Largest arrival count")->required();
    pmf->add_option("--out", pmf_out, "Output CSV (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitValidation;
    }

    try {
        if (*simulate) {
            const auto config = load_config(config_path, sim_overrides);
            const auto report = qmm::run_scenario(config, {out_dir, !no_trace});
            std::cout << qmm::report_document(report);
        } else if (*batch) {
            const auto config = load_config(config_path, batch_overrides);
            if (seed_count == 0) {
                throw qmm::ValidationError("seeds: need at least one seed");
            }
            std::vector<std::uint64_t> seeds;
            for (std::size_t i = 0; i < seed_count; ++i) {
                seeds.push_back(config.seed + i);
            }
            const auto cells =
                qmm::run_batch(config, parse_lambdas(batch_lambdas), seeds, {out_dir, !no_trace});
            std::size_t failed = 0;
            for (const auto& c : cells) {
                std::cout << "lambda=" << qmm::format_real(c.lambda) << " seed=" << c.seed << ' '
                          << (c.report ? "ok" : "failed: " + c.error) << '\n';
                failed += c.report ? 0 : 1;
            }
            std::cout << cells.size() - failed << '/' << cells.size() << " runs succeeded\n";
        } else if (*pmf) {
            const auto table = qmm::emit_pmf_curves(parse_lambdas(pmf_lambdas), t, n_max);
            const auto doc = qmm::pmf_table_document(table);
            if (pmf_out.empty()) {
                std::cout << doc;
            } else {
                qmm::write_text(pmf_out, doc);
            }
        }
    } catch (const qmm::IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const qmm::ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    }
    return 0;
}
