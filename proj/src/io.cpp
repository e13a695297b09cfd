#include "qmm/io.hpp"

#include <map>
#include <sstream>
#include <string>

#include "qmm/errors.hpp"
#include "qmm/text.hpp"

namespace qmm {

namespace {

constexpr std::string_view kTraceHeader = "step,id,x,y";
constexpr std::string_view kSnapshotHeader = "id,x,y";
constexpr std::string_view kAbsent = "absent";

// Non-empty lines after a required header.
std::vector<std::string_view> body_lines(std::string_view text, std::string_view header,
                                         std::string_view what) {
    auto lines = split(text, '\n');
    if (lines.empty() || trim(lines.front()) != header) {
        throw ValidationError(std::string(what) + ": expected header '" + std::string(header) +
                              "'");
    }
    std::vector<std::string_view> out;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto line = trim(lines[i]);
        if (!line.empty()) {
            out.push_back(line);
        }
    }
    return out;
}

std::vector<std::string_view> fields(std::string_view line, std::size_t expected,
                                     std::string_view what) {
    auto parts = split(line, ',');
    if (parts.size() != expected) {
        throw ValidationError(std::string(what) + ": expected " + std::to_string(expected) +
                              " fields in '" + std::string(line) + "'");
    }
    return parts;
}

std::string snapshot_prefix(std::uint64_t step) {
    return "snapshot." + std::to_string(step) + ".";
}

}  // namespace

std::string trace_document(const Trace& trace) {
    std::string out(kTraceHeader);
    out += '\n';
    for (const auto& r : trace.records) {
        out += std::to_string(r.step) + ',' + std::to_string(r.id) + ',' + format_real(r.x) + ',' +
               format_real(r.y) + '\n';
    }
    return out;
}

Trace parse_trace(std::string_view text) {
    Trace trace;
    for (const auto line : body_lines(text, kTraceHeader, "trace")) {
        const auto f = fields(line, 4, "trace");
        trace.records.push_back({parse_u64(f[0], "trace step"), parse_u64(f[1], "trace id"),
                                 parse_real(f[2], "trace x"), parse_real(f[3], "trace y")});
    }
    return trace;
}

TraceWriter::TraceWriter(const std::filesystem::path& path) : path_(path), out_(path, std::ios::binary) {
    if (!out_) {
        throw IoError(path_.string(), "cannot open for writing");
    }
    out_ << kTraceHeader << '\n';
}

void TraceWriter::append(std::uint64_t step, std::span<const NodeState> nodes) {
    for (const auto& node : nodes) {
        if (node.active) {
            out_ << step << ',' << node.id << ',' << format_real(node.position.x) << ','
                 << format_real(node.position.y) << '\n';
        }
    }
    if (!out_) {
        throw IoError(path_.string(), "write failed");
    }
}

void TraceWriter::close() {
    out_.close();
    if (!out_) {
        throw IoError(path_.string(), "close failed");
    }
}

std::string snapshot_document(const Snapshot& snapshot) {
    std::string out(kSnapshotHeader);
    out += '\n';
    for (const auto& p : snapshot.positions) {
        out += std::to_string(p.id) + ',' + format_real(p.x) + ',' + format_real(p.y) + '\n';
    }
    return out;
}

Snapshot parse_snapshot(std::string_view text, std::uint64_t step) {
    Snapshot snap;
    snap.step = step;
    for (const auto line : body_lines(text, kSnapshotHeader, "snapshot")) {
        const auto f = fields(line, 3, "snapshot");
        snap.positions.push_back({parse_u64(f[0], "snapshot id"), parse_real(f[1], "snapshot x"),
                                  parse_real(f[2], "snapshot y")});
    }
    return snap;
}

std::filesystem::path snapshot_filename(std::uint64_t step) {
    return "snapshot_" + std::to_string(step) + ".csv";
}

std::string report_document(const RunReport& report) {
    std::ostringstream out;
    out << "# run report\n" << format_config(report.config);

    if (report.mean_in_system) {
        out << "mean_in_system = " << format_real(*report.mean_in_system) << '\n';
    } else {
        out << "mean_in_system = " << kAbsent << '\n';
    }
    if (report.arrival_fit) {
        out << "arrival_fit.chi_square = " << format_real(report.arrival_fit->chi_square) << '\n';
        out << "arrival_fit.total_variation = "
            << format_real(report.arrival_fit->total_variation) << '\n';
        out << "arrival_fit.degrees_of_freedom = " << report.arrival_fit->degrees_of_freedom
            << '\n';
    } else {
        out << "arrival_fit = " << kAbsent << '\n';
    }

    for (const auto& m : report.per_snapshot) {
        const auto prefix = snapshot_prefix(m.step);
        out << '\n' << prefix << "nodes = " << m.nodes << '\n';
        if (!m.uniformity) {
            out << prefix << "uniformity = " << kAbsent << '\n';
            continue;
        }
        const auto& u = *m.uniformity;
        out << prefix << "chi_square = " << format_real(u.chi_square) << '\n';
        out << prefix << "cells = " << u.cells << '\n';
        out << prefix << "centroid_x = " << format_real(u.centroid.x) << '\n';
        out << prefix << "centroid_y = " << format_real(u.centroid.y) << '\n';
        out << prefix << "mean_neighbors = " << format_real(u.mean_neighbors) << '\n';
    }
    return out.str();
}

RunReport parse_report(std::string_view text) {
    std::string config_text;
    std::map<std::string, std::string, std::less<>> metrics;
    for (auto line : split(text, '\n')) {
        if (const auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ValidationError("report: expected key = value, got '" + std::string(line) + "'");
        }
        const auto key = trim(line.substr(0, eq));
        const auto value = trim(line.substr(eq + 1));
        if (is_config_key(key)) {
            config_text.append(line).append("\n");
        } else {
            metrics.emplace(std::string(key), std::string(value));
        }
    }

    auto take = [&](const std::string& key) -> std::string {
        const auto it = metrics.find(key);
        if (it == metrics.end()) {
            throw ValidationError("report: missing key '" + key + "'");
        }
        return it->second;
    };

    RunReport report{parse_config(config_text), {}, std::nullopt, std::nullopt};

    if (const auto v = take("mean_in_system"); v != kAbsent) {
        report.mean_in_system = parse_real(v, "mean_in_system");
    }
    if (!metrics.contains("arrival_fit")) {
        PoissonFit fit;
        fit.chi_square = parse_real(take("arrival_fit.chi_square"), "arrival_fit.chi_square");
        fit.total_variation =
            parse_real(take("arrival_fit.total_variation"), "arrival_fit.total_variation");
        fit.degrees_of_freedom = parse_u64(take("arrival_fit.degrees_of_freedom"),
                                           "arrival_fit.degrees_of_freedom");
        report.arrival_fit = fit;
    }

    for (const auto step : report.config.snapshot_steps) {
        const auto prefix = snapshot_prefix(step);
        SnapshotMetrics m;
        m.step = step;
        m.nodes = parse_u64(take(prefix + "nodes"), prefix + "nodes");
        if (!metrics.contains(prefix + "uniformity")) {
            UniformityReport u;
            u.chi_square = parse_real(take(prefix + "chi_square"), prefix + "chi_square");
            u.cells = parse_u64(take(prefix + "cells"), prefix + "cells");
            u.centroid.x = parse_real(take(prefix + "centroid_x"), prefix + "centroid_x");
            u.centroid.y = parse_real(take(prefix + "centroid_y"), prefix + "centroid_y");
            u.mean_neighbors =
                parse_real(take(prefix + "mean_neighbors"), prefix + "mean_neighbors");
            m.uniformity = u;
        }
        report.per_snapshot.push_back(m);
    }
    return report;
}

std::string pmf_table_document(const PmfTable& table) {
    std::string out = "n";
    for (const double l : table.lambdas) {
        out += ",lambda_" + format_real(l);
    }
    out += '\n';
    std::size_t rows = table.curves.empty() ? 0 : table.curves.front().probabilities.size();
    for (std::size_t n = 0; n < rows; ++n) {
        out += std::to_string(n);
        for (const auto& curve : table.curves) {
            out += ',' + format_real(curve.probabilities.at(n));
        }
        out += '\n';
    }
    return out;
}

PmfTable parse_pmf_table(std::string_view text, double t) {
    auto lines = split(text, '\n');
    const auto header = split(trim(lines.front()), ',');
    if (header.empty() || header.front() != "n") {
        throw ValidationError("pmf table: header must start with 'n'");
    }
    PmfTable table;
    table.t = t;
    for (std::size_t i = 1; i < header.size(); ++i) {
        auto col = header[i];
        if (!col.starts_with("lambda_")) {
            throw ValidationError("pmf table: bad column '" + std::string(col) + "'");
        }
        col.remove_prefix(7);
        const double l = parse_real(col, "pmf table lambda");
        table.lambdas.push_back(l);
        table.curves.push_back({l * t, {}});
    }
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto line = trim(lines[i]);
        if (line.empty()) {
            continue;
        }
        const auto f = fields(line, header.size(), "pmf table");
        if (parse_u64(f[0], "pmf table n") != table.curves.front().probabilities.size()) {
            throw ValidationError("pmf table: rows must be contiguous from n = 0");
        }
        for (std::size_t c = 1; c < f.size(); ++c) {
            table.curves[c - 1].probabilities.push_back(parse_real(f[c], "pmf table value"));
        }
    }
    return table;
}

void write_text(const std::filesystem::path& path, std::string_view text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError(path.string(), "cannot open for writing");
    }
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    out.close();
    if (!out) {
        throw IoError(path.string(), "write failed");
    }
}

std::string read_text(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError(path.string(), "cannot open for reading");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_trace(const std::filesystem::path& path, const Trace& trace) {
    write_text(path, trace_document(trace));
}

Trace read_trace(const std::filesystem::path& path) {
    return parse_trace(read_text(path));
}

std::filesystem::path write_snapshot(const std::filesystem::path& dir, const Snapshot& snapshot) {
    const auto path = dir / snapshot_filename(snapshot.step);
    write_text(path, snapshot_document(snapshot));
    return path;
}

Snapshot read_snapshot(const std::filesystem::path& path) {
    auto stem = path.stem().string();
    constexpr std::string_view prefix = "snapshot_";
    if (!stem.starts_with(prefix)) {
        throw IoError(path.string(), "not a snapshot_<step>.csv file");
    }
    const auto step = parse_u64(std::string_view(stem).substr(prefix.size()), "snapshot step");
    return parse_snapshot(read_text(path), step);
}

void write_report(const std::filesystem::path& path, const RunReport& report) {
    write_text(path, report_document(report));
}

RunReport read_report(const std::filesystem::path& path) {
    return parse_report(read_text(path));
}

}  // namespace qmm
