#pragma once

#include <filesystem>
#include <fstream>
#include <span>
#include <string>
#include <string_view>

#include "qmm/engine.hpp"
#include "qmm/mobility.hpp"

namespace qmm {

// Reals everywhere use format_real (9 significant digits).

// Trace: header `step,id,x,y`, one row per active node per step.
std::string trace_document(const Trace& trace);
Trace parse_trace(std::string_view text);

// Streams trace rows to disk as a run progresses.
class TraceWriter {
  public:
    explicit TraceWriter(const std::filesystem::path& path);

    void append(std::uint64_t step, std::span<const NodeState> nodes);
    void close();

  private:
    std::filesystem::path path_;
    std::ofstream out_;
};

// Snapshot: header `id,x,y`; the step lives in the file name.
std::string snapshot_document(const Snapshot& snapshot);
Snapshot parse_snapshot(std::string_view text, std::uint64_t step);
std::filesystem::path snapshot_filename(std::uint64_t step);

// Report: the config's `key = value` lines, then QMM queue metrics, then one
// block per snapshot with keys `snapshot.<step>.<metric>`.
std::string report_document(const RunReport& report);
RunReport parse_report(std::string_view text);

// PMF table: header `n,lambda_<l1>,lambda_<l2>,...`, rows n = 0..n_max.
std::string pmf_table_document(const PmfTable& table);
PmfTable parse_pmf_table(std::string_view text, double t);

void write_text(const std::filesystem::path& path, std::string_view text);
std::string read_text(const std::filesystem::path& path);

void write_trace(const std::filesystem::path& path, const Trace& trace);
Trace read_trace(const std::filesystem::path& path);
std::filesystem::path write_snapshot(const std::filesystem::path& dir, const Snapshot& snapshot);
Snapshot read_snapshot(const std::filesystem::path& path);
void write_report(const std::filesystem::path& path, const RunReport& report);
RunReport read_report(const std::filesystem::path& path);

}  // namespace qmm
