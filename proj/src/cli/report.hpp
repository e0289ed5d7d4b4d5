#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "formal/rules.hpp"
#include "lattice/checks.hpp"

namespace bfvlab::cli {

struct CheckRecord {
  std::string id;
  bool pass = false;
  std::string max_residual = "0";  // exact string for symbolic checks
  std::optional<double> est_order;
  std::vector<std::string> notes;
  std::vector<lattice::ConvRow> rows;
  std::map<std::string, double> values;
  std::vector<formal::TraceStep> trace;
  long long runtime_ms = 0;
};

struct ReportMeta {
  std::string model_path;
  std::string model_hash;
  std::uint64_t seed = 0;
  std::vector<std::string> conventions;
  bool include_timings = false;  // timings go to the transcript only by
                                 // default so JSON reruns are
                                 // byte-identical
};

bool all_pass(const std::vector<CheckRecord>& checks);

// Deterministic JSON (stable key order, no volatile fields unless
// include_timings).
std::string report_json(const std::vector<CheckRecord>& checks,
                        const ReportMeta& meta);

// Human transcript, failures first; includes timings.
std::string report_transcript(const std::vector<CheckRecord>& checks,
                              const ReportMeta& meta);

// CSV rows: check,N,defect_norm,est_order.
std::string report_csv(const std::vector<CheckRecord>& checks);

// Writes summary.json, transcript.txt and convergence.csv under dir
// (created if needed); returns the summary path.
std::string write_report_files(const std::vector<CheckRecord>& checks,
                               const ReportMeta& meta,
                               const std::string& dir);

}  // namespace bfvlab::cli
