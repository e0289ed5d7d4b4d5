#include "cli/report.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace bfvlab::cli {

using ordered_json = nlohmann::ordered_json;

bool all_pass(const std::vector<CheckRecord>& checks) {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

namespace {

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12e", v);
  return buf;
}

std::string fmt_order(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

}  // namespace

std::string report_json(const std::vector<CheckRecord>& checks,
                        const ReportMeta& meta) {
  ordered_json j;
  j["tool"] = "bfvlab";
  j["seed"] = meta.seed;
  if (!meta.model_path.empty()) {
    j["model"] = ordered_json::object();
    j["model"]["path"] = meta.model_path;
    j["model"]["fnv1a64"] = meta.model_hash;
  }
  j["conventions"] = meta.conventions;
  j["checks"] = ordered_json::array();
  for (const auto& c : checks) {
    ordered_json jc;
    jc["id"] = c.id;
    jc["status"] = c.pass ? "pass" : "fail";
    jc["max_residual"] = c.max_residual;
    if (c.est_order) jc["est_order"] = fmt_order(*c.est_order);
    if (!c.rows.empty()) {
      jc["rows"] = ordered_json::array();
      for (const auto& r : c.rows) {
        ordered_json jr;
        jr["check"] = r.check;
        jr["N"] = r.N;
        jr["defect_norm"] = fmt_double(r.defect);
        if (r.has_order) jr["est_order"] = fmt_order(r.order);
        jc["rows"].push_back(jr);
      }
    }
    if (!c.values.empty()) {
      ordered_json jv;
      for (const auto& [k, v] : c.values) jv[k] = fmt_double(v);
      jc["values"] = jv;
    }
    if (!c.notes.empty()) jc["notes"] = c.notes;
    if (!c.trace.empty()) {
      jc["trace"] = ordered_json::array();
      for (const auto& s : c.trace) {
        ordered_json js;
        js["rule"] = s.rule;
        js["before"] = s.before;
        js["after"] = s.after;
        jc["trace"].push_back(js);
      }
    }
    if (meta.include_timings) jc["runtime_ms"] = c.runtime_ms;
    j["checks"].push_back(jc);
  }
  j["status"] = all_pass(checks) ? "pass" : "fail";
  return j.dump(2) + "\n";
}

std::string report_transcript(const std::vector<CheckRecord>& checks,
                              const ReportMeta& meta) {
  std::ostringstream os;
  os << "bfvlab report\n";
  if (!meta.model_path.empty())
    os << "model: " << meta.model_path << " (fnv1a64 " << meta.model_hash
       << ")\n";
  os << "seed: " << meta.seed << "\n";
  os << "conventions in force:\n";
  for (const auto& c : meta.conventions) os << "  - " << c << "\n";
  os << "\n";
  // Failures first.
  std::vector<const CheckRecord*> order;
  for (const auto& c : checks)
    if (!c.pass) order.push_back(&c);
  for (const auto& c : checks)
    if (c.pass) order.push_back(&c);
  for (const CheckRecord* cp : order) {
    const CheckRecord& c = *cp;
    os << (c.pass ? "[pass] " : "[FAIL] ") << c.id;
    if (c.runtime_ms >= 0) os << "  (" << c.runtime_ms << " ms)";
    os << "\n";
    if (c.max_residual != "0")
      os << "       max residual: " << c.max_residual << "\n";
    for (const auto& r : c.rows) {
      os << "       " << r.check << "  N=" << r.N
         << "  defect=" << fmt_double(r.defect);
      if (r.has_order) os << "  order=" << fmt_order(r.order);
      os << "\n";
    }
    for (const auto& [k, v] : c.values)
      os << "       " << k << " = " << fmt_double(v) << "\n";
    for (const auto& n : c.notes) os << "       note: " << n << "\n";
    for (const auto& s : c.trace)
      os << "       [" << s.rule << "] " << s.before << "  ==>  " << s.after
         << "\n";
  }
  os << "\noverall: " << (all_pass(checks) ? "pass" : "FAIL") << "\n";
  return os.str();
}

std::string report_csv(const std::vector<CheckRecord>& checks) {
  std::ostringstream os;
  os << "check,N,defect_norm,est_order\n";
  for (const auto& c : checks)
    for (const auto& r : c.rows) {
      os << r.check << "," << r.N << "," << fmt_double(r.defect) << ",";
      if (r.has_order) os << fmt_order(r.order);
      os << "\n";
    }
  return os.str();
}

std::string write_report_files(const std::vector<CheckRecord>& checks,
                               const ReportMeta& meta,
                               const std::string& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  auto write = [&](const std::string& name, const std::string& content) {
    fs::path p = fs::path(dir) / name;
    std::ofstream out(p, std::ios::binary);
    if (!out) throw InputError("cannot write report file: " + p.string());
    out << content;
    return p.string();
  };
  std::string summary = write("summary.json", report_json(checks, meta));
  write("transcript.txt", report_transcript(checks, meta));
  bool any_rows = false;
  for (const auto& c : checks) any_rows = any_rows || !c.rows.empty();
  if (any_rows) write("convergence.csv", report_csv(checks));
  return summary;
}

}  // namespace bfvlab::cli
