#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "cli/runner.hpp"

using namespace bfvlab;
using namespace bfvlab::cli;

namespace {

struct CommonOpts {
  std::string model_path;
  std::string check;
  std::string out_dir;
  bool json_to_stdout = false;
  bool timings = false;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> n_list;
  std::optional<double> fd_step;
  std::optional<int> k;
};

void add_common(CLI::App* app, CommonOpts& o, bool lattice) {
  app->add_option("--model", o.model_path, "model file (JSON)");
  app->add_option("--check", o.check, "restrict to checks containing this id");
  app->add_option("--out", o.out_dir, "directory for report files");
  app->add_flag("--json", o.json_to_stdout, "print the JSON report to stdout");
  app->add_flag("--timings", o.timings,
                "include per-check runtimes in the JSON report (breaks "
                "byte-identical reruns)");
  app->add_option_function<std::uint64_t>(
      "--seed", [&o](const std::uint64_t& v) { o.seed = v; }, "RNG seed");
  if (lattice) {
    app->add_option_function<std::string>(
        "--n", [&o](const std::string& v) { o.n_list = v; },
        "comma-separated lattice sizes, e.g. 8,16,32");
    app->add_option_function<double>(
        "--fd-step", [&o](const double& v) { o.fd_step = v; },
        "finite-difference step");
    app->add_option_function<int>(
        "--k", [&o](const int& v) { o.k = v; },
        "number of odd polarization parameters (<= 3)");
  }
}

std::vector<int> parse_n_list(const std::string& text) {
  std::vector<int> out;
  size_t pos = 0;
  while (pos < text.size()) {
    size_t comma = text.find(',', pos);
    if (comma == std::string::npos) comma = text.size();
    out.push_back(std::stoi(text.substr(pos, comma - pos)));
    pos = comma + 1;
  }
  if (out.size() < 3)
    throw InputError("need at least 3 lattice sizes for an order fit");
  return out;
}

int finish(const std::vector<CheckRecord>& checks, const CommonOpts& o,
           const Model* model, std::uint64_t seed) {
  ReportMeta meta;
  if (model) {
    meta.model_path = model->path;
    meta.model_hash = model->hash;
  }
  meta.seed = seed;
  meta.conventions = conventions();
  meta.include_timings = o.timings;
  if (!o.out_dir.empty()) write_report_files(checks, meta, o.out_dir);
  if (o.json_to_stdout)
    std::cout << report_json(checks, meta);
  else
    std::cout << report_transcript(checks, meta);
  return all_pass(checks) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bfvlab: symbolic and numeric verification of BFV "
               "constraint-algebra structures"};
  app.require_subcommand(1);

  CLI::App* verify = app.add_subcommand("verify", "exact symbolic checks");
  verify->require_subcommand(1);
  CommonOpts vo;
  CLI::App* v_algebra =
      verify->add_subcommand("algebra", "graded-algebra property suite");
  CLI::App* v_bfv =
      verify->add_subcommand("bfv", "charge construction and master equation");
  CLI::App* v_toy = verify->add_subcommand("toy", "the alternative "
                                                  "bracket/anchor structures");
  CLI::App* v_formal =
      verify->add_subcommand("formal", "formal GR rewrite verifications");
  for (auto* sc : {v_algebra, v_bfv, v_toy, v_formal}) add_common(sc, vo, false);

  CLI::App* lat = app.add_subcommand("lattice", "numeric torus checks");
  lat->require_subcommand(1);
  CommonOpts lo;
  CLI::App* l_br = lat->add_subcommand("brackets",
                                       "constraint bracket relations and the "
                                       "fd-oracle comparison");
  CLI::App* l_q0 = lat->add_subcommand("q0defect", "Q0^2 components");
  CLI::App* l_an = lat->add_subcommand("anchor", "bilinear anchor term");
  CLI::App* l_cu = lat->add_subcommand("curvature", "curvature oracles");
  for (auto* sc : {l_br, l_q0, l_an, l_cu}) add_common(sc, lo, true);

  CLI::App* rep = app.add_subcommand("report", "re-emit a combined report");
  std::string rep_dir;
  rep->add_option("--out", rep_dir, "report directory")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (verify->parsed()) {
      std::optional<Model> model;
      if (!vo.model_path.empty()) model = load_model(vo.model_path);
      std::uint64_t seed = vo.seed.value_or(1);
      std::vector<CheckRecord> checks;
      if (v_algebra->parsed())
        checks = run_algebra(model ? &*model : nullptr, seed, vo.check);
      else if (v_bfv->parsed())
        checks = run_bfv(*model, seed, vo.check);
      else if (v_toy->parsed())
        checks = run_toy(*model, seed, vo.check);
      else if (v_formal->parsed())
        checks = run_formal(model ? &*model : nullptr, vo.check);
      return finish(checks, vo, model ? &*model : nullptr, seed);
    }
    if (lat->parsed()) {
      std::optional<Model> model;
      if (!lo.model_path.empty()) model = load_model(lo.model_path);
      LatticeSection cfg;
      if (model && model->lattice) cfg = *model->lattice;
      if (lo.seed) cfg.seed = *lo.seed;
      if (lo.n_list) cfg.N = parse_n_list(*lo.n_list);
      if (lo.fd_step) cfg.fd_step = *lo.fd_step;
      if (lo.k) cfg.k = *lo.k;
      std::string kind;
      if (l_br->parsed()) kind = "brackets";
      if (l_q0->parsed()) kind = "q0defect";
      if (l_an->parsed()) kind = "anchor";
      if (l_cu->parsed()) kind = "curvature";
      auto checks = run_lattice(kind, cfg);
      return finish(checks, lo, model ? &*model : nullptr, cfg.seed);
    }
    if (rep->parsed()) {
      // Re-emit the transcript for an existing summary.
      std::ifstream in(rep_dir + "/summary.json");
      if (!in) throw InputError("no summary.json under " + rep_dir);
      std::cout << in.rdbuf();
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
