// Acceptance suite: one line per criterion, nonzero exit on any failure.
// Runs everything from the bundled model fixtures.

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "cli/runner.hpp"

using namespace bfvlab;
using namespace bfvlab::cli;

namespace {

int failures = 0;

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
  }
};

void report(int idx, const std::string& what, bool pass,
            const std::string& detail = "") {
  std::printf("criterion %2d [%s] %s%s%s\n", idx, pass ? "PASS" : "FAIL",
              what.c_str(), detail.empty() ? "" : " -- ", detail.c_str());
  if (!pass) ++failures;
}

std::string models_dir() { return BFVLAB_MODELS_DIR; }

bool checks_pass(const std::vector<CheckRecord>& cs, std::string* why) {
  for (const auto& c : cs)
    if (!c.pass) {
      *why = c.id + ": " + c.max_residual;
      return false;
    }
  return true;
}

}  // namespace

int main() {
  std::string why;

  // 1. Graded-algebra property suite: 1000 randomized Koszul, Leibniz
  //    and homomorphism checks, exact, under 10 s.
  {
    Timer t;
    auto cs = run_algebra(nullptr, 2024, "");
    bool ok = checks_pass(cs, &why);
    double sec = t.seconds();
    report(1, "graded-algebra property suite (1000 trials/family)",
           ok && sec < 10.0,
           ok ? "runtime " + std::to_string(sec) + " s" : why);
  }

  // 2. so(3) and abelian: master equation closes exactly, the charge
  //    derivation is nilpotent on every generator, under 5 s.
  {
    Timer t;
    bool ok = true;
    for (const char* name : {"so3.model", "abelian.model"}) {
      Model m = load_model(models_dir() + "/" + name);
      auto cs = run_bfv(m, 1, "");
      ok = ok && checks_pass(cs, &why);
    }
    double sec = t.seconds();
    report(2, "so(3)/abelian master equation, {S,S} = 0 and Q^2 = 0",
           ok && sec < 5.0, ok ? "runtime " + std::to_string(sec) + " s" : why);
  }

  // 3. Non-constant structure functions: first class, {S,S} = 0 at order
  //    <= 3, coisotropy identity exact.
  {
    Model m = load_model(models_dir() + "/nonconstant-f.model");
    auto cs = run_bfv(m, 1, "");
    bool ok = checks_pass(cs, &why);
    double order = -1;
    for (const auto& c : cs)
      if (c.id == "bfv-master-equation" && c.values.count("order"))
        order = c.values.at("order");
    ok = ok && order >= 0 && order <= 3;
    report(3, "non-constant-f fixture: first class, order <= 3, coisotropy",
           ok, ok ? "order " + std::to_string(int(order)) : why);
  }

  // 4. Alternative 1: Leibniz exact, anchor defect equals the closed
  //    form, vanishes on so(3), Q^2 residues vanish on shell.
  {
    bool ok = true;
    for (const char* name : {"nonconstant-f.model", "so3.model"}) {
      Model m = load_model(models_dir() + "/" + name);
      auto cs = run_toy(m, 11, "alt1");
      ok = ok && checks_pass(cs, &why);
      auto cs2 = run_toy(m, 11, "commutator");
      ok = ok && checks_pass(cs2, &why);
    }
    report(4, "alternative 1: Leibniz, anchor defect, on-shell Q^2", ok,
           ok ? "" : why);
  }

  // 5. Alternative 2: Leibniz and homomorphism on 100 randomized
  //    triples; the documented witness is reproduced exactly.
  {
    Model m = load_model(models_dir() + "/nonconstant-f.model");
    auto cs = run_toy(m, 11, "alt2");
    bool ok = checks_pass(cs, &why);
    bool witness = false;
    for (const auto& c : cs)
      if (c.id == "toy-alt2-witness")
        for (const auto& n : c.notes)
          if (n.find("g = x1") != std::string::npos &&
              n.find("a = p1") != std::string::npos &&
              n.find("defect = p1") != std::string::npos)
            witness = true;
    report(5, "alternative 2: identities on 100 triples, witness (x1,p1,p1)",
           ok && witness, ok ? (witness ? "" : "witness mismatch") : why);
  }

  // 6. formal_gr: the three verifications reach normal form 0 with
  //    auditable traces and all three control mutations fail; under 5 s.
  {
    Timer t;
    auto cs = run_formal(nullptr, "");
    bool ok = checks_pass(cs, &why);
    int controls = 0, traced = 0;
    for (const auto& c : cs) {
      if (c.id.find("control") != std::string::npos) ++controls;
      if (!c.trace.empty()) ++traced;
    }
    double sec = t.seconds();
    report(6, "formal verifications + non-vacuity controls",
           ok && controls == 3 && traced >= 3 && sec < 5.0,
           ok ? "runtime " + std::to_string(sec) + " s" : why);
  }

  LatticeSection lat;  // d = 2, N = 8,16,32, seed 42
  {
    Model m = load_model(models_dir() + "/lattice-default.model");
    if (m.lattice) lat = *m.lattice;
  }

  // 7. Bracket relations converge at order in [1.7, 2.3], under 60 s.
  {
    Timer t;
    auto cs = run_lattice("brackets", lat);
    double sec = t.seconds();
    bool ok = true;
    std::string detail;
    for (const auto& c : cs)
      if (c.id == "lattice-brackets") {
        ok = c.pass;
        for (const auto& r : c.rows)
          if (r.has_order && r.N == lat.N.back())
            detail += r.check + "~" + std::to_string(r.order).substr(0, 4) + " ";
      }
    report(7, "bracket relations (3.3a-c) at order ~2", ok && sec < 60.0,
           ok ? detail + "runtime " + std::to_string(sec) + " s" : why);

    // 8. Oracle equivalence at N = 8 over >= 20 seeded states.
    for (const auto& c : cs)
      if (c.id == "lattice-bracket-oracle") {
        char buf[64];
        std::snprintf(buf, sizeof buf, "max rel %.2e",
                      c.values.count("max_rel_disagreement")
                          ? c.values.at("max_rel_disagreement")
                          : -1.0);
        report(8, "analytic vs fd brackets <= 1e-6 over 20 states", c.pass,
               buf);
      }
  }

  // 9. Q0^2 components and the pre-derived Pi defect.
  {
    auto cs = run_lattice("q0defect", lat);
    bool ok = checks_pass(cs, &why);
    std::string detail;
    for (const auto& c : cs) {
      if (c.values.count("off_over_on_ratio")) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "off/on ratio %.1e",
                      c.values.at("off_over_on_ratio"));
        detail = buf;
      }
    }
    report(9, "Q0^2: h/xi components -> 0, Pi matches the bilinear target",
           ok, ok ? detail : why);
  }

  // 10. Bilinear anchor term.
  {
    auto cs = run_lattice("anchor", lat);
    bool ok = checks_pass(cs, &why);
    report(10, "quadratic-in-ghost Q(Pi) term vs (3.10a) target", ok,
           ok ? "" : why);
  }

  // 11. Curvature oracles.
  {
    auto cs = run_lattice("curvature", lat);
    bool ok = checks_pass(cs, &why);
    report(11, "curvature: conformal closed form, flat zeros, 2d Einstein",
           ok, ok ? "" : why);
  }

  if (failures) std::printf("\n%d criterion(s) FAILED\n", failures);
  else std::printf("\nall acceptance criteria passed\n");
  return failures ? 1 : 0;
}
