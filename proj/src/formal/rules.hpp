#pragma once

#include <set>
#include <string>
#include <vector>

#include "formal/expr.hpp"

namespace bfvlab::formal {

// One audited rewrite: the rule name, the subexpression it consumed and
// what replaced it.
struct TraceStep {
  std::string rule;
  std::string before;
  std::string after;
};

struct Trace {
  std::vector<TraceStep> steps;
  void record(std::string rule, std::string before, std::string after) {
    steps.push_back({std::move(rule), std::move(before), std::move(after)});
  }
};

namespace rule {
inline constexpr const char* odd_nilpotency = "odd-nilpotency";
inline constexpr const char* op_linearity = "op-linearity";
inline constexpr const char* ideal_monomial = "ideal-monomial";
inline constexpr const char* psi_sharp_xi = "psi-sharp-xi";
inline constexpr const char* remark35 = "remark35-halfdensity";
inline constexpr const char* psi_expand = "psi-expand";
inline constexpr const char* sharp_expand = "sharp-expand";
inline constexpr const char* musical_scalar = "musical-scalar";
inline constexpr const char* lie_vector_scalar = "lie-vector-scalar";
inline constexpr const char* lie_leibniz = "lie-leibniz";
inline constexpr const char* lie_recombine = "lie-recombine";
inline constexpr const char* q2_axiom = "q2-axiom";
}  // namespace rule

// A named, toggleable selection of rewrite rules. Normalization applies
// enabled rules to a fixed point under a step budget; `odd-nilpotency`
// and structural merging always apply.
struct RuleSet {
  std::set<std::string> enabled;
  long long budget = 100000;
  bool wrong_q_parity = false;  // control mutation for the Q^2 check

  bool on(const char* name) const { return enabled.count(name) != 0; }
  RuleSet& disable(const std::string& name) {
    enabled.erase(name);
    return *this;
  }
  RuleSet& enable(const std::string& name) {
    enabled.insert(name);
    return *this;
  }

  // Rule selections used by the bundled verifications.
  static RuleSet ideal_preservation();
  static RuleSet qtilde_nilpotency();
  static RuleSet psi_n_derivation();
};

// Unique normal form under the rule set; idempotent. Appends one record
// per rule application to `trace` when provided.
Expr normalize(const Expr& e, const RuleSet& rules, Trace* trace = nullptr);

}  // namespace bfvlab::formal
