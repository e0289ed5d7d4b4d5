#pragma once

#include <map>
#include <string>
#include <vector>

#include "formal/parse.hpp"
#include "formal/rules.hpp"

namespace bfvlab::formal {

// A degree +1 derivation of the formal calculus, extended by the graded
// Leibniz rule with left conventions. In opaque mode every image is the
// unevaluated atom Q(.) so that Q^2 = 0 axioms can act on it.
class FormalDerivation {
 public:
  static FormalDerivation opaque() {
    FormalDerivation d;
    d.opaque_ = true;
    return d;
  }
  static FormalDerivation concrete(std::map<int, Expr> images) {
    FormalDerivation d;
    d.images_ = std::move(images);
    return d;
  }

  Expr image(const Atom& a) const;
  Expr apply(const Expr& e, bool flip_crossing_signs = false) const;
  // The individual Leibniz summands, unmerged; their sum is apply().
  std::vector<Expr> apply_summands(const Expr& e,
                                   bool flip_crossing_signs = false) const;

  const std::map<int, Expr>& images() const { return images_; }

 private:
  bool opaque_ = false;
  std::map<int, Expr> images_;
};

enum class Which { Q_BFV, Q_tilde, Q_0 };

// Generator images as displayed in the source equations; the engine
// adopts the (3.7)-style signs and flags the (5.1)-style discrepancy in
// convention_notes() rather than silently choosing.
FormalDerivation define_Q(Which which);
std::map<int, std::string> q_image_strings(Which which);
std::vector<std::string> convention_notes();

struct VerifyResult {
  std::string check_id;
  bool pass = false;
  std::string residual;  // "0" on success
  Trace trace;
  std::vector<std::string> notes;
};

// Qtilde preserves the ideal <psi.xi>: Qtilde(psiP xiN) and
// Qtilde(psiN xiN) normalize to zero. `drop_psi_sharp_rule` is the
// documented control mutation (the second check must then fail).
std::vector<VerifyResult> verify_ideal_preservation(
    bool drop_psi_sharp_rule = false);

// Qtilde^2 = 0 on psi generators via the four-term expansion of
// Q(Q(chi xi)) and the Q^2 = 0 axioms; also on xiN, xiP, h where
// Q = Qtilde. `flip_koszul_sign` is the documented control mutation.
std::vector<VerifyResult> verify_qtilde_nilpotency(
    bool flip_koszul_sign = false);

// Q(chiN) xiN - chiN Q(xiN) normalizes to the displayed
// Hn xiN + Lie(xiP, psiN) - 2 Lie(sharp(psiP), xiN); the half-density
// expansion does the work and omitting it (`drop_remark35_rule`) must
// leave a residual.
VerifyResult derive_psi_n_form(bool drop_remark35_rule = false);

}  // namespace bfvlab::formal
