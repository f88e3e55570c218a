#ifndef ABSREF_LABELING_HPP
#define ABSREF_LABELING_HPP

#include <map>
#include <string>
#include <vector>

#include "absref/control.hpp"
#include "absref/ctl.hpp"
#include "absref/general_frame.hpp"
#include "absref/modal.hpp"

namespace absref {

/// Assignment of CTL sentences to the nodes of a finite rooted frame,
/// mirroring the frame's order inside a refinement general frame.
struct Labeling {
  KripkeFrame frame;
  int root = -1;
  std::vector<CtlFormula> phi;  // per frame node
};

struct LabelingCheck {
  bool ok = true;
  int condition = 0;  // violated condition 1..3 when !ok
  std::string detail;
  explicit operator bool() const { return ok; }
};

/// Checks the three labeling conditions against the target frame at anchor:
/// (1) every d >= anchor satisfies exactly one phi_w, (2) from each such d a
/// world satisfying phi_v is reachable iff w precedes v in the labeling
/// frame, (3) the anchor satisfies phi_root. Universal quantification over d
/// honors the optional restriction; reachability witnesses use the whole
/// frame.
LabelingCheck verify_labeling(const Labeling& l, const GeneralFrame& target, int anchor,
                              const WorldRestriction& domain = std::nullopt);

/// Finite countermodel on the labeling frame: eval_modal at root is false.
struct FiniteCountermodel {
  KripkeFrame frame;
  Valuation valuation;
  int root = -1;
  ModalFormula formula;
};

struct TransferResult {
  std::map<std::string, std::vector<int>> world_sets;  // prop -> target worlds
  std::map<std::string, CtlFormula> prop_formulas;     // prop -> disjunction of phi
  AdmissibleValuation valuation;                       // block view of the sets
};

/// Lifts a finite countermodel through a verified labeling onto the target
/// frame; asserts the lifted valuation falsifies the formula at the anchor.
TransferResult transfer_countermodel(const Labeling& l, const GeneralFrame& target, int anchor,
                                     const FiniteCountermodel& cm,
                                     const WorldRestriction& domain = std::nullopt);

/// phi_(I,J) over gen_preboolean(n, 2^m): positive buttons/switches for the
/// members of I and J, all others negated. Root is the all-off cluster.
Labeling build_preboolean_labeling(const std::vector<CtlFormula>& buttons,
                                   const std::vector<CtlFormula>& switches);

/// Over gen_lollipop(n, m): phi_(I,J) = (buttons in I) & (switches in J) &
/// negations & !B; phi_star = B.
Labeling build_lollipop_labeling(const std::vector<CtlFormula>& buttons,
                                 const CtlFormula& button_b,
                                 const std::vector<CtlFormula>& rswitches);

/// Over gen_fpf(n): phi_f = (lambda_i where f(i)=0) & (delta_i where f(i)=1)
/// with explicit !lambda_i & !delta_i for undefined i.
Labeling build_fpf_labeling(const std::vector<std::pair<CtlFormula, CtlFormula>>& decisions);

}  // namespace absref

#endif
