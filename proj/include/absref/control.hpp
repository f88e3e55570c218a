#ifndef ABSREF_CONTROL_HPP
#define ABSREF_CONTROL_HPP

#include <optional>
#include <string>
#include <vector>

#include "absref/ctl.hpp"
#include "absref/general_frame.hpp"

namespace absref {

/// Per-world system-level truth of a formula family; bit [i][w] is the
/// check_ctl verdict of formula i on world w's system.
std::vector<std::vector<bool>> truth_table(const GeneralFrame& g,
                                           const std::vector<CtlFormula>& formulas);

/// Optional restriction of the worlds a verification pattern must hold at.
/// Universal quantifiers range over the restriction (intersected with the
/// up-set of the anchor); existential witnesses always range over the whole
/// frame. An empty optional means no restriction. This realizes the
/// truncation contract of the desk-scale gadget frames: verdicts are claimed
/// on a documented budgeted sub-frame only.
using WorldRestriction = std::optional<std::vector<bool>>;

struct ControlVerdict {
  bool ok = true;
  std::string detail;                          // first violation, empty if ok
  std::optional<std::pair<int, int>> witness;  // violating world pair (d, e) or (d,-1)
  explicit operator bool() const { return ok; }
};

// Pure button at c: for all d >= c, (d sat beta implies all e >= d sat beta)
// and some e >= d sat beta.
ControlVerdict is_pure_button(const GeneralFrame& g, int c, const CtlFormula& beta,
                              const WorldRestriction& domain = std::nullopt);

// Weak variant: the second clause only at c (some e >= c sat beta).
ControlVerdict is_pure_weak_button(const GeneralFrame& g, int c, const CtlFormula& lambda,
                                   const WorldRestriction& domain = std::nullopt);

// Switch at c: every d >= c sees both a sigma-world and a not-sigma-world.
ControlVerdict is_switch(const GeneralFrame& g, int c, const CtlFormula& sigma,
                         const WorldRestriction& domain = std::nullopt);

// B-restricted switch at c: every d >= c with not-B sees both
// (sigma and not-B) and (not-sigma and not-B) worlds. Also reports whether
// B itself passed is_pure_button.
struct RestrictedSwitchVerdict {
  ControlVerdict verdict;
  ControlVerdict button_check;
};
RestrictedSwitchVerdict is_restricted_switch(const GeneralFrame& g, int c,
                                             const CtlFormula& sigma, const CtlFormula& button,
                                             const WorldRestriction& domain = std::nullopt);

// Decision at c: lambda|delta an unpushed pure button, mutual exclusion,
// and always (diamond lambda and diamond delta) or lambda or delta.
// Reports which clause fails.
ControlVerdict is_decision(const GeneralFrame& g, int c, const CtlFormula& lambda,
                           const CtlFormula& delta,
                           const WorldRestriction& domain = std::nullopt);

struct IndependenceResult {
  bool ok = true;
  bool inconclusive = false;
  std::string failing_pattern;  // first failing pattern pair, empty if ok
  explicit operator bool() const { return ok && !inconclusive; }
};

inline constexpr long long kDefaultPatternBudget = 1 << 20;

/// Pattern schema over unpushed pure buttons and switches: from every
/// reachable truth vector (I0,J0) every target (I1 ⊇ I0, J1) is realized at
/// an accessible world. Patterns enumerated lexicographically.
IndependenceResult check_independence(const GeneralFrame& g, int c,
                                      const std::vector<CtlFormula>& buttons,
                                      const std::vector<CtlFormula>& switches,
                                      const WorldRestriction& domain = std::nullopt,
                                      long long budget = kDefaultPatternBudget);

/// The not-B-guarded variant for B-restricted switches.
IndependenceResult check_independence_until(const GeneralFrame& g, int c,
                                            const std::vector<CtlFormula>& buttons,
                                            const CtlFormula& button_b,
                                            const std::vector<CtlFormula>& rswitches,
                                            const WorldRestriction& domain = std::nullopt,
                                            long long budget = kDefaultPatternBudget);

/// Decision independence: (I0,J0) -> (I1 ⊇ I0, J1 ⊇ J0, I1 ∩ J1 = ∅).
IndependenceResult check_decision_independence(
    const GeneralFrame& g, int c,
    const std::vector<std::pair<CtlFormula, CtlFormula>>& decisions,
    const WorldRestriction& domain = std::nullopt,
    long long budget = kDefaultPatternBudget);

}  // namespace absref

#endif
