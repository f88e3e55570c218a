#ifndef ABSREF_CTL_CHECK_HPP
#define ABSREF_CTL_CHECK_HPP

#include <vector>

#include "absref/bisimulation.hpp"
#include "absref/ctl.hpp"
#include "absref/transition_system.hpp"

namespace absref {

struct SatSet {
  CtlFormula formula;
  std::vector<bool> sat;  // per state of the checked system
  bool contains(int s) const { return sat[s]; }
};

/// Explicit-state bottom-up labeling on the normalized core form.
/// Throws Error on atoms outside ts.ap.
SatSet check_ctl(const TransitionSystem& ts, const CtlFormula& f);

/// System-level satisfaction: all initial states satisfy f.
bool holds(const TransitionSystem& ts, const CtlFormula& f);

/// CTL formula true at union state s and false at union state t,
/// reconstructed from the recorded refinement rounds of bp.
/// Throws Error if s and t are bisimilar.
CtlFormula distinguishing_formula(const BisimPartition& bp, int s, int t);

}  // namespace absref

#endif
