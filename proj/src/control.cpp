#include "absref/control.hpp"

#include <algorithm>

#include "absref/ctl_check.hpp"
#include "absref/error.hpp"

namespace absref {

std::vector<std::vector<bool>> truth_table(const GeneralFrame& g,
                                           const std::vector<CtlFormula>& formulas) {
  std::vector<std::vector<bool>> table(formulas.size(), std::vector<bool>(g.num_worlds()));
  for (std::size_t i = 0; i < formulas.size(); ++i)
    for (int w = 0; w < g.num_worlds(); ++w)
      table[i][w] = holds(g.worlds[w].system, formulas[i]);
  return table;
}

namespace {

bool in_domain(const WorldRestriction& domain, int w) {
  return !domain || (*domain)[w];
}

void check_anchor(const GeneralFrame& g, int c) {
  if (c < 0 || c >= g.num_worlds()) throw Error("control check: world out of range");
}

}  // namespace

ControlVerdict is_pure_button(const GeneralFrame& g, int c, const CtlFormula& beta,
                              const WorldRestriction& domain) {
  check_anchor(g, c);
  auto truth = truth_table(g, {beta})[0];
  for (int d = 0; d < g.num_worlds(); ++d) {
    if (!g.edge(c, d) || !in_domain(domain, d)) continue;
    if (truth[d]) {
      for (int e = 0; e < g.num_worlds(); ++e)
        if (g.edge(d, e) && !truth[e])
          return {false, "pushed at " + g.worlds[d].name + " but false at successor " +
                             g.worlds[e].name, std::pair{d, e}};
    }
    bool pushable = false;
    for (int e = 0; e < g.num_worlds() && !pushable; ++e) pushable = g.edge(d, e) && truth[e];
    if (!pushable)
      return {false, "cannot be pushed from " + g.worlds[d].name, std::pair{d, -1}};
  }
  return {};
}

ControlVerdict is_pure_weak_button(const GeneralFrame& g, int c, const CtlFormula& lambda,
                                   const WorldRestriction& domain) {
  check_anchor(g, c);
  auto truth = truth_table(g, {lambda})[0];
  for (int d = 0; d < g.num_worlds(); ++d) {
    if (!g.edge(c, d) || !in_domain(domain, d) || !truth[d]) continue;
    for (int e = 0; e < g.num_worlds(); ++e)
      if (g.edge(d, e) && !truth[e])
        return {false, "pushed at " + g.worlds[d].name + " but false at successor " +
                           g.worlds[e].name, std::pair{d, e}};
  }
  bool possible = false;
  for (int e = 0; e < g.num_worlds() && !possible; ++e) possible = g.edge(c, e) && truth[e];
  if (!possible) return {false, "never reachable from " + g.worlds[c].name, std::pair{c, -1}};
  return {};
}

ControlVerdict is_switch(const GeneralFrame& g, int c, const CtlFormula& sigma,
                         const WorldRestriction& domain) {
  check_anchor(g, c);
  auto truth = truth_table(g, {sigma})[0];
  for (int d = 0; d < g.num_worlds(); ++d) {
    if (!g.edge(c, d) || !in_domain(domain, d)) continue;
    bool on = false, off = false;
    for (int e = 0; e < g.num_worlds(); ++e) {
      if (!g.edge(d, e)) continue;
      (truth[e] ? on : off) = true;
    }
    if (!on) return {false, "cannot be turned on from " + g.worlds[d].name, std::pair{d, -1}};
    if (!off) return {false, "cannot be turned off from " + g.worlds[d].name, std::pair{d, -1}};
  }
  return {};
}

RestrictedSwitchVerdict is_restricted_switch(const GeneralFrame& g, int c,
                                             const CtlFormula& sigma, const CtlFormula& button,
                                             const WorldRestriction& domain) {
  check_anchor(g, c);
  RestrictedSwitchVerdict out;
  out.button_check = is_pure_button(g, c, button, domain);
  auto table = truth_table(g, {sigma, button});
  const auto& s = table[0];
  const auto& b = table[1];
  for (int d = 0; d < g.num_worlds(); ++d) {
    if (!g.edge(c, d) || !in_domain(domain, d) || b[d]) continue;
    bool on = false, off = false;
    for (int e = 0; e < g.num_worlds(); ++e) {
      if (!g.edge(d, e) || b[e]) continue;
      (s[e] ? on : off) = true;
    }
    if (!on) {
      out.verdict = {false, "cannot reach (on, not-B) from " + g.worlds[d].name, std::pair{d, -1}};
      return out;
    }
    if (!off) {
      out.verdict = {false, "cannot reach (off, not-B) from " + g.worlds[d].name, std::pair{d, -1}};
      return out;
    }
  }
  return out;
}

ControlVerdict is_decision(const GeneralFrame& g, int c, const CtlFormula& lambda,
                           const CtlFormula& delta, const WorldRestriction& domain) {
  check_anchor(g, c);
  auto table = truth_table(g, {lambda, delta});
  const auto& l = table[0];
  const auto& r = table[1];
  // Clause 1: lambda | delta is an unpushed pure button at c.
  if (l[c] || r[c])
    return {false, "clause 1: decision already pushed at " + g.worlds[c].name, std::pair{c, -1}};
  std::vector<bool> either(g.num_worlds());
  for (int w = 0; w < g.num_worlds(); ++w) either[w] = l[w] || r[w];
  for (int d = 0; d < g.num_worlds(); ++d) {
    if (!g.edge(c, d) || !in_domain(domain, d)) continue;
    if (either[d]) {
      for (int e = 0; e < g.num_worlds(); ++e)
        if (g.edge(d, e) && !either[e])
          return {false, "clause 1: disjunction not pure at " + g.worlds[d].name, std::pair{d, e}};
    }
    bool pushable = false;
    for (int e = 0; e < g.num_worlds() && !pushable; ++e) pushable = g.edge(d, e) && either[e];
    if (!pushable)
      return {false, "clause 1: disjunction not pushable from " + g.worlds[d].name, std::pair{d, -1}};
    // Clause 2: mutual exclusion.
    if (l[d] && r[d])
      return {false, "clause 2: both sides true at " + g.worlds[d].name, std::pair{d, -1}};
    // Clause 3: undecided worlds can still go either way.
    if (!l[d] && !r[d]) {
      bool can_l = false, can_r = false;
      for (int e = 0; e < g.num_worlds(); ++e) {
        if (!g.edge(d, e)) continue;
        can_l = can_l || l[e];
        can_r = can_r || r[e];
      }
      if (!can_l || !can_r)
        return {false, "clause 3: undecided at " + g.worlds[d].name + " but cannot reach " +
                           (can_l ? "right" : "left") + " side", std::pair{d, -1}};
    }
  }
  return {};
}

namespace {

std::string pattern_string(unsigned i0, unsigned j0, unsigned i1, unsigned j1, int world,
                           const GeneralFrame& g) {
  auto bits = [](unsigned m) {
    std::string s = "{";
    for (int i = 0; i < 16; ++i)
      if (m >> i & 1) s += (s.size() > 1 ? "," : "") + std::to_string(i);
    return s + "}";
  };
  return "from " + g.worlds[world].name + " with (" + bits(i0) + "," + bits(j0) +
         ") no accessible world realizes (" + bits(i1) + "," + bits(j1) + ")";
}

// Truth vector of world w under a family table as a bitmask.
unsigned vector_of(const std::vector<std::vector<bool>>& table, std::size_t from,
                   std::size_t count, int w) {
  unsigned m = 0;
  for (std::size_t i = 0; i < count; ++i)
    if (table[from + i][w]) m |= 1u << i;
  return m;
}

}  // namespace

IndependenceResult check_independence(const GeneralFrame& g, int c,
                                      const std::vector<CtlFormula>& buttons,
                                      const std::vector<CtlFormula>& switches,
                                      const WorldRestriction& domain, long long budget) {
  check_anchor(g, c);
  const std::size_t n = buttons.size(), m = switches.size();
  std::vector<CtlFormula> all = buttons;
  all.insert(all.end(), switches.begin(), switches.end());
  auto table = truth_table(g, all);
  long long patterns = 1;
  for (std::size_t i = 0; i < 2 * (n + m) && patterns <= budget; ++i) patterns *= 2;
  if (patterns > budget) return {false, true, "pattern enumeration exceeds budget"};
  for (unsigned i0 = 0; i0 < (1u << n); ++i0)
    for (unsigned j0 = 0; j0 < (1u << m); ++j0)
      for (unsigned i1 = 0; i1 < (1u << n); ++i1) {
        if ((i0 & i1) != i0) continue;  // need I0 subset of I1
        for (unsigned j1 = 0; j1 < (1u << m); ++j1)
          for (int d = 0; d < g.num_worlds(); ++d) {
            if (!g.edge(c, d) || !in_domain(domain, d)) continue;
            if (vector_of(table, 0, n, d) != i0 || vector_of(table, n, m, d) != j0) continue;
            bool found = false;
            for (int e = 0; e < g.num_worlds() && !found; ++e)
              found = g.edge(d, e) && vector_of(table, 0, n, e) == i1 &&
                      vector_of(table, n, m, e) == j1;
            if (!found) return {false, false, pattern_string(i0, j0, i1, j1, d, g)};
          }
      }
  return {};
}

IndependenceResult check_independence_until(const GeneralFrame& g, int c,
                                            const std::vector<CtlFormula>& buttons,
                                            const CtlFormula& button_b,
                                            const std::vector<CtlFormula>& rswitches,
                                            const WorldRestriction& domain, long long budget) {
  check_anchor(g, c);
  const std::size_t n = buttons.size(), m = rswitches.size();
  std::vector<CtlFormula> all = buttons;
  all.insert(all.end(), rswitches.begin(), rswitches.end());
  all.push_back(button_b);
  auto table = truth_table(g, all);
  const auto& b = table[n + m];
  long long patterns = 1;
  for (std::size_t i = 0; i < 2 * (n + m) && patterns <= budget; ++i) patterns *= 2;
  if (patterns > budget) return {false, true, "pattern enumeration exceeds budget"};
  for (unsigned i0 = 0; i0 < (1u << n); ++i0)
    for (unsigned j0 = 0; j0 < (1u << m); ++j0)
      for (unsigned i1 = 0; i1 < (1u << n); ++i1) {
        if ((i0 & i1) != i0) continue;
        for (unsigned j1 = 0; j1 < (1u << m); ++j1)
          for (int d = 0; d < g.num_worlds(); ++d) {
            if (!g.edge(c, d) || !in_domain(domain, d) || b[d]) continue;
            if (vector_of(table, 0, n, d) != i0 || vector_of(table, n, m, d) != j0) continue;
            bool found = false;
            for (int e = 0; e < g.num_worlds() && !found; ++e)
              found = g.edge(d, e) && !b[e] && vector_of(table, 0, n, e) == i1 &&
                      vector_of(table, n, m, e) == j1;
            if (!found) return {false, false, pattern_string(i0, j0, i1, j1, d, g)};
          }
      }
  return {};
}

IndependenceResult check_decision_independence(
    const GeneralFrame& g, int c,
    const std::vector<std::pair<CtlFormula, CtlFormula>>& decisions,
    const WorldRestriction& domain, long long budget) {
  check_anchor(g, c);
  const std::size_t n = decisions.size();
  std::vector<CtlFormula> all;
  for (const auto& [l, r] : decisions) all.push_back(l);
  for (const auto& [l, r] : decisions) all.push_back(r);
  auto table = truth_table(g, all);
  long long patterns = 1;
  for (std::size_t i = 0; i < 4 * n && patterns <= budget; ++i) patterns *= 2;
  if (patterns > budget) return {false, true, "pattern enumeration exceeds budget"};
  for (unsigned i0 = 0; i0 < (1u << n); ++i0)
    for (unsigned i1 = 0; i1 < (1u << n); ++i1) {
      if ((i0 & i1) != i0) continue;  // I0 subset of I1
      for (unsigned j0 = 0; j0 < (1u << n); ++j0) {
        for (unsigned j1 = 0; j1 < (1u << n); ++j1) {
          if ((j0 & j1) != j0) continue;       // J0 subset of J1
          if ((i1 & j1) != 0) continue;        // J1 disjoint from I1
          for (int d = 0; d < g.num_worlds(); ++d) {
            if (!g.edge(c, d) || !in_domain(domain, d)) continue;
            if (vector_of(table, 0, n, d) != i0 || vector_of(table, n, n, d) != j0) continue;
            bool found = false;
            for (int e = 0; e < g.num_worlds() && !found; ++e)
              found = g.edge(d, e) && vector_of(table, 0, n, e) == i1 &&
                      vector_of(table, n, n, e) == j1;
            if (!found) return {false, false, pattern_string(i0, j0, i1, j1, d, g)};
          }
        }
      }
    }
  return {};
}

}  // namespace absref
