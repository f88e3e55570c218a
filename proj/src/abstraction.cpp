#include "absref/abstraction.hpp"

#include <algorithm>
#include <set>

#include "absref/error.hpp"

namespace absref {

WitnessCheck is_abstraction(const AbstractionWitness& w) {
  const auto& fine = w.fine;
  const auto& coarse = w.coarse;
  auto fail = [](int cond, std::string detail) {
    return WitnessCheck{false, cond, std::move(detail)};
  };
  if (static_cast<int>(w.map.size()) != fine.num_states())
    return fail(0, "map is not total");
  std::vector<bool> covered(coarse.num_states(), false);
  for (int s = 0; s < fine.num_states(); ++s) {
    int c = w.map[s];
    if (c < 0 || c >= coarse.num_states()) return fail(0, "map image out of range at " + fine.states[s]);
    covered[c] = true;
  }
  for (int c = 0; c < coarse.num_states(); ++c)
    if (!covered[c]) return fail(0, "map not surjective: " + coarse.states[c] + " uncovered");
  for (int s = 0; s < fine.num_states(); ++s)
    if (fine.label_names(s) != coarse.label_names(w.map[s]))
      return fail(1, "label mismatch at " + fine.states[s] + " vs " + coarse.states[w.map[s]]);
  std::set<std::pair<int, int>> image;
  for (const auto& [a, b] : fine.transitions) {
    image.emplace(w.map[a], w.map[b]);
    if (!coarse.has_edge(w.map[a], w.map[b]))
      return fail(2, "image edge missing in coarse: " + fine.states[a] + "->" + fine.states[b]);
  }
  for (const auto& [a, b] : coarse.transitions)
    if (!image.count({a, b}))
      return fail(2, "coarse edge not regenerated: " + coarse.states[a] + "->" + coarse.states[b]);
  std::set<int> init_image;
  for (int s : fine.initial) {
    init_image.insert(w.map[s]);
    if (!coarse.is_initial(w.map[s]))
      return fail(3, "initial image not initial: " + fine.states[s]);
  }
  for (int c : coarse.initial)
    if (!init_image.count(c))
      return fail(3, "coarse initial not covered: " + coarse.states[c]);
  return {};
}

AbstractionWitness identity_witness(const TransitionSystem& ts) {
  AbstractionWitness w{ts, ts, {}};
  w.map.resize(ts.states.size());
  for (int i = 0; i < ts.num_states(); ++i) w.map[i] = i;
  return w;
}

AbstractionWitness compose(const AbstractionWitness& coarse_to_mid,
                           const AbstractionWitness& mid_to_fine) {
  AbstractionWitness w;
  w.fine = mid_to_fine.fine;
  w.coarse = coarse_to_mid.coarse;
  w.map.reserve(mid_to_fine.map.size());
  for (int m : mid_to_fine.map) w.map.push_back(coarse_to_mid.map[m]);
  return w;
}

std::pair<TransitionSystem, AbstractionWitness> quotient(const TransitionSystem& ts,
                                                         const Partition& p) {
  if (static_cast<int>(p.block_of.size()) != ts.num_states())
    throw Error("partition does not match system");
  if (int b = non_uniform_block(ts, p); b >= 0) {
    std::string names;
    for (int s : p.blocks[b]) names += (names.empty() ? "" : ",") + ts.states[s];
    throw Error("partition not label-uniform, offending block {" + names + "}");
  }
  TransitionSystem q;
  q.ap = ts.ap;
  q.states.reserve(p.blocks.size());
  q.labels.reserve(p.blocks.size());
  for (const auto& block : p.blocks) {
    std::string name;
    for (int s : block) name += (name.empty() ? "" : "+") + ts.states[s];
    q.states.push_back(std::move(name));
    q.labels.push_back(ts.labels[block.front()]);
  }
  for (const auto& [a, b] : ts.transitions) q.transitions.emplace_back(p.block_of[a], p.block_of[b]);
  for (int s : ts.initial) q.initial.push_back(p.block_of[s]);
  q.finalize();
  AbstractionWitness w{ts, q, p.block_of};
  return {std::move(q), std::move(w)};
}

namespace {

struct SearchState {
  const TransitionSystem& coarse;
  const TransitionSystem& fine;
  long long budget;
  long long nodes = 0;
  bool exhausted = false;
  std::vector<int> map;               // fine -> coarse, -1 unassigned
  std::vector<int> cover;             // coarse state -> #preimages
  std::vector<std::vector<int>> candidates;  // per fine state
  std::vector<std::vector<int>> fine_pred;

  SearchState(const TransitionSystem& c, const TransitionSystem& f, long long b)
      : coarse(c), fine(f), budget(b), map(f.num_states(), -1),
        cover(c.num_states(), 0), fine_pred(f.predecessors()) {
    candidates.resize(f.num_states());
    for (int s = 0; s < f.num_states(); ++s) {
      auto ls = f.label_names(s);
      for (int c2 = 0; c2 < c.num_states(); ++c2) {
        if (c.label_names(c2) != ls) continue;
        if (f.is_initial(s) && !c.is_initial(c2)) continue;
        candidates[s].push_back(c2);
      }
    }
  }

  bool feasible(int s, int c) const {
    for (int t : fine.succ[s])
      if (map[t] >= 0 && !coarse.has_edge(c, map[t])) return false;
    for (int t : fine_pred[s])
      if (map[t] >= 0 && !coarse.has_edge(map[t], c)) return false;
    return true;
  }

  bool surjectivity_ok(int next) const {
    int uncovered = 0;
    for (int v : cover)
      if (v == 0) ++uncovered;
    return uncovered <= fine.num_states() - next;
  }

  bool complete_check() const {
    // Exact transition-image and initial-image equality.
    std::set<std::pair<int, int>> image;
    for (const auto& [a, b] : fine.transitions) image.emplace(map[a], map[b]);
    for (const auto& [a, b] : coarse.transitions)
      if (!image.count({a, b})) return false;
    std::set<int> init;
    for (int s : fine.initial) init.insert(map[s]);
    return std::set<int>(coarse.initial.begin(), coarse.initial.end()) == init;
  }

  bool search(int s) {
    if (++nodes > budget) {
      exhausted = true;
      return false;
    }
    if (s == fine.num_states()) return complete_check();
    for (int c : candidates[s]) {
      if (!feasible(s, c)) continue;
      map[s] = c;
      ++cover[c];
      if (surjectivity_ok(s + 1) && search(s + 1)) return true;
      --cover[c];
      map[s] = -1;
      if (exhausted) return false;
    }
    return false;
  }
};

}  // namespace

AbstractionSearch find_abstraction(const TransitionSystem& coarse,
                                   const TransitionSystem& fine,
                                   long long node_budget) {
  if (!coarse.same_ap(fine)) throw Error("find_abstraction: systems have different ap sets");
  AbstractionSearch result;
  if (coarse.num_states() > fine.num_states()) {
    result.outcome = SearchOutcome::NoWitness;
    return result;
  }
  SearchState st(coarse, fine, node_budget);
  bool found = st.search(0);
  result.nodes = st.nodes;
  if (found) {
    result.outcome = SearchOutcome::Found;
    result.witness = AbstractionWitness{fine, coarse, st.map};
  } else if (st.exhausted) {
    result.outcome = SearchOutcome::Inconclusive;
  }
  return result;
}

CommonRefinement common_refinement(const TransitionSystem& t,
                                   const AbstractionWitness& w1,
                                   const AbstractionWitness& w2) {
  if (static_cast<int>(w1.map.size()) != t.num_states() ||
      static_cast<int>(w2.map.size()) != t.num_states())
    throw Error("common_refinement: witnesses not over the given system");
  std::map<std::pair<int, int>, int> index;
  std::vector<std::pair<int, int>> pairs;
  std::vector<int> base_map(t.num_states());
  for (int s = 0; s < t.num_states(); ++s) {
    std::pair<int, int> key{w1.map[s], w2.map[s]};
    auto it = index.find(key);
    if (it == index.end()) {
      it = index.emplace(key, static_cast<int>(pairs.size())).first;
      pairs.push_back(key);
    }
    base_map[s] = it->second;
  }
  TransitionSystem prod;
  prod.ap = t.ap;
  prod.states.resize(pairs.size());
  prod.labels.resize(pairs.size());
  for (int s = 0; s < t.num_states(); ++s) {
    int i = base_map[s];
    prod.states[i] = w1.coarse.states[pairs[i].first] + "|" + w2.coarse.states[pairs[i].second];
    prod.labels[i] = t.labels[s];
  }
  for (const auto& [a, b] : t.transitions) prod.transitions.emplace_back(base_map[a], base_map[b]);
  for (int s : t.initial) prod.initial.push_back(base_map[s]);
  prod.finalize();
  CommonRefinement out;
  out.to_first.fine = prod;
  out.to_first.coarse = w1.coarse;
  out.to_second.fine = prod;
  out.to_second.coarse = w2.coarse;
  for (const auto& [c1, c2] : pairs) {
    out.to_first.map.push_back(c1);
    out.to_second.map.push_back(c2);
  }
  out.from_base = AbstractionWitness{t, prod, base_map};
  out.product = std::move(prod);
  return out;
}

std::pair<TransitionSystem, AbstractionWitness> path_isolating_refinement(
    const TransitionSystem& t, const std::map<int, Lasso>& lassos) {
  {
    std::set<int> keys;
    for (const auto& [k, l] : lassos) keys.insert(k);
    if (keys != std::set<int>(t.initial.begin(), t.initial.end()))
      throw Error("path_isolating_refinement: lasso keys must be exactly the initial states");
  }
  for (const auto& [k, l] : lassos) {
    if (l.states.empty() || l.states.front() != k)
      throw Error("lasso for " + t.states[k] + " does not start at its key");
    if (l.loop_start < 0 || l.loop_start >= static_cast<int>(l.states.size()))
      throw Error("lasso loop_start out of range");
    for (std::size_t i = 0; i + 1 < l.states.size(); ++i)
      if (!t.has_edge(l.states[i], l.states[i + 1]))
        throw Error("lasso step " + std::to_string(i) + " is not a transition: " +
                    t.states[l.states[i]] + "->" + t.states[l.states[i + 1]]);
    if (!t.has_edge(l.states.back(), l.states[l.loop_start]))
      throw Error("lasso closing edge is not a transition: " + t.states[l.states.back()] +
                  "->" + t.states[l.states[l.loop_start]]);
  }
  TransitionSystem r;
  r.ap = t.ap;
  std::vector<int> back_map;
  // Non-initial copy of t.
  for (int s = 0; s < t.num_states(); ++s) {
    r.states.push_back(t.states[s] + "#copy");
    r.labels.push_back(t.labels[s]);
    back_map.push_back(s);
  }
  for (const auto& [a, b] : t.transitions) r.transitions.emplace_back(a, b);
  // One chain component per initial state.
  for (const auto& [k, l] : lassos) {
    int base = static_cast<int>(r.states.size());
    for (std::size_t i = 0; i < l.states.size(); ++i) {
      r.states.push_back(t.states[k] + "#" + std::to_string(i));
      r.labels.push_back(t.labels[l.states[i]]);
      back_map.push_back(l.states[i]);
    }
    for (std::size_t i = 0; i + 1 < l.states.size(); ++i)
      r.transitions.emplace_back(base + static_cast<int>(i), base + static_cast<int>(i) + 1);
    r.transitions.emplace_back(base + static_cast<int>(l.states.size()) - 1, base + l.loop_start);
    r.initial.push_back(base);
  }
  r.finalize();
  AbstractionWitness w{r, t, back_map};
  return {std::move(r), std::move(w)};
}

}  // namespace absref
