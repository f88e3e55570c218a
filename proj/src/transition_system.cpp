#include "absref/transition_system.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "absref/error.hpp"

namespace absref {

int TransitionSystem::state_index(const std::string& name) const {
  for (int i = 0; i < num_states(); ++i)
    if (states[i] == name) return i;
  return -1;
}

int TransitionSystem::ap_index(const std::string& name) const {
  auto it = std::lower_bound(ap.begin(), ap.end(), name);
  if (it != ap.end() && *it == name) return static_cast<int>(it - ap.begin());
  return -1;
}

bool TransitionSystem::has_edge(int from, int to) const {
  const auto& row = succ[from];
  return std::binary_search(row.begin(), row.end(), to);
}

bool TransitionSystem::is_initial(int s) const {
  return std::binary_search(initial.begin(), initial.end(), s);
}

std::vector<std::vector<int>> TransitionSystem::predecessors() const {
  std::vector<std::vector<int>> pred(states.size());
  for (const auto& [a, b] : transitions) pred[b].push_back(a);
  return pred;
}

std::vector<std::string> TransitionSystem::label_names(int s) const {
  std::vector<std::string> out;
  out.reserve(labels[s].size());
  for (int a : labels[s]) out.push_back(ap[a]);
  return out;  // sorted because ap is sorted and labels[s] is sorted
}

void TransitionSystem::finalize() {
  const int n = num_states();
  {
    std::set<std::string> seen(states.begin(), states.end());
    if (static_cast<int>(seen.size()) != n) throw Error("duplicate state names");
  }
  // Sort ap and remap label indices.
  std::vector<int> perm(ap.size());
  for (std::size_t i = 0; i < ap.size(); ++i) perm[i] = static_cast<int>(i);
  std::sort(perm.begin(), perm.end(), [&](int a, int b) { return ap[a] < ap[b]; });
  std::vector<std::string> sorted_ap;
  std::vector<int> new_index(ap.size());
  for (std::size_t i = 0; i < perm.size(); ++i) {
    if (!sorted_ap.empty() && sorted_ap.back() == ap[perm[i]])
      throw Error("duplicate ap name: " + ap[perm[i]]);
    sorted_ap.push_back(ap[perm[i]]);
    new_index[perm[i]] = static_cast<int>(i);
  }
  ap = std::move(sorted_ap);
  if (static_cast<int>(labels.size()) != n) throw Error("labels must cover every state");
  for (auto& ls : labels) {
    for (int& a : ls) {
      if (a < 0 || a >= static_cast<int>(ap.size())) throw Error("label index out of range");
      a = new_index[a];
    }
    std::sort(ls.begin(), ls.end());
    ls.erase(std::unique(ls.begin(), ls.end()), ls.end());
  }
  std::sort(initial.begin(), initial.end());
  initial.erase(std::unique(initial.begin(), initial.end()), initial.end());
  for (int s : initial)
    if (s < 0 || s >= n) throw Error("initial state index out of range");
  std::sort(transitions.begin(), transitions.end());
  transitions.erase(std::unique(transitions.begin(), transitions.end()), transitions.end());
  succ.assign(n, {});
  for (const auto& [a, b] : transitions) {
    if (a < 0 || a >= n || b < 0 || b >= n) throw Error("transition endpoint out of range");
    succ[a].push_back(b);
  }
}

TransitionSystem make_ts(std::vector<std::string> states,
                         std::vector<std::string> ap,
                         const std::vector<std::pair<std::string, std::vector<std::string>>>& labels,
                         const std::vector<std::string>& initial,
                         const std::vector<std::pair<std::string, std::string>>& transitions) {
  TransitionSystem ts;
  ts.states = std::move(states);
  ts.ap = std::move(ap);
  std::map<std::string, int> sidx;
  for (int i = 0; i < ts.num_states(); ++i) sidx[ts.states[i]] = i;
  std::map<std::string, int> aidx;
  for (std::size_t i = 0; i < ts.ap.size(); ++i) aidx[ts.ap[i]] = static_cast<int>(i);
  auto state = [&](const std::string& name) {
    auto it = sidx.find(name);
    if (it == sidx.end()) throw Error("unknown state: " + name);
    return it->second;
  };
  ts.labels.assign(ts.states.size(), {});
  std::vector<bool> labelled(ts.states.size(), false);
  for (const auto& [name, props] : labels) {
    int s = state(name);
    labelled[s] = true;
    for (const auto& p : props) {
      auto it = aidx.find(p);
      if (it == aidx.end()) throw Error("label uses unknown ap: " + p);
      ts.labels[s].push_back(it->second);
    }
  }
  for (int s = 0; s < ts.num_states(); ++s)
    if (!labelled[s]) throw Error("no label entry for state: " + ts.states[s]);
  for (const auto& name : initial) ts.initial.push_back(state(name));
  for (const auto& [a, b] : transitions) ts.transitions.emplace_back(state(a), state(b));
  ts.finalize();
  return ts;
}

std::vector<std::string> validate(const TransitionSystem& ts) {
  std::vector<std::string> out;
  if (ts.states.empty()) out.push_back("no states");
  if (ts.initial.empty()) out.push_back("empty initial set");
  for (int s = 0; s < ts.num_states(); ++s)
    if (ts.succ[s].empty()) out.push_back("terminal state: " + ts.states[s]);
  return out;
}

Partition Partition::from_block_of(std::vector<int> block_of) {
  // Renumber blocks canonically: block ids in order of first occurrence,
  // which given sorted members equals ordering by smallest member.
  Partition p;
  std::map<int, int> renumber;
  std::vector<std::vector<int>> blocks;
  for (int s = 0; s < static_cast<int>(block_of.size()); ++s) {
    auto it = renumber.find(block_of[s]);
    int id;
    if (it == renumber.end()) {
      id = static_cast<int>(blocks.size());
      renumber[block_of[s]] = id;
      blocks.emplace_back();
    } else {
      id = it->second;
    }
    blocks[id].push_back(s);
  }
  p.blocks = std::move(blocks);
  p.block_of.assign(block_of.size(), -1);
  for (int b = 0; b < p.num_blocks(); ++b)
    for (int s : p.blocks[b]) p.block_of[s] = b;
  return p;
}

Partition Partition::singletons(int n) {
  std::vector<int> ids(n);
  for (int i = 0; i < n; ++i) ids[i] = i;
  return from_block_of(std::move(ids));
}

bool Partition::refines(const Partition& coarser) const {
  if (block_of.size() != coarser.block_of.size()) return false;
  for (const auto& block : blocks) {
    int target = coarser.block_of[block.front()];
    for (int s : block)
      if (coarser.block_of[s] != target) return false;
  }
  return true;
}

int non_uniform_block(const TransitionSystem& ts, const Partition& p) {
  for (int b = 0; b < p.num_blocks(); ++b) {
    const auto& ref = ts.labels[p.blocks[b].front()];
    for (int s : p.blocks[b])
      if (ts.labels[s] != ref) return b;
  }
  return -1;
}

}  // namespace absref
