#include "absref/isomorphism.hpp"

#include <algorithm>
#include <map>

#include "absref/error.hpp"

namespace absref {

namespace {

// Invariant-only color refinement (labels + initial flag, then iterated
// in/out color multisets). Returns per-state color ids, canonically numbered.
std::vector<int> refine_colors(const TransitionSystem& ts, std::vector<int> color) {
  const int n = ts.num_states();
  auto pred = ts.predecessors();
  for (;;) {
    std::vector<std::pair<std::vector<int>, int>> keys(n);
    for (int s = 0; s < n; ++s) {
      std::vector<int> key;
      key.push_back(color[s]);
      std::vector<int> out, in;
      for (int t : ts.succ[s]) out.push_back(color[t]);
      for (int t : pred[s]) in.push_back(color[t]);
      std::sort(out.begin(), out.end());
      std::sort(in.begin(), in.end());
      key.push_back(static_cast<int>(out.size()));
      key.insert(key.end(), out.begin(), out.end());
      key.insert(key.end(), in.begin(), in.end());
      keys[s] = {std::move(key), s};
    }
    std::map<std::vector<int>, int> renumber;
    for (const auto& [key, s] : keys)
      renumber.emplace(key, 0);
    int next = 0;
    for (auto& [key, id] : renumber) id = next++;
    std::vector<int> refined(n);
    for (int s = 0; s < n; ++s) refined[s] = renumber[keys[s].first];
    if (refined == color) return color;
    color = std::move(refined);
  }
}

std::string encode(const TransitionSystem& ts, const std::vector<int>& order) {
  const int n = ts.num_states();
  std::vector<int> pos(n);
  for (int p = 0; p < n; ++p) pos[order[p]] = p;
  std::string out;
  out += std::to_string(n);
  out += '|';
  for (int p = 0; p < n; ++p) {
    int s = order[p];
    for (const auto& name : ts.label_names(s)) {
      out += name;
      out += ',';
    }
    out += ts.is_initial(s) ? "I" : "-";
    std::vector<int> adj;
    for (int t : ts.succ[s]) adj.push_back(pos[t]);
    std::sort(adj.begin(), adj.end());
    for (int t : adj) {
      out += ' ';
      out += std::to_string(t);
    }
    out += ';';
  }
  return out;
}

struct CanonSearch {
  const TransitionSystem& ts;
  std::string best;
  std::vector<int> best_order;
  bool have_best = false;

  explicit CanonSearch(const TransitionSystem& t) : ts(t) {}

  void run(std::vector<int> color) {
    const int n = ts.num_states();
    // Find the first non-singleton color class; classes are scanned in color
    // order, members in declared state order (ties broken by lexicographic
    // state identifiers at construction).
    std::vector<std::vector<int>> cells;
    {
      int num_colors = 0;
      for (int c : color) num_colors = std::max(num_colors, c + 1);
      cells.assign(num_colors, {});
      for (int s = 0; s < n; ++s) cells[color[s]].push_back(s);
    }
    int target = -1;
    for (int c = 0; c < static_cast<int>(cells.size()); ++c)
      if (cells[c].size() > 1) {
        target = c;
        break;
      }
    if (target < 0) {
      std::vector<int> order(n);
      for (int s = 0; s < n; ++s) order[color[s]] = s;
      std::string key = encode(ts, order);
      if (!have_best || key < best) {
        best = std::move(key);
        best_order = std::move(order);
        have_best = true;
      }
      return;
    }
    for (int pick : cells[target]) {
      std::vector<int> next = color;
      // Individualize: pick gets a fresh color just below its class.
      for (int s = 0; s < n; ++s)
        if (next[s] >= target) ++next[s];
      next[pick] = target;
      run(refine_colors(ts, std::move(next)));
    }
  }
};

std::vector<int> sorted_by_name(const TransitionSystem& ts) {
  std::vector<int> idx(ts.num_states());
  for (int i = 0; i < ts.num_states(); ++i) idx[i] = i;
  std::stable_sort(idx.begin(), idx.end(),
                   [&](int a, int b) { return ts.states[a] < ts.states[b]; });
  return idx;
}

}  // namespace

CanonicalForm canonical_form(const TransitionSystem& ts) {
  const int n = ts.num_states();
  // Initial colors from (label set, initial flag); candidate order inside a
  // class follows lexicographic state names for reproducible output.
  std::vector<std::pair<std::pair<std::vector<std::string>, int>, int>> keyed;
  for (int s : sorted_by_name(ts))
    keyed.push_back({{ts.label_names(s), ts.is_initial(s) ? 1 : 0}, s});
  std::stable_sort(keyed.begin(), keyed.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<int> color(n);
  int next = -1;
  for (std::size_t i = 0; i < keyed.size(); ++i) {
    if (i == 0 || keyed[i].first != keyed[i - 1].first) ++next;
    color[keyed[i].second] = next;
  }
  CanonSearch search(ts);
  search.run(refine_colors(ts, std::move(color)));
  if (!search.have_best) throw Error("canonical_form: empty system");
  return {std::move(search.best), std::move(search.best_order)};
}

std::optional<std::vector<int>> iso_check(const TransitionSystem& a,
                                          const TransitionSystem& b) {
  if (a.num_states() != b.num_states()) return std::nullopt;
  auto ca = canonical_form(a);
  auto cb = canonical_form(b);
  if (ca.key != cb.key) return std::nullopt;
  std::vector<int> map(a.num_states());
  for (int p = 0; p < a.num_states(); ++p) map[ca.order[p]] = cb.order[p];
  return map;
}

}  // namespace absref
