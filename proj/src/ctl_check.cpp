#include "absref/ctl_check.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "absref/error.hpp"

namespace absref {

namespace {

std::vector<bool> eval(const TransitionSystem& ts, const CtlFormula& f,
                       const std::vector<std::vector<int>>& pred) {
  const int n = ts.num_states();
  std::vector<bool> out(n, false);
  switch (f.op()) {
    case CtlOp::True:
      out.assign(n, true);
      break;
    case CtlOp::Atom: {
      int a = ts.ap_index(f.atom_name());
      if (a < 0) throw Error("unknown atom: " + f.atom_name());
      for (int s = 0; s < n; ++s)
        out[s] = std::binary_search(ts.labels[s].begin(), ts.labels[s].end(), a);
      break;
    }
    case CtlOp::Not: {
      auto sub = eval(ts, f.left(), pred);
      for (int s = 0; s < n; ++s) out[s] = !sub[s];
      break;
    }
    case CtlOp::And: {
      auto a = eval(ts, f.left(), pred);
      auto b = eval(ts, f.right(), pred);
      for (int s = 0; s < n; ++s) out[s] = a[s] && b[s];
      break;
    }
    case CtlOp::ExistsNext: {
      auto sub = eval(ts, f.left(), pred);
      for (int s = 0; s < n; ++s)
        for (int t : ts.succ[s])
          if (sub[t]) {
            out[s] = true;
            break;
          }
      break;
    }
    case CtlOp::ForallNext: {
      auto sub = eval(ts, f.left(), pred);
      for (int s = 0; s < n; ++s) {
        out[s] = true;
        for (int t : ts.succ[s])
          if (!sub[t]) {
            out[s] = false;
            break;
          }
      }
      break;
    }
    case CtlOp::ExistsUntil: {
      auto a = eval(ts, f.left(), pred);
      auto b = eval(ts, f.right(), pred);
      // Least fixpoint by backwards propagation from b-states through a-states.
      std::vector<int> work;
      for (int s = 0; s < n; ++s)
        if (b[s]) {
          out[s] = true;
          work.push_back(s);
        }
      while (!work.empty()) {
        int t = work.back();
        work.pop_back();
        for (int s : pred[t])
          if (!out[s] && a[s]) {
            out[s] = true;
            work.push_back(s);
          }
      }
      break;
    }
    case CtlOp::ForallUntil: {
      auto a = eval(ts, f.left(), pred);
      auto b = eval(ts, f.right(), pred);
      // Least fixpoint: count successors not yet known to satisfy.
      std::vector<int> remaining(n);
      for (int s = 0; s < n; ++s) remaining[s] = static_cast<int>(ts.succ[s].size());
      std::vector<int> work;
      for (int s = 0; s < n; ++s)
        if (b[s]) {
          out[s] = true;
          work.push_back(s);
        }
      while (!work.empty()) {
        int t = work.back();
        work.pop_back();
        for (int s : pred[t]) {
          if (--remaining[s] == 0 && !out[s] && a[s]) {
            out[s] = true;
            work.push_back(s);
          }
        }
      }
      break;
    }
    default:
      // Sugar should have been normalized away.
      return eval(ts, f.normalized(), pred);
  }
  return out;
}

}  // namespace

SatSet check_ctl(const TransitionSystem& ts, const CtlFormula& f) {
  for (const auto& a : f.atoms())
    if (ts.ap_index(a) < 0) throw Error("unknown atom: " + a);
  auto pred = ts.predecessors();
  return SatSet{f, eval(ts, f.normalized(), pred)};
}

bool holds(const TransitionSystem& ts, const CtlFormula& f) {
  auto sat = check_ctl(ts, f);
  for (int s : ts.initial)
    if (!sat.sat[s]) return false;
  return true;
}

namespace {

// Round-indexed block separators. A block of round r is identified by its
// block id in bp.rounds[r]; dist(r, c, c') yields a formula true on every
// state of block c and false on every state of block c'.
class Distinguisher {
public:
  explicit Distinguisher(const BisimPartition& bp) : bp_(bp), ts_(bp.subject.ts) {
    rep_.resize(bp_.rounds.size());
    for (std::size_t r = 0; r < bp_.rounds.size(); ++r) {
      const auto& round = bp_.rounds[r];
      int blocks = *std::max_element(round.begin(), round.end()) + 1;
      rep_[r].assign(blocks, -1);
      for (int s = 0; s < static_cast<int>(round.size()); ++s)
        if (rep_[r][round[s]] < 0) rep_[r][round[s]] = s;
    }
  }

  CtlFormula dist(int r, int c, int c2) {
    if (c == c2) throw InternalError("distinguisher: identical blocks");
    auto key = std::tuple<int, int, int>(r, c, c2);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    CtlFormula out = compute(r, c, c2);
    memo_.emplace(key, out);
    return out;
  }

private:
  CtlFormula compute(int r, int c, int c2) {
    int s = rep_[r][c];
    int t = rep_[r][c2];
    if (r == 0) {
      // Label split: some atom occurs on one side only.
      auto ls = ts_.label_names(s);
      auto lt = ts_.label_names(t);
      for (const auto& a : ls)
        if (!std::binary_search(lt.begin(), lt.end(), a)) return CtlFormula::atom(a);
      for (const auto& a : lt)
        if (!std::binary_search(ls.begin(), ls.end(), a))
          return CtlFormula::negation(CtlFormula::atom(a));
      throw InternalError("distinguisher: round-0 blocks with equal labels");
    }
    if (bp_.rounds[r - 1][s] != bp_.rounds[r - 1][t]) return dist(r - 1, bp_.rounds[r - 1][s], bp_.rounds[r - 1][t]);
    // Split by a round-(r-1) successor block present on one side only.
    auto succ_blocks = [&](int state) {
      std::set<int> out;
      for (int u : ts_.succ[state]) out.insert(bp_.rounds[r - 1][u]);
      return out;
    };
    auto sb = succ_blocks(s);
    auto tb = succ_blocks(t);
    for (int d : sb)
      if (!tb.count(d)) return CtlFormula::unary(CtlOp::ExistsNext, isolate(r - 1, d, tb));
    for (int d : tb)
      if (!sb.count(d))
        return CtlFormula::negation(CtlFormula::unary(CtlOp::ExistsNext, isolate(r - 1, d, sb)));
    throw InternalError("distinguisher: blocks split without successor difference");
  }

  // Formula true on round-r block d and false on all blocks in `others`.
  CtlFormula isolate(int r, int d, const std::set<int>& others) {
    CtlFormula acc;
    for (int o : others) {
      if (o == d) throw InternalError("distinguisher: isolate against itself");
      CtlFormula sep = dist(r, d, o);
      acc = acc.valid_handle() ? CtlFormula::conj(std::move(acc), std::move(sep)) : sep;
    }
    return acc.valid_handle() ? acc : CtlFormula::make_true();
  }

  const BisimPartition& bp_;
  const TransitionSystem& ts_;
  std::vector<std::vector<int>> rep_;
  std::map<std::tuple<int, int, int>, CtlFormula> memo_;
};

}  // namespace

CtlFormula distinguishing_formula(const BisimPartition& bp, int s, int t) {
  const auto& final_round = bp.rounds.back();
  if (final_round[s] == final_round[t])
    throw Error("distinguishing_formula: states are bisimilar");
  // First round where the two states separate.
  std::size_t r = 0;
  while (bp.rounds[r][s] == bp.rounds[r][t]) ++r;
  Distinguisher d(bp);
  return d.dist(static_cast<int>(r), bp.rounds[r][s], bp.rounds[r][t]);
}

}  // namespace absref
