#include "absref/corpus.hpp"

#include <algorithm>

#include "absref/abstraction.hpp"
#include "absref/ctl_check.hpp"
#include "absref/error.hpp"
#include "absref/frame_gen.hpp"

namespace absref {
namespace corpus {

namespace {

using Labels = std::vector<std::pair<std::string, std::vector<std::string>>>;
using Edges = std::vector<std::pair<std::string, std::string>>;

std::string num(int i) { return std::to_string(i); }

}  // namespace

TransitionSystem fig1_t1() {
  return make_ts({"x0", "xneg", "xpos"}, {"x0"},
                 {{"x0", {"x0"}}, {"xneg", {}}, {"xpos", {}}},
                 {"x0"},
                 {{"x0", "xneg"}, {"x0", "xpos"}, {"xneg", "xneg"}, {"xneg", "x0"},
                  {"xpos", "xpos"}, {"xpos", "x0"}});
}

TransitionSystem fig1_t2() {
  return make_ts({"x0", "xm1", "xlo", "xp1", "xhi"}, {"x0"},
                 {{"x0", {"x0"}}, {"xm1", {}}, {"xlo", {}}, {"xp1", {}}, {"xhi", {}}},
                 {"x0"},
                 {{"x0", "xm1"}, {"x0", "xp1"}, {"xm1", "xlo"}, {"xm1", "x0"},
                  {"xlo", "xlo"}, {"xlo", "xm1"}, {"xp1", "xhi"}, {"xp1", "x0"},
                  {"xhi", "xhi"}, {"xhi", "xp1"}});
}

TransitionSystem fig1_s(int depth) {
  if (depth < 2) throw Error("fig1_s: depth must be >= 2");
  std::vector<std::string> states;
  Labels labels;
  Edges edges;
  auto name = [&](int v) {
    if (v == 0) return std::string("x0");
    return (v < 0 ? "xm" : "xp") + num(v < 0 ? -v : v);
  };
  for (int v = -depth; v <= depth; ++v) {
    states.push_back(name(v));
    labels.push_back({name(v), v == 0 ? std::vector<std::string>{"x0"} : std::vector<std::string>{}});
    // Counter steps, clamped at the boundary by a self-loop.
    edges.push_back({name(v), name(v == -depth ? v : v - 1)});
    edges.push_back({name(v), name(v == depth ? v : v + 1)});
  }
  return make_ts(std::move(states), {"x0"}, labels, {"x0"}, edges);
}

TransitionSystem fig2_s() {
  return make_ts({"a0", "a1", "a2", "b"}, {"a", "b"},
                 {{"a0", {"a"}}, {"a1", {"a"}}, {"a2", {"a"}}, {"b", {"b"}}},
                 {"a0"},
                 {{"a0", "a1"}, {"a0", "a2"}, {"a1", "b"}, {"a2", "b"}, {"b", "b"}});
}

TransitionSystem gen_buttons(int n) {
  if (n < 0) throw Error("gen_buttons: n must be >= 0");
  std::vector<std::string> states{"s", "f"};
  std::vector<std::string> ap{"s", "f"};
  Labels labels{{"s", {"s"}}, {"f", {"f"}}};
  Edges edges{{"f", "f"}};
  if (n == 0) edges.push_back({"s", "f"});
  for (int i = 1; i <= n; ++i) {
    std::string a = "a" + num(i);
    ap.push_back(a);
    for (int h : {1, 2}) {
      std::string st = a + "_" + num(h);
      states.push_back(st);
      labels.push_back({st, {a}});
    }
    edges.push_back({"s", a + "_1"});
    edges.push_back({a + "_1", a + "_2"});
    edges.push_back({a + "_2", "f"});
  }
  return make_ts(std::move(states), std::move(ap), labels, {"s"}, edges);
}

CtlFormula button_formula(int i) {
  std::string a = "a" + num(i);
  return parse_ctl("EX (" + a + " & EX (" + a + " & AX f))");
}

TransitionSystem gen_switch(int paths, int groups) {
  if (paths < 2 || groups < 1) throw Error("gen_switch: need paths >= 2, groups >= 1");
  std::vector<std::string> states{"s", "f"};
  std::vector<std::string> ap{"s", "f", "b", "x"};
  Labels labels{{"s", {"s"}}, {"f", {"f"}}};
  Edges edges{{"f", "f"}};
  for (int k = 0; k < groups; ++k)
    for (int l = 0; l < paths; ++l) {
      std::string marker = "m" + num(k) + "_" + num(l);
      ap.push_back(marker);
      std::string base = "p" + num(k) + "_" + num(l);
      for (int h = 1; h <= 3; ++h) {
        states.push_back(base + "_" + num(h));
        labels.push_back({base + "_" + num(h), {"b", marker}});
      }
      states.push_back("x" + num(k) + "_" + num(l));
      labels.push_back({"x" + num(k) + "_" + num(l), {"x", marker}});
      edges.push_back({"s", base + "_1"});
      edges.push_back({base + "_1", base + "_2"});
      edges.push_back({base + "_2", base + "_3"});
      edges.push_back({base + "_3", "f"});
      edges.push_back({base + "_1", "x" + num(k) + "_" + num(l)});
      for (int l2 = 0; l2 < paths; ++l2)
        if (l2 != l)
          edges.push_back({"x" + num(k) + "_" + num(l), "p" + num(k) + "_" + num(l2) + "_1"});
    }
  return make_ts(std::move(states), std::move(ap), labels, {"s"}, edges);
}

CtlFormula switch_formula() {
  const std::string ph = "AX (b -> AX (b & AX f))";
  return parse_ctl("EX ((" + ph + ") & AX (x -> AX !(" + ph + ")))");
}

TransitionSystem gen_rswitch(int n, int m, int K) {
  if (n < 0 || m < 0 || K < 1) throw Error("gen_rswitch: need n,m >= 0 and K >= 1");
  std::vector<std::string> states{"s", "f"};
  std::vector<std::string> ap{"s", "f"};
  Labels labels{{"s", {"s"}}, {"f", {"f"}}};
  Edges edges{{"f", "f"}};
  if (n == 0 && m == 0) edges.push_back({"s", "f"});
  for (int i = 1; i <= n; ++i) {
    std::string a = "a" + num(i);
    ap.push_back(a);
    for (int h : {1, 2}) {
      states.push_back(a + "_" + num(h));
      labels.push_back({a + "_" + num(h), {a}});
    }
    edges.push_back({"s", a + "_1"});
    edges.push_back({a + "_1", a + "_2"});
    edges.push_back({a + "_2", "f"});
  }
  if (m > 0) {
    ap.push_back("t");
    ap.push_back("b");
  }
  for (int j = 1; j <= m; ++j) {
    ap.push_back("b" + num(j));
    for (int k = 0; k < K; ++k) {
      std::string tname = "t" + num(j) + "_" + num(k);
      ap.push_back(tname);
      states.push_back(tname);
      labels.push_back({tname, {"t", tname}});
      edges.push_back({"s", tname});
      edges.push_back(k + 1 < K ? std::pair{tname, "t" + num(j) + "_" + num(k + 1)}
                                : std::pair{tname, tname});
      std::string copy = "b" + num(j) + "_" + num(k);
      ap.push_back(copy);
      for (int h = 1; h <= 3; ++h) {
        std::string st = "c" + num(j) + "_" + num(k) + "_" + num(h);
        states.push_back(st);
        labels.push_back({st, {"b", "b" + num(j), copy}});
      }
      edges.push_back({tname, "c" + num(j) + "_" + num(k) + "_1"});
      edges.push_back({"c" + num(j) + "_" + num(k) + "_1", "c" + num(j) + "_" + num(k) + "_2"});
      edges.push_back({"c" + num(j) + "_" + num(k) + "_2", "c" + num(j) + "_" + num(k) + "_3"});
      edges.push_back({"c" + num(j) + "_" + num(k) + "_3", "f"});
    }
  }
  return make_ts(std::move(states), std::move(ap), labels, {"s"}, edges);
}

CtlFormula rswitch_button_b() { return parse_ctl("EX (t & EG (t & !EX EX f))"); }

CtlFormula rswitch_formula(int j) {
  std::string b = "b" + num(j);
  return parse_ctl("EX EX (" + b + " & !EX f & !EX (" + b + " & AX (" + b + " & AX f)))");
}

TransitionSystem gen_decision_chain(int n) {
  if (n < 1) throw Error("gen_decision_chain: n must be >= 1");
  std::vector<std::string> states{"s"};
  std::vector<std::string> ap{"s", "c", "f"};
  Labels labels{{"s", {"s"}}};
  Edges edges;
  for (int i = 0; i < n; ++i) {
    std::string a = "a" + num(i), b = "b" + num(i), c = "c" + num(i);
    ap.push_back(a);
    ap.push_back(b);
    states.push_back(a);
    states.push_back(b);
    states.push_back(c);
    labels.push_back({a, {a}});
    labels.push_back({b, {b}});
    labels.push_back({c, {"c"}});
    std::string from = i == 0 ? "s" : "c" + num(i - 1);
    edges.push_back({from, a});
    edges.push_back({from, b});
    edges.push_back({a, c});
    edges.push_back({b, c});
  }
  states.push_back("sink");
  labels.push_back({"sink", {"f"}});
  edges.push_back({"c" + num(n - 1), "sink"});
  edges.push_back({"sink", "sink"});
  return make_ts(std::move(states), std::move(ap), labels, {"s"}, edges);
}

CtlFormula lambda_formula(int i) { return parse_ctl("AG !a" + num(i)); }
CtlFormula delta_formula(int i) { return parse_ctl("AG !b" + num(i)); }

namespace {

GeneralFrame lattice_of(const TransitionSystem& seed, long long max_worlds) {
  EnumOptions opts;
  opts.max_worlds = max_worlds;
  auto result = enumerate_abstractions(seed, opts);
  if (!result.complete) throw Error("corpus lattice exceeds the world cap");
  return build_general_frame(std::move(result.worlds));
}

// Seed-partition view of a lattice world (worlds here carry exactly one
// provenance partition since no two distinct partitions of these gadgets
// yield isomorphic quotients).
const Partition& provenance(const GeneralFrame& g, int w) {
  if (g.worlds[w].partitions.empty()) throw InternalError("lattice world lacks provenance");
  return g.worlds[w].partitions.front();
}

bool same_block(const Partition& p, const std::vector<int>& seed_states) {
  int b = p.block_of[seed_states.front()];
  for (int s : seed_states)
    if (p.block_of[s] != b) return false;
  return true;
}

}  // namespace

ButtonLattice button_lattice(int n, RelationMode relation) {
  if (n > 4) throw Error("button_lattice: n capped at 4");
  ButtonLattice out;
  auto seed = gen_buttons(n);
  EnumOptions opts;
  opts.max_worlds = 1 << std::max(n, 1);
  auto result = enumerate_abstractions(seed, opts);
  if (!result.complete) throw InternalError("button lattice enumeration hit its own cap");
  BuildOptions build;
  build.relation = relation;
  out.frame = build_general_frame(std::move(result.worlds), build);
  out.bottom = out.frame.root_world();
  for (int i = 1; i <= n; ++i) out.buttons.push_back(button_formula(i));
  return out;
}

SwitchFrame switch_frame(int paths, int groups, long long max_worlds) {
  SwitchFrame out;
  auto seed = gen_switch(paths, groups);
  out.frame = lattice_of(seed, max_worlds);
  out.bottom = out.frame.root_world();
  out.sigma = switch_formula();

  // Seed indices of each path's three chain states.
  std::vector<std::vector<std::vector<int>>> path_states(groups);
  for (int k = 0; k < groups; ++k) {
    path_states[k].resize(paths);
    for (int l = 0; l < paths; ++l)
      for (int h = 1; h <= 3; ++h)
        path_states[k][l].push_back(seed.state_index("p" + num(k) + "_" + num(l) + "_" + num(h)));
  }
  auto fully_split = [&](const Partition& p, int k, int l) {
    const auto& st = path_states[k][l];
    return p.block_of[st[0]] != p.block_of[st[1]] && p.block_of[st[1]] != p.block_of[st[2]] &&
           p.block_of[st[0]] != p.block_of[st[2]];
  };
  out.budget_domain.assign(out.frame.num_worlds(), false);
  for (int w = 0; w < out.frame.num_worlds(); ++w) {
    const auto& p = provenance(out.frame, w);
    for (int k = 0; k < groups && !out.budget_domain[w]; ++k) {
      bool virgin = true;
      for (int l = 0; l < paths && virgin; ++l) virgin = same_block(p, path_states[k][l]);
      out.budget_domain[w] = virgin;
    }
  }
  // Worlds where the unrestricted switch pattern fails.
  auto truth = truth_table(out.frame, {out.sigma})[0];
  for (int d = 0; d < out.frame.num_worlds(); ++d) {
    bool on = false, off = false;
    for (int e = 0; e < out.frame.num_worlds(); ++e) {
      if (!out.frame.edge(d, e)) continue;
      (truth[e] ? on : off) = true;
    }
    if (!on || !off) out.breaking.push_back(d);
  }
  (void)fully_split;
  return out;
}

RswitchFrame rswitch_frame(int n, int m, int K, long long max_worlds) {
  RswitchFrame out;
  auto seed = gen_rswitch(n, m, K);
  out.frame = lattice_of(seed, max_worlds);
  out.bottom = out.frame.root_world();
  for (int i = 1; i <= n; ++i) out.buttons.push_back(button_formula(i));
  out.button_b = rswitch_button_b();
  for (int j = 1; j <= m; ++j) out.switches.push_back(rswitch_formula(j));

  std::vector<std::vector<std::vector<int>>> triples(m);
  for (int j = 1; j <= m; ++j) {
    triples[j - 1].resize(K);
    for (int k = 0; k < K; ++k)
      for (int h = 1; h <= 3; ++h)
        triples[j - 1][k].push_back(seed.state_index("c" + num(j) + "_" + num(k) + "_" + num(h)));
  }
  std::vector<CtlFormula> family = out.switches;
  family.push_back(out.button_b);
  auto truth = truth_table(out.frame, family);
  const auto& b = truth[m];
  out.budget_domain.assign(out.frame.num_worlds(), false);
  for (int w = 0; w < out.frame.num_worlds(); ++w) {
    if (b[w]) {
      out.budget_domain[w] = true;
      continue;
    }
    const auto& p = provenance(out.frame, w);
    bool ok = true;
    for (int j = 0; j < m && ok; ++j) {
      if (truth[j][w]) continue;  // family already on
      bool fresh = false;
      for (int k = 0; k + 1 < K && !fresh; ++k) fresh = same_block(p, triples[j][k]);
      ok = fresh;
    }
    out.budget_domain[w] = ok;
  }
  for (int d = 0; d < out.frame.num_worlds(); ++d) {
    if (b[d]) continue;
    bool fails = false;
    for (int j = 0; j < m && !fails; ++j) {
      bool on = false, off = false;
      for (int e = 0; e < out.frame.num_worlds(); ++e) {
        if (!out.frame.edge(d, e) || b[e]) continue;
        (truth[j][e] ? on : off) = true;
      }
      fails = !on || !off;
    }
    if (fails) out.breaking.push_back(d);
  }
  return out;
}

DecisionFrame pruned_subframe(int n) {
  if (n < 1 || n > 3) throw Error("pruned_subframe: n must be in 1..3");
  auto chain = gen_decision_chain(n);
  DecisionFrame out;
  std::vector<World> worlds;
  for (const auto& fn : fpf_functions(n)) {
    // fn[i]: -1 keep both, 0 prune a<i>, 1 prune b<i>.
    std::vector<std::string> states;
    Labels labels;
    Edges edges;
    std::vector<int> back_map;
    auto pred_of = [&](int i) { return i == 0 ? std::string("s") : "c" + num(i - 1); };
    std::vector<std::string> split;  // predecessors that get on/off copies
    std::vector<std::string> removed_target(n);
    for (int i = 0; i < n; ++i)
      if (fn[i] >= 0) {
        split.push_back(pred_of(i));
        removed_target[i] = (fn[i] == 0 ? "a" : "b") + num(i);
      }
    auto is_split = [&](const std::string& name) {
      return std::find(split.begin(), split.end(), name) != split.end();
    };
    auto copies = [&](const std::string& name) {
      return is_split(name) ? std::vector<std::string>{name + "_on", name + "_off"}
                            : std::vector<std::string>{name};
    };
    for (int s = 0; s < chain.num_states(); ++s)
      for (const auto& copy : copies(chain.states[s])) {
        states.push_back(copy);
        std::vector<std::string> lab;
        for (const auto& a : chain.label_names(s)) lab.push_back(a);
        labels.push_back({copy, lab});
        back_map.push_back(s);
      }
    for (const auto& [u, v] : chain.transitions) {
      const std::string un = chain.states[u], vn = chain.states[v];
      // Edges into a split predecessor go to its on-copy only; the off-copy
      // keeps the full edge set including the pruned target.
      std::string target = is_split(vn) ? vn + "_on" : vn;
      for (const auto& uc : copies(un)) {
        bool on_copy = uc.size() > un.size() && uc.substr(un.size()) == "_on";
        if (on_copy) {
          bool pruned = false;
          for (int i = 0; i < n; ++i)
            if (fn[i] >= 0 && pred_of(i) == un && removed_target[i] == vn) pruned = true;
          if (pruned) continue;
        }
        edges.push_back({uc, target});
      }
    }
    std::vector<std::string> initial{is_split("s") ? "s_on" : "s"};
    World w;
    std::string name = "r";
    for (int v : fn) name += v < 0 ? 'u' : (v == 0 ? 'a' : 'b');
    w.name = name;
    w.system = make_ts(std::move(states), chain.ap, labels, initial, edges);
    // The generator is wrong, not the input, if this ever fails.
    AbstractionWitness wit{w.system, chain, back_map};
    if (auto check = is_abstraction(wit); !check.ok)
      throw InternalError("pruned refinement fails is_abstraction (condition " +
                          std::to_string(check.condition) + "): " + check.detail);
    worlds.push_back(std::move(w));
  }
  out.frame = build_general_frame(std::move(worlds));
  out.root = out.frame.root_world();
  for (int i = 0; i < n; ++i) out.decisions.emplace_back(lambda_formula(i), delta_formula(i));
  return out;
}

TransitionSystem by_name(const std::string& name) {
  auto split_params = [](const std::string& s) {
    std::vector<int> params;
    std::size_t pos = s.find(':');
    while (pos != std::string::npos) {
      std::size_t next = s.find(',', pos + 1);
      std::string tok = s.substr(pos + 1, next == std::string::npos ? next : next - pos - 1);
      params.push_back(std::stoi(tok));
      pos = next;
    }
    return params;
  };
  std::string base = name.substr(0, name.find(':'));
  auto params = split_params(name);
  auto arg = [&](std::size_t i, int fallback) {
    return i < params.size() ? params[i] : fallback;
  };
  if (base == "fig1_t1") return fig1_t1();
  if (base == "fig1_t2") return fig1_t2();
  if (base == "fig1_s") return fig1_s(arg(0, 2));
  if (base == "fig2_s") return fig2_s();
  if (base == "buttons") return gen_buttons(arg(0, 2));
  if (base == "switch") return gen_switch(arg(0, 2), arg(1, 1));
  if (base == "rswitch") return gen_rswitch(arg(0, 0), arg(1, 1), arg(2, 2));
  if (base == "decision_chain") return gen_decision_chain(arg(0, 1));
  throw Error("unknown built-in system: " + name);
}

bool is_builtin(const std::string& name) {
  static const std::vector<std::string> bases{"fig1_t1", "fig1_t2", "fig1_s", "fig2_s",
                                              "buttons", "switch", "rswitch", "decision_chain"};
  std::string base = name.substr(0, name.find(':'));
  return std::find(bases.begin(), bases.end(), base) != bases.end();
}

}  // namespace corpus
}  // namespace absref
