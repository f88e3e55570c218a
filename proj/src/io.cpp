#include "absref/io.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

#include "absref/ctl_check.hpp"
#include "absref/error.hpp"

namespace absref {

using nlohmann::json;

namespace {

json parse_json(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw Error("malformed JSON input");
  return j;
}

void require_keys(const json& j, const std::set<std::string>& required,
                  const std::set<std::string>& optional = {}) {
  if (!j.is_object()) throw Error("expected a JSON object");
  for (const auto& [key, value] : j.items())
    if (!required.count(key) && !optional.count(key))
      throw Error("unknown key: " + key);
  for (const auto& key : required)
    if (!j.contains(key)) throw Error("missing key: " + key);
}

std::vector<std::string> string_array(const json& j, const std::string& what) {
  if (!j.is_array()) throw Error(what + " must be an array");
  std::vector<std::string> out;
  for (const auto& v : j) {
    if (!v.is_string()) throw Error(what + " entries must be strings");
    out.push_back(v.get<std::string>());
  }
  return out;
}

json ts_json(const TransitionSystem& ts) {
  json j;
  j["states"] = ts.states;
  j["initial"] = json::array();
  for (int s : ts.initial) j["initial"].push_back(ts.states[s]);
  j["ap"] = ts.ap;
  json labels = json::object();
  for (int s = 0; s < ts.num_states(); ++s) labels[ts.states[s]] = ts.label_names(s);
  j["labels"] = std::move(labels);
  json trans = json::array();
  for (const auto& [a, b] : ts.transitions) trans.push_back({ts.states[a], ts.states[b]});
  j["transitions"] = std::move(trans);
  return j;
}

TransitionSystem ts_of_json(const json& j) {
  require_keys(j, {"states", "initial", "ap", "labels", "transitions"});
  auto states = string_array(j["states"], "states");
  auto ap = string_array(j["ap"], "ap");
  auto initial = string_array(j["initial"], "initial");
  if (!j["labels"].is_object()) throw Error("labels must be an object");
  std::vector<std::pair<std::string, std::vector<std::string>>> labels;
  for (const auto& [state, props] : j["labels"].items())
    labels.push_back({state, string_array(props, "labels of " + state)});
  if (labels.size() != states.size()) throw Error("labels must cover every state exactly once");
  if (!j["transitions"].is_array()) throw Error("transitions must be an array");
  std::vector<std::pair<std::string, std::string>> transitions;
  for (const auto& t : j["transitions"]) {
    if (!t.is_array() || t.size() != 2 || !t[0].is_string() || !t[1].is_string())
      throw Error("each transition must be a pair of state names");
    transitions.push_back({t[0].get<std::string>(), t[1].get<std::string>()});
  }
  return make_ts(std::move(states), std::move(ap), labels, initial, transitions);
}

json frame_json(const KripkeFrame& f) {
  json j;
  j["worlds"] = f.worlds;
  json access = json::array();
  for (const auto& [a, b] : f.edges()) access.push_back({f.worlds[a], f.worlds[b]});
  j["access"] = std::move(access);
  return j;
}

KripkeFrame frame_of_json(const json& j) {
  require_keys(j, {"worlds", "access"});
  KripkeFrame f;
  f.worlds = string_array(j["worlds"], "worlds");
  {
    std::set<std::string> seen(f.worlds.begin(), f.worlds.end());
    if (seen.size() != f.worlds.size()) throw Error("duplicate world names");
  }
  f.access.resize(f.worlds.size());
  if (!j["access"].is_array()) throw Error("access must be an array");
  for (const auto& e : j["access"]) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_string() || !e[1].is_string())
      throw Error("each access entry must be a pair of world names");
    int a = f.world_index(e[0].get<std::string>());
    int b = f.world_index(e[1].get<std::string>());
    if (a < 0 || b < 0) throw Error("access references unknown world");
    f.access[a].push_back(b);
  }
  for (auto& row : f.access) {
    std::sort(row.begin(), row.end());
    row.erase(std::unique(row.begin(), row.end()), row.end());
  }
  return f;
}

}  // namespace

std::string ts_to_json(const TransitionSystem& ts) { return ts_json(ts).dump(2) + "\n"; }

TransitionSystem ts_from_json(const std::string& text) { return ts_of_json(parse_json(text)); }

std::string frame_to_json(const KripkeFrame& f) { return frame_json(f).dump(2) + "\n"; }

KripkeFrame frame_from_json(const std::string& text) { return frame_of_json(parse_json(text)); }

std::string bundle_to_json(const GeneralFrame& g) {
  json j;
  json worlds = json::array();
  for (const auto& w : g.worlds) {
    json jw;
    jw["id"] = w.name;
    jw["system"] = ts_json(w.system);
    if (!w.partitions.empty()) {
      json part = json::array();
      for (const auto& block : w.partitions.front().blocks) {
        json jb = json::array();
        for (int s : block) jb.push_back(s);
        part.push_back(std::move(jb));
      }
      jw["partition"] = std::move(part);
    }
    worlds.push_back(std::move(jw));
  }
  j["worlds"] = std::move(worlds);
  json access = json::array();
  for (int a = 0; a < g.num_worlds(); ++a)
    for (int b = 0; b < g.num_worlds(); ++b)
      if (g.access[a][b]) access.push_back({g.worlds[a].name, g.worlds[b].name});
  j["access"] = std::move(access);
  json blocks = json::array();
  for (const auto& block : g.blocks) {
    json jb = json::array();
    for (int w : block) jb.push_back(g.worlds[w].name);
    blocks.push_back(std::move(jb));
  }
  j["blocks"] = std::move(blocks);
  if (g.has_block_formulas()) {
    json bf = json::object();
    for (int b = 0; b < g.num_blocks(); ++b) bf[std::to_string(b)] = g.block_formulas[b].str();
    j["block_formulas"] = std::move(bf);
  }
  return j.dump(2) + "\n";
}

GeneralFrame bundle_from_json(const std::string& text) {
  json j = parse_json(text);
  require_keys(j, {"worlds", "access", "blocks"}, {"block_formulas"});
  GeneralFrame g;
  if (!j["worlds"].is_array()) throw Error("worlds must be an array");
  for (const auto& jw : j["worlds"]) {
    require_keys(jw, {"id", "system"}, {"partition"});
    World w;
    w.id = g.num_worlds();
    w.name = jw["id"].get<std::string>();
    w.system = ts_of_json(jw["system"]);
    if (jw.contains("partition")) {
      std::vector<int> block_of(w.system.num_states(), -1);
      // Blocks are given over seed-state indices; used by coarsen mode only.
      int id = 0;
      for (const auto& block : jw["partition"]) {
        for (const auto& s : block) {
          int idx = s.get<int>();
          if (idx < 0 || idx >= static_cast<int>(block_of.size()))
            throw Error("partition index out of range");
          block_of[idx] = id;
        }
        ++id;
      }
      for (int v : block_of)
        if (v < 0) throw Error("partition does not cover all states");
      w.partitions.push_back(Partition::from_block_of(block_of));
    }
    g.worlds.push_back(std::move(w));
  }
  const int n = g.num_worlds();
  g.access.assign(n, std::vector<bool>(n, false));
  for (const auto& e : j["access"]) {
    int a = g.world_by_name(e[0].get<std::string>());
    int b = g.world_by_name(e[1].get<std::string>());
    if (a < 0 || b < 0) throw Error("access references unknown world");
    g.access[a][b] = true;
  }
  g.block_of.assign(n, -1);
  for (const auto& jb : j["blocks"]) {
    std::vector<int> block;
    for (const auto& name : jb) {
      int w = g.world_by_name(name.get<std::string>());
      if (w < 0) throw Error("blocks reference unknown world");
      g.block_of[w] = static_cast<int>(g.blocks.size());
      block.push_back(w);
    }
    std::sort(block.begin(), block.end());
    g.blocks.push_back(std::move(block));
  }
  for (int v : g.block_of)
    if (v < 0) throw Error("blocks do not cover all worlds");
  if (j.contains("block_formulas")) {
    g.block_formulas.resize(g.num_blocks());
    for (const auto& [key, value] : j["block_formulas"].items()) {
      int b = std::stoi(key);
      if (b < 0 || b >= g.num_blocks()) throw Error("block formula index out of range");
      g.block_formulas[b] = parse_ctl(value.get<std::string>());
    }
    for (const auto& f : g.block_formulas)
      if (!f.valid_handle()) throw Error("block_formulas must cover every block");
  }
  return g;
}

std::string labeling_to_json(const Labeling& l) {
  json j;
  j["frame"] = frame_json(l.frame);
  j["root"] = l.frame.worlds[l.root];
  json phi = json::object();
  for (int v = 0; v < l.frame.num_worlds(); ++v) phi[l.frame.worlds[v]] = l.phi[v].str();
  j["phi"] = std::move(phi);
  return j.dump(2) + "\n";
}

Labeling labeling_from_json(const std::string& text) {
  json j = parse_json(text);
  require_keys(j, {"frame", "root", "phi"});
  Labeling l;
  l.frame = frame_of_json(j["frame"]);
  l.root = l.frame.world_index(j["root"].get<std::string>());
  if (l.root < 0) throw Error("root is not a frame node");
  l.phi.resize(l.frame.worlds.size());
  std::vector<bool> seen(l.frame.worlds.size(), false);
  for (const auto& [node, formula] : j["phi"].items()) {
    int v = l.frame.world_index(node);
    if (v < 0) throw Error("phi references unknown node: " + node);
    l.phi[v] = parse_ctl(formula.get<std::string>());
    seen[v] = true;
  }
  for (std::size_t v = 0; v < seen.size(); ++v)
    if (!seen[v]) throw Error("phi missing for node: " + l.frame.worlds[v]);
  return l;
}

std::string countermodel_to_json(const FiniteCountermodel& cm) {
  json j;
  j["frame"] = frame_json(cm.frame);
  json val = json::object();
  for (const auto& [prop, set] : cm.valuation) {
    json arr = json::array();
    for (int w = 0; w < cm.frame.num_worlds(); ++w)
      if (set[w]) arr.push_back(cm.frame.worlds[w]);
    val[prop] = std::move(arr);
  }
  j["valuation"] = std::move(val);
  j["root"] = cm.frame.worlds[cm.root];
  j["formula"] = cm.formula.str();
  return j.dump(2) + "\n";
}

FiniteCountermodel countermodel_from_json(const std::string& text) {
  json j = parse_json(text);
  require_keys(j, {"frame", "valuation", "root", "formula"});
  FiniteCountermodel cm;
  cm.frame = frame_of_json(j["frame"]);
  cm.root = cm.frame.world_index(j["root"].get<std::string>());
  if (cm.root < 0) throw Error("root is not a frame world");
  cm.formula = parse_modal(j["formula"].get<std::string>());
  for (const auto& [prop, arr] : j["valuation"].items()) {
    std::vector<bool> set(cm.frame.num_worlds(), false);
    for (const auto& name : string_array(arr, "valuation of " + prop)) {
      int w = cm.frame.world_index(name);
      if (w < 0) throw Error("valuation references unknown world: " + name);
      set[w] = true;
    }
    cm.valuation.emplace(prop, std::move(set));
  }
  return cm;
}

Partition partition_from_json(const TransitionSystem& ts, const std::string& text) {
  json j = parse_json(text);
  require_keys(j, {"blocks"});
  std::vector<int> block_of(ts.num_states(), -1);
  int id = 0;
  for (const auto& block : j["blocks"]) {
    for (const auto& name : string_array(block, "block")) {
      int s = ts.state_index(name);
      if (s < 0) throw Error("partition references unknown state: " + name);
      if (block_of[s] >= 0) throw Error("state in two blocks: " + name);
      block_of[s] = id;
    }
    ++id;
  }
  for (int s = 0; s < ts.num_states(); ++s)
    if (block_of[s] < 0) throw Error("partition misses state: " + ts.states[s]);
  return Partition::from_block_of(std::move(block_of));
}

namespace {

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

std::string label_suffix(const TransitionSystem& ts, int s) {
  std::string props = "{";
  bool first = true;
  for (const auto& a : ts.label_names(s)) {
    if (!first) props += ",";
    props += a;
    first = false;
  }
  return props + "}";
}

}  // namespace

std::string ts_to_dot(const TransitionSystem& ts) {
  std::ostringstream out;
  out << "digraph ts {\n";
  for (int s = 0; s < ts.num_states(); ++s)
    out << "  n" << s << " [label=\"" << dot_escape(ts.states[s]) << "\\n"
        << dot_escape(label_suffix(ts, s)) << "\"];\n";
  for (std::size_t i = 0; i < ts.initial.size(); ++i) {
    out << "  init" << i << " [shape=point, style=invis];\n";
    out << "  init" << i << " -> n" << ts.initial[i] << ";\n";
  }
  for (const auto& [a, b] : ts.transitions) out << "  n" << a << " -> n" << b << ";\n";
  out << "}\n";
  return out.str();
}

std::string bundle_to_dot(const GeneralFrame& g) {
  static const char* palette[] = {"lightblue", "lightyellow", "lightpink", "lightgreen",
                                  "lightgrey", "orange", "cyan", "violet"};
  std::ostringstream out;
  out << "digraph frame {\n  node [shape=box, style=filled];\n";
  for (int w = 0; w < g.num_worlds(); ++w)
    out << "  w" << w << " [label=\"" << dot_escape(g.worlds[w].name) << "\", fillcolor=\""
        << palette[g.block_of[w] % 8] << "\"];\n";
  // Hasse-style rendering: reflexive edges dropped, transitively implied
  // edges suppressed.
  for (int a = 0; a < g.num_worlds(); ++a)
    for (int b = 0; b < g.num_worlds(); ++b) {
      if (a == b || !g.access[a][b]) continue;
      bool implied = false;
      for (int c = 0; c < g.num_worlds() && !implied; ++c)
        implied = c != a && c != b && g.access[a][c] && g.access[c][b];
      if (!implied) out << "  w" << a << " -> w" << b << ";\n";
    }
  out << "}\n";
  return out.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write file: " + path);
  out << content;
}

}  // namespace absref
