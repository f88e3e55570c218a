#ifndef ABSREF_IO_HPP
#define ABSREF_IO_HPP

#include <string>

#include "absref/general_frame.hpp"
#include "absref/labeling.hpp"
#include "absref/modal.hpp"
#include "absref/transition_system.hpp"

namespace absref {

// Transition-system format: {"states": [...], "initial": [...], "ap": [...],
// "labels": {state: [...]}, "transitions": [[from, to], ...]}.
// Unknown keys are rejected.
std::string ts_to_json(const TransitionSystem& ts);
TransitionSystem ts_from_json(const std::string& text);

// Plain frame format: {"worlds": [...], "access": [[a, b], ...]}.
std::string frame_to_json(const KripkeFrame& f);
KripkeFrame frame_from_json(const std::string& text);

// Frame bundle: worlds with embedded systems and optional partitions,
// access pairs, CTL-equivalence blocks, optional block formulas.
std::string bundle_to_json(const GeneralFrame& g);
GeneralFrame bundle_from_json(const std::string& text);

// Labeling file: {"frame": ..., "root": ..., "phi": {node: ctl}}.
std::string labeling_to_json(const Labeling& l);
Labeling labeling_from_json(const std::string& text);

// Countermodel file: frame + {"valuation": {prop: [nodes]}, "root", "formula"}.
std::string countermodel_to_json(const FiniteCountermodel& cm);
FiniteCountermodel countermodel_from_json(const std::string& text);

// Partition file: {"blocks": [[state names], ...]} over a given system.
Partition partition_from_json(const TransitionSystem& ts, const std::string& text);

// DOT exports. Initial states get an incoming edge from an invisible point;
// frame export suppresses reflexive edges and transitively implied edges
// (rendering only) and colors worlds by block.
std::string ts_to_dot(const TransitionSystem& ts);
std::string bundle_to_dot(const GeneralFrame& g);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace absref

#endif
