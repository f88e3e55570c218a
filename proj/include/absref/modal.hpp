#ifndef ABSREF_MODAL_HPP
#define ABSREF_MODAL_HPP

#include <array>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace absref {

enum class ModalOp { True, False, Prop, Not, And, Or, Implies, Diamond, Box };

/// Immutable modal formula; Box is an abbreviation and normalizes to !<>!.
class ModalFormula {
public:
  ModalFormula() = default;

  static ModalFormula make_true();
  static ModalFormula make_false();
  static ModalFormula prop(std::string name);
  static ModalFormula negation(ModalFormula a);
  static ModalFormula conj(ModalFormula a, ModalFormula b);
  static ModalFormula disj(ModalFormula a, ModalFormula b);
  static ModalFormula implies(ModalFormula a, ModalFormula b);
  static ModalFormula diamond(ModalFormula a);
  static ModalFormula box(ModalFormula a);

  bool valid_handle() const { return node_ != nullptr; }
  ModalOp op() const;
  const std::string& prop_name() const;
  ModalFormula left() const;
  ModalFormula right() const;

  bool operator==(const ModalFormula& other) const;
  bool operator!=(const ModalFormula& other) const { return !(*this == other); }

  std::string str() const;
  ModalFormula normalized() const;
  std::vector<std::string> props() const;  // sorted, unique

private:
  struct Node;
  explicit ModalFormula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// Grammar: props are identifiers, "<>" diamond and "[]" box bind like "!",
/// booleans as in the CTL syntax. Throws ParseError.
ModalFormula parse_modal(std::string_view text);

// The named axioms: T, 4, .2, .1, K, Grz.
ModalFormula axiom_t();
ModalFormula axiom_4();
ModalFormula axiom_dot2();
ModalFormula axiom_dot1();
ModalFormula axiom_k();
ModalFormula axiom_grz();

struct KripkeFrame {
  std::vector<std::string> worlds;
  std::vector<std::vector<int>> access;  // per world, sorted successor list

  int num_worlds() const { return static_cast<int>(worlds.size()); }
  bool edge(int a, int b) const;
  int world_index(const std::string& name) const;  // -1 if unknown
  std::vector<std::pair<int, int>> edges() const;
};

using Valuation = std::map<std::string, std::vector<bool>>;

/// Standard Kripke semantics. Throws Error on props missing from v.
bool eval_modal(const KripkeFrame& f, const Valuation& v, int world,
                const ModalFormula& formula);

enum class Verdict { Valid, Falsified, Inconclusive };

struct FrameCountermodel {
  Valuation valuation;
  int world = -1;
};

struct FrameValidity {
  Verdict verdict = Verdict::Valid;
  std::optional<FrameCountermodel> countermodel;
  unsigned long long required = 0;  // enumeration size (when known)
};

inline constexpr unsigned long long kDefaultValuationBudget = 1ull << 20;

/// Exhaustive quantification over all valuations of the formula's props and
/// all worlds; per-prop valuations are enumerated smallest-first. Budget is
/// the total number of valuation tuples allowed.
FrameValidity valid_on_frame(const KripkeFrame& f, const ModalFormula& formula,
                             unsigned long long budget = kDefaultValuationBudget);

struct FrameReport {
  bool reflexive = true, transitive = true, directed = true,
       has_greatest = false, antisymmetric = true;
  std::optional<int> reflexive_counter;                 // w with not Rww
  std::optional<std::array<int, 3>> transitive_counter; // Rwv,Rvu, not Rwu
  std::optional<std::array<int, 3>> directed_counter;   // Rwv,Rwu, no common z
  std::optional<std::array<int, 2>> antisym_counter;    // w != v, Rwv and Rvw
  int greatest = -1;                                    // m with forall w Rwm
};

FrameReport frame_properties(const KripkeFrame& f);

}  // namespace absref

#endif
