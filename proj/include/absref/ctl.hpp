#ifndef ABSREF_CTL_HPP
#define ABSREF_CTL_HPP

#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace absref {

enum class CtlOp {
  True,
  False,
  Atom,
  Not,
  And,
  Or,
  Implies,
  ExistsNext,    // EX
  ForallNext,    // AX
  ExistsUntil,   // E[a U b]
  ForallUntil,   // A[a U b]
  ExistsFinally, // EF
  ForallFinally, // AF
  ExistsGlobally,// EG
  ForallGlobally // AG
};

/// Immutable CTL state formula. The core grammar is
///   Φ ::= true | atom | Φ & Φ | !Φ | EX Φ | AX Φ | E[Φ U Φ] | A[Φ U Φ]
/// and everything else normalizes into it; normalization is idempotent.
class CtlFormula {
public:
  CtlFormula() = default;

  static CtlFormula make_true();
  static CtlFormula make_false();
  static CtlFormula atom(std::string name);
  static CtlFormula negation(CtlFormula a);
  static CtlFormula conj(CtlFormula a, CtlFormula b);
  static CtlFormula disj(CtlFormula a, CtlFormula b);
  static CtlFormula implies(CtlFormula a, CtlFormula b);
  static CtlFormula unary(CtlOp op, CtlFormula a);
  static CtlFormula until(CtlOp op, CtlFormula a, CtlFormula b);

  bool valid_handle() const { return node_ != nullptr; }
  CtlOp op() const;
  const std::string& atom_name() const;
  CtlFormula left() const;
  CtlFormula right() const;

  bool operator==(const CtlFormula& other) const;
  bool operator!=(const CtlFormula& other) const { return !(*this == other); }

  std::string str() const;         // concrete syntax, reparses to an equal AST
  CtlFormula normalized() const;   // core form
  std::vector<std::string> atoms() const;  // sorted, unique
  int depth() const;               // max nesting of temporal operators

private:
  struct Node;
  explicit CtlFormula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// Parser for the concrete syntax: atoms are identifiers, literals
/// true/false, "!" > "&" > "|" > "->" (right-assoc), temporal prefixes
/// EX AX EF AF EG AG bind like "!", bracketed E[p U q] / A[p U q].
/// Throws ParseError with a character offset.
CtlFormula parse_ctl(std::string_view text);

}  // namespace absref

#endif
