#include "absref/ctl.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "absref/error.hpp"

namespace absref {

struct CtlFormula::Node {
  CtlOp op;
  std::string atom;
  std::shared_ptr<const Node> a, b;
};

CtlFormula CtlFormula::make_true() { return CtlFormula(std::make_shared<Node>(Node{CtlOp::True, {}, nullptr, nullptr})); }
CtlFormula CtlFormula::make_false() { return CtlFormula(std::make_shared<Node>(Node{CtlOp::False, {}, nullptr, nullptr})); }
CtlFormula CtlFormula::atom(std::string name) {
  return CtlFormula(std::make_shared<Node>(Node{CtlOp::Atom, std::move(name), nullptr, nullptr}));
}
CtlFormula CtlFormula::negation(CtlFormula a) {
  return CtlFormula(std::make_shared<Node>(Node{CtlOp::Not, {}, std::move(a.node_), nullptr}));
}
CtlFormula CtlFormula::conj(CtlFormula a, CtlFormula b) {
  return CtlFormula(std::make_shared<Node>(Node{CtlOp::And, {}, std::move(a.node_), std::move(b.node_)}));
}
CtlFormula CtlFormula::disj(CtlFormula a, CtlFormula b) {
  return CtlFormula(std::make_shared<Node>(Node{CtlOp::Or, {}, std::move(a.node_), std::move(b.node_)}));
}
CtlFormula CtlFormula::implies(CtlFormula a, CtlFormula b) {
  return CtlFormula(std::make_shared<Node>(Node{CtlOp::Implies, {}, std::move(a.node_), std::move(b.node_)}));
}
CtlFormula CtlFormula::unary(CtlOp op, CtlFormula a) {
  return CtlFormula(std::make_shared<Node>(Node{op, {}, std::move(a.node_), nullptr}));
}
CtlFormula CtlFormula::until(CtlOp op, CtlFormula a, CtlFormula b) {
  return CtlFormula(std::make_shared<Node>(Node{op, {}, std::move(a.node_), std::move(b.node_)}));
}

CtlOp CtlFormula::op() const { return node_->op; }
const std::string& CtlFormula::atom_name() const { return node_->atom; }
CtlFormula CtlFormula::left() const { return CtlFormula(node_->a); }
CtlFormula CtlFormula::right() const { return CtlFormula(node_->b); }

bool CtlFormula::operator==(const CtlFormula& other) const {
  if (node_ == other.node_) return true;
  if (!node_ || !other.node_) return false;
  if (node_->op != other.node_->op || node_->atom != other.node_->atom) return false;
  if ((node_->a != nullptr) != (other.node_->a != nullptr)) return false;
  if ((node_->b != nullptr) != (other.node_->b != nullptr)) return false;
  if (node_->a && !(left() == other.left())) return false;
  if (node_->b && !(right() == other.right())) return false;
  return true;
}

namespace {

// Precedence for printing: -> lowest, then |, &, unary; 4 = primary.
int precedence(CtlOp op) {
  switch (op) {
    case CtlOp::Implies: return 1;
    case CtlOp::Or: return 2;
    case CtlOp::And: return 3;
    case CtlOp::Not:
    case CtlOp::ExistsNext:
    case CtlOp::ForallNext:
    case CtlOp::ExistsFinally:
    case CtlOp::ForallFinally:
    case CtlOp::ExistsGlobally:
    case CtlOp::ForallGlobally: return 4;
    default: return 5;
  }
}

const char* unary_name(CtlOp op) {
  switch (op) {
    case CtlOp::Not: return "!";
    case CtlOp::ExistsNext: return "EX ";
    case CtlOp::ForallNext: return "AX ";
    case CtlOp::ExistsFinally: return "EF ";
    case CtlOp::ForallFinally: return "AF ";
    case CtlOp::ExistsGlobally: return "EG ";
    case CtlOp::ForallGlobally: return "AG ";
    default: return "";
  }
}

void print(const CtlFormula& f, int parent_prec, std::string& out) {
  int prec = precedence(f.op());
  bool parens = prec < parent_prec;
  if (parens) out += '(';
  switch (f.op()) {
    case CtlOp::True: out += "true"; break;
    case CtlOp::False: out += "false"; break;
    case CtlOp::Atom: out += f.atom_name(); break;
    case CtlOp::Not:
    case CtlOp::ExistsNext:
    case CtlOp::ForallNext:
    case CtlOp::ExistsFinally:
    case CtlOp::ForallFinally:
    case CtlOp::ExistsGlobally:
    case CtlOp::ForallGlobally:
      out += unary_name(f.op());
      print(f.left(), prec, out);
      break;
    case CtlOp::And:
      print(f.left(), prec, out);
      out += " & ";
      print(f.right(), prec + 1, out);
      break;
    case CtlOp::Or:
      print(f.left(), prec, out);
      out += " | ";
      print(f.right(), prec + 1, out);
      break;
    case CtlOp::Implies:
      print(f.left(), prec + 1, out);  // right-associative
      out += " -> ";
      print(f.right(), prec, out);
      break;
    case CtlOp::ExistsUntil:
    case CtlOp::ForallUntil:
      out += f.op() == CtlOp::ExistsUntil ? "E[" : "A[";
      print(f.left(), 0, out);
      out += " U ";
      print(f.right(), 0, out);
      out += ']';
      break;
  }
  if (parens) out += ')';
}

}  // namespace

std::string CtlFormula::str() const {
  std::string out;
  print(*this, 0, out);
  return out;
}

CtlFormula CtlFormula::normalized() const {
  auto t = make_true;
  switch (op()) {
    case CtlOp::True:
    case CtlOp::Atom:
      return *this;
    case CtlOp::False:
      return negation(t());
    case CtlOp::Not: {
      return negation(left().normalized());
    }
    case CtlOp::And:
      return conj(left().normalized(), right().normalized());
    case CtlOp::Or:
      return negation(conj(negation(left().normalized()), negation(right().normalized())));
    case CtlOp::Implies:
      return negation(conj(left().normalized(), negation(right().normalized())));
    case CtlOp::ExistsNext:
    case CtlOp::ForallNext:
      return unary(op(), left().normalized());
    case CtlOp::ExistsUntil:
    case CtlOp::ForallUntil:
      return until(op(), left().normalized(), right().normalized());
    case CtlOp::ExistsFinally:
      return until(CtlOp::ExistsUntil, t(), left().normalized());
    case CtlOp::ForallFinally:
      return until(CtlOp::ForallUntil, t(), left().normalized());
    case CtlOp::ExistsGlobally:  // EG f = !AF !f
      return negation(until(CtlOp::ForallUntil, t(), negation(left().normalized())));
    case CtlOp::ForallGlobally:  // AG f = !EF !f
      return negation(until(CtlOp::ExistsUntil, t(), negation(left().normalized())));
  }
  throw InternalError("ctl normalize: unhandled op");
}

std::vector<std::string> CtlFormula::atoms() const {
  std::set<std::string> acc;
  std::vector<CtlFormula> stack{*this};
  while (!stack.empty()) {
    CtlFormula f = stack.back();
    stack.pop_back();
    if (f.op() == CtlOp::Atom) acc.insert(f.atom_name());
    if (f.node_->a) stack.push_back(f.left());
    if (f.node_->b) stack.push_back(f.right());
  }
  return {acc.begin(), acc.end()};
}

int CtlFormula::depth() const {
  int sub = 0;
  if (node_->a) sub = std::max(sub, left().depth());
  if (node_->b) sub = std::max(sub, right().depth());
  switch (op()) {
    case CtlOp::ExistsNext:
    case CtlOp::ForallNext:
    case CtlOp::ExistsUntil:
    case CtlOp::ForallUntil:
    case CtlOp::ExistsFinally:
    case CtlOp::ForallFinally:
    case CtlOp::ExistsGlobally:
    case CtlOp::ForallGlobally:
      return sub + 1;
    default:
      return sub;
  }
}

namespace {

class CtlParser {
public:
  explicit CtlParser(std::string_view text) : text_(text) {}

  CtlFormula parse() {
    CtlFormula f = implication();
    skip_ws();
    if (pos_ != text_.size()) throw ParseError(pos_, "unexpected trailing input");
    return f;
  }

private:
  std::string_view text_;
  std::size_t pos_ = 0;

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  bool peek_word(std::string_view w) {
    skip_ws();
    if (text_.size() - pos_ < w.size() || text_.substr(pos_, w.size()) != w) return false;
    std::size_t after = pos_ + w.size();
    if (after < text_.size()) {
      char c = text_[after];
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') return false;
    }
    return true;
  }

  bool eat_word(std::string_view w) {
    if (!peek_word(w)) return false;
    pos_ += w.size();
    return true;
  }

  CtlFormula implication() {
    CtlFormula lhs = disjunction();
    skip_ws();
    if (pos_ + 1 < text_.size() && text_[pos_] == '-' && text_[pos_ + 1] == '>') {
      pos_ += 2;
      return CtlFormula::implies(std::move(lhs), implication());
    }
    return lhs;
  }

  CtlFormula disjunction() {
    CtlFormula lhs = conjunction();
    while (eat('|')) lhs = CtlFormula::disj(std::move(lhs), conjunction());
    return lhs;
  }

  CtlFormula conjunction() {
    CtlFormula lhs = unary();
    while (true) {
      skip_ws();
      if (pos_ < text_.size() && text_[pos_] == '&') {
        ++pos_;
        lhs = CtlFormula::conj(std::move(lhs), unary());
      } else {
        return lhs;
      }
    }
  }

  CtlFormula until_body(CtlOp op) {
    if (!eat('[')) throw ParseError(pos_, "expected '[' after path quantifier");
    CtlFormula a = implication();
    if (!eat_word("U")) throw ParseError(pos_, "expected 'U' in until");
    CtlFormula b = implication();
    if (!eat(']')) throw ParseError(pos_, "expected ']' closing until");
    return CtlFormula::until(op, std::move(a), std::move(b));
  }

  CtlFormula unary() {
    skip_ws();
    if (pos_ >= text_.size()) throw ParseError(pos_, "unexpected end of formula");
    if (text_[pos_] == '!') {
      ++pos_;
      return CtlFormula::negation(unary());
    }
    if (eat_word("EX")) return CtlFormula::unary(CtlOp::ExistsNext, unary());
    if (eat_word("AX")) return CtlFormula::unary(CtlOp::ForallNext, unary());
    if (eat_word("EF")) return CtlFormula::unary(CtlOp::ExistsFinally, unary());
    if (eat_word("AF")) return CtlFormula::unary(CtlOp::ForallFinally, unary());
    if (eat_word("EG")) return CtlFormula::unary(CtlOp::ExistsGlobally, unary());
    if (eat_word("AG")) return CtlFormula::unary(CtlOp::ForallGlobally, unary());
    skip_ws();
    if (text_[pos_] == 'E' && pos_ + 1 < text_.size() && next_is_bracket()) {
      ++pos_;
      return until_body(CtlOp::ExistsUntil);
    }
    if (text_[pos_] == 'A' && pos_ + 1 < text_.size() && next_is_bracket()) {
      ++pos_;
      return until_body(CtlOp::ForallUntil);
    }
    return primary();
  }

  bool next_is_bracket() {
    std::size_t p = pos_ + 1;
    while (p < text_.size() && std::isspace(static_cast<unsigned char>(text_[p]))) ++p;
    return p < text_.size() && text_[p] == '[';
  }

  CtlFormula primary() {
    skip_ws();
    if (pos_ >= text_.size()) throw ParseError(pos_, "unexpected end of formula");
    if (eat('(')) {
      CtlFormula f = implication();
      if (!eat(')')) throw ParseError(pos_, "expected ')'");
      return f;
    }
    if (eat_word("true")) return CtlFormula::make_true();
    if (eat_word("false")) return CtlFormula::make_false();
    char c = text_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      std::string name(text_.substr(start, pos_ - start));
      static const std::set<std::string> reserved{"EX", "AX", "EF", "AF", "EG", "AG",
                                                  "E", "A", "U", "true", "false"};
      if (reserved.count(name)) throw ParseError(start, "reserved word used as atom: " + name);
      return CtlFormula::atom(std::move(name));
    }
    throw ParseError(pos_, std::string("unexpected character '") + c + "'");
  }
};

}  // namespace

CtlFormula parse_ctl(std::string_view text) { return CtlParser(text).parse(); }

}  // namespace absref
