#include "absref/modal.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "absref/error.hpp"

namespace absref {

struct ModalFormula::Node {
  ModalOp op;
  std::string prop;
  std::shared_ptr<const Node> a, b;
};

ModalFormula ModalFormula::make_true() { return ModalFormula(std::make_shared<Node>(Node{ModalOp::True, {}, nullptr, nullptr})); }
ModalFormula ModalFormula::make_false() { return ModalFormula(std::make_shared<Node>(Node{ModalOp::False, {}, nullptr, nullptr})); }
ModalFormula ModalFormula::prop(std::string name) {
  return ModalFormula(std::make_shared<Node>(Node{ModalOp::Prop, std::move(name), nullptr, nullptr}));
}
ModalFormula ModalFormula::negation(ModalFormula a) {
  return ModalFormula(std::make_shared<Node>(Node{ModalOp::Not, {}, std::move(a.node_), nullptr}));
}
ModalFormula ModalFormula::conj(ModalFormula a, ModalFormula b) {
  return ModalFormula(std::make_shared<Node>(Node{ModalOp::And, {}, std::move(a.node_), std::move(b.node_)}));
}
ModalFormula ModalFormula::disj(ModalFormula a, ModalFormula b) {
  return ModalFormula(std::make_shared<Node>(Node{ModalOp::Or, {}, std::move(a.node_), std::move(b.node_)}));
}
ModalFormula ModalFormula::implies(ModalFormula a, ModalFormula b) {
  return ModalFormula(std::make_shared<Node>(Node{ModalOp::Implies, {}, std::move(a.node_), std::move(b.node_)}));
}
ModalFormula ModalFormula::diamond(ModalFormula a) {
  return ModalFormula(std::make_shared<Node>(Node{ModalOp::Diamond, {}, std::move(a.node_), nullptr}));
}
ModalFormula ModalFormula::box(ModalFormula a) {
  return ModalFormula(std::make_shared<Node>(Node{ModalOp::Box, {}, std::move(a.node_), nullptr}));
}

ModalOp ModalFormula::op() const { return node_->op; }
const std::string& ModalFormula::prop_name() const { return node_->prop; }
ModalFormula ModalFormula::left() const { return ModalFormula(node_->a); }
ModalFormula ModalFormula::right() const { return ModalFormula(node_->b); }

bool ModalFormula::operator==(const ModalFormula& other) const {
  if (node_ == other.node_) return true;
  if (!node_ || !other.node_) return false;
  if (node_->op != other.node_->op || node_->prop != other.node_->prop) return false;
  if ((node_->a != nullptr) != (other.node_->a != nullptr)) return false;
  if ((node_->b != nullptr) != (other.node_->b != nullptr)) return false;
  if (node_->a && !(left() == other.left())) return false;
  if (node_->b && !(right() == other.right())) return false;
  return true;
}

namespace {

int precedence(ModalOp op) {
  switch (op) {
    case ModalOp::Implies: return 1;
    case ModalOp::Or: return 2;
    case ModalOp::And: return 3;
    case ModalOp::Not:
    case ModalOp::Diamond:
    case ModalOp::Box: return 4;
    default: return 5;
  }
}

void print(const ModalFormula& f, int parent_prec, std::string& out) {
  int prec = precedence(f.op());
  bool parens = prec < parent_prec;
  if (parens) out += '(';
  switch (f.op()) {
    case ModalOp::True: out += "true"; break;
    case ModalOp::False: out += "false"; break;
    case ModalOp::Prop: out += f.prop_name(); break;
    case ModalOp::Not:
      out += '!';
      print(f.left(), prec, out);
      break;
    case ModalOp::Diamond:
      out += "<>";
      print(f.left(), prec, out);
      break;
    case ModalOp::Box:
      out += "[]";
      print(f.left(), prec, out);
      break;
    case ModalOp::And:
      print(f.left(), prec, out);
      out += " & ";
      print(f.right(), prec + 1, out);
      break;
    case ModalOp::Or:
      print(f.left(), prec, out);
      out += " | ";
      print(f.right(), prec + 1, out);
      break;
    case ModalOp::Implies:
      print(f.left(), prec + 1, out);
      out += " -> ";
      print(f.right(), prec, out);
      break;
  }
  if (parens) out += ')';
}

}  // namespace

std::string ModalFormula::str() const {
  std::string out;
  print(*this, 0, out);
  return out;
}

ModalFormula ModalFormula::normalized() const {
  switch (op()) {
    case ModalOp::True:
    case ModalOp::Prop:
      return *this;
    case ModalOp::False:
      return negation(make_true());
    case ModalOp::Not:
      return negation(left().normalized());
    case ModalOp::And:
      return conj(left().normalized(), right().normalized());
    case ModalOp::Or:
      return negation(conj(negation(left().normalized()), negation(right().normalized())));
    case ModalOp::Implies:
      return negation(conj(left().normalized(), negation(right().normalized())));
    case ModalOp::Diamond:
      return diamond(left().normalized());
    case ModalOp::Box:
      return negation(diamond(negation(left().normalized())));
  }
  throw InternalError("modal normalize: unhandled op");
}

std::vector<std::string> ModalFormula::props() const {
  std::set<std::string> acc;
  std::vector<ModalFormula> stack{*this};
  while (!stack.empty()) {
    ModalFormula f = stack.back();
    stack.pop_back();
    if (f.op() == ModalOp::Prop) acc.insert(f.prop_name());
    if (f.node_->a) stack.push_back(f.left());
    if (f.node_->b) stack.push_back(f.right());
  }
  return {acc.begin(), acc.end()};
}

namespace {

class ModalParser {
public:
  explicit ModalParser(std::string_view text) : text_(text) {}

  ModalFormula parse() {
    ModalFormula f = implication();
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

  bool eat2(char a, char b) {
    skip_ws();
    if (pos_ + 1 < text_.size() && text_[pos_] == a && text_[pos_ + 1] == b) {
      pos_ += 2;
      return true;
    }
    return false;
  }

  ModalFormula implication() {
    ModalFormula lhs = disjunction();
    if (eat2('-', '>')) return ModalFormula::implies(std::move(lhs), implication());
    return lhs;
  }

  ModalFormula disjunction() {
    ModalFormula lhs = conjunction();
    for (;;) {
      skip_ws();
      if (pos_ < text_.size() && text_[pos_] == '|') {
        ++pos_;
        lhs = ModalFormula::disj(std::move(lhs), conjunction());
      } else {
        return lhs;
      }
    }
  }

  ModalFormula conjunction() {
    ModalFormula lhs = unary();
    for (;;) {
      skip_ws();
      if (pos_ < text_.size() && text_[pos_] == '&') {
        ++pos_;
        lhs = ModalFormula::conj(std::move(lhs), unary());
      } else {
        return lhs;
      }
    }
  }

  ModalFormula unary() {
    skip_ws();
    if (pos_ >= text_.size()) throw ParseError(pos_, "unexpected end of formula");
    if (text_[pos_] == '!') {
      ++pos_;
      return ModalFormula::negation(unary());
    }
    if (eat2('<', '>')) return ModalFormula::diamond(unary());
    if (eat2('[', ']')) return ModalFormula::box(unary());
    return primary();
  }

  ModalFormula primary() {
    skip_ws();
    if (pos_ >= text_.size()) throw ParseError(pos_, "unexpected end of formula");
    if (text_[pos_] == '(') {
      ++pos_;
      ModalFormula f = implication();
      skip_ws();
      if (pos_ >= text_.size() || text_[pos_] != ')') throw ParseError(pos_, "expected ')'");
      ++pos_;
      return f;
    }
    char c = text_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      std::string name(text_.substr(start, pos_ - start));
      if (name == "true") return ModalFormula::make_true();
      if (name == "false") return ModalFormula::make_false();
      return ModalFormula::prop(std::move(name));
    }
    throw ParseError(pos_, std::string("unexpected character '") + c + "'");
  }
};

ModalFormula parse_axiom(const char* text) { return parse_modal(text); }

}  // namespace

ModalFormula parse_modal(std::string_view text) { return ModalParser(text).parse(); }

ModalFormula axiom_t() { return parse_axiom("p -> <>p"); }
ModalFormula axiom_4() { return parse_axiom("<><>p -> <>p"); }
ModalFormula axiom_dot2() { return parse_axiom("<>[]p -> []<>p"); }
ModalFormula axiom_dot1() { return parse_axiom("[]<>p -> <>[]p"); }
ModalFormula axiom_k() { return parse_axiom("[](p -> q) -> ([]p -> []q)"); }
ModalFormula axiom_grz() { return parse_axiom("[]([](p -> []p) -> p) -> p"); }

bool KripkeFrame::edge(int a, int b) const {
  return std::binary_search(access[a].begin(), access[a].end(), b);
}

int KripkeFrame::world_index(const std::string& name) const {
  for (int i = 0; i < num_worlds(); ++i)
    if (worlds[i] == name) return i;
  return -1;
}

std::vector<std::pair<int, int>> KripkeFrame::edges() const {
  std::vector<std::pair<int, int>> out;
  for (int a = 0; a < num_worlds(); ++a)
    for (int b : access[a]) out.emplace_back(a, b);
  return out;
}

namespace {

// Bottom-up evaluation of the normalized form: one bitset per subformula.
std::vector<bool> eval_set(const KripkeFrame& f, const Valuation& v,
                           const ModalFormula& formula) {
  const int n = f.num_worlds();
  std::vector<bool> out(n, false);
  switch (formula.op()) {
    case ModalOp::True:
      out.assign(n, true);
      break;
    case ModalOp::Prop: {
      auto it = v.find(formula.prop_name());
      if (it == v.end()) throw Error("missing valuation for prop: " + formula.prop_name());
      if (static_cast<int>(it->second.size()) != n)
        throw Error("valuation size mismatch for prop: " + formula.prop_name());
      out = it->second;
      break;
    }
    case ModalOp::Not: {
      auto sub = eval_set(f, v, formula.left());
      for (int w = 0; w < n; ++w) out[w] = !sub[w];
      break;
    }
    case ModalOp::And: {
      auto a = eval_set(f, v, formula.left());
      auto b = eval_set(f, v, formula.right());
      for (int w = 0; w < n; ++w) out[w] = a[w] && b[w];
      break;
    }
    case ModalOp::Diamond: {
      auto sub = eval_set(f, v, formula.left());
      for (int w = 0; w < n; ++w)
        for (int u : f.access[w])
          if (sub[u]) {
            out[w] = true;
            break;
          }
      break;
    }
    default:
      return eval_set(f, v, formula.normalized());
  }
  return out;
}

}  // namespace

bool eval_modal(const KripkeFrame& f, const Valuation& v, int world,
                const ModalFormula& formula) {
  if (world < 0 || world >= f.num_worlds()) throw Error("eval_modal: world out of range");
  return eval_set(f, v, formula.normalized())[world];
}

FrameValidity valid_on_frame(const KripkeFrame& f, const ModalFormula& formula,
                             unsigned long long budget) {
  FrameValidity result;
  auto props = formula.props();
  const int n = f.num_worlds();
  const std::size_t k = props.size();
  // Total enumeration size 2^(n*k); bail out before it overflows the budget.
  if (k > 0) {
    if (static_cast<unsigned long long>(n) * k >= 63) {
      result.verdict = Verdict::Inconclusive;
      result.required = ~0ull;
      return result;
    }
    result.required = 1ull << (static_cast<unsigned long long>(n) * k);
    if (result.required > budget) {
      result.verdict = Verdict::Inconclusive;
      return result;
    }
  } else {
    result.required = 1;
  }
  ModalFormula norm = formula.normalized();
  std::vector<unsigned long long> masks(k, 0);
  const unsigned long long limit = n >= 63 ? 0 : (1ull << n);
  for (;;) {
    Valuation v;
    for (std::size_t i = 0; i < k; ++i) {
      std::vector<bool> set(n, false);
      for (int w = 0; w < n; ++w)
        if (masks[i] >> w & 1) set[w] = true;
      v.emplace(props[i], std::move(set));
    }
    auto sat = eval_set(f, v, norm);
    for (int w = 0; w < n; ++w)
      if (!sat[w]) {
        result.verdict = Verdict::Falsified;
        result.countermodel = FrameCountermodel{std::move(v), w};
        return result;
      }
    // Next valuation tuple (per-prop masks count up, first prop fastest).
    std::size_t i = 0;
    while (i < k && ++masks[i] == limit) masks[i++] = 0;
    if (i == k) break;
    if (k == 0) break;
  }
  return result;
}

FrameReport frame_properties(const KripkeFrame& f) {
  FrameReport r;
  const int n = f.num_worlds();
  for (int w = 0; w < n && r.reflexive; ++w)
    if (!f.edge(w, w)) {
      r.reflexive = false;
      r.reflexive_counter = w;
    }
  for (int w = 0; w < n && r.transitive; ++w)
    for (int v : f.access[w]) {
      for (int u : f.access[v])
        if (!f.edge(w, u)) {
          r.transitive = false;
          r.transitive_counter = {w, v, u};
          break;
        }
      if (!r.transitive) break;
    }
  for (int w = 0; w < n && r.directed; ++w)
    for (int v : f.access[w]) {
      for (int u : f.access[w]) {
        bool ok = false;
        for (int z = 0; z < n && !ok; ++z) ok = f.edge(v, z) && f.edge(u, z);
        if (!ok) {
          r.directed = false;
          r.directed_counter = {w, v, u};
          break;
        }
      }
      if (!r.directed) break;
    }
  for (int m = 0; m < n && r.greatest < 0; ++m) {
    bool all = true;
    for (int w = 0; w < n && all; ++w) all = f.edge(w, m);
    if (all) r.greatest = m;
  }
  r.has_greatest = r.greatest >= 0;
  for (int w = 0; w < n && r.antisymmetric; ++w)
    for (int v : f.access[w])
      if (v != w && f.edge(v, w)) {
        r.antisymmetric = false;
        r.antisym_counter = {w, v};
        break;
      }
  return r;
}

}  // namespace absref
