#include "tableau2d/formula.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <set>

namespace tableau2d {

std::string LogicId::name() const {
  std::string s = base == Base::Luk ? "luk" : "godel";
  s += impl == ImplKind::Arrow ? "-arrow" : "-warrow";
  return s;
}

std::optional<LogicId> LogicId::from_name(std::string_view name) {
  for (const LogicId& l : kAllLogics) {
    if (l.name() == name) return l;
  }
  return std::nullopt;
}

bool is_binary(Op op) { return op == Op::And || op == Op::Or || op == Op::Imp || op == Op::CoImp || op == Op::WImp; }

std::string_view op_token(Op op) {
  switch (op) {
    case Op::Bot: return "0";
    case Op::Top: return "1";
    case Op::Atom: return "atom";
    case Op::Neg: return "!";
    case Op::And: return "&";
    case Op::Or: return "|";
    case Op::Imp: return "->";
    case Op::CoImp: return "-<";
    case Op::WImp: return "~>";
  }
  return "?";
}

// ---------------------------------------------------------------- Formula

Formula::Formula() : Formula(bot()) {}

Formula Formula::make(Op op, std::string name, const Formula* a, const Formula* b) {
  auto n = std::make_shared<Node>();
  n->op = op;
  n->name = std::move(name);
  std::size_t h = std::hash<int>{}(static_cast<int>(op)) * 0x100000001b3ULL;
  n->size = 1;
  n->depth = 0;
  if (op == Op::Atom) h ^= std::hash<std::string>{}(n->name) + 0x9e3779b97f4a7c15ULL;
  for (const Formula* c : {a, b}) {
    if (c == nullptr) continue;
    h ^= c->hash() + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    n->size += c->size();
    n->depth = std::max(n->depth, c->depth() + 1);
  }
  if (a) n->a = a->node_;
  if (b) n->b = b->node_;
  n->hash = h;
  return Formula(std::move(n));
}

Formula Formula::bot() {
  static const Formula f = make(Op::Bot, "", nullptr, nullptr);
  return f;
}
Formula Formula::top() {
  static const Formula f = make(Op::Top, "", nullptr, nullptr);
  return f;
}
Formula Formula::atom(std::string name) { return make(Op::Atom, std::move(name), nullptr, nullptr); }
Formula Formula::neg(Formula f) { return make(Op::Neg, "", &f, nullptr); }
Formula Formula::conj(Formula a, Formula b) { return make(Op::And, "", &a, &b); }
Formula Formula::disj(Formula a, Formula b) { return make(Op::Or, "", &a, &b); }
Formula Formula::imp(Formula a, Formula b) { return make(Op::Imp, "", &a, &b); }
Formula Formula::coimp(Formula a, Formula b) { return make(Op::CoImp, "", &a, &b); }
Formula Formula::wimp(Formula a, Formula b) { return make(Op::WImp, "", &a, &b); }
Formula Formula::binary(Op op, Formula a, Formula b) {
  if (!is_binary(op)) throw std::invalid_argument("not a binary connective");
  return make(op, "", &a, &b);
}

Formula Formula::lhs() const {
  if (!node_->a) throw std::logic_error("formula has no left operand");
  return Formula(node_->a);
}
Formula Formula::rhs() const {
  if (!node_->b) throw std::logic_error("formula has no right operand");
  return Formula(node_->b);
}

int Formula::compare(const Node* x, const Node* y) {
  if (x == y) return 0;
  if (x->op != y->op) return x->op < y->op ? -1 : 1;
  if (x->size != y->size) return x->size < y->size ? -1 : 1;
  if (x->op == Op::Atom) return x->name.compare(y->name) < 0 ? -1 : (x->name == y->name ? 0 : 1);
  if (x->a) {
    int c = compare(x->a.get(), y->a.get());
    if (c != 0) return c;
  }
  if (x->b) return compare(x->b.get(), y->b.get());
  return 0;
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (a.node_->hash != b.node_->hash || a.node_->size != b.node_->size) return false;
  return Formula::compare(a.node_.get(), b.node_.get()) == 0;
}

bool operator<(const Formula& a, const Formula& b) { return Formula::compare(a.node_.get(), b.node_.get()) < 0; }

// ---------------------------------------------------------------- signature

bool in_signature(Op op, LogicId logic) {
  switch (op) {
    case Op::Bot:
    case Op::Atom:
    case Op::Neg:
    case Op::And:
    case Op::Or: return true;
    case Op::Top: return logic.is_godel();
    case Op::Imp: return logic.is_arrow();
    case Op::CoImp: return logic.is_godel() && logic.is_arrow();
    case Op::WImp: return !logic.is_arrow();
  }
  return false;
}

namespace {

std::string connective_description(Op op) {
  switch (op) {
    case Op::Top: return "constant '1'";
    case Op::Imp: return "connective '->' (implication)";
    case Op::CoImp: return "connective '-<' (coimplication)";
    case Op::WImp: return "connective '~>' (weak implication)";
    default: return "connective '" + std::string(op_token(op)) + "'";
  }
}

[[noreturn]] void signature_violation(const std::string& what, const std::string& token, LogicId logic) {
  throw SignatureError(what + " is not in the signature of " + logic.name(), token);
}

}  // namespace

void validate_signature(const Formula& f, LogicId logic) {
  std::vector<Formula> stack{f};
  while (!stack.empty()) {
    Formula g = stack.back();
    stack.pop_back();
    if (!in_signature(g.op(), logic)) {
      signature_violation(connective_description(g.op()), std::string(op_token(g.op())), logic);
    }
    if (g.op() == Op::Neg) stack.push_back(g.lhs());
    if (is_binary(g.op())) {
      stack.push_back(g.lhs());
      stack.push_back(g.rhs());
    }
  }
}

bool conforms(const Formula& f, LogicId logic) {
  try {
    validate_signature(f, logic);
    return true;
  } catch (const SignatureError&) {
    return false;
  }
}

// ---------------------------------------------------------------- derived forms

Formula tilde(const Formula& f) { return Formula::imp(f, Formula::bot()); }
Formula odot(const Formula& a, const Formula& b) { return tilde(Formula::imp(a, tilde(b))); }
Formula iff(const Formula& a, const Formula& b) { return odot(Formula::imp(a, b), Formula::imp(b, a)); }

namespace {

SurfaceOp surface_of(Op op) {
  switch (op) {
    case Op::Bot: return SurfaceOp::Bot;
    case Op::Top: return SurfaceOp::Top;
    case Op::Atom: return SurfaceOp::Atom;
    case Op::Neg: return SurfaceOp::Neg;
    case Op::And: return SurfaceOp::And;
    case Op::Or: return SurfaceOp::Or;
    case Op::Imp: return SurfaceOp::Imp;
    case Op::CoImp: return SurfaceOp::CoImp;
    case Op::WImp: return SurfaceOp::WImp;
  }
  return SurfaceOp::Bot;
}

}  // namespace

DerivedForm lift(const Formula& f) {
  DerivedForm d;
  d.op = surface_of(f.op());
  d.name = f.name();
  if (f.op() == Op::Neg) d.args.push_back(lift(f.lhs()));
  if (is_binary(f.op())) {
    d.args.push_back(lift(f.lhs()));
    d.args.push_back(lift(f.rhs()));
  }
  return d;
}

Formula expand_derived(const DerivedForm& d, LogicId logic) {
  auto need_arrow = [&](const char* token) {
    if (!logic.is_arrow()) {
      signature_violation(std::string("derived connective '") + token + "' (defined via '->')", token, logic);
    }
  };
  auto check = [&](Op op) {
    if (!in_signature(op, logic)) signature_violation(connective_description(op), std::string(op_token(op)), logic);
  };
  auto arg = [&](std::size_t i) { return expand_derived(d.args.at(i), logic); };
  switch (d.op) {
    case SurfaceOp::Bot: return Formula::bot();
    case SurfaceOp::Top: check(Op::Top); return Formula::top();
    case SurfaceOp::Atom: return Formula::atom(d.name);
    case SurfaceOp::Neg: return Formula::neg(arg(0));
    case SurfaceOp::And: return Formula::conj(arg(0), arg(1));
    case SurfaceOp::Or: return Formula::disj(arg(0), arg(1));
    case SurfaceOp::Imp: check(Op::Imp); return Formula::imp(arg(0), arg(1));
    case SurfaceOp::CoImp: check(Op::CoImp); return Formula::coimp(arg(0), arg(1));
    case SurfaceOp::WImp: check(Op::WImp); return Formula::wimp(arg(0), arg(1));
    case SurfaceOp::Tilde: {
      Formula a = arg(0);
      return logic.is_arrow() ? tilde(a) : Formula::wimp(a, Formula::bot());
    }
    case SurfaceOp::Odot: need_arrow("*"); return odot(arg(0), arg(1));
    case SurfaceOp::Iff: need_arrow("<->"); return iff(arg(0), arg(1));
  }
  throw std::logic_error("unknown surface operator");
}

// ---------------------------------------------------------------- parser

namespace {

enum class Tok : std::uint8_t {
  Ident, Zero, One, Bang, Tilde, Amp, Bar, Arrow, WArrow, CoArrow, Iff, Star, LParen, RParen, End
};

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

std::vector<Token> lex(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    std::size_t start = i;
    if (std::isalpha(static_cast<unsigned char>(c))) {
      while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
      out.push_back({Tok::Ident, std::string(s.substr(start, i - start)), start});
      continue;
    }
    auto two = s.substr(i, 2);
    if (s.substr(i, 3) == "<->") {
      out.push_back({Tok::Iff, "<->", start});
      i += 3;
    } else if (two == "->") {
      out.push_back({Tok::Arrow, "->", start});
      i += 2;
    } else if (two == "~>") {
      out.push_back({Tok::WArrow, "~>", start});
      i += 2;
    } else if (two == "-<") {
      out.push_back({Tok::CoArrow, "-<", start});
      i += 2;
    } else {
      Tok k;
      switch (c) {
        case '0': k = Tok::Zero; break;
        case '1': k = Tok::One; break;
        case '!': k = Tok::Bang; break;
        case '~': k = Tok::Tilde; break;
        case '&': k = Tok::Amp; break;
        case '|': k = Tok::Bar; break;
        case '*': k = Tok::Star; break;
        case '(': k = Tok::LParen; break;
        case ')': k = Tok::RParen; break;
        default: throw ParseError(std::string("unexpected character '") + c + "'", start);
      }
      if ((k == Tok::Zero || k == Tok::One) && i + 1 < s.size() &&
          (std::isalnum(static_cast<unsigned char>(s[i + 1])) || s[i + 1] == '_')) {
        throw ParseError("malformed constant", start);
      }
      out.push_back({k, std::string(1, c), start});
      ++i;
    }
  }
  out.push_back({Tok::End, "", s.size()});
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : toks_(lex(text)) {}

  DerivedForm parse_all() {
    if (peek().kind == Tok::End) throw ParseError("empty formula", peek().pos);
    DerivedForm f = parse_iff();
    if (peek().kind != Tok::End) throw ParseError("unexpected token '" + peek().text + "'", peek().pos);
    return f;
  }

 private:
  const Token& peek() const { return toks_[i_]; }
  const Token& next() { return toks_[i_++]; }

  static DerivedForm node(SurfaceOp op, std::size_t pos, std::vector<DerivedForm> args) {
    DerivedForm d;
    d.op = op;
    d.position = pos;
    d.args = std::move(args);
    return d;
  }

  DerivedForm parse_iff() {
    DerivedForm lhs = parse_impl();
    while (peek().kind == Tok::Iff) {
      std::size_t pos = next().pos;
      DerivedForm rhs = parse_impl();
      lhs = node(SurfaceOp::Iff, pos, {std::move(lhs), std::move(rhs)});
    }
    return lhs;
  }

  static bool is_impl(Tok k) { return k == Tok::Arrow || k == Tok::WArrow || k == Tok::CoArrow; }

  DerivedForm parse_impl() {
    std::vector<DerivedForm> operands;
    std::vector<const Token*> ops;
    operands.push_back(parse_or());
    while (is_impl(peek().kind)) {
      const Token& t = next();
      if (!ops.empty() && ops.front()->kind != t.kind) {
        throw ParseError("mixed implication chain '" + ops.front()->text + "' and '" + t.text +
                             "' requires parentheses",
                         t.pos);
      }
      ops.push_back(&t);
      operands.push_back(parse_or());
    }
    if (ops.empty()) return std::move(operands.front());
    if (ops.front()->kind == Tok::CoArrow) {
      DerivedForm acc = std::move(operands[0]);
      for (std::size_t k = 0; k < ops.size(); ++k) {
        acc = node(SurfaceOp::CoImp, ops[k]->pos, {std::move(acc), std::move(operands[k + 1])});
      }
      return acc;
    }
    SurfaceOp op = ops.front()->kind == Tok::Arrow ? SurfaceOp::Imp : SurfaceOp::WImp;
    DerivedForm acc = std::move(operands.back());
    for (std::size_t k = ops.size(); k-- > 0;) {
      acc = node(op, ops[k]->pos, {std::move(operands[k]), std::move(acc)});
    }
    return acc;
  }

  DerivedForm parse_or() {
    DerivedForm lhs = parse_and();
    while (peek().kind == Tok::Bar) {
      std::size_t pos = next().pos;
      DerivedForm rhs = parse_and();
      lhs = node(SurfaceOp::Or, pos, {std::move(lhs), std::move(rhs)});
    }
    return lhs;
  }

  DerivedForm parse_and() {
    DerivedForm lhs = parse_odot();
    while (peek().kind == Tok::Amp) {
      std::size_t pos = next().pos;
      DerivedForm rhs = parse_odot();
      lhs = node(SurfaceOp::And, pos, {std::move(lhs), std::move(rhs)});
    }
    return lhs;
  }

  DerivedForm parse_odot() {
    DerivedForm lhs = parse_unary();
    while (peek().kind == Tok::Star) {
      std::size_t pos = next().pos;
      DerivedForm rhs = parse_unary();
      lhs = node(SurfaceOp::Odot, pos, {std::move(lhs), std::move(rhs)});
    }
    return lhs;
  }

  DerivedForm parse_unary() {
    const Token& t = next();
    switch (t.kind) {
      case Tok::Bang: return node(SurfaceOp::Neg, t.pos, {parse_unary()});
      case Tok::Tilde: return node(SurfaceOp::Tilde, t.pos, {parse_unary()});
      case Tok::Zero: return node(SurfaceOp::Bot, t.pos, {});
      case Tok::One: return node(SurfaceOp::Top, t.pos, {});
      case Tok::Ident: {
        DerivedForm d = node(SurfaceOp::Atom, t.pos, {});
        d.name = t.text;
        return d;
      }
      case Tok::LParen: {
        DerivedForm inner = parse_iff();
        if (peek().kind != Tok::RParen) {
          throw ParseError(peek().kind == Tok::End ? "missing ')'" : "expected ')' but found '" + peek().text + "'",
                           peek().pos);
        }
        next();
        return inner;
      }
      case Tok::End: throw ParseError("unexpected end of input", t.pos);
      default: throw ParseError("unexpected token '" + t.text + "'", t.pos);
    }
  }

  std::vector<Token> toks_;
  std::size_t i_ = 0;
};

}  // namespace

DerivedForm parse_surface(std::string_view text) { return Parser(text).parse_all(); }

Formula parse(std::string_view text, LogicId logic) { return expand_derived(parse_surface(text), logic); }

// ---------------------------------------------------------------- printer

namespace {

int precedence(Op op) {
  switch (op) {
    case Op::Imp:
    case Op::CoImp:
    case Op::WImp: return 1;
    case Op::Or: return 2;
    case Op::And: return 3;
    case Op::Neg: return 4;
    default: return 5;
  }
}

void render_into(const Formula& f, std::string& out) {
  auto sub = [&](const Formula& g, bool paren) {
    if (paren) out += '(';
    render_into(g, out);
    if (paren) out += ')';
  };
  switch (f.op()) {
    case Op::Bot: out += '0'; return;
    case Op::Top: out += '1'; return;
    case Op::Atom: out += f.name(); return;
    case Op::Neg:
      out += '!';
      sub(f.lhs(), precedence(f.lhs().op()) < 4);
      return;
    default: break;
  }
  const int p = precedence(f.op());
  const Formula l = f.lhs(), r = f.rhs();
  bool lp, rp;
  if (p == 1) {
    const bool l_impl = precedence(l.op()) == 1, r_impl = precedence(r.op()) == 1;
    if (f.op() == Op::CoImp) {
      lp = l_impl && l.op() != Op::CoImp;
      rp = r_impl;
    } else {
      lp = l_impl;
      rp = r_impl && r.op() != f.op();
    }
  } else {
    lp = precedence(l.op()) < p;
    rp = precedence(r.op()) <= p;
  }
  sub(l, lp);
  out += ' ';
  out += op_token(f.op());
  out += ' ';
  sub(r, rp);
}

}  // namespace

std::string render(const Formula& f) {
  std::string out;
  render_into(f, out);
  return out;
}

// ---------------------------------------------------------------- nnf

namespace {

Formula nnf_pos(const Formula& f, LogicId logic);

Formula nnf_neg(const Formula& f, LogicId logic) {
  switch (f.op()) {
    case Op::Atom: return Formula::neg(f);
    case Op::Bot: return logic.is_godel() ? Formula::top() : tilde(Formula::bot());
    case Op::Top: return Formula::bot();
    case Op::Neg: return nnf_pos(f.lhs(), logic);
    case Op::And: return Formula::disj(nnf_neg(f.lhs(), logic), nnf_neg(f.rhs(), logic));
    case Op::Or: return Formula::conj(nnf_neg(f.lhs(), logic), nnf_neg(f.rhs(), logic));
    case Op::Imp:
      if (logic.is_godel()) return Formula::coimp(nnf_neg(f.rhs(), logic), nnf_neg(f.lhs(), logic));
      // ¬(φ→ψ) has the value of ¬ψ ⊙ ~¬φ.
      return odot(nnf_neg(f.rhs(), logic), tilde(nnf_neg(f.lhs(), logic)));
    case Op::CoImp: return Formula::imp(nnf_neg(f.rhs(), logic), nnf_neg(f.lhs(), logic));
    case Op::WImp: break;
  }
  throw std::invalid_argument("nnf: weak implication is not supported");
}

Formula nnf_pos(const Formula& f, LogicId logic) {
  switch (f.op()) {
    case Op::Atom:
    case Op::Bot:
    case Op::Top: return f;
    case Op::Neg: return nnf_neg(f.lhs(), logic);
    default: return Formula::binary(f.op(), nnf_pos(f.lhs(), logic), nnf_pos(f.rhs(), logic));
  }
}

}  // namespace

Formula nnf(const Formula& f, LogicId logic) {
  if (!logic.is_arrow()) {
    throw std::invalid_argument("nnf is only defined for Arrow logics, not " + logic.name());
  }
  validate_signature(f, logic);
  return nnf_pos(f, logic);
}

bool is_nnf(const Formula& f) {
  switch (f.op()) {
    case Op::Atom:
    case Op::Bot:
    case Op::Top: return true;
    case Op::Neg: return f.lhs().is_atom();
    default: return is_nnf(f.lhs()) && is_nnf(f.rhs());
  }
}

// ---------------------------------------------------------------- queries

std::vector<std::string> atoms(const Formula& f) {
  std::set<std::string> names;
  std::vector<Formula> stack{f};
  while (!stack.empty()) {
    Formula g = stack.back();
    stack.pop_back();
    if (g.is_atom()) names.insert(g.name());
    if (g.op() == Op::Neg) stack.push_back(g.lhs());
    if (is_binary(g.op())) {
      stack.push_back(g.lhs());
      stack.push_back(g.rhs());
    }
  }
  return {names.begin(), names.end()};
}

std::size_t connective_count(const Formula& f) {
  if (f.is_atom() || f.is_constant()) return 0;
  if (f.op() == Op::Neg) return 1 + connective_count(f.lhs());
  return 1 + connective_count(f.lhs()) + connective_count(f.rhs());
}

// ---------------------------------------------------------------- families

Formula family_fn(int n, std::string_view prefix) {
  if (n < 1) throw std::invalid_argument("family F_n needs n >= 1");
  std::vector<Formula> p;
  for (int i = 1; i <= n + 1; ++i) p.push_back(Formula::atom(std::string(prefix) + std::to_string(i)));
  std::optional<Formula> acc;
  for (int i = 0; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      Formula d = iff(p[i], p[j]);
      acc = acc ? Formula::disj(*acc, d) : d;
    }
  }
  return *acc;
}

Formula family_f2_odot_fn(int n) {
  if (n < 3) throw std::invalid_argument("family F_2 * F_n needs n >= 3");
  return odot(family_fn(2, "p"), family_fn(n, "q"));
}

Formula family_fk_odot_fk(int k) {
  Formula f = family_fn(k, "p");
  return odot(f, f);
}

}  // namespace tableau2d
