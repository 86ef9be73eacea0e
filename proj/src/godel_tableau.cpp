#include "tableau2d/godel_tableau.hpp"

#include <deque>
#include <functional>
#include <set>
#include <stdexcept>
#include <unordered_set>

#include "detail/search.hpp"

namespace tableau2d {

// ---------------------------------------------------------------- rules

namespace {

// The premise seen from its compound side t: t ≲ X when `upper`, else t ≳ X.
struct Focus {
  OTerm t;
  OTerm x;
  bool upper = true;
  ORel rel = ORel::Le;

  bool strict() const { return rel == ORel::Lt; }
  // t' in place of t, same orientation and relation.
  OConstraint same(OTerm t2) const { return upper ? OConstraint{std::move(t2), rel, x} : OConstraint{x, rel, std::move(t2)}; }
};

std::optional<Focus> focus(const OConstraint& p) {
  if (p.lhs.is_compound()) return Focus{p.lhs, p.rhs, true, p.rel};
  if (p.rhs.is_compound()) return Focus{p.rhs, p.lhs, false, p.rel};
  return std::nullopt;
}

const char* sub(int coord) { return coord == 1 ? "₁" : "₂"; }

std::string family(const Focus& s) { return s.upper ? "≲" : "≳"; }

std::string exact(const Focus& s) {
  if (s.upper) return s.strict() ? "<" : "⩽";
  return s.strict() ? ">" : "⩾";
}

bool splits(const Focus& s) {
  const Formula& f = s.t.formula;
  const int c = s.t.coord;
  switch (f.op()) {
    case Op::And:
    case Op::Or: {
      const bool minlike = (f.op() == Op::And) == (c == 1);
      return minlike == s.upper;
    }
    case Op::Imp:
      if (c == 1) return !(s.upper && s.strict());
      return !(!s.upper && s.strict());
    case Op::CoImp:
      if (c == 1) return !(!s.upper && s.strict());
      return !(s.upper && s.strict());
    case Op::WImp:
      if (c == 1) return !(s.upper && s.strict());
      return s.upper;
    default: return false;
  }
}

}  // namespace

bool godel_rule_splits(const OConstraint& premise) {
  const auto s = focus(premise);
  return s && splits(*s);
}

std::optional<GRuleResult> apply_godel_rule(const OConstraint& premise) {
  const auto fs = focus(premise);
  if (!fs) return std::nullopt;
  const Focus& s = *fs;
  const Formula& f = s.t.formula;
  const int c = s.t.coord;
  const OTerm zero = OTerm::zero(), one = OTerm::one(), &x = s.x;
  GRuleResult r;
  r.splitting = splits(s);
  auto name = [&](const char* sym, const std::string& rel) { r.rule = std::string(sym) + sub(c) + rel; };
  auto branch = [&](std::vector<OConstraint> cs) { r.branches.push_back(std::move(cs)); };

  switch (f.op()) {
    case Op::Atom: return std::nullopt;
    case Op::Bot:
    case Op::Top: {
      name("c", family(s));
      const bool is_one = (f.op() == Op::Top) == (c == 1);
      branch({s.same(is_one ? one : zero)});
      break;
    }
    case Op::Neg:
      name("¬", family(s));
      branch({s.same(OTerm::at(3 - c, f.lhs()))});
      break;
    case Op::And:
    case Op::Or: {
      name(f.op() == Op::And ? "∧" : "∨", family(s));
      const OTerm a = OTerm::at(c, f.lhs()), b = OTerm::at(c, f.rhs());
      if (r.splitting) {
        branch({s.same(a)});
        branch({s.same(b)});
      } else {
        branch({s.same(a), s.same(b)});
      }
      break;
    }
    case Op::Imp:
    case Op::WImp: {
      const char* sym = f.op() == Op::Imp ? "→" : "⇾";
      if (c == 1) {
        // a → b = 1 if a ≤ b, else b.
        const OTerm a = OTerm::at(1, f.lhs()), b = OTerm::at(1, f.rhs());
        if (s.upper && !s.strict()) {
          name(sym, exact(s));
          branch({o_le(one, x)});
          branch({o_lt(x, one), o_le(b, x), o_lt(b, a)});
        } else if (s.upper) {
          name(sym, exact(s));
          branch({o_lt(b, x), o_lt(b, a)});
        } else {
          name(sym, family(s));
          std::vector<OConstraint> top{o_le(a, b)};
          if (s.strict()) top.push_back(o_lt(x, one));
          branch(std::move(top));
          branch({s.same(b)});
        }
      } else if (f.op() == Op::Imp) {
        // Second coordinate of a → b: b ⤙ a = 0 if b ≤ a, else b.
        const OTerm a = OTerm::at(2, f.lhs()), b = OTerm::at(2, f.rhs());
        if (s.upper) {
          name(sym, family(s));
          std::vector<OConstraint> bottom{o_le(b, a)};
          if (s.strict()) bottom.push_back(o_lt(zero, x));
          branch(std::move(bottom));
          branch({s.same(b)});
        } else if (!s.strict()) {
          name(sym, exact(s));
          branch({o_le(x, zero)});
          branch({o_lt(zero, x), o_le(x, b), o_lt(a, b)});
        } else {
          name(sym, exact(s));
          branch({o_lt(x, b), o_lt(a, b)});
        }
      } else {
        // Second coordinate of a ⇾ b: min(1:a, 2:b).
        name(sym, family(s));
        const OTerm a = OTerm::at(1, f.lhs()), b = OTerm::at(2, f.rhs());
        if (r.splitting) {
          branch({s.same(a)});
          branch({s.same(b)});
        } else {
          branch({s.same(a), s.same(b)});
        }
      }
      break;
    }
    case Op::CoImp: {
      const char* sym = "⤙";
      const OTerm a = OTerm::at(c, f.lhs()), b = OTerm::at(c, f.rhs());
      if (c == 1) {
        // a ⤙ b = 0 if a ≤ b, else a.
        if (s.upper) {
          name(sym, family(s));
          std::vector<OConstraint> bottom{o_le(a, b)};
          if (s.strict()) bottom.push_back(o_lt(zero, x));
          branch(std::move(bottom));
          branch({s.same(a)});
        } else if (s.strict()) {
          name(sym, exact(s));
          branch({o_lt(x, a), o_lt(b, a)});
        } else {
          name(sym, exact(s));
          branch({o_le(x, zero)});
          branch({o_lt(zero, x), o_le(x, a), o_lt(b, a)});
        }
      } else {
        // Second coordinate: b → a = 1 if b ≤ a, else a.
        if (!s.upper) {
          name(sym, family(s));
          branch({s.same(a)});
          std::vector<OConstraint> top{o_le(b, a)};
          if (s.strict()) top.push_back(o_lt(x, one));
          branch(std::move(top));
        } else if (!s.strict()) {
          name(sym, exact(s));
          branch({o_le(one, x)});
          branch({o_lt(x, one), o_le(a, x), o_lt(a, b)});
        } else {
          name(sym, exact(s));
          branch({o_lt(a, x), o_lt(a, b)});
        }
      }
      break;
    }
  }
  return r;
}

// ---------------------------------------------------------------- saturation

namespace {

void check_formula(const Formula& f, LogicId logic) {
  if (!logic.is_godel()) throw std::invalid_argument("the Gödel tableau needs a godel-* logic, got " + logic.name());
  validate_signature(f, logic);
}

void check_constraints(const std::vector<OConstraint>& cs, LogicId logic) {
  for (const auto& c : cs) {
    for (const OTerm* t : {&c.lhs, &c.rhs}) {
      if (t->kind == OTerm::Kind::Coord) check_formula(t->formula, logic);
    }
  }
}

// Branch state: constraints in insertion order, the pending ones split by
// whether their rule branches, and the order graph of everything so far.
struct State {
  std::vector<OConstraint> constraints;
  std::unordered_set<OConstraint, OConstraintHash> seen;
  std::deque<std::size_t> plain, split;
  OGraph graph;
  std::vector<std::string> trace;

  bool add(const OConstraint& c) {
    if (!seen.insert(c).second) return false;
    constraints.push_back(c);
    graph.add(c);
    if (c.lhs.is_compound() || c.rhs.is_compound()) {
      (godel_rule_splits(c) ? split : plain).push_back(constraints.size() - 1);
    }
    return true;
  }
  bool pending() const { return !plain.empty() || !split.empty(); }
  std::size_t take_next() {
    auto& q = plain.empty() ? split : plain;
    const std::size_t i = q.front();
    q.pop_front();
    return i;
  }
};

State initial_state(const std::vector<OConstraint>& root) {
  State s;
  for (const auto& c : root) s.add(c);
  return s;
}

}  // namespace

std::vector<GBranch> g_saturate(const std::vector<OConstraint>& root, LogicId logic) {
  check_constraints(root, logic);
  std::vector<GBranch> out;
  std::vector<State> todo{initial_state(root)};
  while (!todo.empty()) {
    State s = std::move(todo.back());
    todo.pop_back();
    while (s.pending()) {
      const std::size_t i = s.take_next();
      auto r = apply_godel_rule(s.constraints[i]);
      s.trace.push_back(r->rule);
      for (std::size_t k = r->branches.size(); k-- > 1;) {
        State child = s;
        for (const auto& c : r->branches[k]) child.add(c);
        todo.push_back(std::move(child));
      }
      for (const auto& c : r->branches.front()) s.add(c);
    }
    out.push_back({std::move(s.constraints), std::move(s.trace)});
  }
  return out;
}

bool g_branch_closed(const GBranch& b) { return closed(OGraph(b.constraints)); }

Valuation g_extract_countermodel(const GBranch& b, const std::vector<std::string>& atom_names, LogicId logic) {
  return extract_model(OGraph(b.constraints), atom_names, logic);
}

// ---------------------------------------------------------------- search

namespace {

struct Outcome {
  bool closed = true;
  bool cancelled = false;
  std::optional<Valuation> model;
  std::size_t branches = 0;
};

std::vector<std::string> assignment_lines(const Valuation& v) {
  std::vector<std::string> out;
  for (const auto& [name, value] : v) {
    out.push_back("1:" + name + " = " + to_string(value.pos));
    out.push_back("2:" + name + " = " + to_string(value.neg));
  }
  return out;
}

class GodelSearch {
 public:
  GodelSearch(const TableauOptions& options, const std::vector<std::string>& atom_names, LogicId logic)
      : options_(options), atom_names_(atom_names), logic_(logic), budget_(options.jobs) {}

  // The caller has checked that `s` is open.
  Outcome explore(State s, ProofNode* node, const detail::CancelToken* cancel) {
    ProofNode* cur = node;
    const bool tree = options_.keep_tree;
    while (s.pending()) {
      if (cancel && cancel->cancelled()) return {false, true, {}, 0};
      const OConstraint premise = s.constraints[s.take_next()];
      auto r = apply_godel_rule(premise);
      if (tree) {
        cur->rule = r->rule;
        cur->premise = premise.str();
      }
      if (r->branches.size() == 1) {
        ProofNode* child = tree ? &cur->children.emplace_back() : nullptr;
        for (const auto& c : r->branches.front()) {
          if (s.add(c) && tree) child->added.push_back(c.str());
        }
        if (tree) cur = child;
        continue;
      }
      const std::size_t k = r->branches.size();
      if (tree) cur->children.resize(k);
      auto run = [&](std::size_t idx, const detail::CancelToken* token) -> Outcome {
        State child = s;
        ProofNode* cn = tree ? &cur->children[idx] : nullptr;
        for (const auto& c : r->branches[idx]) {
          if (child.add(c) && tree) cn->added.push_back(c.str());
        }
        if (auto cycle = strict_cycle(child.graph)) {
          if (tree) cn->leaf = closed_leaf(std::move(*cycle));
          return {true, false, {}, 1};
        }
        return explore(std::move(child), cn, token);
      };
      auto outcomes = detail::run_children<Outcome>(k, budget_, cancel, run,
                                                    [](const Outcome& o) { return !o.closed; });
      if (tree) cur->children.resize(outcomes.size());
      Outcome total;
      for (auto& o : outcomes) {
        total.branches += o.branches;
        if (!o.closed) {
          total.closed = false;
          total.cancelled = o.cancelled;
          total.model = std::move(o.model);
        }
      }
      return total;
    }
    // Complete branch.
    if (auto cycle = strict_cycle(s.graph)) {
      if (tree) cur->leaf = closed_leaf(std::move(*cycle));
      return {true, false, {}, 1};
    }
    Valuation v = extract_model(s.graph, atom_names_, logic_);
    if (tree) cur->leaf = ProofLeaf{false, {}, assignment_lines(v), v};
    return {false, false, std::move(v), 1};
  }

  static ProofLeaf closed_leaf(std::vector<std::string> cycle) { return ProofLeaf{true, std::move(cycle), {}, {}}; }

 private:
  const TableauOptions& options_;
  const std::vector<std::string>& atom_names_;
  LogicId logic_;
  detail::JobBudget budget_;
};

struct RootSpec {
  std::string label;
  std::vector<OConstraint> constraints;
};

Verdict run_roots(const std::vector<RootSpec>& roots, const std::vector<Formula>& gamma, const Formula& goal,
                  const Filter& d, LogicId logic, const TableauOptions& options) {
  std::set<std::string> names;
  for (const auto& g : gamma) {
    auto a = atoms(g);
    names.insert(a.begin(), a.end());
  }
  {
    auto a = atoms(goal);
    names.insert(a.begin(), a.end());
  }
  const std::vector<std::string> atom_names(names.begin(), names.end());

  Verdict verdict;
  verdict.valid = true;
  for (const auto& root : roots) {
    TableauRun run;
    run.label = root.label;
    State s = initial_state(root.constraints);
    if (options.keep_tree) {
      for (const auto& c : s.constraints) run.root.added.push_back(c.str());
    }
    GodelSearch search(options, atom_names, logic);
    Outcome o;
    if (auto cycle = strict_cycle(s.graph)) {
      if (options.keep_tree) run.root.leaf = GodelSearch::closed_leaf(std::move(*cycle));
      o = {true, false, {}, 1};
    } else {
      o = search.explore(std::move(s), &run.root, nullptr);
    }
    run.closed = o.closed;
    run.branches = o.branches;
    if (!o.closed) {
      Valuation& v = *o.model;
      for (const auto& c : root.constraints) {
        if (!satisfies(c, v, logic)) throw std::logic_error("countermodel violates root constraint " + c.str());
      }
      for (const auto& g : gamma) {
        if (!is_designated(eval(g, v, logic), d)) throw std::logic_error("countermodel does not designate a premise");
      }
      if (is_designated(eval(goal, v, logic), d)) throw std::logic_error("countermodel designates the conclusion");
      verdict.valid = false;
      verdict.countermodel = std::move(v);
      verdict.tableaux.push_back(std::move(run));
      return verdict;
    }
    verdict.tableaux.push_back(std::move(run));
  }
  return verdict;
}

// Applies a strictly increasing h with h(0) = 0 and h(1) = 1 to every atom
// coordinate. Gödel truth functions commute with such maps.
Valuation transport(const Valuation& v, const std::function<Rational(const Rational&)>& h) {
  Valuation out;
  for (const auto& [name, p] : v) out[name] = {h(p.pos), h(p.neg)};
  return out;
}

// Turns a valuation with v₁(f) < 1 into one that fails the filter d. For
// x > 0, values below 1 are squeezed under x. For x = 0 (Arrow logics, y < 1),
// the dual valuation gives v₂(f) > 0 and positive values are lifted above y.
Valuation retarget(const Valuation& v, const Filter& d, LogicId logic) {
  if (d.x > 0) {
    return transport(v, [&](const Rational& t) { return t == 1 ? t : Rational(t * d.x); });
  }
  if (!logic.is_arrow()) throw FilterError("filter " + to_string(d) + " is not allowed for " + logic.name());
  return transport(dual_valuation(v), [&](const Rational& t) { return t == 0 ? t : Rational(d.y + (1 - d.y) * t); });
}

}  // namespace

Verdict g_prove_valid(const Formula& f, const Filter& d, LogicId logic, const TableauOptions& options) {
  check_formula(f, logic);
  validate_filter(d, logic);
  if (d.x == 0 && d.y == 1) throw FilterError("filter (0,1) designates every value");
  RootSpec root{"1:f < 1", {o_lt(OTerm::at(1, f), OTerm::one())}};
  Verdict verdict = run_roots({root}, {}, f, Filter{1, 0}, logic, options);
  if (verdict.countermodel) {
    *verdict.countermodel = retarget(*verdict.countermodel, d, logic);
    if (is_designated(eval(f, *verdict.countermodel, logic), d)) {
      throw std::logic_error("retargeted countermodel is designated at " + to_string(d));
    }
  }
  return verdict;
}

Verdict g_prove_entailment(const std::vector<Formula>& gamma, const Formula& f, const Filter& d, LogicId logic,
                           const TableauOptions& options) {
  check_formula(f, logic);
  for (const auto& g : gamma) check_formula(g, logic);
  validate_filter(d, logic);
  auto crisp = [](const Rational& r) { return r == 0 || r == 1; };
  if (!crisp(d.x) || !crisp(d.y)) {
    throw FilterError("the Gödel entailment tableau needs filter coordinates in {0,1}, got " + to_string(d));
  }
  const bool x1 = d.x == 1, y0 = d.y == 0;
  std::vector<OConstraint> premises;
  for (const auto& g : gamma) {
    if (x1) premises.push_back(o_le(OTerm::one(), OTerm::at(1, g)));
    if (y0) premises.push_back(o_le(OTerm::at(2, g), OTerm::zero()));
  }
  std::vector<RootSpec> roots;
  if (x1) {
    roots.push_back({"1:f < 1", premises});
    roots.back().constraints.push_back(o_lt(OTerm::at(1, f), OTerm::one()));
  }
  if (y0) {
    roots.push_back({"2:f > 0", premises});
    roots.back().constraints.push_back(o_lt(OTerm::zero(), OTerm::at(2, f)));
  }
  return run_roots(roots, gamma, f, d, logic, options);
}

}  // namespace tableau2d
