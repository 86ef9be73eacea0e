#include "tableau2d/luk_tableau.hpp"

#include <deque>
#include <memory>
#include <set>
#include <stdexcept>
#include <unordered_set>

#include "detail/search.hpp"

namespace tableau2d {

namespace {

std::string formula_operand(const Formula& f) {
  std::string s = render(f);
  return is_binary(f.op()) ? "(" + s + ")" : s;
}

}  // namespace

std::string Labelled::str() const {
  return formula_operand(formula) + (dir == Dir::Le ? " ⩽" : " ⩾") + (coord == 1 ? "₁ " : "₂ ") + bound.str();
}

std::string to_string(const LukConstraint& c) {
  if (const auto* l = std::get_if<Labelled>(&c)) return l->str();
  return std::get<LinIneq>(c).str();
}

// ---------------------------------------------------------------- rules

bool luk_rule_splits(const Labelled& p, bool derived) {
  const bool le = p.dir == Dir::Le;
  switch (p.formula.op()) {
    case Op::And:
    case Op::Or: {
      const bool minlike = (p.formula.op() == Op::And) == (p.coord == 1);
      return minlike == le;
    }
    case Op::Imp:
    case Op::WImp:
      if (derived && p.formula.rhs().op() == Op::Bot) return false;
      return p.coord == 1 ? le : !le;
    default: return false;
  }
}

std::optional<LukRuleResult> apply_luk_rule(const Labelled& p, FreshCounter& fresh, Mode mode, bool derived) {
  const Formula& f = p.formula;
  const AffineExpr& i = p.bound;
  const bool le = p.dir == Dir::Le;
  const bool linear = mode == Mode::Linear;
  auto rule_name = [&](const char* sym) {
    return std::string(sym) + (le ? "⩽" : "⩾") + (p.coord == 1 ? "₁" : "₂");
  };
  LukRuleResult r;
  auto single = [&](std::vector<LukConstraint> cs) { r.branches.push_back(std::move(cs)); };
  auto new_param = [&] { return AffineExpr::of(Var::param(fresh.next_param++)); };
  auto new_binary = [&] {
    Var y = Var::binary(fresh.next_binary++);
    r.binaries.push_back(y);
    return AffineExpr::of(y);
  };
  const AffineExpr one(1);

  switch (f.op()) {
    case Op::Atom: return std::nullopt;
    case Op::Top:
    case Op::CoImp:
      throw SignatureError("connective '" + std::string(op_token(f.op())) + "' has no Łukasiewicz rule",
                           std::string(op_token(f.op())));
    case Op::Bot: {
      r.rule = rule_name("0");
      const AffineExpr value(p.coord == 1 ? 0 : 1);
      single({le ? tableau2d::le(value, i) : ge(value, i)});
      break;
    }
    case Op::Neg:
      r.rule = rule_name("¬");
      single({Labelled{f.lhs(), 3 - p.coord, p.dir, i}});
      break;
    case Op::And:
    case Op::Or: {
      r.rule = rule_name(f.op() == Op::And ? "∧" : "∨");
      const Formula a = f.lhs(), b = f.rhs();
      if (!luk_rule_splits(p)) {
        single({Labelled{a, p.coord, p.dir, i}, Labelled{b, p.coord, p.dir, i}});
      } else if (!linear) {
        r.splitting = true;
        r.branches.push_back({Labelled{a, p.coord, p.dir, i}});
        r.branches.push_back({Labelled{b, p.coord, p.dir, i}});
      } else {
        const AffineExpr y = new_binary();
        if (le) {
          single({Labelled{a, p.coord, p.dir, i + y}, Labelled{b, p.coord, p.dir, i + one - y}});
        } else {
          single({Labelled{a, p.coord, p.dir, i - y}, Labelled{b, p.coord, p.dir, i - one + y}});
        }
      }
      break;
    }
    case Op::Imp:
    case Op::WImp: {
      const bool weak = f.op() == Op::WImp;
      if (derived && f.rhs().op() == Op::Bot) {
        // φ→0 = (1 − φ₁, 1 − φ₂) and φ⇾0 = (1 − φ₁, φ₁).
        r.rule = rule_name(weak ? "~w" : "~");
        const Dir flip = le ? Dir::Ge : Dir::Le;
        if (p.coord == 1) {
          single({Labelled{f.lhs(), 1, flip, one - i}});
        } else if (!weak) {
          single({Labelled{f.lhs(), 2, flip, one - i}});
        } else {
          single({Labelled{f.lhs(), 1, p.dir, i}});
        }
        break;
      }
      r.rule = rule_name(weak ? "⇾" : "→");
      const Formula a = f.lhs(), b = f.rhs();
      const AffineExpr j = new_param();
      if (p.coord == 1) {
        if (!le) {
          single({lab_ge(b, 1, j), lab_le(a, 1, one - i + j)});
        } else if (!linear) {
          r.splitting = true;
          r.branches.push_back({ge(i, one)});
          r.branches.push_back({lab_ge(a, 1, one - i + j), lab_le(b, 1, j), tableau2d::le(j, i)});
        } else {
          const AffineExpr y = new_binary();
          single({lab_ge(a, 1, one - i + j - y), lab_le(b, 1, j + y), tableau2d::le(y, i), tableau2d::le(j, i)});
        }
      } else if (!weak) {
        if (le) {
          single({lab_ge(a, 2, j), lab_le(b, 2, i + j)});
        } else if (!linear) {
          r.splitting = true;
          r.branches.push_back({tableau2d::le(i, AffineExpr(0))});
          r.branches.push_back({lab_le(a, 2, j), lab_ge(b, 2, i + j), tableau2d::le(j, one - i)});
        } else {
          const AffineExpr y = new_binary();
          single({lab_le(a, 2, j + y), lab_ge(b, 2, i + j - y), tableau2d::le(y, one - i), tableau2d::le(j, one - i)});
        }
      } else {
        // Negative support of a ⇾ b is max(0, a₁ + b₂ − 1).
        if (le) {
          single({lab_le(a, 1, i + j), lab_le(b, 2, one - j)});
        } else if (!linear) {
          r.splitting = true;
          r.branches.push_back({tableau2d::le(i, AffineExpr(0))});
          r.branches.push_back({lab_ge(a, 1, i + j), lab_ge(b, 2, one - j), tableau2d::le(j, one - i)});
        } else {
          const AffineExpr y = new_binary();
          single({lab_ge(a, 1, i + j - y), lab_ge(b, 2, one - j - y), tableau2d::le(y, one - i),
                  tableau2d::le(j, one - i)});
        }
      }
      break;
    }
  }
  for (const auto& br : r.branches) {
    for (const auto& c : br) {
      const auto* l = std::get_if<Labelled>(&c);
      if (l && l->formula.size() >= f.size()) throw std::logic_error("rule " + r.rule + " did not decrease the formula");
    }
  }
  return r;
}

// ---------------------------------------------------------------- translation

namespace {

LinIneq translate_one(const LukConstraint& c) {
  if (const auto* l = std::get_if<Labelled>(&c)) {
    const AffineExpr x = AffineExpr::of(l->coord == 1 ? Var::left(l->formula) : Var::right(l->formula));
    return l->dir == Dir::Le ? le(x, l->bound) : ge(x, l->bound);
  }
  return std::get<LinIneq>(c);
}

}  // namespace

std::vector<LinIneq> translate(const std::vector<LukConstraint>& constraints) {
  std::vector<LinIneq> out;
  out.reserve(constraints.size());
  for (const auto& c : constraints) out.push_back(translate_one(c));
  return out;
}

bool branch_closed(const LukBranch& b) {
  const auto sys = translate(b.constraints);
  if (b.binaries.empty()) return !fm_feasible(sys).sat;
  return !feasible_with_binaries(sys, {}, b.binaries).sat;
}

// ---------------------------------------------------------------- saturation

namespace {

// Constraints are immutable once on a branch, so sibling branches share them.
struct Entry {
  LukConstraint constraint;
  LinIneq row;  // translation
};

struct LabelledPtrHash {
  std::size_t operator()(const Labelled* l) const { return LabelledHash{}(*l); }
};
struct LabelledPtrEq {
  bool operator()(const Labelled* a, const Labelled* b) const { return *a == *b; }
};

struct State {
  std::vector<std::shared_ptr<const Entry>> entries;
  std::unordered_set<const Labelled*, LabelledPtrHash, LabelledPtrEq> seen;
  std::deque<const Entry*> plain, split;
  FreshCounter fresh;
  std::vector<Var> binaries;
  Mode mode = Mode::Branching;
  bool derived = false;

  // False when an identical labelled formula is already on the branch.
  bool add(const LukConstraint& c) {
    const auto* l = std::get_if<Labelled>(&c);
    if (l && seen.count(l)) return false;
    auto e = std::make_shared<const Entry>(Entry{c, translate_one(c)});
    if (const auto* el = std::get_if<Labelled>(&e->constraint)) {
      seen.insert(el);
      if (!el->formula.is_atom()) {
        if (mode == Mode::Branching && luk_rule_splits(*el, derived)) {
          split.push_back(e.get());
        } else {
          plain.push_back(e.get());
        }
      }
    }
    entries.push_back(std::move(e));
    return true;
  }

  const Labelled& take_next() {
    std::deque<const Entry*>& q = plain.empty() ? split : plain;
    const Entry* e = q.front();
    q.pop_front();
    return std::get<Labelled>(e->constraint);
  }

  std::vector<LukConstraint> constraints() const {
    std::vector<LukConstraint> out;
    out.reserve(entries.size());
    for (const auto& e : entries) out.push_back(e->constraint);
    return out;
  }
};

// Rows of compound formulas whose rule has been applied are implied by the
// rule's conclusions, so feasibility checks translate only atoms, pending
// formulas and plain inequalities.
std::vector<LinIneq> live_system(const State& s) {
  std::unordered_set<const Entry*> pending(s.plain.begin(), s.plain.end());
  pending.insert(s.split.begin(), s.split.end());
  std::vector<LinIneq> live;
  live.reserve(s.entries.size());
  for (const auto& e : s.entries) {
    const auto* l = std::get_if<Labelled>(&e->constraint);
    if (!l || l->formula.is_atom() || pending.count(e.get())) live.push_back(e->row);
  }
  return live;
}

State initial_state(const std::vector<LukConstraint>& root, FreshCounter fresh, Mode mode, bool derived = false) {
  State s;
  s.mode = mode;
  s.derived = derived;
  s.fresh = fresh;
  for (const auto& c : root) s.add(c);
  return s;
}

void saturate_all(State s, std::vector<LukBranch>& out) {
  while (!s.plain.empty() || !s.split.empty()) {
    const Labelled& p = s.take_next();
    auto r = apply_luk_rule(p, s.fresh, s.mode, s.derived);
    s.binaries.insert(s.binaries.end(), r->binaries.begin(), r->binaries.end());
    if (r->branches.size() == 1) {
      for (const auto& c : r->branches.front()) s.add(c);
      continue;
    }
    for (const auto& br : r->branches) {
      State child = s;
      for (const auto& c : br) child.add(c);
      saturate_all(std::move(child), out);
    }
    return;
  }
  out.push_back({s.constraints(), std::move(s.binaries), s.fresh});
}

}  // namespace

std::vector<LukBranch> saturate(const std::vector<LukConstraint>& root, FreshCounter fresh) {
  std::vector<LukBranch> out;
  saturate_all(initial_state(root, fresh, Mode::Branching), out);
  return out;
}

LukBranch saturate_linear(const std::vector<LukConstraint>& root, FreshCounter fresh) {
  std::vector<LukBranch> out;
  saturate_all(initial_state(root, fresh, Mode::Linear), out);
  return std::move(out.front());
}

// ---------------------------------------------------------------- countermodels

Valuation extract_countermodel(const std::vector<LukConstraint>& root, const Model& model,
                               const std::vector<std::string>& atom_names, LogicId logic) {
  Valuation v;
  for (const auto& name : atom_names) {
    const Formula p = Formula::atom(name);
    auto read = [&](const Var& x) {
      auto it = model.find(x);
      return it == model.end() ? Rational(0) : it->second;
    };
    v[name] = {read(Var::left(p)), read(Var::right(p))};
  }
  for (const auto& c : root) {
    const auto* l = std::get_if<Labelled>(&c);
    if (!l) continue;
    const TruthPair t = eval(l->formula, v, logic);
    const Rational& value = l->coord == 1 ? t.pos : t.neg;
    const Rational bound = l->bound.evaluate(model);
    const bool ok = l->dir == Dir::Le ? value <= bound : value >= bound;
    if (!ok) {
      throw std::logic_error("countermodel check failed for root constraint " + l->str() + ": value " +
                             to_string(value) + ", bound " + to_string(bound));
    }
  }
  return v;
}

// ---------------------------------------------------------------- search

namespace {

struct Outcome {
  bool closed = true;
  bool cancelled = false;
  std::optional<Model> model;
  std::size_t branches = 0;
};

std::vector<std::string> model_lines(const Model& m) {
  std::vector<std::string> out;
  for (const auto& [v, value] : m) {
    if (v.kind == Var::Kind::Param || v.kind == Var::Kind::Binary ||
        (v.is_formula() && v.formula.is_atom())) {
      out.push_back(v.name() + " = " + to_string(value));
    }
  }
  return out;
}

class LukSearch {
 public:
  LukSearch(const TableauOptions& options) : options_(options), budget_(options.jobs) {}

  // `witness` satisfies the live system of an ancestor; extending it usually
  // settles an open branch without a full elimination.
  Outcome explore(State s, Model witness, ProofNode* node, const detail::CancelToken* cancel) {
    ProofNode* cur = node;
    const bool tree = options_.keep_tree;
    while (!s.plain.empty() || !s.split.empty()) {
      if (cancel && cancel->cancelled()) return {false, true, {}, 0};
      const Labelled& p = s.take_next();
      auto r = apply_luk_rule(p, s.fresh, s.mode, s.derived);
      s.binaries.insert(s.binaries.end(), r->binaries.begin(), r->binaries.end());
      if (tree) {
        cur->rule = r->rule;
        cur->premise = p.str();
      }
      if (r->branches.size() == 1) {
        ProofNode* child = nullptr;
        if (tree) child = &cur->children.emplace_back();
        for (const auto& c : r->branches.front()) {
          if (s.add(c) && tree) child->added.push_back(to_string(c));
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
          if (child.add(c) && tree) cn->added.push_back(to_string(c));
        }
        const auto sys = live_system(child);
        if (auto m = extend_model(sys, witness)) return explore(std::move(child), std::move(*m), cn, token);
        auto f = fm_feasible(sys, {}, certificate_options());
        if (!f.sat) {
          if (tree) cn->leaf = closed_leaf(f);
          return {true, false, {}, 1};
        }
        return explore(std::move(child), std::move(f.model), cn, token);
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
    const auto sys = live_system(s);
    Feasibility f;
    if (auto m = s.binaries.empty() ? extend_model(sys, witness) : std::nullopt) {
      f.sat = true;
      f.model = std::move(*m);
    } else {
      f = s.binaries.empty() ? fm_feasible(sys, {}, certificate_options())
                             : feasible_with_binaries(sys, {}, s.binaries);
    }
    if (!f.sat) {
      if (tree) cur->leaf = closed_leaf(f);
      return {true, false, {}, 1};
    }
    if (tree) {
      ProofLeaf leaf;
      leaf.closed = false;
      leaf.assignment = model_lines(f.model);
      cur->leaf = std::move(leaf);
    }
    return {false, false, std::move(f.model), 1};
  }

 private:
  FmOptions certificate_options() const {
    FmOptions o;
    o.record_certificate = options_.keep_tree;
    return o;
  }

  static ProofLeaf closed_leaf(const Feasibility& f) {
    ProofLeaf leaf;
    leaf.closed = true;
    if (f.certificate) {
      leaf.certificate = f.certificate->lines();
    } else {
      leaf.certificate.push_back("no 0/1 assignment of the binaries is feasible (" +
                                 std::to_string(f.assignments_tried) + " relaxations examined)");
    }
    return leaf;
  }

  const TableauOptions& options_;
  detail::JobBudget budget_;
};

struct RootSpec {
  std::string label;
  std::vector<LukConstraint> constraints;
};

void check_logic(LogicId logic) {
  if (!logic.is_luk()) throw std::invalid_argument("the Łukasiewicz tableau needs a luk-* logic, got " + logic.name());
}

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
    State s = initial_state(root.constraints, FreshCounter{1, 0}, options.mode, options.derived_rules);
    if (options.keep_tree) {
      for (const auto& e : s.entries) run.root.added.push_back(to_string(e->constraint));
    }
    LukSearch search(options);
    Outcome o;
    auto f0 = fm_feasible(live_system(s));
    if (!f0.sat) {
      if (options.keep_tree) run.root.leaf = ProofLeaf{true, f0.certificate->lines(), {}, {}};
      o = {true, false, {}, 1};
    } else {
      o = search.explore(std::move(s), std::move(f0.model), &run.root, nullptr);
    }
    run.closed = o.closed;
    run.branches = o.branches;
    if (!o.closed) {
      Valuation v = extract_countermodel(root.constraints, *o.model, atom_names, logic);
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

}  // namespace

Verdict prove_valid(const Formula& f, const Filter& d, LogicId logic, const TableauOptions& options) {
  return prove_entailment({}, f, d, logic, options);
}

Verdict prove_entailment(const std::vector<Formula>& gamma, const Formula& f, const Filter& d, LogicId logic,
                         const TableauOptions& options) {
  check_logic(logic);
  validate_filter(d, logic);
  validate_signature(f, logic);
  for (const auto& g : gamma) validate_signature(g, logic);

  std::vector<LukConstraint> premises;
  for (const auto& g : gamma) {
    premises.push_back(lab_ge(g, 1, d.x));
    premises.push_back(lab_le(g, 2, d.y));
  }
  const AffineExpr c = AffineExpr::of(Var::param(0));
  RootSpec left{"f ⩽₁ j0, j0 < x", premises};
  left.constraints.push_back(lab_le(f, 1, c));
  left.constraints.push_back(lt(c, d.x));
  RootSpec right{"f ⩾₂ j0, j0 > y", premises};
  right.constraints.push_back(lab_ge(f, 2, c));
  right.constraints.push_back(gt(c, d.y));
  return run_roots({left, right}, gamma, f, d, logic, options);
}

}  // namespace tableau2d
