#include "tableau2d/semantics.hpp"

#include <random>
#include <set>
#include <unordered_map>

#include "detail/random.hpp"

namespace tableau2d {

std::string to_string(const TruthPair& t) { return "(" + to_string(t.pos) + ", " + to_string(t.neg) + ")"; }
std::string to_string(const Filter& d) { return "(" + to_string(d.x) + ", " + to_string(d.y) + ")"; }

Filter default_filter(LogicId logic) { return logic.is_arrow() ? Filter{1, 0} : Filter{1, 1}; }

void validate_filter(const Filter& d, LogicId logic) {
  if (d.x < 0 || d.x > 1 || d.y < 0 || d.y > 1) {
    throw FilterError("filter " + to_string(d) + " is outside [0,1]^2");
  }
  if (!logic.is_arrow() && d.y != 1) {
    throw FilterError("filter " + to_string(d) + " is not allowed for " + logic.name() +
                      ": weak-implication logics require y = 1");
  }
}

CompiledFormula::CompiledFormula(const Formula& f, LogicId logic) : CompiledFormula(f, logic, tableau2d::atoms(f)) {}

CompiledFormula::CompiledFormula(const Formula& f, LogicId logic, const std::vector<std::string>& atom_table)
    : logic_(logic), atoms_(atom_table) {
  validate_signature(f, logic);
  compile(f);
}

void CompiledFormula::compile(const Formula& root) {
  std::unordered_map<std::string, std::uint32_t> atom_index;
  for (std::uint32_t i = 0; i < atoms_.size(); ++i) atom_index.emplace(atoms_[i], i);
  // Shared subterms are compiled once.
  std::unordered_map<Formula, std::uint32_t, FormulaHash> done;
  std::vector<std::pair<Formula, bool>> stack{{root, false}};
  while (!stack.empty()) {
    auto [f, expanded] = stack.back();
    stack.pop_back();
    if (done.count(f)) continue;
    const bool unary = f.op() == Op::Neg, binary = is_binary(f.op());
    if (!expanded && (unary || binary)) {
      stack.push_back({f, true});
      if (binary) stack.push_back({f.rhs(), false});
      stack.push_back({f.lhs(), false});
      continue;
    }
    Instr in{f.op()};
    if (f.is_atom()) {
      auto it = atom_index.find(f.name());
      if (it == atom_index.end()) throw EvalError("atom '" + f.name() + "' missing from the atom table");
      in.a = it->second;
    } else if (unary) {
      in.a = done.at(f.lhs());
    } else if (binary) {
      in.a = done.at(f.lhs());
      in.b = done.at(f.rhs());
    }
    done.emplace(f, static_cast<std::uint32_t>(code_.size()));
    code_.push_back(in);
  }
  // The root must be last.
  std::uint32_t r = done.at(root);
  if (r + 1 != code_.size()) throw std::logic_error("compiled root is not the final instruction");
}

TruthPair eval(const Formula& f, const Valuation& v, LogicId logic) {
  CompiledFormula c(f, logic);
  std::vector<TruthPair> values;
  values.reserve(c.atoms().size());
  for (const auto& a : c.atoms()) {
    auto it = v.find(a);
    if (it == v.end()) throw EvalError("valuation does not assign atom '" + a + "'");
    values.push_back(it->second);
  }
  return c.evaluate<Rational>(values, Rational(1));
}

bool is_designated(const TruthPair& t, const Filter& d) { return t.pos >= d.x && t.neg <= d.y; }

TruthPair dual_pair(const TruthPair& t) { return {1 - t.neg, 1 - t.pos}; }

Valuation dual_valuation(const Valuation& v) {
  Valuation out;
  for (const auto& [name, t] : v) out.emplace(name, dual_pair(t));
  return out;
}

bool conflation_closed(const Filter& d) { return d.y == 1 - d.x; }

Filter normalize_filter(const Filter& d) {
  if (d.y >= 1 - d.x) return {d.x, 1 - d.x};
  return {1 - d.y, d.y};
}

namespace {

using IntPair = BasicTruthPair<std::int64_t>;

constexpr std::uint64_t kSweepBudget = 1u << 16;

struct SampleTarget {
  std::vector<std::string> atom_table;
  std::vector<CompiledFormula> premises;
  std::optional<CompiledFormula> goal;
};

bool designated_at(const IntPair& t, std::int64_t den, const Filter& d) {
  return make_rational(t.pos, den) >= d.x && make_rational(t.neg, den) <= d.y;
}

// True when the valuation designates every premise and not the goal.
bool refutes(const SampleTarget& s, std::span<const IntPair> values, std::int64_t den, const Filter& d,
             std::vector<IntPair>& scratch) {
  for (const auto& p : s.premises) {
    if (!designated_at(p.evaluate<std::int64_t>(values, den, scratch), den, d)) return false;
  }
  return !designated_at(s.goal->evaluate<std::int64_t>(values, den, scratch), den, d);
}

Valuation to_valuation(const std::vector<std::string>& names, std::span<const IntPair> values, std::int64_t den) {
  Valuation v;
  for (std::size_t i = 0; i < names.size(); ++i) {
    v.emplace(names[i], TruthPair{make_rational(values[i].pos, den), make_rational(values[i].neg, den)});
  }
  return v;
}

// Enumerates every assignment of `points` to the atoms; odometer order.
std::optional<Valuation> sweep(const SampleTarget& s, const std::vector<IntPair>& points, std::int64_t den,
                               const Filter& d) {
  const std::size_t m = s.atom_table.size();
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < m; ++i) {
    total *= points.size();
    if (total > kSweepBudget) return std::nullopt;
  }
  std::vector<std::size_t> idx(m, 0);
  std::vector<IntPair> values(m, points.front());
  std::vector<IntPair> scratch;
  while (true) {
    if (refutes(s, values, den, d, scratch)) return to_valuation(s.atom_table, values, den);
    std::size_t k = 0;
    while (k < m && ++idx[k] == points.size()) {
      idx[k] = 0;
      values[k] = points[0];
      ++k;
    }
    if (k == m) return std::nullopt;
    values[k] = points[idx[k]];
  }
}

std::optional<Valuation> search(const SampleTarget& s, const Filter& d, int trials, std::uint64_t seed) {
  const std::vector<IntPair> corners{{0, 1}, {1, 0}, {0, 0}, {1, 1}};
  if (auto v = sweep(s, corners, 1, d)) return v;
  std::vector<IntPair> grid;
  for (std::int64_t a = 0; a <= 4; ++a) {
    for (std::int64_t b = 4; b >= 0; --b) grid.push_back({a, b});
  }
  if (auto v = sweep(s, grid, 4, d)) return v;

  detail::Rng rng(seed);
  const std::size_t m = s.atom_table.size();
  std::vector<IntPair> values(m);
  std::vector<IntPair> scratch;
  for (int t = 0; t < trials; ++t) {
    const std::int64_t den = 1 + static_cast<std::int64_t>(rng.below(64));
    for (auto& v : values) {
      v.pos = static_cast<std::int64_t>(rng.below(den + 1));
      v.neg = static_cast<std::int64_t>(rng.below(den + 1));
    }
    if (refutes(s, values, den, d, scratch)) return to_valuation(s.atom_table, values, den);
  }
  return std::nullopt;
}

}  // namespace

std::optional<Valuation> sample_falsify(const Formula& f, const Filter& d, LogicId logic, int trials,
                                        std::uint64_t seed) {
  return entails_sample({}, f, d, logic, trials, seed);
}

std::optional<Valuation> entails_sample(const std::vector<Formula>& gamma, const Formula& f, const Filter& d,
                                        LogicId logic, int trials, std::uint64_t seed) {
  SampleTarget s;
  std::set<std::string> names;
  for (const auto& g : gamma) {
    auto a = atoms(g);
    names.insert(a.begin(), a.end());
  }
  auto a = atoms(f);
  names.insert(a.begin(), a.end());
  s.atom_table.assign(names.begin(), names.end());
  for (const auto& g : gamma) s.premises.emplace_back(g, logic, s.atom_table);
  s.goal.emplace(f, logic, s.atom_table);
  return search(s, d, trials, seed);
}

}  // namespace tableau2d
