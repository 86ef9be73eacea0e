#include "tableau2d/oracles.hpp"

#include <random>
#include <string>

namespace tableau2d {

namespace {

using Pair = BasicTruthPair<long>;

// Calls visit(values) for every assignment of 0..top to `slots` integers,
// stopping when visit returns false. Returns false iff stopped early.
template <class Visit>
bool sweep(std::size_t slots, long top, Visit&& visit) {
  std::vector<long> values(slots, 0);
  while (true) {
    if (!visit(values)) return false;
    std::size_t k = 0;
    while (k < slots && values[k] == top) values[k++] = 0;
    if (k == slots) return true;
    ++values[k];
  }
}

std::vector<Pair> pairs_of(const std::vector<long>& values) {
  std::vector<Pair> out(values.size() / 2);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = {values[2 * i], values[2 * i + 1]};
  return out;
}

}  // namespace

bool godel_validity_oracle(const Formula& f, LogicId logic) {
  if (!logic.is_godel()) throw OracleError("godel_validity_oracle needs a godel-* logic, got " + logic.name());
  const CompiledFormula code(f, logic);
  const std::size_t m = code.atoms().size();
  if (m > 3) throw OracleError("godel_validity_oracle handles at most 3 atoms, got " + std::to_string(m));
  const long one = static_cast<long>(2 * m + 1);
  std::vector<Pair> scratch;
  return sweep(2 * m, one, [&](const std::vector<long>& values) {
    const auto atoms = pairs_of(values);
    return code.evaluate<long>(atoms, one, scratch).pos == one;
  });
}

std::optional<Valuation> luk_refuter(const Formula& f, const Filter& d, LogicId logic, int denominator) {
  if (denominator < 1) throw OracleError("luk_refuter needs a positive denominator");
  const CompiledFormula code(f, logic);
  const std::size_t slots = 2 * code.atoms().size();
  double points = 1;
  for (std::size_t i = 0; i < slots; ++i) points *= denominator + 1;
  if (points > static_cast<double>(kRefuterBudget)) {
    throw OracleError("luk_refuter: " + std::to_string(code.atoms().size()) + " atoms at denominator " +
                      std::to_string(denominator) + " exceed the sweep budget");
  }
  const long one = denominator;
  // pos/one >= x and neg/one <= y, cross-multiplied.
  const Rational x_scaled = d.x * one, y_scaled = d.y * one;
  std::vector<Pair> scratch;
  std::optional<Valuation> hit;
  sweep(slots, one, [&](const std::vector<long>& values) {
    const auto atoms = pairs_of(values);
    const Pair r = code.evaluate<long>(atoms, one, scratch);
    if (r.pos >= x_scaled && r.neg <= y_scaled) return true;
    Valuation v;
    for (std::size_t i = 0; i < atoms.size(); ++i) {
      v[code.atoms()[i]] = {make_rational(atoms[i].pos, one), make_rational(atoms[i].neg, one)};
    }
    hit = std::move(v);
    return false;
  });
  return hit;
}

// ---------------------------------------------------------------- corpus

namespace {

class Generator {
 public:
  Generator(std::uint64_t seed, int atoms, LogicId logic) : rng_(seed), atoms_(atoms), logic_(logic) {
    // Weighted connective table.
    add(Op::Neg, 2);
    add(Op::And, 2);
    add(Op::Or, 2);
    if (logic.is_arrow()) {
      add(Op::Imp, 3);
      if (logic.is_godel()) add(Op::CoImp, 1);
    } else {
      add(Op::WImp, 3);
    }
  }

  Formula formula(int depth, bool root) {
    if (depth == 0 || (!root && below(10) < 3)) return leaf();
    const Op op = ops_[below(ops_.size())];
    if (op == Op::Neg) return Formula::neg(formula(depth - 1, false));
    Formula a = formula(depth - 1, false);
    Formula b = formula(depth - 1, false);
    return Formula::binary(op, std::move(a), std::move(b));
  }

 private:
  void add(Op op, int weight) { ops_.insert(ops_.end(), weight, op); }

  // Plain modulo keeps the stream identical across standard libraries.
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(rng_() % n); }

  Formula leaf() {
    // Atoms weigh 4 each, 0 weighs 1, and 1 (Gödel only) weighs 1.
    const std::size_t constants = logic_.is_godel() ? 2 : 1;
    const std::size_t k = below(4 * static_cast<std::size_t>(atoms_) + constants);
    if (k < 4 * static_cast<std::size_t>(atoms_)) return Formula::atom("p" + std::to_string(k / 4 + 1));
    return k == 4 * static_cast<std::size_t>(atoms_) ? Formula::bot() : Formula::top();
  }

  std::mt19937_64 rng_;
  int atoms_;
  LogicId logic_;
  std::vector<Op> ops_;
};

}  // namespace

Corpus gen_corpus(std::uint64_t seed, int count, int max_depth, int atoms, LogicId logic) {
  if (atoms < 1) throw OracleError("gen_corpus needs at least one atom");
  Corpus c{seed, max_depth, atoms, {}};
  Generator g(seed, atoms, logic);
  for (int i = 0; i < count; ++i) c.formulas.push_back({logic, g.formula(max_depth, true)});
  return c;
}

}  // namespace tableau2d
