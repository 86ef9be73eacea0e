// Helpers shared by the unit tests: an independent reference evaluator and a
// small random formula generator that does not go through the library's corpus code.
#pragma once

#include <random>
#include <string>
#include <vector>

#include "tableau2d/formula.hpp"
#include "tableau2d/semantics.hpp"

namespace testsupport {

using tableau2d::Formula;
using tableau2d::LogicId;
using tableau2d::Op;
using tableau2d::Rational;
using tableau2d::TruthPair;
using tableau2d::Valuation;

inline Rational rmin(const Rational& a, const Rational& b) { return a < b ? a : b; }
inline Rational rmax(const Rational& a, const Rational& b) { return a < b ? b : a; }

// Clause tables written out longhand, one branch per connective and logic.
inline TruthPair reference_eval(const Formula& f, const Valuation& v, LogicId logic) {
  const bool luk = logic.is_luk();
  switch (f.op()) {
    case Op::Bot: return {0, 1};
    case Op::Top: return {1, 0};
    case Op::Atom: return v.at(f.name());
    case Op::Neg: {
      TruthPair a = reference_eval(f.lhs(), v, logic);
      return {a.neg, a.pos};
    }
    default: break;
  }
  const TruthPair a = reference_eval(f.lhs(), v, logic);
  const TruthPair b = reference_eval(f.rhs(), v, logic);
  switch (f.op()) {
    case Op::And: return {rmin(a.pos, b.pos), rmax(a.neg, b.neg)};
    case Op::Or: return {rmax(a.pos, b.pos), rmin(a.neg, b.neg)};
    case Op::Imp:
      if (luk) return {rmin(1, 1 - a.pos + b.pos), rmax(0, b.neg - a.neg)};
      return {a.pos <= b.pos ? Rational(1) : b.pos, b.neg <= a.neg ? Rational(0) : b.neg};
    case Op::CoImp: return {a.pos <= b.pos ? Rational(0) : a.pos, b.neg <= a.neg ? Rational(1) : a.neg};
    case Op::WImp:
      if (luk) return {rmin(1, 1 - a.pos + b.pos), rmax(0, a.pos + b.neg - 1)};
      return {a.pos <= b.pos ? Rational(1) : b.pos, rmin(a.pos, b.neg)};
    default: break;
  }
  throw std::logic_error("unreachable");
}

inline Rational random_unit(std::mt19937_64& rng, int max_den = 12) {
  std::uniform_int_distribution<int> dd(1, max_den);
  int den = dd(rng);
  std::uniform_int_distribution<int> dn(0, den);
  return tableau2d::make_rational(dn(rng), den);
}

inline Valuation random_valuation(std::mt19937_64& rng, const std::vector<std::string>& names, int max_den = 12) {
  Valuation v;
  for (const auto& n : names) v[n] = {random_unit(rng, max_den), random_unit(rng, max_den)};
  return v;
}

inline Formula random_formula(std::mt19937_64& rng, LogicId logic, int depth, int n_atoms) {
  std::uniform_int_distribution<int> pick(0, 9);
  if (depth == 0 || pick(rng) < 2) {
    int k = std::uniform_int_distribution<int>(0, n_atoms + (logic.is_godel() ? 1 : 0))(rng);
    if (k < n_atoms) return Formula::atom("p" + std::to_string(k + 1));
    return k == n_atoms ? Formula::bot() : Formula::top();
  }
  std::vector<Op> ops{Op::Neg, Op::And, Op::Or};
  if (logic.is_arrow()) {
    ops.push_back(Op::Imp);
    ops.push_back(Op::Imp);
    if (logic.is_godel()) ops.push_back(Op::CoImp);
  } else {
    ops.push_back(Op::WImp);
    ops.push_back(Op::WImp);
  }
  Op op = ops[std::uniform_int_distribution<std::size_t>(0, ops.size() - 1)(rng)];
  if (op == Op::Neg) return Formula::neg(random_formula(rng, logic, depth - 1, n_atoms));
  return Formula::binary(op, random_formula(rng, logic, depth - 1, n_atoms),
                         random_formula(rng, logic, depth - 1, n_atoms));
}

inline Valuation val(std::initializer_list<std::pair<const char*, std::pair<Rational, Rational>>> items) {
  Valuation v;
  for (const auto& [n, p] : items) v[n] = {p.first, p.second};
  return v;
}

inline Rational q(long n, long d = 1) { return tableau2d::make_rational(n, d); }

}  // namespace testsupport
