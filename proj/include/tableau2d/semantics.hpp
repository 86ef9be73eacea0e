#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "tableau2d/formula.hpp"
#include "tableau2d/rational.hpp"

namespace tableau2d {

template <class Scalar>
struct BasicTruthPair {
  Scalar pos{};
  Scalar neg{};
  friend bool operator==(const BasicTruthPair&, const BasicTruthPair&) = default;
};

using TruthPair = BasicTruthPair<Rational>;
using Valuation = std::map<std::string, TruthPair>;

struct Filter {
  Rational x;
  Rational y;
  friend bool operator==(const Filter&, const Filter&) = default;
};

class EvalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class FilterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

std::string to_string(const TruthPair& t);
std::string to_string(const Filter& d);

// (1,0) for Arrow logics, (1,1) for WArrow logics.
Filter default_filter(LogicId logic);
// Range check, plus y = 1 for WArrow logics.
void validate_filter(const Filter& d, LogicId logic);

// Connective clauses over any ordered field-like scalar; `one` is the unit.
// Integer numerators over a common denominator D work with one = D.
namespace clauses {

template <class S>
const S& min_of(const S& a, const S& b) { return b < a ? b : a; }
template <class S>
const S& max_of(const S& a, const S& b) { return a < b ? b : a; }

template <class S>
BasicTruthPair<S> conj(const BasicTruthPair<S>& a, const BasicTruthPair<S>& b) {
  return {min_of(a.pos, b.pos), max_of(a.neg, b.neg)};
}
template <class S>
BasicTruthPair<S> disj(const BasicTruthPair<S>& a, const BasicTruthPair<S>& b) {
  return {max_of(a.pos, b.pos), min_of(a.neg, b.neg)};
}

// Łukasiewicz residuum and truncated difference.
template <class S>
S luk_res(const S& a, const S& b, const S& one) {
  S t = one - a + b;
  return one < t ? one : t;
}
template <class S>
S luk_sub(const S& a, const S& b) {
  S t = a - b;
  return t < S(0) ? S(0) : t;
}
template <class S>
S luk_tnorm(const S& a, const S& b, const S& one) {
  S t = a + b - one;
  return t < S(0) ? S(0) : t;
}

template <class S>
S godel_res(const S& a, const S& b, const S& one) { return a <= b ? one : b; }
// a ⤙ b: 0 when a <= b, otherwise a.
template <class S>
S godel_cores(const S& a, const S& b) { return a <= b ? S(0) : a; }

template <class S>
BasicTruthPair<S> imp(Base base, const BasicTruthPair<S>& a, const BasicTruthPair<S>& b, const S& one) {
  if (base == Base::Luk) return {luk_res(a.pos, b.pos, one), luk_sub(b.neg, a.neg)};
  return {godel_res(a.pos, b.pos, one), godel_cores(b.neg, a.neg)};
}
template <class S>
BasicTruthPair<S> coimp(const BasicTruthPair<S>& a, const BasicTruthPair<S>& b, const S& one) {
  return {godel_cores(a.pos, b.pos), godel_res(b.neg, a.neg, one)};
}
template <class S>
BasicTruthPair<S> wimp(Base base, const BasicTruthPair<S>& a, const BasicTruthPair<S>& b, const S& one) {
  if (base == Base::Luk) return {luk_res(a.pos, b.pos, one), luk_tnorm(a.pos, b.neg, one)};
  return {godel_res(a.pos, b.pos, one), min_of(a.pos, b.neg)};
}

}  // namespace clauses

// Postorder program for repeated evaluation over a fixed atom order.
class CompiledFormula {
 public:
  CompiledFormula(const Formula& f, LogicId logic);
  // Shares one atom table across several formulas.
  CompiledFormula(const Formula& f, LogicId logic, const std::vector<std::string>& atom_table);

  const std::vector<std::string>& atoms() const { return atoms_; }
  LogicId logic() const { return logic_; }

  template <class S>
  BasicTruthPair<S> evaluate(std::span<const BasicTruthPair<S>> atom_values, const S& one,
                             std::vector<BasicTruthPair<S>>& scratch) const {
    scratch.resize(code_.size());
    for (std::size_t k = 0; k < code_.size(); ++k) {
      const Instr& in = code_[k];
      auto& out = scratch[k];
      switch (in.op) {
        case Op::Bot: out = {S(0), one}; break;
        case Op::Top: out = {one, S(0)}; break;
        case Op::Atom: out = atom_values[in.a]; break;
        case Op::Neg: out = {scratch[in.a].neg, scratch[in.a].pos}; break;
        case Op::And: out = clauses::conj(scratch[in.a], scratch[in.b]); break;
        case Op::Or: out = clauses::disj(scratch[in.a], scratch[in.b]); break;
        case Op::Imp: out = clauses::imp(logic_.base, scratch[in.a], scratch[in.b], one); break;
        case Op::CoImp: out = clauses::coimp(scratch[in.a], scratch[in.b], one); break;
        case Op::WImp: out = clauses::wimp(logic_.base, scratch[in.a], scratch[in.b], one); break;
      }
    }
    return scratch.back();
  }

  template <class S>
  BasicTruthPair<S> evaluate(std::span<const BasicTruthPair<S>> atom_values, const S& one) const {
    std::vector<BasicTruthPair<S>> scratch;
    return evaluate(atom_values, one, scratch);
  }

 private:
  struct Instr {
    Op op;
    std::uint32_t a = 0, b = 0;
  };
  void compile(const Formula& f);

  LogicId logic_;
  std::vector<std::string> atoms_;
  std::vector<Instr> code_;
};

TruthPair eval(const Formula& f, const Valuation& v, LogicId logic);

bool is_designated(const TruthPair& t, const Filter& d);
Valuation dual_valuation(const Valuation& v);
TruthPair dual_pair(const TruthPair& t);
bool conflation_closed(const Filter& d);
Filter normalize_filter(const Filter& d);

// Corner sweep, then the {0,1/4,1/2,3/4,1}^2 grid (when small enough), then
// `trials` seeded random valuations with denominators up to 64.
std::optional<Valuation> sample_falsify(const Formula& f, const Filter& d, LogicId logic, int trials,
                                        std::uint64_t seed);
std::optional<Valuation> entails_sample(const std::vector<Formula>& gamma, const Formula& f, const Filter& d,
                                        LogicId logic, int trials, std::uint64_t seed);

}  // namespace tableau2d
