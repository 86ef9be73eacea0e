#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tableau2d/formula.hpp"
#include "tableau2d/rational.hpp"

namespace tableau2d {

struct Var {
  enum class Kind : std::uint8_t { FormulaLeft, FormulaRight, Param, Binary };

  Kind kind = Kind::Param;
  std::uint32_t index = 0;
  Formula formula;

  static Var left(const Formula& f) { return {Kind::FormulaLeft, 0, f}; }
  static Var right(const Formula& f) { return {Kind::FormulaRight, 0, f}; }
  static Var param(std::uint32_t i) { return {Kind::Param, i, Formula()}; }
  static Var binary(std::uint32_t i) { return {Kind::Binary, i, Formula()}; }

  bool is_formula() const { return kind == Kind::FormulaLeft || kind == Kind::FormulaRight; }
  // x[p]^L, x[p]^R, j3, y2
  std::string name() const;
  std::size_t hash() const;

  friend bool operator==(const Var& a, const Var& b) {
    return a.kind == b.kind && a.index == b.index && (!a.is_formula() || a.formula == b.formula);
  }
  friend bool operator<(const Var& a, const Var& b);
};

struct VarHash {
  std::size_t operator()(const Var& v) const { return v.hash(); }
};

class AffineExpr {
 public:
  AffineExpr() = default;
  AffineExpr(Rational constant) : constant_(std::move(constant)) {}  // NOLINT: implicit by design
  AffineExpr(int constant) : constant_(constant) {}                   // NOLINT
  static AffineExpr of(const Var& v, Rational coef = 1);

  const Rational& constant() const { return constant_; }
  const std::vector<std::pair<Var, Rational>>& terms() const { return terms_; }
  bool is_constant() const { return terms_.empty(); }
  Rational coefficient(const Var& v) const;

  AffineExpr& operator+=(const AffineExpr& o);
  AffineExpr& operator-=(const AffineExpr& o);
  AffineExpr& operator*=(const Rational& k);
  friend AffineExpr operator+(AffineExpr a, const AffineExpr& b) { return a += b; }
  friend AffineExpr operator-(AffineExpr a, const AffineExpr& b) { return a -= b; }
  friend AffineExpr operator*(AffineExpr a, const Rational& k) { return a *= k; }
  friend AffineExpr operator-(AffineExpr a) { return a *= Rational(-1); }

  AffineExpr substitute(const Var& v, const Rational& value) const;
  Rational evaluate(const std::map<Var, Rational>& model) const;
  std::size_t hash() const;
  friend bool operator==(const AffineExpr& a, const AffineExpr& b);

  std::string str() const;

 private:
  void add_term(const Var& v, const Rational& c);

  Rational constant_;
  std::vector<std::pair<Var, Rational>> terms_;
};

enum class Rel : std::uint8_t { Le, Lt };

struct LinIneq {
  AffineExpr lhs;
  Rel rel = Rel::Le;
  AffineExpr rhs;

  // lhs - rhs, compared against 0.
  AffineExpr normalized() const { return lhs - rhs; }
  bool holds(const std::map<Var, Rational>& model) const;
  std::string str() const;
  friend bool operator==(const LinIneq&, const LinIneq&) = default;
};

inline LinIneq le(AffineExpr a, AffineExpr b) { return {std::move(a), Rel::Le, std::move(b)}; }
inline LinIneq lt(AffineExpr a, AffineExpr b) { return {std::move(a), Rel::Lt, std::move(b)}; }
inline LinIneq ge(AffineExpr a, AffineExpr b) { return {std::move(b), Rel::Le, std::move(a)}; }
inline LinIneq gt(AffineExpr a, AffineExpr b) { return {std::move(b), Rel::Lt, std::move(a)}; }

using Model = std::map<Var, Rational>;

// One row of an elimination trace: sum(terms) + constant (< or <=) 0.
struct CertificateRow {
  enum class Origin : std::uint8_t { Input, LowerBound, UpperBound, Combination };

  std::vector<std::pair<Var, Rational>> terms;
  Rational constant;
  bool strict = false;
  Origin origin = Origin::Input;
  std::size_t input_index = 0;  // Input: position in the system
  std::optional<Var> var;       // bound variable, or the variable eliminated
  std::size_t upper = 0, lower = 0;  // Combination: earlier rows with +var and -var

  std::string str() const;
};

// Derivation DAG in topological order; the last row is a violated constant row.
struct Certificate {
  std::vector<CertificateRow> rows;

  std::vector<std::string> lines() const;
};

// Recomputes every combination and checks the sources and the final contradiction.
bool replay(const Certificate& cert, const std::vector<LinIneq>& system);

struct Feasibility {
  bool sat = false;
  Model model;                             // when sat
  std::optional<Certificate> certificate;  // when unsat and decided by a single elimination
  std::size_t assignments_tried = 0;       // binary search nodes
};

struct FmOptions {
  // Variables eliminated first, in this order; the rest follow the heuristic.
  std::vector<Var> elimination_order;
  bool record_certificate = true;
};

// Variables listed in `vars` but absent from the system still get a model value.
Feasibility fm_feasible(const std::vector<LinIneq>& system, const std::vector<Var>& vars = {},
                        const FmOptions& options = {});

Feasibility feasible_with_binaries(const std::vector<LinIneq>& system, const std::vector<Var>& vars,
                                   const std::vector<Var>& binaries);

// Tries to satisfy `system` while the variables of `base` keep their values;
// only the remaining variables are solved for. A miss says nothing about the
// feasibility of the system itself. The model covers the system's variables.
std::optional<Model> extend_model(const std::vector<LinIneq>& system, const Model& base);

}  // namespace tableau2d
