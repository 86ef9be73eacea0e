#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "tableau2d/formula.hpp"
#include "tableau2d/linear.hpp"
#include "tableau2d/proof_tree.hpp"
#include "tableau2d/semantics.hpp"

namespace tableau2d {

enum class Dir : std::uint8_t { Le, Ge };

// φ ⩽ₖ i or φ ⩾ₖ i. The bound mentions only Param/Binary variables.
struct Labelled {
  Formula formula;
  int coord = 1;
  Dir dir = Dir::Le;
  AffineExpr bound;

  std::string str() const;
  friend bool operator==(const Labelled& a, const Labelled& b) {
    return a.coord == b.coord && a.dir == b.dir && a.formula == b.formula && a.bound == b.bound;
  }
};

struct LabelledHash {
  std::size_t operator()(const Labelled& l) const {
    return l.formula.hash() * 31 + l.bound.hash() * 7 + static_cast<std::size_t>(l.coord * 2 + (l.dir == Dir::Ge));
  }
};

inline Labelled lab_le(Formula f, int coord, AffineExpr b) { return {std::move(f), coord, Dir::Le, std::move(b)}; }
inline Labelled lab_ge(Formula f, int coord, AffineExpr b) { return {std::move(f), coord, Dir::Ge, std::move(b)}; }

using LukConstraint = std::variant<Labelled, LinIneq>;
std::string to_string(const LukConstraint& c);

// Fresh variable counters carried by a branch.
struct FreshCounter {
  std::uint32_t next_param = 0;
  std::uint32_t next_binary = 0;
};

struct LukRuleResult {
  std::string rule;
  bool splitting = false;
  std::vector<std::vector<LukConstraint>> branches;
  std::vector<Var> binaries;  // linear mode only
};

// Applies the rule for the premise's main connective. Returns nullopt for atoms.
// In linear mode every rule yields a single branch, with binaries for the
// rules that would otherwise split. With `derived`, φ→0 and φ⇾0 use the
// non-splitting rules for ~φ instead of the implication rules.
std::optional<LukRuleResult> apply_luk_rule(const Labelled& premise, FreshCounter& fresh, Mode mode = Mode::Branching,
                                            bool derived = false);
bool luk_rule_splits(const Labelled& premise, bool derived = false);

struct LukBranch {
  std::vector<LukConstraint> constraints;
  std::vector<Var> binaries;
  FreshCounter fresh;
};

// Exhaustive saturation without closure pruning; every complete branch is returned.
std::vector<LukBranch> saturate(const std::vector<LukConstraint>& root, FreshCounter fresh = {});
// One branch carrying binaries in place of splits.
LukBranch saturate_linear(const std::vector<LukConstraint>& root, FreshCounter fresh = {});

std::vector<LinIneq> translate(const std::vector<LukConstraint>& constraints);
bool branch_closed(const LukBranch& b);

// Reads the atom values off a model of the translated branch; atoms without
// variables get (0,0). Checks every root constraint against the result.
Valuation extract_countermodel(const std::vector<LukConstraint>& root, const Model& model,
                               const std::vector<std::string>& atom_names, LogicId logic);

Verdict prove_valid(const Formula& f, const Filter& d, LogicId logic, const TableauOptions& options = {});
Verdict prove_entailment(const std::vector<Formula>& gamma, const Formula& f, const Filter& d, LogicId logic,
                         const TableauOptions& options = {});

}  // namespace tableau2d
