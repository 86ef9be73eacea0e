#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tableau2d/formula.hpp"
#include "tableau2d/order_graph.hpp"
#include "tableau2d/proof_tree.hpp"
#include "tableau2d/semantics.hpp"

namespace tableau2d {

struct GRuleResult {
  std::string rule;  // e.g. "→₁⩽", "⤙₂≳"
  bool splitting = false;
  std::vector<std::vector<OConstraint>> branches;
};

// Applies the rule for the premise. The lhs is expanded when it is a compound
// formula term (the ≲ rules), otherwise the rhs (the ≳ rules); 𝔛 is the
// whole other side. Returns nullopt when neither side is compound.
//
// Four rules get an extra constraint in the branch where the compound term is
// constant: →₁> and ⤙₂> add X < 1, →₂< and ⤙₁< add 0 < X. Without it the
// branch is satisfiable while the strict premise is not.
std::optional<GRuleResult> apply_godel_rule(const OConstraint& premise);
bool godel_rule_splits(const OConstraint& premise);

struct GBranch {
  std::vector<OConstraint> constraints;
  std::vector<std::string> trace;  // rules applied, in order
};

// Exhaustive saturation without closure pruning; every complete branch is
// returned. Throws SignatureError if a formula is outside the logic.
std::vector<GBranch> g_saturate(const std::vector<OConstraint>& root, LogicId logic);
bool g_branch_closed(const GBranch& b);

// Model of an open complete branch; every constraint of the branch is checked.
Valuation g_extract_countermodel(const GBranch& b, const std::vector<std::string>& atom_names, LogicId logic);

// Root {1:f < 1}. The filter is validated but does not change the verdict.
Verdict g_prove_valid(const Formula& f, const Filter& d, LogicId logic, const TableauOptions& options = {});

// Premises 1 ≤ 1:φ' when x = 1 and 2:φ' ≤ 0 when y = 0; one tableau from
// 1:f < 1 when x = 1 and one from 0 < 2:f when y = 0. Filters with a
// coordinate strictly between 0 and 1 throw FilterError.
Verdict g_prove_entailment(const std::vector<Formula>& gamma, const Formula& f, const Filter& d, LogicId logic,
                           const TableauOptions& options = {});

}  // namespace tableau2d
