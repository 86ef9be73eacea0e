#pragma once

#include <vector>

#include "tableau2d/formula.hpp"
#include "tableau2d/proof_tree.hpp"
#include "tableau2d/semantics.hpp"

namespace tableau2d {

// Validity and entailment for any of the four logics: the Łukasiewicz
// tableau for luk-*, the order-constraint tableau for godel-*. Mode and
// derived_rules only affect the Łukasiewicz side.
Verdict check_valid(const Formula& f, const Filter& d, LogicId logic, const TableauOptions& options = {});
Verdict check_entailment(const std::vector<Formula>& gamma, const Formula& f, const Filter& d, LogicId logic,
                         const TableauOptions& options = {});

}  // namespace tableau2d
