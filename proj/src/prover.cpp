#include "tableau2d/prover.hpp"

#include "tableau2d/godel_tableau.hpp"
#include "tableau2d/luk_tableau.hpp"

namespace tableau2d {

Verdict check_valid(const Formula& f, const Filter& d, LogicId logic, const TableauOptions& options) {
  return logic.is_luk() ? prove_valid(f, d, logic, options) : g_prove_valid(f, d, logic, options);
}

Verdict check_entailment(const std::vector<Formula>& gamma, const Formula& f, const Filter& d, LogicId logic,
                         const TableauOptions& options) {
  return logic.is_luk() ? prove_entailment(gamma, f, d, logic, options)
                        : g_prove_entailment(gamma, f, d, logic, options);
}

}  // namespace tableau2d
