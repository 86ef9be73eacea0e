#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "tableau2d/formula.hpp"
#include "tableau2d/semantics.hpp"

namespace tableau2d {

class OracleError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Exhaustive G² validity check for formulas with at most 3 atoms. Each of the
// 2m atom coordinates ranges over {0, 1/(2m+1), ..., 1}; f is valid iff its
// first coordinate is 1 at every grid point. Every Gödel clause returns 0, 1
// or one of its arguments, so the verdict depends only on how the 2m values
// are ordered among themselves and against 0 and 1, and the grid has enough
// interior points to realise every such order.
bool godel_validity_oracle(const Formula& f, LogicId logic);

// Sweeps every valuation whose coordinates are multiples of 1/denominator and
// returns the first one that is not designated. A miss proves nothing. Throws
// OracleError when the sweep exceeds kRefuterBudget points.
std::optional<Valuation> luk_refuter(const Formula& f, const Filter& d, LogicId logic, int denominator);
inline constexpr std::uint64_t kRefuterBudget = std::uint64_t{1} << 24;

struct CorpusEntry {
  LogicId logic;
  Formula formula;
};

struct Corpus {
  std::uint64_t seed = 0;
  int max_depth = 0;
  int atoms = 0;
  std::vector<CorpusEntry> formulas;
};

// Seeded random formulas over atoms p1..p{atoms}, within the logic's
// signature and the depth cap. The generator uses only raw mt19937_64 output,
// so a seed gives the same corpus on every platform.
Corpus gen_corpus(std::uint64_t seed, int count, int max_depth, int atoms, LogicId logic);

}  // namespace tableau2d
