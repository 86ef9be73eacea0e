#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "tableau2d/semantics.hpp"

namespace tableau2d {

struct ProofLeaf {
  bool closed = false;
  // Closed: the infeasibility evidence, one line per derivation step.
  std::vector<std::string> certificate;
  // Open: the satisfying assignment of the branch, "term = value".
  std::vector<std::string> assignment;
  std::optional<Valuation> model;
};

// A node records the constraints it introduced, then either the rule applied
// next (with one child per conclusion branch) or a leaf verdict.
struct ProofNode {
  std::vector<std::string> added;
  std::string rule;
  std::string premise;
  std::vector<ProofNode> children;
  std::optional<ProofLeaf> leaf;

  std::size_t node_count() const;
  std::size_t leaf_count() const;
};

struct TableauRun {
  std::string label;  // e.g. "f <=1 c, c < x"
  bool closed = false;
  ProofNode root;
  std::size_t branches = 0;
};

struct Verdict {
  bool valid = false;
  std::vector<TableauRun> tableaux;
  std::optional<Valuation> countermodel;
};

enum class Mode { Branching, Linear };

struct TableauOptions {
  Mode mode = Mode::Branching;
  int jobs = 1;
  bool keep_tree = true;
  // Łukasiewicz only: expand φ→0 and φ⇾0 with the rules for ~φ.
  bool derived_rules = true;
};

// Indented text rendering; certificates are included when `explain` is set.
std::string render_tree(const ProofNode& root, bool explain);

}  // namespace tableau2d
