#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "tableau2d/formula.hpp"
#include "tableau2d/semantics.hpp"

namespace tableau2d {

// A side of a Gödel constraint: a coordinate of a formula, or a constant.
struct OTerm {
  enum class Kind : std::uint8_t { Coord, Const0, Const1 };
  Kind kind = Kind::Const0;
  int coord = 0;
  Formula formula;

  static OTerm at(int coord, Formula f) { return {Kind::Coord, coord, std::move(f)}; }
  static OTerm zero() { return {Kind::Const0, 0, {}}; }
  static OTerm one() { return {Kind::Const1, 0, {}}; }

  bool is_const() const { return kind != Kind::Coord; }
  // Coordinate of a non-atomic formula (constants 0 and 1 included): a rule applies.
  bool is_compound() const { return kind == Kind::Coord && !formula.is_atom(); }
  std::size_t hash() const;
  std::string str() const;

  friend bool operator==(const OTerm& a, const OTerm& b);
  friend bool operator<(const OTerm& a, const OTerm& b);
};

struct OTermHash {
  std::size_t operator()(const OTerm& t) const { return t.hash(); }
};

enum class ORel : std::uint8_t { Le, Lt };

struct OConstraint {
  OTerm lhs;
  ORel rel = ORel::Le;
  OTerm rhs;

  std::size_t hash() const { return lhs.hash() * 31 + rhs.hash() * 7 + static_cast<std::size_t>(rel); }
  std::string str() const;
  friend bool operator==(const OConstraint&, const OConstraint&) = default;
};

struct OConstraintHash {
  std::size_t operator()(const OConstraint& c) const { return c.hash(); }
};

inline OConstraint o_le(OTerm a, OTerm b) { return {std::move(a), ORel::Le, std::move(b)}; }
inline OConstraint o_lt(OTerm a, OTerm b) { return {std::move(a), ORel::Lt, std::move(b)}; }

// Terms as nodes, constraints as weak or strict edges. Every graph also holds
// the bounds 0 < 1 and 0 <= t <= 1 for each formula term.
class OGraph {
 public:
  struct Edge {
    std::uint32_t from = 0, to = 0;
    bool strict = false;
    // Index into constraints(), or npos for an implicit bound.
    std::size_t source = npos;
  };
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  OGraph();
  explicit OGraph(const std::vector<OConstraint>& constraints);

  void add(const OConstraint& c);

  const std::vector<OTerm>& nodes() const { return nodes_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<OConstraint>& constraints() const { return constraints_; }
  std::string edge_str(const Edge& e) const;

 private:
  std::uint32_t node(const OTerm& t);

  std::vector<OTerm> nodes_;
  std::unordered_map<OTerm, std::uint32_t, OTermHash> index_;
  std::vector<Edge> edges_;
  std::vector<OConstraint> constraints_;
};

// Strongly connected component per node; components are numbered in reverse
// topological order of the condensation.
std::vector<std::uint32_t> components(const OGraph& g);

// True iff some strongly connected component contains a strict edge. With the
// implicit bounds this covers 0 >= 1, X > 1 and X < 0.
bool closed(const OGraph& g);

// For a closed graph, the edges of one cycle through a strict edge.
std::optional<std::vector<std::string>> strict_cycle(const OGraph& g);

// Value of a term under v (compound formulas are evaluated).
Rational term_value(const OTerm& t, const Valuation& v, LogicId logic);
bool satisfies(const OConstraint& c, const Valuation& v, LogicId logic);

// Countermodel of an open, fully decomposed constraint set. Atom coordinates
// forced to 0 or 1 get that value; the remaining classes of mutually <=-related
// atom coordinates are ordered by reachability and class C gets
// |{C' : C' reaches C}| / (2n + 1) for n atoms. Every constraint of g is
// checked against the result.
Valuation extract_model(const OGraph& g, const std::vector<std::string>& atom_names, LogicId logic);

}  // namespace tableau2d
