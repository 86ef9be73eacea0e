#include "tableau2d/order_graph.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <stdexcept>
#include <unordered_map>

namespace tableau2d {

// ---------------------------------------------------------------- terms

std::size_t OTerm::hash() const {
  if (kind != Kind::Coord) return kind == Kind::Const0 ? 0x51 : 0x52;
  return formula.hash() * 3 + static_cast<std::size_t>(coord);
}

std::string OTerm::str() const {
  switch (kind) {
    case Kind::Const0: return "0";
    case Kind::Const1: return "1";
    case Kind::Coord: break;
  }
  std::string f = render(formula);
  if (is_binary(formula.op())) f = "(" + f + ")";
  return std::to_string(coord) + ":" + f;
}

bool operator==(const OTerm& a, const OTerm& b) {
  if (a.kind != b.kind) return false;
  return a.kind != OTerm::Kind::Coord || (a.coord == b.coord && a.formula == b.formula);
}

bool operator<(const OTerm& a, const OTerm& b) {
  if (a.kind != b.kind) return a.kind < b.kind;
  if (a.kind != OTerm::Kind::Coord) return false;
  if (a.coord != b.coord) return a.coord < b.coord;
  return a.formula < b.formula;
}

std::string OConstraint::str() const { return lhs.str() + (rel == ORel::Le ? " ≤ " : " < ") + rhs.str(); }

// ---------------------------------------------------------------- graph

namespace {

constexpr std::uint32_t kZero = 0, kOne = 1;

}  // namespace

OGraph::OGraph() {
  nodes_ = {OTerm::zero(), OTerm::one()};
  edges_.push_back({kZero, kOne, true, npos});
}

OGraph::OGraph(const std::vector<OConstraint>& constraints) : OGraph() {
  for (const auto& c : constraints) add(c);
}

std::uint32_t OGraph::node(const OTerm& t) {
  if (t.kind == OTerm::Kind::Const0) return kZero;
  if (t.kind == OTerm::Kind::Const1) return kOne;
  const auto [it, inserted] = index_.emplace(t, static_cast<std::uint32_t>(nodes_.size()));
  if (!inserted) return it->second;
  const std::uint32_t id = it->second;
  nodes_.push_back(t);
  edges_.push_back({kZero, id, false, npos});
  edges_.push_back({id, kOne, false, npos});
  return id;
}

void OGraph::add(const OConstraint& c) {
  const std::uint32_t a = node(c.lhs), b = node(c.rhs);
  edges_.push_back({a, b, c.rel == ORel::Lt, constraints_.size()});
  constraints_.push_back(c);
}

std::string OGraph::edge_str(const Edge& e) const {
  if (e.source != npos) return constraints_[e.source].str();
  return nodes_[e.from].str() + (e.strict ? " < " : " ≤ ") + nodes_[e.to].str() + " (bound)";
}

std::vector<std::uint32_t> components(const OGraph& g) {
  const std::size_t n = g.nodes().size();
  std::vector<std::vector<std::uint32_t>> adj(n);
  for (const auto& e : g.edges()) adj[e.from].push_back(e.to);

  // Iterative Tarjan.
  constexpr std::uint32_t unvisited = static_cast<std::uint32_t>(-1);
  std::vector<std::uint32_t> index(n, unvisited), low(n, 0), comp(n, unvisited);
  std::vector<bool> on_stack(n, false);
  std::vector<std::uint32_t> stack;
  std::vector<std::pair<std::uint32_t, std::size_t>> calls;
  std::uint32_t counter = 0, next_comp = 0;
  for (std::uint32_t root = 0; root < n; ++root) {
    if (index[root] != unvisited) continue;
    calls.push_back({root, 0});
    while (!calls.empty()) {
      auto& [v, pos] = calls.back();
      if (pos == 0 && index[v] == unvisited) {
        index[v] = low[v] = counter++;
        stack.push_back(v);
        on_stack[v] = true;
      }
      if (pos < adj[v].size()) {
        const std::uint32_t w = adj[v][pos++];
        if (index[w] == unvisited) {
          calls.push_back({w, 0});
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      if (low[v] == index[v]) {
        std::uint32_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp[w] = next_comp;
        } while (w != v);
        ++next_comp;
      }
      const std::uint32_t done = v;
      calls.pop_back();
      if (!calls.empty()) {
        const std::uint32_t parent = calls.back().first;
        low[parent] = std::min(low[parent], low[done]);
      }
    }
  }
  return comp;
}

bool closed(const OGraph& g) {
  const auto comp = components(g);
  return std::any_of(g.edges().begin(), g.edges().end(),
                     [&](const OGraph::Edge& e) { return e.strict && comp[e.from] == comp[e.to]; });
}

std::optional<std::vector<std::string>> strict_cycle(const OGraph& g) {
  const auto comp = components(g);
  const auto& edges = g.edges();
  auto strict = std::find_if(edges.begin(), edges.end(),
                             [&](const OGraph::Edge& e) { return e.strict && comp[e.from] == comp[e.to]; });
  if (strict == edges.end()) return std::nullopt;
  // Shortest path back from the strict edge's head to its tail inside the component.
  const std::uint32_t target = strict->from, start = strict->to, c = comp[start];
  std::vector<std::vector<std::size_t>> out(g.nodes().size());
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (comp[edges[i].from] == c && comp[edges[i].to] == c) out[edges[i].from].push_back(i);
  }
  std::vector<std::size_t> via(g.nodes().size(), OGraph::npos);
  std::vector<bool> seen(g.nodes().size(), false);
  std::deque<std::uint32_t> queue{start};
  seen[start] = true;
  while (!queue.empty() && !seen[target]) {
    const std::uint32_t v = queue.front();
    queue.pop_front();
    for (std::size_t i : out[v]) {
      const std::uint32_t w = edges[i].to;
      if (seen[w]) continue;
      seen[w] = true;
      via[w] = i;
      queue.push_back(w);
    }
  }
  std::vector<std::string> lines{g.edge_str(*strict)};
  std::vector<std::string> back;
  for (std::uint32_t v = target; v != start; v = edges[via[v]].from) back.push_back(g.edge_str(edges[via[v]]));
  lines.insert(lines.end(), back.rbegin(), back.rend());
  return lines;
}

// ---------------------------------------------------------------- models

Rational term_value(const OTerm& t, const Valuation& v, LogicId logic) {
  switch (t.kind) {
    case OTerm::Kind::Const0: return 0;
    case OTerm::Kind::Const1: return 1;
    case OTerm::Kind::Coord: break;
  }
  const TruthPair p = eval(t.formula, v, logic);
  return t.coord == 1 ? p.pos : p.neg;
}

bool satisfies(const OConstraint& c, const Valuation& v, LogicId logic) {
  const Rational a = term_value(c.lhs, v, logic), b = term_value(c.rhs, v, logic);
  return c.rel == ORel::Le ? a <= b : a < b;
}

Valuation extract_model(const OGraph& g, const std::vector<std::string>& atom_names, LogicId logic) {
  std::set<std::string> names(atom_names.begin(), atom_names.end());
  for (const auto& t : g.nodes()) {
    if (t.kind == OTerm::Kind::Coord && t.formula.is_atom()) names.insert(t.formula.name());
  }
  // The atomic part: every atom coordinate, constraints between atomic terms.
  OGraph atomic;
  for (const auto& c : g.constraints()) {
    if (!c.lhs.is_compound() && !c.rhs.is_compound()) atomic.add(c);
  }
  for (const auto& name : names) {
    for (int coord : {1, 2}) {
      const OTerm t = OTerm::at(coord, Formula::atom(name));
      atomic.add(o_le(t, t));
    }
  }
  const auto comp = components(atomic);
  for (const auto& e : atomic.edges()) {
    if (e.strict && comp[e.from] == comp[e.to]) {
      throw std::logic_error("extract_model: constraint set is closed (" + atomic.edge_str(e) + ")");
    }
  }
  const std::uint32_t zero = comp[0], one = comp[1];
  const std::size_t ncomp = *std::max_element(comp.begin(), comp.end()) + 1;
  std::vector<std::set<std::uint32_t>> succ(ncomp);
  for (const auto& e : atomic.edges()) {
    if (comp[e.from] != comp[e.to]) succ[comp[e.from]].insert(comp[e.to]);
  }
  // Unpinned classes reaching each class, itself included.
  std::vector<std::size_t> below(ncomp, 0);
  for (std::uint32_t c = 0; c < ncomp; ++c) {
    if (c == zero || c == one) continue;
    std::vector<bool> seen(ncomp, false);
    std::vector<std::uint32_t> todo{c};
    seen[c] = true;
    while (!todo.empty()) {
      const std::uint32_t x = todo.back();
      todo.pop_back();
      ++below[x];
      for (std::uint32_t y : succ[x]) {
        if (!seen[y]) {
          seen[y] = true;
          todo.push_back(y);
        }
      }
    }
  }
  const Rational denom(static_cast<long>(2 * names.size() + 1));
  auto value = [&](std::uint32_t node) -> Rational {
    const std::uint32_t c = comp[node];
    if (c == zero) return 0;
    if (c == one) return 1;
    return Rational(static_cast<long>(below[c])) / denom;
  };
  std::unordered_map<OTerm, Rational, OTermHash> by_term;
  for (std::uint32_t i = 2; i < atomic.nodes().size(); ++i) by_term.emplace(atomic.nodes()[i], value(i));

  Valuation v;
  for (const auto& name : names) {
    const Formula p = Formula::atom(name);
    v[name] = {by_term.at(OTerm::at(1, p)), by_term.at(OTerm::at(2, p))};
  }
  for (const auto& c : g.constraints()) {
    if (!satisfies(c, v, logic)) throw std::logic_error("extract_model: model violates " + c.str());
  }
  return v;
}

}  // namespace tableau2d
