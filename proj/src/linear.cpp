#include "tableau2d/linear.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace tableau2d {

// ---------------------------------------------------------------- Var

std::string Var::name() const {
  switch (kind) {
    case Kind::FormulaLeft: return "x[" + render(formula) + "]^L";
    case Kind::FormulaRight: return "x[" + render(formula) + "]^R";
    case Kind::Param: return "j" + std::to_string(index);
    case Kind::Binary: return "y" + std::to_string(index);
  }
  return "?";
}

std::size_t Var::hash() const {
  std::size_t h = static_cast<std::size_t>(kind) * 0x9e3779b97f4a7c15ULL;
  return is_formula() ? h ^ formula.hash() : h ^ (index * 0x100000001b3ULL + 7);
}

bool operator<(const Var& a, const Var& b) {
  if (a.kind != b.kind) return a.kind < b.kind;
  if (a.is_formula()) return a.formula < b.formula;
  return a.index < b.index;
}

// ---------------------------------------------------------------- AffineExpr

AffineExpr AffineExpr::of(const Var& v, Rational coef) {
  AffineExpr e;
  e.add_term(v, coef);
  return e;
}

void AffineExpr::add_term(const Var& v, const Rational& c) {
  if (c == 0) return;
  for (auto it = terms_.begin(); it != terms_.end(); ++it) {
    if (it->first == v) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
      return;
    }
  }
  terms_.emplace_back(v, c);
}

Rational AffineExpr::coefficient(const Var& v) const {
  for (const auto& [w, c] : terms_) {
    if (w == v) return c;
  }
  return 0;
}

AffineExpr& AffineExpr::operator+=(const AffineExpr& o) {
  constant_ += o.constant_;
  for (const auto& [v, c] : o.terms_) add_term(v, c);
  return *this;
}

AffineExpr& AffineExpr::operator-=(const AffineExpr& o) {
  constant_ -= o.constant_;
  for (const auto& [v, c] : o.terms_) add_term(v, -c);
  return *this;
}

AffineExpr& AffineExpr::operator*=(const Rational& k) {
  if (k == 0) {
    terms_.clear();
    constant_ = 0;
    return *this;
  }
  constant_ *= k;
  for (auto& t : terms_) t.second *= k;
  return *this;
}

AffineExpr AffineExpr::substitute(const Var& v, const Rational& value) const {
  AffineExpr out(constant_);
  for (const auto& [w, c] : terms_) {
    if (w == v) {
      out.constant_ += c * value;
    } else {
      out.terms_.emplace_back(w, c);
    }
  }
  return out;
}

Rational AffineExpr::evaluate(const Model& model) const {
  Rational s = constant_;
  for (const auto& [v, c] : terms_) {
    auto it = model.find(v);
    if (it == model.end()) throw std::out_of_range("model has no value for " + v.name());
    s += c * it->second;
  }
  return s;
}

std::size_t AffineExpr::hash() const {
  std::size_t h = hash_value(constant_);
  for (const auto& [v, c] : terms_) h += v.hash() * 31 + hash_value(c);
  return h;
}

bool operator==(const AffineExpr& a, const AffineExpr& b) {
  if (a.constant_ != b.constant_ || a.terms_.size() != b.terms_.size()) return false;
  for (const auto& [v, c] : a.terms_) {
    if (b.coefficient(v) != c) return false;
  }
  return true;
}

std::string AffineExpr::str() const {
  std::string out;
  auto append = [&](const Rational& c, const std::string& what) {
    bool neg = c < 0;
    Rational m = neg ? Rational(-c) : c;
    if (out.empty()) {
      if (neg) out += "-";
    } else {
      out += neg ? " - " : " + ";
    }
    if (what.empty()) {
      out += to_string(m);
    } else {
      if (m != 1) out += to_string(m) + "*";
      out += what;
    }
  };
  if (constant_ != 0 || terms_.empty()) append(constant_, "");
  for (const auto& [v, c] : terms_) append(c, v.name());
  return out;
}

bool LinIneq::holds(const Model& model) const {
  Rational l = lhs.evaluate(model), r = rhs.evaluate(model);
  return rel == Rel::Le ? l <= r : l < r;
}

std::string LinIneq::str() const { return lhs.str() + (rel == Rel::Le ? " <= " : " < ") + rhs.str(); }

// ---------------------------------------------------------------- certificates

std::string CertificateRow::str() const {
  AffineExpr e(constant);
  for (const auto& [v, c] : terms) e += AffineExpr::of(v, c);
  std::string s = e.str() + (strict ? " < 0" : " <= 0");
  switch (origin) {
    case Origin::Input: s += "  [input " + std::to_string(input_index) + "]"; break;
    case Origin::LowerBound: s += "  [bound " + var->name() + " >= 0]"; break;
    case Origin::UpperBound: s += "  [bound " + var->name() + " <= 1]"; break;
    case Origin::Combination:
      s += "  [#" + std::to_string(upper) + " + #" + std::to_string(lower) + ", eliminate " + var->name() + "]";
      break;
  }
  return s;
}

std::vector<std::string> Certificate::lines() const {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < rows.size(); ++i) out.push_back("#" + std::to_string(i) + ": " + rows[i].str());
  return out;
}

namespace {

using Terms = std::vector<std::pair<Var, Rational>>;

AffineExpr row_expr(const Terms& terms, const Rational& constant) {
  AffineExpr e(constant);
  for (const auto& [v, c] : terms) e += AffineExpr::of(v, c);
  return e;
}

// a == k*b for some k > 0.
bool positively_proportional(const AffineExpr& a, const AffineExpr& b) {
  std::optional<Rational> k;
  auto check = [&](const Rational& x, const Rational& y) {
    if (x == 0 && y == 0) return true;
    if (x == 0 || y == 0) return false;
    Rational r = x / y;
    if (r <= 0) return false;
    if (k && *k != r) return false;
    k = r;
    return true;
  };
  if (a.terms().size() != b.terms().size()) return false;
  for (const auto& [v, c] : a.terms()) {
    if (!check(c, b.coefficient(v))) return false;
  }
  if (!check(a.constant(), b.constant())) return false;
  return true;
}

bool violated_constant(const Rational& c, bool strict) { return c > 0 || (c == 0 && strict); }

}  // namespace

bool replay(const Certificate& cert, const std::vector<LinIneq>& system) {
  if (cert.rows.empty()) return false;
  for (std::size_t i = 0; i < cert.rows.size(); ++i) {
    const CertificateRow& r = cert.rows[i];
    const AffineExpr e = row_expr(r.terms, r.constant);
    switch (r.origin) {
      case CertificateRow::Origin::Input: {
        if (r.input_index >= system.size()) return false;
        const LinIneq& src = system[r.input_index];
        if ((src.rel == Rel::Lt) != r.strict) return false;
        if (!positively_proportional(e, src.normalized())) return false;
        break;
      }
      case CertificateRow::Origin::LowerBound:
        if (!r.var || r.strict || !positively_proportional(e, -AffineExpr::of(*r.var))) return false;
        break;
      case CertificateRow::Origin::UpperBound:
        if (!r.var || r.strict || !positively_proportional(e, AffineExpr::of(*r.var) - 1)) return false;
        break;
      case CertificateRow::Origin::Combination: {
        if (!r.var || r.upper >= i || r.lower >= i) return false;
        const CertificateRow& u = cert.rows[r.upper];
        const CertificateRow& l = cert.rows[r.lower];
        const AffineExpr ue = row_expr(u.terms, u.constant), le_ = row_expr(l.terms, l.constant);
        const Rational a = ue.coefficient(*r.var), b = le_.coefficient(*r.var);
        if (a <= 0 || b >= 0) return false;
        AffineExpr combined = ue * Rational(-b) + le_ * a;
        if (combined.coefficient(*r.var) != 0) return false;
        if ((u.strict || l.strict) != r.strict) return false;
        if (!positively_proportional(e, combined)) return false;
        break;
      }
    }
  }
  const CertificateRow& last = cert.rows.back();
  return last.terms.empty() && violated_constant(last.constant, last.strict);
}

// ---------------------------------------------------------------- elimination

namespace {

using ITerms = std::vector<std::pair<std::uint32_t, Rational>>;

struct Row {
  ITerms terms;
  Rational c;
  bool strict = false;
  CertificateRow::Origin origin = CertificateRow::Origin::Input;
  std::size_t input_index = 0;
  std::uint32_t var = 0;
  std::uint32_t upper = 0, lower = 0;
  std::size_t terms_hash = 0;  // set when the row is admitted
};

std::size_t hash_terms(const ITerms& t) {
  std::size_t h = t.size();
  for (const auto& [i, c] : t) h = h * 1000003 ^ (i * 0x9e3779b97f4a7c15ULL + hash_value(c));
  return h;
}

// Active rows keyed by their left-hand side, looked up through the arena.
struct TermsKeyHash {
  const std::deque<Row>* arena;
  std::size_t operator()(std::uint32_t id) const { return (*arena)[id].terms_hash; }
};
struct TermsKeyEq {
  const std::deque<Row>* arena;
  bool operator()(std::uint32_t a, std::uint32_t b) const { return (*arena)[a].terms == (*arena)[b].terms; }
};

class Eliminator {
 public:
  Eliminator(const std::vector<LinIneq>& system, const std::vector<Var>& extra, const FmOptions& options)
      : system_(system), options_(options), keys_(16, TermsKeyHash{&arena_}, TermsKeyEq{&arena_}) {
    for (const Var& v : extra) index_of(v);
    for (std::size_t k = 0; k < system.size(); ++k) {
      const AffineExpr e = system[k].normalized();
      Row r;
      r.c = e.constant();
      for (const auto& [v, c] : e.terms()) r.terms.emplace_back(index_of(v), c);
      std::sort(r.terms.begin(), r.terms.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
      r.strict = system[k].rel == Rel::Lt;
      r.origin = CertificateRow::Origin::Input;
      r.input_index = k;
      pending_.push_back(add(std::move(r)));
    }
    for (std::uint32_t i = 0; i < vars_.size(); ++i) {
      Row lo;
      lo.terms.emplace_back(i, Rational(-1));
      lo.origin = CertificateRow::Origin::LowerBound;
      lo.var = i;
      pending_.push_back(add(std::move(lo)));
      Row hi;
      hi.terms.emplace_back(i, Rational(1));
      hi.c = -1;
      hi.origin = CertificateRow::Origin::UpperBound;
      hi.var = i;
      pending_.push_back(add(std::move(hi)));
    }
  }

  Feasibility run() {
    Feasibility out;
    eliminated_.assign(vars_.size(), false);
    active_.clear();
    keys_.clear();
    for (std::uint32_t id : pending_) {
      if (auto bad = admit(id)) return unsat(*bad);
    }
    std::size_t forced = 0;
    for (std::size_t round = 0; round < vars_.size(); ++round) {
      std::uint32_t v = choose(forced);
      if (auto bad = eliminate(v)) return unsat(*bad);
    }
    out.sat = true;
    out.model = back_substitute();
    for (const LinIneq& q : system_) {
      if (!q.holds(out.model)) throw std::logic_error("elimination produced a model violating " + q.str());
    }
    return out;
  }

 private:
  std::uint32_t index_of(const Var& v) {
    auto [it, inserted] = index_.emplace(v, static_cast<std::uint32_t>(vars_.size()));
    if (inserted) vars_.push_back(v);
    return it->second;
  }

  std::uint32_t add(Row r) {
    arena_.push_back(std::move(r));
    return static_cast<std::uint32_t>(arena_.size() - 1);
  }

  // Puts a row into the active set. Returns the row id if it is a violated constant row.
  std::optional<std::uint32_t> admit(std::uint32_t id) {
    Row& r = arena_[id];
    if (r.terms.empty()) {
      if (violated_constant(r.c, r.strict)) return id;
      return std::nullopt;
    }
    const Rational lead = abs(r.terms.front().second);
    if (lead != 1) {
      for (auto& t : r.terms) t.second /= lead;
      r.c /= lead;
    }
    if (r.origin == CertificateRow::Origin::Input || r.origin == CertificateRow::Origin::Combination) {
      // Implied by the bounds 0 <= v <= 1 of its variables, which stay active.
      Rational top = r.c;
      for (const auto& [i, c] : r.terms) {
        if (c > 0) top += c;
      }
      if (!violated_constant(top, r.strict)) return std::nullopt;
    }
    r.terms_hash = hash_terms(r.terms);
    auto [it, inserted] = keys_.emplace(id, active_.size());
    if (inserted) {
      active_.push_back(id);
      return std::nullopt;
    }
    if (at_least_as_tight(r, arena_[active_[it->second]])) active_[it->second] = id;
    return std::nullopt;
  }

  // sum + c <= 0: larger c is tighter; strict wins ties.
  static bool at_least_as_tight(const Row& a, const Row& b) {
    return a.c > b.c || (a.c == b.c && (a.strict || !b.strict));
  }

  std::uint32_t choose(std::size_t& forced) {
    while (forced < options_.elimination_order.size()) {
      auto it = index_.find(options_.elimination_order[forced++]);
      if (it != index_.end() && !eliminated_[it->second]) return it->second;
    }
    std::vector<std::uint64_t> pos(vars_.size(), 0), neg(vars_.size(), 0);
    for (std::uint32_t id : active_) {
      for (const auto& [i, c] : arena_[id].terms) (c > 0 ? pos : neg)[i]++;
    }
    std::uint32_t best = 0;
    bool found = false;
    for (std::uint32_t i = 0; i < vars_.size(); ++i) {
      if (eliminated_[i]) continue;
      if (!found) {
        best = i;
        found = true;
        continue;
      }
      // Net growth of the active set.
      const auto growth = [&](std::uint32_t k) {
        return static_cast<std::int64_t>(pos[k] * neg[k]) - static_cast<std::int64_t>(pos[k] + neg[k]);
      };
      if (growth(i) < growth(best)) best = i;
    }
    return best;
  }

  static const Rational* coefficient(const Row& r, std::uint32_t v) {
    for (const auto& [i, c] : r.terms) {
      if (i == v) return &c;
    }
    return nullptr;
  }

  std::optional<std::uint32_t> eliminate(std::uint32_t v) {
    eliminated_[v] = true;
    std::vector<std::uint32_t> up, down, rest;
    for (std::uint32_t id : active_) {
      const Rational* c = coefficient(arena_[id], v);
      if (c == nullptr) {
        rest.push_back(id);
      } else {
        (*c > 0 ? up : down).push_back(id);
      }
    }
    steps_.push_back({v, {}});
    steps_.back().rows.insert(steps_.back().rows.end(), up.begin(), up.end());
    steps_.back().rows.insert(steps_.back().rows.end(), down.begin(), down.end());

    active_.clear();
    keys_.clear();
    for (std::uint32_t id : rest) {
      keys_.emplace(id, active_.size());
      active_.push_back(id);
    }
    for (std::uint32_t u : up) {
      for (std::uint32_t d : down) {
        if (auto bad = admit(add(combine(u, d, v)))) return bad;
      }
    }
    return std::nullopt;
  }

  Row combine(std::uint32_t u, std::uint32_t d, std::uint32_t v) const {
    const Row& ru = arena_[u];
    const Row& rd = arena_[d];
    const Rational a = *coefficient(ru, v);
    const Rational b = -*coefficient(rd, v);
    Row r;
    r.c = ru.c * b + rd.c * a;
    r.strict = ru.strict || rd.strict;
    r.origin = CertificateRow::Origin::Combination;
    r.var = v;
    r.upper = u;
    r.lower = d;
    auto i = ru.terms.begin(), j = rd.terms.begin();
    while (i != ru.terms.end() || j != rd.terms.end()) {
      if (j == rd.terms.end() || (i != ru.terms.end() && i->first < j->first)) {
        if (i->first != v) r.terms.emplace_back(i->first, i->second * b);
        ++i;
      } else if (i == ru.terms.end() || j->first < i->first) {
        if (j->first != v) r.terms.emplace_back(j->first, j->second * a);
        ++j;
      } else {
        if (i->first != v) {
          Rational c = i->second * b + j->second * a;
          if (c != 0) r.terms.emplace_back(i->first, std::move(c));
        }
        ++i;
        ++j;
      }
    }
    return r;
  }

  Model back_substitute() const {
    std::vector<Rational> value(vars_.size());
    for (auto step = steps_.rbegin(); step != steps_.rend(); ++step) {
      const std::uint32_t v = step->var;
      std::optional<Rational> lo, hi;
      bool lo_strict = false, hi_strict = false;
      for (std::uint32_t id : step->rows) {
        const Row& r = arena_[id];
        Rational a, s = r.c;
        for (const auto& [i, c] : r.terms) {
          if (i == v) {
            a = c;
          } else {
            s += c * value[i];
          }
        }
        Rational bound = -s / a;
        if (a > 0) {
          if (!hi || bound < *hi) {
            hi = bound;
            hi_strict = r.strict;
          } else if (bound == *hi) {
            hi_strict = hi_strict || r.strict;
          }
        } else {
          if (!lo || bound > *lo) {
            lo = bound;
            lo_strict = r.strict;
          } else if (bound == *lo) {
            lo_strict = lo_strict || r.strict;
          }
        }
      }
      if (!lo || !hi) throw std::logic_error("variable lost its bounds during elimination");
      if (*lo == *hi) {
        if (lo_strict || hi_strict) throw std::logic_error("empty interval during back-substitution");
        value[v] = *lo;
      } else {
        value[v] = (*lo + *hi) / 2;
      }
    }
    Model m;
    for (std::uint32_t i = 0; i < vars_.size(); ++i) m.emplace(vars_[i], value[i]);
    return m;
  }

  Feasibility unsat(std::uint32_t bad) const {
    Feasibility out;
    out.sat = false;
    if (!options_.record_certificate) return out;
    std::vector<std::uint32_t> ids;
    std::unordered_set<std::uint32_t> seen;
    std::vector<std::uint32_t> stack{bad};
    while (!stack.empty()) {
      std::uint32_t id = stack.back();
      stack.pop_back();
      if (!seen.insert(id).second) continue;
      ids.push_back(id);
      if (arena_[id].origin == CertificateRow::Origin::Combination) {
        stack.push_back(arena_[id].upper);
        stack.push_back(arena_[id].lower);
      }
    }
    std::sort(ids.begin(), ids.end());
    std::unordered_map<std::uint32_t, std::size_t> pos;
    Certificate cert;
    for (std::uint32_t id : ids) {
      const Row& r = arena_[id];
      CertificateRow cr;
      for (const auto& [i, c] : r.terms) cr.terms.emplace_back(vars_[i], c);
      cr.constant = r.c;
      cr.strict = r.strict;
      cr.origin = r.origin;
      cr.input_index = r.input_index;
      if (r.origin != CertificateRow::Origin::Input) cr.var = vars_[r.var];
      if (r.origin == CertificateRow::Origin::Combination) {
        cr.upper = pos.at(r.upper);
        cr.lower = pos.at(r.lower);
      }
      pos.emplace(id, cert.rows.size());
      cert.rows.push_back(std::move(cr));
    }
    out.certificate = std::move(cert);
    return out;
  }

  struct Step {
    std::uint32_t var;
    std::vector<std::uint32_t> rows;
  };

  const std::vector<LinIneq>& system_;
  const FmOptions& options_;
  std::vector<Var> vars_;
  std::unordered_map<Var, std::uint32_t, VarHash> index_;
  std::deque<Row> arena_;
  std::vector<std::uint32_t> pending_;
  std::vector<std::uint32_t> active_;
  std::unordered_map<std::uint32_t, std::size_t, TermsKeyHash, TermsKeyEq> keys_;
  std::vector<bool> eliminated_;
  std::vector<Step> steps_;
};

Feasibility relaxed_feasible(const std::vector<LinIneq>& system, const std::vector<Var>& vars,
                             const FmOptions& options) {
  return Eliminator(system, vars, options).run();
}

}  // namespace

Feasibility fm_feasible(const std::vector<LinIneq>& system, const std::vector<Var>& vars, const FmOptions& options) {
  for (const LinIneq& q : system) {
    for (const AffineExpr* e : {&q.lhs, &q.rhs}) {
      for (const auto& [v, c] : e->terms()) {
        if (v.kind == Var::Kind::Binary) {
          throw std::invalid_argument("fm_feasible: binary variable " + v.name() + " needs feasible_with_binaries");
        }
      }
    }
  }
  return relaxed_feasible(system, vars, options);
}

namespace {

struct BinarySearch {
  const std::vector<LinIneq>& system;
  const std::vector<Var>& vars;
  const std::vector<Var>& binaries;
  std::vector<std::optional<Rational>> fixed;
  std::size_t nodes = 0;

  std::vector<LinIneq> substituted() const {
    std::vector<LinIneq> out;
    out.reserve(system.size());
    for (const LinIneq& q : system) {
      LinIneq r = q;
      for (std::size_t k = 0; k < binaries.size(); ++k) {
        if (!fixed[k]) continue;
        r.lhs = r.lhs.substitute(binaries[k], *fixed[k]);
        r.rhs = r.rhs.substitute(binaries[k], *fixed[k]);
      }
      out.push_back(std::move(r));
    }
    return out;
  }

  std::optional<Model> dfs() {
    ++nodes;
    FmOptions opts;
    opts.record_certificate = false;
    Feasibility relax = relaxed_feasible(substituted(), vars, opts);
    if (!relax.sat) return std::nullopt;
    std::optional<std::size_t> branch;
    for (std::size_t k = 0; k < binaries.size(); ++k) {
      if (fixed[k]) continue;
      auto it = relax.model.find(binaries[k]);
      const Rational val = it == relax.model.end() ? Rational(0) : it->second;
      if (val != 0 && val != 1) {
        branch = k;
        break;
      }
    }
    if (!branch) {
      Model m = std::move(relax.model);
      for (std::size_t k = 0; k < binaries.size(); ++k) {
        if (fixed[k]) m[binaries[k]] = *fixed[k];
        m.try_emplace(binaries[k], 0);
      }
      return m;
    }
    const std::size_t k = *branch;
    const Rational hint = relax.model.at(binaries[k]);
    const int first = hint > Rational(1, 2) ? 1 : 0;
    for (int value : {first, 1 - first}) {
      fixed[k] = Rational(value);
      if (auto m = dfs()) return m;
    }
    fixed[k].reset();
    return std::nullopt;
  }
};

}  // namespace

Feasibility feasible_with_binaries(const std::vector<LinIneq>& system, const std::vector<Var>& vars,
                                   const std::vector<Var>& binaries) {
  for (const Var& b : binaries) {
    if (b.kind != Var::Kind::Binary) throw std::invalid_argument(b.name() + " is not a binary variable");
  }
  std::vector<Var> all = vars;
  for (const Var& b : binaries) {
    if (std::find(all.begin(), all.end(), b) == all.end()) all.push_back(b);
  }
  BinarySearch search{system, all, binaries, std::vector<std::optional<Rational>>(binaries.size())};
  Feasibility out;
  if (auto m = search.dfs()) {
    out.sat = true;
    out.model = std::move(*m);
    for (const LinIneq& q : system) {
      if (!q.holds(out.model)) throw std::logic_error("binary search produced a model violating " + q.str());
    }
  }
  out.assignments_tried = search.nodes;
  return out;
}


std::optional<Model> extend_model(const std::vector<LinIneq>& system, const Model& base) {
  std::vector<LinIneq> rest;
  Model out;
  for (const LinIneq& q : system) {
    const AffineExpr e = q.normalized();
    AffineExpr reduced(e.constant());
    for (const auto& [v, c] : e.terms()) {
      if (v.kind == Var::Kind::Binary) return std::nullopt;
      auto it = base.find(v);
      if (it == base.end()) {
        reduced += AffineExpr::of(v, c);
      } else {
        reduced += AffineExpr(c * it->second);
        out.insert(*it);
      }
    }
    if (reduced.is_constant()) {
      if (q.rel == Rel::Le ? reduced.constant() > 0 : reduced.constant() >= 0) return std::nullopt;
    } else {
      rest.push_back({std::move(reduced), q.rel, AffineExpr()});
    }
  }
  FmOptions o;
  o.record_certificate = false;
  Feasibility f = fm_feasible(rest, {}, o);
  if (!f.sat) return std::nullopt;
  out.merge(f.model);
  return out;
}

}  // namespace tableau2d
