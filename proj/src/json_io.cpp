#include "tableau2d/json_io.hpp"

#include <stdexcept>

namespace tableau2d {

Json rational_to_json(const Rational& r) { return to_fraction_string(r); }

Rational rational_from_json(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  throw std::invalid_argument("expected a \"num/den\" string, got " + j.dump());
}

Json valuation_to_json(const Valuation& v) {
  Json out = Json::object();
  for (const auto& [name, p] : v) out[name] = pair_to_json(p);
  return out;
}

Valuation valuation_from_json(const Json& j) {
  if (!j.is_object()) throw std::invalid_argument("a valuation is a JSON object mapping atoms to [pos, neg]");
  Valuation v;
  for (const auto& [name, value] : j.items()) {
    if (!value.is_array() || value.size() != 2) {
      throw std::invalid_argument("atom '" + name + "' needs a [pos, neg] pair");
    }
    TruthPair p{rational_from_json(value[0]), rational_from_json(value[1])};
    if (p.pos < 0 || p.pos > 1 || p.neg < 0 || p.neg > 1) {
      throw std::invalid_argument("atom '" + name + "' has a value outside [0,1]");
    }
    v[name] = p;
  }
  return v;
}

Json pair_to_json(const TruthPair& t) { return Json::array({rational_to_json(t.pos), rational_to_json(t.neg)}); }

Json filter_to_json(const Filter& d) { return Json::array({rational_to_json(d.x), rational_to_json(d.y)}); }

Json proof_to_json(const ProofNode& node, bool certificates) {
  Json out = Json::object();
  out["added"] = node.added;
  if (node.leaf) {
    const ProofLeaf& l = *node.leaf;
    Json leaf = Json::object();
    leaf["closed"] = l.closed;
    if (l.closed) {
      leaf["certificate"] = certificates ? Json(l.certificate) : Json::array();
    } else {
      if (l.model) leaf["model"] = valuation_to_json(*l.model);
      leaf["assignment"] = l.assignment;
    }
    out["leaf"] = std::move(leaf);
    return out;
  }
  out["rule"] = node.rule;
  out["premise"] = node.premise;
  Json children = Json::array();
  for (const auto& c : node.children) children.push_back(proof_to_json(c, certificates));
  out["children"] = std::move(children);
  return out;
}

Json verdict_to_json(const Verdict& v, bool certificates) {
  Json out = Json::object();
  out["valid"] = v.valid;
  out["countermodel"] = v.countermodel ? valuation_to_json(*v.countermodel) : Json(nullptr);
  Json runs = Json::array();
  for (const auto& t : v.tableaux) {
    Json r = Json::object();
    r["label"] = t.label;
    r["closed"] = t.closed;
    r["branches"] = t.branches;
    r["tree"] = proof_to_json(t.root, certificates);
    runs.push_back(std::move(r));
  }
  out["tableaux"] = std::move(runs);
  return out;
}

std::string corpus_to_jsonl(const Corpus& c) {
  std::string out;
  for (const auto& e : c.formulas) {
    Json line = Json::object();
    line["logic"] = e.logic.name();
    line["formula"] = render(e.formula);
    out += line.dump() + "\n";
  }
  return out;
}

Corpus corpus_from_jsonl(std::istream& in) {
  Corpus c;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const Json j = Json::parse(line);
    const auto logic = LogicId::from_name(j.at("logic").get<std::string>());
    if (!logic) throw std::invalid_argument("line " + std::to_string(number) + ": unknown logic");
    c.formulas.push_back({*logic, parse(j.at("formula").get<std::string>(), *logic)});
  }
  return c;
}

}  // namespace tableau2d
