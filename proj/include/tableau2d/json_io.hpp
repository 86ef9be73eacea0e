#pragma once

#include <istream>
#include <string>

#include "json.hpp"
#include "tableau2d/oracles.hpp"
#include "tableau2d/proof_tree.hpp"
#include "tableau2d/semantics.hpp"

namespace tableau2d {

using Json = nlohmann::ordered_json;

// Rationals are "num/den" strings. Reading also accepts JSON integers.
Json rational_to_json(const Rational& r);
Rational rational_from_json(const Json& j);

// {"p": ["1/2", "1/3"], ...}. Values outside [0,1] are rejected.
Json valuation_to_json(const Valuation& v);
Valuation valuation_from_json(const Json& j);

Json pair_to_json(const TruthPair& t);
Json filter_to_json(const Filter& d);

// {added, rule, premise, children} or {added, leaf: {closed, certificate | model, assignment}}.
// Closed leaves get an empty certificate unless `certificates` is set.
Json proof_to_json(const ProofNode& node, bool certificates = true);
// {valid, countermodel, tableaux: [{label, closed, branches, tree}]}.
Json verdict_to_json(const Verdict& v, bool certificates = true);

// One {"logic", "formula"} object per line.
std::string corpus_to_jsonl(const Corpus& c);
// Reads the lines back; seed and caps are not stored and stay zero.
Corpus corpus_from_jsonl(std::istream& in);

}  // namespace tableau2d
