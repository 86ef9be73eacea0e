// Command-line front end. Exit codes: 0 valid/entailed, 1 invalid/not
// entailed (or oracle disagreement), 2 usage, parse or argument error.
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tableau2d/formula.hpp"
#include "tableau2d/json_io.hpp"
#include "tableau2d/oracles.hpp"
#include "tableau2d/prover.hpp"
#include "tableau2d/semantics.hpp"

using namespace tableau2d;

namespace {

constexpr int kValid = 0, kInvalid = 1, kError = 2;

struct Config {
  std::string logic_name = "luk-arrow";
  std::string filter_text;
  std::string mode = "branching";
  std::string output = "text";
  std::uint64_t seed = 1;
  int trials = 10000;
  int jobs = 1;
  bool explain = false;

  LogicId logic;
  Filter filter;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Filter parse_filter(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw UsageError("--filter expects x,y as num/den,num/den, got '" + text + "'");
  try {
    return {parse_rational(text.substr(0, comma)), parse_rational(text.substr(comma + 1))};
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("--filter: ") + e.what());
  }
}

void resolve(Config& c) {
  const auto l = LogicId::from_name(c.logic_name);
  if (!l) throw UsageError("unknown logic '" + c.logic_name + "'");
  c.logic = *l;
  c.filter = c.filter_text.empty() ? default_filter(c.logic) : parse_filter(c.filter_text);
  validate_filter(c.filter, c.logic);
}

TableauOptions options_of(const Config& c) {
  TableauOptions o;
  o.mode = c.mode == "linear" ? Mode::Linear : Mode::Branching;
  o.jobs = c.jobs;
  return o;
}

bool json_out(const Config& c) { return c.output == "json"; }

Json header(const char* command, const Config& c) {
  Json j = Json::object();
  j["command"] = command;
  j["logic"] = c.logic.name();
  j["filter"] = filter_to_json(c.filter);
  return j;
}

std::string pair_text(const TruthPair& t) { return "(" + to_string(t.pos) + ", " + to_string(t.neg) + ")"; }

void print_valuation(std::ostream& out, const Valuation& v) {
  for (const auto& [name, p] : v) out << "  " << name << " = " << pair_text(p) << "\n";
}

void print_verdict_text(std::ostream& out, const Verdict& v, bool valid_word, const Config& c) {
  out << "verdict: " << (v.valid ? (valid_word ? "valid" : "entailed") : (valid_word ? "invalid" : "not entailed"))
      << "\n";
  for (const auto& t : v.tableaux) {
    out << "tableau " << t.label << ": " << (t.closed ? "closed" : "open") << " (branches: " << t.branches << ")\n";
    if (v.valid || c.explain) {
      std::istringstream tree(render_tree(t.root, c.explain));
      for (std::string line; std::getline(tree, line);) out << "  " << line << "\n";
    }
  }
  if (v.countermodel) {
    out << "countermodel:\n";
    print_valuation(out, *v.countermodel);
  }
}

int report_verdict(const char* command, const Config& c, const Verdict& v, Json j, const std::string& formula) {
  if (json_out(c)) {
    j["formula"] = formula;
    j["mode"] = c.mode;
    const Json body = verdict_to_json(v, c.explain);
    for (const auto& [k, value] : body.items()) j[k] = value;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "logic: " << c.logic.name() << "  filter: " << to_string(c.filter) << "\n";
    std::cout << "formula: " << formula << "\n";
    print_verdict_text(std::cout, v, std::string(command) == "check", c);
  }
  return v.valid ? kValid : kInvalid;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int cmd_check(const Config& c, const std::string& text) {
  const Formula f = parse(text, c.logic);
  const Verdict v = check_valid(f, c.filter, c.logic, options_of(c));
  return report_verdict("check", c, v, header("check", c), render(f));
}

int cmd_entail(const Config& c, const std::string& gamma_file, const std::string& text) {
  std::vector<Formula> gamma;
  std::istringstream lines(read_file(gamma_file));
  Json premises = Json::array();
  for (std::string line; std::getline(lines, line);) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    gamma.push_back(parse(line, c.logic));
    premises.push_back(render(gamma.back()));
  }
  const Formula f = parse(text, c.logic);
  const Verdict v = check_entailment(gamma, f, c.filter, c.logic, options_of(c));
  Json j = header("entail", c);
  j["premises"] = premises;
  if (!json_out(c)) {
    std::cout << "premises:\n";
    for (const auto& p : premises) std::cout << "  " << p.get<std::string>() << "\n";
  }
  return report_verdict("entail", c, v, std::move(j), render(f));
}

int cmd_eval(const Config& c, const std::string& text, const std::string& valuation_arg) {
  const Formula f = parse(text, c.logic);
  const std::string raw = std::ifstream(valuation_arg).good() ? read_file(valuation_arg) : valuation_arg;
  Json vj;
  try {
    vj = Json::parse(raw);
  } catch (const Json::parse_error& e) {
    throw UsageError(std::string("valuation is not valid JSON: ") + e.what());
  }
  Valuation v = valuation_from_json(vj);
  for (const auto& a : atoms(f)) {
    if (!v.count(a)) throw UsageError("valuation has no value for atom '" + a + "'");
  }
  const TruthPair t = eval(f, v, c.logic);
  const bool designated = is_designated(t, c.filter);
  if (json_out(c)) {
    Json j = header("eval", c);
    j["formula"] = render(f);
    j["valuation"] = valuation_to_json(v);
    j["value"] = pair_to_json(t);
    j["designated"] = designated;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "value: " << pair_text(t) << "\n";
    std::cout << (designated ? "designated" : "not designated") << " at " << to_string(c.filter) << "\n";
  }
  return kValid;
}

int cmd_nnf(const Config& c, const std::string& text) {
  const Formula f = parse(text, c.logic);
  const Formula n = nnf(f, c.logic);
  if (json_out(c)) {
    Json j = header("nnf", c);
    j["formula"] = render(f);
    j["nnf"] = render(n);
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << render(n) << "\n";
  }
  return kValid;
}

int cmd_gen(const Config& c, const std::string& family, int n, int count, int depth, int n_atoms) {
  if (family == "corpus") {
    std::cout << corpus_to_jsonl(gen_corpus(c.seed, count, depth, n_atoms, c.logic));
    return kValid;
  }
  Formula f;
  if (family == "fn") {
    f = family_fn(n);
  } else if (family == "f2ofn") {
    f = family_f2_odot_fn(n);
  } else if (family == "fkofk") {
    f = family_fk_odot_fk(n);
  } else {
    throw UsageError("unknown family '" + family + "' (fn, f2ofn, fkofk, corpus)");
  }
  validate_signature(f, c.logic);
  if (json_out(c)) {
    Json j = Json::object();
    j["logic"] = c.logic.name();
    j["formula"] = render(f);
    std::cout << j.dump() << "\n";
  } else {
    std::cout << render(f) << "\n";
  }
  return kValid;
}

int cmd_oracle(const Config& c, const std::string& text, int denominator) {
  const Formula f = parse(text, c.logic);
  const Verdict v = check_valid(f, c.filter, c.logic, options_of(c));
  Json j = header("oracle", c);
  j["formula"] = render(f);
  j["tableau_valid"] = v.valid;
  bool agree = true;
  if (c.logic.is_godel()) {
    const bool o = godel_validity_oracle(f, c.logic);
    agree = o == v.valid;
    j["oracle"] = "godel-grid";
    j["oracle_valid"] = o;
    j["refutation"] = nullptr;
  } else {
    const auto hit = luk_refuter(f, c.filter, c.logic, denominator);
    agree = !(hit && v.valid);
    j["oracle"] = "luk-refuter";
    j["denominator"] = denominator;
    j["oracle_valid"] = nullptr;
    j["refutation"] = hit ? valuation_to_json(*hit) : Json(nullptr);
  }
  j["agree"] = agree;
  if (json_out(c)) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "tableau: " << (v.valid ? "valid" : "invalid") << "\n";
    if (c.logic.is_godel()) {
      std::cout << "grid oracle: " << (j["oracle_valid"].get<bool>() ? "valid" : "invalid") << "\n";
    } else if (j["refutation"].is_null()) {
      std::cout << "refuter (denominator " << denominator << "): no refutation\n";
    } else {
      std::cout << "refuter (denominator " << denominator << "): refuted by\n";
      print_valuation(std::cout, valuation_from_json(j["refutation"]));
    }
    std::cout << (agree ? "agree" : "DISAGREE") << "\n";
  }
  return agree ? kValid : kInvalid;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tableau prover for two-dimensional Łukasiewicz and Gödel logics"};
  app.require_subcommand(1);
  app.fallthrough();
  Config c;
  app.add_option("--logic", c.logic_name, "luk-arrow, luk-warrow, godel-arrow or godel-warrow")
      ->check(CLI::IsMember({"luk-arrow", "luk-warrow", "godel-arrow", "godel-warrow"}));
  app.add_option("--filter", c.filter_text, "designated filter x,y as num/den,num/den");
  app.add_option("--mode", c.mode, "branching or linear (Łukasiewicz only)")
      ->check(CLI::IsMember({"branching", "linear"}));
  app.add_option("--output", c.output, "text or json")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--seed", c.seed, "seed for generators");
  app.add_option("--trials", c.trials, "random trials for samplers");
  app.add_option("--jobs", c.jobs, "worker threads for branch exploration")->check(CLI::PositiveNumber);
  app.add_flag("--explain", c.explain, "include closure certificates");

  std::string formula, gamma_file, valuation, family;
  int n = 2, count = 50, depth = 4, n_atoms = 3, denominator = 4;

  auto* check = app.add_subcommand("check", "decide validity of a formula");
  check->add_option("formula", formula)->required();
  auto* entail = app.add_subcommand("entail", "decide entailment from a file of premises, one per line");
  entail->add_option("gamma-file", gamma_file)->required();
  entail->add_option("formula", formula)->required();
  auto* ev = app.add_subcommand("eval", "evaluate a formula under a valuation");
  ev->add_option("formula", formula)->required();
  ev->add_option("valuation", valuation, "JSON text or file: {\"p\": [\"1/2\", \"1/3\"]}")->required();
  auto* nf = app.add_subcommand("nnf", "negation normal form (Arrow logics)");
  nf->add_option("formula", formula)->required();
  auto* gen = app.add_subcommand("gen", "emit a formula family or a seeded corpus");
  gen->add_option("family", family, "fn, f2ofn, fkofk or corpus")->required();
  gen->add_option("--n", n, "family parameter");
  gen->add_option("--count", count, "corpus size");
  gen->add_option("--depth", depth, "corpus depth cap");
  gen->add_option("--atoms", n_atoms, "corpus atoms");
  auto* oracle = app.add_subcommand("oracle", "cross-check the tableau against a brute-force oracle");
  oracle->add_option("formula", formula)->required();
  oracle->add_option("--denominator", denominator, "grid denominator for the Łukasiewicz refuter");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kError;
  }

  try {
    resolve(c);
    if (*check) return cmd_check(c, formula);
    if (*entail) return cmd_entail(c, gamma_file, formula);
    if (*ev) return cmd_eval(c, formula, valuation);
    if (*nf) return cmd_nnf(c, formula);
    if (*gen) return cmd_gen(c, family, n, count, depth, n_atoms);
    if (*oracle) return cmd_oracle(c, formula, denominator);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kError;
  }
  return kError;
}
