#include <random>

#include "doctest.h"
#include "support.hpp"
#include "tableau2d/formula.hpp"

using namespace tableau2d;
using testsupport::random_formula;

namespace {
const LogicId LA = LogicId::luk_arrow();
const LogicId LW = LogicId::luk_warrow();
const LogicId GA = LogicId::godel_arrow();
const LogicId GW = LogicId::godel_warrow();
Formula P = Formula::atom("p"), Q = Formula::atom("q"), R = Formula::atom("r");
}  // namespace

TEST_CASE("logic names round-trip") {
  for (LogicId l : kAllLogics) CHECK(LogicId::from_name(l.name()) == l);
  CHECK_FALSE(LogicId::from_name("classical").has_value());
}

TEST_CASE("parse builds the expected trees") {
  CHECK(parse("p -> p", LA) == Formula::imp(P, P));
  CHECK(parse("!(p & q)", GA) == Formula::neg(Formula::conj(P, Q)));
  CHECK(parse("p & q | r", LA) == Formula::disj(Formula::conj(P, Q), R));
  CHECK(parse("p | q & r", LA) == Formula::disj(P, Formula::conj(Q, R)));
  CHECK(parse("!p & q", LA) == Formula::conj(Formula::neg(P), Q));
  CHECK(parse("p & q & r", LA) == Formula::conj(Formula::conj(P, Q), R));
  CHECK(parse("p -> q -> r", LA) == Formula::imp(P, Formula::imp(Q, R)));
  CHECK(parse("p ~> q ~> r", LW) == Formula::wimp(P, Formula::wimp(Q, R)));
  CHECK(parse("p -< q -< r", GA) == Formula::coimp(Formula::coimp(P, Q), R));
  CHECK(parse("p | q -> r", LA) == Formula::imp(Formula::disj(P, Q), R));
  CHECK(parse("0 -> 1", GA) == Formula::imp(Formula::bot(), Formula::top()));
  CHECK(parse("  ( ( p ) )", LA) == P);
  CHECK(parse("x_1 & Y2", LA) == Formula::conj(Formula::atom("x_1"), Formula::atom("Y2")));
}

TEST_CASE("signature violations name the connective") {
  auto connective = [](const char* text, LogicId l) -> std::string {
    try {
      parse(text, l);
    } catch (const SignatureError& e) {
      return e.connective();
    }
    return "";
  };
  CHECK(connective("p -< q", LA) == "-<");
  CHECK(connective("p -< q", GW) == "-<");
  CHECK(connective("p ~> q", LA) == "~>");
  CHECK(connective("p -> q", LW) == "->");
  CHECK(connective("p -> q", GW) == "->");
  CHECK(connective("1", LA) == "1");
  CHECK(connective("p * q", LW) == "*");
  CHECK(connective("p <-> q", GW) == "<->");
  CHECK(connective("p -< q", GA) == "");
  CHECK(connective("p ~> 1", GW) == "");
}

TEST_CASE("syntax errors carry positions") {
  auto position = [](const char* text) -> long {
    try {
      parse(text, GA);
    } catch (const ParseError& e) {
      return static_cast<long>(e.position());
    }
    return -1;
  };
  CHECK(position("p &") == 3);
  CHECK(position("(p | q") == 6);
  CHECK(position("p $ q") == 2);
  CHECK(position("p -> q -< r") == 7);
  CHECK(position("") == 0);
  CHECK(position("p q") == 2);
  CHECK(position("01") == 0);
  CHECK(position("(p -> q) -< r") == -1);
}

TEST_CASE("render uses minimal parentheses") {
  CHECK(render(Formula::imp(P, Q)) == "p -> q");
  CHECK(render(Formula::neg(Formula::conj(P, Q))) == "!(p & q)");
  CHECK(render(Formula::conj(P, Formula::disj(Q, R))) == "p & (q | r)");
  CHECK(render(Formula::conj(Formula::conj(P, Q), R)) == "p & q & r");
  CHECK(render(Formula::conj(P, Formula::conj(Q, R))) == "p & (q & r)");
  CHECK(render(Formula::imp(Formula::imp(P, Q), R)) == "(p -> q) -> r");
  CHECK(render(Formula::imp(P, Formula::imp(Q, R))) == "p -> q -> r");
  CHECK(render(Formula::coimp(Formula::coimp(P, Q), R)) == "p -< q -< r");
  CHECK(render(Formula::coimp(P, Formula::coimp(Q, R))) == "p -< (q -< r)");
  CHECK(render(Formula::imp(P, Formula::coimp(Q, R))) == "p -> (q -< r)");
  CHECK(render(Formula::neg(Formula::neg(P))) == "!!p");
}

TEST_CASE("render then parse is the identity") {
  std::mt19937_64 rng(7);
  for (LogicId l : kAllLogics) {
    for (int i = 0; i < 300; ++i) {
      Formula f = random_formula(rng, l, 5, 3);
      CHECK(parse(render(f), l) == f);
    }
  }
}

TEST_CASE("derived connectives expand to primitives") {
  CHECK(parse("~p", LA) == Formula::imp(P, Formula::bot()));
  CHECK(parse("~p", LW) == Formula::wimp(P, Formula::bot()));
  Formula bot = Formula::bot();
  CHECK(parse("p * q", LA) == Formula::imp(Formula::imp(P, Formula::imp(Q, bot)), bot));
  CHECK(render(parse("p * q", LA)) == "(p -> q -> 0) -> 0");
  CHECK(parse("p <-> q", LA) == parse("(p -> q) * (q -> p)", LA));
  CHECK(parse("~~p", GA) == Formula::imp(Formula::imp(P, bot), bot));
  // Precedence of the sugar: * binds tighter than &, <-> is loosest.
  CHECK(parse("p * q & r", LA) == Formula::conj(odot(P, Q), R));
  CHECK(parse("p -> q <-> r", LA) == iff(Formula::imp(P, Q), R));
}

TEST_CASE("expanding an already expanded form changes nothing") {
  std::mt19937_64 rng(11);
  for (const char* text : {"~p * q", "p <-> ~q", "~(p & q) * (r <-> p)"}) {
    Formula once = expand_derived(parse_surface(text), LA);
    CHECK(expand_derived(lift(once), LA) == once);
  }
  for (LogicId l : kAllLogics) {
    for (int i = 0; i < 50; ++i) {
      Formula f = random_formula(rng, l, 4, 3);
      CHECK(expand_derived(lift(f), l) == f);
    }
  }
}

TEST_CASE("validate_signature agrees with a structural scan") {
  std::mt19937_64 rng(5);
  for (LogicId src : kAllLogics) {
    for (int i = 0; i < 100; ++i) {
      Formula f = random_formula(rng, src, 4, 2);
      for (LogicId l : kAllLogics) {
        bool ok = true;
        std::vector<Formula> st{f};
        while (!st.empty()) {
          Formula g = st.back();
          st.pop_back();
          if (g.op() == Op::Top && !l.is_godel()) ok = false;
          if (g.op() == Op::CoImp && !(l.is_godel() && l.is_arrow())) ok = false;
          if (g.op() == Op::Imp && !l.is_arrow()) ok = false;
          if (g.op() == Op::WImp && l.is_arrow()) ok = false;
          if (g.op() == Op::Neg) st.push_back(g.lhs());
          if (is_binary(g.op())) {
            st.push_back(g.lhs());
            st.push_back(g.rhs());
          }
        }
        CHECK(conforms(f, l) == ok);
      }
    }
  }
}

TEST_CASE("nnf examples") {
  CHECK(nnf(parse("!(p & q)", GA), GA) == parse("!p | !q", GA));
  CHECK(nnf(parse("!(p & q)", LA), LA) == parse("!p | !q", LA));
  CHECK(nnf(parse("!(p -> q)", GA), GA) == parse("!q -< !p", GA));
  CHECK(nnf(parse("!!p", GA), GA) == P);
  CHECK(nnf(parse("!(p -> q)", LA), LA) == odot(Formula::neg(Q), tilde(Formula::neg(P))));
  CHECK(nnf(parse("!0", GA), GA) == Formula::top());
  CHECK(nnf(parse("!1", GA), GA) == Formula::bot());
  CHECK(nnf(parse("!(p -< q)", GA), GA) == parse("!q -> !p", GA));
  CHECK_THROWS_AS(nnf(parse("!(p ~> q)", LW), LW), std::invalid_argument);
  CHECK_THROWS_AS(nnf(P, GW), std::invalid_argument);
}

TEST_CASE("nnf is idempotent, negates only atoms and preserves values") {
  std::mt19937_64 rng(3);
  for (LogicId l : {LA, GA}) {
    for (int i = 0; i < 200; ++i) {
      Formula f = random_formula(rng, l, 5, 3);
      Formula n = nnf(f, l);
      CHECK(is_nnf(n));
      CHECK(nnf(n, l) == n);
      Valuation v = testsupport::random_valuation(rng, {"p1", "p2", "p3"});
      CHECK(testsupport::reference_eval(n, v, l) == testsupport::reference_eval(f, v, l));
    }
  }
}

TEST_CASE("F_n families") {
  CHECK(family_fn(1) == iff(Formula::atom("p1"), Formula::atom("p2")));
  Formula p1 = Formula::atom("p1"), p2 = Formula::atom("p2"), p3 = Formula::atom("p3");
  CHECK(family_fn(2) == Formula::disj(Formula::disj(iff(p1, p2), iff(p1, p3)), iff(p2, p3)));
  for (int n = 1; n <= 6; ++n) {
    Formula f = family_fn(n);
    CHECK(atoms(f).size() == static_cast<std::size_t>(n + 1));
    // Count disjuncts along the left spine.
    std::size_t disjuncts = 1;
    for (Formula g = f; g.op() == Op::Or; g = g.lhs()) ++disjuncts;
    CHECK(disjuncts == static_cast<std::size_t>((n + 1) * n / 2));
    CHECK(conforms(f, LA));
    CHECK(conforms(f, GA));
  }
  Formula big = family_f2_odot_fn(3);
  CHECK(atoms(big).size() == 3 + 4);
  CHECK(big == odot(family_fn(2), family_fn(3, "q")));
  CHECK(atoms(family_fk_odot_fk(3)).size() == 4);
  CHECK_THROWS(family_fn(0));
  CHECK_THROWS(family_f2_odot_fn(2));
}

TEST_CASE("formula metrics") {
  Formula f = parse("!(p & q) -> r", LA);
  CHECK(f.size() == 6);
  CHECK(f.depth() == 3);
  CHECK(connective_count(f) == 3);
  CHECK(atoms(f) == std::vector<std::string>{"p", "q", "r"});
}
