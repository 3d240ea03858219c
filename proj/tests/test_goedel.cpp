#include <catch2/catch_amalgamated.hpp>

#include "gjl/goedel.hpp"
#include "gjl/parse.hpp"
#include "support/gen.hpp"

using namespace gjl;

TEST_CASE("t-norm") {
  CHECK(tnorm(Value::one(), Value(1, 2)) == Value(1, 2));
  CHECK(tnorm(Value(1, 3), Value(1, 2)) == Value(1, 3));
  CHECK(tnorm(Value::zero(), Value(9, 10)) == Value::zero());
}

TEST_CASE("residuum") {
  CHECK(residuum(Value(1, 2), Value(1, 3)) == Value(1, 3));
  CHECK(residuum(Value(1, 3), Value(1, 2)) == Value::one());
  CHECK(residuum(Value(2, 5), Value(2, 5)) == Value::one());
}

TEST_CASE("derived truth functions") {
  CHECK(neg_value(Value::zero()) == Value::one());
  CHECK(neg_value(Value(1, 100)) == Value::zero());
  CHECK(oplus(Value(1, 4), Value(3, 4)) == Value(3, 4));
  CHECK(iff_value(Value(1, 2), Value(1, 2)) == Value::one());
  CHECK(iff_value(Value(1, 2), Value(1, 3)) == Value(1, 3));
}

TEST_CASE("adjunction of t-norm and residuum on sampled triples") {
  gen::Rng rng(20240003);
  for (int i = 0; i < 2000; ++i) {
    const Value x = gen::value(rng), y = gen::value(rng), z = gen::value(rng);
    CHECK((tnorm(x, y) <= z) == (x <= residuum(y, z)));
  }
}

TEST_CASE("monotonicity of the truth functions") {
  gen::Rng rng(20240004);
  for (int i = 0; i < 2000; ++i) {
    Value x = gen::value(rng), x2 = gen::value(rng);
    Value y = gen::value(rng), y2 = gen::value(rng);
    if (x > x2) std::swap(x, x2);
    if (y > y2) std::swap(y, y2);
    CHECK(tnorm(x, y) <= tnorm(x2, y2));
    CHECK(residuum(x, y) <= residuum(x, y2));
    CHECK(residuum(x2, y) <= residuum(x, y));
    CHECK(neg_value(x2) <= neg_value(x));
  }
}

TEST_CASE("derived connectives agree with their expansions") {
  gen::Rng rng(20240005);
  for (int i = 0; i < 500; ++i) {
    const StarAtomSet atoms{StarAtom::plain(1), StarAtom::plain(2)};
    const Assignment a = gen::assignment(rng, atoms);
    const Value x = a.at(StarAtom::plain(1));
    const Value y = a.at(StarAtom::plain(2));
    CHECK(eval_prop(a, star(parse_formula("p1 | p2"))) == oplus(x, y));
    CHECK(eval_prop(a, star(parse_formula("p1 <-> p2"))) == iff_value(x, y));
    CHECK(eval_prop(a, star(parse_formula("~p1"))) == neg_value(x));
    CHECK(eval_prop(a, star(parse_formula("top"))) == Value::one());
  }
}

TEST_CASE("propositional evaluation") {
  Assignment empty_default_one(Value::one());
  CHECK(eval_prop(empty_default_one, star(parse_formula("p1 -> p1"))) == Value::one());

  Assignment a;
  a.set(StarAtom::plain(1), Value(1, 2));
  a.set(StarAtom::plain(2), Value(1, 3));
  CHECK(eval_prop(a, star(parse_formula("p1 -> p2"))) == Value(1, 3));
  CHECK(eval_prop(a, star(parse_formula("bot -> p1"))) == Value::one());
  CHECK(eval_prop(a, star(parse_formula("p1 & p2"))) == Value(1, 3));

  // boxed atoms are looked up atomically
  Assignment b;
  b.set(StarAtom::boxed(Formula::atom(1), Term::var(1)), Value(2, 3));
  CHECK(eval_prop(b, star(parse_formula("x1:p1"))) == Value(2, 3));
}

TEST_CASE("evaluation of premise sets") {
  Assignment a;
  a.set(StarAtom::plain(1), Value(1, 2));
  a.set(StarAtom::plain(2), Value(1, 4));
  CHECK(eval_prop_set(a, std::vector<StarFormulaPtr>{}) == Value::one());
  CHECK(eval_prop_set(a, std::vector<StarFormulaPtr>{star(parse_formula("p1"))}) == Value(1, 2));
  CHECK(eval_prop_set(a, std::vector<StarFormulaPtr>{star(parse_formula("p1")),
                                                     star(parse_formula("p1 -> p2"))}) ==
        Value(1, 4));
}

TEST_CASE("propositional axiom schemas evaluate to 1 under any assignment") {
  gen::Rng rng(20240006);
  for (Schema s : axiom_schemas(Calculus::G)) {
    for (int i = 0; i < 200; ++i) {
      const FormulaPtr inst = gen::schema_instance(rng, s, 2, true);
      const StarFormulaPtr starred = star(inst);
      const Assignment a = gen::assignment(rng, collect_atoms(starred));
      CHECK(eval_prop(a, starred) == Value::one());
    }
  }
}
