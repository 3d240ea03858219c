#include <catch2/catch_amalgamated.hpp>

#include "gjl/value.hpp"

using gjl::Value;

TEST_CASE("values normalize to lowest terms") {
  CHECK(Value(2, 4) == Value(1, 2));
  CHECK(Value(0, 7) == Value::zero());
  CHECK(Value(5, 5) == Value::one());
  CHECK(Value(3, 9).num() == 1);
  CHECK(Value(3, 9).den() == 3);
}

TEST_CASE("construction rejects values outside the unit interval") {
  CHECK_THROWS(Value(3, 2));
  CHECK_THROWS(Value(-1, 2));
  CHECK_THROWS(Value(1, 0));
}

TEST_CASE("ordering matches rational order") {
  CHECK(Value(1, 3) < Value(1, 2));
  CHECK(Value(2, 3) > Value(1, 2));
  CHECK(Value(2, 6) == Value(1, 3));
  CHECK(Value(999, 1000) < Value::one());
  CHECK(Value::zero() < Value(1, 1000000));
}

TEST_CASE("rendering uses 0, 1 or p/q") {
  CHECK(Value::zero().str() == "0");
  CHECK(Value::one().str() == "1");
  CHECK(Value(3, 4).str() == "3/4");
  CHECK(Value(2, 4).str() == "1/2");
}

TEST_CASE("parsing round-trips and rejects junk") {
  CHECK(*Value::parse("3/4") == Value(3, 4));
  CHECK(*Value::parse("0") == Value::zero());
  CHECK(*Value::parse("1") == Value::one());
  CHECK(*Value::parse("0/9") == Value::zero());
  CHECK_FALSE(Value::parse("5/4").has_value());
  CHECK_FALSE(Value::parse("1/0").has_value());
  CHECK_FALSE(Value::parse("x").has_value());
  CHECK_FALSE(Value::parse("-1/2").has_value());
  CHECK_FALSE(Value::parse("").has_value());
}
