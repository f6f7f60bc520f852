#include <catch2/catch_amalgamated.hpp>

#include "fcif/errors.hpp"
#include "fcif/value.hpp"

using fcif::Value;
using fcif::parse_value;

TEST_CASE("parsing decimals and fractions") {
  CHECK(parse_value("0.5") == Value(1, 2));
  CHECK(parse_value("0.35") == Value(7, 20));
  CHECK(parse_value("1") == Value(1));
  CHECK(parse_value("0") == Value(0));
  CHECK(parse_value("1/2") == Value(1, 2));
  CHECK(parse_value("3/4") == Value(3, 4));
  CHECK(parse_value("0.123456789") == Value(123456789, 1000000000));
}

TEST_CASE("parse rejects malformed or out-of-range input") {
  CHECK_THROWS_AS(parse_value(""), fcif::MalformedNumber);
  CHECK_THROWS_AS(parse_value("abc"), fcif::MalformedNumber);
  CHECK_THROWS_AS(parse_value("0.1234567891"), fcif::MalformedNumber);  // > 9 frac digits
  CHECK_THROWS_AS(parse_value("1.5"), fcif::OutOfUnitInterval);
  CHECK_THROWS_AS(parse_value("-0.5"), fcif::MalformedNumber);
  CHECK_THROWS_AS(parse_value("3/2"), fcif::OutOfUnitInterval);
  CHECK_THROWS_AS(parse_value("1/0"), fcif::MalformedNumber);
}

TEST_CASE("arithmetic is exact") {
  Value a(1, 10), b(6, 10);
  CHECK(a + b == Value(7, 10));
  CHECK((Value(1, 10) + Value(9, 10) + Value(6, 10) + Value(4, 10)) / Value(4) == Value(1, 2));
  CHECK(Value(7, 20) * Value(2) == Value(7, 10));
  CHECK(Value(1, 3) + Value(1, 6) == Value(1, 2));
  CHECK(Value(1) - Value(2, 3) == Value(1, 3));
}

TEST_CASE("comparison is exact at the boundary") {
  CHECK(Value(1, 2) >= Value(1, 2));
  CHECK_FALSE(Value(499999999, 1000000000) >= Value(1, 2));
  CHECK(Value(500000001, 1000000000) > Value(1, 2));
  CHECK(Value(1, 3) < Value(34, 100));
}

TEST_CASE("formatting round-trips") {
  CHECK(parse_value("0.35").str() == "0.35");
  CHECK(Value(1, 2).str() == "0.5");
  CHECK(Value(1).str() == "1");
  CHECK(Value(0).str() == "0");
  CHECK(Value(1, 3).str() == "1/3");  // no finite decimal form
  CHECK(parse_value(Value(1, 3).str()) == Value(1, 3));
  CHECK(parse_value(Value(7, 20).str()) == Value(7, 20));
}

TEST_CASE("division by zero and overflow are reported") {
  CHECK_THROWS_AS(Value(1, 2) / Value(0), fcif::DivisionByZero);
  Value tiny(1, 1000000000);
  Value x = tiny;
  CHECK_THROWS_AS([&] {
    for (int i = 0; i < 10; ++i) x = x * tiny;  // denominator overflows int64
  }(), fcif::ValueOverflow);
}
