#include <doctest.h>

#include "kposet/cardinal.hpp"

using kposet::CardTag;

TEST_CASE("cardinal total order") {
  CHECK(CardTag::finite(0) < CardTag::finite(1));
  CHECK(CardTag::finite(7) < CardTag::aleph0());
  CHECK(CardTag::aleph0() < CardTag::beta());
  CHECK(CardTag::finite(1000000) < CardTag::aleph0());
  CHECK(CardTag::finite(3) == CardTag::finite(3));
  CHECK(CardTag::aleph0() == CardTag::aleph0());
  CHECK(CardTag::aleph0() != CardTag::beta());
  CHECK(CardTag::beta() >= CardTag::aleph0());
}

TEST_CASE("cardinal addition") {
  CHECK(CardTag::finite(2) + CardTag::finite(3) == CardTag::finite(5));
  CHECK(CardTag::finite(2) + CardTag::aleph0() == CardTag::aleph0());
  CHECK(CardTag::aleph0() + CardTag::aleph0() == CardTag::aleph0());
  CHECK(CardTag::aleph0() + CardTag::beta() == CardTag::beta());
  CHECK(CardTag::beta() + CardTag::finite(9) == CardTag::beta());
}

TEST_CASE("cardinal literals") {
  CHECK(CardTag::parse("aleph0") == CardTag::aleph0());
  CHECK(CardTag::parse("beta") == CardTag::beta());
  CHECK(CardTag::parse("finite:12") == CardTag::finite(12));
  CHECK(CardTag::finite(12).to_string() == "finite:12");
  CHECK(CardTag::beta().to_string() == "beta");
  CHECK_THROWS_AS(CardTag::parse("finite:"), std::invalid_argument);
  CHECK_THROWS_AS(CardTag::parse("finite:x"), std::invalid_argument);
  CHECK_THROWS_AS(CardTag::parse("aleph1"), std::invalid_argument);
}
