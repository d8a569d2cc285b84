#include <doctest.h>

#include <sstream>
#include <stdexcept>

#include "stockseq/rational.hpp"

using stockseq::Rational;

TEST_CASE("rational parse and print") {
  CHECK(Rational::parse("3") == Rational(3));
  CHECK(Rational::parse("-3") == Rational(-3));
  CHECK(Rational::parse("+3") == Rational(3));
  CHECK(Rational::parse(" 3/4 ") == Rational(3, 4));
  CHECK(Rational::parse("6/4") == Rational(3, 2));
  CHECK(Rational::parse("-6/4").to_string() == "-3/2");
  CHECK(Rational(4, 2).to_string() == "2");
  CHECK(Rational(1, -3).to_string() == "-1/3");
  // big numbers survive exactly
  const auto big = Rational::parse("123456789012345678901234567891/2");
  CHECK(big.to_string() == "123456789012345678901234567891/2");
  CHECK((big * Rational(2)).is_integer());

  for (const char* bad : {"", "1/0", "a", "1/", "/2", "1.5", "1/2/3", "1 2", "--1"}) {
    CHECK_THROWS_AS((void)Rational::parse(bad), std::invalid_argument);
  }
}

TEST_CASE("rational arithmetic and order") {
  const Rational a(1, 3);
  const Rational b(1, 6);
  CHECK(a + b == Rational(1, 2));
  CHECK(a - b == b);
  CHECK(a * b == Rational(1, 18));
  CHECK(a / b == Rational(2));
  CHECK(-a == Rational(-1, 3));
  CHECK(b < a);
  CHECK(stockseq::abs(Rational(-5, 2)) == Rational(5, 2));
  CHECK(Rational(0).is_zero());
  CHECK(Rational(-2).sign() == -1);
  CHECK_THROWS_AS(a / Rational(0), std::domain_error);

  std::ostringstream os;
  os << Rational(7, 21);
  CHECK(os.str() == "1/3");
}
