#include <limits>
#include <sstream>

#include "doctest.h"
#include "uci/errors.hpp"
#include "uci/io.hpp"

using namespace uci;

TEST_CASE("sample CSV parsing") {
  std::istringstream with_header("x\n0.1\n\n0.5\n1\n");
  const auto s = parse_sample_csv(with_header);
  REQUIRE(s.size() == 3);
  CHECK(s.values()[1] == 0.5);

  std::istringstream plain("0.25\n0.75");
  CHECK(parse_sample_csv(plain).size() == 2);

  std::istringstream empty("");
  CHECK(parse_sample_csv(empty).empty());

  std::istringstream bad("0.1\nabc\n");
  CHECK_THROWS_AS(parse_sample_csv(bad), ParseError);

  CHECK_THROWS_AS(read_sample_csv("/nonexistent/dir/file.csv"), IoError);
}

TEST_CASE("number formatting round trips") {
  for (double v : {0.1, 1.0 / 3.0, 0.5364915065723368, 1e-300, 12345.0, 0.0}) {
    double back = -1.0;
    REQUIRE(parse_double(format_double(v), back));
    CHECK(back == v);
  }
  CHECK(format_double(0.25) == "0.25");
  CHECK(format_double(2000.0) == "2000");
}

TEST_CASE("strict numeric parse") {
  double v = 0.0;
  CHECK(parse_double("0.5", v));
  CHECK(parse_double(" 0.5 ", v));
  CHECK_FALSE(parse_double("0.5x", v));
  CHECK_FALSE(parse_double("", v));
}
