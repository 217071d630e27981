#include <doctest.h>

#include <sstream>

#include "catsim/config.hpp"

using namespace catsim;

TEST_CASE("parse scalars, lists and comments") {
  const auto c = Config::parse_string(
      "# header comment\n"
      "name = fig1   # trailing\n"
      "\n"
      "model.g = 2.5\n"
      "signatures.wigner_at = [0.005, 0.015]\n"
      "sweep.reservoir.ns = []\n"
      "fock.allow_large = true\n");
  CHECK(c.get_string("name", "") == "fig1");
  CHECK(c.get_double("model.g", 0) == 2.5);
  CHECK(c.get_doubles("signatures.wigner_at") == std::vector<double>{0.005, 0.015});
  CHECK(c.get_doubles("sweep.reservoir.ns").empty());
  CHECK(c.get_bool("fock.allow_large", false));
  CHECK(c.entry("model.g").line == 4);
  CHECK(c.get_double("missing", 7.0) == 7.0);
  CHECK_FALSE(c.get_optional_double("missing"));
  CHECK(c.get_doubles("missing").empty());
}

TEST_CASE("scalar reads as a one-element list") {
  const auto c = Config::parse_string("a = 3\n");
  CHECK(c.get_doubles("a") == std::vector<double>{3.0});
  CHECK(c.get_int("a", 0) == 3);
}

TEST_CASE("errors carry line and key") {
  try {
    (void)Config::parse_string("a = 1\na = 2\n");
    FAIL("duplicate accepted");
  } catch (const ConfigError& e) {
    CHECK(e.line() == 2);
    CHECK(e.key() == "a");
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
  CHECK_THROWS_AS(Config::parse_string("no equals sign\n"), ConfigError);
  CHECK_THROWS_AS(Config::parse_string("bad key! = 1\n"), ConfigError);
  CHECK_THROWS_AS(Config::parse_string("a = [1, 2\n"), ConfigError);

  const auto c = Config::parse_string("x = abc\nflag = maybe\nn = 2.5\n");
  CHECK_THROWS_AS(c.get_double("x", 0), ConfigError);
  CHECK_THROWS_AS(c.get_bool("flag", false), ConfigError);
  CHECK_THROWS_AS(c.get_int("n", 0), ConfigError);
  CHECK_THROWS_AS(Config::load("/nonexistent/file.cfg"), ConfigError);
}

TEST_CASE("unknown keys") {
  const auto c = Config::parse_string("model.g = 1\nsweep.reservoir.ns = [0, 1]\nmodel.typo = 3\n");
  CHECK_NOTHROW(Config::parse_string("model.g = 1\n").require_known({"model.g"}, {}));
  try {
    c.require_known({"model.g"}, {"sweep."});
    FAIL("unknown key accepted");
  } catch (const ConfigError& e) {
    CHECK(e.key() == "model.typo");
    CHECK(e.line() == 3);
  }
}

TEST_CASE("set, erase and canonical text") {
  auto c = Config::parse_string("b = 2\na = [1, 2]\n");
  c.set("c", "x");
  c.set("b", "5");
  c.erase("a");
  CHECK(c.get_double("b", 0) == 5.0);
  CHECK_FALSE(c.has("a"));
  CHECK(c.to_string() == "b = 5\nc = x\n");
  const auto again = Config::parse_string(c.to_string());
  CHECK(again.to_string() == c.to_string());
}
