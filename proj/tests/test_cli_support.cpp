#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "cli_support.hpp"
#include "forksettle/errors.hpp"

using namespace forksettle;
using namespace forksettle::cli;

TEST_CASE("grid syntax", "[cli]") {
  CHECK(parse_real_grid("0.1") == std::vector<double>{0.1});
  CHECK(parse_real_grid("0.3,0.1") == std::vector<double>{0.3, 0.1});
  const auto table = parse_real_grid("0.05:0.05:0.40");
  REQUIRE(table.size() == 8);
  CHECK(table[2] == 0.15);
  CHECK(table.back() == 0.4);
  CHECK(parse_real_grid("0.05..0.40") == table);
  const auto ks = parse_count_grid("50..1000");
  REQUIRE(ks.size() == 20);
  CHECK(ks.front() == 50);
  CHECK(ks.back() == 1000);
  CHECK(parse_count_grid("1:2:8") == std::vector<std::size_t>{1, 3, 5, 7});
}

TEST_CASE("grid errors", "[cli]") {
  for (const char* bad : {"", "abc", "1:2", "1:0:5", "5:1:1", "0..3", "1..2..3", "0.1,,0.2", "1:1:1e9"}) {
    CHECK_THROWS_AS(parse_real_grid(bad), BadGrid);
  }
  CHECK_THROWS_AS(parse_count_grid("1.5"), BadGrid);
  CHECK_THROWS_AS(parse_count_grid("-2"), BadGrid);
}

TEST_CASE("output formats", "[cli]") {
  Output o;
  o.command = "demo";
  o.seed = 9;
  o.columns = {"x", "n", "tag"};
  o.rows.push_back({Cell(5.371e-15), Cell(std::int64_t{50}), Cell(std::string("a"))});
  o.rows.push_back({Cell(0.137), Cell(std::int64_t{100}), Cell(true)});

  std::ostringstream csv;
  write(csv, o, Format::Csv, 3);
  CHECK(csv.str() == "x,n,tag\n5.37e-15,50,a\n1.37e-01,100,true\n");

  std::ostringstream js;
  write(js, o, Format::Json, 3);
  const auto j = nlohmann::json::parse(js.str());
  CHECK(j["command"] == "demo");
  CHECK(j["seed"] == 9);
  REQUIRE(j["records"].size() == 2);
  CHECK(j["records"][0]["x"].get<double>() == 5.37e-15);
  CHECK(j["records"][1]["tag"] == true);

  std::ostringstream text;
  write(text, o, Format::Text, 5);
  CHECK(text.str().find("5.3710e-15") != std::string::npos);

  CHECK(format_real(3.8284e-274, 3) == "3.83e-274");
  CHECK(parse_format("json") == Format::Json);
  CHECK_THROWS_AS(parse_format("xml"), BadParams);
}
