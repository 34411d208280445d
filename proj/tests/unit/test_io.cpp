#include "doctest.h"

#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "landscape/environment.hpp"
#include "landscape/error.hpp"
#include "landscape/io.hpp"
#include "landscape/lpp.hpp"
#include "landscape/planar_path.hpp"

using namespace landscape;

TEST_CASE("doubles round-trip through text exactly") {
  std::mt19937_64 gen(1);
  std::uniform_real_distribution<double> u(-1e6, 1e6);
  for (int m = 0; m < 10000; ++m) {
    const double v = u(gen) * std::pow(10.0, static_cast<int>(gen() % 40) - 20);
    REQUIRE(parse_double(format_double(v)) == v);
  }
  CHECK(format_double(0.5) == "0.5");
  CHECK_THROWS_AS(parse_double("1.5x"), ConstructionError);
  CHECK_THROWS_AS(parse_double(""), ConstructionError);
}

TEST_CASE("csv tables carry a json metadata header") {
  Table t;
  t.meta = {{"kind", "demo"}, {"n", 3}};
  t.columns = {"a", "b"};
  t.add_row({"1", "2.5"});
  t.add_row({"3", "-4"});
  std::stringstream io;
  write_csv(io, t);
  const std::string text = io.str();
  CHECK(text.rfind("# {", 0) == 0);
  CHECK(text.find("\na,b\n1,2.5\n3,-4\n") != std::string::npos);
  const Table back = read_csv(io);
  CHECK(back.meta == t.meta);
  CHECK(back.columns == t.columns);
  CHECK(back.rows == t.rows);
  CHECK(back.column("b") == 1);
  CHECK_THROWS_AS(back.column("c"), LookupError);
  CHECK_THROWS_AS(t.add_row({"1"}), ConstructionError);
  std::stringstream bad("a,b\n1,2\n");
  CHECK_THROWS_AS(read_csv(bad), ConstructionError);
}

TEST_CASE("json tables emit numbers as numbers") {
  Table t;
  t.columns = {"x", "label"};
  t.add_row({"0.25", "left"});
  std::stringstream io;
  write_json(io, t);
  const Json j = Json::parse(io.str());
  CHECK(j["rows"][0][0].is_number());
  CHECK(j["rows"][0][1] == "left");
}

TEST_CASE("field table reconstructs the field bit for bit") {
  const GridSpec spec{-0.5, 0.5, 0.1, 2, 4};
  const auto field = BrownianField::generate(spec, 77);
  std::stringstream io;
  write_csv(io, field_table(field));
  const auto back = field_from_table(read_csv(io));
  CHECK(back.spec() == spec);
  CHECK(back.seed() == 77);
  for (int k = 2; k <= 4; ++k)
    for (std::size_t m = 0; m < spec.point_count(); ++m)
      REQUIRE(back.value(k, m) == field.value(k, m));
  CHECK(grid_from_json(to_json(spec)) == spec);
}

TEST_CASE("staircase and planar tables") {
  const Staircase s(1, {0.0, 0.25, 0.25, 0.75});
  std::stringstream io;
  write_csv(io, staircase_table(s));
  CHECK(staircase_from_table(read_csv(io)) == s);
  const auto planar = planar_table(PlanarPath({{0, 0}, {0.5, 1}}));
  CHECK(planar.columns == std::vector<std::string>{"index", "z", "r"});
  CHECK(planar.rows.size() == 2);
}

TEST_CASE("profile table back-pointers name the entry into the target line") {
  const GridSpec spec{0.0, 0.3, 0.1, 0, 1};
  const auto field = BrownianField::from_values(spec, {{0, 2, 3, 1}, {0, -1, -2, 0}});
  const auto table = profile_table(passage_profile(field, 0.0, 0, 1));
  REQUIRE(table.rows.size() == 4);
  const auto& last = table.rows.back();
  CHECK(parse_double(last[table.column("M")]) == doctest::Approx(5.0));
  CHECK(parse_double(last[table.column("backptr_left")]) == doctest::Approx(0.2));
}
