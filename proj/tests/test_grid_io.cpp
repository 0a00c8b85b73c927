#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "chf/grid.hpp"
#include "chf/io.hpp"
#include "chf/types.hpp"

using namespace chf;

TEST_CASE("linspace") {
  const auto xs = grid::linspace(-1.0, 3.0, 5);
  REQUIRE(xs.size() == 5);
  CHECK(xs.front() == -1.0);
  CHECK(xs.back() == 3.0);
  CHECK(xs[2] == doctest::Approx(1.0));
  CHECK(grid::linspace(2.0, 9.0, 1).size() == 1);
}

TEST_CASE("for_index propagates the first exception") {
  try {
    grid::for_index(
        10,
        [](int i) {
          if (i == 3) raise(Err::DomainX, "boom");
        },
        grid::Exec::parallel);
    CHECK(false);
  } catch (const ChfError& e) {
    CHECK(e.code() == Err::DomainX);
  }
}

TEST_CASE("reductions") {
  const auto xs = grid::linspace(0.0, 1.0, 2001);
  std::vector<double> sq(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) sq[i] = xs[i] * xs[i];
  CHECK(grid::trapezoid(xs, sq) == doctest::Approx(1.0 / 3.0).epsilon(1e-6));
  CHECK(grid::max_abs({1.0, -7.0, 3.0}) == 7.0);
  CHECK_THROWS_AS(grid::trapezoid({1.0}, {1.0}), ChfError);
  CHECK_THROWS_AS(grid::trapezoid({1.0, 2.0}, {1.0}), ChfError);
}

TEST_CASE("sign changes ignore entries under the floor") {
  CHECK(grid::count_sign_changes({1.0, -1.0, 1.0}, 0.0) == 2);
  CHECK(grid::count_sign_changes({1.0, 1e-12, -1.0}, 1e-8) == 1);
  CHECK(grid::count_sign_changes({1.0, -1e-12, 1.0}, 1e-8) == 0);
  CHECK(grid::count_sign_changes({}, 0.0) == 0);
  CHECK(grid::count_sign_changes({0.5, 0.7, 0.9}, 0.0) == 0);
}

TEST_CASE("serial and parallel map agree bitwise") {
  const auto xs = grid::linspace(0.1, 17.0, 4097);
  const auto fn = [](double x) { return std::sin(x) * std::exp(-0.3 * x); };
  const auto a = grid::map_grid(xs, fn, grid::Exec::serial);
  const auto b = grid::map_grid(xs, fn, grid::Exec::parallel);
  for (std::size_t i = 0; i < a.size(); ++i) REQUIRE(a[i] == b[i]);
}

TEST_CASE("real formatting round-trips") {
  for (double v : {1.0 / 3.0, -2.5e-17, 6.02214076e23, 0.1}) {
    const std::string s = io::format_real(v);
    CHECK(std::stod(s) == v);
  }
}

TEST_CASE("csv escaping") {
  io::Table t;
  t.schema = "check_report";
  t.columns = {"identity", "value"};
  t.rows.push_back({std::string("has,comma"), 1.5});
  t.rows.push_back({std::string("has \"quote\""), -2.0});
  t.rows.push_back({std::string("plain"), 3.0});
  const std::string csv = io::to_csv(t);
  CHECK(csv.find("\"has,comma\",1.5") != std::string::npos);
  CHECK(csv.find("\"has \"\"quote\"\"\",-2") != std::string::npos);
  CHECK(csv.rfind("identity,value\n", 0) == 0);
}

TEST_CASE("json shape") {
  io::Table t;
  t.schema = "spectrum";
  t.seed = 42;
  t.columns = {"k", "energy"};
  t.rows.push_back({static_cast<long long>(0), 1.0});
  t.rows.push_back({static_cast<long long>(1), 3.0});
  const auto j = nlohmann::json::parse(io::to_json(t));
  CHECK(j["schema"] == "spectrum");
  CHECK(j["meta"]["seed"] == 42);
  CHECK(j["meta"]["version"] == std::string(kVersion));
  REQUIRE(j["rows"].size() == 2);
  CHECK(j["rows"][1]["k"] == 1);
  CHECK(j["rows"][1]["energy"] == 3.0);
}

TEST_CASE("write_output") {
  io::Table t;
  t.schema = "scalar";
  t.columns = {"value"};
  t.rows.push_back({2.5});
  const std::string path = "chf_io_test_tmp.csv";
  io::write_output(t, "csv", path);
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(ss.str() == "value\n2.5\n");
  std::remove(path.c_str());
  CHECK_THROWS_AS(io::write_output(t, "yaml", ""), ChfError);
}

TEST_CASE("deterministic output") {
  io::Table t;
  t.schema = "grid_table";
  t.columns = {"x", "f"};
  for (int i = 0; i < 8; ++i) {
    t.rows.push_back({0.1 * i, std::cos(0.1 * i)});
  }
  CHECK(io::to_json(t) == io::to_json(t));
  CHECK(io::to_csv(t) == io::to_csv(t));
}
