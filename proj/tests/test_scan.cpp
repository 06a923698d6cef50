#include <catch_amalgamated.hpp>

#include <sstream>

#include "lipkin/lipkin.hpp"

using namespace lipkin;
using Catch::Approx;

namespace {

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    std::vector<std::string> cells(1);
    bool quoted = false;
    for (char ch : line) {
      if (ch == '"')
        quoted = !quoted;
      else if (ch == ',' && !quoted)
        cells.emplace_back();
      else
        cells.back() += ch;
    }
    rows.push_back(std::move(cells));
  }
  return rows;
}

ScanConfig small_config() {
  ScanConfig cfg;
  cfg.n_list = {4};
  cfg.chi_min = 0.5;
  cfg.chi_max = 3.5;
  cfg.chi_steps = 3;
  cfg.optimizer.restarts = 4;
  return cfg;
}

}  // namespace

TEST_CASE("parse_partition", "[scan]") {
  const auto p = parse_partition("1,3:0,2");
  CHECK(p.a().indices() == std::vector<int>{1, 3});
  CHECK(p.b().indices() == std::vector<int>{0, 2});
  const auto q = parse_partition("1:0");
  CHECK(q.a().indices() == std::vector<int>{1});
  CHECK(q.b().indices() == std::vector<int>{0});
  CHECK(parse_partition("3,1:2").a().indices() == std::vector<int>{1, 3});

  for (const char* bad : {"1,1:0", "1:1", "4:0", "1,3", ":0", "1:", "1:0:2", "0:1,2,3", "a:0", "1,,3:0", "12:0"})
    CHECK_THROWS_AS(parse_partition(bad), InvalidArgument);

  try {
    parse_partition("1,1:0");
  } catch (const InvalidArgument& e) {
    CHECK(std::string(e.what()).find("'1'") != std::string::npos);
  }
}

TEST_CASE("method names round trip", "[scan]") {
  for (Method m : kAllMethods) CHECK(method_from_string(to_string(m)) == m);
  CHECK_THROWS_AS(method_from_string("hfb"), InvalidArgument);
}

TEST_CASE("ScanConfig validation", "[scan]") {
  auto cfg = small_config();
  CHECK_NOTHROW(cfg.validate());
  cfg.chi_steps = 0;
  CHECK_THROWS_AS(cfg.validate(), InvalidArgument);
  cfg = small_config();
  cfg.n_list = {1};
  CHECK_THROWS_AS(cfg.validate(), InvalidArgument);
  cfg = small_config();
  cfg.chi_min = 4.0;
  CHECK_THROWS_AS(cfg.validate(), InvalidArgument);
  cfg = small_config();
  cfg.partitions = {"0:0"};
  CHECK_THROWS_AS(cfg.validate(), InvalidArgument);
  std::ostringstream sink;
  CHECK_THROWS_AS(run_scan(cfg, sink), InvalidArgument);
}

TEST_CASE("chi grid includes both ends", "[scan]") {
  auto cfg = small_config();
  CHECK(cfg.chi_grid() == std::vector<double>{0.5, 2.0, 3.5});
  cfg.chi_steps = 1;
  CHECK(cfg.chi_grid() == std::vector<double>{0.5});
}

TEST_CASE("run_scan layout", "[scan]") {
  const auto cfg = small_config();
  std::ostringstream out;
  const auto summary = run_scan(cfg, out);
  const auto rows = parse_csv(out.str());
  REQUIRE(rows.size() == 1 + 3 * 4 * 3 * 3);
  CHECK(out.str().substr(0, kCsvHeader.size()) == kCsvHeader);
  CHECK(summary.rows == rows.size() - 1);
  CHECK(summary.failed_points == 0);

  // Row order: N, chi, method, subsystem, partition.
  CHECK(rows[1][1] == "0.5");
  CHECK(rows[1][2] == "exact");
  CHECK(rows[1][3] == "n0n1");
  CHECK(rows[1][4] == "1,3:0,2");
  CHECK(rows[2][4] == "2,3:0,1");
  CHECK(rows[4][3] == "n0n2");
  CHECK(rows[10][2] == "hf");

  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& r = rows[i];
    REQUIRE(r.size() == 22);
    CHECK(r[21].empty());
    const double mi = std::stod(r[9]), j = std::stod(r[10]), d = std::stod(r[11]);
    CHECK(d >= -1e-8);
    CHECK(mi >= j - 1e-8);
    CHECK(r[14] == "true");
  }
}

TEST_CASE("run_scan at zero coupling", "[scan]") {
  ScanConfig cfg;
  cfg.n_list = {5};
  cfg.chi_min = cfg.chi_max = 0.0;
  cfg.chi_steps = 1;
  cfg.optimizer.restarts = 2;
  std::ostringstream out;
  run_scan(cfg, out);
  const auto rows = parse_csv(out.str());
  REQUIRE(rows.size() == 1 + 4 * 3 * 3);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    CHECK(std::stod(rows[i][5]) == Approx(-5.0));
    CHECK(std::abs(std::stod(rows[i][11])) < 1e-10);
  }
}

TEST_CASE("run_scan output is deterministic and independent of thread count", "[scan]") {
  auto cfg = small_config();
  std::ostringstream a, b, c;
  run_scan(cfg, a);
  run_scan(cfg, b);
  cfg.threads = 3;
  run_scan(cfg, c);
  CHECK(a.str() == b.str());
  CHECK(a.str() == c.str());
}

TEST_CASE("run_scan records timing only on request", "[scan]") {
  auto cfg = small_config();
  cfg.chi_steps = 1;
  cfg.methods = {Method::hf};
  cfg.subsystems = {Subsystem::n0n1};
  cfg.partitions = {"1:0"};
  cfg.record_timing = true;
  std::ostringstream out;
  run_scan(cfg, out);
  const auto rows = parse_csv(out.str());
  REQUIRE(rows.size() == 2);
  CHECK_FALSE(rows[1][21].empty());
  CHECK(std::stod(rows[1][21]) >= 0.0);
}

TEST_CASE("format_double round trips", "[scan]") {
  for (double x : {0.1, 1.0 / 3.0, -2.5e-17, 6.02214076e23}) CHECK(std::stod(format_double(x)) == x);
  CHECK(format_double(std::numeric_limits<double>::quiet_NaN()) == "nan");
}
