#include <catch_amalgamated.hpp>

#include <filesystem>
#include <regex>

#include "topsurg/io/csv.hpp"
#include "topsurg/io/format.hpp"
#include "topsurg/io/reports.hpp"
#include "topsurg/io/svg.hpp"
#include "topsurg/kernel/site_search.hpp"
#include "topsurg/kernel/surgery.hpp"

using namespace topsurg;
namespace fs = std::filesystem;

TEST_CASE("twelve significant digits") {
  CHECK(io::fmt(1.0 / 3.0) == "0.333333333333");
  CHECK(io::fmt(-0.0) == "0");
  CHECK(io::fmt(1e-20) == "1e-20");
  CHECK(io::fmt(123456789012345.0) == "1.23456789012e+14");
  CHECK(io::round_sig(1.0 / 3.0) == 0.333333333333);
  CHECK(io::round_sig(2.0) == 2.0);
  // JSON output carries at most 12 significant digits.
  CHECK(nlohmann::json(io::round_sig(std::sqrt(2.0))).dump() == "1.41421356237");
}

TEST_CASE("atomic write replaces the file and leaves no temporary") {
  const fs::path dir = fs::temp_directory_path() / "topsurg_io_test";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const fs::path f = dir / "out.txt";
  io::write_atomic(f, "first");
  io::write_atomic(f, "second");
  CHECK(io::read_file(f) == "second");
  std::size_t entries = 0;
  for ([[maybe_unused]] const auto& e : fs::directory_iterator(dir)) ++entries;
  CHECK(entries == 1);
  CHECK_THROWS(io::write_atomic(dir / "no" / "such.txt", "x"));
  fs::remove_all(dir);
}

TEST_CASE("trajectory CSV round trip") {
  const auto tr = flow::integrate({3, 3, 3}, {1, 1.3, 0.89}, 5.0);
  const std::string text = io::trajectory_csv(tr);
  CHECK(text.rfind("t,X,Y,Z\n", 0) == 0);
  const auto rows = io::parse_trajectory_csv(text);
  REQUIRE(rows.t.size() == tr.size());
  for (std::size_t i = 0; i < tr.size(); ++i) {
    CHECK(rows.t[i] == Catch::Approx(tr.times[i]).epsilon(1e-11));
    for (int k = 0; k < 3; ++k) CHECK(rows.states[i][k] == Catch::Approx(tr.states[i][k]).epsilon(1e-11));
  }
  // Windows line endings are accepted.
  CHECK(io::parse_trajectory_csv("t,X,Y,Z\r\n0,1,2,3\r\n").t.size() == 1);
}

TEST_CASE("malformed CSV reports the line") {
  auto line_of = [](const std::string& text) -> std::size_t {
    try {
      io::parse_trajectory_csv(text);
    } catch (const io::CsvError& e) {
      return e.line();
    }
    return 0;
  };
  CHECK(line_of("") == 0);
  CHECK_THROWS_AS(io::parse_trajectory_csv(""), io::CsvError);
  CHECK_THROWS_AS(io::parse_trajectory_csv("t,X,Y,Z\n"), io::CsvError);
  CHECK(line_of("time,x,y,z\n0,1,1,1\n") == 1);
  CHECK(line_of("t,X,Y,Z\n0,1,1,1\n1,1,1\n") == 3);
  CHECK(line_of("t,X,Y,Z\n0,1,1,1\n1,1,1,1,1\n") == 3);
  CHECK(line_of("t,X,Y,Z\n0,1,1,1\n\n1,1,nan,1\n") == 4);
  CHECK(line_of("t,X,Y,Z\n0,1,1,1\n0,1,1,1\n") == 3);
  CHECK(line_of("t,X,Y,Z\n0,1,1,1x\n") == 2);
}

TEST_CASE("svg rendering") {
  io::SvgPlot plot;
  plot.title = "a < b";
  plot.lines.push_back({{0, 0}, {1, 1}, {2, 0}});
  plot.markers.push_back({{1, 0.5}, "S2"});
  const std::string svg = io::render_svg(plot);
  CHECK(svg.find("width=\"640\" height=\"480\"") != std::string::npos);
  CHECK(svg.find("a &lt; b") != std::string::npos);
  CHECK(svg.find("<path") != std::string::npos);
  CHECK(svg.find(">S2</text>") != std::string::npos);
  CHECK(io::render_svg(plot) == svg);

  // Every drawn coordinate lies on the canvas.
  const std::regex coord(R"(([MLA-Z])([-0-9.e]+) ([-0-9.e]+))");
  for (auto it = std::sregex_iterator(svg.begin(), svg.end(), coord); it != std::sregex_iterator(); ++it) {
    const double x = std::stod((*it)[2]), y = std::stod((*it)[3]);
    CHECK(x >= 0.0);
    CHECK(x <= 640.0);
    CHECK(y >= 0.0);
    CHECK(y <= 480.0);
  }
  plot.bounds = io::Bounds{1, 1, 0, 1};
  CHECK_THROWS_AS(io::render_svg(plot), std::invalid_argument);
}

TEST_CASE("projections") {
  const lv3::State s{1, 2, 3};
  CHECK(io::project(s, io::Projection::xy) == io::Vec2{1, 2});
  CHECK(io::project(s, io::Projection::xz) == io::Vec2{1, 3});
  CHECK(io::project(s, io::Projection::yz) == io::Vec2{2, 3});
  // Points along (1,1,1) collapse to the vertical axis in the iso view.
  CHECK(io::project({2, 2, 2}, io::Projection::iso)[0] == Catch::Approx(0.0).margin(1e-15));
  CHECK_THROWS_AS(io::parse_projection("top"), std::invalid_argument);
}

TEST_CASE("report JSON shapes") {
  const auto j = io::equilibria_json({3, 3, 3});
  REQUIRE(j.at("equilibria").size() == 3);
  for (const auto& e : j.at("equilibria")) {
    CHECK(e.at("coordinates").size() == 3);
    CHECK(e.at("eigenvalues").size() == 3);
    CHECK(e.at("eigenvalues")[0].size() == 2);
    CHECK(e.at("residuals").size() == 3);
  }
  const auto f = io::to_json(solid::morse_frame(0.5, 2.0, 16));
  CHECK(f.at("branch_count") == 2);
  flow::LimitCycle failed;
  failed.failure = "no returns";
  const auto lc = io::to_json(failed);
  CHECK(lc.at("converged") == false);
  CHECK(lc.at("failure") == "no returns");
  CHECK_FALSE(lc.contains("loop"));
}

TEST_CASE("automatic sites are valid") {
  using namespace kernel;
  for (int g = 0; g <= 3; ++g) {
    const Surface s = subdivide(genus_g(g));
    const auto pair = find_disc_pair(s);
    REQUIRE(pair);
    CHECK(invariants(surgery_2d_0(s, *pair, {})).euler_characteristic == invariants(s).euler_characteristic - 2);
    const auto ann = find_annulus(s);
    REQUIRE(ann);
    CHECK(invariants(surgery_2d_1(s, *ann, {})).euler_characteristic == invariants(s).euler_characteristic + 2);
  }
  CHECK_FALSE(find_disc_pair(sphere()));
  const auto two = find_arc_site(two_circles(3, 4));
  REQUIRE(two);
  CHECK(surgery_1d_0(two_circles(3, 4), *two, {}).component_count() == 1);
  const auto one = find_arc_site(circle(5));
  REQUIRE(one);
  CHECK(surgery_1d_0(circle(5), *one, {}).component_count() == 2);
}
