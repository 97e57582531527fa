#include <catch_amalgamated.hpp>

#include <json.hpp>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

#include "support/numeric_diff.hpp"
#include "topsurg/io/csv.hpp"
#include "topsurg/io/format.hpp"
#include "topsurg/kernel/json_io.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Run {
  int code = -1;
  std::string out;
  std::string err;
};

/// Scratch directory, removed at scope exit.
struct Scratch {
  fs::path dir;
  Scratch() {
    static int counter = 0;
    dir = fs::temp_directory_path() / ("topsurg_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::remove_all(dir);
    fs::create_directories(dir);
  }
  ~Scratch() { fs::remove_all(dir); }
  [[nodiscard]] std::string operator/(const std::string& name) const { return (dir / name).string(); }
};

Run cli(const std::string& args, const std::string& env = "") {
  static const Scratch logs;
  const std::string err_file = logs / "stderr.txt";
  const std::string cmd = env + " " + TOPSURG_CLI + " " + args + " 2>" + err_file;
  Run r;
  FILE* pipe = ::popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = ::pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.err = topsurg::io::read_file(err_file);
  return r;
}

std::string golden(const std::string& name) { return topsurg::io::read_file(fs::path(TOPSURG_GOLDEN_DIR) / name); }

std::size_t count(const std::string& s, const std::string& what) {
  std::size_t n = 0;
  for (auto p = s.find(what); p != std::string::npos; p = s.find(what, p + 1)) ++n;
  return n;
}

const json& find_label(const json& eq, const std::string& label) {
  for (const auto& e : eq.at("equilibria"))
    if (e.at("label") == label) return e;
  throw std::runtime_error("missing " + label);
}

}  // namespace

TEST_CASE("cli: exit codes") {
  Scratch tmp;
  CHECK(cli("equilibria --A 3 --B 3 --C 3").code == 0);
  const auto zero = cli("equilibria --A 0 --B 3 --C 3");
  CHECK(zero.code == 2);
  CHECK(zero.err.find("positive") != std::string::npos);
  CHECK(cli("equilibria --A -1").code == 2);
  CHECK(cli("equilibria --unknown-flag 1").code == 2);
  CHECK(cli("").code == 2);
  CHECK(cli("no-such-command").code == 2);
  CHECK(cli("--help").code == 0);

  // Paths are validated before any computation.
  CHECK(cli("simulate --ic 1 1 1 --out " + (tmp / "missing/dir/x.csv")).code == 2);
  CHECK(cli("plot --in " + (tmp / "absent.csv")).code == 2);

  // Tolerances outside the supported range.
  CHECK(cli("simulate --ic 1 1 1 --t-end 1 --rtol 1e-2").code == 2);
  CHECK(cli("simulate --ic 1 1 1 --t-end 1", "TOPSURG_RTOL=1e-2").code == 2);
}

TEST_CASE("cli: equilibria reports") {
  const auto r = cli("equilibria --A 3 --B 3 --C 3");
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  const auto& s2 = find_label(j, "S2");
  bool zero = false, pair = false;
  for (const auto& ev : s2.at("eigenvalues")) {
    const double re = ev[0], im = ev[1];
    zero = zero || (std::abs(re) < 1e-9 && std::abs(im) < 1e-9);
    pair = pair || (std::abs(re - 1.5) < 1e-4 && std::abs(std::abs(im) - 1.3229) < 1e-4);
  }
  CHECK(zero);
  CHECK(pair);
  CHECK(s2.at("class") == "unstable_center");
  CHECK(j.at("region") == "region_a");

  const json b = json::parse(cli("equilibria --A 2.9851 --B 3 --C 3").out);
  CHECK(find_label(b, "S2").at("class") == "inward_unstable_vortex");
  CHECK(find_label(b, "S3").at("class") == "outward_stable_vortex");

  const auto csv = cli("equilibria --format csv");
  REQUIRE(csv.code == 0);
  CHECK(csv.out.rfind("label,X,Y,Z,class,", 0) == 0);
  CHECK(count(csv.out, "\n") == 4);
}

TEST_CASE("cli: simulate presets and the steady point") {
  Scratch tmp;
  const auto a = cli("simulate --preset a --t-end 200 --out-dir " + tmp.dir.string());
  REQUIRE(a.code == 0);
  for (int i = 1; i <= 5; ++i) {
    const auto rows = topsurg::io::parse_trajectory_csv(topsurg::io::read_file(tmp / ("run_" + std::to_string(i) + ".csv")));
    CHECK(rows.t.back() == 200.0);
    for (const auto& s : rows.states)
      for (double x : s) {
        CHECK(x > 0.0);
        CHECK(x < 10.0);
      }
  }
  CHECK_FALSE(fs::exists(tmp / "run_6.csv"));

  Scratch tb;
  REQUIRE(cli("simulate --preset b --t-end 50 --out-dir " + tb.dir.string()).code == 0);
  std::size_t files = 0;
  for (const auto& e : fs::directory_iterator(tb.dir)) files += e.path().extension() == ".csv";
  CHECK(files == 4);

  const auto steady = cli("simulate --ic 1 1 1 --t-end 10 --samples 6");
  REQUIRE(steady.code == 0);
  const auto rows = topsurg::io::parse_trajectory_csv(steady.out);
  REQUIRE(rows.t.size() == 6);
  for (const auto& s : rows.states) CHECK(s == topsurg::lv3::State{1, 1, 1});
}

TEST_CASE("cli: shell classification and limit cycle") {
  const json a = json::parse(cli("classify-shell --preset a").out);
  REQUIRE(a.at("runs").size() == 5);
  for (int i = 0; i < 4; ++i) CHECK(a["runs"][i]["verdict"] == "spherical");
  CHECK(a["runs"][4]["verdict"] == "stationary");
  const json b = json::parse(cli("classify-shell --preset b").out);
  REQUIRE(b.at("runs").size() == 4);
  for (const auto& r : b["runs"]) CHECK(r["verdict"] == "toroidal");

  const auto lc = cli("limit-cycle --A 2.9851 --B 3 --C 3 --ic 1 1 1");
  REQUIRE(lc.code == 0);
  const json c = json::parse(lc.out);
  CHECK(c.at("converged") == true);
  CHECK(c.at("period").get<double>() > 0.0);

  const auto fail = cli("limit-cycle --A 3 --B 3 --C 3");
  CHECK(fail.code == 1);
  const json f = json::parse(fail.out);
  CHECK(f.at("converged") == false);
  CHECK_FALSE(f.at("failure").get<std::string>().empty());
  CHECK(f.contains("warning"));
}

TEST_CASE("cli: classification and sections from a CSV file") {
  Scratch tmp;
  REQUIRE(cli("simulate --A 2.9851 --ic 1 1 0.95 --t-end 400 --out " + (tmp / "b.csv")).code == 0);
  const json j = json::parse(cli("classify-shell --A 2.9851 --in " + (tmp / "b.csv")).out);
  CHECK(j.at("verdict") == "toroidal");
  const auto p = cli("poincare --A 2.9851 --in " + (tmp / "b.csv"));
  REQUIRE(p.code == 0);
  const json pts = json::parse(p.out).at("points");
  CHECK(pts.size() > 10);
  const auto pc = cli("poincare --A 2.9851 --in " + (tmp / "b.csv") + " --point 1 1 1 --normal 0 1 0 --format csv");
  REQUIRE(pc.code == 0);
  CHECK(pc.out.rfind("t,X,Y,Z,direction\n", 0) == 0);
}

TEST_CASE("cli: surgery examples and JSON round trip") {
  Scratch tmp;
  REQUIRE(cli("build --kind sphere --subdivide 1 --out " + (tmp / "sphere.json")).code == 0);
  const auto r = cli("surgery --in " + (tmp / "sphere.json") + " --dim 2 --type 0 --auto-site --out " + (tmp / "torus.json"));
  REQUIRE(r.code == 0);
  const json t = json::parse(topsurg::io::read_file(tmp / "torus.json"));
  CHECK(t["invariants"]["components"] == 1);
  CHECK(t["invariants"]["euler_characteristic"] == 0);
  CHECK(t["invariants"]["genus"] == 1);

  // Round trip: the emitted complex re-parses, re-validates and feeds back in.
  const auto c = topsurg::kernel::complex_from_json(t.at("complex"));
  CHECK(topsurg::kernel::to_json(topsurg::kernel::invariants(c)) == t.at("invariants"));
  std::string annulus;
  for (const auto& i : t["site"]["inserted_annulus"]) annulus += " " + std::to_string(i.get<int>());
  const json back = json::parse(cli("surgery --in " + (tmp / "torus.json") + " --dim 2 --type 1 --annulus" + annulus).out);
  CHECK(back["invariants"]["genus"] == 0);
  CHECK(back["invariants"]["euler_characteristic"] == 2);

  const json two = json::parse(cli("surgery --in " + (tmp / "sphere.json") + " --dim 2 --type 1 --auto-site").out);
  CHECK(two["invariants"]["components"] == 2);
  CHECK(two["invariants"]["euler_characteristic"] == 4);

  REQUIRE(cli("build --kind circle --n 8 --out " + (tmp / "circle.json")).code == 0);
  const json flipped = json::parse(cli("surgery --in " + (tmp / "circle.json") + " --dim 1 --arcs 1 5 --flip").out);
  CHECK(flipped["invariants"]["components"] == 1);
  const json standard = json::parse(cli("surgery --in " + (tmp / "circle.json") + " --dim 1 --arcs 1 5").out);
  CHECK(standard["invariants"]["components"] == 2);

  const auto bad = cli("surgery --in " + (tmp / "sphere.json") + " --dim 2 --type 0 --disc1 0 --disc2 0");
  CHECK(bad.code == 2);
  CHECK(bad.err.find("error:") != std::string::npos);
  CHECK(cli("surgery --in " + (tmp / "circle.json") + " --dim 1 --arcs 0 99").code == 2);
  CHECK(cli("surgery --in " + (tmp / "circle.json") + " --dim 2 --auto-site").code == 2);
  REQUIRE(cli("build --kind sphere --out " + (tmp / "tet.json")).code == 0);
  CHECK(cli("surgery --in " + (tmp / "tet.json") + " --dim 2 --type 0 --auto-site").code == 2);
  topsurg::io::write_atomic(tmp / "broken.json", "{\"kind\":\"surface\",\"vertices\":3,\"triangles\":[[0,1,2]]}");
  CHECK(cli("surgery --in " + (tmp / "broken.json") + " --dim 2 --auto-site").code == 2);
}

TEST_CASE("cli: morse frames and solid demo") {
  Scratch tmp;
  const auto r = cli("morse-frames --t -1 0 1 --out-dir " + tmp.dir.string());
  REQUIRE(r.code == 0);
  const std::array<std::size_t, 3> branches{2, 4, 2};
  for (int i = 0; i < 3; ++i) {
    const auto svg = topsurg::io::read_file(tmp / ("frame_" + std::to_string(i) + ".svg"));
    CHECK(count(svg, "<path") == branches[static_cast<std::size_t>(i)]);
  }
  const json frames = json::parse(cli("morse-frames --t -1 0 1 --format json").out).at("frames");
  REQUIRE(frames.size() == 3);
  CHECK(frames[1]["degenerate"] == true);

  CHECK(json::parse(cli("solid-demo --kind 2d0 --layers 5").out).at("limit") == "circle");
  CHECK(json::parse(cli("solid-demo --kind 2d1 --layers 1").out).at("limit") == "two_points");
  CHECK(json::parse(cli("solid-demo --kind 1d0 --layers 3").out).at("limit") == "two_points");
  const json dual = json::parse(cli("solid-demo --kind 2d0 --layers 3 --direction dual").out);
  CHECK(dual.at("input").at("limit") == "circle");
  CHECK(dual.at("limit") == "point");
  CHECK(dual.at("section").at("match") == true);
  CHECK(cli("solid-demo --kind 3d0").code == 2);
  CHECK(cli("solid-demo --layers 0").code == 2);
}

TEST_CASE("cli: plot errors name the offending line") {
  Scratch tmp;
  topsurg::io::write_atomic(tmp / "empty.csv", "");
  CHECK(cli("plot --in " + (tmp / "empty.csv")).code == 2);
  topsurg::io::write_atomic(tmp / "header.csv", "t,X,Y,Z\n");
  CHECK(cli("plot --in " + (tmp / "header.csv")).code == 2);
  topsurg::io::write_atomic(tmp / "bad.csv", "t,X,Y,Z\n0,1,1,1\n1,1,oops,1\n");
  const auto r = cli("plot --in " + (tmp / "bad.csv"));
  CHECK(r.code == 2);
  CHECK(r.err.find("line 3") != std::string::npos);
  topsurg::io::write_atomic(tmp / "short.csv", "t,X,Y,Z\n0,1,1,1\n1,1,1\n");
  CHECK(cli("plot --in " + (tmp / "short.csv")).err.find("line 3") != std::string::npos);
  CHECK(cli("plot --in " + (tmp / "bad.csv") + " --projection top").code == 2);
}

TEST_CASE("cli: identical invocations give identical bytes") {
  Scratch tmp;
  for (int k = 0; k < 2; ++k) {
    const std::string d = tmp / std::to_string(k);
    fs::create_directories(d);
    REQUIRE(cli("simulate --preset b --t-end 100 --out-dir " + d).code == 0);
    REQUIRE(cli("plot --in " + d + "/run_1.csv --projection iso --equilibria --A 2.9851 --out " + d + "/p.svg").code == 0);
    REQUIRE(cli("classify-shell --preset a --t-end 500 --out " + d + "/shell.json").code == 0);
    REQUIRE(cli("morse-frames --t -0.5 0 0.5 --out-dir " + d).code == 0);
  }
  for (const char* f : {"run_1.csv", "run_4.csv", "p.svg", "shell.json", "frame_0.svg", "frame_1.svg"})
    CHECK(topsurg::io::read_file(tmp / (std::string("0/") + f)) == topsurg::io::read_file(tmp / (std::string("1/") + f)));
  CHECK(cli("equilibria --A 2.9851").out == cli("equilibria --A 2.9851").out);
}

TEST_CASE("cli: tolerance environment variables") {
  const auto base = cli("simulate --ic 1 1.3 0.89 --t-end 20");
  const auto loose = cli("simulate --ic 1 1.3 0.89 --t-end 20", "TOPSURG_RTOL=1e-5 TOPSURG_ATOL=1e-8");
  REQUIRE(loose.code == 0);
  CHECK(count(loose.out, "\n") < count(base.out, "\n"));
  // An explicit flag wins over the environment.
  CHECK(cli("simulate --ic 1 1.3 0.89 --t-end 20 --rtol 1e-9 --atol 1e-12", "TOPSURG_RTOL=1e-5 TOPSURG_ATOL=1e-8").out ==
        base.out);
}

TEST_CASE("cli: golden SVG plots") {
  Scratch tmp;
  struct Case {
    std::string simulate, plot, golden;
  };
  const Case cases[] = {
      {"--A 2.9851 --B 3 --C 3 --ic 1 1 0.95 --t-end 60 --samples 3000", "--projection iso --title region_b",
       "plot_region_b_iso.svg"},
      {"--A 3 --B 3 --C 3 --ic 1 1.3 0.89 --t-end 60 --samples 3000", "--projection xz --title region_a",
       "plot_region_a_xz.svg"},
  };
  for (const auto& c : cases) {
    INFO(c.golden);
    REQUIRE(cli("simulate " + c.simulate + " --out " + (tmp / "traj.csv")).code == 0);
    const auto r = cli("plot --in " + (tmp / "traj.csv") + " " + c.plot);
    REQUIRE(r.code == 0);
    const auto d = topsurg::testing::numeric_diff(r.out, golden(c.golden));
    INFO(d.message);
    CHECK(d.equal);
  }
  REQUIRE(cli("morse-frames --t -1 0 1 --out-dir " + tmp.dir.string()).code == 0);
  for (int i = 0; i < 3; ++i) {
    const std::string name = "frame_" + std::to_string(i) + ".svg";
    INFO(name);
    const auto d = topsurg::testing::numeric_diff(topsurg::io::read_file(tmp / name), golden("morse_" + name));
    INFO(d.message);
    CHECK(d.equal);
  }
}

TEST_CASE("numeric diff tolerates only tiny relative changes") {
  using topsurg::testing::numeric_diff;
  CHECK(numeric_diff("<a x=\"1.5\"/>", "<a x=\"1.5000000000001\"/>").equal);
  CHECK_FALSE(numeric_diff("<a x=\"1.5\"/>", "<a x=\"1.5001\"/>").equal);
  CHECK_FALSE(numeric_diff("<a x=\"1\"/>", "<b x=\"1\"/>").equal);
  CHECK_FALSE(numeric_diff("1 2", "1 2 3").equal);
  CHECK(numeric_diff("0 -0", "0 0").equal);
}
