// topsurg: command-line front end for the surgery kernel, the solid/Morse
// families and the three-species Lotka-Volterra system.
//
// Exit codes: 0 success, 1 computational failure, 2 usage or validation error.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <future>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "topsurg/flow/limit_cycle.hpp"
#include "topsurg/flow/poincare.hpp"
#include "topsurg/flow/shell.hpp"
#include "topsurg/io/csv.hpp"
#include "topsurg/io/format.hpp"
#include "topsurg/io/reports.hpp"
#include "topsurg/io/svg.hpp"
#include "topsurg/kernel/json_io.hpp"
#include "topsurg/kernel/site_search.hpp"
#include "topsurg/kernel/standard.hpp"
#include "topsurg/kernel/surgery.hpp"
#include "topsurg/lv3/equilibria.hpp"
#include "topsurg/lv3/presets.hpp"
#include "topsurg/solid/cross_section.hpp"
#include "topsurg/solid/morse.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace topsurg;

namespace {

/// Bad arguments or input data: exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A computation that ran but did not produce a result: exit code 1.
struct ComputeFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Strictly positive finite number.
const auto kPositive = CLI::Validator(
    [](std::string& v) -> std::string {
      double x = 0.0;
      if (!CLI::detail::lexical_cast(v, x) || !std::isfinite(x) || !(x > 0.0)) return "must be a positive number, got " + v;
      return {};
    },
    "POSITIVE");

/// Output file whose directory must exist.
const auto kWritablePath = CLI::Validator(
    [](std::string& p) -> std::string {
      const fs::path path(p);
      const fs::path dir = path.has_parent_path() ? path.parent_path() : fs::path(".");
      if (path.filename().empty()) return "output path has no file name: " + p;
      if (!fs::is_directory(dir)) return "output directory does not exist: " + dir.string();
      return {};
    },
    "PATH", "WRITABLE");

// ---------------------------------------------------------------------------
// Shared option groups

struct ParamArgs {
  double A = 3.0, B = 3.0, C = 3.0;
  CLI::Option *a = nullptr, *b = nullptr, *c = nullptr;

  void add(CLI::App* app) {
    a = app->add_option("--A", A, "parameter A (> 0)")->check(kPositive);
    b = app->add_option("--B", B, "parameter B (> 0)")->check(kPositive);
    c = app->add_option("--C", C, "parameter C (> 0)")->check(kPositive);
  }
  /// Parameters, with unset flags taken from `base`.
  [[nodiscard]] lv3::SystemParams resolve(const lv3::SystemParams& base) const {
    return {a->count() ? A : base.A, b->count() ? B : base.B, c->count() ? C : base.C};
  }
  [[nodiscard]] lv3::SystemParams resolve() const { return {A, B, C}; }
};

struct TolArgs {
  double rtol = 1e-9, atol = 1e-12;

  void add(CLI::App* app) {
    app->add_option("--rtol", rtol, "relative tolerance")->envname("TOPSURG_RTOL")->capture_default_str();
    app->add_option("--atol", atol, "absolute tolerance")->envname("TOPSURG_ATOL")->capture_default_str();
  }
  [[nodiscard]] flow::IntegratorOptions options() const {
    flow::IntegratorOptions o;
    o.rtol = rtol;
    o.atol = atol;
    o.validate();
    return o;
  }
};

lv3::State to_state(const std::vector<double>& v) { return {v.at(0), v.at(1), v.at(2)}; }

void emit(const std::string& content, const std::string& out) {
  if (out.empty())
    std::cout << content;
  else
    io::write_atomic(out, content);
}

json state_json(const lv3::State& s) { return io::num_array(s); }

/// Trajectory from `--in` (CSV) or from integrating `ic`.
flow::Trajectory load_or_integrate(const std::string& in, const lv3::SystemParams& p, const lv3::State& ic,
                                   double t_end, const flow::IntegratorOptions& opt) {
  if (!in.empty()) return io::trajectory_from_rows(io::parse_trajectory_csv(io::read_file(in)), p);
  return flow::integrate(p, ic, t_end, opt);
}

// ---------------------------------------------------------------------------
// equilibria

struct EquilibriaCmd {
  ParamArgs params;
  std::string format = "json", out;

  void add(CLI::App& root) {
    auto* app = root.add_subcommand("equilibria", "steady states, Jacobian spectra and stability classes");
    params.add(app);
    app->add_option("--format", format, "output format")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
    app->add_option("--out", out, "output file (default stdout)")->check(kWritablePath);
    app->callback([this] { run(); });
  }

  void run() const {
    const auto p = params.resolve();
    p.validate();
    if (format == "json") return emit(io::dump(io::equilibria_json(p)), out);
    std::string csv = "label,X,Y,Z,class";
    for (int k = 1; k <= 3; ++k) csv += ",l" + std::to_string(k) + "_re,l" + std::to_string(k) + "_im";
    csv += "\n";
    for (const auto& e : lv3::equilibria(p)) {
      csv += std::string(lv3::to_string(e.label));
      for (double x : e.coordinates) csv += "," + io::fmt(x);
      csv += "," + std::string(lv3::to_string(e.stability));
      for (const auto& z : e.eigen.values) csv += "," + io::fmt(z.real()) + "," + io::fmt(z.imag());
      csv += "\n";
    }
    emit(csv, out);
  }
};

// ---------------------------------------------------------------------------
// simulate

struct SimulateCmd {
  ParamArgs params;
  TolArgs tol;
  std::vector<double> ic;
  std::string preset, out, out_dir, format = "csv";
  double t_end = 200.0;
  std::size_t samples = 0;

  void add(CLI::App& root) {
    auto* app = root.add_subcommand("simulate", "integrate trajectories to CSV");
    params.add(app);
    tol.add(app);
    auto* o_ic = app->add_option("--ic", ic, "initial condition X Y Z")->expected(3);
    auto* o_pre = app->add_option("--preset", preset, "reference IC set (a or b)")->check(CLI::IsMember({"a", "b"}));
    o_ic->excludes(o_pre);
    app->add_option("--t-end", t_end, "integration time")->check(kPositive)->capture_default_str();
    app->add_option("--samples", samples, "resample to N uniform times (0 keeps the adaptive steps)");
    app->add_option("--format", format, "output format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
    app->add_option("--out", out, "output file for a single run (default stdout)")->check(kWritablePath);
    app->add_option("--out-dir", out_dir, "directory for preset runs (run_1.csv, ...)")->check(CLI::ExistingDirectory);
    app->callback([this] { run(); });
  }

  [[nodiscard]] std::string render(const flow::Trajectory& tr, const lv3::State& x0) const {
    if (format == "csv") return io::trajectory_csv(tr);
    json rows = json::array();
    for (std::size_t i = 0; i < tr.size(); ++i) {
      auto r = io::num_array(tr.states[i]);
      r.insert(r.begin(), io::round_sig(tr.times[i]));
      rows.push_back(std::move(r));
    }
    return io::dump({{"params", io::params_json(tr.params)},
                     {"ic", state_json(x0)},
                     {"columns", {"t", "X", "Y", "Z"}},
                     {"rows", std::move(rows)},
                     {"accepted_steps", tr.stats.accepted},
                     {"rejected_steps", tr.stats.rejected}});
  }

  [[nodiscard]] flow::Trajectory one(const lv3::SystemParams& p, const lv3::State& x0,
                                     const flow::IntegratorOptions& opt) const {
    auto tr = flow::integrate(p, x0, t_end, opt);
    if (samples > 0) tr = tr.resampled(samples);
    return tr;
  }

  void run() const {
    if (samples == 1) throw UsageError("--samples must be 0 or at least 2");
    const auto opt = tol.options();
    if (preset.empty()) {
      if (ic.empty()) throw UsageError("simulate needs --ic or --preset");
      if (!out_dir.empty()) throw UsageError("--out-dir is for --preset runs; use --out");
      const auto p = params.resolve();
      return emit(render(one(p, to_state(ic), opt), to_state(ic)), out);
    }
    if (out_dir.empty()) throw UsageError("--preset needs --out-dir");
    if (!out.empty()) throw UsageError("--preset writes into --out-dir; --out is not used");
    const auto pre = lv3::preset(preset);
    const auto p = params.resolve(pre.params);
    p.validate();
    std::vector<std::future<std::string>> jobs;
    for (const auto& x0 : pre.initial_conditions)
      jobs.push_back(std::async(std::launch::async, [this, p, x0, opt] { return render(one(p, x0, opt), x0); }));
    const std::string ext = format == "csv" ? ".csv" : ".json";
    for (std::size_t i = 0; i < jobs.size(); ++i) {
      const fs::path path = fs::path(out_dir) / ("run_" + std::to_string(i + 1) + ext);
      io::write_atomic(path, jobs[i].get());
      std::cout << path.string() << "\n";
    }
  }
};

// ---------------------------------------------------------------------------
// classify-shell

struct ClassifyCmd {
  ParamArgs params;
  TolArgs tol;
  std::vector<double> ic;
  std::string preset, in, out;
  double t_end = 2000.0;

  void add(CLI::App& root) {
    auto* app = root.add_subcommand("classify-shell", "spherical / toroidal / stationary verdict for orbits");
    params.add(app);
    tol.add(app);
    auto* o_ic = app->add_option("--ic", ic, "initial condition X Y Z")->expected(3);
    auto* o_pre = app->add_option("--preset", preset, "classify every IC of a reference set")
                      ->check(CLI::IsMember({"a", "b"}));
    auto* o_in = app->add_option("--in", in, "trajectory CSV instead of integrating")->check(CLI::ExistingFile);
    o_ic->excludes(o_pre)->excludes(o_in);
    o_pre->excludes(o_in);
    app->add_option("--t-end", t_end, "integration time")->check(kPositive)->capture_default_str();
    app->add_option("--out", out, "output file (default stdout)")->check(kWritablePath);
    app->callback([this] { run(); });
  }

  static json classify(const flow::Trajectory& tr) {
    const auto c = flow::classify_shell(tr, lv3::slow_manifold(tr.params));
    return io::to_json(c);
  }

  void run() const {
    const auto opt = tol.options();
    if (!preset.empty()) {
      const auto pre = lv3::preset(preset);
      const auto p = params.resolve(pre.params);
      p.validate();
      std::vector<std::future<json>> jobs;
      for (const auto& x0 : pre.initial_conditions)
        jobs.push_back(std::async(std::launch::async, [this, p, x0, opt] {
          json j = classify(flow::integrate(p, x0, t_end, opt));
          j["ic"] = state_json(x0);
          return j;
        }));
      json runs = json::array();
      for (auto& j : jobs) runs.push_back(j.get());
      return emit(io::dump({{"params", io::params_json(p)},
                            {"region", std::string(lv3::to_string(lv3::region(p)))},
                            {"t_end", io::round_sig(t_end)},
                            {"runs", std::move(runs)}}),
                  out);
    }
    if (ic.empty() && in.empty()) throw UsageError("classify-shell needs --ic, --preset or --in");
    const auto p = params.resolve();
    p.validate();
    const auto tr = load_or_integrate(in, p, ic.empty() ? lv3::State{} : to_state(ic), t_end, opt);
    json j = classify(tr);
    j["params"] = io::params_json(p);
    j["region"] = std::string(lv3::to_string(lv3::region(p)));
    j["ic"] = state_json(tr.states.front());
    j["t_end"] = io::round_sig(tr.t_end());
    emit(io::dump(j), out);
  }
};

// ---------------------------------------------------------------------------
// poincare

struct PoincareCmd {
  ParamArgs params;
  TolArgs tol;
  std::vector<double> ic, point, normal;
  std::string in, out, format = "json";
  double t_end = 200.0;

  void add(CLI::App& root) {
    auto* app = root.add_subcommand("poincare", "crossings of an orbit with a section plane");
    params.add(app);
    tol.add(app);
    auto* o_ic = app->add_option("--ic", ic, "initial condition X Y Z")->expected(3);
    auto* o_in = app->add_option("--in", in, "trajectory CSV instead of integrating")->check(CLI::ExistingFile);
    o_ic->excludes(o_in);
    auto* o_pt = app->add_option("--point", point, "point on the plane (default S2)")->expected(3);
    auto* o_nm = app->add_option("--normal", normal, "plane normal (default: the plane containing the S2-S3 axis)")
                     ->expected(3);
    o_pt->needs(o_nm);
    o_nm->needs(o_pt);
    app->add_option("--t-end", t_end, "integration time")->check(kPositive)->capture_default_str();
    app->add_option("--format", format, "output format")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
    app->add_option("--out", out, "output file (default stdout)")->check(kWritablePath);
    app->callback([this] { run(); });
  }

  void run() const {
    if (ic.empty() && in.empty()) throw UsageError("poincare needs --ic or --in");
    const auto p = params.resolve();
    p.validate();
    flow::SectionPlane plane{};
    if (point.empty()) {
      const flow::AxisFrame frame(lv3::slow_manifold(p));
      plane = {frame.origin, frame.e2, frame.e1};
    } else {
      plane = {to_state(point), to_state(normal), std::nullopt};
    }
    const auto tr = load_or_integrate(in, p, ic.empty() ? lv3::State{} : to_state(ic), t_end, tol.options());
    const auto pts = flow::poincare(tr, plane);
    if (format == "csv") {
      std::string csv = "t,X,Y,Z,direction\n";
      for (const auto& sp : pts)
        csv += io::fmt(sp.t) + "," + io::fmt(sp.state[0]) + "," + io::fmt(sp.state[1]) + "," + io::fmt(sp.state[2]) +
               "," + (sp.direction == flow::Crossing::up ? "up" : "down") + "\n";
      return emit(csv, out);
    }
    json pl{{"point", state_json(plane.point)}, {"normal", state_json(plane.normal)}};
    if (plane.half) pl["half"] = state_json(*plane.half);
    emit(io::dump({{"params", io::params_json(p)}, {"plane", std::move(pl)}, {"points", io::to_json(pts)}}), out);
  }
};

// ---------------------------------------------------------------------------
// limit-cycle

struct LimitCycleCmd {
  ParamArgs params;
  std::vector<double> ic{1.0, 1.0, 1.0};
  std::string out;
  double eps = 1e-8, transient = 300.0;

  void add(CLI::App& root) {
    auto* app = root.add_subcommand("limit-cycle", "closed orbit around the S2-S3 axis (exit 1 if none converges)");
    params.add(app);
    app->add_option("--ic", ic, "initial condition X Y Z")->expected(3)->capture_default_str();
    app->add_option("--eps", eps, "convergence tolerance of successive returns")
        ->check(kPositive)
        ->capture_default_str();
    app->add_option("--transient", transient, "flow time used to seed the search")
        ->check(kPositive)
        ->capture_default_str();
    app->add_option("--out", out, "output file (default stdout)")->check(kWritablePath);
    app->callback([this] { run(); });
  }

  void run() const {
    const auto p = params.resolve(lv3::preset_b().params);
    p.validate();
    flow::LimitCycleOptions opt;
    opt.eps_cycle = eps;
    opt.transient = transient;
    const auto c = flow::detect_limit_cycle(p, to_state(ic), opt);
    json j = io::to_json(c);
    j["params"] = io::params_json(p);
    j["ic"] = state_json(to_state(ic));
    emit(io::dump(j), out);
    if (!c.converged) throw ComputeFailure("limit cycle did not converge: " + c.failure);
  }
};

// ---------------------------------------------------------------------------
// build / surgery

struct BuildCmd {
  std::string kind, out;
  int n = 6, m = 6, genus = 0, subdivisions = 0;

  void add(CLI::App& root) {
    auto* app = root.add_subcommand("build", "emit a standard complex as JSON");
    app->add_option("--kind", kind, "complex kind")
        ->required()
        ->check(CLI::IsMember({"circle", "two_circles", "sphere", "banded_sphere", "torus", "grid_torus", "genus"}));
    app->add_option("--n", n, "arcs of the (first) circle, rings, or grid rows")->check(CLI::Range(1, 100000))
        ->capture_default_str();
    app->add_option("--m", m, "arcs of the second circle, segments, or grid columns")->check(CLI::Range(1, 100000))
        ->capture_default_str();
    app->add_option("--genus", genus, "genus for --kind genus")->check(CLI::Range(0, 1000));
    app->add_option("--subdivide", subdivisions, "barycentric-style subdivisions of a surface")
        ->check(CLI::Range(0, 4));
    app->add_option("--out", out, "output file (default stdout)")->check(kWritablePath);
    app->callback([this] { run(); });
  }

  void run() const {
    kernel::Complex c;
    if (kind == "circle") c = kernel::circle(n);
    else if (kind == "two_circles") c = kernel::two_circles(n, m);
    else if (kind == "sphere") c = kernel::sphere();
    else if (kind == "banded_sphere") c = kernel::banded_sphere(n, m);
    else if (kind == "torus") c = kernel::torus();
    else if (kind == "grid_torus") c = kernel::grid_torus(n, m);
    else c = kernel::genus_g(genus);
    if (subdivisions > 0) {
      auto* s = std::get_if<kernel::Surface>(&c);
      if (!s) throw UsageError("--subdivide applies to surfaces only");
      for (int i = 0; i < subdivisions; ++i) *s = kernel::subdivide(*s);
    }
    emit(io::dump(kernel::to_json(c)), out);
  }
};

struct SurgeryCmd {
  std::string in, out;
  int dim = 2, type = 0;
  std::vector<long long> arcs;
  std::vector<std::size_t> disc1, disc2, annulus;
  long long rotation = 0;
  bool flip = false, auto_site = false;

  void add(CLI::App& root) {
    auto* app = root.add_subcommand("surgery", "apply a 1d 0-, 2d 0- or 2d 1-surgery to a complex");
    app->add_option("--in", in, "complex JSON (bare or as emitted by surgery)")->required()->check(CLI::ExistingFile);
    app->add_option("--dim", dim, "dimension of the manifold")->check(CLI::IsMember({1, 2}))->capture_default_str();
    app->add_option("--type", type, "surgery index n")->check(CLI::IsMember({0, 1}))->capture_default_str();
    app->add_option("--arcs", arcs, "two arc labels (1d)")->expected(2);
    app->add_option("--disc1", disc1, "triangle indices of the first disc (2d 0-surgery)")->expected(1, -1);
    app->add_option("--disc2", disc2, "triangle indices of the second disc (2d 0-surgery)")->expected(1, -1);
    app->add_option("--annulus", annulus, "triangle indices of the annulus (2d 1-surgery)")->expected(1, -1);
    app->add_flag("--auto-site", auto_site, "pick a valid site deterministically");
    app->add_option("--rotation", rotation, "twist of the gluing map")->capture_default_str();
    app->add_flag("--flip", flip, "reverse the orientation of the gluing map");
    app->add_option("--out", out, "output file (default stdout)")->check(kWritablePath);
    app->callback([this] { run(); });
  }

  static kernel::Complex read_complex(const std::string& path) {
    json j;
    try {
      j = json::parse(io::read_file(path));
    } catch (const json::parse_error& e) {
      throw UsageError(std::string("invalid JSON in ") + path + ": " + e.what());
    }
    if (j.is_object() && j.contains("complex")) j = j.at("complex");
    return kernel::complex_from_json(j);
  }

  void run() const {
    const kernel::Complex input = read_complex(in);
    const kernel::GluingMap g{rotation, flip};
    json site;
    kernel::Complex result;
    if (dim == 1) {
      if (type != 0) throw UsageError("1-dimensional surgery has type 0 only");
      const auto* m = std::get_if<kernel::OneManifold>(&input);
      if (!m) throw UsageError("--dim 1 needs a curve complex");
      kernel::ArcSite s{};
      if (!arcs.empty()) {
        s = {static_cast<kernel::ArcId>(arcs[0]), static_cast<kernel::ArcId>(arcs[1])};
      } else if (auto_site) {
        auto f = kernel::find_arc_site(*m);
        if (!f) throw UsageError("no site with two distinct arcs exists");
        s = *f;
      } else {
        throw UsageError("1d surgery needs --arcs or --auto-site");
      }
      auto r = kernel::surgery_1d_0_traced(*m, s, g);
      site = {{"arcs", {s.first, s.second}}, {"inserted_arcs", {r.inserted.first, r.inserted.second}}};
      result = std::move(r.manifold);
    } else {
      const auto* surf = std::get_if<kernel::Surface>(&input);
      if (!surf) throw UsageError("--dim 2 needs a surface complex");
      if (type == 0) {
        kernel::DiscPairSite s;
        if (!disc1.empty() || !disc2.empty()) {
          if (disc1.empty() || disc2.empty()) throw UsageError("2d 0-surgery needs both --disc1 and --disc2");
          s = {disc1, disc2};
        } else if (auto_site) {
          auto f = kernel::find_disc_pair(*surf);
          if (!f) throw UsageError("surface has no two vertex-disjoint triangles; subdivide it first");
          s = *f;
        } else {
          throw UsageError("2d 0-surgery needs --disc1/--disc2 or --auto-site");
        }
        auto r = kernel::surgery_2d_0_traced(*surf, s, g);
        site = {{"disc1", s.first}, {"disc2", s.second}, {"inserted_annulus", r.inserted.triangles}};
        result = std::move(r.surface);
      } else {
        kernel::AnnulusSite s;
        if (!annulus.empty()) {
          s = {annulus};
        } else if (auto_site) {
          auto f = kernel::find_annulus(*surf);
          if (!f) throw UsageError("no annulus site found");
          s = *f;
        } else {
          throw UsageError("2d 1-surgery needs --annulus or --auto-site");
        }
        auto r = kernel::surgery_2d_1_traced(*surf, s, g);
        site = {{"annulus", s.triangles}, {"inserted_disc1", r.inserted.first}, {"inserted_disc2", r.inserted.second}};
        result = std::move(r.surface);
      }
    }
    emit(io::dump({{"surgery", std::to_string(dim) + "d" + std::to_string(type)},
                   {"gluing", {{"rotation", rotation}, {"flip", flip}}},
                   {"site", std::move(site)},
                   {"input_invariants", kernel::to_json(kernel::invariants(input))},
                   {"invariants", kernel::to_json(kernel::invariants(result))},
                   {"complex", kernel::to_json(result)}}),
         out);
  }
};

// ---------------------------------------------------------------------------
// morse-frames / solid-demo

struct MorseCmd {
  std::vector<double> t;
  double box = 2.0;
  int resolution = 64;
  std::string format = "svg", out_dir, out;

  void add(CLI::App& root) {
    auto* app = root.add_subcommand("morse-frames", "level sets x^2 - y^2 = t");
    app->add_option("--t", t, "levels")->required()->expected(1, -1)->allow_extra_args();
    app->add_option("--box", box, "half-width of the square window")->check(kPositive)->capture_default_str();
    app->add_option("--resolution", resolution, "grid cells per side")->check(CLI::Range(8, 4096))->capture_default_str();
    app->add_option("--format", format, "output format")->check(CLI::IsMember({"svg", "json"}))->capture_default_str();
    app->add_option("--out-dir", out_dir, "directory for frame_<i>.svg")->check(CLI::ExistingDirectory);
    app->add_option("--out", out, "output file for JSON (default stdout)")->check(kWritablePath);
    app->callback([this] { run(); });
  }

  void run() const {
    const auto frames = solid::morse_frames(t, box, resolution);
    if (format == "json") {
      json list = json::array();
      for (const auto& f : frames) list.push_back(io::to_json(f));
      return emit(io::dump({{"frames", std::move(list)}}), out);
    }
    if (out_dir.empty()) throw UsageError("--format svg needs --out-dir");
    for (std::size_t i = 0; i < frames.size(); ++i) {
      const auto& f = frames[i];
      io::SvgPlot plot;
      plot.title = "x^2 - y^2 = " + io::fmt(f.t) + " (" + std::to_string(f.branch_count()) + " branches" +
                   (f.degenerate ? ", critical level" : "") + ")";
      plot.bounds = io::Bounds{-f.box, f.box, -f.box, f.box};
      plot.origin_axes = true;
      for (const auto& l : f.polylines) plot.lines.emplace_back(l.begin(), l.end());
      const fs::path path = fs::path(out_dir) / ("frame_" + std::to_string(i) + ".svg");
      io::write_atomic(path, io::render_svg(plot));
      std::cout << path.string() << "\n";
    }
  }
};

struct SolidCmd {
  std::string kind = "2d0", direction = "forward", out;
  std::size_t layers = 5;

  void add(CLI::App& root) {
    auto* app = root.add_subcommand("solid-demo", "solid surgery on a layered family with its limit rule");
    app->add_option("--kind", kind, "surgery kind")->check(CLI::IsMember({"1d0", "2d0", "2d1"}))->capture_default_str();
    app->add_option("--layers", layers, "number of layers")->check(CLI::Range(1, 64))->capture_default_str();
    app->add_option("--direction", direction, "forward or dual")
        ->check(CLI::IsMember({"forward", "dual"}))
        ->capture_default_str();
    app->add_option("--out", out, "output file (default stdout)")->check(kWritablePath);
    app->callback([this] { run(); });
  }

  void run() const {
    const auto k = kind == "1d0" ? solid::SolidKind::solid_1d_0
                   : kind == "2d0" ? solid::SolidKind::solid_2d_0
                                   : solid::SolidKind::solid_2d_1;
    const auto dir = direction == "forward" ? solid::Direction::forward : solid::Direction::dual;
    const auto [input, output] = solid::solid_surgery(k, layers, dir);
    emit(io::dump({{"kind", std::string(solid::to_string(k))},
                   {"direction", direction},
                   {"limit", std::string(solid::to_string(output.limit))},
                   {"input", io::to_json(input)},
                   {"output", io::to_json(output)},
                   {"section", io::to_json(solid::cross_section_check(output))}}),
         out);
  }
};

// ---------------------------------------------------------------------------
// plot

struct PlotCmd {
  ParamArgs params;
  std::string in, out, projection = "iso", title;
  bool equilibria = false;

  void add(CLI::App& root) {
    auto* app = root.add_subcommand("plot", "SVG projection of a trajectory CSV");
    params.add(app);
    app->add_option("--in", in, "trajectory CSV")->required()->check(CLI::ExistingFile);
    app->add_option("--projection", projection, "view")
        ->check(CLI::IsMember({"xy", "xz", "yz", "iso"}))
        ->capture_default_str();
    app->add_option("--title", title, "plot title");
    app->add_flag("--equilibria", equilibria, "overlay S1, S2, S3 for the given parameters");
    app->add_option("--out", out, "output SVG (default stdout)")->check(kWritablePath);
    app->callback([this] { run(); });
  }

  void run() const {
    const auto rows = io::parse_trajectory_csv(io::read_file(in));
    const auto proj = io::parse_projection(projection);
    io::SvgPlot plot;
    plot.title = title;
    const auto labels = io::projection_labels(proj);
    plot.xlabel = labels[0];
    plot.ylabel = labels[1];
    std::vector<io::Vec2> line;
    for (const auto& s : rows.states) line.push_back(io::project(s, proj));
    plot.lines.push_back(std::move(line));
    if (equilibria) {
      const auto p = params.resolve();
      p.validate();
      for (const auto& e : lv3::equilibria(p))
        plot.markers.push_back({io::project(e.coordinates, proj), std::string(lv3::to_string(e.label))});
    }
    emit(io::render_svg(plot), out);
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"topsurg: topological surgery and the three-species Lotka-Volterra system"};
  app.require_subcommand(1);
  app.allow_extras(false);

  EquilibriaCmd equilibria;
  SimulateCmd simulate;
  ClassifyCmd classify;
  PoincareCmd poincare;
  LimitCycleCmd limit_cycle;
  BuildCmd build;
  SurgeryCmd surgery;
  MorseCmd morse;
  SolidCmd solid_demo;
  PlotCmd plot;
  equilibria.add(app);
  simulate.add(app);
  classify.add(app);
  poincare.add(app);
  limit_cycle.add(app);
  build.add(app);
  surgery.add(app);
  morse.add(app);
  solid_demo.add(app);
  plot.add(app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const ComputeFailure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const flow::IntegrationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const io::CsvError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
