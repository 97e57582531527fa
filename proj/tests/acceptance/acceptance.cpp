// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Oracles are closed forms or brute force computed here,
// independently of the library code under test.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "support/random_sites.hpp"
#include "topsurg/flow/limit_cycle.hpp"
#include "topsurg/flow/shell.hpp"
#include "topsurg/kernel/standard.hpp"
#include "topsurg/kernel/surgery.hpp"
#include "topsurg/lv3/equilibria.hpp"
#include "topsurg/lv3/presets.hpp"
#include "topsurg/solid/cross_section.hpp"
#include "topsurg/solid/morse.hpp"

using namespace topsurg;
using cplx = std::complex<double>;
using lv3::operator-;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

/// True if some eigenvalue of `values` lies within `tol` of `z`.
bool has_value(const std::array<cplx, 3>& values, cplx z, double tol) {
  return std::any_of(values.begin(), values.end(), [&](cplx v) { return std::abs(v - z) <= tol; });
}

/// Eigenvalues matched as a multiset against `expect` within `tol`.
bool same_spectrum(std::array<cplx, 3> got, std::vector<cplx> expect, double tol) {
  for (const cplx& z : got) {
    auto it = std::min_element(expect.begin(), expect.end(),
                               [&](cplx a, cplx b) { return std::abs(a - z) < std::abs(b - z); });
    if (it == expect.end() || std::abs(*it - z) > tol) return false;
    expect.erase(it);
  }
  return expect.empty();
}

const lv3::EquilibriumReport& at(const std::array<lv3::EquilibriumReport, 3>& eq, lv3::EquilibriumLabel l) {
  for (const auto& e : eq)
    if (e.label == l) return e;
  throw std::logic_error("missing equilibrium");
}

/// Real eigenvalue of a spectrum with exactly one real entry (smallest |Im|).
double real_eigenvalue(const std::array<cplx, 3>& v) {
  return std::min_element(v.begin(), v.end(), [](cplx a, cplx b) { return std::abs(a.imag()) < std::abs(b.imag()); })
      ->real();
}

// ---------------------------------------------------------------------------

void criterion_1(Outcome& o) {
  const auto eq = lv3::equilibria({3, 3, 3});
  const auto& s1 = at(eq, lv3::EquilibriumLabel::S1).eigen.values;
  const auto& s2 = at(eq, lv3::EquilibriumLabel::S2).eigen.values;
  // Reference values {0.0000, 1.500 +- 1.3229i} to four decimals.
  o.require(same_spectrum(s2, {{0.0, 0.0}, {1.5, 1.3229}, {1.5, -1.3229}}, 1e-3), "J(S2) spectrum");
  o.require(same_spectrum(s1, {{1.0, 0.0}, {-1.0, 0.0}, {-3.0, 0.0}}, 1e-12), "J(S1) spectrum");
  o.detail << " S2 pair " << std::abs(s2[1].real()) << "+-" << std::abs(s2[1].imag()) << "i";
}

void criterion_2(Outcome& o) {
  const auto eq = lv3::equilibria(lv3::preset_b().params);
  const double l2 = real_eigenvalue(at(eq, lv3::EquilibriumLabel::S2).eigen.values);
  const double l3 = real_eigenvalue(at(eq, lv3::EquilibriumLabel::S3).eigen.values);
  o.require(std::abs(l2 - (-0.0149)) <= 1e-4, "lambda1(S2)");
  o.require(std::abs(l3 - 0.0025) <= 1e-4, "lambda1(S3)");
  o.detail << " lambda1(S2)=" << l2 << " lambda1(S3)=" << l3;
}

void criterion_3(Outcome& o) {
  // Oracle: roots of lambda^2 + lambda + 24 by the quadratic formula.
  const cplx r1(-0.5, std::sqrt(24.0 - 0.25)), r2 = std::conj(r1);
  const auto& v = at(lv3::equilibria({3, 3, 3}), lv3::EquilibriumLabel::S3).eigen.values;
  o.require(has_value(v, r1, 1e-9) && has_value(v, r2, 1e-9), "S3 pair vs quadratic oracle");
  o.require(has_value(v, {0.0, 0.0}, 1e-9), "S3 zero eigenvalue");
  o.detail << " oracle -0.5+-" << r1.imag() << "i (-1.000+-4.8780i does not satisfy this polynomial)";
}

void criterion_4(Outcome& o) {
  double worst_rhs = 0.0;
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j)
      for (int k = 0; k < 5; ++k) {
        const lv3::SystemParams p{0.5 + 1.125 * i, 0.5 + 1.125 * j, 0.5 + 1.125 * k};
        for (const auto& s : lv3::equilibrium_points(p)) worst_rhs = std::max(worst_rhs, lv3::norm(lv3::rhs(s, p)));
      }
  o.require(worst_rhs < 1e-12, "equilibrium residuals");

  std::mt19937 rng(4242);
  std::uniform_real_distribution<double> u(0.5, 5.0), x(0.0, 3.0);
  double worst_jac = 0.0;
  for (int n = 0; n < 100; ++n) {
    const lv3::SystemParams p{u(rng), u(rng), u(rng)};
    const lv3::State s{x(rng), x(rng), x(rng)};
    const auto J = lv3::jacobian(s, p);
    const double h = 1e-6;
    for (int c = 0; c < 3; ++c) {
      lv3::State sp = s, sm = s;
      sp[c] += h;
      sm[c] -= h;
      const auto fp = lv3::rhs(sp, p), fm = lv3::rhs(sm, p);
      for (int r = 0; r < 3; ++r) worst_jac = std::max(worst_jac, std::abs((fp[r] - fm[r]) / (2 * h) - J[r][c]));
    }
  }
  o.require(worst_jac < 1e-6, "Jacobian vs central differences");
  o.detail << " max|rhs|=" << worst_rhs << " max jac err=" << worst_jac;
}

void criterion_5(Outcome& o) {
  const auto t0 = Clock::now();
  const double t_end = 2000.0;
  auto verdict = [&](const lv3::SystemParams& p, const lv3::State& ic) {
    return flow::classify_shell(flow::integrate(p, ic, t_end), lv3::slow_manifold(p)).verdict;
  };
  const auto a = lv3::preset_a();
  for (const auto& ic : a.initial_conditions) {
    const bool steady = ic == lv3::State{1, 1, 1};
    const auto v = verdict(a.params, ic);
    o.require(v == (steady ? flow::ShellVerdict::stationary : flow::ShellVerdict::spherical),
              "set a IC " + std::to_string(ic[1]) + " -> " + std::string(flow::to_string(v)));
  }
  const auto b = lv3::preset_b();
  for (const auto& ic : b.initial_conditions) {
    const auto v = verdict(b.params, ic);
    o.require(v == flow::ShellVerdict::toroidal, "set b IC -> " + std::string(flow::to_string(v)));
  }
  const double secs = seconds_since(t0);
  o.require(secs < 60.0, "runtime");
  o.detail << " 9 runs to t=" << t_end << " in " << secs << " s";
}

void criterion_6(Outcome& o) {
  const auto p = lv3::preset_b().params;
  const flow::LimitCycleOptions opt;
  const auto lc = flow::detect_limit_cycle(p, {1, 1, 1}, opt);
  o.require(lc.converged, "convergence: " + lc.failure);
  if (!lc.converged) return;
  const auto end = flow::flow_map(p, lc.loop.front(), lc.period, opt.integrator);
  const double closure = lv3::norm(end - lc.loop.front());
  o.require(closure < 10 * opt.eps_cycle, "re-integration closure");
  const auto loop = flow::integrate(p, lc.loop.front(), lc.period, opt.integrator);
  const double turns = flow::winding_profile(loop, lv3::slow_manifold(p)).total_turns;
  o.require(std::abs(std::abs(turns) - 1.0) < 1e-6, "one turn per period");
  o.detail << " period=" << lc.period << " closure=" << closure << " turns=" << turns;
}

void criterion_7(Outcome& o) {
  using namespace kernel;
  const auto t0 = Clock::now();
  auto triple = [](const InvariantReport& r) {
    return std::array<int, 3>{r.components, r.euler_characteristic, r.genus().value_or(-1)};
  };
  const Surface sphere = subdivide(kernel::sphere());
  const auto torus = invariants(surgery_2d_0(sphere, testing::disjoint_triangles(sphere), {}));
  o.require(triple(torus) == std::array<int, 3>{1, 0, 1}, "sphere -> torus");
  const auto two = invariants(surgery_2d_1(banded_sphere(3, 6), equatorial_annulus(3, 6), {}));
  o.require(triple(two) == std::array<int, 3>{2, 4, 0}, "sphere -> two spheres");

  std::mt19937 rng(77);
  for (int g = 0; g <= 4; ++g) {
    const Surface s = genus_g(g);
    const auto site = testing::random_disc_pair(s, rng);
    o.require(site && invariants(surgery_2d_0(s, *site, {})).genus() == g + 1, "genus " + std::to_string(g));
  }

  // Brute force over every site pair of circles with at most 12 arcs.
  std::size_t pairs = 0;
  for (int n = 2; n <= 12; ++n)
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        if (a == b) continue;
        ++pairs;
        const auto c = circle(n);
        if (surgery_1d_0(c, {a, b}, {}).component_count() != 2) o.require(false, "standard 1d table");
        if (surgery_1d_0(c, {a, b}, {0, true}).component_count() != 1) o.require(false, "flipped 1d table");
      }
  for (int n = 2; n <= 6; ++n)
    for (int m = 2; m <= 6; ++m) {
      const auto c = two_circles(n, m);
      for (int a = 0; a < n; ++a)
        for (int b = n; b < n + m; ++b) {
          ++pairs;
          if (surgery_1d_0(c, {a, b}, {}).component_count() != 1) o.require(false, "dual two-circle 1d table");
        }
    }
  const double secs = seconds_since(t0);
  o.require(secs < 5.0, "runtime");
  o.detail << " " << pairs << " 1d sites in " << secs << " s";
}

void criterion_8(Outcome& o) {
  using namespace kernel;
  std::mt19937 rng(8080);
  int done0 = 0, done1 = 0, bad = 0;
  for (int guard = 0; (done0 < 200 || done1 < 200) && guard < 10000; ++guard) {
    const Surface s = testing::random_surface(rng);
    const int chi = invariants(s).euler_characteristic;
    const GluingMap g{static_cast<std::int64_t>(rng() % 9), rng() % 3 == 0};
    if (done0 < 200)
      if (auto pair = testing::random_disc_pair(s, rng)) {
        bad += invariants(surgery_2d_0(s, *pair, g)).euler_characteristic != chi - 2;
        ++done0;
      }
    if (done1 < 200)
      if (auto ann = testing::random_annulus(s, rng)) {
        bad += invariants(surgery_2d_1(s, *ann, g)).euler_characteristic != chi + 2;
        ++done1;
      }
  }
  o.require(done0 == 200 && done1 == 200, "site generation");
  o.require(bad == 0, std::to_string(bad) + " wrong chi changes");
  o.detail << " " << done0 << " 0-surgeries, " << done1 << " 1-surgeries";
}

void criterion_9(Outcome& o) {
  std::mt19937 rng(909);
  std::uniform_real_distribution<double> u(0.1, 3.0);
  double lowest = 1e300;
  for (const auto& p : {lv3::preset_a().params, lv3::preset_b().params})
    for (int i = 0; i < 20; ++i) {
      const lv3::State ic{u(rng), u(rng), u(rng)};
      const auto tr = flow::integrate(p, ic, 1000.0);
      for (const auto& s : tr.states) lowest = std::min({lowest, s[0], s[1], s[2]});
    }
  o.require(lowest > -1e-6, "positivity");
  o.detail << " min coordinate " << lowest;
}

void criterion_10(Outcome& o) {
  using namespace solid;
  const auto frames = morse_frames({-1.0, 0.0, 1.0});
  o.require(frames[0].branch_count() == 2 && !frames[0].degenerate, "t=-1 frame");
  o.require(frames[1].degenerate, "t=0 frame degenerate");
  o.require(frames[2].branch_count() == 2 && !frames[2].degenerate, "t=+1 frame");

  struct Rule {
    SolidKind kind;
    LimitObject limit;
  };
  for (const auto& r : {Rule{SolidKind::solid_1d_0, LimitObject::two_points}, Rule{SolidKind::solid_2d_0, LimitObject::circle},
                        Rule{SolidKind::solid_2d_1, LimitObject::two_points}}) {
    const std::string name(to_string(r.kind));
    const auto [in, out] = solid_surgery(r.kind, 5, Direction::forward);
    o.require(in.limit == LimitObject::point && out.limit == r.limit, name + " forward limit");
    const auto [din, dout] = solid_surgery(r.kind, 5, Direction::dual);
    o.require(din.limit == r.limit && dout.limit == LimitObject::point, name + " dual limit");
    bool inverse = dout.layers.size() == in.layers.size();
    for (std::size_t i = 0; inverse && i < in.layers.size(); ++i)
      inverse = dout.layers[i].report == in.layers[i].report && dout.layers[i].type == in.layers[i].type;
    o.require(inverse, name + " dual restores the layers");
    o.require(cross_section_check(in).match && cross_section_check(out).match, name + " cross section");
  }
  o.detail << " branches " << frames[0].branch_count() << "/" << frames[1].branch_count() << "/"
           << frames[2].branch_count();
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<void(Outcome&)> run;
  };
  const std::vector<Criterion> criteria{
      {1, "eigenvalue reproduction at A=B=C=3", criterion_1},
      {2, "perturbed real eigenvalues at A=2.9851", criterion_2},
      {3, "S3 complex pair against the characteristic-polynomial oracle", criterion_3},
      {4, "equilibrium residuals and Jacobian", criterion_4},
      {5, "spherical to toroidal transition", criterion_5},
      {6, "limit cycle self-consistency", criterion_6},
      {7, "surgery kernel invariants", criterion_7},
      {8, "Euler characteristic accounting", criterion_8},
      {9, "positive-octant invariance", criterion_9},
      {10, "solid and Morse suite", criterion_10},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Outcome o;
    o.detail.precision(6);
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    failed += !o.pass;
    std::printf("%s %2d %s:%s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.str().c_str());
    std::fflush(stdout);
  }
  std::printf("%zu criteria, %d failed\n", criteria.size(), failed);
  return failed == 0 ? 0 : 1;
}
