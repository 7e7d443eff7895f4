// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits nonzero if any fails. Arguments select criteria by number ("smoke"
// for the 3D tube run); no arguments runs everything.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <set>
#include <string>
#include <vector>

#include "ddch/config.hpp"
#include "ddch/diagnostics.hpp"
#include "ddch/error.hpp"
#include "ddch/nmnch.hpp"
#include "ddch/physics.hpp"
#include "ddch/runner.hpp"
#include "ddch/solvers.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace ddch;
namespace fs = std::filesystem;
constexpr double pi = std::numbers::pi;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char *f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

fs::path scratch(const std::string &name) {
  const fs::path p = fs::temp_directory_path() / ("ddch_acceptance_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path &p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// ------------------------------------------------------------------ 1

Outcome constants() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto c = physics::asymptotic_constants();
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const double e1 = std::abs(std::abs(c.c_N) - 1.0 / 6.0);
  const double e2 = std::abs(c.c_W - c.c_M);
  const double e3 = std::abs(c.c_W * c.c_M / (c.c_N * c.c_N) - 1.0);
  return {e1 <= 1e-8 && e2 <= 1e-8 && e3 <= 1e-8 && secs < 1.0,
          fmt("||c_N|-1/6| = %.2e, |c_W-c_M| = %.2e, |c_W c_M/c_N^2 - 1| = %.2e, %.3f s", e1, e2,
              e3, secs)};
}

// ------------------------------------------------------------------ 2

Outcome conservation() {
  const RunConfig c = parse_config("grid.dims = 128 128\nmodel = nmnch\nphases.count = 3\n"
                                   "scheme.epsilon = 0.015625\ninit.kind = noise\ninit.seed = 1\n"
                                   "run.steps = 500\n");
  Simulation sim(c);
  const std::vector<double> m0 = mass_vector(sim.state());
  double drift = 0.0, partition = partition_residual(sim.state());
  for (int n = 0; n < 500; ++n) {
    sim.step();
    const std::vector<double> m = mass_vector(sim.state());
    for (std::size_t k = 0; k < m.size(); ++k)
      drift = std::max(drift, std::abs(m[k] - m0[k]) / std::abs(m0[k]));
    partition = std::max(partition, partition_residual(sim.state()));
  }
  return {drift <= 1e-8 && partition <= 1e-9,
          fmt("NMNCH 3-phase noise N=128: max relative mass drift %.3e (limit 1e-8), "
              "max partition residual %.3e (limit 1e-9)",
              drift, partition)};
}

// ------------------------------------------------------------------ 3, 5

/// Three phases: a two-lobe body (phase 2) and a rounded square (phase 3) in
/// a phase-1 background.
struct ShrinkingSet {
  Grid grid;
  Transform transform;
  SchemeParams params;
  std::vector<PhaseCoefficients> phases;
  PhaseSystem system;
  std::unique_ptr<Scheme> scheme;

  ShrinkingSet(Model model, int n, double epsilon, double lobe)
      : grid({n, n}, {1.0, 1.0}), transform(grid),
        params(SchemeParams::defaults(model, epsilon)), phases(3, {1.0, 1.0}) {
    const double off = 0.9167 * lobe;
    auto lobes = [=](const std::array<double, 3> &x) {
      return std::min(std::hypot(x[0] - 0.49 + off, x[1] - 0.68) - lobe,
                      std::hypot(x[0] - 0.49 - off, x[1] - 0.68) - lobe);
    };
    auto square = [](const std::array<double, 3> &x) {
      const double qx = std::abs(x[0] - 0.5) - 0.1, qy = std::abs(x[1] - 0.27) - 0.1;
      return std::hypot(std::max(qx, 0.0), std::max(qy, 0.0)) + std::min(std::max(qx, qy), 0.0) -
             0.04;
    };
    Field u2 = grid.sample([&](const auto &x) { return physics::profile(lobes(x) / epsilon); });
    Field u3 = grid.sample([&](const auto &x) { return physics::profile(square(x) / epsilon); });
    Field u1(grid.size());
    for (std::size_t i = 0; i < u1.size(); ++i) u1[i] = 1.0 - u2[i] - u3[i];
    scheme = make_scheme(transform, params, phases);
    system = make_system(transform, {u1, u2, u3}, phases, epsilon);
  }

  double energy() { return cahn_hilliard_energy(transform, system, params.epsilon); }
};

struct ShrinkResult {
  double worst_increase = -1e300;
  double iso[2] = {0, 0};
  double area_change[2] = {0, 0};
  double mass_change = 0.0;
};

ShrinkResult run_shrinking_set(Model model, int steps) {
  ShrinkingSet s(model, 128, 1.0 / 128, 0.12);
  const LevelSetGeometry a2 = level_set_geometry(s.grid, s.system.u[1]);
  const LevelSetGeometry a3 = level_set_geometry(s.grid, s.system.u[2]);
  const double m2 = mass(s.system.u[1]);
  ShrinkResult r;
  double previous = s.energy();
  for (int n = 0; n < steps; ++n) {
    s.scheme->step(s.system);
    const double e = s.energy();
    r.worst_increase = std::max(r.worst_increase, e - previous);
    previous = e;
  }
  const LevelSetGeometry b2 = level_set_geometry(s.grid, s.system.u[1]);
  const LevelSetGeometry b3 = level_set_geometry(s.grid, s.system.u[2]);
  r.iso[0] = b2.isoperimetric_ratio;
  r.iso[1] = b3.isoperimetric_ratio;
  r.area_change[0] = b2.area / a2.area - 1.0;
  r.area_change[1] = b3.area / a3.area - 1.0;
  r.mass_change = mass(s.system.u[1]) / m2 - 1.0;
  return r;
}

// Shared between criteria 3 and 5: the long NMNCH run is done once.
const ShrinkResult &nmnch_shrinking_set() {
  static const ShrinkResult r = run_shrinking_set(Model::nmnch, 36000);
  return r;
}

Outcome energy_decay() {
  const ShrinkResult mch = run_shrinking_set(Model::mch, 6000);
  const ShrinkResult &nmn = nmnch_shrinking_set();
  return {mch.worst_increase <= 1e-10 && nmn.worst_increase <= 1e-10,
          fmt("largest per-step energy change: MCH %.3e (6000 steps), NMNCH %.3e (36000 steps)",
              mch.worst_increase, nmn.worst_increase)};
}

Outcome stationary_shape() {
  const ShrinkResult &r = nmnch_shrinking_set();
  bool ok = true;
  for (int k = 0; k < 2; ++k)
    ok = ok && std::abs(r.iso[k] - 1.0) <= 0.02 && std::abs(r.area_change[k]) <= 0.01;
  return {ok, fmt("NMNCH, eps = h = 1/128: isoperimetric ratios %.4f / %.4f, level-set area "
                  "change %+.3f%% / %+.3f%%, lobe mass change %+.3f%%",
                  r.iso[0], r.iso[1], 100 * r.area_change[0], 100 * r.area_change[1],
                  100 * r.mass_change)};
}

// ------------------------------------------------------------------ 4

Outcome order_of_accuracy() {
  const std::vector<double> eps = {1.0 / 32, 1.0 / 64, 1.0 / 128};
  // MCH at fixed physical time, NMNCH at eps-scaled time (dt = eps^4, T = 48 eps^3).
  OvershootCase mch_case;
  mch_case.dt_coefficient = 1e-4;
  mch_case.dt_exponent = 0.0;
  mch_case.time_coefficient = 0.3;
  mch_case.time_exponent = 0.0;
  const OvershootCase nmnch_case;
  const SweepResult mch = order_sweep(mch_case, Model::mch, eps);
  const SweepResult nmn = order_sweep(nmnch_case, Model::nmnch, eps);
  auto list = [](const SweepResult &r) {
    std::string s;
    for (const SweepPoint &p : r.points) s += fmt("%s%.3e", s.empty() ? "" : " ", p.metric);
    return s;
  };
  return {std::abs(mch.slope - 1.0) <= 0.3 && std::abs(nmn.slope - 2.0) <= 0.3,
          fmt("MCH slope %.3f [%s], NMNCH slope %.3f [%s]", mch.slope, list(mch).c_str(),
              nmn.slope, list(nmn).c_str())};
}

// ------------------------------------------------------------------ 6

Outcome frozen_phase() {
  const RunConfig c = parse_config("grid.dims = 128 128\nmodel = nmnch\nphases.count = 3\n"
                                   "scheme.epsilon = 0.015625\nphases.nu = 0 1 1\n"
                                   "init.kind = shapes\ninit.background = 3\n"
                                   "init.shapes = disc 1 0.35 0.5 0.15; disc 2 0.62 0.5 0.12\n"
                                   "run.steps = 1000\n");
  Simulation sim(c);
  const std::vector<Field> u0 = sim.state().u;
  for (int n = 0; n < 1000; ++n) sim.step();
  const double frozen = test::max_abs_diff(sim.state().u[0], u0[0]);
  const double moving = test::max_abs_diff(sim.state().u[1], u0[1]);
  return {frozen <= 1e-9 && moving > 1e-2,
          fmt("max |u_1 - u_1^0| = %.3e over 1000 steps (u_2 moved by %.3f)", frozen, moving)};
}

// ------------------------------------------------------------------ 7

double young_run(double sigma_ls, double start_angle, bool three_phase) {
  const double area = 0.5 * pi * 0.15 * 0.15;
  const double radius = std::sqrt(area / (start_angle - std::sin(start_angle) * std::cos(start_angle)));
  const double cy = 0.25 - radius * std::cos(start_angle);
  const std::string text =
      fmt("grid.dims = 256 256\nmodel = wetting\nscheme.epsilon = 0.0078125\nscheme.dt = 1e-6\n"
          "wetting.sigma_lv = 1\nwetting.sigma_sv = 1\nwetting.sigma_ls = %.17g\n"
          "wetting.formulation = %s\nsupport.kind = flat\nsupport.height = 0.25\n"
          "init.kind = droplet\ninit.body = disc 0.5 %.17g %.17g\nrun.steps = 4000\n",
          sigma_ls, three_phase ? "three" : "single", cy, radius);
  Simulation sim(parse_config(text));
  for (int n = 0; n < 4000; ++n) sim.step();
  return *sim.report().contact_angle;
}

Outcome youngs_law() {
  struct Case {
    double sigma_ls, start;
  };
  // sigma_ls 0.3, 1, 1.7 give cos = 0.7, 0, -0.7; start away from equilibrium.
  const Case cases[] = {{0.3, pi / 2}, {1.0, 2 * pi / 3}, {1.7, pi / 2}};
  bool ok = true;
  std::string detail;
  for (const Case &c : cases) {
    const double young = physics::young_angle(1.0, c.sigma_ls, 1.0) * 180 / pi;
    const double single = young_run(c.sigma_ls, c.start, false) * 180 / pi;
    const double three = young_run(c.sigma_ls, c.start, true) * 180 / pi;
    ok = ok && std::abs(single - young) <= 5 && std::abs(three - young) <= 5 &&
         std::abs(single - three) <= 3;
    detail += fmt("%sYoung %.2f: single %.2f, three %.2f", detail.empty() ? "" : "; ", young,
                  single, three);
  }
  return {ok, detail};
}

// ------------------------------------------------------------------ 8

Outcome cross_validation() {
  double worst_recurrence = 0.0;
  for (Model model : {Model::mch, Model::nmnch}) {
    const Grid g({64, 64}, {1.0, 1.0});
    Transform tr(g);
    const SchemeParams p = SchemeParams::defaults(model, 2.0 / 64);
    const std::vector<PhaseCoefficients> phases{{0.5, 2.0}, {0.5, 2.0}};
    Field u1 = g.sample([&](const auto &x) {
      return physics::profile((std::hypot(x[0] - 0.5, 1.3 * (x[1] - 0.5)) - 0.3) / p.epsilon);
    });
    Field u2(u1.size());
    for (std::size_t i = 0; i < u1.size(); ++i) u2[i] = 1.0 - u1[i];
    auto scheme = make_scheme(tr, p, phases);
    PhaseSystem sys = make_system(tr, {u1, u2}, phases, p.epsilon);
    test::Biphasic ref{g, tr, p, u1, consistent_potential(tr, u1, p.epsilon)};
    for (int n = 0; n < 100; ++n) {
      scheme->step(sys);
      ref.step();
      worst_recurrence = std::max(worst_recurrence, test::max_abs_diff(sys.u[0], ref.u));
    }
  }

  const Grid g({256}, {1.0});
  Transform tr(g);
  const SchemeParams p = SchemeParams::defaults(Model::nmnch, 0.1);
  NmnchScheme scheme(tr, p, {{1.0, 1.0}});
  const Field u = g.sample([](const auto &x) { return 0.5 + 0.45 * std::sin(2 * pi * x[0]); });
  const Field w = g.sample([](const auto &x) { return std::cos(4 * pi * x[0]) + 0.3; });
  auto dx = [&](const Field &f) {
    Spectrum h = tr.forward(f);
    for (std::size_t i = 0; i < h.size(); ++i)
      h[i] *= std::complex<double>(0.0, g.wavenumber(0)[i]);
    return tr.inverse(h);
  };
  Field M(g.size()), Nw(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    M[i] = physics::nmnch_mobility(u[i], p.gamma, p.epsilon);
    Nw[i] = w[i] / std::sqrt(M[i]);
  }
  Field flux = dx(Nw);
  for (std::size_t i = 0; i < g.size(); ++i) flux[i] *= M[i];
  Field naive = dx(flux);
  for (std::size_t i = 0; i < g.size(); ++i) naive[i] /= std::sqrt(M[i]);
  const double transport = test::max_abs_diff(scheme.transport(u, w), naive);

  return {worst_recurrence <= 1e-8 && transport <= 1e-8,
          fmt("L=2 vs biphasic recurrence (both models, 100 steps) %.3e; reformulated vs naive "
              "transport %.3e",
              worst_recurrence, transport)};
}

// ------------------------------------------------------------------ 9

Outcome determinism() {
  const std::string text = "grid.dims = 64 64\nmodel = nmnch\nphases.count = 3\n"
                           "init.kind = noise\ninit.seed = 21\nrun.steps = 60\n"
                           "run.diagnostics_every = 3\nrun.snapshot_every = 20\n"
                           "run.checkpoint_every = 20\noutput.snapshots = ppm raw\n";
  const RunConfig c = parse_config(text);
  const fs::path a = scratch("det_a"), b = scratch("det_b"), r = scratch("det_resume");
  RunOptions oa, ob;
  oa.output_dir = a.string();
  ob.output_dir = b.string();
  const bool ran = run(c, oa).exit_code == 0 && run(c, ob).exit_code == 0;

  // Interrupted run: stopped after step 30 but only the step-20 checkpoint survives.
  RunOptions orr;
  orr.output_dir = r.string();
  orr.steps_override = 30;
  bool resumed = run(c, orr).exit_code == 0;
  {
    Simulation twenty(c);
    for (int n = 0; n < 20; ++n) twenty.step();
    write_checkpoint((r / "checkpoint.bin").string(), twenty.grid(), twenty.checkpoint());
  }
  orr.steps_override.reset();
  orr.resume = (r / "checkpoint.bin").string();
  resumed = resumed && run(c, orr).exit_code == 0;

  std::size_t files = 0, same_fresh = 0, same_resumed = 0;
  for (const auto &entry : fs::directory_iterator(a)) {
    ++files;
    const std::string name = entry.path().filename().string();
    const std::string bytes = slurp(entry.path());
    same_fresh += bytes == slurp(b / name);
    same_resumed += bytes == slurp(r / name);
  }
  const bool ok = ran && resumed && files > 0 && same_fresh == files && same_resumed == files;
  return {ok, fmt("%zu output files: %zu identical across fresh runs, %zu identical after resume",
                  files, same_fresh, same_resumed)};
}

// ------------------------------------------------------------------ smoke

Outcome tube_smoke() {
  const RunConfig c = parse_config(
      "grid.dims = 64 64 64\nmodel = wetting\nscheme.epsilon = 0.03125\nscheme.dt = 1e-6\n"
      "wetting.sigma_lv = 1\nwetting.sigma_sv = 1\nwetting.sigma_ls = 1.7\n"
      "wetting.formulation = three\nsupport.kind = flat\nsupport.height = 0.25\n"
      "init.kind = droplet\ninit.body = tube 0.5 0.5 0.25 0.12 0.6\nrun.steps = 200\n");
  Simulation sim(c);
  const Field solid = sim.state().u[0];
  const double liquid = mass(sim.state().u[1]);
  bool finite = true;
  try {
    for (int n = 0; n < 200; ++n) sim.step();
  } catch (const DivergenceDetected &) {
    finite = false;
  }
  for (const Field &f : sim.state().u)
    for (double v : f) finite = finite && std::isfinite(v);
  const double drift = std::abs(mass(sim.state().u[1]) / liquid - 1.0);
  const double moved = test::max_abs_diff(sim.state().u[0], solid);
  return {finite && drift <= 1e-8 && moved == 0.0,
          fmt("3D N=64 tube, 200 steps: finite %s, liquid mass drift %.3e, solid change %.3e",
              finite ? "yes" : "no", drift, moved)};
}

} // namespace

int main(int argc, char **argv) {
  struct Criterion {
    std::string id, name;
    std::function<Outcome()> check;
  };
  const std::vector<Criterion> criteria = {
      {"1", "asymptotic constants", constants},
      {"2", "mass and partition conservation", conservation},
      {"3", "energy monotonicity", energy_decay},
      {"4", "overshoot order of accuracy", order_of_accuracy},
      {"5", "stationary shape", stationary_shape},
      {"6", "frozen phase", frozen_phase},
      {"7", "Young's law", youngs_law},
      {"8", "scheme cross-validation", cross_validation},
      {"9", "determinism and resume", determinism},
      {"smoke", "3D tube wetting smoke run", tube_smoke},
  };
  std::set<std::string> wanted(argv + 1, argv + argc);
  int failed = 0;
  for (const Criterion &c : criteria) {
    if (!wanted.empty() && !wanted.count(c.id)) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.check();
    } catch (const std::exception &e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s [%s] %s: %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", c.id.c_str(), c.name.c_str(),
                o.detail.c_str(), secs);
    std::fflush(stdout);
    failed += !o.pass;
  }
  return failed == 0 ? 0 : 1;
}
