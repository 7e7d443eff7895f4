#include "ddch/diagnostics.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

#include "ddch/error.hpp"
#include "ddch/kernels.hpp"
#include "ddch/physics.hpp"
#include "ddch/solvers.hpp"
#include "ddch/spectral.hpp"

namespace ddch {

double cahn_hilliard_energy(Transform &transform, const std::vector<Field> &u, double epsilon,
                            const std::vector<double> &sigma) {
  if (sigma.size() != u.size()) throw ValidationError("one tension per phase is required");
  const Grid &g = transform.grid();
  const auto &kern = kernels::active();
  Field w(g.size());
  double total = 0.0;
  for (std::size_t k = 0; k < u.size(); ++k) {
    kern.double_well(u[k].data(), w.data(), w.size());
    double bulk = kern.sum(w.data(), w.size()) / epsilon;
    double grad = 0.0;
    for (const Field &d : spectral::gradient(transform, u[k])) {
      double s = 0.0;
      for (double v : d) s += v * v;
      grad += s;
    }
    total += 0.5 * sigma[k] * (0.5 * epsilon * grad + bulk);
  }
  return total * g.cell_volume();
}

double cahn_hilliard_energy(Transform &transform, const PhaseSystem &system, double epsilon) {
  std::vector<double> sigma;
  for (const auto &c : system.coefficients) sigma.push_back(c.sigma);
  return cahn_hilliard_energy(transform, system.u, epsilon, sigma);
}

double mass(const Field &u) {
  return kernels::active().sum(u.data(), u.size()) / static_cast<double>(u.size());
}

std::vector<double> mass_vector(const PhaseSystem &system) {
  std::vector<double> out;
  for (const Field &u : system.u) out.push_back(mass(u));
  return out;
}

Extrema overshoot(const Field &u) {
  Extrema e;
  kernels::active().min_max(u.data(), u.size(), &e.min, &e.max);
  return e;
}

double profile_error(const Grid &grid, const Field &u, const DistanceFunction &dist,
                     double epsilon) {
  const Field ref =
      grid.sample([&](const std::array<double, 3> &x) { return physics::profile(dist(x) / epsilon); });
  double err = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) err = std::max(err, std::abs(u[i] - ref[i]));
  return err;
}

DistanceFunction disc_distance(const Grid &grid, std::array<double, 3> center, double radius) {
  const int d = grid.ndim();
  const std::vector<double> len = grid.lengths();
  return [=](const std::array<double, 3> &x) {
    double r2 = 0.0;
    for (int a = 0; a < d; ++a) {
      double dx = x[a] - center[a];
      dx -= len[a] * std::round(dx / len[a]);
      r2 += dx * dx;
    }
    return std::sqrt(r2) - radius;
  };
}

MatchedDisc matched_disc(const Grid &grid, const Field &u) {
  MatchedDisc out;
  const double content = mass(u) * grid.volume();
  constexpr double pi = std::numbers::pi;
  switch (grid.ndim()) {
  case 1: out.radius = 0.5 * content; break;
  case 2: out.radius = std::sqrt(content / pi); break;
  default: out.radius = std::cbrt(3.0 * content / (4.0 * pi)); break;
  }
  for (int a = 0; a < grid.ndim(); ++a) {
    double c = 0.0, s = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
      const double t = 2.0 * pi * grid.unflatten(i)[a] / grid.dim(a);
      c += u[i] * std::cos(t);
      s += u[i] * std::sin(t);
    }
    double t = std::atan2(s, c);
    if (t < 0.0) t += 2.0 * pi;
    out.center[a] = grid.length(a) * t / (2.0 * pi);
  }
  return out;
}

double fitted_slope(const std::vector<SweepPoint> &points) {
  if (points.size() < 3)
    throw InsufficientResolution("an order fit needs at least three epsilon values");
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (const SweepPoint &p : points) {
    if (!(p.epsilon >= p.cell_size * (1.0 - 1e-12)))
      throw InsufficientResolution("eps = " + std::to_string(p.epsilon) +
                                   " resolves its interface with fewer than 6 cells");
    if (!(p.metric > 0.0) || !std::isfinite(p.metric))
      throw ValidationError("order-fit metrics must be positive and finite");
    const double x = std::log(p.epsilon), y = std::log(p.metric);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double n = static_cast<double>(points.size());
  const double den = n * sxx - sx * sx;
  if (den == 0.0) throw InsufficientResolution("order fit needs distinct epsilon values");
  return (n * sxy - sx * sy) / den;
}

SweepResult order_sweep(const OvershootCase &test_case, Model model,
                        const std::vector<double> &epsilons) {
  SweepResult result;
  for (double eps : epsilons) {
    const double len = test_case.box_length;
    int n = static_cast<int>(std::lround(test_case.cells_per_epsilon * len / eps));
    n += n % 2;
    const Grid grid({n, n}, {len, len});
    if (eps < grid.spacing(0) * (1.0 - 1e-12))
      throw InsufficientResolution("eps below the cell size");
    Transform tr(grid);
    SchemeParams params = SchemeParams::defaults(model, eps);
    params.dt = test_case.dt_coefficient * std::pow(eps, test_case.dt_exponent);
    const double final_time = test_case.time_coefficient * std::pow(eps, test_case.time_exponent);
    const auto steps = static_cast<long>(std::ceil(final_time / params.dt - 1e-9));
    const std::vector<PhaseCoefficients> phases{{0.5, 2.0}, {0.5, 2.0}};
    const auto dist = disc_distance(grid, {len / 2, len / 2, 0.0}, test_case.radius);
    Field u1 = grid.sample([&](const auto &x) { return physics::profile(dist(x) / eps); });
    Field u2(u1.size());
    for (std::size_t i = 0; i < u1.size(); ++i) u2[i] = 1.0 - u1[i];
    PhaseSystem sys = make_system(tr, {std::move(u1), std::move(u2)}, phases, eps);
    auto scheme = make_scheme(tr, params, phases);
    for (long s = 0; s < steps; ++s) scheme->step(sys);
    double worst = 0.0;
    for (const Field &u : sys.u) worst = std::max(worst, -overshoot(u).min);
    result.points.push_back({eps, grid.spacing(0), worst});
  }
  result.slope = fitted_slope(result.points);
  return result;
}

DiagnosticsReport make_report(Transform &transform, const PhaseSystem &system, double epsilon) {
  DiagnosticsReport r;
  r.step = system.step_index;
  r.time = system.time;
  r.energy = cahn_hilliard_energy(transform, system, epsilon);
  r.mass = mass_vector(system);
  r.partition_residual = partition_residual(system);
  for (const Field &u : system.u) {
    const Extrema e = overshoot(u);
    r.min_u.push_back(e.min);
    r.max_u.push_back(e.max);
  }
  return r;
}

std::string csv_header(std::size_t phases) {
  std::string h = "step,time,energy,partition_residual";
  for (const char *name : {"mass", "min", "max"})
    for (std::size_t k = 1; k <= phases; ++k) h += "," + std::string(name) + "_" + std::to_string(k);
  h += ",profile_error,contact_angle,isoperimetric_ratio";
  return h;
}

namespace {

std::string number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string optional_number(const std::optional<double> &v) { return v ? number(*v) : ""; }

} // namespace

std::string csv_row(const DiagnosticsReport &r) {
  std::string row = std::to_string(r.step) + "," + number(r.time) + "," + number(r.energy) + "," +
                    number(r.partition_residual);
  for (const auto *column : {&r.mass, &r.min_u, &r.max_u})
    for (double v : *column) row += "," + number(v);
  row += "," + optional_number(r.profile_error) + "," + optional_number(r.contact_angle) + "," +
         optional_number(r.isoperimetric_ratio);
  return row;
}

} // namespace ddch
