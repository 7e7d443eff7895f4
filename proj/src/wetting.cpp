#include "ddch/wetting.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <numbers>
#include <random>

#include "ddch/error.hpp"
#include "ddch/physics.hpp"
#include "ddch/solvers.hpp"
#include "ddch/spectral.hpp"

namespace ddch {

std::string_view to_string(SupportKind kind) noexcept {
  switch (kind) {
  case SupportKind::flat: return "flat";
  case SupportKind::oscillatory: return "oscillatory";
  case SupportKind::rough: return "rough";
  case SupportKind::custom: return "custom";
  }
  return "?";
}

SupportKind parse_support_kind(std::string_view text) {
  for (SupportKind k :
       {SupportKind::flat, SupportKind::oscillatory, SupportKind::rough, SupportKind::custom})
    if (text == to_string(k)) return k;
  throw ValidationError("unknown support kind '" + std::string(text) + "'");
}

std::uint64_t SolidSupport::checksum() const noexcept {
  std::uint64_t h = 1469598103934665603ULL;
  const auto *bytes = reinterpret_cast<const unsigned char *>(u_s.data());
  for (std::size_t i = 0; i < u_s.size() * sizeof(double); ++i) {
    h ^= bytes[i];
    h *= 1099511628211ULL;
  }
  return h;
}

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

/// Periodic slab 0 <= y <= top of period len: signed distance, negative inside.
double slab_distance(double y, double top, double len) {
  y -= len * std::floor(y / len);
  if (y <= top) return std::max(y - top, -y);
  return std::min(y - top, len - y);
}

/// Smoothed random heightfield deviation with max |.| = 1 over the grid's
/// tangential nodes. Modes |k_i| <= 4, amplitudes decaying like 1/|k|.
std::function<double(const std::array<double, 3> &)> rough_profile(const Grid &grid,
                                                                    std::uint64_t seed) {
  const int tangential = grid.ndim() - 1;
  struct Mode {
    int k[2];
    double amp, phase;
  };
  std::mt19937_64 rng(seed);
  auto unit = [&] { return (rng() >> 11) * 0x1.0p-53; };
  std::vector<Mode> modes;
  const int kmax = 4;
  for (int a = -kmax; a <= kmax; ++a)
    for (int b = (tangential == 2 ? -kmax : 0); b <= (tangential == 2 ? kmax : 0); ++b) {
      if (a == 0 && b == 0) continue;
      if (a < 0 || (a == 0 && b < 0)) continue; // one of each +-k pair
      const double k = std::hypot(a, b);
      modes.push_back({{a, b}, (unit() + 0.5) / k, two_pi * unit()});
    }
  std::vector<double> lengths = grid.lengths();
  auto raw = [modes, lengths, tangential](const std::array<double, 3> &x) {
    double v = 0.0;
    for (const Mode &m : modes) {
      double arg = m.phase;
      for (int a = 0; a < tangential; ++a) arg += two_pi * m.k[a] * x[a] / lengths[a];
      v += m.amp * std::cos(arg);
    }
    return v;
  };
  double peak = 0.0;
  const Field sampled = grid.sample(raw);
  for (double v : sampled) peak = std::max(peak, std::abs(v));
  return [raw, peak](const std::array<double, 3> &x) { return raw(x) / peak; };
}

} // namespace

SolidSupport build_support(const Grid &grid, double epsilon, const SupportSpec &spec) {
  SolidSupport out;
  out.kind = spec.kind;
  const int axis = grid.ndim() - 1;
  const double len = grid.length(axis);

  if (spec.kind == SupportKind::custom) {
    if (!spec.custom) throw ValidationError("custom support needs a distance function");
    out.distance = spec.custom;
  } else {
    if (grid.ndim() < 2) throw ValidationError("heightfield supports need at least 2D");
    const double amp = spec.kind == SupportKind::flat ? 0.0 : std::abs(spec.amplitude);
    if (amp >= len / 4)
      throw GeometryTooLarge("support amplitude must stay below a quarter of the box height");
    if (spec.height - amp < 2.0 * epsilon)
      throw ValidationError("support thinner than 2 eps");
    if (len - (spec.height + amp) < 12.0 * epsilon)
      throw GeometryTooLarge("support leaves less than 12 eps of room for the liquid");

    std::function<double(const std::array<double, 3> &)> top;
    const double h = spec.height;
    switch (spec.kind) {
    case SupportKind::flat: top = [h](const auto &) { return h; }; break;
    case SupportKind::oscillatory: {
      if (!(spec.wavelength > 0.0)) throw ValidationError("oscillatory wavelength must be positive");
      const double a = spec.amplitude, w = spec.wavelength;
      top = [h, a, w](const auto &x) { return h + a * std::sin(two_pi * x[0] / w); };
      break;
    }
    case SupportKind::rough: {
      auto shape = rough_profile(grid, spec.seed);
      const double a = spec.amplitude;
      top = [h, a, shape](const auto &x) { return h + a * shape(x); };
      break;
    }
    case SupportKind::custom: break;
    }
    out.distance = [top, axis, len](const std::array<double, 3> &x) {
      return slab_distance(x[axis], top(x), len);
    };
  }

  out.u_s = grid.sample([&](const auto &x) { return physics::profile(out.distance(x) / epsilon); });
  if (mass(out.u_s) > 0.9) throw GeometryTooLarge("the support fills the box");
  return out;
}

Field penalization_R(Transform &transform, const Field &u_l, const Field &u_s, double epsilon) {
  const Field lap = spectral::apply_symbol(transform, u_s, transform.grid().laplacian_symbol());
  const double inv = 1.0 / (epsilon * epsilon);
  Field r(u_l.size());
  for (std::size_t i = 0; i < r.size(); ++i)
    r[i] = -(lap[i] + inv * (physics::Wp(u_l[i]) + physics::Wp(1.0 - u_l[i] - u_s[i])));
  return r;
}

double penalization_factor(double u_l, double epsilon) noexcept {
  const double w2 = 2.0 * physics::W(u_l);
  return std::sqrt(w2) / std::sqrt(w2 + epsilon);
}

Field penalization_R_tilde(Transform &transform, const Field &u_l, const Field &u_s,
                           double epsilon) {
  Field r = penalization_R(transform, u_l, u_s, epsilon);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] *= penalization_factor(u_l[i], epsilon);
  return r;
}

WettingSolver::WettingSolver(Transform &transform, SchemeParams params, WettingConfig config,
                             const SolidSupport &support)
    : transform_(&transform), params_(params), config_(config),
      tensions_(physics::decompose_tensions(config.sigma_lv, config.sigma_sv, config.sigma_ls)),
      support_(&support) {
  if (support.u_s.size() != transform.grid().size())
    throw ValidationError("support does not match the grid");
  if (!(config.nu > 0.0)) throw ValidationError("wetting mobility must be positive");
  lap_support_ =
      spectral::apply_symbol(transform, support.u_s, transform.grid().laplacian_symbol());
  scheme_ = make_scheme(transform, params, {{0.5 * config.sigma_lv, config.nu}});
}

Field WettingSolver::penalization(const Field &u_l) const {
  const double inv = 1.0 / (params_.epsilon * params_.epsilon);
  const Field &u_s = support_->u_s;
  Field r(u_l.size());
  for (std::size_t i = 0; i < r.size(); ++i) {
    r[i] = -(lap_support_[i] + inv * (physics::Wp(u_l[i]) + physics::Wp(1.0 - u_l[i] - u_s[i])));
    if (config_.stabilized) r[i] *= penalization_factor(u_l[i], params_.epsilon);
  }
  return r;
}

void WettingSolver::step(Field &u_l, Field &mu_l) {
  Field extra = penalization(u_l);
  const double weight = config_.penalty_scale * tensions_.vapor;
  for (double &v : extra) v *= weight;
  const Scheme::HalfStep half = scheme_->half_step_phase(0, u_l, mu_l, extra);
  scheme_->correct_phase(0, half, transform_->forward(extra), u_l, mu_l);
}

Field liquid_on_support(const Grid &grid, double epsilon, const SolidSupport &support,
                        const DistanceFunction &body) {
  return grid.sample([&](const auto &x) {
    return physics::profile(std::max(body(x), -support.distance(x)) / epsilon);
  });
}

std::vector<PhaseCoefficients> three_phase_coefficients(const WettingConfig &config) {
  const auto t = physics::decompose_tensions(config.sigma_lv, config.sigma_sv, config.sigma_ls);
  return {{t.solid, 0.0}, {t.liquid, 2.0 * config.nu}, {t.vapor, 2.0 * config.nu}};
}

PhaseSystem make_three_phase_wetting(Transform &transform, const Field &u_l,
                                     const SolidSupport &support, const WettingConfig &config,
                                     double epsilon) {
  Field u_v(u_l.size());
  for (std::size_t i = 0; i < u_v.size(); ++i) u_v[i] = 1.0 - u_l[i] - support.u_s[i];
  return make_system(transform, {support.u_s, u_l, std::move(u_v)},
                     three_phase_coefficients(config), epsilon);
}

void three_phase_wetting_step(Scheme &scheme, PhaseSystem &system) {
  if (system.phase_count() != 3) throw ValidationError("three-phase wetting needs L = 3");
  if (scheme.phases()[0].nu != 0.0)
    throw ValidationError("three-phase wetting needs a frozen solid (nu_1 = 0)");
  scheme.step(system);
}

namespace {

struct Circle {
  double cx, cy, r;
};

/// Algebraic (Kasa) least-squares circle through points, in coordinates
/// centred on their mean.
Circle fit_circle(const std::vector<std::array<double, 2>> &pts) {
  double mx = 0.0, my = 0.0;
  for (const auto &p : pts) {
    mx += p[0];
    my += p[1];
  }
  mx /= static_cast<double>(pts.size());
  my /= static_cast<double>(pts.size());
  // Minimise sum (x^2 + y^2 + D x + E y + F)^2.
  double a[3][4] = {};
  for (const auto &p : pts) {
    const double x = p[0] - mx, y = p[1] - my, z = x * x + y * y;
    const double row[3] = {x, y, 1.0};
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) a[i][j] += row[i] * row[j];
      a[i][3] -= row[i] * z;
    }
  }
  for (int c = 0; c < 3; ++c) {
    int piv = c;
    for (int r = c + 1; r < 3; ++r)
      if (std::abs(a[r][c]) > std::abs(a[piv][c])) piv = r;
    std::swap(a[c], a[piv]);
    if (std::abs(a[c][c]) < 1e-300) throw NoContactLine("degenerate contour for a circle fit");
    for (int r = 0; r < 3; ++r) {
      if (r == c) continue;
      const double f = a[r][c] / a[c][c];
      for (int k = c; k < 4; ++k) a[r][k] -= f * a[c][k];
    }
  }
  const double D = a[0][3] / a[0][0], E = a[1][3] / a[1][1], F = a[2][3] / a[2][2];
  const double r2 = 0.25 * (D * D + E * E) - F;
  if (!(r2 > 0.0)) throw NoContactLine("degenerate contour for a circle fit");
  return {mx - 0.5 * D, my - 0.5 * E, std::sqrt(r2)};
}

} // namespace

double measure_contact_angle(const Grid &grid, const Field &u_l, const SolidSupport &support,
                             double epsilon) {
  if (grid.ndim() != 2) throw ValidationError("contact angles are measured on 2D grids");
  const std::vector<Segment> segs = contour_segments(grid, u_l, 0.5);

  auto dist = [&](double x, double y) { return support.distance({x, y, 0.0}); };
  std::vector<std::array<double, 2>> pts;
  bool band = false;
  for (const Segment &s : segs)
    for (const auto &p : {s.a, s.b}) {
      const double d = dist(p[0], p[1]);
      if (d < 3.0 * epsilon) continue;
      band |= d <= 6.0 * epsilon;
      pts.push_back(p);
    }
  if (!band || pts.size() < 3)
    throw NoContactLine("no liquid contour 3-6 eps away from the support");

  // Unwrap around the periodic mean so a droplet across the seam stays whole.
  for (int a = 0; a < 2; ++a) {
    const double len = grid.length(a);
    double c = 0.0, s = 0.0;
    for (const auto &p : pts) {
      c += std::cos(two_pi * p[a] / len);
      s += std::sin(two_pi * p[a] / len);
    }
    const double ref = len * std::atan2(s, c) / two_pi;
    for (auto &p : pts) p[a] -= len * std::round((p[a] - ref) / len);
  }
  const Circle circle = fit_circle(pts);

  // Walk from both ends of the arc covered by the contour points into the
  // uncovered gap; the first support crossing on each side is a contact point.
  // Other crossings (e.g. the far face of a slab) belong to no contact line.
  auto at = [&](double t) {
    return std::array<double, 2>{circle.cx + circle.r * std::cos(t),
                                 circle.cy + circle.r * std::sin(t)};
  };
  auto f = [&](double t) {
    const auto p = at(t);
    return dist(p[0], p[1]);
  };
  std::vector<double> polar;
  for (const auto &p : pts) polar.push_back(std::atan2(p[1] - circle.cy, p[0] - circle.cx));
  std::sort(polar.begin(), polar.end());
  double gap_from = polar.back(), gap = polar.front() + two_pi - polar.back();
  for (std::size_t i = 1; i < polar.size(); ++i)
    if (polar[i] - polar[i - 1] > gap) {
      gap = polar[i] - polar[i - 1];
      gap_from = polar[i - 1];
    }

  const int samples = 4096;
  std::vector<double> angles;
  for (const double dir : {1.0, -1.0}) {
    const double t0 = dir > 0.0 ? gap_from : gap_from + gap;
    double prev_t = t0, prev_f = f(t0);
    for (int j = 1; j <= samples; ++j) {
      const double t = t0 + dir * gap * j / samples;
      const double ft = f(t);
      if ((prev_f < 0.0) == (ft < 0.0)) {
        prev_t = t;
        prev_f = ft;
        continue;
      }
      double lo = prev_t, hi = t, flo = prev_f;
      for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if ((fm < 0.0) == (flo < 0.0)) {
          lo = mid;
          flo = fm;
        } else {
          hi = mid;
        }
      }
      const double tc = 0.5 * (lo + hi);
      const auto p = at(tc);
      const double h = 1e-3 * epsilon;
      double nx = dist(p[0] + h, p[1]) - dist(p[0] - h, p[1]);
      double ny = dist(p[0], p[1] + h) - dist(p[0], p[1] - h);
      const double nn = std::hypot(nx, ny);
      if (nn > 0.0) {
        const double c =
            std::clamp((nx * std::cos(tc) + ny * std::sin(tc)) / nn, -1.0, 1.0);
        angles.push_back(std::acos(c));
      }
      break;
    }
  }
  if (angles.empty()) throw NoContactLine("the fitted liquid interface does not meet the support");
  double sum = 0.0;
  for (double a : angles) sum += a;
  return sum / static_cast<double>(angles.size());
}

} // namespace ddch
