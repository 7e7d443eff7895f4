#include <cmath>
#include <limits>
#include <numbers>

#include "ddch/diagnostics.hpp"
#include "ddch/error.hpp"

namespace ddch {

namespace {

void require_2d(const Grid &grid) {
  if (grid.ndim() != 2) throw ValidationError("contours are only available on 2D grids");
}

/// Corner values of cell (i, j) counter-clockwise from (i, j), wrapping
/// periodically.
std::array<double, 4> corners(const Grid &g, const Field &u, int i, int j) {
  const int n0 = g.dim(0), n1 = g.dim(1);
  const int i1 = (i + 1) % n0, j1 = (j + 1) % n1;
  return {u[static_cast<std::size_t>(i) * n1 + j], u[static_cast<std::size_t>(i1) * n1 + j],
          u[static_cast<std::size_t>(i1) * n1 + j1], u[static_cast<std::size_t>(i) * n1 + j1]};
}

// Unit-square corner offsets in the same order.
constexpr double cx[4] = {0.0, 1.0, 1.0, 0.0};
constexpr double cy[4] = {0.0, 0.0, 1.0, 1.0};

std::array<double, 2> crossing(const std::array<double, 4> &v, int e, double iso) {
  const int a = e, b = (e + 1) % 4;
  const double t = (iso - v[a]) / (v[b] - v[a]);
  return {cx[a] + t * (cx[b] - cx[a]), cy[a] + t * (cy[b] - cy[a])};
}

} // namespace

std::vector<Segment> contour_segments(const Grid &grid, const Field &u, double iso) {
  require_2d(grid);
  const double h0 = grid.spacing(0), h1 = grid.spacing(1);
  std::vector<Segment> out;
  for (int i = 0; i < grid.dim(0); ++i)
    for (int j = 0; j < grid.dim(1); ++j) {
      const auto v = corners(grid, u, i, j);
      int mask = 0;
      for (int c = 0; c < 4; ++c)
        if (v[c] > iso) mask |= 1 << c;
      if (mask == 0 || mask == 15) continue;

      // Edges e = (c, c+1) crossed by the contour.
      std::array<int, 4> crossed{};
      int count = 0;
      for (int e = 0; e < 4; ++e)
        if (((mask >> e) & 1) != ((mask >> ((e + 1) % 4)) & 1)) crossed[count++] = e;

      auto emit = [&](int ea, int eb) {
        const auto p = crossing(v, ea, iso), q = crossing(v, eb, iso);
        out.push_back({{(i + p[0]) * h0, (j + p[1]) * h1}, {(i + q[0]) * h0, (j + q[1]) * h1}});
      };
      if (count == 2) {
        emit(crossed[0], crossed[1]);
      } else {
        // Saddle: the diagonal pair sharing the centre's state is joined
        // through the middle and the other two corners are cut off.
        const double centre = 0.25 * (v[0] + v[1] + v[2] + v[3]);
        const bool zero_inside = (mask & 1) != 0;
        if ((centre > iso) == zero_inside) {
          emit(0, 1); // around corner 1
          emit(2, 3); // around corner 3
        } else {
          emit(3, 0); // around corner 0
          emit(1, 2); // around corner 2
        }
      }
    }
  return out;
}

LevelSetGeometry level_set_geometry(const Grid &grid, const Field &u, double iso) {
  require_2d(grid);
  const std::vector<Segment> segs = contour_segments(grid, u, iso);
  if (segs.empty()) throw EmptyLevelSet("no " + std::to_string(iso) + "-level contour");

  LevelSetGeometry geo;
  for (const Segment &s : segs) geo.perimeter += std::hypot(s.b[0] - s.a[0], s.b[1] - s.a[1]);

  // Area: the part of each cell's unit square above iso, bounded by the
  // interpolated crossings (boundary walk + shoelace).
  double area = 0.0;
  for (int i = 0; i < grid.dim(0); ++i)
    for (int j = 0; j < grid.dim(1); ++j) {
      const auto v = corners(grid, u, i, j);
      std::array<std::array<double, 2>, 8> poly;
      int n = 0;
      for (int c = 0; c < 4; ++c) {
        const int d = (c + 1) % 4;
        if (v[c] > iso) poly[n++] = {cx[c], cy[c]};
        if ((v[c] > iso) != (v[d] > iso)) poly[n++] = crossing(v, c, iso);
      }
      double twice = 0.0;
      for (int k = 0; k < n; ++k) {
        const auto &p = poly[k], &q = poly[(k + 1) % n];
        twice += p[0] * q[1] - q[0] * p[1];
      }
      area += 0.5 * std::abs(twice);
    }
  geo.area = area * grid.spacing(0) * grid.spacing(1);
  geo.isoperimetric_ratio = 4.0 * std::numbers::pi * geo.area / (geo.perimeter * geo.perimeter);
  return geo;
}

double hausdorff_distance(const Grid &grid, const std::vector<Segment> &a,
                          const std::vector<Segment> &b) {
  require_2d(grid);
  if (a.empty() || b.empty()) throw EmptyLevelSet("Hausdorff distance of an empty contour");
  const double l0 = grid.length(0), l1 = grid.length(1);
  auto one_sided = [&](const std::vector<Segment> &from, const std::vector<Segment> &to) {
    double worst = 0.0;
    for (const Segment &s : from)
      for (const auto &p : {s.a, s.b}) {
        double best = std::numeric_limits<double>::infinity();
        for (const Segment &t : to)
          for (const auto &q : {t.a, t.b}) {
            double dx = p[0] - q[0], dy = p[1] - q[1];
            dx -= l0 * std::round(dx / l0);
            dy -= l1 * std::round(dy / l1);
            best = std::min(best, dx * dx + dy * dy);
          }
        worst = std::max(worst, best);
      }
    return std::sqrt(worst);
  };
  return std::max(one_sided(a, b), one_sided(b, a));
}

} // namespace ddch
