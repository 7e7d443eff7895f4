#include "ddch/phase_system.hpp"

#include <cmath>

#include "ddch/error.hpp"
#include "ddch/kernels.hpp"
#include "ddch/spectral.hpp"

namespace ddch {

Field consistent_potential(Transform &transform, const Field &u, double epsilon) {
  const Grid &grid = transform.grid();
  Field mu(u.size());
  kernels::active().double_well_derivative(u.data(), mu.data(), u.size());
  const Field lap = spectral::apply_symbol(transform, u, grid.laplacian_symbol());
  const double inv_eps2 = 1.0 / (epsilon * epsilon);
  for (std::size_t i = 0; i < mu.size(); ++i) mu[i] = mu[i] * inv_eps2 - lap[i];
  return mu;
}

PhaseSystem make_system(Transform &transform, std::vector<Field> u,
                        std::vector<PhaseCoefficients> coefficients, double epsilon) {
  if (u.empty()) throw ValidationError("a phase system needs at least one phase");
  if (u.size() != coefficients.size())
    throw ValidationError("one (sigma, nu) pair per phase is required");
  const std::size_t n = transform.grid().size();
  for (const Field &f : u)
    if (f.size() != n) throw ValidationError("phase field does not match the grid");
  PhaseSystem s;
  s.mu.reserve(u.size());
  for (const Field &f : u) s.mu.push_back(consistent_potential(transform, f, epsilon));
  s.u = std::move(u);
  s.lambda.assign(n, 0.0);
  s.coefficients = std::move(coefficients);
  return s;
}

double partition_residual(const PhaseSystem &system) {
  if (system.u.empty()) return 0.0;
  const std::size_t n = system.u.front().size();
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double sum = 0.0;
    for (const Field &f : system.u) sum += f[i];
    worst = std::max(worst, std::abs(sum - 1.0));
  }
  return worst;
}

} // namespace ddch
