#pragma once

#include <cstdint>
#include <vector>

#include "ddch/grid.hpp"
#include "ddch/params.hpp"
#include "ddch/transform.hpp"

namespace ddch {

/// L phase fields with their chemical potentials and the partition
/// multiplier. Invariants maintained by the steppers: sum_k u_k = 1 and
/// constant per-phase means (MCH exactly; NMNCH up to its own transport).
struct PhaseSystem {
  std::vector<Field> u;
  std::vector<Field> mu;
  Field lambda;
  std::vector<PhaseCoefficients> coefficients;
  std::int64_t step_index = 0;
  double time = 0.0;

  std::size_t phase_count() const noexcept { return u.size(); }
};

/// mu = W'(u) / eps^2 - Laplacian(u).
Field consistent_potential(Transform &transform, const Field &u, double epsilon);

/// Builds a system from phase fields: mu from consistent_potential, lambda = 0.
PhaseSystem make_system(Transform &transform, std::vector<Field> u,
                        std::vector<PhaseCoefficients> coefficients, double epsilon);

/// max_x |sum_k u_k - 1|.
double partition_residual(const PhaseSystem &system);

} // namespace ddch
