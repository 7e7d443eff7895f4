#pragma once

#include "ddch/scheme.hpp"

namespace ddch {

/// Multiphase NMNCH stepper: smoothed mobility M(u) = 2W(u) + gamma eps^2,
/// metric mobility N = 1/sqrt(M), and the stabilized metric split
/// (m Delta - beta) + remainder.
class NmnchScheme final : public Scheme {
public:
  NmnchScheme(Transform &transform, SchemeParams params, std::vector<PhaseCoefficients> phases);

  /// N(u) div(M(u) grad(N(u) w)) evaluated as
  /// sqrt(M) Lap(p) + 2 grad(sqrt M) . grad(p) with p = N(u) w.
  Field transport(const Field &u, const Field &w);

  /// H_k = nu_k (transport(u, sigma_k mu + lambda) - (m Delta - beta)(sigma_k mu + lambda)).
  Field h_term(std::size_t k, const Field &u, const Field &mu, const Field &lambda);

  Spectrum explicit_b1(std::size_t k, const Field &u, const Field &w) override;

private:
  Spectrum transport_spectrum(const Field &u, const Field &w);
};

} // namespace ddch
