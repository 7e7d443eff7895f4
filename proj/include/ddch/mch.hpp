#pragma once

#include "ddch/scheme.hpp"

namespace ddch {

/// Multiphase MCH stepper: degenerate mobility M(u) = 2W(u)/c_N^2 split as
/// m + (M - m), the first part implicit.
class MchScheme final : public Scheme {
public:
  MchScheme(Transform &transform, SchemeParams params, std::vector<PhaseCoefficients> phases);

  struct BTerms {
    Field b1; ///< u + dt nu_k div[(M(u) - m) grad(sigma_k mu + lambda)]
    Field b2; ///< (W'(u) - alpha u) / eps^2
  };
  BTerms b_terms(std::size_t k, const Field &u, const Field &mu, const Field &lambda);

  Spectrum explicit_b1(std::size_t k, const Field &u, const Field &w) override;
};

} // namespace ddch
