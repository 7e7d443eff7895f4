#include "ddch/solvers.hpp"

namespace ddch {

std::unique_ptr<Scheme> make_scheme(Transform &transform, const SchemeParams &params,
                                    std::vector<PhaseCoefficients> phases) {
  if (params.model == Model::mch)
    return std::make_unique<MchScheme>(transform, params, std::move(phases));
  return std::make_unique<NmnchScheme>(transform, params, std::move(phases));
}

} // namespace ddch
