#pragma once

#include <memory>

#include "ddch/mch.hpp"
#include "ddch/nmnch.hpp"

namespace ddch {

/// MchScheme or NmnchScheme according to params.model.
std::unique_ptr<Scheme> make_scheme(Transform &transform, const SchemeParams &params,
                                    std::vector<PhaseCoefficients> phases);

} // namespace ddch
