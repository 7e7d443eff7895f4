#include "ddch/params.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "ddch/error.hpp"
#include "ddch/physics.hpp"

namespace ddch {

std::string_view to_string(Model model) noexcept {
  return model == Model::mch ? "mch" : "nmnch";
}

Model parse_model(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "mch") return Model::mch;
  if (lower == "nmnch") return Model::nmnch;
  throw ValidationError("unknown model '" + std::string(text) + "'");
}

SchemeParams SchemeParams::defaults(Model model, double epsilon) {
  SchemeParams p;
  p.model = model;
  p.epsilon = epsilon;
  p.dt = std::pow(epsilon, 4);
  p.alpha = 2.0;
  p.gamma = 1.0;
  if (model == Model::mch) {
    p.m = physics::mch_mobility_max();
    p.beta = 0.0;
  } else {
    p.m = 1.0;
    p.beta = 2.0 / (epsilon * epsilon);
  }
  return p;
}

void SchemeParams::validate() const {
  auto positive = [](double v) { return v > 0.0 && std::isfinite(v); };
  if (!positive(epsilon)) throw ValidationError("epsilon must be > 0");
  if (!positive(dt)) throw ValidationError("dt must be > 0");
  if (!positive(m)) throw ValidationError("m must be > 0");
  if (!(alpha >= 0.0)) throw ValidationError("alpha must be >= 0");
  if (model == Model::nmnch) {
    if (!positive(beta)) throw ValidationError("beta must be > 0 for NMNCH");
    if (!positive(gamma)) throw ValidationError("gamma must be > 0 for NMNCH");
  }
}

} // namespace ddch
