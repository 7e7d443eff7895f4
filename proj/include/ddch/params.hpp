#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace ddch {

enum class Model { mch, nmnch };

std::string_view to_string(Model model) noexcept;
/// Parses "mch" / "nmnch" (case-insensitive). Throws ValidationError.
Model parse_model(std::string_view text);

/// Time-stepping parameters shared by both schemes.
struct SchemeParams {
  Model model = Model::nmnch;
  double epsilon = 0.0;
  double dt = 0.0;
  double alpha = 2.0; ///< energy-splitting stabilizer
  double m = 1.0;     ///< metric-splitting stabilizer
  double beta = 0.0;  ///< NMNCH zero-order metric stabilizer
  double gamma = 1.0; ///< NMNCH mobility smoothing

  /// Defaults used by the experiments: dt = eps^4, alpha = 2, gamma = 1;
  /// MCH: m = max_[0,1] M (2.25 with the 1/c_N^2 normalization);
  /// NMNCH: m = 1, beta = 2 / eps^2.
  static SchemeParams defaults(Model model, double epsilon);

  /// Throws ValidationError on non-positive eps/dt/m or negative alpha/beta.
  void validate() const;
};

/// Per-phase surface tension coefficient sigma_k and mobility nu_k.
struct PhaseCoefficients {
  double sigma = 1.0;
  double nu = 1.0;
};

} // namespace ddch
