#pragma once

#include <vector>

#include "ddch/grid.hpp"
#include "ddch/params.hpp"
#include "ddch/phase_system.hpp"
#include "ddch/transform.hpp"

namespace ddch {

/// Semi-implicit Fourier scheme shared by MCH and NMNCH.
///
/// Each phase k solves the decoupled 2x2 system
///
///   u - dt nu_k K (sigma_k mu + lambda) = B1
///   mu + (Delta - alpha/eps^2) u         = B2
///
/// with K the implicit metric (m Delta for MCH, m Delta - beta for NMNCH),
/// B2 = (W'(u^n) - alpha u^n)/eps^2 and a model-specific explicit B1. The
/// multiplier lambda^{n+1} is found in Fourier space from the partition
/// defect of the half step, then added back through the same solve operator.
class Scheme {
public:
  /// Phase update held in Fourier space between the half step and the
  /// multiplier correction.
  struct HalfStep {
    Spectrum u_hat;
    Spectrum mu_hat;
  };

  Scheme(Transform &transform, SchemeParams params, std::vector<PhaseCoefficients> phases);
  virtual ~Scheme() = default;
  Scheme(const Scheme &) = delete;
  Scheme &operator=(const Scheme &) = delete;

  const SchemeParams &params() const noexcept { return params_; }
  const std::vector<PhaseCoefficients> &phases() const noexcept { return phases_; }
  Transform &transform() const noexcept { return *transform_; }
  const Grid &grid() const noexcept { return transform_->grid(); }

  /// Fourier transform of B1 for phase k; w = sigma_k mu_k + (explicit potential).
  virtual Spectrum explicit_b1(std::size_t k, const Field &u, const Field &w) = 0;
  /// Fourier transform of B2 = (W'(u) - alpha u) / eps^2.
  Spectrum explicit_b2(const Field &u);

  /// Decoupled half step of phase k. `extra` is the explicit potential added
  /// to sigma_k mu_k (lambda^n for the multiphase system).
  HalfStep half_step_phase(std::size_t k, const Field &u, const Field &mu, const Field &extra);
  std::vector<HalfStep> half_step_spectral(const PhaseSystem &system);
  /// Half step of every phase, in real space: (u^{n+1/2}_k, mu^{n+1/2}_k).
  std::vector<std::pair<Field, Field>> half_step(const PhaseSystem &system);

  /// lambda^{n+1} from the partition defect 1 - sum_k u_k^{n+1/2}.
  Field lagrange(const Field &defect);
  Spectrum lagrange_spectrum(Spectrum defect_hat);
  /// Fourier transform of the defect of a set of half steps.
  Spectrum defect_spectrum(const std::vector<HalfStep> &half) const;

  /// u_k += dt nu_k L_k[K potential], mu_k += dt nu_k L_k[(-Delta + alpha/eps^2) K potential].
  void correct_phase(std::size_t k, const HalfStep &half, const Spectrum &potential_hat,
                     Field &u_out, Field &mu_out);
  /// Real-space convenience form of correct_phase.
  std::pair<Field, Field> correct(std::size_t k, const Field &u_half, const Field &mu_half,
                                  const Field &potential);

  /// half step -> multiplier -> correction; advances step_index and time.
  void step(PhaseSystem &system);

  /// Whether a mobility evaluation saw a value outside [-0.5, 1.5] since the
  /// last reset.
  bool mobility_clamped() const noexcept { return clamped_; }
  void reset_clamp_flag() noexcept { clamped_ = false; }

  /// Absolute tolerance on the mean of the MCH partition defect.
  static constexpr double defect_mean_tolerance = 1e-9;

protected:
  struct PhaseOperators {
    bool frozen = false;
    RealBuffer u_from_b1;  // L
    RealBuffer u_from_b2;  // L dt sigma nu K
    RealBuffer mu_from_b1; // L (-s + alpha/eps^2)
    RealBuffer mu_from_b2; // L
    RealBuffer corr_u;     // dt nu L K
    RealBuffer corr_mu;    // dt nu L K (-s + alpha/eps^2)
  };

  const PhaseOperators &operators(std::size_t k) const { return ops_.at(k); }
  const RealBuffer &metric() const noexcept { return metric_; }
  void flag_clamp(bool clamped) noexcept { clamped_ |= clamped; }

private:
  void check_system(const PhaseSystem &system) const;

  Transform *transform_;
  SchemeParams params_;
  std::vector<PhaseCoefficients> phases_;
  RealBuffer metric_;
  RealBuffer unit_;
  std::vector<PhaseOperators> ops_;
  RealBuffer lambda_symbol_;
  double lambda_prefactor_ = 0.0;
  bool clamped_ = false;
};

} // namespace ddch
