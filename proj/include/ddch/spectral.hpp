#pragma once

#include <vector>

#include "ddch/grid.hpp"
#include "ddch/params.hpp"
#include "ddch/transform.hpp"

namespace ddch::spectral {

/// s(xi) = -4 pi^2 |xi|^2 on the half-spectrum.
const RealBuffer &laplacian_symbol(const Grid &grid) noexcept;

/// Component j is the inverse transform of (2 pi i xi_j) f_hat.
std::vector<Field> gradient(Transform &transform, const Spectrum &f_hat);
std::vector<Field> gradient(Transform &transform, const Field &f);

/// Sum over j of the inverse transform of (2 pi i xi_j) v_j_hat.
Field divergence(Transform &transform, const std::vector<Field> &v);
/// Spectral divergence, left in Fourier space.
Spectrum divergence_spectrum(Transform &transform, const std::vector<Field> &v);

/// Multiply a spectrum by a real symbol (pointwise), in place.
void apply_symbol(Spectrum &f_hat, const RealBuffer &symbol);
/// Apply a real symbol to a real field.
Field apply_symbol(Transform &transform, const Field &f, const RealBuffer &symbol);

/// Symbol of the implicit metric operator: m s for MCH, m s - beta for NMNCH.
RealBuffer metric_symbol(const Grid &grid, const SchemeParams &params);

/// 1 / (1 + dt m sigma_nu s (s - alpha/eps^2)).
RealBuffer lm_symbol(const Grid &grid, double dt, double m, double sigma_nu, double alpha,
                     double epsilon);
/// 1 / (1 + dt sigma_nu (m s - beta)(s - alpha/eps^2)).
RealBuffer lnmn_symbol(const Grid &grid, double dt, double sigma_nu, double m, double beta,
                       double alpha, double epsilon);
/// Per-phase inverse-operator symbol for the scheme selected by params.model.
RealBuffer solve_symbol(const Grid &grid, const SchemeParams &params, double sigma_nu);

void apply_LM(Spectrum &f_hat, const Grid &grid, double dt, double m, double sigma_nu,
              double alpha, double epsilon);
void apply_LNMN(Spectrum &f_hat, const Grid &grid, double dt, double sigma_nu, double m,
                double beta, double alpha, double epsilon);

/// Reciprocal of sum_k nu_k L_k(xi) op(xi), with op = s for MCH and
/// op = m s - beta for NMNCH. The multiplier is then
/// lambda = 1/(dt m) * symbol * defect (MCH) or 1/dt * symbol * defect (NMNCH).
/// MCH: the zero mode is singular and set to 0 (lambda has zero mean).
/// Throws AllMobilitiesZero if every nu_k is zero.
RealBuffer lambda_inverse_symbol(const Grid &grid, const SchemeParams &params,
                                 const std::vector<PhaseCoefficients> &phases);

} // namespace ddch::spectral
