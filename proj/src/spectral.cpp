#include "ddch/spectral.hpp"

#include "ddch/error.hpp"
#include "ddch/kernels.hpp"

namespace ddch::spectral {

const RealBuffer &laplacian_symbol(const Grid &grid) noexcept { return grid.laplacian_symbol(); }

std::vector<Field> gradient(Transform &transform, const Spectrum &f_hat) {
  const Grid &grid = transform.grid();
  const auto &k = kernels::active();
  std::vector<Field> out;
  out.reserve(grid.ndim());
  Spectrum tmp(grid.spectral_size());
  for (int a = 0; a < grid.ndim(); ++a) {
    k.derivative_into(f_hat.data(), grid.wavenumber(a).data(), tmp.data(), tmp.size());
    out.push_back(transform.inverse(tmp));
  }
  return out;
}

std::vector<Field> gradient(Transform &transform, const Field &f) {
  return gradient(transform, transform.forward(f));
}

Spectrum divergence_spectrum(Transform &transform, const std::vector<Field> &v) {
  const Grid &grid = transform.grid();
  if (static_cast<int>(v.size()) != grid.ndim())
    throw ValidationError("divergence needs one component per axis");
  const auto &k = kernels::active();
  Spectrum acc(grid.spectral_size(), {0.0, 0.0});
  Spectrum comp(grid.spectral_size());
  for (int a = 0; a < grid.ndim(); ++a) {
    transform.forward(v[a], comp);
    k.derivative_add(comp.data(), grid.wavenumber(a).data(), acc.data(), acc.size());
  }
  return acc;
}

Field divergence(Transform &transform, const std::vector<Field> &v) {
  return transform.inverse(divergence_spectrum(transform, v));
}

void apply_symbol(Spectrum &f_hat, const RealBuffer &symbol) {
  kernels::active().scale(f_hat.data(), symbol.data(), f_hat.size());
}

Field apply_symbol(Transform &transform, const Field &f, const RealBuffer &symbol) {
  Spectrum f_hat = transform.forward(f);
  apply_symbol(f_hat, symbol);
  return transform.inverse(f_hat);
}

RealBuffer metric_symbol(const Grid &grid, const SchemeParams &params) {
  const RealBuffer &s = grid.laplacian_symbol();
  RealBuffer out(s.size());
  const double beta = params.model == Model::nmnch ? params.beta : 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) out[i] = params.m * s[i] - beta;
  return out;
}

RealBuffer lm_symbol(const Grid &grid, double dt, double m, double sigma_nu, double alpha,
                     double epsilon) {
  const RealBuffer &s = grid.laplacian_symbol();
  const double shift = alpha / (epsilon * epsilon);
  RealBuffer out(s.size());
  for (std::size_t i = 0; i < s.size(); ++i)
    out[i] = 1.0 / (1.0 + dt * m * sigma_nu * s[i] * (s[i] - shift));
  return out;
}

RealBuffer lnmn_symbol(const Grid &grid, double dt, double sigma_nu, double m, double beta,
                       double alpha, double epsilon) {
  const RealBuffer &s = grid.laplacian_symbol();
  const double shift = alpha / (epsilon * epsilon);
  RealBuffer out(s.size());
  for (std::size_t i = 0; i < s.size(); ++i)
    out[i] = 1.0 / (1.0 + dt * sigma_nu * (m * s[i] - beta) * (s[i] - shift));
  return out;
}

RealBuffer solve_symbol(const Grid &grid, const SchemeParams &params, double sigma_nu) {
  if (params.model == Model::mch)
    return lm_symbol(grid, params.dt, params.m, sigma_nu, params.alpha, params.epsilon);
  return lnmn_symbol(grid, params.dt, sigma_nu, params.m, params.beta, params.alpha,
                     params.epsilon);
}

void apply_LM(Spectrum &f_hat, const Grid &grid, double dt, double m, double sigma_nu,
              double alpha, double epsilon) {
  apply_symbol(f_hat, lm_symbol(grid, dt, m, sigma_nu, alpha, epsilon));
}

void apply_LNMN(Spectrum &f_hat, const Grid &grid, double dt, double sigma_nu, double m,
                double beta, double alpha, double epsilon) {
  apply_symbol(f_hat, lnmn_symbol(grid, dt, sigma_nu, m, beta, alpha, epsilon));
}

RealBuffer lambda_inverse_symbol(const Grid &grid, const SchemeParams &params,
                                 const std::vector<PhaseCoefficients> &phases) {
  bool any = false;
  for (const auto &p : phases) any |= p.nu > 0.0;
  if (!any) throw AllMobilitiesZero("every phase mobility is zero");

  // Operator symbol: s for MCH (its m is folded into the 1/(dt m) prefactor),
  // m s - beta for NMNCH.
  const RealBuffer &s = grid.laplacian_symbol();
  RealBuffer total(grid.spectral_size(), 0.0);
  for (const auto &p : phases) {
    if (p.nu == 0.0) continue;
    const RealBuffer l = solve_symbol(grid, params, p.sigma * p.nu);
    for (std::size_t i = 0; i < total.size(); ++i) total[i] += p.nu * l[i];
  }
  RealBuffer out(total.size());
  for (std::size_t i = 0; i < total.size(); ++i) {
    const double op = params.model == Model::mch ? s[i] : params.m * s[i] - params.beta;
    const double forward = total[i] * op;
    out[i] = forward == 0.0 ? 0.0 : 1.0 / forward;
  }
  return out;
}

} // namespace ddch::spectral
