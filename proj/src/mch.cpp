#include "ddch/mch.hpp"

#include "ddch/error.hpp"
#include "ddch/kernels.hpp"
#include "ddch/physics.hpp"

namespace ddch {

MchScheme::MchScheme(Transform &transform, SchemeParams params,
                     std::vector<PhaseCoefficients> phases)
    : Scheme(transform, [&] {
        if (params.model != Model::mch) throw ValidationError("MchScheme needs model = mch");
        return params;
      }(), std::move(phases)) {}

Spectrum MchScheme::explicit_b1(std::size_t k, const Field &u, const Field &w) {
  Transform &tr = transform();
  const Grid &g = grid();
  const auto &kern = kernels::active();
  const std::size_t n = g.size();
  const std::size_t ns = g.spectral_size();

  Field shifted(n);
  flag_clamp(kern.shifted_mobility(u.data(), physics::mch_normalization, params().m,
                                   shifted.data(), n));

  const Spectrum w_hat = tr.forward(w);
  Spectrum tmp(ns);
  Spectrum div_hat(ns, {0.0, 0.0});
  Field component(n);
  for (int a = 0; a < g.ndim(); ++a) {
    kern.derivative_into(w_hat.data(), g.wavenumber(a).data(), tmp.data(), ns);
    tr.inverse(tmp, component);
    kern.multiply(shifted.data(), component.data(), component.data(), n);
    tr.forward(component, tmp);
    kern.derivative_add(tmp.data(), g.wavenumber(a).data(), div_hat.data(), ns);
  }

  Spectrum b1 = tr.forward(u);
  const double c = params().dt * phases()[k].nu;
  for (std::size_t i = 0; i < ns; ++i) b1[i] += c * div_hat[i];
  return b1;
}

MchScheme::BTerms MchScheme::b_terms(std::size_t k, const Field &u, const Field &mu,
                                     const Field &lambda) {
  Field w(u.size());
  kernels::active().linear(lambda.data(), phases().at(k).sigma, mu.data(), w.data(), w.size());
  BTerms out;
  out.b1 = transform().inverse(explicit_b1(k, u, w));
  out.b2.resize(u.size());
  kernels::active().explicit_potential(u.data(), params().alpha,
                                       1.0 / (params().epsilon * params().epsilon),
                                       out.b2.data(), u.size());
  return out;
}

} // namespace ddch
