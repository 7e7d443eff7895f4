#include "ddch/nmnch.hpp"

#include "ddch/error.hpp"
#include "ddch/kernels.hpp"

namespace ddch {

NmnchScheme::NmnchScheme(Transform &transform, SchemeParams params,
                         std::vector<PhaseCoefficients> phases)
    : Scheme(transform, [&] {
        if (params.model != Model::nmnch)
          throw ValidationError("NmnchScheme needs model = nmnch");
        return params;
      }(), std::move(phases)) {}

Spectrum NmnchScheme::transport_spectrum(const Field &u, const Field &w) {
  return transform().forward(transport(u, w));
}

Field NmnchScheme::transport(const Field &u, const Field &w) {
  Transform &tr = transform();
  const Grid &g = grid();
  const auto &kern = kernels::active();
  const std::size_t n = g.size();
  const std::size_t ns = g.spectral_size();
  const double eps = params().epsilon;

  // g = sqrt(M(u)) = 1 / N(u); p = N(u) w
  Field root(n);
  flag_clamp(kern.sqrt_mobility(u.data(), params().gamma * eps * eps, root.data(), n));
  Field p(n);
  kern.divide(w.data(), root.data(), p.data(), n);

  const Spectrum p_hat = tr.forward(p);
  const Spectrum root_hat = tr.forward(root);

  Spectrum tmp(ns);
  Field out(n);
  kern.scale_into(p_hat.data(), g.laplacian_symbol().data(), tmp.data(), ns);
  tr.inverse(tmp, out);
  kern.multiply(root.data(), out.data(), out.data(), n);

  Field dp(n), dr(n);
  for (int a = 0; a < g.ndim(); ++a) {
    kern.derivative_into(p_hat.data(), g.wavenumber(a).data(), tmp.data(), ns);
    tr.inverse(tmp, dp);
    kern.derivative_into(root_hat.data(), g.wavenumber(a).data(), tmp.data(), ns);
    tr.inverse(tmp, dr);
    kern.product_add(2.0, dr.data(), dp.data(), out.data(), n);
  }
  return out;
}

Spectrum NmnchScheme::explicit_b1(std::size_t k, const Field &u, const Field &w) {
  Transform &tr = transform();
  const std::size_t ns = grid().spectral_size();
  const Spectrum t_hat = transport_spectrum(u, w);
  const Spectrum w_hat = tr.forward(w);
  Spectrum b1 = tr.forward(u);
  const double c = params().dt * phases()[k].nu;
  const RealBuffer &kappa = metric();
  for (std::size_t i = 0; i < ns; ++i) b1[i] += c * (t_hat[i] - kappa[i] * w_hat[i]);
  return b1;
}

Field NmnchScheme::h_term(std::size_t k, const Field &u, const Field &mu, const Field &lambda) {
  Field w(u.size());
  kernels::active().linear(lambda.data(), phases().at(k).sigma, mu.data(), w.data(), w.size());
  const Spectrum t_hat = transport_spectrum(u, w);
  const Spectrum w_hat = transform().forward(w);
  const double nu = phases()[k].nu;
  const RealBuffer &kappa = metric();
  Spectrum h(t_hat.size());
  for (std::size_t i = 0; i < h.size(); ++i) h[i] = nu * (t_hat[i] - kappa[i] * w_hat[i]);
  return transform().inverse(h);
}

} // namespace ddch
