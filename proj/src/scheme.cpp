#include "ddch/scheme.hpp"

#include <cmath>

#include "ddch/error.hpp"
#include "ddch/kernels.hpp"
#include "ddch/spectral.hpp"

namespace ddch {

Scheme::Scheme(Transform &transform, SchemeParams params, std::vector<PhaseCoefficients> phases)
    : transform_(&transform), params_(params), phases_(std::move(phases)) {
  params_.validate();
  if (phases_.empty()) throw ValidationError("a scheme needs at least one phase");
  for (const auto &p : phases_)
    if (p.nu < 0.0 || p.sigma < 0.0)
      throw ValidationError("per-phase sigma and nu must be non-negative");

  const Grid &g = grid();
  const RealBuffer &s = g.laplacian_symbol();
  const double shift = params_.alpha / (params_.epsilon * params_.epsilon);
  metric_ = spectral::metric_symbol(g, params_);
  unit_.assign(g.spectral_size(), 1.0);

  ops_.resize(phases_.size());
  for (std::size_t k = 0; k < phases_.size(); ++k) {
    const PhaseCoefficients &pc = phases_[k];
    PhaseOperators &op = ops_[k];
    op.frozen = pc.nu == 0.0;
    if (op.frozen) continue;
    const double sn = pc.sigma * pc.nu;
    op.u_from_b1 = spectral::solve_symbol(g, params_, sn);
    const std::size_t n = s.size();
    op.u_from_b2.resize(n);
    op.mu_from_b1.resize(n);
    op.corr_u.resize(n);
    op.corr_mu.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double l = op.u_from_b1[i];
      op.u_from_b2[i] = l * params_.dt * sn * metric_[i];
      op.mu_from_b1[i] = l * (shift - s[i]);
      op.corr_u[i] = params_.dt * pc.nu * l * metric_[i];
      op.corr_mu[i] = op.corr_u[i] * (shift - s[i]);
    }
    op.mu_from_b2 = op.u_from_b1;
  }

  if (phases_.size() > 1) {
    lambda_symbol_ = spectral::lambda_inverse_symbol(g, params_, phases_);
    lambda_prefactor_ =
        params_.model == Model::mch ? 1.0 / (params_.dt * params_.m) : 1.0 / params_.dt;
  }
}

Spectrum Scheme::explicit_b2(const Field &u) {
  Field b2(u.size());
  kernels::active().explicit_potential(u.data(), params_.alpha,
                                       1.0 / (params_.epsilon * params_.epsilon), b2.data(),
                                       u.size());
  return transform_->forward(b2);
}

Scheme::HalfStep Scheme::half_step_phase(std::size_t k, const Field &u, const Field &mu,
                                         const Field &extra) {
  const PhaseOperators &op = ops_.at(k);
  HalfStep out;
  if (op.frozen) {
    out.u_hat = transform_->forward(u);
    out.mu_hat = transform_->forward(mu);
    return out;
  }
  Field w(u.size());
  kernels::active().linear(extra.data(), phases_[k].sigma, mu.data(), w.data(), w.size());
  const Spectrum b1 = explicit_b1(k, u, w);
  const Spectrum b2 = explicit_b2(u);
  const auto &kern = kernels::active();
  const std::size_t n = b1.size();
  out.u_hat.resize(n);
  out.mu_hat.resize(n);
  kern.combine(b1.data(), op.u_from_b1.data(), b2.data(), op.u_from_b2.data(),
               out.u_hat.data(), n);
  kern.combine(b1.data(), op.mu_from_b1.data(), b2.data(), op.mu_from_b2.data(),
               out.mu_hat.data(), n);
  return out;
}

void Scheme::check_system(const PhaseSystem &system) const {
  if (system.phase_count() != phases_.size())
    throw ValidationError("phase count does not match the scheme");
  const std::size_t n = grid().size();
  for (std::size_t k = 0; k < system.phase_count(); ++k)
    if (system.u[k].size() != n || system.mu[k].size() != n)
      throw ValidationError("phase field does not match the grid");
  if (system.lambda.size() != n) throw ValidationError("multiplier does not match the grid");
}

std::vector<Scheme::HalfStep> Scheme::half_step_spectral(const PhaseSystem &system) {
  check_system(system);
  std::vector<HalfStep> half;
  half.reserve(system.phase_count());
  for (std::size_t k = 0; k < system.phase_count(); ++k)
    half.push_back(half_step_phase(k, system.u[k], system.mu[k], system.lambda));
  return half;
}

std::vector<std::pair<Field, Field>> Scheme::half_step(const PhaseSystem &system) {
  std::vector<std::pair<Field, Field>> out;
  for (auto &h : half_step_spectral(system))
    out.emplace_back(transform_->inverse(h.u_hat), transform_->inverse(h.mu_hat));
  return out;
}

Spectrum Scheme::defect_spectrum(const std::vector<HalfStep> &half) const {
  Spectrum d(grid().spectral_size(), {0.0, 0.0});
  d[0] = static_cast<double>(grid().size());
  for (const HalfStep &h : half)
    for (std::size_t i = 0; i < d.size(); ++i) d[i] -= h.u_hat[i];
  return d;
}

Spectrum Scheme::lagrange_spectrum(Spectrum defect_hat) {
  if (lambda_symbol_.empty())
    throw ValidationError("the multiplier is undefined for a single phase");
  if (params_.model == Model::mch) {
    const double mean = defect_hat[0].real() / static_cast<double>(grid().size());
    if (std::abs(mean) > defect_mean_tolerance)
      throw UnbalancedDefect("partition defect has mean " + std::to_string(mean));
  }
  spectral::apply_symbol(defect_hat, lambda_symbol_);
  for (auto &c : defect_hat) c *= lambda_prefactor_;
  return defect_hat;
}

Field Scheme::lagrange(const Field &defect) {
  return transform_->inverse(lagrange_spectrum(transform_->forward(defect)));
}

void Scheme::correct_phase(std::size_t k, const HalfStep &half, const Spectrum &potential_hat,
                           Field &u_out, Field &mu_out) {
  const PhaseOperators &op = ops_.at(k);
  const std::size_t n = half.u_hat.size();
  u_out.resize(grid().size());
  mu_out.resize(grid().size());
  if (op.frozen) {
    transform_->inverse(half.u_hat, u_out);
    transform_->inverse(half.mu_hat, mu_out);
    return;
  }
  Spectrum tmp(n);
  const auto &kern = kernels::active();
  kern.combine(half.u_hat.data(), unit_.data(), potential_hat.data(), op.corr_u.data(),
               tmp.data(), n);
  transform_->inverse(tmp, u_out);
  kern.combine(half.mu_hat.data(), unit_.data(), potential_hat.data(), op.corr_mu.data(),
               tmp.data(), n);
  transform_->inverse(tmp, mu_out);
}

std::pair<Field, Field> Scheme::correct(std::size_t k, const Field &u_half,
                                        const Field &mu_half, const Field &potential) {
  HalfStep h{transform_->forward(u_half), transform_->forward(mu_half)};
  std::pair<Field, Field> out;
  correct_phase(k, h, transform_->forward(potential), out.first, out.second);
  return out;
}

void Scheme::step(PhaseSystem &system) {
  std::vector<HalfStep> half = half_step_spectral(system);
  const std::size_t count = system.phase_count();
  if (count == 1) {
    if (!ops_[0].frozen) {
      transform_->inverse(half[0].u_hat, system.u[0]);
      transform_->inverse(half[0].mu_hat, system.mu[0]);
    }
  } else {
    const Spectrum lambda_hat = lagrange_spectrum(defect_spectrum(half));
    for (std::size_t k = 0; k < count; ++k) {
      if (ops_[k].frozen) continue; // u_k and mu_k are left untouched, bit for bit
      correct_phase(k, half[k], lambda_hat, system.u[k], system.mu[k]);
    }
    transform_->inverse(lambda_hat, system.lambda);
  }
  system.step_index += 1;
  system.time += params_.dt;
}

} // namespace ddch
