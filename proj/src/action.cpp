#include "hca/action.hpp"

#include <algorithm>

#include "hca/errors.hpp"

namespace hca {

namespace {

// sum_a u^a v^a
GaussianInt bilinear(const GIVector& u, const GIVector& v) {
  GaussianInt acc;
  for (std::size_t a = 0; a < u.size(); ++a) acc.add_product(u[a], v[a]);
  return acc;
}

// 2 L_m = -i (chi_m . dpsi_m - dchi_m . psi_m) + 2 chi_m . H psi_m
GaussianInt doubled_lagrangian(const GIVector& psi_prev, const GIVector& psi, const GIVector& psi_next,
                               const GIVector& chi_prev, const GIVector& chi, const GIVector& chi_next,
                               const HermitianMatrix& h) {
  const GIVector dpsi = psi_next - psi_prev;
  const GIVector dchi = chi_next - chi_prev;
  GaussianInt kinetic = bilinear(chi, dpsi) - bilinear(dchi, psi);
  GaussianInt potential = bilinear(chi, apply(h, psi));
  potential *= BigInt(2);
  return kinetic.times_minus_i() + potential;
}

GaussianInt unit_for(Component part) {
  return (part == Component::psi_imag || part == Component::conj_imag) ? GaussianInt::i() : GaussianInt(1);
}

bool varies_psi(Component part) { return part == Component::psi_real || part == Component::psi_imag; }

}  // namespace

GaussianInt doubled_action(std::span<const GIVector> psi, std::span<const GIVector> psi_star,
                           const HermitianMatrix& h, std::size_t first, std::size_t last) {
  if (psi.size() != psi_star.size()) throw DimensionMismatch("doubled_action: field lengths differ");
  if (first == 0 || last + 1 >= psi.size() || first > last) {
    throw PreconditionViolation("doubled_action: site range needs one neighbour slice on each side");
  }
  GaussianInt total;
  for (std::size_t m = first; m <= last; ++m) {
    total += doubled_lagrangian(psi[m - 1], psi[m], psi[m + 1], psi_star[m - 1], psi_star[m], psi_star[m + 1], h);
  }
  return total;
}

ActionValue action_evaluate(const Trajectory& traj, const HermitianMatrix& h) {
  if (traj.size() < 3) throw PreconditionViolation("action_evaluate: trajectory needs at least 3 slices");
  if (traj.dim() != h.dim()) throw DimensionMismatch("action_evaluate: trajectory/Hamiltonian dimension");
  std::vector<GIVector> conj_states;
  conj_states.reserve(traj.size());
  for (const auto& s : traj.states()) conj_states.push_back(s.conj());
  const GaussianInt twice = doubled_action(traj.states(), conj_states, h, 1, traj.last_index() - 1);
  return ActionValue{exact_divide(twice, 2)};
}

bool VariationQuotient::is_integral() const {
  return mpz_divisible_p(numerator.re().get_mpz_t(), denominator.get_mpz_t()) &&
         mpz_divisible_p(numerator.im().get_mpz_t(), denominator.get_mpz_t());
}

GaussianInt VariationQuotient::value() const { return exact_divide(numerator, denominator); }

std::string VariationQuotient::to_string() const {
  if (zero_delta) return "0 (delta = 0)";
  if (is_integral()) return value().to_string();
  return "(" + numerator.to_string() + ")/" + denominator.get_str();
}

bool same_value(const VariationQuotient& a, const VariationQuotient& b) {
  return a.numerator * b.denominator == b.numerator * a.denominator;
}

std::string to_string(Component c) {
  switch (c) {
    case Component::psi_real: return "Re psi";
    case Component::psi_imag: return "Im psi";
    case Component::conj_real: return "Re psi*";
    case Component::conj_imag: return "Im psi*";
  }
  return "?";
}

SiteActionFunctional::SiteActionFunctional(const Trajectory& traj, const HermitianMatrix& h, std::size_t site)
    : site_(site), dim_(traj.dim()) {
  if (site == 0 || site >= traj.last_index()) {
    throw PreconditionViolation("site " + std::to_string(site) + " is not interior");
  }
  if (h.dim() != dim_) throw DimensionMismatch("SiteActionFunctional: trajectory/Hamiltonian dimension");

  const GIVector zero(dim_);
  auto psi_at = [&](std::ptrdiff_t m) -> const GIVector& {
    return (m < 0 || m > static_cast<std::ptrdiff_t>(traj.last_index())) ? zero : traj[static_cast<std::size_t>(m)];
  };
  const auto n = static_cast<std::ptrdiff_t>(site);
  std::array<GIVector, 5> psi;
  std::array<GIVector, 5> chi;
  for (std::ptrdiff_t k = 0; k < 5; ++k) {
    psi[k] = psi_at(n - 2 + k);
    chi[k] = psi[k].conj();
  }
  for (std::size_t k = 1; k <= 3; ++k) {
    base_ += doubled_lagrangian(psi[k - 1], psi[k], psi[k + 1], chi[k - 1], chi[k], chi[k + 1], h);
  }

  // 2L is affine in each site-n variable:
  //   d(2L)/d(psi^a)  = 2i (chi_{n+1} - chi_{n-1})^a + 2 (chi_n H)_a
  //   d(2L)/d(psi*^a) = -2i (psi_{n+1} - psi_{n-1})^a + 2 (H psi_n)^a
  const GIVector& psi_n = psi[2];
  const GIVector& chi_n = chi[2];
  const GIVector hpsi = apply(h, psi_n);
  GIVector chi_h(dim_);
  for (std::size_t a = 0; a < dim_; ++a) {
    for (std::size_t b = 0; b < dim_; ++b) chi_h[a].add_product(chi_n[b], h(b, a));
  }
  psi_.assign(psi_n.begin(), psi_n.end());
  psi_coeff_.resize(dim_);
  conj_coeff_.resize(dim_);
  for (std::size_t a = 0; a < dim_; ++a) {
    GaussianInt dchi = chi[3][a] - chi[1][a];
    GaussianInt dpsi = psi[3][a] - psi[1][a];
    psi_coeff_[a] = (dchi.times_i() + chi_h[a]) * BigInt(2);
    conj_coeff_[a] = (dpsi.times_minus_i() + hpsi[a]) * BigInt(2);
  }
}

BigInt SiteActionFunctional::current(std::size_t dof, Component part) const {
  if (dof >= dim_) throw PreconditionViolation("dof out of range");
  const GaussianInt& z = psi_[dof];
  switch (part) {
    case Component::psi_real: return z.re();
    case Component::psi_imag: return z.im();
    case Component::conj_real: return z.re();
    case Component::conj_imag: return -z.im();
  }
  return 0;
}

GaussianInt SiteActionFunctional::doubled(std::size_t dof, Component part, const BigInt& value) const {
  const BigInt shift = value - current(dof, part);
  GaussianInt change = unit_for(part) * shift;
  const GaussianInt& coeff = varies_psi(part) ? psi_coeff_[dof] : conj_coeff_[dof];
  GaussianInt out = base_;
  out.add_product(coeff, change);
  return out;
}

VariationQuotient vary_action(const Trajectory& traj, const HermitianMatrix& h, const VariationSpec& spec) {
  const SiteActionFunctional local(traj, h, spec.site);
  VariationQuotient q = discrete_variation(
      [&](const BigInt& v) { return local.doubled(spec.dof, spec.part, v); }, local.current(spec.dof, spec.part),
      spec.delta);
  if (!q.zero_delta) q.denominator *= 2;  // undo the doubling
  return q;
}

std::vector<std::size_t> StationarityReport::violating_sites() const {
  std::vector<std::size_t> sites;
  for (const auto& v : violations) sites.push_back(v.site);
  std::sort(sites.begin(), sites.end());
  sites.erase(std::unique(sites.begin(), sites.end()), sites.end());
  return sites;
}

StationarityReport verify_stationarity(const Trajectory& traj, const HermitianMatrix& h,
                                       std::span<const long> deltas) {
  if (traj.size() < 3) throw PreconditionViolation("verify_stationarity: trajectory needs at least 3 slices");
  StationarityReport report;
  for (std::size_t n = 1; n < traj.last_index(); ++n) {
    const SiteActionFunctional local(traj, h, n);
    ++report.sites_checked;
    for (std::size_t a = 0; a < traj.dim(); ++a) {
      for (Component part : kAllComponents) {
        const BigInt f = local.current(a, part);
        auto g = [&](const BigInt& v) { return local.doubled(a, part, v); };
        std::optional<VariationQuotient> first;
        for (long d : deltas) {
          VariationQuotient q = discrete_variation(g, f, BigInt(d));
          if (q.zero_delta) continue;
          q.denominator *= 2;
          ++report.variations_checked;
          if (!q.is_zero()) report.violations.push_back({n, a, part, d, q});
          if (!first) {
            first = q;
          } else if (!same_value(*first, q)) {
            report.delta_independent = false;
          }
        }
      }
    }
  }
  return report;
}

}  // namespace hca
