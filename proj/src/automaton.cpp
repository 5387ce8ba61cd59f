#include "hca/automaton.hpp"

#include <string>

#include "hca/errors.hpp"

namespace hca {

namespace {

void require_dim(std::size_t got, std::size_t want, const char* what) {
  if (got != want) {
    throw DimensionMismatch(std::string(what) + ": dimension " + std::to_string(got) + ", expected " +
                            std::to_string(want));
  }
}

// base + sign * i * (H v)
GIVector shifted_by_ihv(const GIVector& base, const GIVector& v, const HermitianMatrix& h, bool plus) {
  require_dim(base.size(), h.dim(), "step");
  require_dim(v.size(), h.dim(), "step");
  GIVector out = base;
  const GIVector hv = apply(h, v);
  for (std::size_t a = 0; a < out.size(); ++a) {
    out[a] += plus ? hv[a].times_i() : hv[a].times_minus_i();
  }
  return out;
}

}  // namespace

Trajectory::Trajectory(std::vector<GIVector> states) : states_(std::move(states)) {
  if (states_.size() < 2) throw PreconditionViolation("trajectory needs at least two slices");
  if (states_.front().size() == 0) throw PreconditionViolation("trajectory dimension must be >= 1");
  for (std::size_t n = 1; n < states_.size(); ++n) require_dim(states_[n].size(), dim(), "trajectory slice");
}

Trajectory Trajectory::with_state(std::size_t n, GIVector v) const {
  if (n >= size()) throw PreconditionViolation("with_state: clock index out of range");
  require_dim(v.size(), dim(), "with_state");
  auto copy = states_;
  copy[n] = std::move(v);
  return Trajectory(std::move(copy));
}

GIVector step_forward(const GIVector& prev, const GIVector& curr, const HermitianMatrix& h) {
  return shifted_by_ihv(prev, curr, h, false);
}

GIVector step_backward(const GIVector& next, const GIVector& curr, const HermitianMatrix& h) {
  return shifted_by_ihv(next, curr, h, true);
}

Trajectory evolve(const GIVector& seed0, const GIVector& seed1, const HermitianMatrix& h, std::size_t steps) {
  require_dim(seed0.size(), h.dim(), "evolve seed0");
  require_dim(seed1.size(), h.dim(), "evolve seed1");
  std::vector<GIVector> states;
  states.reserve(steps + 2);
  states.push_back(seed0);
  states.push_back(seed1);
  for (std::size_t k = 0; k < steps; ++k) {
    const std::size_t n = states.size() - 1;
    states.push_back(step_forward(states[n - 1], states[n], h));
  }
  return Trajectory(std::move(states));
}

Trajectory evolve_backward(const GIVector& before_last, const GIVector& last, const HermitianMatrix& h,
                           std::size_t steps) {
  require_dim(before_last.size(), h.dim(), "evolve_backward");
  require_dim(last.size(), h.dim(), "evolve_backward");
  std::vector<GIVector> reversed;
  reversed.reserve(steps + 2);
  reversed.push_back(last);
  reversed.push_back(before_last);
  for (std::size_t k = 0; k < steps; ++k) {
    const std::size_t m = reversed.size() - 1;
    reversed.push_back(step_backward(reversed[m - 1], reversed[m], h));
  }
  return Trajectory(std::vector<GIVector>(reversed.rbegin(), reversed.rend()));
}

GIVector equation_residual(const Trajectory& traj, const HermitianMatrix& h, std::size_t n) {
  if (n == 0 || n >= traj.last_index()) {
    throw PreconditionViolation("equation_residual: site " + std::to_string(n) + " is not interior");
  }
  require_dim(traj.dim(), h.dim(), "equation_residual");
  GIVector r = traj[n + 1] - traj[n - 1];
  const GIVector hv = apply(h, traj[n]);
  for (std::size_t a = 0; a < r.size(); ++a) r[a] += hv[a].times_i();
  return r;
}

std::optional<std::size_t> first_equation_violation(const Trajectory& traj, const HermitianMatrix& h) {
  for (std::size_t n = 1; n < traj.last_index(); ++n) {
    if (!equation_residual(traj, h, n).is_zero()) return n;
  }
  return std::nullopt;
}

PhaseTrajectory evolve_phase_space(const IntVector& x0, const IntVector& p0, const IntVector& x1,
                                   const IntVector& p1, const SplitHamiltonian& split, std::size_t steps) {
  const IntMatrix& hs = split.symmetric;
  const IntMatrix& ha = split.antisymmetric;
  if (!hs.is_symmetric()) throw PreconditionViolation("evolve_phase_space: hS is not symmetric");
  if (!ha.is_antisymmetric()) throw PreconditionViolation("evolve_phase_space: hA is not antisymmetric");
  const std::size_t d = hs.dim();
  require_dim(ha.dim(), d, "evolve_phase_space hA");
  for (const IntVector* v : {&x0, &p0, &x1, &p1}) require_dim(v->size(), d, "evolve_phase_space seed");

  PhaseTrajectory out;
  out.xs = {x0, x1};
  out.ps = {p0, p1};
  out.xs.reserve(steps + 2);
  out.ps.reserve(steps + 2);
  for (std::size_t k = 0; k < steps; ++k) {
    const std::size_t n = out.xs.size() - 1;
    const IntVector& x = out.xs[n];
    const IntVector& p = out.ps[n];
    const IntVector hs_p = apply(hs, p);
    const IntVector ha_x = apply(ha, x);
    const IntVector hs_x = apply(hs, x);
    const IntVector ha_p = apply(ha, p);
    IntVector xn(d), pn(d);
    for (std::size_t a = 0; a < d; ++a) {
      xn[a] = out.xs[n - 1][a] + hs_p[a] + ha_x[a];
      pn[a] = out.ps[n - 1][a] - hs_x[a] + ha_p[a];
    }
    out.xs.push_back(std::move(xn));
    out.ps.push_back(std::move(pn));
  }
  return out;
}

PhaseTrajectory to_phase_space(const Trajectory& traj) {
  PhaseTrajectory out;
  for (const auto& psi : traj.states()) {
    IntVector x(psi.size()), p(psi.size());
    for (std::size_t a = 0; a < psi.size(); ++a) {
      x[a] = psi[a].re();
      p[a] = psi[a].im();
    }
    out.xs.push_back(std::move(x));
    out.ps.push_back(std::move(p));
  }
  return out;
}

Trajectory from_phase_space(const PhaseTrajectory& phase) {
  if (phase.xs.size() != phase.ps.size()) throw DimensionMismatch("from_phase_space: xs/ps length differ");
  std::vector<GIVector> states;
  for (std::size_t n = 0; n < phase.xs.size(); ++n) {
    require_dim(phase.ps[n].size(), phase.xs[n].size(), "from_phase_space");
    GIVector psi(phase.xs[n].size());
    for (std::size_t a = 0; a < psi.size(); ++a) psi[a] = GaussianInt(phase.xs[n][a], phase.ps[n][a]);
    states.push_back(std::move(psi));
  }
  return Trajectory(std::move(states));
}

}  // namespace hca
