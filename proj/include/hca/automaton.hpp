#pragma once

// Single Hamiltonian cellular automaton.
//
// The state is a clock-indexed sequence of Gaussian-integer vectors psi_n.
// With the symmetric clock difference  dot(O)_n := O_{n+1} - O_{n-1},
// the equation of motion is  dot(psi)_n = -i H psi_n, i.e. the exact
// two-step recurrence
//
//     psi_{n+1} = psi_{n-1} - i H psi_n,
//
// which is reversible:  psi_{n-1} = psi_{n+1} + i H psi_n.
// Two initial slices (psi_0, psi_1) are always explicit inputs.

#include <cstddef>
#include <optional>
#include <vector>

#include "hca/matrix.hpp"

namespace hca {

class Trajectory {
 public:
  /// Requires at least two states of a common dimension >= 1.
  explicit Trajectory(std::vector<GIVector> states);

  std::size_t dim() const { return states_.front().size(); }
  /// Number of stored slices, N + 1.
  std::size_t size() const { return states_.size(); }
  /// Largest clock index N.
  std::size_t last_index() const { return states_.size() - 1; }

  const GIVector& operator[](std::size_t n) const { return states_[n]; }
  const std::vector<GIVector>& states() const { return states_; }

  /// Copy with slice n replaced.
  Trajectory with_state(std::size_t n, GIVector v) const;

  friend bool operator==(const Trajectory& a, const Trajectory& b) = default;

 private:
  std::vector<GIVector> states_;
};

/// psi_{n+1} = psi_{n-1} - i H psi_n
GIVector step_forward(const GIVector& prev, const GIVector& curr, const HermitianMatrix& h);
/// psi_{n-1} = psi_{n+1} + i H psi_n
GIVector step_backward(const GIVector& next, const GIVector& curr, const HermitianMatrix& h);

/// Trajectory psi_0 .. psi_{steps+1} seeded by (seed0, seed1).
Trajectory evolve(const GIVector& seed0, const GIVector& seed1, const HermitianMatrix& h, std::size_t steps);

/// Runs the recurrence backwards from the final pair (before_last, last):
/// returns psi_0 .. psi_{steps+1} with psi_steps = before_last and psi_{steps+1} = last.
Trajectory evolve_backward(const GIVector& before_last, const GIVector& last, const HermitianMatrix& h,
                           std::size_t steps);

/// psi_{n+1} - psi_{n-1} + i H psi_n at interior site n; zero iff the equation of motion holds there.
GIVector equation_residual(const Trajectory& traj, const HermitianMatrix& h, std::size_t n);

/// First interior site whose equation of motion fails, if any.
std::optional<std::size_t> first_equation_violation(const Trajectory& traj, const HermitianMatrix& h);

/// psi_n = x_n + i p_n with x, p real-integer vectors.
struct PhaseTrajectory {
  std::vector<IntVector> xs;
  std::vector<IntVector> ps;

  std::size_t size() const { return xs.size(); }
  friend bool operator==(const PhaseTrajectory& a, const PhaseTrajectory& b) = default;
};

/// Integer oscillator-network form of the recurrence with H = hS + i hA:
///   x_{n+1} = x_{n-1} + hS p_n + hA x_n
///   p_{n+1} = p_{n-1} - hS x_n + hA p_n
/// Rejects a symmetric part that is not symmetric or an antisymmetric part that is not antisymmetric.
PhaseTrajectory evolve_phase_space(const IntVector& x0, const IntVector& p0, const IntVector& x1,
                                   const IntVector& p1, const SplitHamiltonian& split, std::size_t steps);

PhaseTrajectory to_phase_space(const Trajectory& traj);
Trajectory from_phase_space(const PhaseTrajectory& phase);

}  // namespace hca
