#pragma once

// Discrete conservation laws.
//
// For G commuting with H, solutions of the recurrence satisfy
//     psi*_n G dot(psi)_n + dot(psi*)_n G psi_n = 0
// at every interior n, equivalently the two-point correlation
//     q_G(n) = psi*_n G psi_{n-1} + psi*_{n-1} G psi_n
// is the same for every n. G = 1 gives the norm-like constraint q_1 = 2 Re psi*_n psi_{n-1}.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hca/automaton.hpp"
#include "hca/literal.hpp"

namespace hca {

/// q_G(n) for 1 <= n <= N.
GaussianInt two_point_invariant(const Trajectory& traj, const HermitianMatrix& g, std::size_t n);

/// q_1(n) = 2 Re psi*_n psi_{n-1}, 1 <= n <= N.
BigInt norm_like_invariant(const Trajectory& traj, std::size_t n);

/// (1/2) Re psi*_n (psi_{n+1} + psi_{n-1}) at interior n, exact.
HalfInteger symmetrized_q(const Trajectory& traj, std::size_t n);

/// psi*_n G dot(psi)_n + dot(psi*)_n G psi_n at interior n.
GaussianInt conservation_bilinear(const Trajectory& traj, const HermitianMatrix& g, std::size_t n);

struct LabeledObservable {
  std::string label;
  HermitianMatrix matrix;
};

/// {1, H, H^2, H^3}: polynomials in H always commute with H.
std::vector<LabeledObservable> commutant_basis(const HermitianMatrix& h);

struct ObservableAudit {
  std::string label;
  bool commutes = false;
  /// q_G takes exactly one value along the trajectory.
  bool conserved = false;
  /// The conservation bilinear is zero at every interior site.
  bool bilinear_vanishes = false;
  /// q_G(n) for n = 1..N.
  std::vector<GaussianInt> values_by_n;
  /// q_G(n) - q_G(1) for n = 1..N; all zero when conserved.
  std::vector<GaussianInt> drift;
  /// First n with q_G(n) != q_G(1).
  std::optional<std::size_t> first_drift_site;
};

struct AuditReport {
  bool trajectory_is_solution = false;
  std::optional<std::size_t> first_equation_violation;
  /// q_1 == 0: adjacent slices orthogonal. Permitted, but flagged.
  bool norm_like_zero = false;
  std::vector<ObservableAudit> observables;

  /// Every commuting observable is conserved with vanishing bilinear.
  bool commuting_all_conserved() const;
};

AuditReport audit_conservation(const Trajectory& traj, const HermitianMatrix& h,
                               std::span<const LabeledObservable> observables);

json to_json(const AuditReport& report);
/// label,n,re,im rows of values_by_n.
std::string values_csv(const AuditReport& report);

}  // namespace hca
