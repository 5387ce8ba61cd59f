#pragma once

// Action functional and the integer-valued discrete variation.
//
// With psi and psi* treated as independent variables the Lagrangian at clock n is
//
//     L_n = (1/2i) (psi*_n . dot(psi)_n - dot(psi*)_n . psi_n) + psi*_n . H psi_n,
//
// a . b = sum_a a^a b^a without conjugation. Everything here works with 2 L_n,
// which is a Gaussian integer for arbitrary (independent) integer fields.
//
// The action of a finite trajectory sums L_n over interior sites 1..N-1; the end
// slices are fixed boundary data. Stationarity at an interior site n is probed on the
// terms of the action that contain site-n variables (L_{n-1}, L_n, L_{n+1}).

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "hca/automaton.hpp"

namespace hca {

/// Value of the action. Real for conjugate-consistent fields and self-adjoint H.
struct ActionValue {
  GaussianInt value;
  bool is_real() const { return value.is_real(); }
};

/// Sum of L_n over interior sites 1..N-1 with psi* = conj(psi). Rejects trajectories shorter than 3 slices.
ActionValue action_evaluate(const Trajectory& traj, const HermitianMatrix& h);

/// Twice the action sum over sites [first, last] for independent fields psi and psi_star.
/// Both fields must provide slices first-1 .. last+1.
GaussianInt doubled_action(std::span<const GIVector> psi, std::span<const GIVector> psi_star,
                           const HermitianMatrix& h, std::size_t first, std::size_t last);

/// Exact symmetric difference quotient numerator / denominator.
struct VariationQuotient {
  GaussianInt numerator;
  BigInt denominator{1};
  /// delta == 0: the variation is zero by convention; nothing was divided.
  bool zero_delta = false;

  bool is_zero() const { return numerator.is_zero(); }
  bool is_integral() const;
  /// Exact quotient; throws PreconditionViolation when it is not a Gaussian integer.
  GaussianInt value() const;
  std::string to_string() const;
};

/// Exact equality of two quotients as numbers.
bool same_value(const VariationQuotient& a, const VariationQuotient& b);

/// [g(f + delta) - g(f - delta)] / (2 delta); for delta == 0 the result is zero and flagged.
/// g maps an integer to a GaussianInt or BigInt.
template <class G>
VariationQuotient discrete_variation(G&& g, const BigInt& f, const BigInt& delta) {
  if (sgn(delta) == 0) return VariationQuotient{GaussianInt{}, BigInt(1), true};
  BigInt up = f + delta;
  BigInt down = f - delta;
  GaussianInt num = GaussianInt(g(up)) - GaussianInt(g(down));
  BigInt den = 2 * delta;
  return VariationQuotient{std::move(num), std::move(den), false};
}

/// Which real integer component of an independent variable is varied.
enum class Component { psi_real, psi_imag, conj_real, conj_imag };

inline constexpr std::array<Component, 4> kAllComponents = {Component::psi_real, Component::psi_imag,
                                                            Component::conj_real, Component::conj_imag};

std::string to_string(Component c);

struct VariationSpec {
  std::size_t site = 0;
  std::size_t dof = 0;
  Component part = Component::conj_real;
  BigInt delta{1};
};

/// The action terms that depend on the variables of one interior site, as an exact function
/// of one real component. Slices beyond the trajectory ends enter only as zero padding, which
/// never multiplies a site-n variable, so differences are independent of that choice.
class SiteActionFunctional {
 public:
  SiteActionFunctional(const Trajectory& traj, const HermitianMatrix& h, std::size_t site);

  std::size_t site() const { return site_; }
  std::size_t dim() const { return dim_; }

  /// Present value of the component.
  BigInt current(std::size_t dof, Component part) const;
  /// Twice the local action with the component replaced by value.
  GaussianInt doubled(std::size_t dof, Component part, const BigInt& value) const;

 private:
  std::size_t site_;
  std::size_t dim_;
  GaussianInt base_;
  std::vector<GaussianInt> psi_;         // site-n psi
  std::vector<GaussianInt> psi_coeff_;   // d(2L)/d(psi^a)
  std::vector<GaussianInt> conj_coeff_;  // d(2L)/d(psi*^a)
};

/// Discrete variation of the action with respect to one component (quotient of the undoubled action).
VariationQuotient vary_action(const Trajectory& traj, const HermitianMatrix& h, const VariationSpec& spec);

struct StationarityViolation {
  std::size_t site;
  std::size_t dof;
  Component part;
  long delta;
  VariationQuotient variation;
};

struct StationarityReport {
  std::size_t sites_checked = 0;
  std::size_t variations_checked = 0;
  std::vector<StationarityViolation> violations;
  /// Every (site, dof, component) gave the same quotient for all deltas.
  bool delta_independent = true;

  bool stationary() const { return violations.empty(); }
  /// Distinct violating sites in increasing order.
  std::vector<std::size_t> violating_sites() const;
};

inline constexpr std::array<long, 3> kDefaultDeltas = {1, 2, 3};

/// Varies every component of every dof at every interior site by each delta.
StationarityReport verify_stationarity(const Trajectory& traj, const HermitianMatrix& h,
                                       std::span<const long> deltas = kDefaultDeltas);

}  // namespace hca
