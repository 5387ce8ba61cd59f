#pragma once

// Continuum image of a trajectory.
//
// Samples psi_n at times t = n l are the Shannon samples of a function bandlimited to
// [-pi/l, pi/l]:
//     psi(t) = sum_n psi_n sinc(pi (t - n l) / l).
// Finite data forces a truncated sum over |n - round(t/l)| <= W; at sample times every
// other kernel term is an exact zero, so psi(n l) = psi_n for any W.
//
// Units: running the recurrence with the matrix l*H approaches i d/dt psi = (H/2) psi as
// l -> 0 (the clock difference spans two steps). A mode of eigenvalue E advances by
// theta = arcsin(E l / 2) per step against E l / 2 in the continuum.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hca/automaton.hpp"
#include "hca/literal.hpp"

namespace hca {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

/// Physical time per clock step; band limit pi / l.
class DiscretenessScale {
 public:
  explicit DiscretenessScale(double l);
  double value() const { return l_; }
  double band_limit() const;

 private:
  double l_;
};

/// Floating samples on consecutive clocks first_clock, first_clock + 1, ...
struct ContinuumSignal {
  std::vector<ComplexVector> samples;
  std::int64_t first_clock = 0;
  DiscretenessScale scale{1.0};
  std::size_t window = 32;

  static ContinuumSignal from_trajectory(const Trajectory& traj, DiscretenessScale scale, std::size_t window);

  std::size_t dim() const { return samples.empty() ? 0 : samples.front().size(); }
  std::int64_t last_clock() const { return first_clock + static_cast<std::int64_t>(samples.size()) - 1; }
  const ComplexVector& at_clock(std::int64_t n) const { return samples[static_cast<std::size_t>(n - first_clock)]; }
};

ComplexVector to_complex(const GIVector& v);
Eigen::MatrixXcd to_complex_matrix(const HermitianMatrix& h);

struct Reconstruction {
  ComplexVector values;
  /// t lies outside [first_clock l, last_clock l].
  bool extrapolated = false;
  /// The window around t reaches past the stored samples.
  bool window_clipped = false;
};

Reconstruction reconstruct(const ContinuumSignal& signal, double t);
Reconstruction reconstruct(const Trajectory& traj, DiscretenessScale scale, double t, std::size_t window);

/// d^2/dt^2 of the truncated reconstruction, from the analytic second derivative of the kernel.
ComplexVector reconstruct_second_derivative(const ContinuumSignal& signal, double t);

struct ShiftMapResidual {
  /// max_a |psi^a((n+1) l) - psi^a_{n+1}|
  double forward = 0;
  /// max_a |psi^a((n-1) l) - psi^a_{n-1}|
  double backward = 0;
  double max_abs() const { return forward > backward ? forward : backward; }
};

/// Checks psi_{n+-1} against the reconstruction at t = (n +- 1) l for interior n.
ShiftMapResidual shift_map_check(const Trajectory& traj, DiscretenessScale scale, std::size_t n, std::size_t window);

enum class QTruncation { exact_cosh, order_l2 };

/// exact_cosh: Re psi*(t) [psi(t + l) + psi(t - l)] / 2
/// order_l2:   |psi(t)|^2 + (l^2 / 2) Re psi*(t) psi''(t)
double continuum_q(const ContinuumSignal& signal, double t, QTruncation mode);

struct DispersionPoint {
  double energy = 0;
  /// Phase advance per step; for growing modes +-pi/2 (the phase of the growing root).
  double theta = 0;
  bool oscillatory = true;
  /// |lambda| of the dominant root of lambda - 1/lambda = -i E; 1 for oscillatory modes.
  double growth_factor = 1;
};

/// theta = arcsin(E/2) for |E| <= 2, otherwise a flagged growing mode.
DispersionPoint dispersion_theta(double energy);

/// exp(-i H t) psi0 for a Hermitian matrix of order <= 64, by eigendecomposition.
/// Throws ConvergenceFailure if the eigensolver fails or the result is not norm-preserving to 1e-10.
ComplexVector continuum_oracle(const HermitianMatrix& h, const ComplexVector& psi0, double t);
ComplexVector continuum_oracle(const Eigen::MatrixXcd& h, const ComplexVector& psi0, double t);

/// Floating two-step recurrence psi_{n+1} = psi_{n-1} - i h psi_n; returns psi_0 .. psi_{steps+1}.
std::vector<ComplexVector> evolve_relaxed(const Eigen::MatrixXcd& h, const ComplexVector& psi0,
                                          const ComplexVector& psi1, std::size_t steps);

struct EigenmodePhase {
  double energy = 0;
  double predicted_theta = 0;
  double empirical_theta = 0;
  bool oscillatory = true;
};

/// Seeds each eigenvector v of H with (v, e^{-i theta} v), runs the floating recurrence and
/// measures the mean per-step phase advance. Growing modes are reported but not run.
std::vector<EigenmodePhase> dispersion_check(const HermitianMatrix& h, std::size_t steps);

enum class SeedRule {
  /// psi_1 = exp(-i (H/2) l) psi_0 from the continuum oracle.
  oracle_slice,
  /// psi_1 = sum_k c_k e^{-i theta_k} v_k: each eigencomponent seeded on its exact discrete mode.
  exact_mode,
};

struct ConvergenceOptions {
  double time = 1.0;
  std::vector<double> scales;
  std::size_t window = 32;
  SeedRule seed_rule = SeedRule::oracle_slice;
};

struct ScalePoint {
  double l = 0;
  std::size_t steps = 0;
  bool included = false;
  std::string note;
  /// || psi_CA(T) - exp(-i (H/2) T) psi0 ||_2
  double error = 0;
  /// |arg <oracle, reconstruction>| / T
  double phase_error_rate = 0;
};

struct ConvergenceReport {
  std::vector<ScalePoint> points;
  /// Least-squares slope of log(error) against log(l) over included points with error > 0.
  std::optional<double> fitted_order;
};

ConvergenceReport convergence_study(const HermitianMatrix& h, const ComplexVector& psi0,
                                    const ConvergenceOptions& options);

/// Slope of log(y) against log(x); nullopt with fewer than two usable points.
std::optional<double> fit_power_law(std::span<const double> xs, std::span<const double> ys);

std::string to_csv(const ConvergenceReport& report);
json to_json(const ConvergenceReport& report);

/// t,alpha,re,im rows of the reconstruction on a time grid.
std::string reconstruction_csv(const ContinuumSignal& signal, std::span<const double> times);

/// Shortest decimal form that round-trips ("%.17g").
std::string format_double(double v);

}  // namespace hca
