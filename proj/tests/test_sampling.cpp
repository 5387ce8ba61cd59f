#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "hca/conservation.hpp"
#include "hca/errors.hpp"
#include "hca/sampling.hpp"
#include "support.hpp"

using namespace hca;
using hca::test::gi;

namespace {

constexpr double kPi = std::numbers::pi;

double rel_error(const ComplexVector& got, const ComplexVector& want) {
  double d = 0, n = 0;
  for (std::size_t a = 0; a < got.size(); ++a) {
    d += std::norm(got[a] - want[a]);
    n += std::norm(want[a]);
  }
  return n > 0 ? std::sqrt(d / n) : std::sqrt(d);
}

Trajectory spike(std::size_t at, std::size_t size) {
  std::vector<GIVector> s(size, GIVector(1));
  s[at][0] = gi(1);
  return Trajectory(s);
}

// Discrete mode of H = [[E]] at scale l, generated by the floating recurrence on clocks -w..w.
ContinuumSignal tone(double energy, double l, std::size_t w) {
  const double theta = std::asin(energy * l / 2);
  const double start = static_cast<double>(w);
  const ComplexVector s0{std::polar(1.0, theta * start)};
  const ComplexVector s1{std::polar(1.0, theta * (start - 1))};
  Eigen::MatrixXcd h(1, 1);
  h(0, 0) = energy * l;
  ContinuumSignal sig{evolve_relaxed(h, s0, s1, 2 * w - 1), -static_cast<std::int64_t>(w), DiscretenessScale(l), w};
  return sig;
}

}  // namespace

TEST(Scale, RejectsNonPositive) {
  EXPECT_THROW(DiscretenessScale(0.0), PreconditionViolation);
  EXPECT_THROW(DiscretenessScale(-1.0), PreconditionViolation);
  EXPECT_DOUBLE_EQ(DiscretenessScale(0.5).band_limit(), 2 * kPi);
}

TEST(Reconstruct, SingleSampleKernelZeros) {
  const Trajectory t = spike(0, 4);
  const DiscretenessScale l(0.3);
  EXPECT_EQ(reconstruct(t, l, 0.0, 5).values[0], Complex(1.0, 0.0));
  EXPECT_EQ(reconstruct(t, l, 0.3, 5).values[0], Complex(0.0, 0.0));
}

TEST(Reconstruct, MidpointOfTwoSamples) {
  std::vector<GIVector> s(60, GIVector(1));
  s[20][0] = gi(1);
  s[21][0] = gi(1);
  const DiscretenessScale l(0.5);
  const Reconstruction r = reconstruct(Trajectory(s), l, 20.5 * 0.5, 30);
  EXPECT_NEAR(r.values[0].real(), 4 / kPi, 1e-12);
  EXPECT_NEAR(r.values[0].imag(), 0.0, 1e-15);
}

TEST(Reconstruct, SampleFidelityForAnyWindow) {
  Rng rng(83);
  for (int k = 0; k < 20; ++k) {
    const auto inst = test::random_instance(rng);
    const Trajectory t = evolve(inst.s0, inst.s1, inst.h, 30);
    const DiscretenessScale l(0.1 + 0.05 * k);
    for (std::size_t w : {1u, 2u, 7u, 64u}) {
      const ContinuumSignal sig = ContinuumSignal::from_trajectory(t, l, w);
      for (std::size_t n = 0; n < t.size(); ++n) {
        ASSERT_LE(rel_error(reconstruct(sig, static_cast<double>(n) * l.value()).values, sig.samples[n]), 1e-12);
      }
    }
  }
}

TEST(Reconstruct, FlagsExtrapolationAndClipping) {
  const ContinuumSignal sig = ContinuumSignal::from_trajectory(spike(2, 10), DiscretenessScale(1.0), 3);
  EXPECT_FALSE(reconstruct(sig, 5.0).extrapolated);
  EXPECT_FALSE(reconstruct(sig, 5.0).window_clipped);
  EXPECT_TRUE(reconstruct(sig, 1.0).window_clipped);
  EXPECT_TRUE(reconstruct(sig, 12.0).extrapolated);
  EXPECT_TRUE(reconstruct(sig, -0.5).extrapolated);
}

TEST(Reconstruct, ZeroWindowRejected) {
  EXPECT_THROW(reconstruct(spike(0, 3), DiscretenessScale(1.0), 0.0, 0), PreconditionViolation);
}

TEST(ShiftMap, ResidualOnSolutions) {
  Rng rng(89);
  for (int k = 0; k < 10; ++k) {
    const auto inst = test::random_instance(rng);
    const Trajectory t = evolve(inst.s0, inst.s1, inst.h, 20);
    for (std::size_t n = 1; n < t.last_index(); ++n) {
      const ShiftMapResidual r = shift_map_check(t, DiscretenessScale(0.25), n, 8);
      double scale = 1;
      for (const auto& s : t.states()) {
        for (const auto& z : s) scale = std::max(scale, std::abs(to_complex(GIVector{z})[0]));
      }
      ASSERT_LE(r.max_abs(), 1e-12 * scale);
    }
  }
}

TEST(ShiftMap, ConstantAndSpike) {
  const Trajectory c = evolve(GIVector{gi(3, -2)}, GIVector{gi(3, -2)}, HermitianMatrix::zero(1), 8);
  EXPECT_LE(shift_map_check(c, DiscretenessScale(1.0), 4, 3).max_abs(), 1e-15);
  const ShiftMapResidual r = shift_map_check(spike(4, 9), DiscretenessScale(1.0), 4, 5);
  EXPECT_EQ(r.forward, 0.0);
  EXPECT_EQ(r.backward, 0.0);
  EXPECT_THROW(shift_map_check(c, DiscretenessScale(1.0), 0, 3), PreconditionViolation);
}

TEST(ContinuumQ, ExactCoshMatchesDiscreteAtSamples) {
  Rng rng(97);
  for (int k = 0; k < 50; ++k) {
    const auto inst = test::random_instance(rng);
    const Trajectory t = evolve(inst.s0, inst.s1, inst.h, 25);
    const ContinuumSignal sig = ContinuumSignal::from_trajectory(t, DiscretenessScale(0.2), 16);
    for (std::size_t n = 1; n < t.last_index(); ++n) {
      double mag = 0;
      for (std::size_t a = 0; a < t.dim(); ++a) {
        mag += std::abs(sig.samples[n][a]) * (std::abs(sig.samples[n + 1][a]) + std::abs(sig.samples[n - 1][a])) / 2;
      }
      const double got = continuum_q(sig, 0.2 * static_cast<double>(n), QTruncation::exact_cosh);
      ASSERT_LE(std::abs(got - to_double(symmetrized_q(t, n))), 1e-10 * std::max(1.0, mag));
    }
  }
}

TEST(ContinuumQ, ZeroSignal) {
  const ContinuumSignal sig = ContinuumSignal::from_trajectory(Trajectory({GIVector(2), GIVector(2), GIVector(2)}),
                                                               DiscretenessScale(1.0), 4);
  EXPECT_EQ(continuum_q(sig, 1.0, QTruncation::exact_cosh), 0.0);
  EXPECT_EQ(continuum_q(sig, 0.7, QTruncation::order_l2), 0.0);
}

TEST(ContinuumQ, SecondDerivativeOfToneAtSample) {
  const double l = 0.5;
  const ContinuumSignal sig = tone(1.0, l, 20000);
  const double omega = std::asin(l / 2) / l;
  const ComplexVector dd = reconstruct_second_derivative(sig, 0.0);
  EXPECT_NEAR(dd[0].real(), -omega * omega, 1e-7);
  EXPECT_NEAR(dd[0].imag(), 0.0, 1e-7);
}

TEST(ContinuumQ, TruncationGapScalesAsFourthPower) {
  const std::vector<double> ls{1.0, 0.5, 0.25, 0.1};
  std::vector<double> gaps;
  for (double l : ls) {
    const ContinuumSignal sig = tone(1.0, l, 20000);
    gaps.push_back(std::abs(continuum_q(sig, 0.0, QTruncation::exact_cosh) - continuum_q(sig, 0.0, QTruncation::order_l2)));
  }
  const auto slope = fit_power_law(ls, gaps);
  ASSERT_TRUE(slope.has_value());
  EXPECT_NEAR(*slope, 4.0, 0.3);
}

TEST(Dispersion, Examples) {
  EXPECT_DOUBLE_EQ(dispersion_theta(2.0).theta, kPi / 2);
  EXPECT_EQ(dispersion_theta(0.0).theta, 0.0);
  const DispersionPoint one = dispersion_theta(1.0);
  EXPECT_NEAR(one.theta, kPi / 6, 1e-15);
  EXPECT_NEAR(one.theta - 0.5, 1.0 / 48, 0.003);
}

TEST(Dispersion, GrowingModeFlagged) {
  const DispersionPoint p = dispersion_theta(3.0);
  EXPECT_FALSE(p.oscillatory);
  const double mu = p.growth_factor;
  EXPECT_NEAR(mu, (3 + std::sqrt(5.0)) / 2, 1e-14);
  const Complex lambda(0, -mu);
  EXPECT_NEAR(std::abs(lambda - 1.0 / lambda - Complex(0, -3)), 0.0, 1e-14);
}

TEST(Dispersion, PeriodFourIntegerOrbitMatches) {
  const Trajectory t = evolve(GIVector{1}, GIVector{gi(0, -1)}, HermitianMatrix{{2}}, 8);
  const Complex step = std::exp(Complex(0, -dispersion_theta(2.0).theta));
  for (std::size_t n = 0; n + 1 < t.size(); ++n) {
    const Complex a = to_complex(t[n])[0], b = to_complex(t[n + 1])[0];
    EXPECT_NEAR(std::abs(b - step * a), 0.0, 1e-15);
  }
}

TEST(Dispersion, EigenmodePhasesMatchArcsin) {
  const std::vector<HermitianMatrix> hs{test::pauli_x(), HermitianMatrix{{1, 1}, {1, 1}},
                                        HermitianMatrix{{0, 1, 0}, {1, 0, 1}, {0, 1, 0}}, HermitianMatrix{{2}},
                                        HermitianMatrix{{0, gi(0, 1)}, {gi(0, -1), 1}}};
  for (const auto& h : hs) {
    for (const auto& m : dispersion_check(h, 1000)) {
      ASSERT_TRUE(m.oscillatory);
      EXPECT_NEAR(m.empirical_theta, std::asin(m.energy / 2), 1e-9) << "E = " << m.energy;
    }
  }
  const auto grow = dispersion_check(HermitianMatrix{{3}}, 10);
  EXPECT_FALSE(grow[0].oscillatory);
}

TEST(Oracle, IdentityAtZeroTime) {
  const ComplexVector psi{Complex(1, 2), Complex(-3, 0.5)};
  EXPECT_EQ(continuum_oracle(HermitianMatrix{{1, gi(0, 2)}, {gi(0, -2), 0}}, psi, 0.0), psi);
}

TEST(Oracle, PauliXQuarterTurn) {
  const ComplexVector out = continuum_oracle(test::pauli_x(), {Complex(1, 0), Complex(0, 0)}, kPi / 2);
  EXPECT_NEAR(std::abs(out[0]), 0.0, 1e-10);
  EXPECT_NEAR(std::abs(out[1] - Complex(0, -1)), 0.0, 1e-10);
}

TEST(Oracle, Unitary) {
  Rng rng(101);
  std::uniform_real_distribution<double> u(-5, 5);
  for (int k = 0; k < 50; ++k) {
    const auto inst = test::random_instance(rng);
    const ComplexVector psi = to_complex(inst.s0);
    const ComplexVector out = continuum_oracle(inst.h, psi, u(rng));
    double a = 0, b = 0;
    for (std::size_t i = 0; i < psi.size(); ++i) {
      a += std::norm(psi[i]);
      b += std::norm(out[i]);
    }
    ASSERT_NEAR(std::sqrt(a), std::sqrt(b), 1e-10 * std::max(1.0, std::sqrt(a)));
  }
}

TEST(Oracle, RejectsLargeDimension) {
  EXPECT_THROW(continuum_oracle(HermitianMatrix::identity(65), ComplexVector(65), 1.0), PreconditionViolation);
}

TEST(Convergence, ZeroTimeHasZeroError) {
  ConvergenceOptions opt{0.0, {0.4, 0.2, 0.1}, 16, SeedRule::oracle_slice};
  const ConvergenceReport r = convergence_study(test::pauli_x(), {Complex(1, 0), Complex(0, 1)}, opt);
  for (const auto& p : r.points) EXPECT_EQ(p.error, 0.0);
  EXPECT_FALSE(r.fitted_order.has_value());
}

TEST(Convergence, SecondOrderOnTwoLevelSystem) {
  ConvergenceOptions opt{2.0, {0.4, 0.2, 0.1, 0.05}, 32, SeedRule::oracle_slice};
  const ConvergenceReport r =
      convergence_study(HermitianMatrix{{1, gi(0, -1)}, {gi(0, 1), -1}}, {Complex(1, 0), Complex(0, 0)}, opt);
  ASSERT_TRUE(r.fitted_order.has_value());
  EXPECT_NEAR(*r.fitted_order, 2.0, 0.3);
  EXPECT_EQ(to_csv(r).substr(0, 21), "l,error,fitted_order\n");
}

TEST(Convergence, SingleModePhaseErrorRate) {
  const double energy = 1.0;
  ConvergenceOptions opt{2.0, {0.4, 0.2, 0.1}, 16, SeedRule::exact_mode};
  const ConvergenceReport r = convergence_study(HermitianMatrix{{1}}, {Complex(1, 0)}, opt);
  for (const auto& p : r.points) {
    const double predicted = std::abs(std::asin(energy * p.l / 2) / p.l - energy / 2);
    EXPECT_NEAR(p.phase_error_rate, predicted, 1e-9) << "l = " << p.l;
  }
}

TEST(Convergence, GrowingScaleExcluded) {
  ConvergenceOptions opt{2.0, {1.0, 0.5, 0.25}, 16, SeedRule::oracle_slice};
  const ConvergenceReport r = convergence_study(HermitianMatrix{{3}}, {Complex(1, 0)}, opt);
  EXPECT_FALSE(r.points[0].included);
  EXPECT_FALSE(r.points[0].note.empty());
  EXPECT_TRUE(r.points[1].included);
}

TEST(PowerLaw, FitsExactSlope) {
  const std::vector<double> xs{1, 2, 4, 8}, ys{3, 12, 48, 192};
  EXPECT_NEAR(*fit_power_law(xs, ys), 2.0, 1e-12);
  const std::vector<double> one{1}, y1{1};
  EXPECT_FALSE(fit_power_law(one, y1).has_value());
}

TEST(Dispersion, GrowingNeighbourDoesNotLeak) {
  const auto modes = dispersion_check(HermitianMatrix{{1, 0}, {0, 3}}, 300);
  ASSERT_EQ(modes.size(), 2u);
  EXPECT_TRUE(modes[0].oscillatory);
  EXPECT_FALSE(modes[1].oscillatory);
  EXPECT_LE(std::abs(modes[0].empirical_theta - std::asin(0.5)), 1e-9);
}
