#include <gtest/gtest.h>

#include <set>
#include <sstream>

#include "hca/action.hpp"
#include "hca/automaton.hpp"
#include "hca/errors.hpp"
#include "hca/trajectory_io.hpp"
#include "support.hpp"

using namespace hca;
using hca::test::gi;

namespace {

Trajectory period4(std::size_t steps) { return evolve(GIVector{1}, GIVector{gi(0, -1)}, HermitianMatrix{{2}}, steps); }

// Independent oracle: twice the action of the zero-padded trajectory, with one real component
// of psi or psi* shifted by d at (site, dof).
GaussianInt padded_doubled_action(const Trajectory& traj, const HermitianMatrix& h, std::size_t site, std::size_t dof,
                                  Component part, long d) {
  std::vector<GIVector> psi{GIVector(traj.dim())};
  for (const auto& s : traj.states()) psi.push_back(s);
  psi.push_back(GIVector(traj.dim()));
  std::vector<GIVector> star;
  for (const auto& s : psi) star.push_back(s.conj());
  GaussianInt& target = (part == Component::psi_real || part == Component::psi_imag) ? psi[site + 1][dof]
                                                                                       : star[site + 1][dof];
  target += (part == Component::psi_real || part == Component::conj_real) ? gi(d) : gi(0, d);
  return doubled_action(psi, star, h, 1, traj.size());
}

}  // namespace

TEST(StepForward, PauliX) {
  EXPECT_EQ(step_forward(GIVector{1, 0}, GIVector{1, 0}, test::pauli_x()), (GIVector{1, gi(0, -1)}));
}

TEST(StepForward, ZeroHamiltonianHops) {
  const GIVector a{gi(3, 1), gi(-2)}, b{gi(5), gi(0, 4)};
  EXPECT_EQ(step_forward(a, b, HermitianMatrix::zero(2)), a);
}

TEST(StepForward, DimensionMismatch) {
  EXPECT_THROW(step_forward(GIVector{1}, GIVector{1, 0}, test::pauli_x()), DimensionMismatch);
}

TEST(StepBackward, InvertsPauliXStep) {
  EXPECT_EQ(step_backward(GIVector{1, gi(0, -1)}, GIVector{1, 0}, test::pauli_x()), (GIVector{1, 0}));
}

TEST(StepBackward, ZeroHamiltonian) {
  const GIVector a{gi(3, 1)}, b{gi(5)};
  EXPECT_EQ(step_backward(a, b, HermitianMatrix::zero(1)), a);
}

TEST(StepBackward, ReversibleOnRandomInstances) {
  Rng rng(101);
  for (int k = 0; k < 1000; ++k) {
    const auto inst = test::random_instance(rng);
    const GIVector next = step_forward(inst.s0, inst.s1, inst.h);
    ASSERT_EQ(step_backward(next, inst.s1, inst.h), inst.s0);
  }
}

TEST(StepBackward, HundredStepRoundTrip) {
  Rng rng(5);
  const auto inst = test::random_instance(rng);
  const Trajectory fwd = evolve(inst.s0, inst.s1, inst.h, 100);
  const Trajectory back = evolve_backward(fwd[100], fwd[101], inst.h, 100);
  EXPECT_EQ(back, fwd);
}

TEST(Evolve, PeriodFourOrbit) {
  const Trajectory t = period4(6);
  const std::vector<GaussianInt> want{gi(1), gi(0, -1), gi(-1), gi(0, 1), gi(1), gi(0, -1), gi(-1), gi(0, 1)};
  ASSERT_EQ(t.size(), want.size());
  for (std::size_t n = 0; n < want.size(); ++n) EXPECT_EQ(t[n][0], want[n]) << n;
}

TEST(Evolve, ZeroStepsKeepsSeeds) {
  const Trajectory t = evolve(GIVector{1, 2}, GIVector{3, 4}, test::pauli_x(), 0);
  ASSERT_EQ(t.size(), 2u);
  EXPECT_EQ(t[1], (GIVector{3, 4}));
}

TEST(Evolve, ZeroHamiltonianAlternates) {
  const GIVector a{gi(1, 1)}, b{gi(-2)};
  const Trajectory t = evolve(a, b, HermitianMatrix::zero(1), 9);
  for (std::size_t n = 0; n < t.size(); ++n) EXPECT_EQ(t[n], n % 2 ? b : a);
}

TEST(Evolve, LinearInSeeds) {
  Rng rng(17);
  for (int k = 0; k < 50; ++k) {
    const auto u = test::random_instance(rng);
    const GIVector t0 = random_vector(rng, u.h.dim(), 3), t1 = random_vector(rng, u.h.dim(), 3);
    const GaussianInt a = random_gaussian(rng, 4), b = random_gaussian(rng, 4);
    const Trajectory x = evolve(u.s0, u.s1, u.h, 60), y = evolve(t0, t1, u.h, 60);
    const Trajectory z = evolve(a * u.s0 + b * t0, a * u.s1 + b * t1, u.h, 60);
    for (std::size_t n = 0; n < z.size(); ++n) ASSERT_EQ(z[n], a * x[n] + b * y[n]);
  }
}

TEST(Trajectory, RejectsShortOrRagged) {
  EXPECT_THROW(Trajectory({GIVector{1}}), PreconditionViolation);
  EXPECT_THROW(Trajectory({GIVector{1}, GIVector{1, 2}}), DimensionMismatch);
}

TEST(PhaseSpace, PeriodFourSplit) {
  const SplitHamiltonian s{IntMatrix{{2}}, IntMatrix{{0}}};
  const PhaseTrajectory p = evolve_phase_space({1}, {0}, {0}, {-1}, s, 6);
  EXPECT_EQ(from_phase_space(p), period4(6));
}

TEST(PhaseSpace, ZeroSplitFreezes) {
  const SplitHamiltonian s{IntMatrix(2), IntMatrix(2)};
  const PhaseTrajectory p = evolve_phase_space({1, 2}, {3, 4}, {5, 6}, {7, 8}, s, 5);
  EXPECT_EQ(p.xs[4], (IntVector{1, 2}));
  EXPECT_EQ(p.ps[5], (IntVector{7, 8}));
}

TEST(PhaseSpace, RejectsBadSymmetry) {
  const SplitHamiltonian s{IntMatrix{{0, 1}, {2, 0}}, IntMatrix(2)};
  EXPECT_THROW(evolve_phase_space({0, 0}, {0, 0}, {0, 0}, {0, 0}, s, 1), PreconditionViolation);
}

TEST(PhaseSpace, MatchesEvolveOnRandomInstances) {
  Rng rng(23);
  for (int k = 0; k < 100; ++k) {
    const auto inst = test::random_instance(rng);
    const Trajectory t = evolve(inst.s0, inst.s1, inst.h, 120);
    const PhaseTrajectory seeds = to_phase_space(t);
    const PhaseTrajectory p =
        evolve_phase_space(seeds.xs[0], seeds.ps[0], seeds.xs[1], seeds.ps[1], split_sym_antisym(inst.h), 120);
    ASSERT_EQ(p, seeds);
  }
}

TEST(Action, VanishesOnSolutions) {
  Rng rng(31);
  for (int k = 0; k < 50; ++k) {
    const auto inst = test::random_instance(rng);
    const ActionValue a = action_evaluate(evolve(inst.s0, inst.s1, inst.h, 80), inst.h);
    ASSERT_TRUE(a.value.is_zero());
  }
}

TEST(Action, ZeroTrajectory) {
  const Trajectory z({GIVector(2), GIVector(2), GIVector(2)});
  EXPECT_TRUE(action_evaluate(z, test::pauli_x()).value.is_zero());
}

TEST(Action, ConstantNonSolution) {
  const Trajectory t({GIVector{1}, GIVector{1}, GIVector{1}});
  const ActionValue a = action_evaluate(t, HermitianMatrix{{1}});
  EXPECT_EQ(a.value, gi(1));
  EXPECT_TRUE(a.is_real());
}

TEST(Action, RealOnArbitraryFields) {
  Rng rng(37);
  for (int k = 0; k < 50; ++k) {
    const HermitianMatrix h = random_hermitian(rng, 3, 3);
    std::vector<GIVector> s;
    for (int n = 0; n < 6; ++n) s.push_back(random_vector(rng, 3, 5));
    ASSERT_TRUE(action_evaluate(Trajectory(s), h).is_real());
  }
}

TEST(Action, TooShortRejected) {
  EXPECT_THROW(action_evaluate(Trajectory({GIVector{1}, GIVector{1}}), HermitianMatrix{{1}}), PreconditionViolation);
}

TEST(DiscreteVariation, QuadraticUnitDelta) {
  auto sq = [](const BigInt& f) { return BigInt(f * f); };
  const VariationQuotient q = discrete_variation(sq, BigInt(3), BigInt(1));
  EXPECT_EQ(q.numerator, gi(12));
  EXPECT_EQ(q.value(), gi(6));
}

TEST(DiscreteVariation, QuadraticDeltaTwo) {
  auto sq = [](const BigInt& f) { return BigInt(f * f); };
  const VariationQuotient q = discrete_variation(sq, BigInt(3), BigInt(2));
  EXPECT_EQ(q.numerator, gi(24));
  EXPECT_EQ(q.value(), gi(6));
  EXPECT_TRUE(same_value(q, discrete_variation(sq, BigInt(3), BigInt(1))));
}

TEST(DiscreteVariation, ConstantIsZero) {
  auto c = [](const BigInt&) { return BigInt(42); };
  for (long d : {1, 2, 7, -3}) EXPECT_TRUE(discrete_variation(c, BigInt(5), BigInt(d)).is_zero());
}

TEST(DiscreteVariation, ZeroDeltaFlagged) {
  auto sq = [](const BigInt& f) { return BigInt(f * f); };
  const VariationQuotient q = discrete_variation(sq, BigInt(3), BigInt(0));
  EXPECT_TRUE(q.zero_delta);
  EXPECT_TRUE(q.is_zero());
}

TEST(Stationarity, SiteFunctionalMatchesBruteForceOracle) {
  Rng rng(41);
  for (int k = 0; k < 20; ++k) {
    const HermitianMatrix h = random_hermitian(rng, 3, 3);
    std::vector<GIVector> s;
    for (int n = 0; n < 7; ++n) s.push_back(random_vector(rng, 3, 4));
    const Trajectory t(s);
    for (std::size_t site = 1; site + 1 < t.size(); ++site) {
      for (std::size_t a = 0; a < 3; ++a) {
        for (Component part : kAllComponents) {
          for (long d : {1, 2, 3}) {
            const GaussianInt num =
                padded_doubled_action(t, h, site, a, part, d) - padded_doubled_action(t, h, site, a, part, -d);
            const VariationQuotient oracle{num, BigInt(4 * d), false};
            const VariationQuotient got = vary_action(t, h, {site, a, part, BigInt(d)});
            ASSERT_TRUE(same_value(got, oracle)) << "site " << site << " dof " << a << " " << to_string(part);
          }
        }
      }
    }
  }
}

TEST(Stationarity, SolutionsHaveNoViolations) {
  Rng rng(43);
  for (int k = 0; k < 20; ++k) {
    const auto inst = test::random_instance(rng);
    const StationarityReport r = verify_stationarity(evolve(inst.s0, inst.s1, inst.h, 40), inst.h);
    ASSERT_TRUE(r.stationary());
    ASSERT_TRUE(r.delta_independent);
    ASSERT_EQ(r.sites_checked, 40u);
  }
}

TEST(Stationarity, DeltaIndependentOneToFive) {
  Rng rng(47);
  const long deltas[] = {1, 2, 3, 4, 5};
  for (int k = 0; k < 10; ++k) {
    const HermitianMatrix h = random_hermitian(rng, 2, 3);
    std::vector<GIVector> s;
    for (int n = 0; n < 8; ++n) s.push_back(random_vector(rng, 2, 6));
    const StationarityReport r = verify_stationarity(Trajectory(s), h, deltas);
    ASSERT_TRUE(r.delta_independent);
  }
}

TEST(Stationarity, ZeroTrajectoryIsStationary) {
  const Trajectory z({GIVector(2), GIVector(2), GIVector(2), GIVector(2)});
  EXPECT_TRUE(verify_stationarity(z, test::pauli_x()).stationary());
}

TEST(Stationarity, ViolationsCoincideWithEquationResiduals) {
  Rng rng(53);
  for (int k = 0; k < 60; ++k) {
    const auto inst = test::random_instance(rng);
    const Trajectory t = evolve(inst.s0, inst.s1, inst.h, 12);
    std::uniform_int_distribution<std::size_t> site(1, 11), dof(0, inst.h.dim() - 1);
    const std::size_t n = site(rng), a = dof(rng);
    GIVector bad = t[n];
    bad[a] += gi(1);
    const Trajectory c = t.with_state(n, bad);
    std::vector<std::size_t> residual_sites;
    for (std::size_t m = 1; m < c.last_index(); ++m) {
      if (!equation_residual(c, inst.h, m).is_zero()) residual_sites.push_back(m);
    }
    const StationarityReport r = verify_stationarity(c, inst.h);
    ASSERT_FALSE(r.stationary());
    ASSERT_EQ(r.violating_sites(), residual_sites);
    const std::set<std::size_t> sites(residual_sites.begin(), residual_sites.end());
    ASSERT_TRUE(sites.count(n - 1) || sites.count(n + 1)) << "corruption at " << n;
  }
}

TEST(TrajectoryIo, CsvAndJsonRoundTrip) {
  const Trajectory t = evolve(GIVector{gi(1, -2), gi(3)}, GIVector{gi(0, 1), gi(-4, 5)},
                              HermitianMatrix{{3, gi(1, 2)}, {gi(1, -2), -3}}, 40);
  const std::string csv = to_csv(t);
  EXPECT_EQ(csv.rfind("n,alpha,re,im\n", 0), 0u);
  EXPECT_EQ(csv.find_first_of("eE.", csv.find('\n')), std::string::npos);
  std::istringstream in(csv);
  EXPECT_EQ(trajectory_from_csv(in), t);
  EXPECT_EQ(trajectory_from_json(json::parse(to_json(t).dump())), t);
}

TEST(TrajectoryIo, CsvGapRejected) {
  std::istringstream in("n,alpha,re,im\n0,0,1,0\n2,0,1,0\n");
  EXPECT_THROW(trajectory_from_csv(in), LiteralError);
}
