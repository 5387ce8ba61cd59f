#include <gtest/gtest.h>

#include "hca/errors.hpp"
#include "hca/literal.hpp"
#include "hca/matrix.hpp"
#include "support.hpp"

using namespace hca;
using hca::test::gi;

TEST(GaussianArith, MultiplyExpands) { EXPECT_EQ(gi(1, 2) * gi(3, -1), gi(5, 5)); }

TEST(GaussianArith, ConjugateFlipsImaginary) {
  EXPECT_EQ(gi(2, -3).conj(), gi(2, 3));
  EXPECT_EQ(gi(2, -3).conj().conj(), gi(2, -3));
}

TEST(GaussianArith, ZeroIsAdditiveIdentity) { EXPECT_EQ(gi(0, 0) + gi(7, -4), gi(7, -4)); }

TEST(GaussianArith, TimesIRotates) {
  EXPECT_EQ(gi(3, 2).times_i(), gi(-2, 3));
  EXPECT_EQ(gi(3, 2).times_minus_i(), gi(2, -3));
  EXPECT_EQ(GaussianInt::i() * GaussianInt::i(), gi(-1));
}

TEST(GaussianArith, ArbitraryPrecisionDoesNotWrap) {
  GaussianInt z(BigInt("123456789012345678901234567890"), BigInt(-1));
  GaussianInt sq = z * z;
  EXPECT_EQ(sq.re(), BigInt("15241578753238836750495351562536198787501905199875019052099"));
  EXPECT_EQ(sq.im(), BigInt("-246913578024691357802469135780"));
}

TEST(GaussianArith, ToString) {
  EXPECT_EQ(gi(3, -2).to_string(), "3-2i");
  EXPECT_EQ(gi(0, -1).to_string(), "-i");
  EXPECT_EQ(gi(5).to_string(), "5");
}

TEST(GaussianArith, RingAxiomsOnRandomTriples) {
  Rng rng(7);
  for (int k = 0; k < 2000; ++k) {
    const GaussianInt a = random_gaussian(rng, 1000), b = random_gaussian(rng, 1000), c = random_gaussian(rng, 1000);
    ASSERT_EQ((a * b) * c, a * (b * c));
    ASSERT_EQ((a + b) + c, a + (b + c));
    ASSERT_EQ(a * (b + c), a * b + a * c);
    ASSERT_EQ(a * b, b * a);
    ASSERT_EQ(a + b, b + a);
    ASSERT_EQ((a * b).conj(), a.conj() * b.conj());
    GaussianInt acc = a;
    acc.add_product(b, c);
    ASSERT_EQ(acc, a + b * c);
    acc = a;
    acc.add_conj_product(b, c);
    ASSERT_EQ(acc, a + b.conj() * c);
  }
}

TEST(GaussianArith, ExactDivide) {
  EXPECT_EQ(exact_divide(gi(6, -4), BigInt(2)), gi(3, -2));
  EXPECT_THROW(exact_divide(gi(3, 0), BigInt(2)), std::exception);
}

TEST(MatApply, PermutationMatrix) { EXPECT_EQ(apply(test::pauli_x(), GIVector{1, 0}), (GIVector{0, 1})); }

TEST(MatApply, IdentityLeavesVector) {
  GIVector v{gi(3, -1), gi(0, 7), gi(-2)};
  EXPECT_EQ(apply(GIMatrix::identity(3), v), v);
}

TEST(MatApply, HandExpandedProduct) {
  HermitianMatrix h{{1, gi(0, 1)}, {gi(0, -1), 2}};
  EXPECT_EQ(apply(h, GIVector{1, 1}), (GIVector{gi(1, 1), gi(2, -1)}));
}

TEST(MatApply, DimensionMismatchRejected) {
  EXPECT_THROW(apply(GIMatrix::identity(2), GIVector{1, 2, 3}), DimensionMismatch);
}

TEST(Commutator, SelfIsZero) {
  const GIMatrix h = test::pauli_x().matrix();
  EXPECT_TRUE(commutator(h, h).is_zero());
}

TEST(Commutator, IdentityCommutes) {
  HermitianMatrix h{{1, gi(2, 1)}, {gi(2, -1), 3}};
  EXPECT_TRUE(commutator(GIMatrix::identity(2), h.matrix()).is_zero());
}

TEST(Commutator, PauliXZ) {
  EXPECT_EQ(commutator(test::pauli_x().matrix(), test::pauli_z().matrix()), (GIMatrix{{0, -2}, {2, 0}}));
}

TEST(Commutator, DimensionMismatchRejected) {
  EXPECT_THROW(commutator(GIMatrix::identity(2), GIMatrix::identity(3)), DimensionMismatch);
}

TEST(Commutator, AntisymmetricOnRandomPairs) {
  Rng rng(11);
  for (int k = 0; k < 200; ++k) {
    const GIMatrix g = random_hermitian(rng, 4, 5).matrix();
    const GIMatrix h = random_hermitian(rng, 4, 5).matrix();
    ASSERT_EQ(commutator(g, h), gi(-1) * commutator(h, g));
  }
}

TEST(Hermitian, RejectsNonSelfAdjoint) {
  EXPECT_THROW(HermitianMatrix({{0, gi(0, 1)}, {gi(0, 1), 0}}), PreconditionViolation);
  EXPECT_THROW(HermitianMatrix({{gi(1, 1)}}), PreconditionViolation);
  EXPECT_NO_THROW(HermitianMatrix({{0, gi(0, 1)}, {gi(0, -1), 0}}));
}

TEST(Split, RealSymmetricInput) {
  const SplitHamiltonian s = split_sym_antisym(test::pauli_x());
  EXPECT_EQ(s.symmetric, (IntMatrix{{0, 1}, {1, 0}}));
  EXPECT_TRUE(s.antisymmetric.is_zero());
}

TEST(Split, PurelyImaginaryInput) {
  const SplitHamiltonian s = split_sym_antisym(HermitianMatrix{{0, gi(0, 1)}, {gi(0, -1), 0}});
  EXPECT_TRUE(s.symmetric.is_zero());
  EXPECT_EQ(s.antisymmetric, (IntMatrix{{0, 1}, {-1, 0}}));
}

TEST(Split, MixedInput) {
  const SplitHamiltonian s = split_sym_antisym(HermitianMatrix{{1, gi(2, 1)}, {gi(2, -1), 3}});
  EXPECT_EQ(s.symmetric, (IntMatrix{{1, 2}, {2, 3}}));
  EXPECT_EQ(s.antisymmetric, (IntMatrix{{0, 1}, {-1, 0}}));
}

TEST(Split, RecombinesOnRandomMatrices) {
  Rng rng(3);
  for (int k = 0; k < 300; ++k) {
    const HermitianMatrix h = random_hermitian(rng, 1 + k % 6, 9);
    const SplitHamiltonian s = split_sym_antisym(h);
    ASSERT_TRUE(s.symmetric.is_symmetric());
    ASSERT_TRUE(s.antisymmetric.is_antisymmetric());
    ASSERT_EQ(recombine(s), h.matrix());
  }
}

TEST(Kronecker, TensorProductMatchesKronecker) {
  const GIVector a{1, gi(0, 2)}, b{gi(3), gi(-1), gi(1, 1)};
  const GIVector ab[] = {a, b};
  const GIVector t = tensor_product(ab);
  ASSERT_EQ(t.size(), 6u);
  EXPECT_EQ(t[0], gi(3));
  EXPECT_EQ(t[4], gi(0, -2));
  const GIMatrix k = kronecker(test::pauli_x().matrix(), GIMatrix::identity(3));
  EXPECT_EQ(apply(k, t), tensor_product(std::vector<GIVector>{apply(test::pauli_x(), a), b}));
}

TEST(Literal, PairEncodingRoundTrips) {
  const GIMatrix m{{1, gi(2, -3)}, {gi(2, 3), gi(-4)}};
  const json j = to_json(m);
  EXPECT_EQ(j.dump(), "[[[1,0],[2,-3]],[[2,3],[-4,0]]]");
  EXPECT_EQ(matrix_from_json(j), m);
  EXPECT_EQ(matrix_from_json(json::parse("[[0,[0,1]],[[0,1],0]]")), (GIMatrix{{0, gi(0, 1)}, {gi(0, 1), 0}}));
}

TEST(Literal, HugeIntegersUseDecimalText) {
  const GaussianInt z(BigInt("-98765432109876543210987654321"), BigInt(5));
  const json j = to_json(z);
  EXPECT_EQ(j.dump(), "[\"-98765432109876543210987654321\",5]");
  EXPECT_EQ(gaussian_from_json(json::parse(j.dump())), z);
}

TEST(Literal, MalformedLiteralsRejected) {
  EXPECT_THROW(matrix_from_json(json::parse("[[1,2],[3]]")), LiteralError);
  EXPECT_THROW(gaussian_from_json(json::parse("[1,2,3]")), LiteralError);
  EXPECT_THROW(gaussian_from_json(json::parse("1.5")), LiteralError);
  EXPECT_THROW(vector_from_json(json::parse("{\"a\":1}")), LiteralError);
}
