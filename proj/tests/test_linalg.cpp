#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "algocap/linalg.hpp"
#include "algocap/random.hpp"

using namespace algocap;

namespace {

const ComplexMatrix kX{{0.0, 1.0}, {1.0, 0.0}};
const ComplexMatrix kZ{{1.0, 0.0}, {0.0, -1.0}};

}  // namespace

TEST(Kron, IdentityTimesIdentity) {
  EXPECT_EQ(kron(ComplexMatrix::identity(2), ComplexMatrix::identity(2)), ComplexMatrix::identity(4));
}

TEST(Kron, ShapeArithmetic) {
  const auto k = kron(ComplexMatrix(2, 3), ComplexMatrix(4, 5));
  EXPECT_EQ(k.rows(), 8u);
  EXPECT_EQ(k.cols(), 15u);
}

TEST(Kron, PauliXTimesPauliZ) {
  const auto k = kron(kX, kZ);
  ComplexMatrix expected(4, 4);
  expected(0, 2) = 1.0;
  expected(1, 3) = -1.0;
  expected(2, 0) = 1.0;
  expected(3, 1) = -1.0;
  EXPECT_EQ(k, expected);
}

TEST(Kron, EntryFormula) {
  Rng rng(11);
  const auto a = random_ginibre(2, 3, rng);
  const auto b = random_ginibre(3, 2, rng);
  const auto k = kron(a, b);
  for (std::size_t ia = 0; ia < 2; ++ia)
    for (std::size_t ja = 0; ja < 3; ++ja)
      for (std::size_t ib = 0; ib < 3; ++ib)
        for (std::size_t jb = 0; jb < 2; ++jb) EXPECT_EQ(k(ia * 3 + ib, ja * 2 + jb), a(ia, ja) * b(ib, jb));
}

TEST(Kron, AssociativityOnRandomTriples) {
  Rng rng(1);
  for (int t = 0; t < 100; ++t) {
    const auto a = random_ginibre(2, 3, rng), b = random_ginibre(3, 1, rng), c = random_ginibre(2, 2, rng);
    EXPECT_LE(max_abs_diff(kron(kron(a, b), c), kron(a, kron(b, c))), 1e-12);
  }
}

TEST(PartialTrace, BellStateMarginalIsMaximallyMixed) {
  const double s = 1.0 / std::sqrt(2.0);
  const ComplexVector bell{s, 0.0, 0.0, s};
  const auto rho = ComplexMatrix::outer(bell, bell);
  EXPECT_LE(max_abs_diff(partial_trace(rho, {2, 2}, {0}), 0.5 * ComplexMatrix::identity(2)), 1e-15);
  EXPECT_LE(max_abs_diff(partial_trace(rho, {2, 2}, {1}), 0.5 * ComplexMatrix::identity(2)), 1e-15);
}

TEST(PartialTrace, ProductStateFactorizes) {
  Rng rng(2);
  const auto rho = random_density(3, rng);
  const auto sigma = random_density(2, rng);
  EXPECT_LE(max_abs_diff(partial_trace(kron(rho.matrix(), sigma.matrix()), {3, 2}, {0}), rho.matrix()), 1e-12);
  EXPECT_LE(max_abs_diff(partial_trace(kron(rho.matrix(), sigma.matrix()), {3, 2}, {1}), sigma.matrix()), 1e-12);
}

TEST(PartialTrace, DiagonalBlocksSum) {
  const auto m = ComplexMatrix::diagonal({0.1, 0.2, 0.3, 0.4});
  // keep first: (0.1 + 0.2, 0.3 + 0.4)
  EXPECT_LE(max_abs_diff(partial_trace(m, {2, 2}, {0}), ComplexMatrix::diagonal({0.3, 0.7})), 1e-15);
  // keep second: (0.1 + 0.3, 0.2 + 0.4)
  EXPECT_LE(max_abs_diff(partial_trace(m, {2, 2}, {1}), ComplexMatrix::diagonal({0.4, 0.6})), 1e-15);
}

TEST(PartialTrace, MiddleOfThreeSubsystems) {
  Rng rng(3);
  const auto a = random_ginibre(2, 2, rng), b = random_ginibre(3, 3, rng), c = random_ginibre(2, 2, rng);
  const auto m = kron(kron(a, b), c);
  EXPECT_LE(max_abs_diff(partial_trace(m, {2, 3, 2}, {1}), b * (a.trace() * c.trace())), 1e-12);
  EXPECT_LE(max_abs_diff(partial_trace(m, {2, 3, 2}, {0, 2}), kron(a, c) * b.trace()), 1e-12);
}

TEST(PartialTrace, PreservesTrace) {
  Rng rng(4);
  const auto m = random_ginibre(6, 6, rng);
  EXPECT_LE(std::abs(partial_trace(m, {2, 3}, {1}).trace() - m.trace()), 1e-12);
}

TEST(PartialTrace, RejectsDimensionMismatch) {
  EXPECT_THROW(partial_trace(ComplexMatrix::identity(4), {2, 3}, {0}), DimensionError);
}

TEST(Eigh, DiagonalInputSortedDescending) {
  const auto dec = eigh(ComplexMatrix::diagonal({3.0, 1.0, 2.0}));
  ASSERT_EQ(dec.eigenvalues.size(), 3u);
  EXPECT_NEAR(dec.eigenvalues[0], 3.0, 1e-15);
  EXPECT_NEAR(dec.eigenvalues[1], 2.0, 1e-15);
  EXPECT_NEAR(dec.eigenvalues[2], 1.0, 1e-15);
}

TEST(Eigh, PauliX) {
  const auto dec = eigh(kX);
  EXPECT_NEAR(dec.eigenvalues[0], 1.0, 1e-14);
  EXPECT_NEAR(dec.eigenvalues[1], -1.0, 1e-14);
  const double s = 1.0 / std::sqrt(2.0);
  // First nonzero component is real and positive.
  EXPECT_NEAR(std::abs(dec.eigenvectors(0, 0) - Complex(s)), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(dec.eigenvectors(1, 0) - Complex(s)), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(dec.eigenvectors(0, 1) - Complex(s)), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(dec.eigenvectors(1, 1) - Complex(-s)), 0.0, 1e-14);
}

TEST(Eigh, TwoByTwoClosedForm) {
  Rng rng(5);
  for (int t = 0; t < 200; ++t) {
    const auto m = random_hermitian(2, rng);
    const double a = m(0, 0).real(), d = m(1, 1).real();
    const double r = std::sqrt((a - d) * (a - d) / 4.0 + std::norm(m(0, 1)));
    const auto dec = eigh(m);
    EXPECT_NEAR(dec.eigenvalues[0], (a + d) / 2.0 + r, 1e-12);
    EXPECT_NEAR(dec.eigenvalues[1], (a + d) / 2.0 - r, 1e-12);
  }
}

TEST(Eigh, Random6x6Reconstruction) {
  Rng rng(6);
  const auto m = random_hermitian(6, rng);
  const auto dec = eigh(m);
  EXPECT_LE(max_abs_diff(dec.reconstruct(), m), 1e-10);
  EXPECT_LE(max_abs_diff(dec.eigenvectors.adjoint() * dec.eigenvectors, ComplexMatrix::identity(6)), 1e-10);
  // Power-sum identities as an independent spectrum check.
  double s1 = 0.0, s2 = 0.0;
  for (double x : dec.eigenvalues) {
    s1 += x;
    s2 += x * x;
  }
  EXPECT_NEAR(s1, m.trace().real(), 1e-10);
  EXPECT_NEAR(s2, trace_product_real(m, m), 1e-10);
}

TEST(Eigh, ThousandRandomHermitianUpToDim16) {
  Rng rng(7);
  std::uniform_int_distribution<std::size_t> dim(1, 16);
  for (int t = 0; t < 1000; ++t) {
    const auto m = random_hermitian(dim(rng), rng);
    const auto dec = eigh(m);
    ASSERT_LE(max_abs_diff(dec.reconstruct(), m), 1e-10);
    ASSERT_LE(max_abs_diff(dec.eigenvectors.adjoint() * dec.eigenvectors, ComplexMatrix::identity(m.rows())), 1e-10);
    for (std::size_t k = 1; k < dec.dim(); ++k) ASSERT_GE(dec.eigenvalues[k - 1], dec.eigenvalues[k]);
  }
}

TEST(Eigh, PhaseConventionFirstNonzeroComponentPositive) {
  Rng rng(8);
  const auto dec = eigh(random_hermitian(5, rng));
  for (std::size_t k = 0; k < 5; ++k) {
    for (std::size_t i = 0; i < 5; ++i) {
      const Complex x = dec.eigenvectors(i, k);
      if (std::abs(x) > 1e-12) {
        EXPECT_GT(x.real(), 0.0);
        EXPECT_NEAR(x.imag(), 0.0, 1e-14);
        break;
      }
    }
  }
}

TEST(Eigh, Deterministic) {
  Rng rng(9);
  const auto m = random_hermitian(7, rng);
  const auto a = eigh(m), b = eigh(m);
  EXPECT_EQ(a.eigenvalues, b.eigenvalues);
  EXPECT_EQ(a.eigenvectors, b.eigenvectors);
}

TEST(Eigh, DegenerateSpectrum) {
  const auto m = ComplexMatrix::identity(4) * 2.0;
  const auto dec = eigh(m);
  for (double x : dec.eigenvalues) EXPECT_NEAR(x, 2.0, 1e-15);
  EXPECT_LE(max_abs_diff(dec.reconstruct(), m), 1e-14);
}

TEST(Eigh, RejectsNonHermitian) {
  const ComplexMatrix m{{1.0, 2.0}, {0.0, 1.0}};
  EXPECT_THROW(eigh(m), NotHermitianError);
  EXPECT_THROW(eigh(ComplexMatrix(2, 3)), DimensionError);
}

TEST(HermLog2, IdentityMapsToZero) {
  EXPECT_LE(max_abs(herm_log2(ComplexMatrix::identity(3))), 1e-15);
}

TEST(HermLog2, PowersOfTwo) {
  EXPECT_LE(max_abs_diff(herm_log2(ComplexMatrix::diagonal({0.5, 0.25})), ComplexMatrix::diagonal({-1.0, -2.0})),
            1e-14);
}

TEST(HermLog2, SupportConvention) {
  EXPECT_LE(max_abs(herm_log2(ComplexMatrix::diagonal({1.0, 0.0}))), 1e-15);
  EXPECT_LE(max_abs(herm_log2(ComplexMatrix::diagonal({1.0, 1e-13}))), 1e-15);
}

TEST(HermLog2, NonDiagonalMatchesRotatedSpectrum) {
  // Hadamard-rotated diag(1/2, 1/8): log2 is H diag(-1, -3) H.
  const double s = 1.0 / std::sqrt(2.0);
  const ComplexMatrix h{{s, s}, {s, -s}};
  const auto m = h * ComplexMatrix::diagonal({0.5, 0.125}) * h;
  const auto expected = h * ComplexMatrix::diagonal({-1.0, -3.0}) * h;
  EXPECT_LE(max_abs_diff(herm_log2(m), expected), 1e-13);
}

TEST(HermLog2, RejectsNegativeEigenvalue) {
  EXPECT_THROW(herm_log2(ComplexMatrix::diagonal({1.0, -1e-6})), NegativeEigenvalueError);
  EXPECT_NO_THROW(herm_log2(ComplexMatrix::diagonal({1.0, -1e-10})));
}

TEST(HermLog2, CommutesWithInput) {
  Rng rng(10);
  for (int t = 0; t < 50; ++t) {
    const auto rho = random_density(5, rng);
    const auto l = herm_log2(rho.matrix());
    EXPECT_LE(max_abs_diff(rho.matrix() * l, l * rho.matrix()), 1e-9);
    EXPECT_LE(hermitian_residual(l), 1e-10);
  }
}
