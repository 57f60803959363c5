#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "algocap/capacity.hpp"
#include "algocap/random.hpp"

using namespace algocap;

namespace {

double h2(double p) {
  double h = 0.0;
  if (p > 0.0) h -= p * std::log2(p);
  if (p < 1.0) h -= (1.0 - p) * std::log2(1.0 - p);
  return h;
}

ObjectiveOperator wrap(ComplexMatrix m) { return {1, std::move(m), "test", "test"}; }

}  // namespace

TEST(ObjectiveOperator, IdentityAgainstMaximallyMixed) {
  const SurrogateContext ctx(identity_channel(2), DensityMatrix::maximally_mixed(2), "mm");
  const auto t = objective_operator(ctx, 1);
  EXPECT_LE(max_abs_diff(t.matrix, ComplexMatrix::identity(2)), 1e-14);
  EXPECT_NEAR(max_linear_objective(t).value, 1.0, 1e-14);
}

TEST(ObjectiveOperator, HalfDephasingCancels) {
  const SurrogateContext ctx(dephasing(0.5), DensityMatrix::maximally_mixed(2), "mm");
  const auto t = objective_operator(ctx, 1);
  EXPECT_LE(max_abs(t.matrix), 1e-14);
  EXPECT_NEAR(max_linear_objective(t).value, 0.0, 1e-14);
}

TEST(ObjectiveOperator, TracePairing) {
  Rng rng(71);
  const auto e = default_enumeration(2, 2, 2);
  for (const auto& phi : zoo_samples())
    for (std::size_t n = 1; n <= 2; ++n) {
      const auto ref = build_reference(e, n);
      const auto t = objective_operator(phi, n, ref);
      EXPECT_LE(hermitian_residual(t.matrix), 1e-9);
      const auto ctx = SurrogateContext::from_mixture(tensor_power(phi, n), ref);
      for (int k = 0; k < 100; ++k) {
        const auto rho = k % 2 ? random_pure(t.matrix.rows(), rng) : random_density(t.matrix.rows(), rng);
        ASSERT_NEAR(t.pairing(rho.matrix()), algorithmic_coherent_information(rho, ctx), 1e-9) << phi.id();
      }
    }
}

TEST(ObjectiveOperator, EntrywiseFormula) {
  const auto e = default_enumeration(2, 2, 1);
  for (const auto& phi : zoo_samples()) {
    const auto ref = build_reference(e, 2);
    const auto ctx = SurrogateContext::from_mixture(tensor_power(phi, 2), ref);
    const auto t = objective_operator(ctx, 2);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) EXPECT_LE(std::abs(objective_entry(ctx, i, j) - t.matrix(j, i)), 1e-9);
  }
}

TEST(ObjectiveOperator, ProvenanceAndLevelChecks) {
  const auto e = default_enumeration(2, 2, 1);
  const auto t = objective_operator(dephasing(0.2), 1, build_reference(e, 1));
  EXPECT_EQ(t.channel_id, "dephasing(0.2)");
  EXPECT_EQ(t.reference_id, "default(d=2,grid=1)/level=1");
  EXPECT_THROW(objective_operator(dephasing(0.2), 2, build_reference(e, 1)), DimensionError);
}

TEST(MaxLinearObjective, Diagonal) {
  const auto m = max_linear_objective(wrap(ComplexMatrix::diagonal({0.3, 0.7})));
  EXPECT_NEAR(m.value, 0.7, 1e-15);
  EXPECT_LE(max_abs_diff(m.state.matrix(), ComplexMatrix::diagonal({0.0, 1.0})), 1e-14);
}

TEST(MaxLinearObjective, ZeroOperator) {
  const auto m = max_linear_objective(wrap(ComplexMatrix(3, 3)));
  EXPECT_NEAR(m.value, 0.0, 1e-15);
  EXPECT_NEAR(m.state.matrix().trace().real(), 1.0, 1e-14);
}

TEST(MaxLinearObjective, AlgebraicNotAbsolute) {
  // The most negative eigenvalue is largest in magnitude; the linear maximum ignores it.
  const auto m = max_linear_objective(wrap(ComplexMatrix::diagonal({-5.0, 0.5})));
  EXPECT_NEAR(m.value, 0.5, 1e-15);
}

TEST(MaxLinearObjective, RayleighBoundOnRandomHermitian) {
  Rng rng(72);
  for (int t = 0; t < 5; ++t) {
    const auto op = wrap(random_hermitian(3, rng));
    const auto best = max_linear_objective(op);
    EXPECT_NEAR(op.pairing(best.state.matrix()), best.value, 1e-12);
    for (int k = 0; k < 10000; ++k) {
      const auto rho = k % 2 ? random_pure(3, rng) : random_density(3, rng);
      ASSERT_LE(op.pairing(rho.matrix()), best.value + 1e-12);
    }
  }
}

TEST(MaxOverSet, IdentityPicksMaximallyMixed) {
  const auto e = default_enumeration(2, 1, 2);
  const auto m = max_over_set(identity_channel(2), 1, e);
  EXPECT_EQ(m.global_index, 2u);
  EXPECT_EQ(m.position, 0u);
  EXPECT_LE(std::abs(m.value - 1.0), delta_slack_bits(2));
  ASSERT_EQ(m.member_values.size(), 3u);
}

TEST(MaxOverSet, ErasureLowerBound) {
  const auto e = default_enumeration(2, 1, 2);
  const auto m = max_over_set(erasure(0.25), 1, e);
  // I/2 sits at global index 2.
  EXPECT_GE(m.value, 0.5 + std::log2(delta_weight(2)) - 1e-9);
}

TEST(MaxOverSet, SingletonLevel) {
  std::vector<std::vector<DensityMatrix>> levels{{DensityMatrix::maximally_mixed(2)}};
  const StateEnumeration e(2, LevelCountPolynomial{{1}}, levels, "single");
  const auto phi = amplitude_damping(0.3);
  const auto m = max_over_set(phi, 1, e);
  const auto ctx = SurrogateContext::from_mixture(phi, build_reference(e, 1));
  EXPECT_DOUBLE_EQ(m.value, algorithmic_coherent_information(DensityMatrix::maximally_mixed(2), ctx));
  EXPECT_EQ(m.global_index, 2u);
}

TEST(RateSequence, IdentityBracketsContainOne) {
  const auto e = default_enumeration(2, 3, 2);
  const auto r = rate_sequence(identity_channel(2), e, 3, RateMode::restricted);
  ASSERT_EQ(r.levels.size(), 3u);
  EXPECT_FALSE(r.truncated);
  for (const auto& l : r.levels) {
    EXPECT_TRUE(l.contains(1.0)) << "n=" << l.n;
    EXPECT_TRUE(l.premises_verified);
    EXPECT_TRUE(l.certified);
  }
}

TEST(RateSequence, HalfDephasingBracketsContainZero) {
  const auto e = default_enumeration(2, 2, 2);
  const auto r = rate_sequence(dephasing(0.5), e, 2);
  for (const auto& l : r.levels) EXPECT_TRUE(l.contains(0.0)) << "n=" << l.n;
}

TEST(RateSequence, LevelFields) {
  const auto e = default_enumeration(2, 3, 2);
  const auto r = rate_sequence(amplitude_damping(0.2), e, 3, RateMode::both);
  EXPECT_EQ(r.channel_id, "amplitude_damping(0.2)");
  EXPECT_EQ(r.reference_id, "default(d=2,grid=2)");
  for (const auto& l : r.levels) {
    const double n = static_cast<double>(l.n);
    EXPECT_LE(l.restricted_max, l.eigen_max + 1e-9);
    EXPECT_DOUBLE_EQ(l.q_n, l.restricted_max / n);
    EXPECT_NEAR(l.slack_bits, -std::log2(delta_weight(l.argmax_index)), 1e-12);
    EXPECT_NEAR(l.worst_case_slack_bits, -std::log2(delta_weight(1 + l.n * (1 + 2 * l.n))), 1e-12);
    EXPECT_DOUBLE_EQ(l.bracket_lo, l.q_n - l.slack_bits / n);
    EXPECT_DOUBLE_EQ(l.bracket_hi, l.q_n + l.slack_bits / n);
    EXPECT_EQ(l.reference_id, "default(d=2,grid=2)/level=" + std::to_string(l.n));
    EXPECT_GE(l.argmax_index, e.first_index(l.n));
    EXPECT_LE(l.argmax_index, e.last_index(l.n));
  }
  EXPECT_TRUE(r.worst_case_slack_monotone);
}

TEST(RateSequence, EigenModeIsNotCertified) {
  const auto e = default_enumeration(2, 2, 2);
  const auto r = rate_sequence(depolarizing(0.1), e, 2, RateMode::eigen);
  for (const auto& l : r.levels) {
    EXPECT_DOUBLE_EQ(l.q_n, l.eigen_max / static_cast<double>(l.n));
    EXPECT_FALSE(l.certified);
  }
}

TEST(RateSequence, SandwichHoldsAtMaximizer) {
  const auto e = default_enumeration(2, 2, 2);
  for (const auto& phi : zoo_samples()) {
    const auto r = rate_sequence(phi, e, 2);
    for (const auto& l : r.levels) {
      const auto [lvl, pos] = e.locate(l.argmax_index);
      const double ic = coherent_information(e.states(lvl)[pos], tensor_power(phi, l.n));
      EXPECT_GE(ic, l.restricted_max - l.slack_bits - 1e-9) << phi.id();
      EXPECT_LE(ic, l.restricted_max + l.slack_bits + 1e-9) << phi.id();
    }
  }
}

TEST(RateSequence, TruncatesOnBudget) {
  const auto e = default_enumeration(2, 3, 1);
  const auto r = rate_sequence(depolarizing(0.1), e, 3, RateMode::restricted, DimensionBudget{16});
  EXPECT_TRUE(r.truncated);
  EXPECT_EQ(r.levels.size(), 2u);
  EXPECT_NE(r.truncation_reason.find("budget"), std::string::npos);
}

TEST(RateSequence, TruncatesWhenEnumerationEnds) {
  const auto e = default_enumeration(2, 1, 1);
  const auto r = rate_sequence(dephasing(0.1), e, 2);
  EXPECT_TRUE(r.truncated);
  EXPECT_EQ(r.levels.size(), 1u);
}

TEST(RateSequence, RejectsMismatchedDimensions) {
  EXPECT_THROW(rate_sequence(identity_channel(3), default_enumeration(2, 1, 1), 1), DimensionError);
  EXPECT_THROW(rate_sequence(identity_channel(2), default_enumeration(2, 1, 1), 0), ParameterError);
}

TEST(SingleLetter, DephasingClosedForm) {
  for (double p : {0.0, 0.1, 0.3, 0.5}) {
    EXPECT_NEAR(single_letter_ic_max(dephasing(p)).value, 1.0 - h2(p), 1e-6) << p;
  }
  EXPECT_NEAR(1.0 - h2(0.1), 0.531004, 1e-6);
  EXPECT_NEAR(1.0 - h2(0.3), 0.118709, 1e-6);
}

TEST(SingleLetter, HalfAmplitudeDampingVanishes) {
  EXPECT_LE(std::abs(single_letter_ic_max(amplitude_damping(0.5)).value), 1e-6);
}

TEST(SingleLetter, ErasureAtMaximallyMixed) {
  const auto m = single_letter_ic_max(erasure(0.25));
  EXPECT_NEAR(m.value, 0.5, 1e-9);
  EXPECT_LE(max_abs_diff(m.state.matrix(), 0.5 * ComplexMatrix::identity(2)), 1e-6);
}

TEST(SingleLetter, IsALowerBoundAttainedByItsState) {
  const auto phi = amplitude_damping(0.2);
  const auto m = single_letter_ic_max(phi);
  EXPECT_NEAR(coherent_information(m.state, phi), m.value, 1e-12);
  // Amplitude damping at gamma: max over diagonal inputs of h2((1-g) q) - h2(g q).
  double best = 0.0;
  for (int k = 0; k <= 100000; ++k) {
    const double q = k / 100000.0;
    best = std::max(best, h2(0.8 * q) - h2(0.2 * q));
  }
  EXPECT_NEAR(m.value, best, 1e-6);
}

TEST(SingleLetter, DiagonalSearchForQutrits) {
  const auto m = single_letter_ic_max(identity_channel(3));
  EXPECT_NEAR(m.value, std::log2(3.0), 1e-9);
  EXPECT_THROW(single_letter_ic_max(identity_channel(5)), ParameterError);
}
