#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "test_support.hpp"
#include "wernerqd/discord.hpp"

using namespace wernerqd;
using wernerqd::testing::sorted_distance;

namespace {

// -[hi log2 hi + (N - 1) lo log2 lo] for the GHZ mixture on m qubits, N = 2^m,
// written out directly in extended precision.
long double naive_mixture_entropy(int m, long double p) {
  const long double N = std::ldexp(1.0L, m);
  const long double hi = (1 + (N - 1) * p) / N;
  const long double lo = (1 - p) / N;
  long double s = -hi * std::log2(hi);
  if (lo > 0) s -= (N - 1) * lo * std::log2(lo);
  return s;
}

// 1 - S(A,B) + S(A|B) with every power of two materialized.
double naive_discord(int n, double p) {
  return double(1.0L - naive_mixture_entropy(n, p) + naive_mixture_entropy(n - 1, p));
}

std::vector<double> grid(int steps) {
  std::vector<double> ps;
  for (int i = 0; i < steps; ++i) ps.push_back(double(i) / (steps - 1));
  return ps;
}

}  // namespace

// ---------------------------------------------------------------------------
// Entropies

TEST(Entropy, DenseSpectrumExamples) {
  const double half[] = {0.5, 0.5};
  EXPECT_DOUBLE_EQ(shannon_entropy_bits(half), 1.0);
  const double pure[] = {1.0, 0.0, 0.0};
  EXPECT_EQ(shannon_entropy_bits(pure), 0.0);
  const double werner2[] = {0.625, 0.125, 0.125, 0.125};
  EXPECT_NEAR(shannon_entropy_bits(werner2), 1.54879, 5e-6);
}

TEST(Entropy, SmallNegativeRoundOffIsClampedLargerIsRejected) {
  const double tiny[] = {0.5, 0.5, -1e-13};
  EXPECT_DOUBLE_EQ(shannon_entropy_bits(tiny), 1.0);
  const double bad[] = {0.5, 0.5, -1e-9};
  EXPECT_THROW(shannon_entropy_bits(bad), ValidationError);
}

TEST(Entropy, JointAndConditionalAtTwoQubits) {
  const WernerParams params(2, 0.5);
  EXPECT_NEAR(joint_entropy(params), 1.54879, 5e-6);
  EXPECT_NEAR(conditional_entropy(params), 0.5 + 0.75 * std::log2(4.0 / 3.0), 1e-15);
  EXPECT_NEAR(conditional_entropy(params), 0.81128, 5e-6);
}

TEST(Entropy, StructuredMatchesDenseEigensolver) {
  for (int n = 2; n <= 7; ++n)
    for (double p : grid(11)) {
      const WernerParams params(n, p);
      const double dense = shannon_entropy_bits(eig_hermitian(build_werner_dense(params)));
      EXPECT_NEAR(joint_entropy(params), dense, 1e-10) << "n=" << n << " p=" << p;
    }
}

TEST(Entropy, StructuredMatchesNaiveFormula) {
  for (int n = 2; n <= 30; ++n)
    for (double p : grid(21))
      EXPECT_NEAR(joint_entropy(WernerParams(n, p)), double(naive_mixture_entropy(n, p)), 1e-11)
          << "n=" << n << " p=" << p;
}

TEST(Entropy, FiniteAtVeryLargeN) {
  // S(A,B) -> (1 - p) n + h(p) as n grows; at p = 0 it is exactly n.
  EXPECT_NEAR(joint_entropy(WernerParams(1000, 0.0)), 1000.0, 1e-9);
  const double s = joint_entropy(WernerParams(1000, 0.5));
  EXPECT_NEAR(s, 500.0 + 1.0, 1e-9);
}

TEST(Entropy, EndpointValuesForAnyN) {
  for (int n : {2, 3, 7, 40, 500}) {
    EXPECT_NEAR(joint_entropy(WernerParams(n, 0.0)), n, 1e-12 * n);
    EXPECT_EQ(joint_entropy(WernerParams(n, 1.0)), 0.0);
    EXPECT_NEAR(conditional_entropy(WernerParams(n, 0.0)), n - 1, 1e-12 * n);
    EXPECT_EQ(conditional_entropy(WernerParams(n, 1.0)), 0.0);
  }
}

TEST(Entropy, ConditionalMatchesDenseAtArbitraryAngles) {
  const WernerParams params(2, 0.5);
  const PostMeasurement pm = post_measurement_state(params, MeasurementAngles(0.3, 1.1), 1);
  EXPECT_NEAR(shannon_entropy_bits(eig_hermitian(pm.state)), conditional_entropy(params), 1e-12);
}

// ---------------------------------------------------------------------------
// Measurement

TEST(Measurement, ProjectorsAreCompleteOrthogonalIdempotent) {
  const MeasurementAngles angles(std::numbers::pi / 3, std::numbers::pi / 2);
  const ComplexMatrix u = qubit_projector(angles, 1), v = qubit_projector(angles, 2);
  EXPECT_LT(max_abs_diff(u + v, ComplexMatrix::identity(2)), 1e-15);
  EXPECT_LT(max_abs_diff(multiply(u, v), ComplexMatrix(2)), 1e-15);
  EXPECT_LT(max_abs_diff(multiply(u, u), u), 1e-15);
  const auto [pu, pv] = measurement_projectors(angles, 3);
  EXPECT_LT(max_abs_diff(pu + pv, ComplexMatrix::identity(8)), 1e-15);
}

TEST(Measurement, ComputationalAndHadamardBases) {
  const auto [z0, z1] = measurement_projectors(MeasurementAngles(0.0, 0.0), 2);
  const double zero[] = {1.0, 0.0};
  EXPECT_LT(max_abs_diff(z0, kron(ComplexMatrix::identity(2), ComplexMatrix::diagonal(zero))), 1e-16);
  const ComplexMatrix plus = qubit_projector(MeasurementAngles(std::numbers::pi / 4, 0.0), 1);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) EXPECT_NEAR(std::abs(plus(i, j) - Complex(0.5)), 0.0, 1e-15);
  // Each full projector has rank 2^(n-1).
  for (int n = 2; n <= 5; ++n) {
    const auto [pu, pv] = measurement_projectors(MeasurementAngles(0.7, 2.0), n);
    EXPECT_NEAR(pu.trace().real(), std::ldexp(1.0, n - 1), 1e-12);
    EXPECT_NEAR(pv.trace().real(), std::ldexp(1.0, n - 1), 1e-12);
  }
}

TEST(Measurement, ComputationalBasisCollapsesGhz) {
  const PostMeasurement pm = post_measurement_state(WernerParams(2, 1.0), MeasurementAngles(0.0, 0.0), 1);
  const double zero[] = {1.0, 0.0};
  EXPECT_NEAR(pm.probability, 0.5, 1e-15);
  EXPECT_LT(max_abs_diff(pm.state, ComplexMatrix::diagonal(zero)), 1e-15);
}

TEST(Measurement, AnglesAreValidated) {
  EXPECT_THROW(MeasurementAngles(-0.1, 0.0), ParameterError);
  EXPECT_THROW(MeasurementAngles(2.0, 0.0), ParameterError);
  EXPECT_THROW(MeasurementAngles(0.0, 7.0), ParameterError);
  EXPECT_THROW(qubit_projector(MeasurementAngles(0.1, 0.1), 3), ParameterError);
}

TEST(Measurement, PostMeasurementElementsAtThreeQubits) {
  const PostMeasurement pm = post_measurement_state(WernerParams(3, 0.5), MeasurementAngles(std::numbers::pi / 4, 0.0), 1);
  EXPECT_NEAR(pm.probability, 0.5, 1e-15);
  EXPECT_NEAR(pm.state(0, 0).real(), 0.375, 1e-15);
  EXPECT_NEAR(std::abs(pm.state(0, 3)), 0.25, 1e-15);
  EXPECT_NEAR(pm.state.trace().real(), 1.0, 1e-15);
}

TEST(Measurement, PostMeasurementMatchesFullProjectorSandwich) {
  const WernerParams params(3, 0.37);
  const ComplexMatrix rho = build_werner_dense(params);
  const MeasurementAngles angles(0.3, 1.1);
  const auto [pu, pv] = measurement_projectors(angles, 3);
  const ComplexMatrix* projectors[] = {&pu, &pv};
  for (int k = 1; k <= 2; ++k) {
    const ComplexMatrix& P = *projectors[k - 1];
    const ComplexMatrix sandwich = multiply(multiply(P, rho), P);
    const double prob = sandwich.trace().real();
    const ComplexMatrix oracle = partial_trace_B(sandwich, 4, 2) * Complex{1.0 / prob};
    const PostMeasurement pm = post_measurement_state(rho, angles, k);
    EXPECT_NEAR(pm.probability, prob, 1e-15);
    EXPECT_LT(max_abs_diff(pm.state, oracle), 1e-14);
  }
}

TEST(Measurement, PostMeasurementSpectrumIsAngleIndependent) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> theta(0.0, std::numbers::pi / 2), phi(0.0, 2 * std::numbers::pi);
  for (int n = 2; n <= 5; ++n)
    for (double p : {0.0, 0.2, 0.7, 1.0}) {
      const WernerParams params(n, p);
      const ComplexMatrix rho = build_werner_dense(params);
      // Independent oracle: (1 + (2^(n-1) - 1) p) / 2^(n-1) once, (1 - p)/2^(n-1) for the rest.
      const double L = std::ldexp(1.0, n - 1);
      std::vector<double> expect(std::size_t(L), (1 - p) / L);
      expect[0] = (1 + (L - 1) * p) / L;
      for (int trial = 0; trial < 8; ++trial) {
        const MeasurementAngles angles(theta(rng), phi(rng));
        for (int k = 1; k <= 2; ++k) {
          const PostMeasurement pm = post_measurement_state(rho, angles, k);
          EXPECT_NEAR(pm.probability, 0.5, 1e-14);
          EXPECT_LT(sorted_distance(eig_hermitian(pm.state).eigenvalues, expect), 1e-12);
        }
      }
    }
}

// ---------------------------------------------------------------------------
// Closed form

TEST(DiscordClosed, TwoQubitAnchors) {
  EXPECT_EQ(discord_closed(2, 0.0), 0.0);
  EXPECT_NEAR(discord_closed(2, 1.0), 1.0, 1e-15);
  // 0.26249 is composed from two entropies rounded to five places; the
  // unrounded value 0.262483183763734 comes from a direct evaluation.
  EXPECT_NEAR(discord_closed(2, 0.5), 1.0 - 1.54879 + 0.81128, 1e-5);
  EXPECT_NEAR(discord_closed(2, 0.5), 0.262483183763734, 1e-12);
}

TEST(DiscordClosed, EndpointsForAnyN) {
  for (int n : {2, 3, 8, 30, 200, 1000}) {
    EXPECT_EQ(discord_closed(n, 0.0), 0.0);
    EXPECT_NEAR(discord_closed(n, 1.0), 1.0, 1e-15);
    for (double p : grid(51)) {
      EXPECT_GE(discord_closed(n, p), 0.0);
      EXPECT_LE(discord_closed(n, p), 1.0 + 1e-9);
    }
  }
  EXPECT_EQ(discord_limit(0.0), 0.0);
  EXPECT_EQ(discord_limit(1.0), 1.0);
}

TEST(DiscordClosed, MatchesNaiveFormula) {
  for (int n = 2; n <= 24; ++n)
    for (double p : grid(41))
      EXPECT_NEAR(discord_closed(n, p), naive_discord(n, p), 1e-12) << "n=" << n << " p=" << p;
}

TEST(DiscordClosed, EqualsEntropyComposition) {
  for (int n : {2, 3, 4, 7, 12, 20, 50, 100})
    for (double p : grid(21)) {
      const WernerParams params(n, p);
      const double composed = 1.0 - joint_entropy(params) + conditional_entropy(params);
      EXPECT_NEAR(discord_closed(params), composed, 1e-12) << "n=" << n << " p=" << p;
    }
}

TEST(DiscordClosed, BoundedByLimitLine) {
  for (int n : {2, 3, 5, 10, 20, 60, 200, 1000})
    for (double p : grid(101)) {
      const double d = discord_closed(n, p);
      EXPECT_LE(d, p + 1e-12) << "n=" << n << " p=" << p;
      EXPECT_GE(d, -1e-15);
    }
}

TEST(DiscordClosed, IncreasesWithQubitCount) {
  for (double p : grid(21)) {
    if (p == 0.0 || p == 1.0) continue;
    for (int n = 2; n < 40; ++n) EXPECT_GT(discord_closed(n + 1, p), discord_closed(n, p)) << "n=" << n << " p=" << p;
  }
}

TEST(DiscordClosed, ApproachesLimitLine) {
  double worst = 0.0;
  for (double p : grid(101)) worst = std::max(worst, std::abs(discord_closed(200, p) - discord_limit(p)));
  EXPECT_LT(worst, 1e-3);
  EXPECT_EQ(discord_limit(0.3), 0.3);
  EXPECT_THROW(discord_limit(1.5), ParameterError);
}

// ---------------------------------------------------------------------------
// Dense pipeline

TEST(DiscordNumeric, TwoQubitValue) {
  const DiscordBreakdown b = discord_numeric(WernerParams(2, 0.5));
  EXPECT_NEAR(b.discord, 0.26249, 1e-5);
  EXPECT_NEAR(b.discord, discord_closed(2, 0.5), 1e-9);
  EXPECT_NEAR(b.s_b, 1.0, 1e-12);
  EXPECT_NEAR(b.p1, 0.5, 1e-12);
  EXPECT_NEAR(b.p2, 0.5, 1e-12);
  EXPECT_EQ(b.evaluations, 32 * 32);
  EXPECT_FALSE(b.coarse_grid);
}

TEST(DiscordNumeric, PureStateLimit) {
  EXPECT_NEAR(discord_numeric(WernerParams(2, 1.0), {16, 16}).discord, 1.0, 1e-9);
  EXPECT_NEAR(discord_numeric(WernerParams(4, 1.0), {8, 8}).discord, 1.0, 1e-9);
}

TEST(DiscordNumeric, BreakdownIdentity) {
  for (int n = 2; n <= 4; ++n)
    for (double p : {0.0, 0.25, 0.8, 1.0}) {
      const DiscordBreakdown b = discord_numeric(WernerParams(n, p), {8, 8});
      EXPECT_NEAR(b.discord, b.s_b - b.s_ab + b.s_a_given_b, 1e-12);
    }
}

TEST(DiscordNumeric, AgreesWithClosedForm) {
  for (int n = 2; n <= 6; ++n)
    for (double p : grid(6)) {
      const DiscordBreakdown b = discord_numeric(WernerParams(n, p), {8, 8});
      EXPECT_LT(std::abs(b.discord - discord_closed(n, p)), 1e-6) << "n=" << n << " p=" << p;
    }
}

TEST(DiscordNumeric, ConditionalEntropyIsFlatOverTheGrid) {
  const DiscordBreakdown b = discord_numeric(WernerParams(3, 0.3));
  EXPECT_LT(b.conditional_spread(), 1e-10);
  EXPECT_NEAR(b.s_a_given_b, conditional_entropy(WernerParams(3, 0.3)), 1e-10);
}

TEST(DiscordNumeric, CoarseGridIsFlagged) {
  EXPECT_TRUE(discord_numeric(WernerParams(2, 0.5), {2, 3}).coarse_grid);
  EXPECT_THROW(discord_numeric(WernerParams(2, 0.5), {0, 4}), ParameterError);
  EXPECT_THROW(discord_numeric(WernerParams(13, 0.5)), CapacityError);
}

// ---------------------------------------------------------------------------
// Convexity

TEST(DiscordConvexity, SecondDerivativeExamples) {
  const double at_half = discord_second_derivative_closed(2, 0.5);
  EXPECT_NEAR(at_half, (2.0 + 3.6 - 4.0 / 3.0) / (4 * std::numbers::ln2), 1e-12);
  EXPECT_NEAR(at_half, 1.5389, 5e-5);
  EXPECT_NEAR(discord_second_derivative_closed(2, 1e-3), 8.0 / (4 * std::numbers::ln2), 1e-2);
}

TEST(DiscordConvexity, ClosedExpressionMatchesTextbookForm) {
  for (int n = 2; n <= 20; ++n)
    for (double p : {0.01, 0.3, 0.5, 0.9, 0.999}) {
      const long double N = std::ldexp(1.0L, n);
      const long double x = 1 - p, y = 1 + (N - 1) * p, z = 1 + (N / 2 - 1) * p;
      const long double textbook = std::ldexp(1.0L, 2 * n - 1) / (N * std::numbers::ln2_v<long double> * x * y * z);
      EXPECT_NEAR(discord_second_derivative_closed(n, p) / double(textbook), 1.0, 1e-12);
    }
}

TEST(DiscordConvexity, WitnessNumeratorIsPowerOfTwo) {
  for (int n = 2; n <= 20; ++n)
    for (double p : {0.1, 0.5, 0.9}) {
      const ConvexityWitness w = discord_second_derivative(WernerParams(n, p));
      EXPECT_NEAR(w.alpha_numerator / std::ldexp(1.0, 2 * n - 1), 1.0, 1e-9) << "n=" << n << " p=" << p;
      EXPECT_NEAR(w.x, 1 - p, 1e-15);
      EXPECT_NEAR(w.alpha_numerator / w.gamma_denominator / w.second_derivative_closed, 1.0, 1e-9);
    }
}

TEST(DiscordConvexity, FiniteDifferencePositiveAndMatchesClosed) {
  for (int n = 2; n <= 20; ++n)
    for (int i = 1; i < 100; ++i) {
      const double p = i / 100.0;
      const ConvexityWitness w = discord_second_derivative(WernerParams(n, p));
      ASSERT_GT(w.second_derivative_fd, 0.0) << "n=" << n << " p=" << p;
      EXPECT_LT(std::abs(w.second_derivative_fd / w.second_derivative_closed - 1.0), 1e-4)
          << "n=" << n << " p=" << p;
    }
}

TEST(DiscordConvexity, EndpointsAreOutsideTheDomain) {
  EXPECT_THROW(discord_second_derivative(WernerParams(3, 0.0)), DomainError);
  EXPECT_THROW(discord_second_derivative(WernerParams(3, 1.0)), DomainError);
}
