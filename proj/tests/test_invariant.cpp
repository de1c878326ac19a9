#include <gtest/gtest.h>

#include "pentagram/pentagram_invariant.hpp"
#include "test_support.hpp"

using namespace pentagram;

namespace {

int coprime_N(int n) { return coprime(5, n + 1) ? 5 : 7; }

}  // namespace

TEST(Invariant, RAndPVectorsSplitLastColumn) {
  Rng rng(51);
  for (int n = 2; n <= 7; ++n) {
    const auto a = random_field(n, 5, rng);
    const auto r = r_vector(a, 3);
    const auto p = p_vector(a, 3);
    const auto K = mc_matrix(a, 3);
    for (int i = 0; i <= n; ++i) {
      EXPECT_EQ(r[i] + p[i], K(i, n));
      EXPECT_TRUE(is_zero(r[i]) || is_zero(p[i]));  // disjoint supports
    }
    EXPECT_EQ(r[0], Rational(n % 2 == 0 ? 1 : 0));
    EXPECT_TRUE(is_zero(p[n]));
  }
}

TEST(Invariant, FVectorsFollowRecursion) {
  Rng rng(52);
  for (int n = 2; n <= 5; ++n) {
    const auto a = random_field(n, 7, rng);
    for (int j = 1; j <= n + 2; ++j) {
      // F^{(k)}_{k+j} = K_k F^{(k+1)}_{k+j}
      EXPECT_EQ(f_vector(a, 2, j), mc_matrix(a, 2) * f_vector(a, 3, j - 1));
    }
    EXPECT_EQ(f_vector(a, 4, 0), r_vector(a, 4));
  }
}

TEST(Invariant, CramerDeterminantsMatchLeibniz) {
  Rng rng(53);
  for (int n = 2; n <= 5; ++n) {
    const auto a = random_field(n, 7, rng);
    EXPECT_EQ(cramer_denominator(a, 1), oracle::leibniz_determinant(cramer_matrix(a, 1)));
    auto F = f_vectors(a, 1, n + 2);
    for (int i = 0; i <= n; ++i) {
      auto cols = F;
      cols[i] = F[n + 1];
      cols.pop_back();
      EXPECT_EQ(cramer_numerator(a, 1, i), oracle::leibniz_determinant(Matrix<Rational>::from_columns(cols)));
    }
  }
}

TEST(Invariant, ExactMapMatchesHyperplaneDefinition) {
  Rng rng(54);
  for (int n = 2; n <= 6; ++n)
    for (int N : {5, 7, 9, 11}) {
      if (!coprime(N, n + 1)) continue;
      const auto a = generate(n, N, rng).field;
      EXPECT_EQ(pentagram_map_invariants(a), oracle::map_by_hyperplanes(a)) << "n=" << n << " N=" << N;
    }
}

TEST(Invariant, LambdaRatiosSatisfyWindowEquation) {
  Rng rng(55);
  for (int n = 2; n <= 6; ++n) {
    const int N = coprime_N(n);
    const auto a = generate(n, N, rng).field;
    const auto D = cramer_denominators(a);
    const auto mu = lambda_ratios_from_denominators(D, n);
    // prod_{r=0}^{n} lambda_{k+r} * D_k is k-independent
    std::vector<Rational> c(N);
    for (int k = 0; k < N; ++k) {
      c[k] = D[k];
      for (int r = 0; r <= n; ++r) c[k] *= mu[(k + r) % N];
    }
    for (int k = 1; k < N; ++k) EXPECT_EQ(c[k], c[0]);
    for (int i = 0; i <= n; ++i) EXPECT_EQ(lambda_ratio(a, 2, i), mu[(2 + n + 1) % N] / mu[(2 + i) % N]);
  }
}

TEST(Invariant, FloatLambdaSolve) {
  Rng rng(56);
  for (int n = 2; n <= 6; ++n) {
    const int N = coprime_N(n);
    const auto a = generate(n, N, rng).field;
    std::vector<double> lambda;
    try {
      lambda = lambda_solve_float(a);
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::NoRealSolution);
      continue;
    }
    for (long k = 0; k < N; ++k) {
      double prod = cramer_denominator(a, k).get_d();
      for (int r = 0; r <= n; ++r) prod *= lambda[(k + r) % N];
      EXPECT_NEAR(prod, 1.0, 1e-10);
    }
  }
}

TEST(Invariant, SerialAndParallelIdentical) {
  Rng rng(57);
  for (int n = 2; n <= 6; ++n) {
    const auto a = generate(n, coprime_N(n), rng).field;
    EXPECT_EQ(pentagram_map_invariants(a), pentagram_map_invariants_serial(a));
    const auto af = to_double(a);
    EXPECT_EQ(pentagram_map_invariants(af), pentagram_map_invariants_serial(af));
  }
}

TEST(Invariant, FloatMapTracksExact) {
  Rng rng(58);
  for (int n = 2; n <= 6; ++n) {
    const auto a = generate(n, coprime_N(n), rng).field;
    const auto exact = pentagram_map_invariants(a);
    const auto approx = pentagram_map_invariants(to_double(a));
    for (long k = 0; k < a.N(); ++k)
      for (int i = 1; i <= n; ++i)
        EXPECT_NEAR(approx(k, i), exact(k, i).get_d(), 1e-9 * std::max(1.0, std::abs(exact(k, i).get_d())));
  }
}

TEST(Invariant, DegenerateFieldRejected) {
  InvariantField<Rational> zero(3, 5);  // n odd, a = 0: r_k = 0, so D_k = 0
  try {
    pentagram_map_invariants(zero);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ZeroDenominator);
  }
  EXPECT_THROW(pentagram_map_invariants(InvariantField<Rational>(2, 6)), Error);  // gcd(6, 3) = 3
}

TEST(Invariant, PentagonIdentityUpToRelabel) {
  Rng rng(59);
  for (int t = 0; t < 10; ++t) {
    const auto a = projective_invariants(random_closed_polygon(2, 5, rng));
    const auto Ta = pentagram_map_invariants(a);
    for (long k = 0; k < 5; ++k)
      for (int i = 1; i <= 2; ++i) EXPECT_EQ(Ta(k, i), a(k - 1, i));
  }
}

TEST(Invariant, TwistedPentagonIsNotFixed) {
  // The identity is a statement about closed pentagons only.
  Rng rng(60);
  const auto a = generate(2, 5, rng).field;
  const auto Ta = pentagram_map_invariants(a);
  bool shifted = true;
  for (long k = 0; k < 5; ++k)
    for (int i = 1; i <= 2; ++i) shifted = shifted && Ta(k, i) == a(k - 1, i);
  EXPECT_FALSE(shifted);
}

TEST(Invariant, DecompositionResidualsAndHats) {
  Rng rng(61);
  for (int n = 2; n <= 6; ++n) {
    const auto a = random_field(n, 7, rng);
    for (long k = 0; k < 7; ++k)
      for (int j = 0; j <= n + 1; ++j) EXPECT_EQ(lemma_failure(a, k, j), "") << "n=" << n;
  }
}

TEST(Invariant, DecompositionSmallCaseByHand) {
  // n = 3, primes for k = 1: F_1 = K_0 r_1 = a3' F_0 + (-a3', 0, a1' + a3' a2, 0).
  Rng rng(62);
  const auto a = random_field(3, 5, rng);
  const auto d1 = f_decomposition(a, 0, 1);
  EXPECT_TRUE(d1.hat);
  ASSERT_EQ(d1.terms.size(), 1u);
  EXPECT_EQ(d1.terms[0].first, 0);
  EXPECT_EQ(d1.terms[0].second, a(1, 3));  // last entry of r_1
  const Vector<Rational> expected{-a(1, 3), Rational(0), a(1, 1) + a(1, 3) * a(0, 2), Rational(0)};
  EXPECT_EQ(d1.residual, expected);
  const auto d2 = f_decomposition(a, 0, 2);
  EXPECT_FALSE(d2.hat);
  EXPECT_EQ(d2.terms.size(), 1u);  // hat residual of F^{(1)}_{3} contributes no new term
  EXPECT_EQ(d2.terms[0].first, 1);
}
