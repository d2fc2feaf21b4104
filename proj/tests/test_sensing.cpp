#include <gtest/gtest.h>

#include <random>

#include "colrep/sensing.hpp"
#include "oracles.hpp"

using namespace colrep;

namespace {

CodewordMatrix example1_reduced(int p) {
  const auto A = enumerate_codewords(rs2_generator(FieldSpec::make(p), first_points(static_cast<std::size_t>(p))));
  const auto P = enumerate_codewords(rs2_generator(FieldSpec::make(p, 2), first_points(static_cast<std::size_t>(p))));
  return coset_reduce(replace_code(A, P).columns, p);
}

}  // namespace

TEST(Sensing, CosetReduceSingleCoset) {
  CodewordMatrix C(3, 3);
  C << 0, 1, 2, 0, 1, 2, 0, 1, 2;
  const auto R = coset_reduce(C, 3);
  ASSERT_EQ(R.cols(), 1);
  EXPECT_TRUE((R.array() == 0).all());
}

TEST(Sensing, CosetReduceExampleOne) {
  const auto A = enumerate_codewords(rs2_generator(FieldSpec::make(3), first_points(3)));
  const auto P = enumerate_codewords(rs2_generator(FieldSpec::make(3, 2), first_points(3)));
  const auto big = replace_code(A, P).columns;
  ASSERT_EQ(big.cols(), 81);
  const auto R = coset_reduce(big, 3);
  EXPECT_EQ(R.cols(), 27);
  EXPECT_EQ(R.rows(), 9);
  EXPECT_TRUE((R.row(0).array() == 0).all());
  // No two kept columns differ by a multiple of the all-one vector.
  for (Eigen::Index a = 0; a < R.cols(); ++a)
    for (Eigen::Index b = a + 1; b < R.cols(); ++b) {
      const auto shift = (R(0, b) + 3 - R(0, a)) % 3;
      bool same_coset = true;
      for (Eigen::Index r = 0; r < R.rows(); ++r) same_coset &= (R(r, b) + 3 - R(r, a)) % 3 == shift;
      EXPECT_FALSE(same_coset);
    }
}

TEST(Sensing, CosetReduceNeedsAllOne) {
  CodewordMatrix C(2, 3);
  C << 0, 1, 2, 0, 2, 1;
  EXPECT_THROW(coset_reduce(C, 3), reduction_error);
}

TEST(Sensing, Exponentiate) {
  CodewordMatrix Z = CodewordMatrix::Zero(4, 1);
  const auto E = exponentiate(Z, 5);
  for (Eigen::Index i = 0; i < 4; ++i) EXPECT_NEAR(std::abs(E(i, 0) - 0.5), 0.0, 1e-15);

  CodewordMatrix B(4, 2);
  B << 0, 1, 1, 0, 1, 1, 0, 0;
  const auto Eb = exponentiate(B, 2);
  for (Eigen::Index j = 0; j < 2; ++j)
    for (Eigen::Index i = 0; i < 4; ++i) {
      EXPECT_NEAR(Eb(i, j).imag(), 0.0, 1e-15);
      EXPECT_NEAR(Eb(i, j).real(), B(i, j) ? -0.5 : 0.5, 1e-15);
    }
}

TEST(Sensing, InnerProductsMatchCharacterOracle) {
  for (int p : {3, 5}) {
    const auto R = example1_reduced(p);
    const auto E = exponentiate(R, p);
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<Eigen::Index> pick(0, R.cols() - 1);
    for (int t = 0; t < 200; ++t) {
      const auto i = pick(rng), j = pick(rng);
      const auto ip = E.col(i).dot(E.col(j));  // conj(a_i) . a_j
      EXPECT_NEAR(std::abs(ip - oracle::exponentiated_inner_product(R, i, j, p)), 0.0, 1e-10);
    }
  }
}

TEST(Sensing, CoherenceBasics) {
  EXPECT_NEAR(coherence(ComplexMatrix::Identity(5, 5)).exact, 0.0, 1e-15);
  EXPECT_THROW(coherence(ComplexMatrix::Ones(3, 1)), domain_error);
  ComplexMatrix Z = ComplexMatrix::Ones(3, 3);
  Z.col(1).setZero();
  EXPECT_THROW(coherence(Z), normalization_error);

  ComplexMatrix A(2, 3);
  A << 1, 0, 1, 0, 1, 1;
  const auto rep = coherence(A);
  EXPECT_NEAR(rep.exact, 1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_EQ(rep.argmax, (std::pair<Eigen::Index, Eigen::Index>{0, 2}));
  EXPECT_EQ(rep.method.pairs, 3u);
}

TEST(Sensing, CoherenceMatchesNaiveOracle) {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> n(0, 1);
  ComplexMatrix A(7, 300);  // spans two Gram blocks
  for (Eigen::Index j = 0; j < A.cols(); ++j)
    for (Eigen::Index i = 0; i < A.rows(); ++i) A(i, j) = {n(rng), n(rng)};
  EXPECT_NEAR(coherence(A).exact, oracle::coherence(A), 1e-12);
}

TEST(Sensing, SampledCoherenceIsLowerEstimateAndDeterministic) {
  const auto A = construct_example1(3);
  const auto full = coherence(A.entries()).exact;
  const auto s1 = coherence_sampled(A.entries(), 5000, 9);
  const auto s2 = coherence_sampled(A.entries(), 5000, 9);
  EXPECT_LE(s1.exact, full + 1e-12);
  EXPECT_EQ(s1.exact, s2.exact);
  EXPECT_EQ(s1.argmax, s2.argmax);
  EXPECT_TRUE(s1.method.sampled);
  set_max_threads(1);
  EXPECT_EQ(coherence_sampled(A.entries(), 5000, 9).exact, s1.exact);
  set_max_threads(0);
}

TEST(Sensing, CodeBound) {
  EXPECT_NEAR(coherence_bound_from_code(2, 8, 4), 0.0, 1e-15);
  EXPECT_NEAR(coherence_bound_from_code(5, 25, 16), 2.0, 1e-15);
  EXPECT_NEAR(coherence_bound_from_code(2, 8, 3), 0.25, 1e-15);
}

TEST(Sensing, Welch) {
  EXPECT_NEAR(welch_bound(25, 125), 0.1796053020267749, 1e-15);
  EXPECT_NEAR(welch_bound(4, 5), 0.25, 1e-15);
  EXPECT_NEAR(welch_bound(25, 1'000'000), 0.2, 0.002);
  EXPECT_THROW(welch_bound(5, 5), domain_error);
  EXPECT_THROW(welch_bound(0, 5), domain_error);
}

TEST(Sensing, RipEstimate) {
  auto r = rip_estimate(0.2);
  ASSERT_TRUE(r.k_max);
  EXPECT_EQ(*r.k_max, 6);
  EXPECT_NEAR(r.delta.at(6), 1.0, 1e-15);
  EXPECT_EQ(*rip_estimate(1.0).k_max, 2);
  EXPECT_NEAR(rip_estimate(1.0).delta.at(2), 1.0, 1e-15);
  EXPECT_EQ(*rip_estimate(0.25).k_max, 5);
  EXPECT_FALSE(rip_estimate(0.0).k_max);
  EXPECT_EQ(*rip_estimate(1.0 / 5.0 + 1e-15).k_max, 6);
  EXPECT_THROW(rip_estimate(-0.1), domain_error);
}

TEST(Sensing, ExampleOneCoherence) {
  for (int p : {2, 3, 5}) {
    const auto A = construct_example1(p);
    EXPECT_EQ(A.rows(), p * p);
    EXPECT_EQ(A.cols(), p * p * p);
    EXPECT_TRUE(A.has_unit_columns());
    EXPECT_NEAR(oracle::coherence(A.entries()), 1.0 / p, 1e-9);
    EXPECT_NEAR(coherence(A.entries()).exact, 1.0 / p, 1e-9);
    EXPECT_EQ(*A.claimed_coherence(), 1.0 / p);
  }
  EXPECT_TRUE(construct_example1(2).is_real());
}

TEST(Sensing, ExampleTwoCoherence) {
  for (int p : {3, 5}) {
    const auto A = construct_example2(p);
    EXPECT_EQ(A.rows(), p * (p - 1));
    EXPECT_EQ(A.cols(), p * p * p);
    EXPECT_NEAR(oracle::coherence(A.entries()), 1.0 / (p - 1), 1e-9);
  }
  // Fewer rows than the 24 x 125 alternative at the same width.
  EXPECT_LT(construct_example2(5).rows(), 24);
}

TEST(Sensing, AnalyzeReportsBounds) {
  const auto A = construct_example1(5);
  const auto rep = analyze(A);
  EXPECT_FALSE(rep.method.sampled);
  EXPECT_NEAR(rep.exact, 0.2, 1e-9);
  ASSERT_TRUE(rep.welch);
  EXPECT_GE(rep.exact, *rep.welch);
  EXPECT_NEAR(*rep.ratio_to_welch, 1.1135528725660044, 1e-9);
  ASSERT_TRUE(rep.code_bound);
  EXPECT_NEAR(*rep.code_bound, 2.0, 1e-12);  // N = 25, d = 16

  AnalyzeOptions small{10, 2000, 3};
  const auto s = analyze(A, small);
  EXPECT_TRUE(s.method.sampled);
  EXPECT_EQ(s.method.pairs, 2000u);
  EXPECT_LE(s.exact, 0.2 + 1e-9);
}

TEST(Sensing, ConstructionErrors) {
  EXPECT_THROW(construct_example1(4), domain_error);
  EXPECT_THROW(construct_example1(1), domain_error);
  EXPECT_THROW(construct_example2(2), domain_error);
  EXPECT_THROW(construct_example2(9), domain_error);
}
