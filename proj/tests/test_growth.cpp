#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "mttdl/error.hpp"
#include "mttdl/growth.hpp"

using namespace mttdl;

constexpr double kInf = std::numeric_limits<double>::infinity();

TEST(Logistic, StartsAtLambda0) {
  for (double r : {0.0, 1.0, 20.0}) {
    for (double cap : {1e-3, 0.1, kInf}) {
      EXPECT_DOUBLE_EQ(logistic_lambda({4e-6, r, cap}, 0), 4e-6);
    }
  }
}

TEST(Logistic, ExponentialWithoutCap) {
  EXPECT_NEAR(logistic_lambda({4e-6, 1.0, kInf}, 3), 3.2e-5, 1e-20);
  EXPECT_NEAR(logistic_lambda({4e-6, 20.0, kInf}, 2), 4e-6 * 441.0, 1e-18);
}

TEST(Logistic, HugeCapApproachesExponential) {
  const GrowthSpec capped{4e-6, 2.0, 4e-6 * 1e12};
  const GrowthSpec open{4e-6, 2.0, kInf};
  for (int i = 0; i <= 6; ++i) {
    EXPECT_NEAR(logistic_lambda(capped, i) / logistic_lambda(open, i), 1.0, 1e-6) << i;
  }
}

TEST(Logistic, SaturatesMonotonically) {
  const GrowthSpec spec{4e-6, 20.0, 0.1};
  double prev = 0.0;
  for (int i = 0; i < 60; ++i) {
    const double l = logistic_lambda(spec, i);
    EXPECT_GE(l, prev);
    EXPECT_LE(l, 0.1);
    prev = l;
  }
  EXPECT_NEAR(prev, 0.1, 1e-12);
}

TEST(Logistic, MatchesTextbookForm) {
  const GrowthSpec spec{4e-6, 5.0, 3e-2};
  const double rs = std::log(6.0);
  for (int i = 0; i <= 8; ++i) {
    const double e = std::exp(i * rs);
    const double textbook = spec.lambda0 * e / (1 + (e - 1) * spec.lambda0 / spec.lambda_max);
    EXPECT_NEAR(logistic_lambda(spec, i) / textbook, 1.0, 1e-13);
  }
}

TEST(Logistic, RejectsBadSpecs) {
  EXPECT_THROW(logistic_lambda({0.0, 1.0, kInf}, 1), Error);
  EXPECT_THROW(logistic_lambda({1e-6, -1.0, kInf}, 1), Error);
  EXPECT_THROW(logistic_lambda({1e-6, 1.0, 1e-7}, 1), Error);
  EXPECT_THROW(logistic_lambda({1e-6, 1.0, kInf}, -1), Error);
}

TEST(LambdaVector, Shapes) {
  const auto flat = build_lambda_vector({4e-6, 0.0, kInf}, 4);
  ASSERT_EQ(flat.size(), 5u);
  for (double l : flat) EXPECT_DOUBLE_EQ(l, 4e-6);

  const auto one = build_lambda_vector({2e-6, 3.0, kInf}, 1);
  ASSERT_EQ(one.size(), 2u);
  EXPECT_DOUBLE_EQ(one[1], 8e-6);

  const auto logistic = build_lambda_vector({4e-6, 20.0, 0.1}, 5);
  for (std::size_t i = 1; i < logistic.size(); ++i) EXPECT_GT(logistic[i], logistic[i - 1]);
  EXPECT_LT(logistic.back(), 0.1);
  EXPECT_GT(logistic.back(), 0.09);

  EXPECT_THROW(build_lambda_vector({4e-6, 0.0, kInf}, 0), Error);
}

TEST(MuVector, Policies) {
  EXPECT_EQ(build_mu_vector(4.0, 3, RepairPolicy::Concurrent), (std::vector<double>{4.0, 4.0, 4.0}));
  const auto h = build_mu_vector(6.0, 3, RepairPolicy::Homogeneous);
  EXPECT_DOUBLE_EQ(h[0], 6.0);
  EXPECT_DOUBLE_EQ(h[1], 3.0);
  EXPECT_DOUBLE_EQ(h[2], 2.0);
  const auto spread = apply_repair_policy({1.0, 4.0, 9.0}, RepairPolicy::Homogeneous);
  EXPECT_DOUBLE_EQ(spread[1], 2.0);
  EXPECT_DOUBLE_EQ(spread[2], 3.0);
}

namespace {

const std::vector<double> kMds{1.0, 1.61, 2.22, 2.83, 3.44, 4.06, 4.67};
const std::vector<double> kPyramid{1.0, 1.28, 1.56, 1.99, 2.59, 3.29, 3.83};

}  // namespace

TEST(RepairRate, SameTablesGiveDeltaMu) {
  const RepairSpec spec{1.0 / 168, 20.0, kMds, kMds};
  for (int j = 0; j < 6; ++j) EXPECT_EQ(repair_rate(spec, j), 20.0 / 168);
  const RepairSpec flat{2.0, 3.0, {1.0, 1.0}, {1.0, 1.0}};
  EXPECT_EQ(repair_rate(flat, 0), 6.0);
}

TEST(RepairRate, PyramidSecondEntry) {
  const RepairSpec spec{1.0 / 168, 20.0, kMds, kPyramid};
  EXPECT_NEAR(repair_rate(spec, 1), 20.0 / 168 * std::log(2 * 2.22) / std::log(2 * 1.56), 1e-15);
}

TEST(RepairRate, CheaperReadsRepairFaster) {
  const RepairSpec spec{1.0 / 168, 20.0, kMds, kPyramid};
  const auto v = build_repair_vector(spec, 6);
  ASSERT_EQ(v.size(), 6u);
  for (double mu : v) EXPECT_GT(mu, 20.0 / 168);
}

TEST(RepairRate, Errors) {
  EXPECT_THROW(repair_rate({1.0, 1.0, kMds, {1.0, 1.0, 0.5, 1.0, 1.0, 1.0, 1.0}}, 1), Error);
  EXPECT_THROW(repair_rate({1.0, 1.0, kMds, kPyramid}, 6), Error);
  EXPECT_THROW(repair_rate({0.0, 1.0, kMds, kPyramid}, 0), Error);
  EXPECT_THROW(repair_rate({1.0, 1.0, kMds, {1.0, 1.0}}, 0), Error);
  try {
    repair_rate({1.0, 1.0, {1.0, 2.0}, {1.0, 1.0}}, 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DomainError);
  }
}
