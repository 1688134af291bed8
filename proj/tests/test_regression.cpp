#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "blotto/regression.hpp"
#include "ols_oracle.hpp"

using namespace blotto;
using namespace ols_oracle;

TEST(Ols, PerfectLine) {
  Eigen::MatrixXd x(5, 2);
  Eigen::VectorXd y(5);
  for (int i = 0; i < 5; ++i) {
    x(i, 0) = 1;
    x(i, 1) = i;
    y[i] = 2 + 3 * i;
  }
  const auto fit = fit_ols(x, y, {"const", "x"});
  EXPECT_NEAR(fit.coefficients[0], 2.0, 1e-12);
  EXPECT_NEAR(fit.coefficients[1], 3.0, 1e-12);
  EXPECT_NEAR(fit.r_squared, 1.0, 1e-12);
}

TEST(Ols, AgreesWithNormalEquationsAndSandwich) {
  Eigen::MatrixXd x;
  Eigen::VectorXd y;
  synthetic(x, y);
  const auto o = oracle(x, y);
  const std::vector<std::pair<RobustType, const std::vector<double>*>> kinds = {
      {RobustType::HC0, &o.hc0}, {RobustType::HC1, &o.hc1}, {RobustType::HC2, &o.hc2},
      {RobustType::HC3, &o.hc3}};
  for (const auto& [kind, se] : kinds) {
    const auto fit = fit_ols(x, y, names(6), kind);
    for (int k = 0; k < 6; ++k) {
      EXPECT_NEAR(fit.coefficients[k], o.beta[static_cast<std::size_t>(k)], 1e-8);
      EXPECT_NEAR(fit.robust_se[k], (*se)[static_cast<std::size_t>(k)], 1e-8)
          << to_string(kind) << " k=" << k;
    }
  }
}

TEST(Ols, FrozenReferenceValues) {
  Eigen::MatrixXd x;
  Eigen::VectorXd y;
  synthetic(x, y);
  const std::vector<double> beta = {3.087336335200896,   1.930043710646506,  -0.5408887759854045,
                                    -0.2350510236642531, 0.5089029025962332, -1.143625920318829};
  const std::vector<std::vector<double>> se = {
      {2.291649512992279, 0.1777112149692468, 0.19040097581097445, 0.1764113690320897,
       0.20421522851926757, 0.20187603967069703},
      {2.4429065890296986, 0.1894407916793465, 0.20296812218853508, 0.1880551512545774,
       0.21769416505516268, 0.21520058136413123},
      {2.4551402069765937, 0.19034257449375197, 0.20451427570567263, 0.18970276075996687,
       0.21944754277369807, 0.21577210022510038},
      {2.63170182913415, 0.20405531759015288, 0.21983656487435638, 0.20413233014457807,
       0.23598961771651272, 0.23078407157510392}};
  const std::vector<double> p_hc1 = {0.2129579582439274,   3.748394036279143e-13, 0.010726002229173894,
                                     0.21794174541131714,  0.024015024523383652,  3.3941377120129243e-06};
  const RobustType kinds[] = {RobustType::HC0, RobustType::HC1, RobustType::HC2, RobustType::HC3};
  for (int t = 0; t < 4; ++t) {
    const auto fit = fit_ols(x, y, names(6), kinds[t]);
    for (int k = 0; k < 6; ++k) {
      EXPECT_NEAR(fit.coefficients[k], beta[static_cast<std::size_t>(k)], 1e-9);
      EXPECT_NEAR(fit.robust_se[k], se[static_cast<std::size_t>(t)][static_cast<std::size_t>(k)], 1e-9);
    }
    if (kinds[t] == RobustType::HC1) {
      for (int k = 0; k < 6; ++k) {
        const double want = p_hc1[static_cast<std::size_t>(k)];
        EXPECT_NEAR(fit.p_values[k], want, 1e-9 + 1e-7 * want);
      }
      EXPECT_NEAR(fit.r_squared, 0.7078939291939905, 1e-12);
      EXPECT_NEAR(fit.adj_r_squared, 0.6747000575114894, 1e-12);
      EXPECT_NEAR(fit.f_statistic, 21.32604282998338, 1e-9);
      EXPECT_NEAR(fit.f_p_value, 9.003483655422614e-11, 1e-15);
      EXPECT_NEAR(fit.residual_se, 4.181362129984076, 1e-10);
      EXPECT_EQ(fit.df_residual, 44);
      EXPECT_EQ(RegressionFit::stars(fit.p_values[1]), "***");
      EXPECT_EQ(RegressionFit::stars(fit.p_values[4]), "**");
      EXPECT_EQ(RegressionFit::stars(fit.p_values[0]), "");
    }
  }
}

TEST(Ols, ResidualsOrthogonalToColumns) {
  Eigen::MatrixXd x;
  Eigen::VectorXd y;
  synthetic(x, y);
  const auto fit = fit_ols(x, y, names(6));
  const Eigen::VectorXd g = x.transpose() * fit.residuals;
  for (int k = 0; k < 6; ++k) EXPECT_NEAR(g[k], 0.0, 1e-8);
}

TEST(Ols, Stars) {
  EXPECT_EQ(RegressionFit::stars(0.009), "***");
  EXPECT_EQ(RegressionFit::stars(0.01), "**");
  EXPECT_EQ(RegressionFit::stars(0.049), "**");
  EXPECT_EQ(RegressionFit::stars(0.05), "*");
  EXPECT_EQ(RegressionFit::stars(0.0999), "*");
  EXPECT_EQ(RegressionFit::stars(0.1), "");
}

TEST(Ols, RankDeficiencyNamesColumn) {
  Eigen::MatrixXd x;
  Eigen::VectorXd y;
  synthetic(x, y);
  x.col(4) = 2.0 * x.col(2) - x.col(1);
  try {
    fit_ols(x, y, names(6));
    FAIL();
  } catch (const RankDeficientDesign& e) {
    EXPECT_EQ(e.column(), "x4");
  }
}

TEST(PerformanceDesign, ColumnsAndReferences) {
  RegressionRecord r;
  r.y = 150;
  r.level = 5;
  r.age = 30;
  r.female = true;
  r.education = Education::Secondary;
  r.field = Field::STEM;
  r.employment = Employment::Working;
  RegressionRecord base;  // all references
  base.age = 20;
  const std::vector<RegressionRecord> recs = {r, base};
  const auto d = build_design(recs);
  ASSERT_EQ(d.x.cols(), 15);
  EXPECT_EQ(d.names[5], "Level 5+");
  Eigen::VectorXd want(15);
  want << 1, 0, 0, 0, 0, 1, 30, 900, 1, 0, 1, 0, 1, 0, 1;
  EXPECT_EQ(d.x.row(0).transpose(), want);
  Eigen::VectorXd ref(15);
  ref << 1, 0, 0, 0, 0, 0, 20, 400, 0, 0, 0, 0, 0, 0, 0;
  EXPECT_EQ(d.x.row(1).transpose(), ref);
}

TEST(PerformanceDesign, EmptyLevelIsRankDeficient) {
  std::vector<RegressionRecord> recs;
  for (int i = 0; i < 40; ++i) {
    RegressionRecord r;
    r.y = i;
    r.level = i % 3 == 0 ? 0 : (i % 3 == 1 ? 4 : 5);  // no Level 1..3
    r.age = 18 + i;
    r.female = i % 2;
    r.education = static_cast<Education>(i % 3);
    r.field = static_cast<Field>((i / 3) % 3);
    r.employment = static_cast<Employment>((i / 2) % 3);
    recs.push_back(r);
  }
  try {
    fit_performance_regression(recs);
    FAIL();
  } catch (const RankDeficientDesign& e) {
    EXPECT_EQ(e.column(), "Level 1");
  }
}
