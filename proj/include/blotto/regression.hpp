#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "blotto/ingestion.hpp"

namespace blotto {

// Heteroskedasticity-consistent covariance flavours.
enum class RobustType { HC0, HC1, HC2, HC3 };
std::string_view to_string(RobustType t);

class RankDeficientDesign : public std::runtime_error {
 public:
  explicit RankDeficientDesign(std::string column)
      : std::runtime_error("RankDeficientDesign: column '" + column +
                           "' is collinear with the columns before it"),
        column_(std::move(column)) {}
  const std::string& column() const { return column_; }

 private:
  std::string column_;
};

struct RegressionFit {
  std::vector<std::string> names;
  Eigen::VectorXd coefficients;
  RobustType robust_type = RobustType::HC1;
  Eigen::VectorXd robust_se;
  Eigen::VectorXd t_values;  // coefficient / robust SE
  Eigen::VectorXd p_values;  // two-sided, Student t with n - p df
  Eigen::VectorXd fitted;
  Eigen::VectorXd residuals;
  int observations = 0;
  int df_residual = 0;
  double r_squared = 0;
  double adj_r_squared = 0;
  double residual_se = 0;
  double f_statistic = 0;  // classical overall F (regressors vs intercept only)
  double f_p_value = 0;

  // "***" p < 0.01, "**" p < 0.05, "*" p < 0.1.
  static std::string stars(double p);
  std::size_t index_of(std::string_view name) const;  // throws std::out_of_range
};

// Ordinary least squares through a Householder QR of `x`, which must contain
// an intercept column first. Throws RankDeficientDesign naming the first
// column that adds no rank.
RegressionFit fit_ols(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                      std::vector<std::string> names, RobustType robust = RobustType::HC1);

// Sandwich covariance for an existing fit's design.
Eigen::MatrixXd robust_covariance(const Eigen::MatrixXd& x, const Eigen::VectorXd& residuals,
                                  RobustType type);

// One participant-round observation.
struct RegressionRecord {
  std::string participant_id;
  double y = 0;   // points in the round
  int level = 0;  // regression_level(): 0 reference, 1..4, 5 for Level 5+
  int age = 0;
  bool female = false;
  Education education = Education::Higher;
  Field field = Field::HumSocOther;
  Employment employment = Employment::NotWorking;
};

struct Design {
  Eigen::MatrixXd x;
  Eigen::VectorXd y;
  std::vector<std::string> names;
};

// Intercept, Level 1..4, Level 5+, Age, Age^2, Female, Doctoral degree,
// Secondary Education, Economics and Management, STEM, Student, Employed.
// References: Level 0, Higher education, Humanities/Social/Other, Not working.
Design build_design(std::span<const RegressionRecord> records);

RegressionFit fit_performance_regression(std::span<const RegressionRecord> records,
                                         RobustType robust = RobustType::HC1);

}  // namespace blotto
