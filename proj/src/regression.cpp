#include "blotto/regression.hpp"

#include <cmath>
#include <limits>

#include <boost/math/distributions/fisher_f.hpp>
#include <boost/math/distributions/students_t.hpp>

namespace blotto {

std::string_view to_string(RobustType t) {
  switch (t) {
    case RobustType::HC0: return "HC0";
    case RobustType::HC1: return "HC1";
    case RobustType::HC2: return "HC2";
    case RobustType::HC3: return "HC3";
  }
  return "HC1";
}

std::string RegressionFit::stars(double p) {
  if (p < 0.01) return "***";
  if (p < 0.05) return "**";
  if (p < 0.1) return "*";
  return "";
}

std::size_t RegressionFit::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i] == name) return i;
  }
  throw std::out_of_range("no coefficient named " + std::string(name));
}

namespace {

void require_full_rank(const Eigen::MatrixXd& x, const std::vector<std::string>& names) {
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(x);
  if (qr.rank() == x.cols()) return;
  for (Eigen::Index j = 1; j <= x.cols(); ++j) {
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> partial(x.leftCols(j));
    if (partial.rank() < j) throw RankDeficientDesign(names[static_cast<std::size_t>(j - 1)]);
  }
  throw RankDeficientDesign(names.back());
}

}  // namespace

Eigen::MatrixXd robust_covariance(const Eigen::MatrixXd& x, const Eigen::VectorXd& residuals,
                                  RobustType type) {
  const auto n = x.rows();
  const auto p = x.cols();
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(x);
  const Eigen::MatrixXd r = qr.matrixQR().topLeftCorner(p, p).triangularView<Eigen::Upper>();
  const Eigen::MatrixXd r_inv =
      r.triangularView<Eigen::Upper>().solve(Eigen::MatrixXd::Identity(p, p));
  const Eigen::MatrixXd bread = r_inv * r_inv.transpose();  // (X'X)^-1

  Eigen::VectorXd weight = residuals.array().square();
  if (type == RobustType::HC2 || type == RobustType::HC3) {
    const Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(n, p);
    const Eigen::VectorXd leverage = q.rowwise().squaredNorm();
    const Eigen::ArrayXd one_minus_h = 1.0 - leverage.array();
    if (type == RobustType::HC2) {
      weight = (weight.array() / one_minus_h).matrix();
    } else {
      weight = (weight.array() / one_minus_h.square()).matrix();
    }
  }
  const Eigen::MatrixXd meat = x.transpose() * weight.asDiagonal() * x;
  Eigen::MatrixXd cov = bread * meat * bread;
  if (type == RobustType::HC1) cov *= static_cast<double>(n) / static_cast<double>(n - p);
  return cov;
}

RegressionFit fit_ols(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                      std::vector<std::string> names, RobustType robust) {
  const auto n = x.rows();
  const auto p = x.cols();
  if (y.size() != n) throw std::invalid_argument("fit_ols: y and x row counts differ");
  if (static_cast<Eigen::Index>(names.size()) != p) {
    throw std::invalid_argument("fit_ols: one name per column is required");
  }
  if (n <= p) throw std::invalid_argument("fit_ols: need more observations than coefficients");
  require_full_rank(x, names);

  RegressionFit fit;
  fit.names = std::move(names);
  fit.robust_type = robust;
  fit.observations = static_cast<int>(n);
  fit.df_residual = static_cast<int>(n - p);

  Eigen::HouseholderQR<Eigen::MatrixXd> qr(x);
  fit.coefficients = qr.solve(y);
  fit.fitted = x * fit.coefficients;
  fit.residuals = y - fit.fitted;

  const double ssr = fit.residuals.squaredNorm();
  const double sst = (y.array() - y.mean()).square().sum();
  const double df_model = static_cast<double>(p - 1);
  const double df_resid = static_cast<double>(n - p);
  fit.r_squared = sst > 0 ? 1.0 - ssr / sst : 1.0;
  fit.adj_r_squared = 1.0 - (1.0 - fit.r_squared) * static_cast<double>(n - 1) / df_resid;
  fit.residual_se = std::sqrt(ssr / df_resid);

  const boost::math::students_t t_dist(df_resid);
  const Eigen::MatrixXd cov = robust_covariance(x, fit.residuals, robust);
  fit.robust_se = cov.diagonal().cwiseSqrt();
  fit.t_values = fit.coefficients.cwiseQuotient(fit.robust_se);
  fit.p_values.resize(p);
  for (Eigen::Index i = 0; i < p; ++i) {
    const double t = fit.t_values[i];
    fit.p_values[i] = std::isfinite(t) ? 2.0 * boost::math::cdf(boost::math::complement(t_dist, std::abs(t)))
                                       : 0.0;
  }

  if (df_model > 0 && ssr > 0) {
    fit.f_statistic = ((sst - ssr) / df_model) / (ssr / df_resid);
    const boost::math::fisher_f f_dist(df_model, df_resid);
    fit.f_p_value = boost::math::cdf(boost::math::complement(f_dist, fit.f_statistic));
  } else {
    fit.f_statistic = std::numeric_limits<double>::infinity();
    fit.f_p_value = 0.0;
  }
  return fit;
}

Design build_design(std::span<const RegressionRecord> records) {
  Design d;
  d.names = {"(Intercept)",
             "Level 1",
             "Level 2",
             "Level 3",
             "Level 4",
             "Level 5+",
             "Age",
             "Age^2",
             "Female",
             "Doctoral degree",
             "Secondary Education",
             "Economics and Management",
             "STEM",
             "Student",
             "Employed"};
  const auto n = static_cast<Eigen::Index>(records.size());
  d.x = Eigen::MatrixXd::Zero(n, static_cast<Eigen::Index>(d.names.size()));
  d.y.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& r = records[static_cast<std::size_t>(i)];
    if (r.level < 0 || r.level > 5) throw std::invalid_argument("regression level must be 0..5");
    d.y[i] = r.y;
    d.x(i, 0) = 1.0;
    if (r.level >= 1) d.x(i, r.level) = 1.0;
    d.x(i, 6) = r.age;
    d.x(i, 7) = static_cast<double>(r.age) * r.age;
    d.x(i, 8) = r.female ? 1.0 : 0.0;
    d.x(i, 9) = r.education == Education::Doctoral ? 1.0 : 0.0;
    d.x(i, 10) = r.education == Education::Secondary ? 1.0 : 0.0;
    d.x(i, 11) = r.field == Field::EconManagement ? 1.0 : 0.0;
    d.x(i, 12) = r.field == Field::STEM ? 1.0 : 0.0;
    d.x(i, 13) = r.employment == Employment::Student ? 1.0 : 0.0;
    d.x(i, 14) = r.employment == Employment::Working ? 1.0 : 0.0;
  }
  return d;
}

RegressionFit fit_performance_regression(std::span<const RegressionRecord> records,
                                         RobustType robust) {
  auto d = build_design(records);
  return fit_ols(d.x, d.y, std::move(d.names), robust);
}

}  // namespace blotto
