#include "glsn/econometrics.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <boost/math/distributions/students_t.hpp>
#include <boost/math/special_functions/beta.hpp>
#include <cmath>
#include <ostream>
#include <set>

#include "glsn/error.hpp"
#include "glsn/format.hpp"
#include "glsn/parallel.hpp"
#include "glsn/summation.hpp"

namespace glsn {

namespace {

constexpr double kRankTolerance = 1e-10;

double mean_of(std::span<const double> v) {
  CompensatedSum sum;
  for (const double x : v) sum += x;
  return sum.value() / static_cast<double>(v.size());
}

double centered_sum_of_squares(std::span<const double> v) {
  const double m = mean_of(v);
  CompensatedSum sum;
  for (const double x : v) sum += (x - m) * (x - m);
  return sum.value();
}

Eigen::MatrixXd with_intercept(const std::vector<std::vector<double>>& columns, std::size_t n) {
  Eigen::MatrixXd x(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(columns.size() + 1));
  x.col(0).setOnes();
  for (std::size_t j = 0; j < columns.size(); ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j + 1)) = columns[j][i];
    }
  }
  return x;
}

Eigen::VectorXd to_vector(std::span<const double> v) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) out(static_cast<Eigen::Index>(i)) = v[i];
  return out;
}

// Smallest/largest singular value of the column-normalized design.
double normalized_condition_ratio(const Eigen::MatrixXd& x) {
  Eigen::MatrixXd scaled = x;
  for (Eigen::Index j = 0; j < scaled.cols(); ++j) {
    const double norm = scaled.col(j).norm();
    if (norm == 0.0) return 0.0;
    scaled.col(j) /= norm;
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(scaled);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0.0) return 0.0;
  return s(s.size() - 1) / s(0);
}

}  // namespace

void DesignMatrix::validate() const {
  if (names.size() != columns.size()) throw Error("design: names and columns differ in count");
  std::set<std::string> unique(names.begin(), names.end());
  if (unique.size() != names.size()) throw Error("design: duplicate column names");
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (columns[j].size() != response.size()) {
      throw Error("design: column '" + names[j] + "' has " + std::to_string(columns[j].size()) +
                  " rows, response has " + std::to_string(response.size()));
    }
    for (const double x : columns[j]) {
      if (!std::isfinite(x)) throw Error("design: non-finite value in column '" + names[j] + "'");
    }
  }
  for (const double y : response) {
    if (!std::isfinite(y)) throw Error("design: non-finite response value");
  }
}

DesignMatrix DesignMatrix::select(std::span<const std::size_t> column_indices) const {
  DesignMatrix out;
  out.response_name = response_name;
  out.response = response;
  out.standardized = standardized;
  for (const auto j : column_indices) {
    out.names.push_back(names.at(j));
    out.columns.push_back(columns.at(j));
  }
  return out;
}

std::vector<double> zscore(std::span<const double> values, const std::string& name) {
  if (values.size() < 2) throw Error("cannot standardize '" + name + "': fewer than 2 values");
  const double m = mean_of(values);
  const double sd =
      std::sqrt(centered_sum_of_squares(values) / static_cast<double>(values.size() - 1));
  if (!(sd > 0.0) || sd <= 1e-300) {
    throw Error("cannot standardize constant column '" + name + "'");
  }
  std::vector<double> out(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) out[i] = (values[i] - m) / sd;
  return out;
}

DesignMatrix standardize(const DesignMatrix& design) {
  design.validate();
  DesignMatrix out;
  out.names = design.names;
  out.response_name = design.response_name;
  out.standardized = true;
  for (std::size_t j = 0; j < design.columns.size(); ++j) {
    out.columns.push_back(zscore(design.columns[j], design.names[j]));
  }
  out.response = zscore(design.response, design.response_name.empty() ? "response"
                                                                      : design.response_name);
  return out;
}

double RegressionReport::max_vif() const {
  double m = 1.0;
  for (const double v : vif) m = std::max(m, v);
  return vif.empty() ? std::numeric_limits<double>::quiet_NaN() : m;
}

const Coefficient& RegressionReport::coefficient(const std::string& name) const {
  for (const auto& c : coefficients) {
    if (c.name == name) return c;
  }
  throw Error("no coefficient named '" + name + "'");
}

double aic(std::size_t n_obs, double rss, std::size_t k_params) {
  const double n = static_cast<double>(n_obs);
  return n * std::log(rss / n) + 2.0 * static_cast<double>(k_params);
}

double adjusted_r2(double r2, std::size_t n_obs, std::size_t n_vars) {
  const double n = static_cast<double>(n_obs);
  const double k = static_cast<double>(n_vars);
  return 1.0 - (1.0 - r2) * (n - 1.0) / (n - k - 1.0);
}

double student_t_two_sided_p(double t, double df) {
  if (std::isnan(t)) return std::numeric_limits<double>::quiet_NaN();
  if (std::isinf(t)) return 0.0;
  if (!(df > 0.0)) throw Error("t distribution needs positive degrees of freedom");
  return boost::math::ibeta(df / 2.0, 0.5, df / (df + t * t));
}

double student_t_quantile(double probability, double df) {
  if (!(df > 0.0)) throw Error("t distribution needs positive degrees of freedom");
  return boost::math::quantile(boost::math::students_t_distribution<double>(df), probability);
}

RegressionReport ols_fit(const DesignMatrix& design) {
  design.validate();
  const std::size_t n = design.n_obs();
  const std::size_t p = design.n_vars();
  const std::size_t k = p + 1;
  if (n <= k) {
    throw Error("regression needs more observations (" + std::to_string(n) +
                ") than parameters (" + std::to_string(k) + ")");
  }
  const Eigen::MatrixXd x = with_intercept(design.columns, n);
  const Eigen::VectorXd y = to_vector(design.response);
  const double tss = centered_sum_of_squares(design.response);
  if (!(tss > 0.0)) throw Error("regression response '" + design.response_name + "' is constant");
  if (normalized_condition_ratio(x) < kRankTolerance) {
    throw Error("rank-deficient design: exact collinearity among {" +
                join_variables(design.names) + "}");
  }

  const Eigen::HouseholderQR<Eigen::MatrixXd> qr(x);
  const Eigen::VectorXd beta = qr.solve(y);
  const Eigen::VectorXd residuals = y - x * beta;
  CompensatedSum rss_sum;
  for (Eigen::Index i = 0; i < residuals.size(); ++i) rss_sum += residuals(i) * residuals(i);
  const double rss = rss_sum.value();

  const auto kk = static_cast<Eigen::Index>(k);
  const Eigen::MatrixXd r = qr.matrixQR().topLeftCorner(kk, kk).triangularView<Eigen::Upper>();
  const Eigen::MatrixXd r_inv =
      r.triangularView<Eigen::Upper>().solve(Eigen::MatrixXd::Identity(kk, kk));
  const double df = static_cast<double>(n - k);
  const double sigma2 = rss / df;
  const Eigen::MatrixXd covariance = sigma2 * (r_inv * r_inv.transpose());
  const double t_crit = student_t_quantile(0.975, df);

  RegressionReport report;
  report.variables = design.names;
  report.n_obs = n;
  report.k_params = k;
  report.rss = rss;
  report.r2 = std::clamp(1.0 - rss / tss, 0.0, 1.0);
  report.adjusted_r2 = adjusted_r2(report.r2, n, p);
  report.aic = aic(n, rss, k);
  for (std::size_t j = 0; j < k; ++j) {
    const auto jj = static_cast<Eigen::Index>(j);
    Coefficient c;
    c.name = j == 0 ? kInterceptName : design.names[j - 1];
    c.estimate = beta(jj);
    c.std_error = std::sqrt(std::max(0.0, covariance(jj, jj)));
    c.ci95 = {c.estimate - t_crit * c.std_error, c.estimate + t_crit * c.std_error};
    if (c.std_error > 0.0) {
      c.p_value = student_t_two_sided_p(c.estimate / c.std_error, df);
    } else {
      c.p_value = c.estimate == 0.0 ? 1.0 : 0.0;
    }
    report.coefficients.push_back(std::move(c));
  }
  report.vif = vif(design);
  return report;
}

std::vector<double> vif(const DesignMatrix& design) {
  design.validate();
  const std::size_t p = design.n_vars();
  const std::size_t n = design.n_obs();
  if (p == 0) throw Error("VIF needs at least one variable");
  if (p == 1) return {1.0};
  std::vector<double> out(p);
  for (std::size_t j = 0; j < p; ++j) {
    std::vector<std::vector<double>> others;
    for (std::size_t m = 0; m < p; ++m) {
      if (m != j) others.push_back(design.columns[m]);
    }
    const Eigen::MatrixXd x = with_intercept(others, n);
    const Eigen::VectorXd y = to_vector(design.columns[j]);
    const double tss = centered_sum_of_squares(design.columns[j]);
    if (!(tss > 0.0)) {
      out[j] = kInfiniteVif;
      continue;
    }
    const Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(x);
    const Eigen::VectorXd residuals = y - x * cod.solve(y);
    const double rss = residuals.squaredNorm();
    // Squared counterpart of the singular-value rank tolerance.
    if (rss <= tss * kRankTolerance * kRankTolerance) {
      out[j] = kInfiniteVif;
    } else {
      out[j] = std::max(1.0, tss / rss);
    }
  }
  return out;
}

Correlation pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw Error("pearson: inputs differ in length");
  if (x.size() < 3) throw Error("pearson: need at least 3 observations");
  const double mx = mean_of(x);
  const double my = mean_of(y);
  CompensatedSum sxy, sxx, syy;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (!(sxx.value() > 0.0) || !(syy.value() > 0.0)) {
    throw Error("pearson: constant input");
  }
  Correlation c;
  c.n = x.size();
  c.r = std::clamp(sxy.value() / std::sqrt(sxx.value() * syy.value()), -1.0, 1.0);
  const double df = static_cast<double>(x.size() - 2);
  if (std::abs(c.r) >= 1.0) {
    c.p_value = 0.0;
  } else {
    c.p_value = student_t_two_sided_p(c.r * std::sqrt(df / (1.0 - c.r * c.r)), df);
  }
  return c;
}

std::string join_variables(const std::vector<std::string>& variables) {
  std::string out;
  for (std::size_t i = 0; i < variables.size(); ++i) {
    if (i > 0) out += '+';
    out += variables[i];
  }
  return out;
}

namespace {

bool better_model(const CandidateFit& a, const CandidateFit& b) {
  const double aa = a.report->aic;
  const double ab = b.report->aic;
  const double scale = std::max({1.0, std::abs(aa), std::abs(ab)});
  if (std::abs(aa - ab) > 1e-9 * scale) return aa < ab;
  if (a.variables.size() != b.variables.size()) return a.variables.size() < b.variables.size();
  auto na = a.variables;
  auto nb = b.variables;
  std::sort(na.begin(), na.end());
  std::sort(nb.begin(), nb.end());
  return na < nb;
}

}  // namespace

ModelSelection select_model(const DesignMatrix& candidates, const SelectionOptions& options) {
  candidates.validate();
  const std::size_t p = candidates.n_vars();
  if (p < 1 || p > kMaxCandidates) {
    throw Error("model selection needs between 1 and " + std::to_string(kMaxCandidates) +
                " candidates, got " + std::to_string(p));
  }
  if (!(options.vif_threshold > 1.0)) throw Error("VIF threshold must exceed 1");
  const DesignMatrix design = options.standardize ? standardize(candidates) : candidates;

  ModelSelection selection;
  for (std::size_t size = 1; size <= p; ++size) {
    std::vector<std::size_t> combo(size);
    for (std::size_t i = 0; i < size; ++i) combo[i] = i;
    for (;;) {
      CandidateFit fit;
      fit.column_indices = combo;
      for (const auto j : combo) fit.variables.push_back(design.names[j]);
      selection.table.push_back(std::move(fit));
      // Next combination in lexicographic order.
      std::size_t i = size;
      while (i > 0 && combo[i - 1] == p - size + i - 1) --i;
      if (i == 0) break;
      ++combo[i - 1];
      for (std::size_t m = i; m < size; ++m) combo[m] = combo[m - 1] + 1;
    }
  }

  parallel_for(selection.table.size(), [&](std::size_t idx) {
    auto& fit = selection.table[idx];
    try {
      fit.report = ols_fit(design.select(fit.column_indices));
      fit.max_vif = fit.report->max_vif();
      fit.admissible = fit.max_vif < options.vif_threshold;
    } catch (const Error& e) {
      fit.failure = e.what();
      fit.max_vif = kInfiniteVif;
      fit.admissible = false;
    }
  });

  for (std::size_t idx = 0; idx < selection.table.size(); ++idx) {
    const auto& fit = selection.table[idx];
    if (!fit.admissible) continue;
    if (!selection.verdict || better_model(fit, selection.table[*selection.verdict])) {
      selection.verdict = idx;
    }
  }
  return selection;
}

void write_regression_report_csv(std::ostream& out, const ModelSelection& selection) {
  out << "variables,adjusted_r2,aic,max_vif,admissible\n";
  for (const auto& fit : selection.table) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    out << join_variables(fit.variables) << ','
        << format_double(fit.report ? fit.report->adjusted_r2 : nan) << ','
        << format_double(fit.report ? fit.report->aic : nan) << ',' << format_double(fit.max_vif)
        << ',' << (fit.admissible ? "true" : "false") << '\n';
  }
}

void write_coefficients_csv(std::ostream& out, const RegressionReport& report) {
  out << "variable,coef,ci_lo,ci_hi,p_value\n";
  for (const auto& c : report.coefficients) {
    out << c.name << ',' << format_double(c.estimate) << ',' << format_double(c.ci95.lo) << ','
        << format_double(c.ci95.hi) << ',' << format_double(c.p_value) << '\n';
  }
}

}  // namespace glsn
