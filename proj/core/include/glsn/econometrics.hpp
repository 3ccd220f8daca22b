#pragma once

#include <cstddef>
#include <iosfwd>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace glsn {

/// Observations in rows, named explanatory variables in columns, plus the
/// response. Incomplete observations are removed before construction.
struct DesignMatrix {
  std::vector<std::string> names;
  std::vector<std::vector<double>> columns;  // columns[j][row]
  std::string response_name;
  std::vector<double> response;
  bool standardized = false;

  std::size_t n_obs() const { return response.size(); }
  std::size_t n_vars() const { return columns.size(); }

  /// Throws on ragged columns, duplicate names or non-finite cells.
  void validate() const;

  /// Design restricted to the given column indices, in that order.
  DesignMatrix select(std::span<const std::size_t> column_indices) const;
};

/// Z-scores with the sample (n-1) standard deviation. Throws naming `name`
/// when the values are constant.
std::vector<double> zscore(std::span<const double> values, const std::string& name);

/// Z-scores every column and the response.
DesignMatrix standardize(const DesignMatrix& design);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

struct Coefficient {
  std::string name;  // "(intercept)" for the constant term
  double estimate = 0.0;
  double std_error = 0.0;
  Interval ci95;
  double p_value = 1.0;
};

inline constexpr double kInfiniteVif = std::numeric_limits<double>::infinity();
inline constexpr const char* kInterceptName = "(intercept)";

struct RegressionReport {
  std::vector<std::string> variables;
  std::vector<Coefficient> coefficients;  // intercept first, then variables in order
  double r2 = 0.0;
  double adjusted_r2 = 0.0;
  double rss = 0.0;
  double aic = 0.0;
  std::vector<double> vif;  // per variable, kInfiniteVif under exact collinearity
  std::size_t n_obs = 0;
  std::size_t k_params = 0;  // variables + intercept

  double max_vif() const;
  const Coefficient& coefficient(const std::string& name) const;
};

/// N ln(RSS/N) + 2K, K counting the intercept.
double aic(std::size_t n_obs, double rss, std::size_t k_params);

/// 1 - (1 - R^2)(N - 1)/(N - K - 1), K counting explanatory variables only.
double adjusted_r2(double r2, std::size_t n_obs, std::size_t n_vars);

/// Two-sided Student-t tail probability P(|T| >= |t|).
double student_t_two_sided_p(double t, double df);

/// Upper quantile q with P(T <= q) = probability.
double student_t_quantile(double probability, double df);

/// OLS with intercept via Householder QR. Throws when N <= K or when the
/// design is rank deficient (smallest/largest singular value < 1e-10).
RegressionReport ols_fit(const DesignMatrix& design);

/// Variance inflation factors 1/(1 - R_j^2) from regressing each column on
/// the others. A single column yields exactly 1.
std::vector<double> vif(const DesignMatrix& design);

struct Correlation {
  double r = 0.0;
  double p_value = 1.0;
  std::size_t n = 0;
};

/// Sample Pearson correlation with a two-sided t-test p-value.
Correlation pearson(std::span<const double> x, std::span<const double> y);

struct SelectionOptions {
  double vif_threshold = 5.0;
  bool standardize = true;
};

struct CandidateFit {
  std::vector<std::size_t> column_indices;
  std::vector<std::string> variables;
  std::optional<RegressionReport> report;  // empty when the fit failed
  std::string failure;
  double max_vif = kInfiniteVif;
  bool admissible = false;
};

struct ModelSelection {
  /// Every nonempty subset: by size, then by candidate position.
  std::vector<CandidateFit> table;
  /// Index into `table` of the admissible model with minimal AIC.
  std::optional<std::size_t> verdict;

  const CandidateFit* selected() const { return verdict ? &table[*verdict] : nullptr; }
};

inline constexpr std::size_t kMaxCandidates = 20;

/// Fits every nonempty subset of the candidate columns. A model is admissible
/// when its maximum VIF is below the threshold. Ties on AIC go to fewer
/// variables, then to the lexicographically smaller sorted name list.
ModelSelection select_model(const DesignMatrix& candidates, const SelectionOptions& options = {});

/// `variables,adjusted_r2,aic,max_vif,admissible`, one row per subset.
void write_regression_report_csv(std::ostream& out, const ModelSelection& selection);
/// `variable,coef,ci_lo,ci_hi,p_value`.
void write_coefficients_csv(std::ostream& out, const RegressionReport& report);

/// Joins variable names the way the reports do ("Gc+Gb").
std::string join_variables(const std::vector<std::string>& variables);

}  // namespace glsn
