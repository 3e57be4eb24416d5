#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "scidetect/features.hpp"

namespace scidetect {

// Row-major observation matrix with named columns and binary labels.
struct DesignMatrix {
  std::vector<std::string> column_names;
  std::vector<double> data;  // rows x cols, row-major
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<int> labels;

  double at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
  double& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }

  // Group columns of a featurized corpus, in canonical order. Pass
  // std::nullopt for all 27 features.
  static DesignMatrix from_table(const FeatureTable& table,
                                 std::optional<FeatureGroup> group = std::nullopt);

  DesignMatrix select_columns(const std::vector<std::size_t>& keep) const;
};

struct Standardization {
  std::vector<double> means;
  std::vector<double> stds;           // zero-variance columns recorded as 1
  std::vector<bool> zero_variance;
};

// In-place z-scoring; zero-variance columns are centered and flagged.
Standardization standardize(DesignMatrix& X);

// Variance inflation factors: 1/(1-R2_j) from regressing column j on the
// others plus an intercept. Infinity when R2_j >= 1 - 1e-12; constant
// columns report 1.
std::vector<double> vif(const DesignMatrix& X);

struct PruneEntry {
  std::string column;
  std::string trigger;  // "zero variance", "corr(a,b)=0.997", "vif=12.3"
};

struct PruneResult {
  std::vector<std::size_t> kept;  // indices into the input columns
  std::vector<PruneEntry> removed;
};

// Deterministic collinearity pruning: zero-variance columns first, then the
// later partner of the highest |pairwise correlation| above corr_limit,
// then the highest-VIF column until all VIF < vif_limit.
PruneResult prune_collinear(const DesignMatrix& X, double vif_limit = 5.0,
                            double corr_limit = 0.95);

struct FitOptions {
  double ridge = 0.0;
  double vif_limit = 5.0;
  double corr_limit = 0.95;
  int max_iterations = 100;
  double tolerance = 1e-8;
};

// Fitted logistic model with Wald/LLR diagnostics. The modeled probability
// is P(label = 1), i.e. the probability the text is human-written.
struct LogitModel {
  std::string group = "all";  // syntax | semantics | pragmatics | all
  std::vector<std::string> feature_names;
  std::vector<double> means;
  std::vector<double> stds;
  std::vector<double> beta;
  double intercept = 0.0;
  double ll = 0.0;
  double ll_null = 0.0;
  double pseudo_r2 = 0.0;
  std::vector<double> se;
  std::vector<double> p_values;
  double llr_p = 1.0;
  std::size_t observations = 0;
  std::size_t df_residuals = 0;
  double ridge = 0.0;
  bool separation_flagged = false;
  std::vector<PruneEntry> pruning_log;

  void save(const std::string& path) const;
  static LogitModel load(const std::string& path);
};

// Penalized log-likelihood and its gradient at (beta, intercept); the
// ridge penalty applies to beta only. Exposed for the oracle tests.
double logistic_log_likelihood(const DesignMatrix& X, const std::vector<double>& beta,
                               double intercept, double ridge);
std::vector<double> logistic_gradient(const DesignMatrix& X, const std::vector<double>& beta,
                                      double intercept, double ridge);

// Newton-Raphson (IRLS) fit on an already-standardized matrix. Retries once
// with ridge 1e-6 on a singular Hessian or detected separation.
LogitModel fit_logistic(const DesignMatrix& X, const FitOptions& options = {});

// Wald standard errors and two-sided p-values from the inverse observed
// information at the optimum; fills model.se / model.p_values.
void wald_pvalues(LogitModel& model, const DesignMatrix& X);

double mcfadden_pseudo_r2(double ll, double ll_null);
double llr_test(double ll, double ll_null, int df);

// Significance stars per the usual thresholds: * p<0.1, ** p<0.05, *** p<0.01.
const char* significance_stars(double p);

// Full pipeline for one feature group: select, prune, standardize, fit,
// diagnostics.
LogitModel fit_detector(const FeatureTable& table, std::optional<FeatureGroup> group,
                        const FitOptions& options = {});

double predict_proba(const LogitModel& model, const FeatureVector& features);
int predict_label(const LogitModel& model, const FeatureVector& features);

struct Contribution {
  std::string feature;
  double value = 0.0;  // beta_j * standardized feature value
};

// Per-feature standardized contributions to the decision, largest |value|
// first.
std::vector<Contribution> prediction_contributions(const LogitModel& model,
                                                   const FeatureVector& features);

}  // namespace scidetect
