#include "scidetect/detector.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numeric>

#include <nlohmann/json.hpp>

#include "scidetect/error.hpp"
#include "scidetect/stats.hpp"
#include "linalg.hpp"

namespace scidetect {

using json = nlohmann::json;

namespace {

double column_mean(const DesignMatrix& X, std::size_t c) {
  double sum = 0.0;
  for (std::size_t r = 0; r < X.rows; ++r) sum += X.at(r, c);
  return sum / static_cast<double>(X.rows);
}

// Least-squares R^2 of column `target` regressed on `predictors` plus an
// intercept, via the normal equations.
double regression_r2(const DesignMatrix& X, std::size_t target,
                     const std::vector<std::size_t>& predictors) {
  const std::size_t k = predictors.size() + 1;  // + intercept
  detail::SquareMatrix gram(k);
  std::vector<double> rhs(k, 0.0);
  for (std::size_t r = 0; r < X.rows; ++r) {
    std::vector<double> z(k);
    z[0] = 1.0;
    for (std::size_t j = 0; j < predictors.size(); ++j) z[j + 1] = X.at(r, predictors[j]);
    const double y = X.at(r, target);
    for (std::size_t i = 0; i < k; ++i) {
      rhs[i] += z[i] * y;
      for (std::size_t j = i; j < k; ++j) gram.at(i, j) += z[i] * z[j];
    }
  }
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < i; ++j) gram.at(i, j) = gram.at(j, i);

  std::vector<double> coef(rhs);
  if (!gram.solve(coef)) return 1.0;  // predictors collinear: target fully explained

  const double mean_y = column_mean(X, target);
  double ss_res = 0.0, ss_tot = 0.0;
  for (std::size_t r = 0; r < X.rows; ++r) {
    double fit = coef[0];
    for (std::size_t j = 0; j < predictors.size(); ++j)
      fit += coef[j + 1] * X.at(r, predictors[j]);
    const double y = X.at(r, target);
    ss_res += (y - fit) * (y - fit);
    ss_tot += (y - mean_y) * (y - mean_y);
  }
  if (ss_tot <= 0.0) return 0.0;  // constant target
  return std::clamp(1.0 - ss_res / ss_tot, 0.0, 1.0);
}

double pearson(const DesignMatrix& X, std::size_t a, std::size_t b) {
  const double ma = column_mean(X, a), mb = column_mean(X, b);
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t r = 0; r < X.rows; ++r) {
    const double da = X.at(r, a) - ma, db = X.at(r, b) - mb;
    sab += da * db;
    saa += da * da;
    sbb += db * db;
  }
  if (saa <= 0.0 || sbb <= 0.0) return 0.0;
  return sab / std::sqrt(saa * sbb);
}

}  // namespace

DesignMatrix DesignMatrix::from_table(const FeatureTable& table,
                                      std::optional<FeatureGroup> group) {
  std::vector<std::size_t> indices;
  if (group) indices = feature_indices(*group);
  else for (std::size_t i = 0; i < kFeatureCount; ++i) indices.push_back(i);

  DesignMatrix X;
  X.rows = table.size();
  X.cols = indices.size();
  X.labels = table.labels;
  for (std::size_t i : indices) X.column_names.emplace_back(feature_names()[i]);
  X.data.resize(X.rows * X.cols);
  for (std::size_t r = 0; r < X.rows; ++r)
    for (std::size_t c = 0; c < X.cols; ++c) X.at(r, c) = table.rows[r][indices[c]];
  for (double v : X.data)
    if (!std::isfinite(v)) fail(errc::bad_format, "design matrix contains NaN/inf");
  return X;
}

DesignMatrix DesignMatrix::select_columns(const std::vector<std::size_t>& keep) const {
  DesignMatrix out;
  out.rows = rows;
  out.cols = keep.size();
  out.labels = labels;
  for (std::size_t c : keep) out.column_names.push_back(column_names[c]);
  out.data.resize(out.rows * out.cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < keep.size(); ++c) out.at(r, c) = at(r, keep[c]);
  return out;
}

Standardization standardize(DesignMatrix& X) {
  if (X.rows < 2) fail(errc::too_few_rows, "TooFewRows: need n >= 2 to standardize");
  Standardization st;
  st.means.resize(X.cols);
  st.stds.resize(X.cols);
  st.zero_variance.resize(X.cols, false);
  for (std::size_t c = 0; c < X.cols; ++c) {
    const double mean = column_mean(X, c);
    double var = 0.0;
    for (std::size_t r = 0; r < X.rows; ++r) {
      const double d = X.at(r, c) - mean;
      var += d * d;
    }
    var /= static_cast<double>(X.rows);  // population variance
    double sd = std::sqrt(var);
    if (sd <= 0.0) {
      sd = 1.0;
      st.zero_variance[c] = true;
    }
    st.means[c] = mean;
    st.stds[c] = sd;
    for (std::size_t r = 0; r < X.rows; ++r) X.at(r, c) = (X.at(r, c) - mean) / sd;
  }
  return st;
}

std::vector<double> vif(const DesignMatrix& X) {
  if (X.rows <= X.cols) fail(errc::too_few_rows, "TooFewRows: need n > number of columns");
  std::vector<double> out(X.cols, 1.0);
  for (std::size_t j = 0; j < X.cols; ++j) {
    std::vector<std::size_t> others;
    for (std::size_t c = 0; c < X.cols; ++c)
      if (c != j) others.push_back(c);
    const double r2 = regression_r2(X, j, others);
    out[j] = r2 >= 1.0 - 1e-12 ? std::numeric_limits<double>::infinity() : 1.0 / (1.0 - r2);
  }
  return out;
}

PruneResult prune_collinear(const DesignMatrix& X, double vif_limit, double corr_limit) {
  if (X.cols < 2) fail(errc::too_few_rows, "prune_collinear needs at least 2 columns");
  std::vector<std::size_t> kept;
  PruneResult result;

  // Constant columns carry no signal and poison the correlation pass.
  for (std::size_t c = 0; c < X.cols; ++c) {
    double first = X.at(0, c);
    bool constant = true;
    for (std::size_t r = 1; r < X.rows && constant; ++r) constant = X.at(r, c) == first;
    if (constant) result.removed.push_back({X.column_names[c], "zero variance"});
    else kept.push_back(c);
  }

  char buf[128];
  // Correlation pass: repeatedly drop the later member of the strongest
  // over-limit pair.
  while (kept.size() > 1) {
    DesignMatrix sub = X.select_columns(kept);
    double best = 0.0;
    std::size_t bi = 0, bj = 0;
    for (std::size_t i = 0; i < kept.size(); ++i) {
      for (std::size_t j = i + 1; j < kept.size(); ++j) {
        const double c = std::fabs(pearson(sub, i, j));
        if (c > best) { best = c; bi = i; bj = j; }
      }
    }
    if (best <= corr_limit) break;
    std::snprintf(buf, sizeof buf, "corr(%s,%s)=%.4f", X.column_names[kept[bi]].c_str(),
                  X.column_names[kept[bj]].c_str(), best);
    result.removed.push_back({X.column_names[kept[bj]], buf});
    kept.erase(kept.begin() + static_cast<std::ptrdiff_t>(bj));
  }

  // VIF pass: drop the worst offender until all are under the limit.
  while (kept.size() > 1 && X.rows > kept.size()) {
    const DesignMatrix sub = X.select_columns(kept);
    const std::vector<double> v = vif(sub);
    std::size_t worst = 0;
    for (std::size_t i = 1; i < v.size(); ++i)
      if (v[i] >= v[worst]) worst = i;  // ties go to the later column
    if (v[worst] < vif_limit) break;
    std::snprintf(buf, sizeof buf, "vif=%.4g", v[worst]);
    result.removed.push_back({X.column_names[kept[worst]], buf});
    kept.erase(kept.begin() + static_cast<std::ptrdiff_t>(worst));
  }

  if (kept.empty()) fail(errc::all_columns_pruned, "AllColumnsPruned");
  result.kept = std::move(kept);
  return result;
}

double logistic_log_likelihood(const DesignMatrix& X, const std::vector<double>& beta,
                               double intercept, double ridge) {
  double ll = 0.0;
  for (std::size_t r = 0; r < X.rows; ++r) {
    double z = intercept;
    for (std::size_t c = 0; c < X.cols; ++c) z += beta[c] * X.at(r, c);
    ll += X.labels[r] == 1 ? log_sigmoid(z) : log_sigmoid(-z);
  }
  double penalty = 0.0;
  for (double b : beta) penalty += b * b;
  return ll - 0.5 * ridge * penalty;
}

std::vector<double> logistic_gradient(const DesignMatrix& X, const std::vector<double>& beta,
                                      double intercept, double ridge) {
  std::vector<double> grad(X.cols + 1, 0.0);
  for (std::size_t r = 0; r < X.rows; ++r) {
    double z = intercept;
    for (std::size_t c = 0; c < X.cols; ++c) z += beta[c] * X.at(r, c);
    const double resid = static_cast<double>(X.labels[r]) - sigmoid(z);
    for (std::size_t c = 0; c < X.cols; ++c) grad[c] += resid * X.at(r, c);
    grad[X.cols] += resid;
  }
  for (std::size_t c = 0; c < X.cols; ++c) grad[c] -= ridge * beta[c];
  return grad;
}

namespace {

struct NewtonResult {
  std::vector<double> beta;
  double intercept = 0.0;
  bool converged = false;
  bool hessian_failed = false;
  bool diverged = false;
};

NewtonResult newton_fit(const DesignMatrix& X, double ridge, int max_iter, double tol) {
  const std::size_t d = X.cols;
  NewtonResult res;
  res.beta.assign(d, 0.0);

  double ll = logistic_log_likelihood(X, res.beta, res.intercept, ridge);
  for (int iter = 0; iter < max_iter; ++iter) {
    // Observed information: [X'WX + ridge I, X'w; w'X, sum w].
    detail::SquareMatrix info(d + 1);
    std::vector<double> grad = logistic_gradient(X, res.beta, res.intercept, ridge);
    for (std::size_t r = 0; r < X.rows; ++r) {
      double z = res.intercept;
      for (std::size_t c = 0; c < d; ++c) z += res.beta[c] * X.at(r, c);
      const double p = sigmoid(z);
      const double w = p * (1.0 - p);
      for (std::size_t i = 0; i < d; ++i) {
        const double xi = X.at(r, i) * w;
        for (std::size_t j = i; j < d; ++j) info.at(i, j) += xi * X.at(r, j);
        info.at(i, d) += xi;
      }
      info.at(d, d) += w;
    }
    for (std::size_t i = 0; i < d; ++i) {
      info.at(i, i) += ridge;
      for (std::size_t j = 0; j < i; ++j) info.at(i, j) = info.at(j, i);
      info.at(d, i) = info.at(i, d);
    }

    std::vector<double> step(grad);
    if (!info.solve(step)) {
      res.hessian_failed = true;
      return res;
    }

    // Step halving keeps the penalized log-likelihood non-decreasing.
    double scale = 1.0;
    std::vector<double> nb(d);
    double nint = 0.0, nll = -std::numeric_limits<double>::infinity();
    for (int h = 0; h < 40; ++h) {
      for (std::size_t c = 0; c < d; ++c) nb[c] = res.beta[c] + scale * step[c];
      nint = res.intercept + scale * step[d];
      nll = logistic_log_likelihood(X, nb, nint, ridge);
      if (nll >= ll) break;
      scale *= 0.5;
    }
    if (nll < ll) {
      // No ascent left at 2^-40 of a Newton step: numerical optimum.
      res.converged = true;
      return res;
    }

    double max_delta = std::fabs(scale * step[d]);
    for (std::size_t c = 0; c < d; ++c)
      max_delta = std::max(max_delta, std::fabs(scale * step[c]));
    res.beta = nb;
    res.intercept = nint;
    ll = nll;

    if (ridge == 0.0) {
      double max_param = std::fabs(res.intercept);
      for (double b : res.beta) max_param = std::max(max_param, std::fabs(b));
      if (max_param > 30.0) {
        // Coefficients running away on standardized data: separation.
        res.diverged = true;
        return res;
      }
    }
    if (max_delta < tol) {
      res.converged = true;
      return res;
    }
  }
  return res;
}

double null_log_likelihood(const std::vector<int>& labels, double* intercept_out) {
  const double n = static_cast<double>(labels.size());
  double ones = 0.0;
  for (int y : labels) ones += y;
  const double p = ones / n;
  if (intercept_out) *intercept_out = std::log(p / (1.0 - p));
  return ones * std::log(p) + (n - ones) * std::log(1.0 - p);
}

}  // namespace

LogitModel fit_logistic(const DesignMatrix& X, const FitOptions& options) {
  if (X.rows == 0 || X.labels.size() != X.rows)
    fail(errc::length_mismatch, "LengthMismatch: labels vs rows");
  if (X.rows <= X.cols)
    fail(errc::too_few_rows, "TooFewRows: need more observations than columns");
  bool has0 = false, has1 = false;
  for (int y : X.labels) (y == 0 ? has0 : has1) = true;
  if (!has0 || !has1) fail(errc::one_class_only, "OneClassOnly: need both classes to fit");
  for (double v : X.data)
    if (!std::isfinite(v)) fail(errc::bad_format, "NaN/inf in design matrix");

  double ridge = options.ridge;
  NewtonResult fit = newton_fit(X, ridge, options.max_iterations, options.tolerance);
  bool flagged = false;
  if (!fit.converged) {
    // One retry with a tiny ridge, as for separation/singularity.
    ridge = std::max(ridge, 1e-6);
    fit = newton_fit(X, ridge, options.max_iterations, options.tolerance);
    flagged = true;
    if (!fit.converged) fail(errc::no_convergence, "NoConvergence after ridge retry");
  }

  LogitModel model;
  model.feature_names = X.column_names;
  model.beta = fit.beta;
  model.intercept = fit.intercept;
  model.ridge = ridge;
  model.separation_flagged = flagged;
  model.observations = X.rows;
  model.df_residuals = X.rows - X.cols - 1;
  model.ll = logistic_log_likelihood(X, fit.beta, fit.intercept, 0.0);
  model.ll_null = null_log_likelihood(X.labels, nullptr);
  model.pseudo_r2 = mcfadden_pseudo_r2(model.ll, model.ll_null);
  model.llr_p = llr_test(model.ll, model.ll_null, static_cast<int>(X.cols));
  model.means.assign(X.cols, 0.0);
  model.stds.assign(X.cols, 1.0);
  return model;
}

void wald_pvalues(LogitModel& model, const DesignMatrix& X) {
  const std::size_t d = X.cols;
  detail::SquareMatrix info(d + 1);
  for (std::size_t r = 0; r < X.rows; ++r) {
    double z = model.intercept;
    for (std::size_t c = 0; c < d; ++c) z += model.beta[c] * X.at(r, c);
    const double p = sigmoid(z);
    const double w = p * (1.0 - p);
    for (std::size_t i = 0; i < d; ++i) {
      const double xi = X.at(r, i) * w;
      for (std::size_t j = i; j < d; ++j) info.at(i, j) += xi * X.at(r, j);
      info.at(i, d) += xi;
    }
    info.at(d, d) += w;
  }
  for (std::size_t i = 0; i < d; ++i) {
    info.at(i, i) += model.ridge;
    for (std::size_t j = 0; j < i; ++j) info.at(i, j) = info.at(j, i);
    info.at(d, i) = info.at(i, d);
  }
  detail::SquareMatrix inv(d + 1);
  if (!info.inverse(inv))
    fail(errc::singular_information, "SingularInformation: cannot invert observed information");
  model.se.resize(d);
  model.p_values.resize(d);
  for (std::size_t j = 0; j < d; ++j) {
    const double var = inv.at(j, j);
    if (var <= 0.0)
      fail(errc::singular_information, "SingularInformation: non-positive variance");
    model.se[j] = std::sqrt(var);
    model.p_values[j] = two_sided_p(model.beta[j] / model.se[j]);
  }
}

double mcfadden_pseudo_r2(double ll, double ll_null) {
  if (!(ll_null < 0.0)) fail(errc::bad_likelihoods, "BadLikelihoods: ll_null must be < 0");
  if (ll < ll_null - 1e-9)
    fail(errc::bad_likelihoods, "BadLikelihoods: ll below ll_null");
  return 1.0 - ll / ll_null;
}

double llr_test(double ll, double ll_null, int df) {
  if (!(ll_null < 0.0)) fail(errc::bad_likelihoods, "BadLikelihoods: ll_null must be < 0");
  if (ll < ll_null - 1e-9)
    fail(errc::bad_likelihoods, "BadLikelihoods: ll below ll_null");
  if (df < 1) fail(errc::bad_likelihoods, "BadLikelihoods: df must be >= 1");
  const double stat = std::max(0.0, 2.0 * (ll - ll_null));
  return chi2_sf(stat, df);
}

const char* significance_stars(double p) {
  if (p < 0.01) return "***";
  if (p < 0.05) return "**";
  if (p < 0.1) return "*";
  return "";
}

LogitModel fit_detector(const FeatureTable& table, std::optional<FeatureGroup> group,
                        const FitOptions& options) {
  DesignMatrix X = DesignMatrix::from_table(table, group);
  const PruneResult prune = prune_collinear(X, options.vif_limit, options.corr_limit);
  DesignMatrix Xk = X.select_columns(prune.kept);
  const Standardization st = standardize(Xk);

  LogitModel model = fit_logistic(Xk, options);
  wald_pvalues(model, Xk);
  model.means = st.means;
  model.stds = st.stds;
  model.pruning_log = prune.removed;
  model.group = group ? feature_group_name(*group) : "all";
  return model;
}

namespace {

double linear_score(const LogitModel& model, const FeatureVector& features,
                    std::vector<double>* std_values) {
  double z = model.intercept;
  for (std::size_t j = 0; j < model.feature_names.size(); ++j) {
    const double raw = features.by_name(model.feature_names[j]);
    const double xs = (raw - model.means[j]) / model.stds[j];
    if (std_values) (*std_values)[j] = xs;
    z += model.beta[j] * xs;
  }
  return z;
}

}  // namespace

double predict_proba(const LogitModel& model, const FeatureVector& features) {
  return sigmoid(linear_score(model, features, nullptr));
}

int predict_label(const LogitModel& model, const FeatureVector& features) {
  return predict_proba(model, features) >= 0.5 ? 1 : 0;
}

std::vector<Contribution> prediction_contributions(const LogitModel& model,
                                                   const FeatureVector& features) {
  std::vector<double> xs(model.feature_names.size());
  linear_score(model, features, &xs);
  std::vector<Contribution> out;
  for (std::size_t j = 0; j < model.feature_names.size(); ++j)
    out.push_back({model.feature_names[j], model.beta[j] * xs[j]});
  std::stable_sort(out.begin(), out.end(), [](const Contribution& a, const Contribution& b) {
    return std::fabs(a.value) > std::fabs(b.value);
  });
  return out;
}

void LogitModel::save(const std::string& path) const {
  json root;
  root["magic"] = "scidetect.logit";
  root["version"] = 1;
  root["group"] = group;
  root["feature_names"] = feature_names;
  root["means"] = means;
  root["stds"] = stds;
  root["beta"] = beta;
  root["intercept"] = intercept;
  root["ll"] = ll;
  root["ll_null"] = ll_null;
  root["pseudo_r2"] = pseudo_r2;
  root["se"] = se;
  root["p_values"] = p_values;
  root["llr_p"] = llr_p;
  root["observations"] = observations;
  root["df_residuals"] = df_residuals;
  root["ridge"] = ridge;
  root["separation_flagged"] = separation_flagged;
  json log = json::array();
  for (const PruneEntry& e : pruning_log) log.push_back({{"column", e.column}, {"trigger", e.trigger}});
  root["pruning_log"] = std::move(log);

  std::ofstream out(path);
  if (!out) fail(errc::io_failure, "cannot write model file: " + path);
  out << root.dump(2) << '\n';
  if (!out) fail(errc::io_failure, "write failed: " + path);
}

LogitModel LogitModel::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(errc::io_failure, "cannot open model file: " + path);
  json root;
  try {
    in >> root;
  } catch (const json::exception& e) {
    fail(errc::bad_format, std::string("invalid model file: ") + e.what());
  }
  if (root.value("magic", "") != "scidetect.logit")
    fail(errc::bad_format, "not a detector model file: " + path);

  LogitModel m;
  m.group = root.at("group").get<std::string>();
  m.feature_names = root.at("feature_names").get<std::vector<std::string>>();
  m.means = root.at("means").get<std::vector<double>>();
  m.stds = root.at("stds").get<std::vector<double>>();
  m.beta = root.at("beta").get<std::vector<double>>();
  m.intercept = root.at("intercept").get<double>();
  m.ll = root.at("ll").get<double>();
  m.ll_null = root.at("ll_null").get<double>();
  m.pseudo_r2 = root.at("pseudo_r2").get<double>();
  m.se = root.at("se").get<std::vector<double>>();
  m.p_values = root.at("p_values").get<std::vector<double>>();
  m.llr_p = root.at("llr_p").get<double>();
  m.observations = root.at("observations").get<std::size_t>();
  m.df_residuals = root.at("df_residuals").get<std::size_t>();
  m.ridge = root.value("ridge", 0.0);
  m.separation_flagged = root.value("separation_flagged", false);
  for (const auto& e : root.value("pruning_log", json::array()))
    m.pruning_log.push_back({e.at("column").get<std::string>(), e.at("trigger").get<std::string>()});
  return m;
}

}  // namespace scidetect
