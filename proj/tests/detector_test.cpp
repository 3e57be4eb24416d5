#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <random>

#include "scidetect/detector.hpp"
#include "scidetect/error.hpp"
#include "scidetect/stats.hpp"

using namespace scidetect;

namespace {

DesignMatrix make_matrix(const std::vector<std::vector<double>>& rows,
                         const std::vector<int>& labels,
                         std::vector<std::string> names = {}) {
  DesignMatrix X;
  X.rows = rows.size();
  X.cols = rows.empty() ? 0 : rows[0].size();
  X.labels = labels;
  if (names.empty())
    for (std::size_t c = 0; c < X.cols; ++c) names.push_back("x" + std::to_string(c));
  X.column_names = std::move(names);
  for (const auto& row : rows)
    for (double v : row) X.data.push_back(v);
  return X;
}

// Labels for a logistic data-generating process with known coefficients.
DesignMatrix synthetic_logistic(std::size_t n, const std::vector<double>& beta,
                                double intercept, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<std::vector<double>> rows;
  std::vector<int> labels;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> x(beta.size());
    double z = intercept;
    for (std::size_t j = 0; j < beta.size(); ++j) {
      x[j] = normal(rng);
      z += beta[j] * x[j];
    }
    rows.push_back(std::move(x));
    labels.push_back(unif(rng) < sigmoid(z) ? 1 : 0);
  }
  return make_matrix(rows, labels);
}

// Mutually orthogonal +-1 columns that are also orthogonal to the intercept.
DesignMatrix orthogonal_design() {
  std::vector<std::vector<double>> rows;
  std::vector<int> labels;
  for (int i = 0; i < 8; ++i) {
    const double c1 = (i & 1) ? 1.0 : -1.0;
    const double c2 = (i & 2) ? 1.0 : -1.0;
    const double c3 = (i & 4) ? 1.0 : -1.0;
    rows.push_back({c1, c2, c3});
    labels.push_back(i & 1);
  }
  return make_matrix(rows, labels);
}

}  // namespace

TEST_CASE("standardize uses the population std") {
  DesignMatrix X = make_matrix({{1.0}, {3.0}}, {0, 1});
  const Standardization st = standardize(X);
  CHECK(st.means[0] == doctest::Approx(2.0));
  CHECK(st.stds[0] == doctest::Approx(1.0));
  CHECK(X.at(0, 0) == doctest::Approx(-1.0));
  CHECK(X.at(1, 0) == doctest::Approx(1.0));
  CHECK_FALSE(st.zero_variance[0]);
}

TEST_CASE("standardize flags constant columns") {
  DesignMatrix X = make_matrix({{5.0}, {5.0}, {5.0}}, {0, 1, 1});
  const Standardization st = standardize(X);
  CHECK(st.zero_variance[0]);
  CHECK(st.stds[0] == 1.0);
  for (std::size_t r = 0; r < 3; ++r) CHECK(X.at(r, 0) == 0.0);
}

TEST_CASE("standardize is idempotent") {
  DesignMatrix X = make_matrix({{1.0, 4.0}, {2.0, -1.0}, {6.0, 2.0}, {-3.0, 0.5}}, {0, 1, 0, 1});
  standardize(X);
  DesignMatrix Y = X;
  const Standardization st = standardize(Y);
  CHECK(st.means[0] == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(st.stds[0] == doctest::Approx(1.0).epsilon(1e-12));
  for (std::size_t i = 0; i < X.data.size(); ++i)
    CHECK(Y.data[i] == doctest::Approx(X.data[i]).epsilon(1e-12));
}

TEST_CASE("standardize requires at least two rows") {
  DesignMatrix X = make_matrix({{1.0}}, {0});
  CHECK_THROWS_WITH_AS(standardize(X), doctest::Contains("TooFewRows"), Error);
}

TEST_CASE("vif is one for orthogonal columns") {
  const DesignMatrix X = orthogonal_design();
  for (double v : vif(X)) CHECK(v == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("vif is infinite for an exact linear combination") {
  std::vector<std::vector<double>> rows;
  std::mt19937_64 rng(5);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int i = 0; i < 30; ++i) {
    const double a = normal(rng), b = normal(rng);
    rows.push_back({a, b, a + b});
  }
  const DesignMatrix X = make_matrix(rows, std::vector<int>(30, 0));
  const auto v = vif(X);
  CHECK(std::isinf(v[2]));
}

TEST_CASE("vif matches an independent normal-equations oracle") {
  // x3 = x1 + x2 + noise; oracle solves the 3x3 normal equations by Cramer.
  std::mt19937_64 rng(11);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<std::vector<double>> rows;
  for (int i = 0; i < 200; ++i) {
    const double a = normal(rng), b = normal(rng);
    rows.push_back({a, b, a + b + 0.05 * normal(rng)});
  }
  const DesignMatrix X = make_matrix(rows, std::vector<int>(200, 0));
  const auto v = vif(X);

  // Oracle for column 2 on [1, x0, x1].
  const std::size_t n = X.rows;
  double s1 = 0, sa = 0, sb = 0, saa = 0, sbb = 0, sab = 0, sy = 0, say = 0, sby = 0, syy = 0;
  for (std::size_t r = 0; r < n; ++r) {
    const double a = X.at(r, 0), b = X.at(r, 1), y = X.at(r, 2);
    s1 += 1; sa += a; sb += b; saa += a * a; sbb += b * b; sab += a * b;
    sy += y; say += a * y; sby += b * y; syy += y * y;
  }
  auto det3 = [](double m00, double m01, double m02, double m10, double m11, double m12,
                 double m20, double m21, double m22) {
    return m00 * (m11 * m22 - m12 * m21) - m01 * (m10 * m22 - m12 * m20) +
           m02 * (m10 * m21 - m11 * m20);
  };
  const double d = det3(s1, sa, sb, sa, saa, sab, sb, sab, sbb);
  const double d0 = det3(sy, sa, sb, say, saa, sab, sby, sab, sbb);
  const double d1 = det3(s1, sy, sb, sa, say, sab, sb, sby, sbb);
  const double d2 = det3(s1, sa, sy, sa, saa, say, sb, sab, sby);
  const double c0 = d0 / d, c1 = d1 / d, c2 = d2 / d;
  double ss_res = 0, ss_tot = 0;
  const double ybar = sy / static_cast<double>(n);
  for (std::size_t r = 0; r < n; ++r) {
    const double fit = c0 + c1 * X.at(r, 0) + c2 * X.at(r, 1);
    ss_res += (X.at(r, 2) - fit) * (X.at(r, 2) - fit);
    ss_tot += (X.at(r, 2) - ybar) * (X.at(r, 2) - ybar);
  }
  const double oracle_vif = 1.0 / (1.0 - (1.0 - ss_res / ss_tot));
  CHECK(v[2] == doctest::Approx(oracle_vif).epsilon(1e-6));
  CHECK(v[2] > 5.0);
}

TEST_CASE("prune keeps an orthogonal design intact") {
  const DesignMatrix X = orthogonal_design();
  const PruneResult result = prune_collinear(X);
  CHECK(result.kept.size() == 3);
  CHECK(result.removed.empty());
}

TEST_CASE("prune drops the later duplicate column") {
  std::vector<std::vector<double>> rows;
  std::mt19937_64 rng(2);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int i = 0; i < 40; ++i) {
    const double a = normal(rng), b = normal(rng);
    rows.push_back({a, b, a});
  }
  const DesignMatrix X = make_matrix(rows, std::vector<int>(40, 0), {"first", "mid", "copy"});
  const PruneResult result = prune_collinear(X);
  REQUIRE(result.removed.size() == 1);
  CHECK(result.removed[0].column == "copy");
  CHECK(result.kept == std::vector<std::size_t>{0, 1});
}

TEST_CASE("prune mirrors the collinear-feature removal discipline") {
  // Two almost-identical columns, as with the commonsense/self-contradiction
  // pair: the later one goes.
  std::vector<std::vector<double>> rows;
  std::mt19937_64 rng(17);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int i = 0; i < 120; ++i) {
    const double a = normal(rng), b = normal(rng);
    rows.push_back({a, b, a + 0.02 * normal(rng)});
  }
  const DesignMatrix X =
      make_matrix(rows, std::vector<int>(120, 0), {"self_contradiction", "redundancy",
                                                   "commonsense"});
  const PruneResult result = prune_collinear(X, 5.0, 0.95);
  REQUIRE(result.removed.size() == 1);
  CHECK(result.removed[0].column == "commonsense");
  CHECK(result.removed[0].trigger.find("corr") == 0);

  // Everything kept now passes the VIF rule.
  const auto v = vif(X.select_columns(result.kept));
  for (double value : v) CHECK(value < 5.0);
}

TEST_CASE("prune drops zero-variance columns first") {
  std::vector<std::vector<double>> rows;
  std::mt19937_64 rng(23);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int i = 0; i < 20; ++i) rows.push_back({normal(rng), 7.0});
  const DesignMatrix X = make_matrix(rows, std::vector<int>(20, 0), {"live", "flat"});
  const PruneResult result = prune_collinear(X);
  REQUIRE(result.removed.size() == 1);
  CHECK(result.removed[0].column == "flat");
  CHECK(result.removed[0].trigger == "zero variance");
}

TEST_CASE("logistic gradient matches central finite differences") {
  std::mt19937_64 rng(31);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int trial = 0; trial < 5; ++trial) {
    const DesignMatrix X = synthetic_logistic(50, {1.0, -2.0, 0.5}, 0.2, 100 + trial);
    std::vector<double> beta = {normal(rng), normal(rng), normal(rng)};
    const double intercept = normal(rng);
    const double ridge = trial % 2 == 0 ? 0.0 : 0.3;
    const auto grad = logistic_gradient(X, beta, intercept, ridge);

    const double h = 1e-6;
    for (std::size_t j = 0; j < beta.size(); ++j) {
      std::vector<double> up = beta, down = beta;
      up[j] += h;
      down[j] -= h;
      const double numeric = (logistic_log_likelihood(X, up, intercept, ridge) -
                              logistic_log_likelihood(X, down, intercept, ridge)) /
                             (2.0 * h);
      CHECK(grad[j] == doctest::Approx(numeric).epsilon(1e-6));
    }
    const double numeric_b = (logistic_log_likelihood(X, beta, intercept + h, ridge) -
                              logistic_log_likelihood(X, beta, intercept - h, ridge)) /
                             (2.0 * h);
    CHECK(grad.back() == doctest::Approx(numeric_b).epsilon(1e-6));
  }
}

TEST_CASE("zero-feature balanced fit gives even odds") {
  DesignMatrix X;
  X.rows = 10;
  X.cols = 0;
  X.labels = {0, 1, 0, 1, 0, 1, 0, 1, 0, 1};
  const LogitModel model = fit_logistic(X);
  CHECK(model.intercept == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(model.ll == doctest::Approx(model.ll_null).epsilon(1e-12));
  CHECK(model.pseudo_r2 == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("fit reaches the grid-search oracle optimum") {
  DesignMatrix X = synthetic_logistic(200, {2.0, -1.0}, 0.5, 7);
  const LogitModel model = fit_logistic(X);
  const double fitted_nll = -model.ll;

  double best = 1e300;
  for (double b0 = -4.0; b0 <= 4.0; b0 += 0.25)
    for (double b1 = -4.0; b1 <= 4.0; b1 += 0.25)
      for (double bi = -4.0; bi <= 4.0; bi += 0.25) {
        const double nll = -logistic_log_likelihood(X, {b0, b1}, bi, 0.0);
        best = std::min(best, nll);
      }
  CHECK(fitted_nll <= best + 1e-6);
}

TEST_CASE("monotone ascent and recovery of known coefficients") {
  const DesignMatrix X = synthetic_logistic(4000, {1.5, -0.75}, 0.25, 13);
  const LogitModel model = fit_logistic(X);
  CHECK(model.beta[0] == doctest::Approx(1.5).epsilon(0.15));
  CHECK(model.beta[1] == doctest::Approx(-0.75).epsilon(0.2));
  CHECK(model.ll >= model.ll_null);
}

TEST_CASE("separated data gets the ridge retry and a flag") {
  std::vector<std::vector<double>> rows;
  std::vector<int> labels;
  for (int i = 0; i < 20; ++i) {
    const double x = i < 10 ? -1.0 - 0.1 * i : 1.0 + 0.1 * (i - 10);
    rows.push_back({x});
    labels.push_back(i < 10 ? 0 : 1);
  }
  DesignMatrix X = make_matrix(rows, labels);
  standardize(X);
  const LogitModel model = fit_logistic(X);
  CHECK(model.separation_flagged);
  CHECK(model.ridge == doctest::Approx(1e-6));
  CHECK(model.ll >= model.ll_null);
}

TEST_CASE("one-class labels are rejected") {
  DesignMatrix X = make_matrix({{0.0}, {1.0}}, {1, 1});
  CHECK_THROWS_WITH_AS(fit_logistic(X), doctest::Contains("OneClassOnly"), Error);
}

TEST_CASE("scale invariance of the unpenalized fit") {
  DesignMatrix X = synthetic_logistic(300, {1.0, -0.5}, 0.0, 21);
  const LogitModel base = fit_logistic(X);

  DesignMatrix scaled = X;
  const double c = 3.7;
  for (std::size_t r = 0; r < scaled.rows; ++r) scaled.at(r, 1) *= c;
  const LogitModel rescaled = fit_logistic(scaled);

  CHECK(rescaled.beta[1] == doctest::Approx(base.beta[1] / c).epsilon(1e-5));
  for (std::size_t r = 0; r < X.rows; ++r) {
    const double z1 = base.intercept + base.beta[0] * X.at(r, 0) + base.beta[1] * X.at(r, 1);
    const double z2 = rescaled.intercept + rescaled.beta[0] * scaled.at(r, 0) +
                      rescaled.beta[1] * scaled.at(r, 1);
    CHECK(sigmoid(z1) == doctest::Approx(sigmoid(z2)).epsilon(1e-6));
  }
}

TEST_CASE("wald p-values from the observed information") {
  DesignMatrix X = synthetic_logistic(500, {1.0, 0.0}, 0.0, 3);
  LogitModel model = fit_logistic(X);
  wald_pvalues(model, X);
  REQUIRE(model.se.size() == 2);
  REQUIRE(model.p_values.size() == 2);
  CHECK(model.p_values[0] < 0.01);  // real effect
  CHECK(model.p_values[1] > 0.01);  // null feature
  for (double se : model.se) CHECK(se > 0.0);
}

TEST_CASE("wald identities") {
  CHECK(two_sided_p(0.0) == doctest::Approx(1.0));
  CHECK(two_sided_p(1.959964) == doctest::Approx(0.05).epsilon(1e-4));
  CHECK(two_sided_p(-1.959964) == doctest::Approx(0.05).epsilon(1e-4));
  CHECK(two_sided_p(2.575829) == doctest::Approx(0.01).epsilon(1e-4));
}

TEST_CASE("erfc approximation against the standard library") {
  for (double x = -6.0; x <= 6.0; x += 0.01)
    CHECK(erfc_approx(x) == doctest::Approx(std::erfc(x)).epsilon(1e-10));
}

TEST_CASE("mcfadden pseudo R2 on the published likelihoods") {
  CHECK(mcfadden_pseudo_r2(-385.28, -2771.1) == doctest::Approx(0.861).epsilon(5e-4));
  CHECK(mcfadden_pseudo_r2(-1437.1, -2771.1) == doctest::Approx(0.4814).epsilon(5e-4));
  CHECK(mcfadden_pseudo_r2(-474.99, -2771.1) == doctest::Approx(0.8286).epsilon(5e-4));
  CHECK(mcfadden_pseudo_r2(-172.24, -2771.1) == doctest::Approx(0.9378).epsilon(5e-4));
  CHECK(mcfadden_pseudo_r2(-2771.1, -2771.1) == 0.0);
  CHECK_THROWS_WITH_AS(mcfadden_pseudo_r2(-3000.0, -2771.1),
                       doctest::Contains("BadLikelihoods"), Error);
}

TEST_CASE("likelihood ratio test against chi-square tables") {
  CHECK(llr_test(-100.0, -100.0, 5) == doctest::Approx(1.0));
  // statistic 3.841 with df 1 sits at the 5% point
  CHECK(llr_test(-98.0795, -100.0, 1) == doctest::Approx(0.05).epsilon(1e-3));
  CHECK(chi2_sf(3.841459, 1) == doctest::Approx(0.05).epsilon(1e-5));
  CHECK(chi2_sf(2.705543, 1) == doctest::Approx(0.10).epsilon(1e-5));
  CHECK(chi2_sf(6.634897, 1) == doctest::Approx(0.01).epsilon(1e-5));
  CHECK(chi2_sf(18.307038, 10) == doctest::Approx(0.05).epsilon(1e-5));
  // Table-6-sized statistics underflow to zero.
  CHECK(llr_test(-385.28, -2771.1, 20) == 0.0);
}

TEST_CASE("significance stars per the note thresholds") {
  CHECK(std::string(significance_stars(0.08)) == "*");
  CHECK(std::string(significance_stars(0.03)) == "**");
  CHECK(std::string(significance_stars(0.004)) == "***");
  CHECK(std::string(significance_stars(0.5)) == "");
  CHECK(std::string(significance_stars(1.0)) == "");
}

TEST_CASE("predict_proba identities") {
  LogitModel model;
  model.feature_names = {"avg_word_len", "flesch"};
  model.means = {4.0, 40.0};
  model.stds = {1.0, 10.0};
  model.beta = {0.0, 0.0};
  model.intercept = 0.0;

  FeatureVector fv;
  fv.values.fill(0.0);
  CHECK(predict_proba(model, fv) == doctest::Approx(0.5));

  model.intercept = 0.7;
  fv[0] = 4.0;  // at the mean
  fv[8] = 40.0;
  CHECK(predict_proba(model, fv) == doctest::Approx(sigmoid(0.7)).epsilon(1e-12));

  model.beta = {1.2, -0.4};
  fv[0] = 5.0;   // standardized: 1.0
  fv[8] = 20.0;  // standardized: -2.0
  const double z = 0.7 + 1.2 * 1.0 + (-0.4) * (-2.0);
  CHECK(predict_proba(model, fv) == doctest::Approx(sigmoid(z)).epsilon(1e-12));
  CHECK(predict_label(model, fv) == (sigmoid(z) >= 0.5 ? 1 : 0));

  const auto contributions = prediction_contributions(model, fv);
  REQUIRE(contributions.size() == 2);
  CHECK(contributions[0].feature == "avg_word_len");  // |1.2| > |0.8|
  CHECK(contributions[0].value == doctest::Approx(1.2));
  CHECK(contributions[1].value == doctest::Approx(0.8));
}

TEST_CASE("predict_proba fails on a foreign feature name") {
  LogitModel model;
  model.feature_names = {"no_such_feature"};
  model.means = {0.0};
  model.stds = {1.0};
  model.beta = {1.0};
  FeatureVector fv;
  CHECK_THROWS_WITH_AS(predict_proba(model, fv), doctest::Contains("MissingFeature"), Error);
}

TEST_CASE("model persistence reproduces predictions bit-identically") {
  namespace fs = std::filesystem;
  DesignMatrix X = synthetic_logistic(150, {0.8, -1.1, 0.3}, -0.2, 2);
  std::vector<std::string> names = {"avg_word_len", "flesch", "text_ppl"};
  X.column_names = names;
  const Standardization st = standardize(X);
  LogitModel model = fit_logistic(X);
  wald_pvalues(model, X);
  model.means = st.means;
  model.stds = st.stds;
  model.group = "syntax";

  const fs::path path = fs::temp_directory_path() / "scidetect_logit_test.json";
  model.save(path.string());
  const LogitModel loaded = LogitModel::load(path.string());

  FeatureVector fv;
  fv[0] = 4.2;
  fv[8] = 33.3;
  fv[19] = 2.7;
  CHECK(predict_proba(loaded, fv) == predict_proba(model, fv));
  CHECK(loaded.ll == model.ll);
  CHECK(loaded.pseudo_r2 == model.pseudo_r2);
  CHECK(loaded.se == model.se);
  CHECK(loaded.p_values == model.p_values);
  fs::remove(path);
}
