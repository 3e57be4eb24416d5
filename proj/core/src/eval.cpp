#include "scidetect/eval.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include <nlohmann/json.hpp>

#include "scidetect/error.hpp"

namespace scidetect {

using json = nlohmann::json;

ConfusionMatrix confusion(const std::vector<int>& predictions, const std::vector<int>& labels) {
  if (predictions.size() != labels.size())
    fail(errc::length_mismatch, "LengthMismatch: predictions vs labels");
  if (predictions.empty()) fail(errc::empty_input, "Empty: nothing to evaluate");
  ConfusionMatrix cm;
  for (std::size_t i = 0; i < predictions.size(); ++i) {
    const bool pred_ai = predictions[i] == 0;
    const bool is_ai = labels[i] == 0;
    if (pred_ai && is_ai) ++cm.tp;
    else if (pred_ai && !is_ai) ++cm.fp;
    else if (!pred_ai && is_ai) ++cm.fn;
    else ++cm.tn;
  }
  return cm;
}

double f1_score(double precision, double recall) {
  if (precision + recall <= 0.0) return 0.0;
  return 2.0 * precision * recall / (precision + recall);
}

ClassMetrics class_metrics(const ConfusionMatrix& cm) {
  ClassMetrics m;
  if (cm.tp + cm.fp > 0)
    m.precision = static_cast<double>(cm.tp) / static_cast<double>(cm.tp + cm.fp);
  else
    m.degenerate = true;
  if (cm.tp + cm.fn > 0)
    m.recall = static_cast<double>(cm.tp) / static_cast<double>(cm.tp + cm.fn);
  else
    m.degenerate = true;
  m.f1 = f1_score(m.precision, m.recall);
  return m;
}

PrfReport prf(const ConfusionMatrix& cm) {
  PrfReport r;
  r.ai = class_metrics(cm);
  r.human = class_metrics(cm.mirrored());
  r.macro.precision = (r.ai.precision + r.human.precision) / 2.0;
  r.macro.recall = (r.ai.recall + r.human.recall) / 2.0;
  r.macro.f1 = (r.ai.f1 + r.human.f1) / 2.0;
  r.macro.degenerate = r.ai.degenerate || r.human.degenerate;
  return r;
}

namespace {

std::string fmt(double v, const char* spec = "%.4f") {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

std::string pad(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

std::string lpad(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : std::string(width - s.size(), ' ') + s;
}

std::string model_header(const LogitModel& m) {
  if (m.group == "syntax") return "Only Syntax";
  if (m.group == "semantics") return "Only Semantics";
  if (m.group == "pragmatics") return "Only Pragmatics";
  return "All";
}

std::string llr_p_string(double p) {
  if (p < 1e-300) return "0";
  return fmt(p, "%.4g");
}

}  // namespace

std::string report(const std::vector<LogitModel>& models,
                   const std::vector<NamedMetrics>& test_metrics) {
  if (models.empty()) fail(errc::empty_input, "Empty: no models to report");

  constexpr std::size_t kLabelWidth = 44;
  constexpr std::size_t kColWidth = 16;
  std::ostringstream out;

  out << "Logistic regression models\n";
  out << "==========================\n\n";
  out << pad("", kLabelWidth);
  for (const auto& m : models) out << lpad(model_header(m), kColWidth);
  out << '\n';

  auto info_row = [&](const std::string& label, auto value_of) {
    out << pad(label, kLabelWidth);
    for (const auto& m : models) out << lpad(value_of(m), kColWidth);
    out << '\n';
  };
  info_row("No. Observations", [](const LogitModel& m) { return std::to_string(m.observations); });
  info_row("Df Residuals", [](const LogitModel& m) { return std::to_string(m.df_residuals); });
  info_row("Pseudo R-square", [](const LogitModel& m) { return fmt(m.pseudo_r2); });
  info_row("Log-Likelihood", [](const LogitModel& m) { return fmt(m.ll, "%.2f"); });
  info_row("LL-Null", [](const LogitModel& m) { return fmt(m.ll_null, "%.2f"); });
  info_row("LLR p-value", [](const LogitModel& m) { return llr_p_string(m.llr_p); });
  for (const auto& tm : test_metrics)
    info_row("F1-score (" + tm.name + ")",
             [&](const LogitModel&) { return fmt(tm.metrics.macro.f1, "%.2f"); });

  out << "\nCoefficients\n";
  out << "------------\n\n";
  out << pad("Feature", kLabelWidth);
  for (const auto& m : models) out << lpad(model_header(m), kColWidth);
  out << '\n';

  for (std::size_t i = 0; i < kFeatureCount; ++i) {
    const std::string canonical = feature_names()[i];
    bool any = false;
    std::ostringstream row;
    row << pad(feature_display_names()[i], kLabelWidth);
    for (const auto& m : models) {
      std::string cell;
      const auto it = std::find(m.feature_names.begin(), m.feature_names.end(), canonical);
      if (it != m.feature_names.end()) {
        const auto j = static_cast<std::size_t>(it - m.feature_names.begin());
        cell = fmt(m.beta[j]);
        if (j < m.p_values.size()) cell += significance_stars(m.p_values[j]);
        any = true;
      }
      row << lpad(cell, kColWidth);
    }
    row << '\n';
    if (any) out << row.str();
  }

  out << pad("Intercept", kLabelWidth);
  for (const auto& m : models) out << lpad(fmt(m.intercept), kColWidth);
  out << '\n';
  out << "\nNote: * p < 0.1, ** p < 0.05, *** p < 0.01\n";

  bool any_pruned = false;
  for (const auto& m : models) any_pruned = any_pruned || !m.pruning_log.empty();
  if (any_pruned) {
    out << "\nPruned features\n";
    out << "---------------\n";
    for (const auto& m : models)
      for (const auto& e : m.pruning_log)
        out << model_header(m) << ": " << e.column << " (" << e.trigger << ")\n";
  }
  return out.str();
}

std::string report_json(const std::vector<LogitModel>& models,
                        const std::vector<NamedMetrics>& test_metrics) {
  if (models.empty()) fail(errc::empty_input, "Empty: no models to report");
  json root;
  root["models"] = json::array();
  for (const auto& m : models) {
    json jm;
    jm["group"] = m.group;
    jm["observations"] = m.observations;
    jm["df_residuals"] = m.df_residuals;
    jm["pseudo_r2"] = m.pseudo_r2;
    jm["log_likelihood"] = m.ll;
    jm["ll_null"] = m.ll_null;
    jm["llr_p"] = m.llr_p;
    jm["intercept"] = m.intercept;
    json coeffs = json::array();
    for (std::size_t j = 0; j < m.feature_names.size(); ++j) {
      coeffs.push_back({{"feature", m.feature_names[j]},
                        {"beta", m.beta[j]},
                        {"se", j < m.se.size() ? m.se[j] : 0.0},
                        {"p", j < m.p_values.size() ? m.p_values[j] : 1.0},
                        {"stars", j < m.p_values.size() ? significance_stars(m.p_values[j]) : ""}});
    }
    jm["coefficients"] = std::move(coeffs);
    json pruned = json::array();
    for (const auto& e : m.pruning_log)
      pruned.push_back({{"column", e.column}, {"trigger", e.trigger}});
    jm["pruning_log"] = std::move(pruned);
    root["models"].push_back(std::move(jm));
  }
  root["test_metrics"] = json::array();
  for (const auto& tm : test_metrics) {
    root["test_metrics"].push_back({{"name", tm.name},
                                    {"macro_f1", tm.metrics.macro.f1},
                                    {"macro_precision", tm.metrics.macro.precision},
                                    {"macro_recall", tm.metrics.macro.recall}});
  }
  return root.dump(2);
}

std::string metrics_json(const PrfReport& metrics, const ConfusionMatrix& cm) {
  json root;
  auto cls = [](const ClassMetrics& m) {
    return json{{"precision", m.precision},
                {"recall", m.recall},
                {"f1", m.f1},
                {"degenerate", m.degenerate}};
  };
  root["ai_generated"] = cls(metrics.ai);
  root["human_written"] = cls(metrics.human);
  root["macro"] = cls(metrics.macro);
  root["counts"] = {{"tp", cm.tp}, {"fp", cm.fp}, {"fn", cm.fn}, {"tn", cm.tn},
                    {"total", cm.total()}};
  return root.dump(2);
}

}  // namespace scidetect
