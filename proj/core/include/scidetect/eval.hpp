#pragma once

#include <string>
#include <vector>

#include "scidetect/detector.hpp"

namespace scidetect {

// Binary confusion counts with AI-generated (label 0) as the positive class.
struct ConfusionMatrix {
  std::size_t tp = 0;  // predicted AI, is AI
  std::size_t fp = 0;  // predicted AI, is human
  std::size_t fn = 0;  // predicted human, is AI
  std::size_t tn = 0;  // predicted human, is human

  std::size_t total() const { return tp + fp + fn + tn; }
  // The same counts seen from the human class.
  ConfusionMatrix mirrored() const { return {tn, fn, fp, tp}; }
};

ConfusionMatrix confusion(const std::vector<int>& predictions, const std::vector<int>& labels);

struct ClassMetrics {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  bool degenerate = false;  // some 0/0 was reported as 0
};

struct PrfReport {
  ClassMetrics ai;      // positive = AI-generated
  ClassMetrics human;
  ClassMetrics macro;   // unweighted class mean
};

double f1_score(double precision, double recall);
ClassMetrics class_metrics(const ConfusionMatrix& cm);
PrfReport prf(const ConfusionMatrix& cm);

struct NamedMetrics {
  std::string name;
  PrfReport metrics;
};

// Plain-text regression report: a model-information block and a coefficient
// matrix with significance stars, plus optional held-out metrics rows.
std::string report(const std::vector<LogitModel>& models,
                   const std::vector<NamedMetrics>& test_metrics = {});

// Machine-readable twin of report() with identical numbers.
std::string report_json(const std::vector<LogitModel>& models,
                        const std::vector<NamedMetrics>& test_metrics = {});

std::string metrics_json(const PrfReport& metrics, const ConfusionMatrix& cm);

}  // namespace scidetect
