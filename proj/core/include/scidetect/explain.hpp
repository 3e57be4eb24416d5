#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "scidetect/textproc.hpp"

namespace scidetect {

// One perturbed variant of a document: which word tokens were kept, and the
// text rebuilt from the survivors.
struct PerturbedSample {
  std::vector<std::uint8_t> mask;  // one entry per word token, 1 = kept
  std::string text;
};

struct Explanation {
  std::string target_text;
  int predicted_label = 0;
  double predicted_prob = 0.0;
  std::vector<std::pair<std::string, double>> attributions;  // |weight| descending
  std::size_t n_samples = 0;
  std::uint64_t seed = 0;
  std::optional<double> surrogate_r2;  // empty when the predictor is constant
  bool exhaustive = false;
  bool degenerate_predictor = false;

  std::string to_json() const;
  // Two-column word/weight table with sign markers.
  std::string render_table() const;
};

struct ExplainOptions {
  std::size_t top_k = 10;
  std::size_t n_samples = 1000;
  std::uint64_t seed = 42;
  // Enumerate all 2^w masks when the document has at most this many word
  // tokens; 0 disables exhaustive mode.
  std::size_t exhaustive_limit = 12;
  double kernel_width = 0.25;  // on 1 - kept fraction
  double ridge = 1e-3;
};

using PredictFn = std::function<double(const std::string&)>;

// Independent keep-with-probability-0.5 masks; sample 0 is always the
// all-ones mask. Deterministic for a fixed seed.
std::vector<PerturbedSample> perturb_samples(const TokenizedDocument& doc, std::size_t n,
                                             std::uint64_t seed);

// All 2^w masks exactly once, the all-ones mask first.
std::vector<PerturbedSample> perturb_exhaustive(const TokenizedDocument& doc);

// Weighted ridge linear surrogate over word-presence masks; attributions are
// the surrogate weights of the top_k words by magnitude.
Explanation explain_prediction(const PredictFn& predict_fn, const TokenizedDocument& doc,
                               const ExplainOptions& options = {});

}  // namespace scidetect
