#include "scidetect/explain.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

#include "linalg.hpp"
#include "scidetect/error.hpp"

namespace scidetect {

using json = nlohmann::json;

namespace {

std::size_t count_word_tokens(const TokenizedDocument& doc) {
  std::size_t n = 0;
  for (const auto& sent : doc.sentences)
    for (const Token& t : sent)
      if (t.is_lexical()) ++n;
  return n;
}

std::vector<std::string> word_surfaces(const TokenizedDocument& doc) {
  std::vector<std::string> out;
  for (const auto& sent : doc.sentences)
    for (const Token& t : sent)
      if (t.is_lexical()) out.push_back(t.surface);
  return out;
}

// Rebuilds text from the kept word tokens; punctuation always survives so
// sentence boundaries stay visible to the predictor.
std::string apply_mask(const TokenizedDocument& doc, const std::vector<std::uint8_t>& mask) {
  std::string text;
  std::size_t w = 0;
  for (const auto& sent : doc.sentences) {
    for (const Token& t : sent) {
      const bool keep = !t.is_lexical() || mask[w++] != 0;
      if (!keep) continue;
      if (!text.empty()) text += ' ';
      text += t.surface;
    }
  }
  return text;
}

}  // namespace

std::vector<PerturbedSample> perturb_samples(const TokenizedDocument& doc, std::size_t n,
                                             std::uint64_t seed) {
  const std::size_t w = count_word_tokens(doc);
  if (w == 0) fail(errc::empty_document, "EmptyDocument: no word tokens to perturb");
  if (n < 1) fail(errc::bad_format, "need at least one sample");

  std::vector<PerturbedSample> samples;
  samples.reserve(n);
  samples.push_back({std::vector<std::uint8_t>(w, 1), std::string()});
  std::mt19937_64 rng(seed);
  for (std::size_t s = 1; s < n; ++s) {
    std::vector<std::uint8_t> mask(w);
    for (std::size_t i = 0; i < w; ++i) mask[i] = static_cast<std::uint8_t>(rng() & 1u);
    samples.push_back({std::move(mask), std::string()});
  }
  for (auto& sample : samples) sample.text = apply_mask(doc, sample.mask);
  return samples;
}

std::vector<PerturbedSample> perturb_exhaustive(const TokenizedDocument& doc) {
  const std::size_t w = count_word_tokens(doc);
  if (w == 0) fail(errc::empty_document, "EmptyDocument: no word tokens to perturb");
  if (w > 20) fail(errc::bad_format, "exhaustive mode capped at 20 word tokens");

  const std::size_t total = std::size_t(1) << w;
  std::vector<PerturbedSample> samples;
  samples.reserve(total);
  samples.push_back({std::vector<std::uint8_t>(w, 1), std::string()});
  for (std::size_t bits = 0; bits < total; ++bits) {
    if (bits == total - 1) continue;  // all-ones already emitted first
    std::vector<std::uint8_t> mask(w);
    for (std::size_t i = 0; i < w; ++i)
      mask[i] = static_cast<std::uint8_t>((bits >> i) & 1u);
    samples.push_back({std::move(mask), std::string()});
  }
  for (auto& sample : samples) sample.text = apply_mask(doc, sample.mask);
  return samples;
}

Explanation explain_prediction(const PredictFn& predict_fn, const TokenizedDocument& doc,
                               const ExplainOptions& options) {
  const std::size_t w = count_word_tokens(doc);
  if (w == 0) fail(errc::empty_document, "EmptyDocument: no word tokens to explain");

  const bool exhaustive = options.exhaustive_limit > 0 && w <= options.exhaustive_limit;
  std::vector<PerturbedSample> samples =
      exhaustive ? perturb_exhaustive(doc)
                 : perturb_samples(doc, std::max<std::size_t>(options.n_samples, 10), options.seed);

  std::vector<double> y(samples.size());
  std::vector<double> kernel(samples.size());
  const double width2 = options.kernel_width * options.kernel_width;
  for (std::size_t s = 0; s < samples.size(); ++s) {
    y[s] = predict_fn(samples[s].text);
    double kept = 0.0;
    for (auto b : samples[s].mask) kept += b;
    const double dist = 1.0 - kept / static_cast<double>(w);
    kernel[s] = std::exp(-(dist * dist) / width2);
  }

  Explanation ex;
  ex.target_text = doc.raw_text;
  ex.predicted_prob = predict_fn(doc.raw_text);
  ex.predicted_label = ex.predicted_prob >= 0.5 ? 1 : 0;
  ex.n_samples = samples.size();
  ex.seed = options.seed;
  ex.exhaustive = exhaustive;

  double ymin = y[0], ymax = y[0];
  for (double v : y) { ymin = std::min(ymin, v); ymax = std::max(ymax, v); }
  ex.degenerate_predictor = (ymax - ymin) < 1e-12;

  // Weighted ridge least squares over [mask bits, intercept]; the intercept
  // is unpenalized.
  const std::size_t d = w + 1;
  detail::SquareMatrix gram(d);
  std::vector<double> rhs(d, 0.0);
  for (std::size_t s = 0; s < samples.size(); ++s) {
    const double k = kernel[s];
    const auto& mask = samples[s].mask;
    for (std::size_t i = 0; i < w; ++i) {
      if (!mask[i]) continue;
      rhs[i] += k * y[s];
      for (std::size_t j = i; j < w; ++j)
        if (mask[j]) gram.at(i, j) += k;
      gram.at(i, w) += k;
    }
    rhs[w] += k * y[s];
    gram.at(w, w) += k;
  }
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < i; ++j) gram.at(i, j) = gram.at(j, i);
  for (std::size_t i = 0; i < w; ++i) gram.at(i, i) += options.ridge;

  std::vector<double> theta(rhs);
  if (!gram.solve(theta)) theta.assign(d, 0.0);

  // Weighted in-sample R^2 of the surrogate.
  double wsum = 0.0, wy = 0.0;
  for (std::size_t s = 0; s < samples.size(); ++s) { wsum += kernel[s]; wy += kernel[s] * y[s]; }
  const double ybar = wy / wsum;
  double ss_res = 0.0, ss_tot = 0.0;
  for (std::size_t s = 0; s < samples.size(); ++s) {
    double fit = theta[w];
    for (std::size_t i = 0; i < w; ++i)
      if (samples[s].mask[i]) fit += theta[i];
    ss_res += kernel[s] * (y[s] - fit) * (y[s] - fit);
    ss_tot += kernel[s] * (y[s] - ybar) * (y[s] - ybar);
  }
  if (!ex.degenerate_predictor && ss_tot > 0.0)
    ex.surrogate_r2 = 1.0 - ss_res / ss_tot;

  const std::vector<std::string> words = word_surfaces(doc);
  std::vector<std::size_t> order(w);
  for (std::size_t i = 0; i < w; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::fabs(theta[a]) > std::fabs(theta[b]);
  });
  const std::size_t keep = std::min(options.top_k, w);
  for (std::size_t k = 0; k < keep; ++k)
    ex.attributions.emplace_back(words[order[k]],
                                 ex.degenerate_predictor ? 0.0 : theta[order[k]]);
  return ex;
}

std::string Explanation::to_json() const {
  json root;
  root["target_text"] = target_text;
  root["predicted_label"] = predicted_label;
  root["predicted_prob"] = predicted_prob;
  json attr = json::array();
  for (const auto& [word, weight] : attributions) attr.push_back({{"word", word}, {"weight", weight}});
  root["attributions"] = std::move(attr);
  root["n_samples"] = n_samples;
  root["seed"] = seed;
  if (surrogate_r2) root["surrogate_r2"] = *surrogate_r2;
  else root["surrogate_r2"] = nullptr;
  root["exhaustive"] = exhaustive;
  root["degenerate_predictor"] = degenerate_predictor;
  return root.dump(2);
}

std::string Explanation::render_table() const {
  std::ostringstream out;
  out << "prediction: label " << predicted_label << " (p_human=";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", predicted_prob);
  out << buf << ")\n";
  if (degenerate_predictor) out << "predictor is constant; all attributions are zero\n";
  out << "word                        weight\n";
  out << "----                        ------\n";
  for (const auto& [word, weight] : attributions) {
    std::snprintf(buf, sizeof buf, "%+.6f", weight);
    std::string w = word.size() > 26 ? word.substr(0, 26) : word;
    out << w << std::string(28 - w.size(), ' ') << buf << '\n';
  }
  return out.str();
}

}  // namespace scidetect
