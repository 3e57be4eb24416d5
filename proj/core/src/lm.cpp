#include "scidetect/lm.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>

#include <nlohmann/json.hpp>

#include "scidetect/error.hpp"

namespace scidetect {

using json = nlohmann::json;

namespace {

constexpr char kCtxSep = '\x1f';

std::string join_context(const std::vector<std::string>& words, std::size_t begin,
                         std::size_t end) {
  std::string key;
  for (std::size_t i = begin; i < end; ++i) {
    if (i > begin) key += kCtxSep;
    key += words[i];
  }
  return key;
}

}  // namespace

std::vector<std::vector<std::string>> lm_sentences(const TokenizedDocument& doc) {
  std::vector<std::vector<std::string>> out;
  out.reserve(doc.sentences.size());
  for (const auto& sent : doc.sentences) {
    std::vector<std::string> words;
    for (const Token& t : sent)
      if (t.is_lexical()) words.push_back(to_lower(t.surface));
    out.push_back(std::move(words));
  }
  return out;
}

std::string NGramModel::normalize_word(const std::string& word) const {
  return vocab_.count(word) ? word : std::string(kUnkMarker);
}

void NGramModel::add_count(const std::vector<std::string>& context, const std::string& word,
                           std::uint64_t count) {
  const auto table_order = context.size() + 1;
  if (tables_.size() < table_order) tables_.resize(table_order);
  ContextCounts& ctx = tables_[table_order - 1][join_context(context, 0, context.size())];
  ctx.total += count;
  ctx.words[word] += count;
}

const NGramModel::ContextCounts* NGramModel::find_context(
    int table_order, const std::vector<std::string>& context, std::size_t context_len) const {
  if (table_order < 1 || static_cast<std::size_t>(table_order) > tables_.size()) return nullptr;
  const CountTable& table = tables_[table_order - 1];
  const std::string key =
      join_context(context, context.size() - context_len, context.size());
  const auto it = table.find(key);
  return it == table.end() ? nullptr : &it->second;
}

double NGramModel::prob(const std::vector<std::string>& context,
                        const std::string& word) const {
  const double v = static_cast<double>(vocab_.size());
  if (v <= 0.0) fail(errc::empty_corpus, "model has an empty vocabulary");
  const std::size_t ctx_len =
      std::min(context.size(), static_cast<std::size_t>(order_ - 1));
  const std::string w = normalize_word(word);

  std::uint64_t count = 0, total = 0;
  if (const ContextCounts* ctx = find_context(static_cast<int>(ctx_len) + 1, context, ctx_len)) {
    total = ctx->total;
    if (auto it = ctx->words.find(w); it != ctx->words.end()) count = it->second;
  }
  return (static_cast<double>(count) + alpha_) /
         (static_cast<double>(total) + alpha_ * v);
}

double NGramModel::log_prob(const std::vector<std::string>& tokens) const {
  double sum = 0.0;
  std::vector<std::string> context;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    context.assign(tokens.begin() + static_cast<std::ptrdiff_t>(
                       i > static_cast<std::size_t>(order_ - 1) ? i - (order_ - 1) : 0),
                   tokens.begin() + static_cast<std::ptrdiff_t>(i));
    for (auto& w : context) w = normalize_word(w);
    sum += std::log(prob(context, tokens[i]));
  }
  return sum;
}

std::pair<double, std::size_t> NGramModel::score_sentence(
    const std::vector<std::string>& words) const {
  // Hand-built models without markers in the vocab are scored unpadded;
  // trained models always carry both markers.
  const bool use_bos = vocab_.count(kBosMarker) > 0;
  const bool use_eos = vocab_.count(kEosMarker) > 0;
  const std::size_t pad = use_bos ? static_cast<std::size_t>(order_ - 1) : 0;

  std::vector<std::string> seq;
  seq.reserve(words.size() + pad + 1);
  for (std::size_t i = 0; i < pad; ++i) seq.emplace_back(kBosMarker);
  for (const auto& w : words) seq.push_back(normalize_word(w));
  if (use_eos) seq.emplace_back(kEosMarker);

  double sum = 0.0;
  for (std::size_t i = pad; i < seq.size(); ++i) {
    const std::size_t ctx_len =
        std::min(i, static_cast<std::size_t>(order_ - 1));
    const std::vector<std::string> context(
        seq.begin() + static_cast<std::ptrdiff_t>(i - ctx_len),
        seq.begin() + static_cast<std::ptrdiff_t>(i));
    sum += std::log(prob(context, seq[i]));
  }
  return {sum, seq.size() - pad};
}

double NGramModel::unigram_prob(const std::string& word) const {
  std::uint64_t count = 0, total = 0;
  if (!tables_.empty()) {
    const auto it = tables_[0].find(std::string());
    if (it != tables_[0].end()) {
      total = it->second.total;
      if (auto wit = it->second.words.find(normalize_word(word)); wit != it->second.words.end())
        count = wit->second;
    }
  }
  return (static_cast<double>(count) + alpha_) /
         (static_cast<double>(total) + alpha_ * static_cast<double>(vocab_.size()));
}

std::vector<std::string> NGramModel::sample_sentence(std::mt19937_64& rng,
                                                     std::size_t max_words) const {
  std::vector<std::string> out;
  std::vector<std::string> state(static_cast<std::size_t>(order_ - 1), kBosMarker);
  while (out.size() < max_words) {
    const ContextCounts* ctx = nullptr;
    for (std::size_t len = state.size(); ; --len) {
      ctx = find_context(static_cast<int>(len) + 1, state, len);
      if (ctx && ctx->total > 0) break;
      if (len == 0) break;
    }
    if (!ctx || ctx->total == 0) break;

    // Raw-count sampling over a deterministic word order; markers that make
    // no sense mid-sentence are excluded.
    std::vector<std::pair<std::string, std::uint64_t>> candidates(ctx->words.begin(),
                                                                  ctx->words.end());
    std::sort(candidates.begin(), candidates.end());
    std::uint64_t mass = 0;
    for (const auto& [w, c] : candidates)
      if (w != kBosMarker && w != kUnkMarker) mass += c;
    if (mass == 0) break;
    std::uniform_int_distribution<std::uint64_t> dist(0, mass - 1);
    std::uint64_t pick = dist(rng);
    std::string chosen;
    for (const auto& [w, c] : candidates) {
      if (w == kBosMarker || w == kUnkMarker) continue;
      if (pick < c) { chosen = w; break; }
      pick -= c;
    }
    if (chosen == kEosMarker) break;
    out.push_back(chosen);
    state.push_back(chosen);
    if (state.size() > static_cast<std::size_t>(order_ - 1))
      state.erase(state.begin(),
                  state.end() - static_cast<std::ptrdiff_t>(order_ - 1));
  }
  return out;
}

NGramModel train_ngram(const std::vector<TokenizedDocument>& docs, int order, double alpha,
                       int min_count) {
  if (order < 1) fail(errc::bad_order, "BadOrder: order must be >= 1");
  if (!(alpha > 0.0)) fail(errc::bad_order, "BadOrder: alpha must be > 0");
  if (docs.empty()) fail(errc::empty_corpus, "EmptyCorpus: no documents");

  std::vector<std::vector<std::string>> sentences;
  std::unordered_map<std::string, std::uint64_t> freq;
  for (const TokenizedDocument& doc : docs) {
    for (auto& words : lm_sentences(doc)) {
      if (words.empty()) continue;
      for (const auto& w : words) ++freq[w];
      sentences.push_back(std::move(words));
    }
  }
  if (sentences.empty()) fail(errc::empty_corpus, "EmptyCorpus: no sentences with word tokens");

  NGramModel model(order, alpha, min_count);
  std::unordered_set<std::string> vocab{kBosMarker, kEosMarker, kUnkMarker};
  for (const auto& [w, c] : freq)
    if (c >= static_cast<std::uint64_t>(min_count)) vocab.insert(w);
  model.set_vocab(std::move(vocab));

  model.tables_.resize(static_cast<std::size_t>(order));
  for (auto& words : sentences) {
    for (auto& w : words) w = model.normalize_word(w);
    for (int k = 1; k <= order; ++k) {
      std::vector<std::string> seq;
      seq.reserve(words.size() + static_cast<std::size_t>(k));
      for (int i = 0; i < k - 1; ++i) seq.emplace_back(kBosMarker);
      seq.insert(seq.end(), words.begin(), words.end());
      seq.emplace_back(kEosMarker);
      for (std::size_t i = static_cast<std::size_t>(k - 1); i < seq.size(); ++i) {
        NGramModel::ContextCounts& ctx =
            model.tables_[static_cast<std::size_t>(k - 1)]
                         [join_context(seq, i - static_cast<std::size_t>(k - 1), i)];
        ctx.total += 1;
        ctx.words[seq[i]] += 1;
      }
    }
  }
  return model;
}

double text_perplexity(const NGramModel& model, const TokenizedDocument& doc) {
  double log_sum = 0.0;
  std::size_t scored = 0;
  for (const auto& words : lm_sentences(doc)) {
    if (words.empty()) continue;
    const auto [lp, n] = model.score_sentence(words);
    log_sum += lp;
    scored += n;
  }
  if (scored == 0) fail(errc::empty_document, "EmptyDocument: nothing to score");
  return std::exp(-log_sum / static_cast<double>(scored));
}

double avg_sentence_perplexity(const NGramModel& model, const TokenizedDocument& doc) {
  double sum = 0.0;
  std::size_t count = 0;
  for (const auto& words : lm_sentences(doc)) {
    if (words.empty()) continue;
    const auto [lp, n] = model.score_sentence(words);
    sum += std::exp(-lp / static_cast<double>(n));
    ++count;
  }
  if (count == 0) fail(errc::empty_document, "EmptyDocument: no scoreable sentences");
  return sum / static_cast<double>(count);
}

namespace {

struct SweepCounts {
  // Macro-F1 of "predict AI (0) when score < t, else human (1)".
  static double macro_f1(const std::vector<double>& scores, const std::vector<int>& labels,
                         double t) {
    std::size_t tp[2] = {0, 0}, fp[2] = {0, 0}, fn[2] = {0, 0};
    for (std::size_t i = 0; i < scores.size(); ++i) {
      const int pred = scores[i] < t ? 0 : 1;
      const int truth = labels[i];
      if (pred == truth) ++tp[truth];
      else { ++fp[pred]; ++fn[truth]; }
    }
    double f1_sum = 0.0;
    for (int c = 0; c < 2; ++c) {
      const double denom = 2.0 * static_cast<double>(tp[c]) + static_cast<double>(fp[c]) +
                           static_cast<double>(fn[c]);
      f1_sum += denom > 0.0 ? 2.0 * static_cast<double>(tp[c]) / denom : 0.0;
    }
    return f1_sum / 2.0;
  }
};

}  // namespace

std::pair<PerplexityThreshold, double> calibrate_threshold(const std::vector<double>& scores,
                                                           const std::vector<int>& labels) {
  if (scores.size() != labels.size())
    fail(errc::length_mismatch, "LengthMismatch: scores vs labels");
  if (scores.empty()) fail(errc::empty_input, "Empty: no calibration scores");
  bool has0 = false, has1 = false;
  for (int y : labels) (y == 0 ? has0 : has1) = true;
  if (!has0 || !has1) fail(errc::one_class_only, "OneClassOnly: need both labels");

  std::vector<double> sorted(scores);
  std::sort(sorted.begin(), sorted.end());
  std::vector<double> candidates;
  for (std::size_t i = 0; i + 1 < sorted.size(); ++i)
    candidates.push_back((sorted[i] + sorted[i + 1]) / 2.0);
  if (candidates.empty()) candidates.push_back(sorted.front());
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  double best_t = candidates.front();
  double best_f1 = -1.0;
  for (double t : candidates) {
    const double f1 = SweepCounts::macro_f1(scores, labels, t);
    if (f1 > best_f1) { best_f1 = f1; best_t = t; }
  }
  PerplexityThreshold th;
  th.threshold = best_t;
  th.text_kind = PerplexityThreshold::TextKind::abstract;
  th.calibration_note = "midpoint sweep over " + std::to_string(scores.size()) +
                        " scores, macro-F1 " + std::to_string(best_f1);
  return {th, best_f1};
}

int classify_by_perplexity(const NGramModel& model, const PerplexityThreshold& th,
                           const TokenizedDocument& doc) {
  return text_perplexity(model, doc) < th.threshold ? 0 : 1;
}

const char* text_kind_name(PerplexityThreshold::TextKind kind) {
  switch (kind) {
    case PerplexityThreshold::TextKind::abstract: return "abstract";
    case PerplexityThreshold::TextKind::wiki: return "wiki";
    case PerplexityThreshold::TextKind::other: return "other";
  }
  return "other";
}

PerplexityThreshold::TextKind parse_text_kind(const std::string& name) {
  if (name == "abstract") return PerplexityThreshold::TextKind::abstract;
  if (name == "wiki") return PerplexityThreshold::TextKind::wiki;
  if (name == "other") return PerplexityThreshold::TextKind::other;
  fail(errc::bad_format, "unknown text kind: " + name);
}

namespace {
constexpr const char* kModelMagic = "scidetect.ngram";
constexpr const char* kThresholdMagic = "scidetect.ppl-threshold";
constexpr int kModelVersion = 1;
}  // namespace

void NGramModel::save(const std::string& path) const {
  json root;
  root["magic"] = kModelMagic;
  root["version"] = kModelVersion;
  root["order"] = order_;
  root["alpha"] = alpha_;
  root["min_count"] = min_count_;
  std::vector<std::string> vocab(vocab_.begin(), vocab_.end());
  std::sort(vocab.begin(), vocab.end());
  root["vocab"] = vocab;
  json tables = json::array();
  for (std::size_t k = 0; k < tables_.size(); ++k) {
    // std::map gives sorted keys, so dumps are reproducible.
    std::map<std::string, const ContextCounts*> sorted_ctx;
    for (const auto& [key, ctx] : tables_[k]) sorted_ctx.emplace(key, &ctx);
    json table = json::object();
    for (const auto& [key, ctx] : sorted_ctx) {
      std::map<std::string, std::uint64_t> words(ctx->words.begin(), ctx->words.end());
      table[key] = words;
    }
    tables.push_back(std::move(table));
  }
  root["tables"] = std::move(tables);

  std::ofstream out(path);
  if (!out) fail(errc::io_failure, "cannot write model file: " + path);
  out << root.dump() << '\n';
  if (!out) fail(errc::io_failure, "write failed: " + path);
}

NGramModel NGramModel::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(errc::io_failure, "cannot open model file: " + path);
  json root;
  try {
    in >> root;
  } catch (const json::exception& e) {
    fail(errc::bad_format, std::string("invalid model file: ") + e.what());
  }
  if (root.value("magic", "") != kModelMagic)
    fail(errc::bad_format, "not an n-gram model file: " + path);
  if (root.value("version", 0) != kModelVersion)
    fail(errc::bad_format, "unsupported model version in " + path);

  NGramModel model(root.at("order").get<int>(), root.at("alpha").get<double>(),
                   root.at("min_count").get<int>());
  std::unordered_set<std::string> vocab;
  for (const auto& w : root.at("vocab")) vocab.insert(w.get<std::string>());
  model.vocab_ = std::move(vocab);
  for (const auto& table : root.at("tables")) {
    model.tables_.emplace_back();
    CountTable& dst = model.tables_.back();
    for (auto it = table.begin(); it != table.end(); ++it) {
      ContextCounts ctx;
      for (auto wit = it.value().begin(); wit != it.value().end(); ++wit) {
        const auto c = wit.value().get<std::uint64_t>();
        ctx.words[wit.key()] = c;
        ctx.total += c;
      }
      dst[it.key()] = std::move(ctx);
    }
  }
  return model;
}

void save_threshold(const std::string& path, const PerplexityThreshold& th, double macro_f1) {
  json root;
  root["magic"] = kThresholdMagic;
  root["version"] = 1;
  root["threshold"] = th.threshold;
  root["text_kind"] = text_kind_name(th.text_kind);
  root["calibration_note"] = th.calibration_note;
  root["macro_f1"] = macro_f1;
  std::ofstream out(path);
  if (!out) fail(errc::io_failure, "cannot write threshold file: " + path);
  out << root.dump(2) << '\n';
}

PerplexityThreshold load_threshold(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(errc::io_failure, "cannot open threshold file: " + path);
  json root;
  try {
    in >> root;
  } catch (const json::exception& e) {
    fail(errc::bad_format, std::string("invalid threshold file: ") + e.what());
  }
  if (root.value("magic", "") != kThresholdMagic)
    fail(errc::bad_format, "not a threshold file: " + path);
  PerplexityThreshold th;
  th.threshold = root.at("threshold").get<double>();
  th.text_kind = parse_text_kind(root.at("text_kind").get<std::string>());
  th.calibration_note = root.value("calibration_note", "");
  return th;
}

}  // namespace scidetect
