#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "scidetect/textproc.hpp"

namespace scidetect {

// Sentence markers and the unknown-word bucket. All three live in the vocab.
inline constexpr const char* kBosMarker = "<s>";
inline constexpr const char* kEosMarker = "</s>";
inline constexpr const char* kUnkMarker = "<unk>";

// Lidstone-smoothed n-gram model over lowercased lexical tokens. Tables for
// every order 1..order are kept: scoring uses the longest available context,
// sampling backs off through the shorter ones.
class NGramModel {
 public:
  struct ContextCounts {
    std::uint64_t total = 0;
    std::unordered_map<std::string, std::uint64_t> words;
  };
  using CountTable = std::unordered_map<std::string, ContextCounts>;

  NGramModel() = default;
  NGramModel(int order, double alpha, int min_count)
      : order_(order), alpha_(alpha), min_count_(min_count) {}

  int order() const { return order_; }
  double alpha() const { return alpha_; }
  int min_count() const { return min_count_; }
  const std::unordered_set<std::string>& vocab() const { return vocab_; }
  std::size_t vocab_size() const { return vocab_.size(); }

  // Maps out-of-vocabulary words to the UNK bucket.
  std::string normalize_word(const std::string& word) const;

  // Lidstone probability of `word` given up to order-1 context words.
  // Contexts never seen in training fall back to the uniform 1/V mass.
  double prob(const std::vector<std::string>& context, const std::string& word) const;

  // Sum of ln prob over the sequence, each token conditioned on the
  // preceding min(i, order-1) tokens. No implicit padding; empty gives 0.
  double log_prob(const std::vector<std::string>& tokens) const;

  // Samples one sentence from the raw (unsmoothed) counts, backing off to
  // shorter contexts when the full one is unseen. Markers are not emitted.
  std::vector<std::string> sample_sentence(std::mt19937_64& rng,
                                           std::size_t max_words = 60) const;

  // Test/tooling access for hand-built models.
  void set_vocab(std::unordered_set<std::string> vocab) { vocab_ = std::move(vocab); }
  void add_count(const std::vector<std::string>& context, const std::string& word,
                 std::uint64_t count);

  void save(const std::string& path) const;
  static NGramModel load(const std::string& path);

  // Scores one sentence with order-1 BOS padding and a final EOS, returning
  // (sum of ln p, number of scored tokens = words + end marker).
  std::pair<double, std::size_t> score_sentence(const std::vector<std::string>& words) const;

  // Unigram probability (table 1), used as the background distribution for
  // the title generation score.
  double unigram_prob(const std::string& word) const;

 private:
  friend NGramModel train_ngram(const std::vector<TokenizedDocument>&, int, double, int);

  const ContextCounts* find_context(int table_order, const std::vector<std::string>& context,
                                    std::size_t context_len) const;

  int order_ = 3;
  double alpha_ = 0.1;
  int min_count_ = 2;
  std::unordered_set<std::string> vocab_;
  std::vector<CountTable> tables_;  // tables_[k-1] holds the k-gram counts
};

// Perplexity-threshold classifier state: "AI if perplexity < threshold".
struct PerplexityThreshold {
  double threshold = 0.0;
  enum class TextKind { abstract, wiki, other } text_kind = TextKind::abstract;
  std::string calibration_note;
};

const char* text_kind_name(PerplexityThreshold::TextKind kind);
PerplexityThreshold::TextKind parse_text_kind(const std::string& name);

// Reference constants reported for SciBERT-scored text; local models must
// recalibrate, these ship for documentation only.
inline constexpr double kReportedAbstractThreshold = 2.6;
inline constexpr double kReportedWikiThreshold = 4.6;

// Lowercased lexical tokens of every sentence; the LM's training/eval view
// of a document.
std::vector<std::vector<std::string>> lm_sentences(const TokenizedDocument& doc);

NGramModel train_ngram(const std::vector<TokenizedDocument>& docs, int order = 3,
                       double alpha = 0.1, int min_count = 2);

double text_perplexity(const NGramModel& model, const TokenizedDocument& doc);
double avg_sentence_perplexity(const NGramModel& model, const TokenizedDocument& doc);

// Sweeps candidate thresholds at midpoints of adjacent sorted scores and
// returns the macro-F1 maximizer of "AI if score < t" (ties toward the
// smaller threshold). Also reports the achieved macro-F1.
std::pair<PerplexityThreshold, double> calibrate_threshold(const std::vector<double>& scores,
                                                           const std::vector<int>& labels);

int classify_by_perplexity(const NGramModel& model, const PerplexityThreshold& th,
                           const TokenizedDocument& doc);

void save_threshold(const std::string& path, const PerplexityThreshold& th, double macro_f1);
PerplexityThreshold load_threshold(const std::string& path);

}  // namespace scidetect
