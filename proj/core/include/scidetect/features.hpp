#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "scidetect/corpus.hpp"
#include "scidetect/lm.hpp"
#include "scidetect/textproc.hpp"

namespace scidetect {

enum class FeatureGroup { syntax, semantics, pragmatics };

const char* feature_group_name(FeatureGroup g);

inline constexpr std::size_t kFeatureCount = 27;
inline constexpr std::size_t kSyntaxFeatureCount = 20;
inline constexpr std::size_t kSemanticsFeatureCount = 5;
inline constexpr std::size_t kPragmaticsFeatureCount = 2;

// Canonical feature order; every consumer (CSV, detector, report) uses it.
const std::array<const char*, kFeatureCount>& feature_names();
// Human-readable row labels for the regression report.
const std::array<const char*, kFeatureCount>& feature_display_names();
FeatureGroup feature_group(std::size_t index);
std::vector<std::size_t> feature_indices(FeatureGroup g);

struct FeatureVector {
  std::array<double, kFeatureCount> values{};

  double operator[](std::size_t i) const { return values[i]; }
  double& operator[](std::size_t i) { return values[i]; }
  double by_name(const std::string& name) const;
};

// Sparse L2-normalized tf-idf vector.
struct SparseVector {
  std::vector<std::pair<std::uint32_t, double>> entries;  // sorted by index

  bool is_zero() const { return entries.empty(); }
  double dot(const SparseVector& other) const;
};

double cosine(const SparseVector& u, const SparseVector& v);

// tf-idf embedding backend: sublinear tf, smoothed idf, L2 normalization.
// Stands behind the same interface a neural sentence encoder would.
class EmbeddingModel {
 public:
  EmbeddingModel() = default;

  static EmbeddingModel build(const std::vector<TokenizedDocument>& docs);

  SparseVector embed(const std::vector<std::string>& tokens) const;
  SparseVector embed_sentence(const std::vector<Token>& sentence) const;

  std::size_t vocab_size() const { return idf_.size(); }
  const std::string& fingerprint() const { return fingerprint_; }

  void save(const std::string& path) const;
  static EmbeddingModel load(const std::string& path);

 private:
  std::unordered_map<std::string, std::uint32_t> vocabulary_;
  std::vector<double> idf_;
  std::string fingerprint_;
};

// Tunable knobs with fixed, documented defaults.
struct FeatureParams {
  double gen_mixture_lambda = 0.7;  // weight of the abstract-local unigram
  double gen_doc_alpha = 1.0;       // add-alpha for the abstract unigram
  double tau_redundancy = 0.85;     // cosine at or above = redundant pair
  double tau_overlap = 0.5;         // content-word Jaccard gate for contradiction
};

// The 20 syntax values in canonical order. Perplexities are passed through
// from the language model.
std::array<double, kSyntaxFeatureCount> writing_style_features(const TokenizedDocument& doc,
                                                               double lm_text_ppl,
                                                               double lm_avg_sent_ppl);

double flesch_reading_ease(const TokenizedDocument& doc);

struct CoherenceStats {
  double avg = 1.0;
  double std_dev = 0.0;
  double max = 1.0;
};

CoherenceStats coherence_features(const TokenizedDocument& doc, const EmbeddingModel& emb);

struct ConsistencyStats {
  double cos_title_abstract = 0.0;
  double gen_score = 0.0;
};

ConsistencyStats consistency_features(const std::vector<Token>& title_tokens,
                                      const TokenizedDocument& doc, const EmbeddingModel& emb,
                                      const NGramModel& lm,
                                      const FeatureParams& params = {});

struct PragmaticsStats {
  double self_contradiction = 0.0;
  double redundancy = 0.0;
};

PragmaticsStats pragmatics_features(const TokenizedDocument& doc, const EmbeddingModel& emb,
                                    const Lexicons& lex, const FeatureParams& params = {});

FeatureVector assemble_feature_vector(const LabeledRecord& record, const NGramModel& lm,
                                      const EmbeddingModel& emb, const Lexicons& lex,
                                      const FeatureParams& params = {});

// A featurized corpus: one row per record, canonical column order.
struct FeatureTable {
  std::vector<std::string> ids;
  std::vector<int> labels;
  std::vector<FeatureVector> rows;

  std::size_t size() const { return rows.size(); }
};

FeatureTable featurize_corpus(const std::vector<LabeledRecord>& records, const NGramModel& lm,
                              const EmbeddingModel& emb, const Lexicons& lex,
                              const FeatureParams& params = {});

// CSV: canonical feature columns then id,label; floats at 10 significant
// digits; '#'-prefixed provenance lines are skipped on read.
void write_feature_csv(const std::string& path, const FeatureTable& table,
                       const std::vector<std::string>& provenance_lines = {});
FeatureTable read_feature_csv(const std::string& path);

}  // namespace scidetect
