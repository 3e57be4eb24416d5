#include "scidetect/features.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include <nlohmann/json.hpp>

#include "scidetect/error.hpp"

namespace scidetect {

using json = nlohmann::json;

namespace {

const std::array<const char*, kFeatureCount> kNames = {
    "avg_word_len", "pos_ADJ", "pos_ADV", "pos_CONJ", "pos_NOUN", "pos_NUM",
    "pos_PRON", "pos_VERB", "flesch", "punct_comma", "punct_period",
    "special_hyphen", "uppercase", "fw_a", "fw_in", "fw_of", "fw_the",
    "avg_sent_len", "avg_sent_ppl", "text_ppl", "cos_title_abstract",
    "coh_avg", "coh_std", "coh_max", "gen_score", "self_contradiction",
    "redundancy",
};

const std::array<const char*, kFeatureCount> kDisplayNames = {
    "Average Word Length",
    "POS Tag Frequency #ADJ",
    "POS Tag Frequency #ADV",
    "POS Tag Frequency #CONJ",
    "POS Tag Frequency #NOUN",
    "POS Tag Frequency #NUM",
    "POS Tag Frequency #PRON",
    "POS Tag Frequency #VERB",
    "Flesch Reading Ease",
    "Punctuation Frequency#,",
    "Punctuation Frequency#.",
    "Special Character Frequency#-",
    "Uppercase Frequency",
    "Function word Frequency #a",
    "Function word Frequency #in",
    "Function word Frequency #of",
    "Function word Frequency #the",
    "Average Sentences Length",
    "Avg Sentences PPL",
    "Text PPL",
    "Cos Similarity between Abstract and Title",
    "Avg Abstract Sentences Cos Similarity",
    "Std Abstract Sentences Cos Similarity",
    "Max Abstract Sentences Cos Similarity",
    "Generation Score for Abstract and Title",
    "Self-contradiction",
    "Redundant",
};

std::size_t feature_index(const std::string& name) {
  for (std::size_t i = 0; i < kFeatureCount; ++i)
    if (name == kNames[i]) return i;
  fail(errc::missing_feature, "MissingFeature(" + name + ")");
}

std::uint64_t fnv1a(const std::string& data, std::uint64_t h = 1469598103934665603ULL) {
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

// Lowercased alphabetic word surfaces of a sentence; the embedding view.
std::vector<std::string> embedding_words(const std::vector<Token>& tokens) {
  std::vector<std::string> words;
  for (const Token& t : tokens)
    if (t.kind == TokenKind::word) words.push_back(to_lower(t.surface));
  return words;
}

// Light suffix strip so inflection does not defeat the overlap check
// ("converges" vs "converge").
std::string light_stem(std::string w) {
  if (w.size() > 2 && w.compare(w.size() - 2, 2, "'s") == 0) w.resize(w.size() - 2);
  if (w.size() > 3 && w.back() == 's') {
    const std::string tail2 = w.substr(w.size() - 2);
    if (tail2 != "ss" && tail2 != "us" && tail2 != "is") w.resize(w.size() - 1);
  }
  return w;
}

}  // namespace

const char* feature_group_name(FeatureGroup g) {
  switch (g) {
    case FeatureGroup::syntax: return "syntax";
    case FeatureGroup::semantics: return "semantics";
    case FeatureGroup::pragmatics: return "pragmatics";
  }
  return "syntax";
}

const std::array<const char*, kFeatureCount>& feature_names() { return kNames; }
const std::array<const char*, kFeatureCount>& feature_display_names() { return kDisplayNames; }

FeatureGroup feature_group(std::size_t index) {
  if (index < kSyntaxFeatureCount) return FeatureGroup::syntax;
  if (index < kSyntaxFeatureCount + kSemanticsFeatureCount) return FeatureGroup::semantics;
  return FeatureGroup::pragmatics;
}

std::vector<std::size_t> feature_indices(FeatureGroup g) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < kFeatureCount; ++i)
    if (feature_group(i) == g) out.push_back(i);
  return out;
}

double FeatureVector::by_name(const std::string& name) const {
  return values[feature_index(name)];
}

double SparseVector::dot(const SparseVector& other) const {
  double sum = 0.0;
  std::size_t i = 0, j = 0;
  while (i < entries.size() && j < other.entries.size()) {
    if (entries[i].first == other.entries[j].first) {
      sum += entries[i].second * other.entries[j].second;
      ++i;
      ++j;
    } else if (entries[i].first < other.entries[j].first) {
      ++i;
    } else {
      ++j;
    }
  }
  return sum;
}

double cosine(const SparseVector& u, const SparseVector& v) {
  if (u.is_zero() || v.is_zero()) return 0.0;
  double nu = 0.0, nv = 0.0;
  for (const auto& [_, x] : u.entries) nu += x * x;
  for (const auto& [_, x] : v.entries) nv += x * x;
  if (nu == 0.0 || nv == 0.0) return 0.0;
  return u.dot(v) / (std::sqrt(nu) * std::sqrt(nv));
}

EmbeddingModel EmbeddingModel::build(const std::vector<TokenizedDocument>& docs) {
  if (docs.empty()) fail(errc::empty_corpus, "EmptyCorpus: no documents for embedding model");
  std::map<std::string, std::size_t> df;  // ordered so indices are stable
  for (const TokenizedDocument& doc : docs) {
    std::map<std::string, bool> seen;
    for (const auto& sent : doc.sentences)
      for (const auto& w : embedding_words(sent)) seen.emplace(w, true);
    for (const auto& w : embedding_words(doc.title_tokens)) seen.emplace(w, true);
    for (const auto& [w, _] : seen) ++df[w];
  }
  EmbeddingModel model;
  const double n = static_cast<double>(docs.size());
  std::uint64_t h = fnv1a(std::to_string(docs.size()));
  std::uint32_t index = 0;
  for (const auto& [word, count] : df) {
    model.vocabulary_.emplace(word, index++);
    model.idf_.push_back(std::log((1.0 + n) / (1.0 + static_cast<double>(count))) + 1.0);
    h = fnv1a(word, h);
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  model.fingerprint_ = buf;
  return model;
}

SparseVector EmbeddingModel::embed(const std::vector<std::string>& tokens) const {
  std::map<std::uint32_t, double> tf;
  for (const std::string& t : tokens) {
    const auto it = vocabulary_.find(t);
    if (it != vocabulary_.end()) tf[it->second] += 1.0;
  }
  SparseVector vec;
  double norm_sq = 0.0;
  for (const auto& [idx, count] : tf) {
    const double w = (1.0 + std::log(count)) * idf_[idx];
    vec.entries.emplace_back(idx, w);
    norm_sq += w * w;
  }
  if (norm_sq > 0.0) {
    const double inv = 1.0 / std::sqrt(norm_sq);
    for (auto& [_, w] : vec.entries) w *= inv;
  }
  return vec;
}

SparseVector EmbeddingModel::embed_sentence(const std::vector<Token>& sentence) const {
  return embed(embedding_words(sentence));
}

void EmbeddingModel::save(const std::string& path) const {
  json root;
  root["magic"] = "scidetect.tfidf";
  root["version"] = 1;
  root["fingerprint"] = fingerprint_;
  std::map<std::string, std::uint32_t> sorted(vocabulary_.begin(), vocabulary_.end());
  json vocab = json::array();
  for (const auto& [word, idx] : sorted) vocab.push_back({word, idx, idf_[idx]});
  root["vocab"] = std::move(vocab);
  std::ofstream out(path);
  if (!out) fail(errc::io_failure, "cannot write embedding file: " + path);
  out << root.dump() << '\n';
}

EmbeddingModel EmbeddingModel::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(errc::io_failure, "cannot open embedding file: " + path);
  json root;
  try {
    in >> root;
  } catch (const json::exception& e) {
    fail(errc::bad_format, std::string("invalid embedding file: ") + e.what());
  }
  if (root.value("magic", "") != "scidetect.tfidf")
    fail(errc::bad_format, "not an embedding model file: " + path);
  EmbeddingModel model;
  model.fingerprint_ = root.value("fingerprint", "");
  const auto& vocab = root.at("vocab");
  model.idf_.resize(vocab.size());
  for (const auto& entry : vocab) {
    const auto idx = entry.at(1).get<std::uint32_t>();
    model.vocabulary_.emplace(entry.at(0).get<std::string>(), idx);
    model.idf_.at(idx) = entry.at(2).get<double>();
  }
  return model;
}

std::array<double, kSyntaxFeatureCount> writing_style_features(const TokenizedDocument& doc,
                                                               double lm_text_ppl,
                                                               double lm_avg_sent_ppl) {
  if (doc.empty()) fail(errc::empty_document, "EmptyDocument");

  std::size_t lexical = 0, all_tokens = 0;
  std::size_t word_kind = 0, syllables = 0;
  std::size_t chars_lexical = 0, chars_all = 0, hyphens = 0;
  std::size_t letters = 0, upper_letters = 0;
  std::size_t commas = 0, periods = 0;
  std::array<std::size_t, kFeatureCount> pos_counts{};
  std::size_t fw_a = 0, fw_in = 0, fw_of = 0, fw_the = 0;

  for (const auto& sent : doc.sentences) {
    for (const Token& t : sent) {
      ++all_tokens;
      chars_all += t.surface.size();
      for (char c : t.surface) {
        if (c == '-') ++hyphens;
        if (std::isalpha(static_cast<unsigned char>(c))) {
          ++letters;
          if (std::isupper(static_cast<unsigned char>(c))) ++upper_letters;
        }
      }
      if (t.kind == TokenKind::punctuation) {
        if (t.surface == ",") ++commas;
        if (t.surface == ".") ++periods;
        continue;
      }
      if (!t.is_lexical()) continue;
      ++lexical;
      chars_lexical += t.surface.size();
      switch (t.pos) {
        case PosTag::ADJ: ++pos_counts[1]; break;
        case PosTag::ADV: ++pos_counts[2]; break;
        case PosTag::CONJ: ++pos_counts[3]; break;
        case PosTag::NOUN: ++pos_counts[4]; break;
        case PosTag::NUM: ++pos_counts[5]; break;
        case PosTag::PRON: ++pos_counts[6]; break;
        case PosTag::VERB: ++pos_counts[7]; break;
        default: break;
      }
      if (t.kind == TokenKind::word) {
        ++word_kind;
        syllables += static_cast<std::size_t>(count_syllables(t.surface));
      }
      const std::string w = to_lower(t.surface);
      if (w == "a") ++fw_a;
      else if (w == "in") ++fw_in;
      else if (w == "of") ++fw_of;
      else if (w == "the") ++fw_the;
    }
  }
  if (lexical == 0) fail(errc::empty_document, "EmptyDocument: no word tokens");

  const double nl = static_cast<double>(lexical);
  const double nt = static_cast<double>(all_tokens);
  const double ns = static_cast<double>(doc.sentences.size());

  std::array<double, kSyntaxFeatureCount> out{};
  out[0] = static_cast<double>(chars_lexical) / nl;
  for (std::size_t k = 1; k <= 7; ++k) out[k] = static_cast<double>(pos_counts[k]) / nl;
  // Flesch over word-kind tokens; documents made only of numbers fall back
  // to a zero syllable ratio.
  const double nw = static_cast<double>(word_kind);
  out[8] = 206.835 - 1.015 * (nw / ns) -
           84.6 * (nw > 0 ? static_cast<double>(syllables) / nw : 0.0);
  out[9] = static_cast<double>(commas) / nt;
  out[10] = static_cast<double>(periods) / nt;
  out[11] = chars_all > 0 ? static_cast<double>(hyphens) / static_cast<double>(chars_all) : 0.0;
  out[12] = letters > 0 ? static_cast<double>(upper_letters) / static_cast<double>(letters) : 0.0;
  out[13] = static_cast<double>(fw_a) / nl;
  out[14] = static_cast<double>(fw_in) / nl;
  out[15] = static_cast<double>(fw_of) / nl;
  out[16] = static_cast<double>(fw_the) / nl;
  out[17] = nl / ns;
  out[18] = lm_avg_sent_ppl;
  out[19] = lm_text_ppl;
  return out;
}

double flesch_reading_ease(const TokenizedDocument& doc) {
  if (doc.empty()) fail(errc::empty_document, "EmptyDocument");
  std::size_t words = 0, syllables = 0;
  for (const auto& sent : doc.sentences)
    for (const Token& t : sent)
      if (t.kind == TokenKind::word) {
        ++words;
        syllables += static_cast<std::size_t>(count_syllables(t.surface));
      }
  if (words == 0) fail(errc::empty_document, "EmptyDocument: no word tokens");
  const double w = static_cast<double>(words);
  const double s = static_cast<double>(doc.sentences.size());
  return 206.835 - 1.015 * (w / s) - 84.6 * (static_cast<double>(syllables) / w);
}

CoherenceStats coherence_features(const TokenizedDocument& doc, const EmbeddingModel& emb) {
  if (doc.empty()) fail(errc::empty_document, "EmptyDocument");
  if (doc.sentences.size() == 1) return {1.0, 0.0, 1.0};

  std::vector<SparseVector> vecs;
  vecs.reserve(doc.sentences.size());
  for (const auto& sent : doc.sentences) vecs.push_back(emb.embed_sentence(sent));

  std::vector<double> sims;
  for (std::size_t i = 0; i < vecs.size(); ++i)
    for (std::size_t j = i + 1; j < vecs.size(); ++j) sims.push_back(cosine(vecs[i], vecs[j]));

  double mean = 0.0;
  for (double s : sims) mean += s;
  mean /= static_cast<double>(sims.size());
  double var = 0.0;
  for (double s : sims) var += (s - mean) * (s - mean);
  var /= static_cast<double>(sims.size());

  CoherenceStats stats;
  stats.avg = mean;
  stats.std_dev = std::sqrt(var);
  stats.max = *std::max_element(sims.begin(), sims.end());
  return stats;
}

ConsistencyStats consistency_features(const std::vector<Token>& title_tokens,
                                      const TokenizedDocument& doc, const EmbeddingModel& emb,
                                      const NGramModel& lm, const FeatureParams& params) {
  std::vector<std::string> title_words;
  for (const Token& t : title_tokens)
    if (t.is_lexical()) title_words.push_back(to_lower(t.surface));
  if (title_words.empty()) fail(errc::empty_title, "EmptyTitle");
  if (doc.empty()) fail(errc::empty_document, "EmptyDocument");

  const SparseVector title_vec = emb.embed(embedding_words(title_tokens));
  double cos_sum = 0.0;
  for (const auto& sent : doc.sentences)
    cos_sum += cosine(title_vec, emb.embed_sentence(sent));

  // How predictable is the title given the abstract: mean per-token log
  // probability under a mixture of the abstract's own unigram and the
  // trained model's background unigram.
  std::unordered_map<std::string, double> abstract_counts;
  double abstract_len = 0.0;
  for (const auto& sent : doc.sentences)
    for (const Token& t : sent)
      if (t.is_lexical()) {
        abstract_counts[to_lower(t.surface)] += 1.0;
        abstract_len += 1.0;
      }
  const double v = static_cast<double>(lm.vocab_size());
  double gen = 0.0;
  for (const std::string& w : title_words) {
    double doc_count = 0.0;
    if (auto it = abstract_counts.find(w); it != abstract_counts.end()) doc_count = it->second;
    const double p_doc =
        (doc_count + params.gen_doc_alpha) / (abstract_len + params.gen_doc_alpha * v);
    const double p_bg = lm.unigram_prob(w);
    gen += std::log(params.gen_mixture_lambda * p_doc +
                    (1.0 - params.gen_mixture_lambda) * p_bg);
  }

  ConsistencyStats stats;
  stats.cos_title_abstract = cos_sum / static_cast<double>(doc.sentences.size());
  stats.gen_score = gen / static_cast<double>(title_words.size());
  return stats;
}

PragmaticsStats pragmatics_features(const TokenizedDocument& doc, const EmbeddingModel& emb,
                                    const Lexicons& lex, const FeatureParams& params) {
  if (doc.empty()) fail(errc::empty_document, "EmptyDocument");
  const std::size_t n = doc.sentences.size();
  if (n == 1) return {0.0, 0.0};

  std::vector<SparseVector> vecs(n);
  std::vector<std::vector<std::string>> content(n);
  std::vector<bool> negated(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    vecs[i] = emb.embed_sentence(doc.sentences[i]);
    for (const Token& t : doc.sentences[i]) {
      if (!t.is_lexical()) continue;
      const std::string w = to_lower(t.surface);
      if (lex.negation_cues.count(w) ||
          (w.size() > 3 && w.compare(w.size() - 3, 3, "n't") == 0)) {
        negated[i] = true;
        continue;
      }
      if (t.kind == TokenKind::word && !lex.function_words.count(w))
        content[i].push_back(light_stem(w));
    }
    std::sort(content[i].begin(), content[i].end());
    content[i].erase(std::unique(content[i].begin(), content[i].end()), content[i].end());
  }

  std::size_t pairs = 0, redundant_pairs = 0, overlap_pairs = 0, contradiction_pairs = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      ++pairs;
      if (cosine(vecs[i], vecs[j]) >= params.tau_redundancy) ++redundant_pairs;
      std::vector<std::string> inter, uni;
      std::set_intersection(content[i].begin(), content[i].end(), content[j].begin(),
                            content[j].end(), std::back_inserter(inter));
      std::set_union(content[i].begin(), content[i].end(), content[j].begin(),
                     content[j].end(), std::back_inserter(uni));
      if (uni.empty()) continue;
      const double jaccard =
          static_cast<double>(inter.size()) / static_cast<double>(uni.size());
      if (jaccard >= params.tau_overlap) {
        ++overlap_pairs;
        if (negated[i] != negated[j]) ++contradiction_pairs;
      }
    }
  }

  PragmaticsStats stats;
  stats.redundancy = static_cast<double>(redundant_pairs) / static_cast<double>(pairs);
  stats.self_contradiction =
      overlap_pairs > 0
          ? static_cast<double>(contradiction_pairs) / static_cast<double>(overlap_pairs)
          : 0.0;
  return stats;
}

FeatureVector assemble_feature_vector(const LabeledRecord& record, const NGramModel& lm,
                                      const EmbeddingModel& emb, const Lexicons& lex,
                                      const FeatureParams& params) {
  const TokenizedDocument doc = analyze_text(record.title, record.abstract_text, lex);
  if (doc.empty()) fail(errc::empty_document, "EmptyDocument: " + record.id);

  const double ppl = text_perplexity(lm, doc);
  const double sent_ppl = avg_sentence_perplexity(lm, doc);

  FeatureVector fv;
  const auto syntax = writing_style_features(doc, ppl, sent_ppl);
  std::copy(syntax.begin(), syntax.end(), fv.values.begin());

  const ConsistencyStats cons = consistency_features(doc.title_tokens, doc, emb, lm, params);
  const CoherenceStats coh = coherence_features(doc, emb);
  fv[20] = cons.cos_title_abstract;
  fv[21] = coh.avg;
  fv[22] = coh.std_dev;
  fv[23] = coh.max;
  fv[24] = cons.gen_score;

  const PragmaticsStats prag = pragmatics_features(doc, emb, lex, params);
  fv[25] = prag.self_contradiction;
  fv[26] = prag.redundancy;
  return fv;
}

FeatureTable featurize_corpus(const std::vector<LabeledRecord>& records, const NGramModel& lm,
                              const EmbeddingModel& emb, const Lexicons& lex,
                              const FeatureParams& params) {
  FeatureTable table;
  table.ids.reserve(records.size());
  table.labels.reserve(records.size());
  table.rows.reserve(records.size());
  for (const LabeledRecord& rec : records) {
    table.ids.push_back(rec.id);
    table.labels.push_back(rec.label);
    table.rows.push_back(assemble_feature_vector(rec, lm, emb, lex, params));
  }
  return table;
}

void write_feature_csv(const std::string& path, const FeatureTable& table,
                       const std::vector<std::string>& provenance_lines) {
  std::ofstream out(path);
  if (!out) fail(errc::io_failure, "cannot write feature CSV: " + path);
  for (const std::string& line : provenance_lines) out << "# " << line << '\n';
  for (std::size_t i = 0; i < kFeatureCount; ++i) out << kNames[i] << ',';
  out << "id,label\n";
  char buf[64];
  for (std::size_t r = 0; r < table.size(); ++r) {
    for (std::size_t i = 0; i < kFeatureCount; ++i) {
      std::snprintf(buf, sizeof buf, "%.10g", table.rows[r][i]);
      out << buf << ',';
    }
    out << table.ids[r] << ',' << table.labels[r] << '\n';
  }
  if (!out) fail(errc::io_failure, "write failed: " + path);
}

FeatureTable read_feature_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(errc::io_failure, "cannot open feature CSV: " + path);
  std::string line;
  // Skip provenance comments, then validate the header.
  while (std::getline(in, line) && (line.empty() || line[0] == '#')) {}
  std::ostringstream expected;
  for (std::size_t i = 0; i < kFeatureCount; ++i) expected << kNames[i] << ',';
  expected << "id,label";
  if (line != expected.str())
    fail(errc::bad_format, "unexpected feature CSV header in " + path);

  FeatureTable table;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = line.find(',', start);
      cells.push_back(line.substr(start, comma == std::string::npos
                                             ? std::string::npos
                                             : comma - start));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (cells.size() != kFeatureCount + 2)
      fail(errc::bad_format,
           path + ":" + std::to_string(lineno) + ": expected " +
               std::to_string(kFeatureCount + 2) + " columns");
    FeatureVector fv;
    for (std::size_t i = 0; i < kFeatureCount; ++i) fv[i] = std::stod(cells[i]);
    table.rows.push_back(fv);
    table.ids.push_back(cells[kFeatureCount]);
    table.labels.push_back(std::stoi(cells[kFeatureCount + 1]));
  }
  return table;
}

}  // namespace scidetect
