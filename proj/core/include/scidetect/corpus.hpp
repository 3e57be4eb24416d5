#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace scidetect {

enum class Source { pubmed, acl, arxiv, other };
enum class Domain { bio, cs };
enum class Split { train, test };

const char* source_name(Source s);
const char* domain_name(Domain d);
Source parse_source(const std::string& name);
Domain parse_domain(const std::string& name);

// One title+abstract with provenance and binary label. Label 0 means
// AI-generated, 1 means human-written; generator "human" iff label 1.
struct LabeledRecord {
  std::string id;
  Source source = Source::other;
  Domain domain = Domain::cs;
  std::string title;
  std::string abstract_text;
  int label = 0;
  std::string generator;
  std::optional<Split> split;
  // Unknown input fields, kept verbatim as a minified JSON object so a
  // parse/write round trip is lossless.
  std::string extra_json;
};

// Parses one JSONL line. Unknown fields are preserved in extra_json.
LabeledRecord parse_record(const std::string& line);

// Serializes a record to a single JSON line (no trailing newline).
std::string write_record(const LabeledRecord& record);

// Reads a whole JSONL corpus, rejecting duplicate ids.
std::vector<LabeledRecord> read_jsonl(const std::string& path);
void write_jsonl(const std::string& path, const std::vector<LabeledRecord>& records);

// Table-derived prompt template: fixed section list per domain, TITLE
// placeholder substituted verbatim.
struct PromptTemplate {
  Domain domain;
  std::vector<std::string> section_list;
  std::string template_text;

  static PromptTemplate for_domain(Domain d);
};

std::string build_prompt(const std::string& title, Domain domain);

// Deterministic stratified split: per-label proportions preserved to within
// one record, no record on both sides.
std::pair<std::vector<LabeledRecord>, std::vector<LabeledRecord>> split_corpus(
    const std::vector<LabeledRecord>& records, double train_fraction, std::uint64_t seed);

}  // namespace scidetect
