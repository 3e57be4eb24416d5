#include "scidetect/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "scidetect/error.hpp"
#include "scidetect/textproc.hpp"

namespace scidetect {

using json = nlohmann::ordered_json;

namespace {

bool has_word_token(const std::string& text) {
  for (const Token& t : tokenize(text))
    if (t.is_lexical()) return true;
  return false;
}

const char* kKnownFields[] = {"id",    "source",    "domain", "title",
                              "abstract", "label", "generator", "split"};

bool is_known_field(const std::string& key) {
  for (const char* f : kKnownFields)
    if (key == f) return true;
  return false;
}

std::string require_string(const json& obj, const char* field) {
  auto it = obj.find(field);
  if (it == obj.end() || it->is_null())
    fail(errc::missing_field, std::string("MissingField(") + field + ")");
  if (!it->is_string()) fail(errc::bad_format, std::string("field is not a string: ") + field);
  return it->get<std::string>();
}

}  // namespace

const char* source_name(Source s) {
  switch (s) {
    case Source::pubmed: return "pubmed";
    case Source::acl: return "acl";
    case Source::arxiv: return "arxiv";
    case Source::other: return "other";
  }
  return "other";
}

const char* domain_name(Domain d) { return d == Domain::bio ? "bio" : "cs"; }

Source parse_source(const std::string& name) {
  if (name == "pubmed") return Source::pubmed;
  if (name == "acl") return Source::acl;
  if (name == "arxiv") return Source::arxiv;
  if (name == "other") return Source::other;
  fail(errc::bad_format, "unknown source: " + name);
}

Domain parse_domain(const std::string& name) {
  if (name == "bio") return Domain::bio;
  if (name == "cs") return Domain::cs;
  fail(errc::bad_format, "unknown domain: " + name);
}

LabeledRecord parse_record(const std::string& line) {
  json obj;
  try {
    obj = json::parse(line);
  } catch (const json::exception& e) {
    fail(errc::bad_json, std::string("invalid JSON line: ") + e.what());
  }
  if (!obj.is_object()) fail(errc::bad_json, "JSONL line is not an object");

  LabeledRecord rec;
  rec.id = require_string(obj, "id");
  rec.source = parse_source(require_string(obj, "source"));
  rec.domain = parse_domain(require_string(obj, "domain"));
  rec.title = require_string(obj, "title");
  rec.abstract_text = require_string(obj, "abstract");

  auto label_it = obj.find("label");
  if (label_it == obj.end() || label_it->is_null())
    fail(errc::missing_field, "MissingField(label)");
  if (!label_it->is_number_integer())
    fail(errc::bad_label, "BadLabel: label must be integer 0 or 1");
  const int label = label_it->get<int>();
  if (label != 0 && label != 1) fail(errc::bad_label, "BadLabel: label outside {0,1}");
  rec.label = label;

  rec.generator = require_string(obj, "generator");
  if ((rec.generator == "human") != (rec.label == 1))
    fail(errc::bad_label, "BadLabel: generator=\"human\" must coincide with label=1");

  if (auto it = obj.find("split"); it != obj.end() && !it->is_null()) {
    const std::string s = it->get<std::string>();
    if (s == "train") rec.split = Split::train;
    else if (s == "test") rec.split = Split::test;
    else fail(errc::bad_format, "unknown split: " + s);
  }

  if (rec.title.empty() || !has_word_token(rec.title))
    fail(errc::empty_text, "EmptyText: title has no word token");
  if (rec.abstract_text.empty() || !has_word_token(rec.abstract_text))
    fail(errc::empty_text, "EmptyText: abstract has no word token");

  json extra = json::object();
  for (auto it = obj.begin(); it != obj.end(); ++it)
    if (!is_known_field(it.key())) extra[it.key()] = it.value();
  if (!extra.empty()) rec.extra_json = extra.dump();
  return rec;
}

std::string write_record(const LabeledRecord& record) {
  json obj;
  obj["id"] = record.id;
  obj["source"] = source_name(record.source);
  obj["domain"] = domain_name(record.domain);
  obj["title"] = record.title;
  obj["abstract"] = record.abstract_text;
  obj["label"] = record.label;
  obj["generator"] = record.generator;
  if (record.split)
    obj["split"] = *record.split == Split::train ? "train" : "test";
  if (!record.extra_json.empty()) {
    const json extra = json::parse(record.extra_json);
    for (auto it = extra.begin(); it != extra.end(); ++it) obj[it.key()] = it.value();
  }
  return obj.dump();
}

std::vector<LabeledRecord> read_jsonl(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(errc::io_failure, "cannot open corpus file: " + path);
  std::vector<LabeledRecord> records;
  std::unordered_set<std::string> seen;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    LabeledRecord rec;
    try {
      rec = parse_record(line);
    } catch (const Error& e) {
      fail(e.code(), path + ":" + std::to_string(lineno) + ": " + e.what());
    }
    if (!seen.insert(rec.id).second)
      fail(errc::duplicate_id, path + ":" + std::to_string(lineno) + ": duplicate id " + rec.id);
    records.push_back(std::move(rec));
  }
  return records;
}

void write_jsonl(const std::string& path, const std::vector<LabeledRecord>& records) {
  std::ofstream out(path);
  if (!out) fail(errc::io_failure, "cannot write corpus file: " + path);
  for (const LabeledRecord& rec : records) out << write_record(rec) << '\n';
  if (!out) fail(errc::io_failure, "write failed: " + path);
}

PromptTemplate PromptTemplate::for_domain(Domain d) {
  PromptTemplate tpl;
  tpl.domain = d;
  if (d == Domain::bio)
    tpl.section_list = {"Background", "Objectives", "Methods", "Results", "Conclusions"};
  else
    tpl.section_list = {"Background", "Motivation", "Methods", "Results", "Conclusions"};
  std::string sections;
  for (std::size_t i = 0; i < tpl.section_list.size(); ++i) {
    if (i) sections += ", ";
    sections += tpl.section_list[i];
  }
  tpl.template_text =
      "Write an abstract for the scientific paper titled with \"TITLE\" "
      "with distinct, labeled sections (" + sections + ")";
  return tpl;
}

std::string build_prompt(const std::string& title, Domain domain) {
  if (title.empty()) fail(errc::empty_title, "EmptyTitle");
  const PromptTemplate tpl = PromptTemplate::for_domain(domain);
  std::string prompt = tpl.template_text;
  const std::size_t pos = prompt.find("TITLE");
  prompt.replace(pos, 5, title);
  return prompt;
}

std::pair<std::vector<LabeledRecord>, std::vector<LabeledRecord>> split_corpus(
    const std::vector<LabeledRecord>& records, double train_fraction, std::uint64_t seed) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0))
    fail(errc::bad_format, "train_fraction must be in (0,1)");

  std::vector<std::size_t> by_label[2];
  for (std::size_t i = 0; i < records.size(); ++i) {
    const int label = records[i].label;
    by_label[label].push_back(i);
  }
  if (by_label[0].size() < 2 || by_label[1].size() < 2)
    fail(errc::too_few_records, "TooFewRecords: need at least 2 records per label");

  // One generator, consumed in a fixed order (label 0 first), so the split
  // is a pure function of (records, fraction, seed).
  std::mt19937_64 rng(seed);
  std::vector<LabeledRecord> train, test;
  for (int label = 0; label < 2; ++label) {
    auto& idx = by_label[label];
    std::shuffle(idx.begin(), idx.end(), rng);
    auto n_train = static_cast<std::size_t>(
        std::llround(train_fraction * static_cast<double>(idx.size())));
    n_train = std::clamp<std::size_t>(n_train, 1, idx.size() - 1);
    std::sort(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(n_train));
    std::sort(idx.begin() + static_cast<std::ptrdiff_t>(n_train), idx.end());
    for (std::size_t k = 0; k < idx.size(); ++k)
      (k < n_train ? train : test).push_back(records[idx[k]]);
  }
  return {std::move(train), std::move(test)};
}

}  // namespace scidetect
