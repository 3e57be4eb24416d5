#include <doctest.h>

#include <filesystem>
#include <set>
#include <string>

#include "scidetect/corpus.hpp"
#include "scidetect/error.hpp"

using namespace scidetect;

namespace {

const char* kValidLine =
    R"({"id":"a1","source":"arxiv","domain":"cs","title":"T","abstract":"A b.","label":0,"generator":"gpt"})";

LabeledRecord make_record(const std::string& id, int label) {
  LabeledRecord rec;
  rec.id = id;
  rec.source = Source::arxiv;
  rec.domain = Domain::cs;
  rec.title = "Title " + id;
  rec.abstract_text = "Abstract body for " + id + ".";
  rec.label = label;
  rec.generator = label == 1 ? "human" : "gpt";
  return rec;
}

}  // namespace

TEST_CASE("parse_record accepts a valid line") {
  const LabeledRecord rec = parse_record(kValidLine);
  CHECK(rec.id == "a1");
  CHECK(rec.source == Source::arxiv);
  CHECK(rec.domain == Domain::cs);
  CHECK(rec.label == 0);
  CHECK(rec.generator == "gpt");
  CHECK_FALSE(rec.split.has_value());
}

TEST_CASE("parse_record rejects label outside {0,1}") {
  const std::string line =
      R"({"id":"a1","source":"arxiv","domain":"cs","title":"T","abstract":"A b.","label":2,"generator":"gpt"})";
  CHECK_THROWS_WITH_AS(parse_record(line), doctest::Contains("BadLabel"), Error);
}

TEST_CASE("parse_record rejects a missing title") {
  const std::string line =
      R"({"id":"a1","source":"arxiv","domain":"cs","abstract":"A b.","label":0,"generator":"gpt"})";
  CHECK_THROWS_WITH_AS(parse_record(line), doctest::Contains("MissingField(title)"), Error);
}

TEST_CASE("parse_record enforces the generator/label invariant") {
  const std::string human0 =
      R"({"id":"a1","source":"acl","domain":"cs","title":"T","abstract":"A b.","label":0,"generator":"human"})";
  CHECK_THROWS_AS(parse_record(human0), Error);
  const std::string gpt1 =
      R"({"id":"a1","source":"acl","domain":"cs","title":"T","abstract":"A b.","label":1,"generator":"gpt"})";
  CHECK_THROWS_AS(parse_record(gpt1), Error);
}

TEST_CASE("parse_record rejects empty-token text") {
  const std::string line =
      R"({"id":"a1","source":"arxiv","domain":"cs","title":"...","abstract":"A b.","label":0,"generator":"gpt"})";
  CHECK_THROWS_WITH_AS(parse_record(line), doctest::Contains("EmptyText"), Error);
}

TEST_CASE("record round trip preserves unknown fields") {
  const std::string line =
      R"({"id":"a1","source":"pubmed","domain":"bio","title":"T","abstract":"A b.","label":1,"generator":"human","year":2023,"note":"kept"})";
  const LabeledRecord rec = parse_record(line);
  const std::string written = write_record(rec);
  const LabeledRecord again = parse_record(written);
  CHECK(again.id == rec.id);
  CHECK(again.extra_json == rec.extra_json);
  CHECK(written.find("\"year\":2023") != std::string::npos);
  CHECK(written.find("\"note\":\"kept\"") != std::string::npos);
  // And a second write is byte-identical, i.e. the round trip is stable.
  CHECK(write_record(again) == written);
}

TEST_CASE("build_prompt emits the template per domain") {
  CHECK(build_prompt("X", Domain::bio) ==
        "Write an abstract for the scientific paper titled with \"X\" with distinct, "
        "labeled sections (Background, Objectives, Methods, Results, Conclusions)");
  CHECK(build_prompt("X", Domain::cs) ==
        "Write an abstract for the scientific paper titled with \"X\" with distinct, "
        "labeled sections (Background, Motivation, Methods, Results, Conclusions)");
  CHECK_THROWS_WITH_AS(build_prompt("", Domain::bio), doctest::Contains("EmptyTitle"), Error);
}

TEST_CASE("build_prompt quotes the title exactly once") {
  const std::string title = "Attention Is All You Need";
  const std::string prompt = build_prompt(title, Domain::cs);
  const std::string quoted = "\"" + title + "\"";
  const std::size_t first = prompt.find(quoted);
  REQUIRE(first != std::string::npos);
  CHECK(prompt.find(quoted, first + 1) == std::string::npos);
  CHECK(prompt.find("(Background, Motivation, Methods, Results, Conclusions)") !=
        std::string::npos);
}

TEST_CASE("split_corpus keeps per-label balance on the tiny case") {
  std::vector<LabeledRecord> records = {make_record("r0", 0), make_record("r1", 0),
                                        make_record("r2", 1), make_record("r3", 1)};
  const auto [train, test] = split_corpus(records, 0.5, 7);
  REQUIRE(train.size() == 2);
  REQUIRE(test.size() == 2);
  auto count_label = [](const std::vector<LabeledRecord>& v, int label) {
    std::size_t n = 0;
    for (const auto& r : v) n += r.label == label;
    return n;
  };
  CHECK(count_label(train, 0) == 1);
  CHECK(count_label(train, 1) == 1);
  CHECK(count_label(test, 0) == 1);
  CHECK(count_label(test, 1) == 1);
}

TEST_CASE("split_corpus reproduces the published train/test sizes") {
  // 2499 generated + 2500 human, train fraction 3005/4999.
  std::vector<LabeledRecord> records;
  for (int i = 0; i < 2499; ++i) records.push_back(make_record("g" + std::to_string(i), 0));
  for (int i = 0; i < 2500; ++i) records.push_back(make_record("h" + std::to_string(i), 1));
  const auto [train, test] = split_corpus(records, 3005.0 / 4999.0, 42);
  CHECK(train.size() == 3005);
  CHECK(test.size() == 1994);
  std::size_t train_ai = 0;
  for (const auto& r : train) train_ai += r.label == 0;
  CHECK(train_ai == 1502);
}

TEST_CASE("split_corpus is a deterministic partition") {
  std::vector<LabeledRecord> records;
  for (int i = 0; i < 37; ++i) records.push_back(make_record("r" + std::to_string(i), i % 2));
  const auto [train1, test1] = split_corpus(records, 0.7, 99);
  const auto [train2, test2] = split_corpus(records, 0.7, 99);

  CHECK(train1.size() + test1.size() == records.size());
  std::set<std::string> ids;
  for (const auto& r : train1) ids.insert(r.id);
  for (const auto& r : test1) ids.insert(r.id);
  CHECK(ids.size() == records.size());

  REQUIRE(train1.size() == train2.size());
  for (std::size_t i = 0; i < train1.size(); ++i) CHECK(train1[i].id == train2[i].id);

  const auto [train3, _] = split_corpus(records, 0.7, 100);
  bool any_difference = train3.size() != train1.size();
  for (std::size_t i = 0; !any_difference && i < train1.size(); ++i)
    any_difference = train1[i].id != train3[i].id;
  CHECK(any_difference);  // a different seed actually reshuffles
}

TEST_CASE("split_corpus rejects too-small inputs") {
  std::vector<LabeledRecord> one = {make_record("r0", 0)};
  CHECK_THROWS_WITH_AS(split_corpus(one, 0.5, 1), doctest::Contains("TooFewRecords"), Error);
  std::vector<LabeledRecord> lopsided = {make_record("r0", 0), make_record("r1", 0),
                                         make_record("r2", 1)};
  CHECK_THROWS_AS(split_corpus(lopsided, 0.5, 1), Error);
}

TEST_CASE("read_jsonl rejects duplicate ids") {
  namespace fs = std::filesystem;
  const fs::path path = fs::temp_directory_path() / "scidetect_dup_test.jsonl";
  {
    std::vector<LabeledRecord> records = {make_record("same", 0), make_record("same", 1)};
    write_jsonl(path.string(), records);
  }
  CHECK_THROWS_WITH_AS(read_jsonl(path.string()), doctest::Contains("duplicate id"), Error);
  fs::remove(path);
}

TEST_CASE("jsonl file round trip") {
  namespace fs = std::filesystem;
  const fs::path path = fs::temp_directory_path() / "scidetect_roundtrip_test.jsonl";
  std::vector<LabeledRecord> records;
  for (int i = 0; i < 6; ++i) {
    auto rec = make_record("r" + std::to_string(i), i % 2);
    if (i == 2) rec.split = Split::train;
    records.push_back(rec);
  }
  write_jsonl(path.string(), records);
  const auto loaded = read_jsonl(path.string());
  REQUIRE(loaded.size() == records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    CHECK(loaded[i].id == records[i].id);
    CHECK(loaded[i].label == records[i].label);
    CHECK(loaded[i].split == records[i].split);
    CHECK(write_record(loaded[i]) == write_record(records[i]));
  }
  fs::remove(path);
}
