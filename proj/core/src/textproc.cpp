#include "scidetect/textproc.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <fstream>

#include "scidetect/error.hpp"

namespace scidetect {

namespace {

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }
bool is_upper(char c) { return std::isupper(static_cast<unsigned char>(c)) != 0; }
bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }
bool is_alpha(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }

char fold(char c) { return static_cast<char>(std::tolower(static_cast<unsigned char>(c))); }

// ASCII punctuation that detaches from word edges. '%', '$', '+', '=', etc.
// stay classified as symbol tokens.
bool is_punct_char(char c) {
  switch (c) {
    case '.': case ',': case ';': case ':': case '!': case '?':
    case '(': case ')': case '[': case ']': case '{': case '}':
    case '"': case '\'': case '`':
    case '-': case '/': case '\\':
      return true;
    default:
      return false;
  }
}

// Abbreviations that do not terminate a sentence even when followed by
// whitespace and an uppercase letter.
const std::array<const char*, 18> kAbbreviations = {
    "et al.", "e.g.", "i.e.", "etc.",  "fig.", "figs.", "vs.", "cf.",
    "eq.",    "eqs.", "ref.", "refs.", "dr.",  "prof.", "no.", "sec.",
    "al.",    "resp.",
};

// True when text[0..end_idx] (inclusive of the '.') ends with a known
// abbreviation, case-insensitively.
bool ends_with_abbreviation(const std::string& text, std::size_t end_idx) {
  for (const char* abbr : kAbbreviations) {
    const std::size_t len = std::string(abbr).size();
    if (end_idx + 1 < len) continue;
    const std::size_t start = end_idx + 1 - len;
    if (start > 0 && !is_space(text[start - 1]) && !is_punct_char(text[start - 1])) continue;
    bool match = true;
    for (std::size_t k = 0; k < len; ++k) {
      if (fold(text[start + k]) != abbr[k]) { match = false; break; }
    }
    if (match) return true;
  }
  return false;
}

bool is_sentence_end(const std::string& text, std::size_t i) {
  const char c = text[i];
  if (c != '.' && c != '!' && c != '?') return false;
  // Decimal point: digit on both sides.
  if (c == '.' && i > 0 && i + 1 < text.size() && is_digit(text[i - 1]) && is_digit(text[i + 1]))
    return false;
  if (c == '.' && ends_with_abbreviation(text, i)) return false;
  // Swallow a closing quote/bracket after the terminator.
  std::size_t j = i + 1;
  while (j < text.size() && (text[j] == '"' || text[j] == '\'' || text[j] == ')' || text[j] == ']'))
    ++j;
  if (j >= text.size()) return true;
  if (!is_space(text[j])) return false;
  while (j < text.size() && is_space(text[j])) ++j;
  if (j >= text.size()) return true;
  return is_upper(text[j]) || is_digit(text[j]) || text[j] == '"';
}

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && is_space(s[b])) ++b;
  while (e > b && is_space(s[e - 1])) --e;
  return s.substr(b, e - b);
}

TokenKind classify_chunk(const std::string& chunk) {
  bool any_alpha = false, any_digit = false, all_numberish = true;
  for (char c : chunk) {
    if (is_alpha(c)) any_alpha = true;
    if (is_digit(c)) any_digit = true;
    if (!is_digit(c) && c != '.' && c != ',' && c != '-' && c != '+' && c != '%')
      all_numberish = false;
  }
  if (any_digit && !any_alpha && all_numberish) return TokenKind::number;
  if (any_alpha || any_digit) return TokenKind::word;
  return TokenKind::symbol;
}

bool has_suffix(const std::string& w, const char* suffix) {
  const std::size_t len = std::char_traits<char>::length(suffix);
  return w.size() > len && w.compare(w.size() - len, len, suffix) == 0;
}

}  // namespace

const char* pos_tag_name(PosTag tag) {
  switch (tag) {
    case PosTag::ADJ: return "ADJ";
    case PosTag::ADV: return "ADV";
    case PosTag::CONJ: return "CONJ";
    case PosTag::NOUN: return "NOUN";
    case PosTag::NUM: return "NUM";
    case PosTag::PRON: return "PRON";
    case PosTag::VERB: return "VERB";
    case PosTag::DET: return "DET";
    case PosTag::ADP: return "ADP";
    case PosTag::PUNCT: return "PUNCT";
    case PosTag::OTHER: return "OTHER";
  }
  return "OTHER";
}

std::size_t TokenizedDocument::token_count() const {
  std::size_t n = 0;
  for (const auto& s : sentences) n += s.size();
  return n;
}

std::size_t TokenizedDocument::lexical_count() const {
  std::size_t n = 0;
  for (const auto& s : sentences)
    for (const auto& t : s)
      if (t.is_lexical()) ++n;
  return n;
}

std::string to_lower(const std::string& s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::vector<std::string> segment_sentences(const std::string& text) {
  std::vector<std::string> sentences;
  std::size_t start = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (!is_sentence_end(text, i)) continue;
    std::size_t end = i + 1;
    while (end < text.size() &&
           (text[end] == '"' || text[end] == '\'' || text[end] == ')' || text[end] == ']'))
      ++end;
    std::string sent = trim(text.substr(start, end - start));
    if (!sent.empty()) sentences.push_back(std::move(sent));
    start = end;
  }
  if (start < text.size()) {
    std::string tail = trim(text.substr(start));
    if (!tail.empty()) sentences.push_back(std::move(tail));
  }
  return sentences;
}

std::vector<Token> tokenize(const std::string& text) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    while (i < n && is_space(text[i])) ++i;
    if (i >= n) break;
    std::size_t j = i;
    while (j < n && !is_space(text[j])) ++j;
    std::string chunk = text.substr(i, j - i);
    i = j;

    // Peel leading punctuation.
    std::size_t b = 0, e = chunk.size();
    std::vector<Token> leading;
    while (b < e && is_punct_char(chunk[b]) &&
           !(chunk[b] == '-' && b + 1 < e && is_digit(chunk[b + 1]))) {
      leading.push_back({std::string(1, chunk[b]), TokenKind::punctuation, PosTag::PUNCT});
      ++b;
    }
    // Peel trailing punctuation, but keep a '.' that is part of a decimal
    // ("3.14") or an internal apostrophe/hyphen ("state-of-the-art", "don't").
    std::vector<Token> trailing;
    while (e > b && is_punct_char(chunk[e - 1])) {
      if ((chunk[e - 1] == '\'' || chunk[e - 1] == '-') && e - 1 > b &&
          !is_punct_char(chunk[e - 2]))
        break;
      trailing.push_back({std::string(1, chunk[e - 1]), TokenKind::punctuation, PosTag::PUNCT});
      --e;
    }
    for (auto& t : leading) tokens.push_back(std::move(t));
    if (e > b) {
      std::string core = chunk.substr(b, e - b);
      TokenKind kind = classify_chunk(core);
      PosTag pos = PosTag::OTHER;
      if (kind == TokenKind::number) pos = PosTag::NUM;
      tokens.push_back({std::move(core), kind, pos});
    }
    for (auto it = trailing.rbegin(); it != trailing.rend(); ++it) tokens.push_back(std::move(*it));
  }
  return tokens;
}

void pos_tag(std::vector<Token>& tokens, const Lexicons& lex) {
  for (Token& t : tokens) {
    if (t.kind == TokenKind::punctuation) { t.pos = PosTag::PUNCT; continue; }
    if (t.kind == TokenKind::number) { t.pos = PosTag::NUM; continue; }
    if (t.kind == TokenKind::symbol) { t.pos = PosTag::OTHER; continue; }
    const std::string w = to_lower(t.surface);
    if (auto it = lex.pos_lexicon.find(w); it != lex.pos_lexicon.end()) {
      // A word token never takes PUNCT, whatever the lexicon says.
      t.pos = it->second == PosTag::PUNCT ? PosTag::NOUN : it->second;
      continue;
    }
    if (has_suffix(w, "ly")) t.pos = PosTag::ADV;
    else if (has_suffix(w, "ing") || has_suffix(w, "ed")) t.pos = PosTag::VERB;
    else if (has_suffix(w, "tion") || has_suffix(w, "ment") || has_suffix(w, "ness") ||
             has_suffix(w, "ity")) t.pos = PosTag::NOUN;
    else if (has_suffix(w, "ous") || has_suffix(w, "al") || has_suffix(w, "ive") ||
             has_suffix(w, "ic")) t.pos = PosTag::ADJ;
    else t.pos = PosTag::NOUN;
  }
}

int count_syllables(const std::string& word) {
  auto is_vowel = [](char c) {
    c = fold(c);
    return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u' || c == 'y';
  };
  int groups = 0;
  bool in_group = false;
  std::size_t last_group_start = std::string::npos;
  std::size_t last_group_end = std::string::npos;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (is_vowel(word[i]) && is_alpha(word[i])) {
      if (!in_group) {
        ++groups;
        in_group = true;
        last_group_start = i;
      }
      last_group_end = i;
    } else {
      in_group = false;
    }
  }
  // Trailing silent 'e': the final group is a lone 'e' at the end of the
  // word, unless the word ends in consonant+"le".
  if (groups > 0 && last_group_start == last_group_end &&
      last_group_end == word.size() - 1 && fold(word.back()) == 'e') {
    bool consonant_le = word.size() >= 3 && fold(word[word.size() - 2]) == 'l' &&
                        is_alpha(word[word.size() - 3]) && !is_vowel(word[word.size() - 3]);
    if (!consonant_le) --groups;
  }
  return std::max(groups, 1);
}

TokenizedDocument analyze_text(const std::string& title, const std::string& body,
                               const Lexicons& lex) {
  TokenizedDocument doc;
  doc.raw_text = body;
  doc.title_tokens = tokenize(title);
  pos_tag(doc.title_tokens, lex);
  for (const std::string& sent : segment_sentences(body)) {
    std::vector<Token> tokens = tokenize(sent);
    if (tokens.empty()) continue;
    pos_tag(tokens, lex);
    doc.sentences.push_back(std::move(tokens));
  }
  return doc;
}

namespace {

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(errc::io_failure, "cannot open lexicon file: " + path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    line = trim(line);
    if (!line.empty() && line[0] != '#') lines.push_back(line);
  }
  return lines;
}

PosTag parse_tag(const std::string& name) {
  static const std::unordered_map<std::string, PosTag> kTags = {
      {"ADJ", PosTag::ADJ},   {"ADV", PosTag::ADV},   {"CONJ", PosTag::CONJ},
      {"NOUN", PosTag::NOUN}, {"NUM", PosTag::NUM},   {"PRON", PosTag::PRON},
      {"VERB", PosTag::VERB}, {"DET", PosTag::DET},   {"ADP", PosTag::ADP},
      {"PUNCT", PosTag::PUNCT}, {"OTHER", PosTag::OTHER},
  };
  auto it = kTags.find(name);
  if (it == kTags.end()) fail(errc::bad_format, "unknown POS tag: " + name);
  return it->second;
}

}  // namespace

void Lexicons::load_function_words(const std::string& path) {
  function_words.clear();
  for (const auto& w : read_lines(path)) function_words.insert(to_lower(w));
}

void Lexicons::load_negation_cues(const std::string& path) {
  negation_cues.clear();
  for (const auto& w : read_lines(path)) negation_cues.insert(to_lower(w));
}

void Lexicons::load_pos_lexicon(const std::string& path) {
  pos_lexicon.clear();
  for (const auto& line : read_lines(path)) {
    const std::size_t tab = line.find('\t');
    if (tab == std::string::npos) fail(errc::bad_format, "expected word<TAB>TAG: " + line);
    pos_lexicon[to_lower(trim(line.substr(0, tab)))] = parse_tag(trim(line.substr(tab + 1)));
  }
}

}  // namespace scidetect
