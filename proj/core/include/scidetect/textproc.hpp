#pragma once

#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace scidetect {

enum class TokenKind { word, number, punctuation, symbol };

enum class PosTag { ADJ, ADV, CONJ, NOUN, NUM, PRON, VERB, DET, ADP, PUNCT, OTHER };

const char* pos_tag_name(PosTag tag);

struct Token {
  std::string surface;
  TokenKind kind = TokenKind::word;
  PosTag pos = PosTag::OTHER;

  // Lexical tokens are the ones counted as "words" by the features:
  // everything except punctuation and stray symbols.
  bool is_lexical() const {
    return kind == TokenKind::word || kind == TokenKind::number;
  }

  bool operator==(const Token&) const = default;
};

struct TokenizedDocument {
  std::vector<Token> title_tokens;
  std::vector<std::vector<Token>> sentences;
  std::string raw_text;

  bool empty() const { return sentences.empty(); }
  std::size_t token_count() const;
  std::size_t lexical_count() const;
};

// Closed-class word lists. The defaults ship embedded; any list can be
// overridden from plain-text files (one lowercase entry per line, POS
// lexicon as word<TAB>TAG).
struct Lexicons {
  std::unordered_set<std::string> function_words;
  std::unordered_set<std::string> negation_cues;
  std::unordered_map<std::string, PosTag> pos_lexicon;

  static Lexicons builtin();

  void load_function_words(const std::string& path);
  void load_negation_cues(const std::string& path);
  void load_pos_lexicon(const std::string& path);
};

// Splits on sentence-final . ! ? followed by whitespace and an uppercase
// letter (or end of text). Known abbreviations ("et al.", "Fig.", "vs.", ...)
// and decimal points never split. Total: empty input gives an empty list.
std::vector<std::string> segment_sentences(const std::string& text);

// Whitespace split with leading/trailing punctuation detached as separate
// punctuation tokens. Internal hyphens and apostrophes stay inside the word;
// pure digit/decimal strings become number tokens.
std::vector<Token> tokenize(const std::string& text);

// Lexicon lookup (case-folded) first, then suffix rules, NOUN as default.
// Numbers are NUM, punctuation PUNCT, symbols OTHER; those never change.
void pos_tag(std::vector<Token>& tokens, const Lexicons& lex);

// Maximal vowel-letter groups (aeiouy), minus a trailing silent 'e' group
// unless the word ends in consonant+"le"; floored at 1.
int count_syllables(const std::string& word);

std::string to_lower(const std::string& s);

// Full pipeline: sentence split, tokenize, tag. Title tokens are tagged too.
TokenizedDocument analyze_text(const std::string& title, const std::string& body,
                               const Lexicons& lex);

}  // namespace scidetect
