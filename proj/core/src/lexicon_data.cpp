#include "scidetect/textproc.hpp"

namespace scidetect {

namespace {

const char* const kFunctionWords[] = {
    "a", "about", "above", "after", "again", "against", "all", "also", "am",
    "an", "and", "any", "are", "as", "at", "be", "because", "been", "before",
    "being", "below", "between", "both", "but", "by", "can", "cannot",
    "could", "did", "do", "does", "doing", "down", "during", "each",
    "either", "few", "for", "from", "further", "had", "has", "have",
    "having", "he", "her", "here", "hers", "herself", "him", "himself",
    "his", "how", "however", "i", "if", "in", "into", "is", "it", "its",
    "itself", "just", "may", "me", "might", "more", "most", "must", "my",
    "myself", "neither", "no", "nor", "not", "of", "off", "on", "once",
    "only", "onto", "or", "other", "our", "ours", "ourselves", "out",
    "over", "own", "per", "same", "shall", "she", "should", "since", "so",
    "some", "such", "than", "that", "the", "their", "theirs", "them",
    "themselves", "then", "there", "these", "they", "this", "those",
    "through", "to", "too", "under", "until", "up", "upon", "very", "was",
    "we", "were", "what", "when", "where", "whether", "which", "while",
    "who", "whom", "whose", "why", "will", "with", "within", "without",
    "would", "yet", "you", "your", "yours", "yourself",
};

const char* const kNegationCues[] = {
    "not", "no", "never", "n't", "cannot", "without", "none", "neither", "nor",
};

struct PosEntry {
  const char* word;
  PosTag tag;
};

const PosEntry kPosEntries[] = {
    // determiners
    {"the", PosTag::DET}, {"a", PosTag::DET}, {"an", PosTag::DET},
    {"this", PosTag::DET}, {"that", PosTag::DET}, {"these", PosTag::DET},
    {"those", PosTag::DET}, {"each", PosTag::DET}, {"every", PosTag::DET},
    {"some", PosTag::DET}, {"any", PosTag::DET}, {"no", PosTag::DET},
    {"all", PosTag::DET}, {"both", PosTag::DET}, {"either", PosTag::DET},
    {"neither", PosTag::DET}, {"another", PosTag::DET}, {"such", PosTag::DET},
    // adpositions
    {"in", PosTag::ADP}, {"of", PosTag::ADP}, {"at", PosTag::ADP},
    {"by", PosTag::ADP}, {"for", PosTag::ADP}, {"with", PosTag::ADP},
    {"from", PosTag::ADP}, {"to", PosTag::ADP}, {"on", PosTag::ADP},
    {"onto", PosTag::ADP}, {"about", PosTag::ADP}, {"against", PosTag::ADP},
    {"between", PosTag::ADP}, {"among", PosTag::ADP}, {"into", PosTag::ADP},
    {"through", PosTag::ADP}, {"during", PosTag::ADP}, {"before", PosTag::ADP},
    {"after", PosTag::ADP}, {"above", PosTag::ADP}, {"below", PosTag::ADP},
    {"under", PosTag::ADP}, {"over", PosTag::ADP}, {"across", PosTag::ADP},
    {"toward", PosTag::ADP}, {"towards", PosTag::ADP}, {"upon", PosTag::ADP},
    {"within", PosTag::ADP}, {"without", PosTag::ADP}, {"via", PosTag::ADP},
    {"per", PosTag::ADP}, {"beyond", PosTag::ADP}, {"near", PosTag::ADP},
    // pronouns
    {"i", PosTag::PRON}, {"you", PosTag::PRON}, {"he", PosTag::PRON},
    {"she", PosTag::PRON}, {"it", PosTag::PRON}, {"we", PosTag::PRON},
    {"they", PosTag::PRON}, {"me", PosTag::PRON}, {"him", PosTag::PRON},
    {"her", PosTag::PRON}, {"us", PosTag::PRON}, {"them", PosTag::PRON},
    {"my", PosTag::PRON}, {"your", PosTag::PRON}, {"his", PosTag::PRON},
    {"its", PosTag::PRON}, {"our", PosTag::PRON}, {"their", PosTag::PRON},
    {"mine", PosTag::PRON}, {"yours", PosTag::PRON}, {"hers", PosTag::PRON},
    {"ours", PosTag::PRON}, {"theirs", PosTag::PRON}, {"myself", PosTag::PRON},
    {"yourself", PosTag::PRON}, {"himself", PosTag::PRON},
    {"herself", PosTag::PRON}, {"itself", PosTag::PRON},
    {"ourselves", PosTag::PRON}, {"themselves", PosTag::PRON},
    {"who", PosTag::PRON}, {"whom", PosTag::PRON}, {"whose", PosTag::PRON},
    {"which", PosTag::PRON}, {"what", PosTag::PRON}, {"something", PosTag::PRON},
    {"anything", PosTag::PRON}, {"nothing", PosTag::PRON}, {"one", PosTag::PRON},
    // conjunctions
    {"and", PosTag::CONJ}, {"or", PosTag::CONJ}, {"but", PosTag::CONJ},
    {"nor", PosTag::CONJ}, {"so", PosTag::CONJ}, {"yet", PosTag::CONJ},
    {"although", PosTag::CONJ}, {"though", PosTag::CONJ},
    {"because", PosTag::CONJ}, {"while", PosTag::CONJ},
    {"whereas", PosTag::CONJ}, {"if", PosTag::CONJ}, {"unless", PosTag::CONJ},
    {"since", PosTag::CONJ}, {"whether", PosTag::CONJ}, {"when", PosTag::CONJ},
    {"where", PosTag::CONJ}, {"than", PosTag::CONJ}, {"as", PosTag::CONJ},
    // auxiliary and common verbs
    {"is", PosTag::VERB}, {"are", PosTag::VERB}, {"was", PosTag::VERB},
    {"were", PosTag::VERB}, {"be", PosTag::VERB}, {"been", PosTag::VERB},
    {"being", PosTag::VERB}, {"am", PosTag::VERB}, {"do", PosTag::VERB},
    {"does", PosTag::VERB}, {"did", PosTag::VERB}, {"have", PosTag::VERB},
    {"has", PosTag::VERB}, {"had", PosTag::VERB}, {"can", PosTag::VERB},
    {"could", PosTag::VERB}, {"will", PosTag::VERB}, {"would", PosTag::VERB},
    {"shall", PosTag::VERB}, {"should", PosTag::VERB}, {"may", PosTag::VERB},
    {"might", PosTag::VERB}, {"must", PosTag::VERB}, {"cannot", PosTag::VERB},
    {"show", PosTag::VERB}, {"shows", PosTag::VERB}, {"propose", PosTag::VERB},
    {"present", PosTag::VERB}, {"use", PosTag::VERB}, {"uses", PosTag::VERB},
    {"find", PosTag::VERB}, {"finds", PosTag::VERB}, {"make", PosTag::VERB},
    {"makes", PosTag::VERB}, {"give", PosTag::VERB}, {"take", PosTag::VERB},
    {"apply", PosTag::VERB}, {"see", PosTag::VERB}, {"run", PosTag::VERB},
    {"runs", PosTag::VERB}, {"become", PosTag::VERB}, {"remain", PosTag::VERB},
    {"demonstrate", PosTag::VERB}, {"describe", PosTag::VERB},
    {"introduce", PosTag::VERB}, {"evaluate", PosTag::VERB},
    {"achieve", PosTag::VERB}, {"compare", PosTag::VERB},
    {"outperform", PosTag::VERB}, {"outperforms", PosTag::VERB},
    // common adverbs
    {"very", PosTag::ADV}, {"often", PosTag::ADV}, {"always", PosTag::ADV},
    {"never", PosTag::ADV}, {"also", PosTag::ADV}, {"however", PosTag::ADV},
    {"thus", PosTag::ADV}, {"therefore", PosTag::ADV}, {"then", PosTag::ADV},
    {"here", PosTag::ADV}, {"there", PosTag::ADV}, {"now", PosTag::ADV},
    {"again", PosTag::ADV}, {"further", PosTag::ADV}, {"moreover", PosTag::ADV},
    {"well", PosTag::ADV}, {"more", PosTag::ADV}, {"most", PosTag::ADV},
    {"less", PosTag::ADV}, {"least", PosTag::ADV}, {"not", PosTag::ADV},
    {"too", PosTag::ADV}, {"only", PosTag::ADV}, {"almost", PosTag::ADV},
    {"still", PosTag::ADV}, {"yet", PosTag::ADV}, {"even", PosTag::ADV},
    // common adjectives (seed: suffix rules cover the rest)
    {"good", PosTag::ADJ}, {"new", PosTag::ADJ}, {"novel", PosTag::ADJ},
    {"large", PosTag::ADJ}, {"small", PosTag::ADJ}, {"high", PosTag::ADJ},
    {"low", PosTag::ADJ}, {"red", PosTag::ADJ}, {"strong", PosTag::ADJ},
    {"weak", PosTag::ADJ}, {"best", PosTag::ADJ}, {"better", PosTag::ADJ},
    {"robust", PosTag::ADJ}, {"simple", PosTag::ADJ}, {"complex", PosTag::ADJ},
    {"deep", PosTag::ADJ}, {"sparse", PosTag::ADJ}, {"dense", PosTag::ADJ},
    {"main", PosTag::ADJ}, {"key", PosTag::ADJ}, {"important", PosTag::ADJ},
    {"common", PosTag::ADJ}, {"several", PosTag::ADJ}, {"many", PosTag::ADJ},
    {"other", PosTag::ADJ}, {"first", PosTag::ADJ}, {"second", PosTag::ADJ},
    {"same", PosTag::ADJ}, {"different", PosTag::ADJ}, {"human", PosTag::ADJ},
    // common nouns that suffix rules would misfile
    {"data", PosTag::NOUN}, {"model", PosTag::NOUN}, {"models", PosTag::NOUN},
    {"method", PosTag::NOUN}, {"methods", PosTag::NOUN},
    {"results", PosTag::NOUN}, {"result", PosTag::NOUN},
    {"paper", PosTag::NOUN}, {"study", PosTag::NOUN}, {"text", PosTag::NOUN},
    {"approach", PosTag::NOUN}, {"analysis", PosTag::NOUN},
    {"early", PosTag::ADJ},
};

}  // namespace

Lexicons Lexicons::builtin() {
  Lexicons lex;
  for (const char* w : kFunctionWords) lex.function_words.insert(w);
  for (const char* w : kNegationCues) lex.negation_cues.insert(w);
  for (const PosEntry& e : kPosEntries) lex.pos_lexicon.emplace(e.word, e.tag);
  return lex;
}

}  // namespace scidetect
