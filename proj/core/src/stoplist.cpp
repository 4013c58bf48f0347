#include <istream>
#include <string>

#include "crisiscomm/preprocess.hpp"

namespace crisiscomm {
namespace {

// Keep in sync with data/stoplist_en.txt.
constexpr const char* kEnglishStopwords[] = {
    "about", "above", "after", "again", "against", "all", "also", "am", "an", "and", "any", "are",
    "aren", "as", "at", "be", "because", "been", "before", "being", "below", "between", "both",
    "but", "by", "can", "cannot", "could", "couldn", "did", "didn", "do", "does", "doesn", "doing",
    "don", "down", "during", "each", "even", "ever", "every", "few", "for", "from", "further", "get",
    "gets", "got", "had", "hadn", "has", "hasn", "have", "haven", "having", "he", "her", "here",
    "hers", "herself", "him", "himself", "his", "how", "however", "i", "if", "in", "into", "is",
    "isn", "it", "its", "itself", "just", "let", "like", "may", "me", "might", "more", "most",
    "much", "must", "mustn", "my", "myself", "no", "nor", "not", "now", "of", "off", "on", "once",
    "one", "only", "or", "other", "ought", "our", "ours", "ourselves", "out", "over", "own", "same",
    "shall", "shan", "she", "should", "shouldn", "since", "so", "some", "still", "such", "than",
    "that", "the", "their", "theirs", "them", "themselves", "then", "there", "these", "they",
    "this", "those", "through", "thus", "to", "too", "under", "until", "up", "upon", "us", "very",
    "via", "was", "wasn", "we", "were", "weren", "what", "when", "where", "whether", "which",
    "while", "who", "whom", "whose", "why", "will", "with", "within", "without", "won", "would",
    "wouldn", "yet", "you", "your", "yours", "yourself", "yourselves",
    // tweet boilerplate
    "amp", "http", "https", "www", "com", "rt", "via", "html", "gt", "lt",
};

}  // namespace

const Stoplist& default_stoplist() {
  static const Stoplist stoplist = [] {
    Stoplist s;
    for (const char* w : kEnglishStopwords) s.insert(w);
    return s;
  }();
  return stoplist;
}

Stoplist load_stoplist(std::istream& source) {
  Stoplist s;
  std::string line;
  while (std::getline(source, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::string token;
    for (char c : line) {
      if (c == ' ' || c == '\t' || c == '\r') continue;
      token.push_back(c >= 'A' && c <= 'Z' ? static_cast<char>(c - 'A' + 'a') : c);
    }
    if (!token.empty()) s.insert(std::move(token));
  }
  return s;
}

}  // namespace crisiscomm
