#include "crisiscomm/preprocess.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "crisiscomm/error.hpp"

namespace crisiscomm {
namespace {

// Decodes one UTF-8 code point at `pos`, advancing it. Invalid bytes decode
// as U+FFFD and consume one byte.
char32_t next_code_point(std::string_view s, std::size_t& pos) {
  auto byte = [&](std::size_t i) { return static_cast<unsigned char>(s[i]); };
  unsigned char lead = byte(pos);
  if (lead < 0x80) {
    ++pos;
    return lead;
  }
  int extra = (lead >> 5) == 0x6 ? 1 : (lead >> 4) == 0xE ? 2 : (lead >> 3) == 0x1E ? 3 : -1;
  if (extra < 0 || pos + static_cast<std::size_t>(extra) >= s.size()) {
    ++pos;
    return 0xFFFD;
  }
  char32_t cp = lead & (0x3F >> extra);
  for (int k = 1; k <= extra; ++k) {
    unsigned char c = byte(pos + k);
    if ((c & 0xC0) != 0x80) {
      ++pos;
      return 0xFFFD;
    }
    cp = (cp << 6) | (c & 0x3F);
  }
  pos += static_cast<std::size_t>(extra) + 1;
  return cp;
}

void append_utf8(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

bool is_word_code_point(char32_t cp) {
  if (cp < 0x80) return (cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z') || (cp >= '0' && cp <= '9');
  if (cp == 0xFFFD) return false;
  if (cp >= 0x80 && cp <= 0xBF) return false;      // Latin-1 controls and punctuation
  if (cp == 0xD7 || cp == 0xF7) return false;      // × ÷
  if (cp >= 0x2000 && cp <= 0x2BFF) return false;  // punctuation, arrows, symbols
  if (cp >= 0x3000 && cp <= 0x303F) return false;  // CJK punctuation
  if (cp >= 0xFE00 && cp <= 0xFE0F) return false;  // variation selectors
  if (cp >= 0x1F000) return false;                 // emoji and pictographs
  return true;
}

char32_t to_lower(char32_t cp) {
  if (cp >= 'A' && cp <= 'Z') return cp + 32;
  if (cp >= 0xC0 && cp <= 0xDE && cp != 0xD7) return cp + 32;
  return cp;
}

bool starts_with_ci(std::string_view text, std::size_t pos, std::string_view prefix) {
  if (pos + prefix.size() > text.size()) return false;
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    char c = text[pos + i];
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    if (c != prefix[i]) return false;
  }
  return true;
}

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }

bool ends_with(const std::string& s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

std::string strip_suffix(std::string token) {
  for (std::string_view suffix : {"ing", "ed", "es", "s"}) {
    if (ends_with(token, suffix) && token.size() - suffix.size() >= 3) {
      if (suffix == "s" && ends_with(token, "ss")) continue;
      token.resize(token.size() - suffix.size());
      break;
    }
  }
  return token;
}

std::size_t code_point_length(std::string_view s) {
  return static_cast<std::size_t>(
      std::count_if(s.begin(), s.end(), [](char c) { return (static_cast<unsigned char>(c) & 0xC0) != 0x80; }));
}

}  // namespace

std::vector<std::string> Tokenizer::unfiltered(std::string_view text) const {
  std::vector<std::string> tokens;
  std::string current;
  auto flush = [&] {
    if (current.empty()) return;
    std::string token = options_.strip_suffixes ? strip_suffix(std::move(current)) : std::move(current);
    if (code_point_length(token) >= options_.min_length) tokens.push_back(std::move(token));
    current.clear();
  };

  std::size_t pos = 0;
  while (pos < text.size()) {
    if (starts_with_ci(text, pos, "http://") || starts_with_ci(text, pos, "https://") ||
        starts_with_ci(text, pos, "www.")) {
      flush();
      while (pos < text.size() && !is_space(text[pos])) ++pos;
      continue;
    }
    if (text[pos] == '@') {
      flush();
      ++pos;
      while (pos < text.size()) {
        char c = text[pos];
        bool handle_char = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
        if (!handle_char) break;
        ++pos;
      }
      continue;
    }
    char32_t cp = next_code_point(text, pos);
    if (is_word_code_point(cp)) {
      append_utf8(current, to_lower(cp));
    } else {
      flush();
    }
  }
  flush();
  return tokens;
}

std::vector<std::string> Tokenizer::operator()(std::string_view text) const {
  auto tokens = unfiltered(text);
  std::erase_if(tokens, [&](const std::string& t) { return stoplist_.contains(t); });
  return tokens;
}

std::vector<std::string> tokenize(std::string_view text) {
  static const Tokenizer tokenizer;
  return tokenizer(text);
}

Vocabulary::Vocabulary(std::vector<std::string> tokens, std::vector<std::size_t> document_frequency)
    : tokens_(std::move(tokens)), df_(std::move(document_frequency)) {
  if (tokens_.size() != df_.size()) throw ConfigError("vocabulary token/df size mismatch");
  for (std::size_t i = 0; i < tokens_.size(); ++i) {
    if (!index_.emplace(tokens_[i], static_cast<TokenId>(i)).second)
      throw DataError("duplicate vocabulary token '" + tokens_[i] + "'");
  }
}

std::optional<TokenId> Vocabulary::id(std::string_view token) const {
  auto it = index_.find(std::string(token));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::uint64_t Vocabulary::hash() const {
  std::uint64_t h = 14695981039346656037ull;
  auto mix = [&](unsigned char c) {
    h ^= c;
    h *= 1099511628211ull;
  };
  for (const auto& t : tokens_) {
    for (char c : t) mix(static_cast<unsigned char>(c));
    mix(0);
  }
  return h;
}

Vocabulary build_vocabulary(std::span<const std::vector<std::string>> documents, std::size_t min_df,
                            const Stoplist& stoplist) {
  if (min_df < 1) throw ConfigError("min_df must be >= 1");
  std::map<std::string, std::size_t> df;
  for (const auto& doc : documents) {
    std::vector<std::string> unique(doc.begin(), doc.end());
    std::sort(unique.begin(), unique.end());
    unique.erase(std::unique(unique.begin(), unique.end()), unique.end());
    for (auto& t : unique) ++df[t];
  }
  std::vector<std::pair<std::string, std::size_t>> kept;
  for (auto& [token, count] : df) {
    if (count >= min_df && !stoplist.contains(token)) kept.emplace_back(token, count);
  }
  if (kept.size() < 2) {
    throw DataError("vocabulary has " + std::to_string(kept.size()) + " token(s) at min_df=" +
                    std::to_string(min_df) + "; at least 2 are required");
  }
  std::stable_sort(kept.begin(), kept.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
  std::vector<std::string> tokens;
  std::vector<std::size_t> freqs;
  tokens.reserve(kept.size());
  freqs.reserve(kept.size());
  for (auto& [t, c] : kept) {
    tokens.push_back(std::move(t));
    freqs.push_back(c);
  }
  return Vocabulary(std::move(tokens), std::move(freqs));
}

std::size_t default_min_df(std::size_t document_count) { return document_count < 1000 ? 2 : 5; }

void write_vocabulary(const Vocabulary& vocab, std::ostream& sink) {
  for (std::size_t i = 0; i < vocab.size(); ++i) sink << vocab.tokens()[i] << '\t' << vocab.document_frequencies()[i] << '\n';
}

Vocabulary read_vocabulary(std::istream& source) {
  std::vector<std::string> tokens;
  std::vector<std::size_t> df;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(source, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos) throw DataError("vocabulary line " + std::to_string(line_no) + ": missing tab");
    tokens.push_back(line.substr(0, tab));
    try {
      df.push_back(std::stoull(line.substr(tab + 1)));
    } catch (const std::exception&) {
      throw DataError("vocabulary line " + std::to_string(line_no) + ": bad document frequency");
    }
  }
  return Vocabulary(std::move(tokens), std::move(df));
}

std::size_t BowDocument::length() const {
  std::size_t n = 0;
  for (const auto& c : counts) n += c.count;
  return n;
}

BowCorpus::BowCorpus(Vocabulary vocab, std::vector<BowDocument> documents, std::vector<BowSlice> slices,
                     std::size_t dropped)
    : vocab_(std::move(vocab)), documents_(std::move(documents)), slices_(std::move(slices)), dropped_(dropped) {
  std::size_t expected_begin = 0;
  for (const auto& s : slices_) {
    if (s.begin != expected_begin || s.end < s.begin) throw DataError("bow slices do not partition the documents");
    expected_begin = s.end;
  }
  if (!slices_.empty() && expected_begin != documents_.size())
    throw DataError("bow slices do not cover every document");
  for (const auto& d : documents_) {
    if (d.counts.empty()) throw DataError("bow document '" + d.source_id + "' is empty");
    for (std::size_t i = 0; i < d.counts.size(); ++i) {
      if (d.counts[i].token >= vocab_.size() || d.counts[i].count == 0 ||
          (i > 0 && d.counts[i - 1].token >= d.counts[i].token))
        throw DataError("bow document '" + d.source_id + "' has invalid token counts");
    }
  }
}

std::size_t BowCorpus::total_tokens() const {
  std::size_t n = 0;
  for (const auto& d : documents_) n += d.length();
  return n;
}

BowCorpus BowCorpus::merge_slices(std::size_t factor) const {
  if (factor < 1) throw ConfigError("slice merge factor must be >= 1");
  std::vector<BowSlice> merged;
  for (std::size_t i = 0; i < slices_.size(); i += factor) {
    std::size_t last = std::min(slices_.size(), i + factor) - 1;
    merged.push_back({slices_[i].date, slices_[i].begin, slices_[last].end});
  }
  return BowCorpus(vocab_, documents_, std::move(merged), dropped_);
}

BowCorpus to_bow(const Corpus& corpus, const Vocabulary& vocab, const Tokenizer& tokenizer) {
  std::vector<BowDocument> docs;
  std::vector<BowSlice> slices;
  std::size_t dropped = 0;
  const auto& records = corpus.records();
  for (const auto& day : slice_by_day(corpus)) {
    BowSlice slice{day.date, docs.size(), docs.size()};
    for (std::size_t idx : day.records) {
      const auto& rec = records[idx];
      std::map<TokenId, std::uint32_t> counts;
      for (const auto& t : tokenizer(rec.text)) {
        if (auto id = vocab.id(t)) ++counts[*id];
      }
      if (counts.empty()) {
        ++dropped;
        continue;
      }
      BowDocument doc{rec.id, rec.agency, rec.timestamp, {}};
      doc.counts.reserve(counts.size());
      for (auto [id, c] : counts) doc.counts.push_back({id, c});
      docs.push_back(std::move(doc));
    }
    slice.end = docs.size();
    slices.push_back(slice);
  }
  return BowCorpus(vocab, std::move(docs), std::move(slices), dropped);
}

BowCorpus build_bow(const Corpus& corpus, std::size_t min_df, const Tokenizer& tokenizer) {
  std::vector<std::vector<std::string>> tokenized;
  tokenized.reserve(corpus.size());
  for (const auto& rec : corpus.records()) tokenized.push_back(tokenizer(rec.text));
  return to_bow(corpus, build_vocabulary(tokenized, min_df, tokenizer.stoplist()), tokenizer);
}

}  // namespace crisiscomm
