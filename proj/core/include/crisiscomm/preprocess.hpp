#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "crisiscomm/calendar.hpp"
#include "crisiscomm/corpus.hpp"

namespace crisiscomm {

class Stoplist {
 public:
  Stoplist() = default;
  explicit Stoplist(std::unordered_set<std::string> tokens) : tokens_(std::move(tokens)) {}

  bool contains(std::string_view token) const { return tokens_.count(std::string(token)) > 0; }
  std::size_t size() const { return tokens_.size(); }
  void insert(std::string token) { tokens_.insert(std::move(token)); }

 private:
  std::unordered_set<std::string> tokens_;
};

// Bundled English function words plus tweet boilerplate ("amp", "http", "rt", ...).
const Stoplist& default_stoplist();

// One token per line; `#` starts a comment; tokens are lowercased.
Stoplist load_stoplist(std::istream& source);

struct TokenizerOptions {
  // Light suffix stripping (-ing, -ed, -es, -s). Off by default.
  bool strip_suffixes = false;
  std::size_t min_length = 3;
};

// Lowercases, drops URLs and @-mentions, keeps hashtag bodies, splits on
// anything that is not an ASCII letter/digit or a UTF-8 continuation of a
// non-ASCII character, drops short tokens and stopwords.
class Tokenizer {
 public:
  Tokenizer() : Tokenizer(default_stoplist()) {}
  explicit Tokenizer(Stoplist stoplist, TokenizerOptions options = {})
      : stoplist_(std::move(stoplist)), options_(options) {}

  std::vector<std::string> operator()(std::string_view text) const;
  // Same rules minus the stoplist filter.
  std::vector<std::string> unfiltered(std::string_view text) const;

  const Stoplist& stoplist() const { return stoplist_; }
  const TokenizerOptions& options() const { return options_; }

 private:
  Stoplist stoplist_;
  TokenizerOptions options_;
};

// Tokenizes with the default stoplist and options.
std::vector<std::string> tokenize(std::string_view text);

using TokenId = std::uint32_t;

class Vocabulary {
 public:
  Vocabulary() = default;
  // Tokens must be distinct; ids follow the order given.
  Vocabulary(std::vector<std::string> tokens, std::vector<std::size_t> document_frequency);

  std::size_t size() const { return tokens_.size(); }
  const std::string& token(TokenId id) const { return tokens_[id]; }
  std::optional<TokenId> id(std::string_view token) const;
  std::size_t document_frequency(TokenId id) const { return df_[id]; }
  const std::vector<std::string>& tokens() const { return tokens_; }
  const std::vector<std::size_t>& document_frequencies() const { return df_; }
  // FNV-1a over the token list; ties a model file to the vocabulary it was fit on.
  std::uint64_t hash() const;

  bool operator==(const Vocabulary& other) const { return tokens_ == other.tokens_ && df_ == other.df_; }

 private:
  std::vector<std::string> tokens_;
  std::vector<std::size_t> df_;
  std::unordered_map<std::string, TokenId> index_;
};

// Keeps tokens with document frequency >= min_df that are not in the
// stoplist. Ids by descending df, ties lexicographic. Throws DataError when
// fewer than two tokens survive, ConfigError when min_df < 1.
Vocabulary build_vocabulary(std::span<const std::vector<std::string>> documents, std::size_t min_df,
                            const Stoplist& stoplist = Stoplist{});

// 2 for corpora under 1,000 documents, 5 otherwise.
std::size_t default_min_df(std::size_t document_count);

// Vocabulary as `token<TAB>df` lines in id order.
void write_vocabulary(const Vocabulary& vocab, std::ostream& sink);
Vocabulary read_vocabulary(std::istream& source);

struct TokenCount {
  TokenId token;
  std::uint32_t count;

  bool operator==(const TokenCount&) const = default;
};

struct BowDocument {
  std::string source_id;
  std::string agency;
  Timestamp timestamp;
  std::vector<TokenCount> counts;  // ascending token id, counts >= 1

  std::size_t length() const;
  bool operator==(const BowDocument&) const = default;
};

// Documents of one time slice occupy [begin, end) of BowCorpus::documents().
struct BowSlice {
  Date date;
  std::size_t begin = 0;
  std::size_t end = 0;

  std::size_t size() const { return end - begin; }
  bool empty() const { return begin == end; }
  bool operator==(const BowSlice&) const = default;
};

class BowCorpus {
 public:
  BowCorpus(Vocabulary vocab, std::vector<BowDocument> documents, std::vector<BowSlice> slices,
            std::size_t dropped = 0);

  const Vocabulary& vocabulary() const { return vocab_; }
  const std::vector<BowDocument>& documents() const { return documents_; }
  const std::vector<BowSlice>& slices() const { return slices_; }
  std::size_t size() const { return documents_.size(); }
  // Records dropped because no token survived the vocabulary.
  std::size_t dropped() const { return dropped_; }
  std::size_t total_tokens() const;

  // Coarser slicing: every `factor` consecutive slices become one, dated by
  // the first day of the group. factor == 1 returns a copy.
  BowCorpus merge_slices(std::size_t factor) const;

  bool operator==(const BowCorpus&) const = default;

 private:
  Vocabulary vocab_;
  std::vector<BowDocument> documents_;
  std::vector<BowSlice> slices_;
  std::size_t dropped_ = 0;
};

// One document per record with at least one in-vocabulary token; slices
// mirror slice_by_day(corpus).
BowCorpus to_bow(const Corpus& corpus, const Vocabulary& vocab, const Tokenizer& tokenizer = Tokenizer{});

// Tokenizes every record, builds the vocabulary and converts in one go.
BowCorpus build_bow(const Corpus& corpus, std::size_t min_df, const Tokenizer& tokenizer = Tokenizer{});

}  // namespace crisiscomm
