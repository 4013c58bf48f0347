#pragma once

// Synthetic bag-of-words corpora drawn from known topics.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "crisiscomm/calendar.hpp"
#include "crisiscomm/preprocess.hpp"

namespace crisiscomm::testing {

using Distribution = std::vector<double>;

inline Vocabulary synthetic_vocabulary(std::size_t size) {
  std::vector<std::string> tokens;
  std::vector<std::size_t> df;
  for (std::size_t i = 0; i < size; ++i) {
    tokens.push_back("w" + std::to_string(1000 + i));
    df.push_back(1);
  }
  return Vocabulary(std::move(tokens), std::move(df));
}

inline std::vector<double> dirichlet(std::mt19937_64& rng, std::size_t k, double concentration) {
  std::gamma_distribution<double> gamma(concentration, 1.0);
  std::vector<double> out(k);
  double total = 0;
  for (auto& v : out) total += (v = gamma(rng) + 1e-300);
  for (auto& v : out) v /= total;
  return out;
}

inline std::size_t draw(std::mt19937_64& rng, const std::vector<double>& p) {
  std::discrete_distribution<std::size_t> dist(p.begin(), p.end());
  return dist(rng);
}

inline BowDocument make_document(const std::string& id, Timestamp ts, const std::vector<std::uint32_t>& counts) {
  BowDocument doc{id, "agency", ts, {}};
  for (std::size_t w = 0; w < counts.size(); ++w)
    if (counts[w] > 0) doc.counts.push_back({static_cast<TokenId>(w), counts[w]});
  return doc;
}

struct PlantedSlice {
  std::vector<Distribution> topics;  // K x V
  std::size_t documents = 0;
};

struct PlantedOptions {
  std::size_t vocabulary_size = 0;
  std::size_t document_length = 30;
  double doc_concentration = 0.3;
  std::uint64_t seed = 1;
  Date first_date = *parse_date("2020-03-01");
  std::size_t days_per_slice = 1;
};

// One BowSlice per PlantedSlice, dated days_per_slice apart; every document
// draws its mixture from a symmetric Dirichlet and its words from the
// mixture of that slice's topics.
inline BowCorpus planted_corpus(const PlantedOptions& opts, const std::vector<PlantedSlice>& slices) {
  std::mt19937_64 rng(opts.seed);
  std::vector<BowDocument> docs;
  std::vector<BowSlice> out_slices;
  for (std::size_t t = 0; t < slices.size(); ++t) {
    const auto& slice = slices[t];
    const Date day = opts.first_date + std::chrono::days(static_cast<int>(t * opts.days_per_slice));
    const std::size_t begin = docs.size();
    for (std::size_t d = 0; d < slice.documents; ++d) {
      const auto mix = dirichlet(rng, slice.topics.size(), opts.doc_concentration);
      std::vector<std::uint32_t> counts(opts.vocabulary_size, 0);
      for (std::size_t n = 0; n < opts.document_length; ++n) {
        const std::size_t k = draw(rng, mix);
        ++counts[draw(rng, slice.topics[k])];
      }
      const Timestamp ts = Timestamp(day) + std::chrono::hours(12) + std::chrono::seconds(d);
      docs.push_back(make_document("s" + std::to_string(t) + "d" + std::to_string(d), ts, counts));
    }
    out_slices.push_back({day, begin, docs.size()});
  }
  return BowCorpus(synthetic_vocabulary(opts.vocabulary_size), std::move(docs), std::move(out_slices));
}

// Topic concentrated on `support` word ids with geometric weights
// decay^0, decay^1, ... in the order given.
inline Distribution support_topic(std::size_t vocabulary_size, const std::vector<std::size_t>& support,
                                  double decay) {
  Distribution p(vocabulary_size, 0.0);
  double w = 1.0, total = 0.0;
  for (std::size_t id : support) {
    p[id] = w;
    total += w;
    w *= decay;
  }
  for (auto& v : p) v /= total;
  return p;
}

}  // namespace crisiscomm::testing

namespace crisiscomm::testing {

// Single-slice corpus from explicit word-id lists (repeats allowed).
inline BowCorpus corpus_of(std::size_t vocabulary_size, const std::vector<std::vector<std::size_t>>& docs) {
  std::vector<BowDocument> out;
  for (std::size_t d = 0; d < docs.size(); ++d) {
    std::vector<std::uint32_t> counts(vocabulary_size, 0);
    for (auto w : docs[d]) ++counts[w];
    out.push_back(make_document("d" + std::to_string(d), Timestamp(*parse_date("2020-03-01")), counts));
  }
  const std::size_t n = out.size();
  return BowCorpus(synthetic_vocabulary(vocabulary_size), std::move(out), {{*parse_date("2020-03-01"), 0, n}});
}

}  // namespace crisiscomm::testing
