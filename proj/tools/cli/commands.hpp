#pragma once

#include <iosfwd>

#include "cli/config.hpp"

namespace crisiscomm::cli {

// Artifact file names inside the output directory.
inline constexpr const char* kCorpusFile = "corpus.jsonl";
inline constexpr const char* kIndicatorFile = "indicators.csv";
inline constexpr const char* kIngestSummaryFile = "ingest.json";
inline constexpr const char* kVocabularyFile = "vocabulary.tsv";
inline constexpr const char* kLdaModelFile = "lda_model.json";
inline constexpr const char* kCoherenceFile = "coherence.json";
inline constexpr const char* kDtmModelFile = "dtm_model.json";
inline constexpr const char* kTrajectoryFile = "dtm_trajectories.json";
inline constexpr const char* kSentimentFile = "sentiment.csv";
inline constexpr const char* kRollingSentimentFile = "sentiment_rolling.csv";
inline constexpr const char* kReportDir = "report";
inline constexpr const char* kConfigEcho = "run.cfg";

struct Invocation {
  RunConfig config;
  std::string rendered_config;
};

void cmd_ingest(const Invocation& inv, std::ostream& log);
void cmd_fit_lda(const Invocation& inv, std::ostream& log);
void cmd_fit_dtm(const Invocation& inv, std::ostream& log);
void cmd_sentiment(const Invocation& inv, std::ostream& log);
// With `all`, runs every upstream command first.
void cmd_report(const Invocation& inv, bool all, std::ostream& log);

// Full command line handling. Returns the process exit code:
// 0 success, 1 config error, 2 missing upstream artifact, 3 data error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace crisiscomm::cli
