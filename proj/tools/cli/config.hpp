#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "crisiscomm/calendar.hpp"
#include "crisiscomm/chronology.hpp"

namespace crisiscomm::cli {

enum ExitCode : int {
  kOk = 0,
  kConfigFailure = 1,
  kMissingArtifact = 2,
  kDataFailure = 3,
};

class CliError : public std::runtime_error {
 public:
  CliError(ExitCode code, const std::string& message) : std::runtime_error(message), code_(code) {}
  ExitCode code() const { return code_; }

 private:
  ExitCode code_;
};

namespace fs = std::filesystem;

struct RunConfig {
  // inputs
  fs::path tweets;
  fs::path indicators;
  fs::path lexicon;
  std::optional<fs::path> stoplist;
  DateWindow window;
  std::optional<std::string> agency;
  bool strict = false;
  bool drop_retweets = false;

  // preprocessing; nullopt min_df scales with corpus size
  std::optional<std::size_t> min_df;
  bool strip_suffixes = false;

  // static LDA
  std::vector<std::size_t> k_grid;
  std::optional<double> alpha;
  double eta = 0.01;
  std::size_t iterations = 1000;
  std::size_t burn_in = 500;
  std::uint64_t seed = 1;

  // dynamic topic model
  std::size_t dtm_topics = 8;
  std::size_t dtm_iterations = 1000;
  std::size_t dtm_burn_in = 500;
  double sigma2 = 0.005;
  std::size_t slice_merge = 1;

  // sentiment and report
  std::size_t sentiment_window = 1;
  bool negation = false;
  Attribution attribution = Attribution::kHard;
  std::string report_model = "lda";
  std::size_t top_words = 10;
  bool charts = true;

  fs::path out = "out";
};

// Flat `key = value` settings; `#` starts a comment. Later assignments win.
class Settings {
 public:
  Settings();

  // Throws CliError(kConfigFailure) for unknown keys or malformed lines.
  void load_text(std::string_view text, const fs::path& base_dir);
  void load_file(const fs::path& path);
  void set(const std::string& key, const std::string& value, const fs::path& base_dir);

  // Typed view; throws CliError(kConfigFailure) on bad values or ranges.
  RunConfig resolve() const;
  // Canonical `key = value` listing in key order, paths absolute.
  std::string render() const;

 private:
  std::map<std::string, std::string> values_;
};

// Checks that every input path exists.
void validate_inputs(const RunConfig& config);

}  // namespace crisiscomm::cli
