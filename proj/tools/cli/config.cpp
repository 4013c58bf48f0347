#include "cli/config.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#ifndef CRISISCOMM_DEFAULT_LEXICON
#define CRISISCOMM_DEFAULT_LEXICON "lexicon_en.tsv"
#endif

namespace crisiscomm::cli {
namespace {

const std::set<std::string> kPathKeys = {"tweets", "indicators", "lexicon", "stoplist", "out"};

const std::map<std::string, std::string> kDefaults = {
    {"tweets", ""},
    {"indicators", ""},
    {"lexicon", CRISISCOMM_DEFAULT_LEXICON},
    {"stoplist", ""},
    {"window_start", "2020-02-21"},
    {"window_end", "2020-06-06"},
    {"agency", ""},
    {"strict", "false"},
    {"drop_retweets", "false"},
    {"min_df", "auto"},
    {"strip_suffixes", "false"},
    {"k_grid", "8,10,15"},
    {"alpha", "auto"},
    {"eta", "0.01"},
    {"iterations", "1000"},
    {"burn_in", "500"},
    {"seed", "1"},
    {"dtm_topics", "8"},
    {"dtm_iterations", "1000"},
    {"dtm_burn_in", "500"},
    {"sigma2", "0.005"},
    {"slice_merge", "1"},
    {"sentiment_window", "1"},
    {"negation", "false"},
    {"attribution", "hard"},
    {"report_model", "lda"},
    {"top_words", "10"},
    {"charts", "true"},
    {"out", "out"},
};

std::string trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return std::string(s);
}

[[noreturn]] void bad(const std::string& key, const std::string& why) {
  throw CliError(kConfigFailure, "config '" + key + "': " + why);
}

template <typename T>
T parse_integer(const std::string& key, const std::string& text) {
  T value{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) bad(key, "expected an integer, got '" + text + "'");
  return value;
}

double parse_double(const std::string& key, const std::string& text) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) bad(key, "expected a number, got '" + text + "'");
  return value;
}

bool parse_bool(const std::string& key, const std::string& text) {
  if (text == "true" || text == "1" || text == "yes" || text == "on") return true;
  if (text == "false" || text == "0" || text == "no" || text == "off") return false;
  bad(key, "expected true/false, got '" + text + "'");
}

Date parse_day(const std::string& key, const std::string& text) {
  auto d = parse_date(text);
  if (!d) bad(key, "expected YYYY-MM-DD, got '" + text + "'");
  return *d;
}

}  // namespace

Settings::Settings() : values_(kDefaults) {}

void Settings::set(const std::string& key, const std::string& value, const fs::path& base_dir) {
  if (!kDefaults.count(key)) throw CliError(kConfigFailure, "unknown config key '" + key + "'");
  std::string v = value;
  if (kPathKeys.count(key) && !v.empty()) {
    fs::path p(v);
    if (p.is_relative()) p = base_dir / p;
    v = p.lexically_normal().string();
  }
  values_[key] = v;
}

void Settings::load_text(std::string_view text, const fs::path& base_dir) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string stripped = trim(line);
    if (stripped.empty()) continue;
    auto eq = stripped.find('=');
    if (eq == std::string::npos)
      throw CliError(kConfigFailure, "config line " + std::to_string(line_no) + ": expected key = value");
    set(trim(std::string_view(stripped).substr(0, eq)), trim(std::string_view(stripped).substr(eq + 1)), base_dir);
  }
}

void Settings::load_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw CliError(kConfigFailure, "cannot read config file " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  load_text(text.str(), fs::absolute(path).parent_path());
}

RunConfig Settings::resolve() const {
  auto get = [&](const char* key) -> const std::string& { return values_.at(key); };
  RunConfig c;
  c.tweets = get("tweets");
  c.indicators = get("indicators");
  c.lexicon = get("lexicon");
  if (!get("stoplist").empty()) c.stoplist = fs::path(get("stoplist"));
  c.window = {parse_day("window_start", get("window_start")), parse_day("window_end", get("window_end"))};
  if (c.window.last < c.window.first) bad("window_end", "precedes window_start");
  if (!get("agency").empty()) c.agency = get("agency");
  c.strict = parse_bool("strict", get("strict"));
  c.drop_retweets = parse_bool("drop_retweets", get("drop_retweets"));

  if (get("min_df") != "auto") {
    c.min_df = parse_integer<std::size_t>("min_df", get("min_df"));
    if (*c.min_df < 1) bad("min_df", "must be >= 1");
  }
  c.strip_suffixes = parse_bool("strip_suffixes", get("strip_suffixes"));

  std::string grid = get("k_grid");
  std::size_t start = 0;
  while (start <= grid.size()) {
    auto comma = grid.find(',', start);
    const std::string item = trim(std::string_view(grid).substr(start, comma == std::string::npos ? std::string::npos : comma - start));
    if (!item.empty()) c.k_grid.push_back(parse_integer<std::size_t>("k_grid", item));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (c.k_grid.empty()) bad("k_grid", "needs at least one value");
  for (std::size_t k : c.k_grid) {
    if (k < 1 || k > 500) bad("k_grid", "values must be in [1, 500]");
    if (k < 2 && c.k_grid.size() > 1) bad("k_grid", "selection grids need K >= 2");
  }
  if (get("alpha") != "auto") {
    c.alpha = parse_double("alpha", get("alpha"));
    if (!(*c.alpha > 0.0)) bad("alpha", "must be positive");
  }
  c.eta = parse_double("eta", get("eta"));
  if (!(c.eta > 0.0)) bad("eta", "must be positive");
  c.iterations = parse_integer<std::size_t>("iterations", get("iterations"));
  c.burn_in = parse_integer<std::size_t>("burn_in", get("burn_in"));
  if (c.iterations <= c.burn_in) bad("iterations", "must exceed burn_in");
  c.seed = parse_integer<std::uint64_t>("seed", get("seed"));

  c.dtm_topics = parse_integer<std::size_t>("dtm_topics", get("dtm_topics"));
  if (c.dtm_topics < 2 || c.dtm_topics > 500) bad("dtm_topics", "must be in [2, 500]");
  c.dtm_iterations = parse_integer<std::size_t>("dtm_iterations", get("dtm_iterations"));
  c.dtm_burn_in = parse_integer<std::size_t>("dtm_burn_in", get("dtm_burn_in"));
  if (c.dtm_iterations <= c.dtm_burn_in) bad("dtm_iterations", "must exceed dtm_burn_in");
  c.sigma2 = parse_double("sigma2", get("sigma2"));
  if (!(c.sigma2 > 0.0)) bad("sigma2", "must be positive");
  c.slice_merge = parse_integer<std::size_t>("slice_merge", get("slice_merge"));
  if (c.slice_merge < 1 || c.slice_merge > 31) bad("slice_merge", "must be in [1, 31]");

  c.sentiment_window = parse_integer<std::size_t>("sentiment_window", get("sentiment_window"));
  if (c.sentiment_window < 1 || c.sentiment_window > 365) bad("sentiment_window", "must be in [1, 365]");
  c.negation = parse_bool("negation", get("negation"));
  const auto& attribution = get("attribution");
  if (attribution == "hard") {
    c.attribution = Attribution::kHard;
  } else if (attribution == "soft") {
    c.attribution = Attribution::kSoft;
  } else {
    bad("attribution", "expected hard or soft");
  }
  c.report_model = get("report_model");
  if (c.report_model != "lda" && c.report_model != "dtm") bad("report_model", "expected lda or dtm");
  c.top_words = parse_integer<std::size_t>("top_words", get("top_words"));
  if (c.top_words < 1) bad("top_words", "must be >= 1");
  c.charts = parse_bool("charts", get("charts"));
  c.out = get("out");
  return c;
}

std::string Settings::render() const {
  std::ostringstream out;
  for (const auto& [key, value] : values_) {
    if (key == "out") continue;
    out << key << " = " << value << '\n';
  }
  return out.str();
}

void validate_inputs(const RunConfig& config) {
  auto require = [](const fs::path& p, const char* key) {
    if (p.empty()) throw CliError(kConfigFailure, std::string("config '") + key + "' is not set");
    if (!fs::exists(p)) throw CliError(kConfigFailure, std::string("config '") + key + "': " + p.string() + " does not exist");
  };
  require(config.tweets, "tweets");
  require(config.indicators, "indicators");
  require(config.lexicon, "lexicon");
  if (config.stoplist) require(*config.stoplist, "stoplist");
}

}  // namespace crisiscomm::cli
