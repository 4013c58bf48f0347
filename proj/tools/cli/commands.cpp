#include "cli/commands.hpp"

#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "crisiscomm/chronology.hpp"
#include "crisiscomm/corpus.hpp"
#include "crisiscomm/dtm.hpp"
#include "crisiscomm/error.hpp"
#include "crisiscomm/lda.hpp"
#include "crisiscomm/model_io.hpp"
#include "crisiscomm/preprocess.hpp"
#include "crisiscomm/report.hpp"
#include "crisiscomm/sentiment.hpp"
#include "json.hpp"

namespace crisiscomm::cli {
namespace {

void write_text(const fs::path& path, const std::string& content) {
  std::error_code ec;
  fs::create_directories(path.parent_path(), ec);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw CliError(kDataFailure, "cannot write " + path.string());
  out << content;
  if (!out) throw CliError(kDataFailure, "failed writing " + path.string());
}

std::ifstream open_input(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CliError(kConfigFailure, "cannot read " + path.string());
  return in;
}

std::ifstream open_artifact(const fs::path& out, const char* name, const char* producer) {
  const fs::path path = out / name;
  if (!fs::exists(path))
    throw CliError(kMissingArtifact, path.string() + " is missing; run `crisiscomm " + std::string(producer) +
                                         "` with the same --out first");
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CliError(kMissingArtifact, "cannot read " + path.string());
  return in;
}

void echo_config(const Invocation& inv) { write_text(inv.config.out / kConfigEcho, inv.rendered_config); }

Corpus load_corpus(const RunConfig& c) {
  auto in = open_artifact(c.out, kCorpusFile, "ingest");
  IngestOptions options;
  options.strict = true;
  return ingest_tweets(in, options).corpus;
}

Tokenizer make_tokenizer(const RunConfig& c) {
  TokenizerOptions options;
  options.strip_suffixes = c.strip_suffixes;
  if (c.stoplist) {
    auto in = open_input(*c.stoplist);
    return Tokenizer(load_stoplist(in), options);
  }
  return Tokenizer(default_stoplist(), options);
}

SentimentLexicon load_lexicon_file(const RunConfig& c) {
  auto in = open_input(c.lexicon);
  return load_lexicon(in);
}

BowCorpus build_corpus_bow(const RunConfig& c, const Corpus& corpus, const Tokenizer& tokenizer, std::ostream& log) {
  const std::size_t min_df = c.min_df.value_or(default_min_df(corpus.size()));
  BowCorpus bow = build_bow(corpus, min_df, tokenizer);
  log << "vocabulary: " << bow.vocabulary().size() << " tokens (min_df=" << min_df << "), " << bow.size()
      << " documents, " << bow.dropped() << " dropped as empty\n";
  std::ostringstream vocab;
  write_vocabulary(bow.vocabulary(), vocab);
  write_text(c.out / kVocabularyFile, vocab.str());
  return bow;
}

LdaConfig lda_config(const RunConfig& c) {
  LdaConfig cfg;
  cfg.alpha = c.alpha;
  cfg.eta = c.eta;
  cfg.iterations = c.iterations;
  cfg.burn_in = c.burn_in;
  cfg.seed = c.seed;
  return cfg;
}

}  // namespace

void cmd_ingest(const Invocation& inv, std::ostream& log) {
  const RunConfig& c = inv.config;
  validate_inputs(c);
  IngestOptions options;
  options.agency_filter = c.agency;
  options.window = c.window;
  options.strict = c.strict;
  options.drop_retweets = c.drop_retweets;

  auto tweets_in = open_input(c.tweets);
  TweetIngestResult tweets = ingest_tweets(tweets_in, options);
  for (const auto& issue : tweets.issues) {
    if (issue.line) log << "warning: " << c.tweets.filename().string() << " line " << issue.line << ": " << issue.message << '\n';
    else log << "warning: " << issue.message << '\n';
  }
  auto ind_in = open_input(c.indicators);
  IndicatorSeries indicators = ingest_indicators(ind_in);
  if (indicators.fill_count()) log << "warning: " << indicators.fill_count() << " missing indicator date(s) zero-filled\n";

  std::ostringstream corpus_text, ind_text;
  write_tweets(tweets.corpus, corpus_text);
  write_indicators(indicators, ind_text);
  write_text(c.out / kCorpusFile, corpus_text.str());
  write_text(c.out / kIndicatorFile, ind_text.str());

  nlohmann::ordered_json summary;
  summary["agency"] = tweets.corpus.agency();
  summary["records"] = tweets.corpus.size();
  summary["first_date"] = format_date(tweets.corpus.first_date());
  summary["last_date"] = format_date(tweets.corpus.last_date());
  summary["days"] = slice_by_day(tweets.corpus).size();
  summary["skipped_malformed"] = tweets.skipped_malformed;
  summary["dropped_out_of_window"] = tweets.dropped_out_of_window;
  summary["dropped_by_filter"] = tweets.dropped_by_filter;
  summary["indicator_first_date"] = format_date(indicators.first_date());
  summary["indicator_last_date"] = format_date(indicators.last_date());
  summary["indicator_days"] = indicators.size();
  summary["indicator_zero_filled"] = indicators.fill_count();
  write_text(c.out / kIngestSummaryFile, summary.dump(2) + "\n");
  echo_config(inv);
  log << "ingest: " << tweets.corpus.size() << " tweets over " << summary["days"].get<std::size_t>() << " days, "
      << indicators.size() << " indicator days\n";
}

void cmd_fit_lda(const Invocation& inv, std::ostream& log) {
  const RunConfig& c = inv.config;
  const Corpus corpus = load_corpus(c);
  const BowCorpus bow = build_corpus_bow(c, corpus, make_tokenizer(c), log);

  LdaConfig base = lda_config(c);
  KSelection selection;
  if (c.k_grid.size() == 1) {
    base.num_topics = c.k_grid.front();
    selection.model = fit_lda(bow, base);
    const auto scores = coherence(selection.model, bow);
    double sum = 0.0;
    for (double s : scores) sum += s;
    selection.report.entries.push_back({base.num_topics, sum / static_cast<double>(scores.size())});
    selection.report.selected_k = base.num_topics;
  } else {
    selection = select_k(bow, c.k_grid, base);
  }
  selection.model.vocabulary_hash = bow.vocabulary().hash();

  std::ostringstream model_text, report_text;
  save_lda(selection.model, model_text);
  save_coherence_report(selection.report, report_text);
  write_text(c.out / kLdaModelFile, model_text.str());
  write_text(c.out / kCoherenceFile, report_text.str());
  echo_config(inv);
  for (const auto& e : selection.report.entries) log << "  K=" << e.num_topics << " mean NPMI " << e.mean_coherence << '\n';
  log << "fit-lda: selected K=" << selection.report.selected_k << '\n';
}

void cmd_fit_dtm(const Invocation& inv, std::ostream& log) {
  const RunConfig& c = inv.config;
  const Corpus corpus = load_corpus(c);
  const BowCorpus bow = build_corpus_bow(c, corpus, make_tokenizer(c), log);

  DtmConfig cfg;
  cfg.num_topics = c.dtm_topics;
  cfg.sigma2 = c.sigma2;
  cfg.slice_merge = c.slice_merge;
  cfg.lda = lda_config(c);
  cfg.lda.iterations = c.dtm_iterations;
  cfg.lda.burn_in = c.dtm_burn_in;
  const DtmModel model = fit_dtm(bow, cfg);

  nlohmann::ordered_json traj = nlohmann::ordered_json::array();
  for (std::size_t k = 0; k < model.num_topics; ++k) {
    const auto words = topic_trajectory(model, bow.vocabulary(), k, c.top_words);
    nlohmann::ordered_json topic;
    topic["topic"] = k;
    topic["slices"] = nlohmann::ordered_json::array();
    for (std::size_t t = 0; t < model.slices(); ++t)
      topic["slices"].push_back({{"date", format_date(model.slice_dates[t])},
                                 {"observed", static_cast<bool>(model.observed[t])},
                                 {"words", words[t]}});
    traj.push_back(std::move(topic));
  }

  std::ostringstream model_text;
  save_dtm(model, model_text);
  write_text(c.out / kDtmModelFile, model_text.str());
  write_text(c.out / kTrajectoryFile, traj.dump(2) + "\n");
  echo_config(inv);
  std::size_t observed = 0;
  for (bool o : model.observed) observed += o;
  log << "fit-dtm: K=" << model.num_topics << ", " << model.slices() << " slices (" << observed << " observed)\n";
}

void cmd_sentiment(const Invocation& inv, std::ostream& log) {
  const RunConfig& c = inv.config;
  const Corpus corpus = load_corpus(c);
  const SentimentLexicon lexicon = load_lexicon_file(c);
  SentimentOptions options;
  options.negation = c.negation;
  const SentimentSeries daily = daily_sentiment(corpus, lexicon, make_tokenizer(c), options);
  const SentimentSeries rolling = rolling_mean(daily, c.sentiment_window);

  std::ostringstream raw_text, rolling_text;
  write_sentiment(daily, raw_text);
  write_sentiment(rolling, rolling_text);
  write_text(c.out / kSentimentFile, raw_text.str());
  write_text(c.out / kRollingSentimentFile, rolling_text.str());
  echo_config(inv);
  log << "sentiment: " << daily.size() << " days, lexicon of " << lexicon.size() << " tokens\n";
}

void cmd_report(const Invocation& inv, bool all, std::ostream& log) {
  const RunConfig& c = inv.config;
  if (all) {
    cmd_ingest(inv, log);
    cmd_fit_lda(inv, log);
    cmd_fit_dtm(inv, log);
    cmd_sentiment(inv, log);
  }

  const Corpus corpus = load_corpus(c);
  Vocabulary vocab;
  {
    auto in = open_artifact(c.out, kVocabularyFile, "fit-lda");
    vocab = read_vocabulary(in);
  }
  const BowCorpus bow = to_bow(corpus, vocab, make_tokenizer(c));

  IndicatorSeries indicators = [&] {
    auto in = open_artifact(c.out, kIndicatorFile, "ingest");
    return ingest_indicators(in);
  }();
  SentimentSeries sentiment = [&] {
    auto in = open_artifact(c.out, kSentimentFile, "sentiment");
    return read_sentiment(in);
  }();

  TopicFrequencySeries tf;
  if (c.report_model == "dtm") {
    auto in = open_artifact(c.out, kDtmModelFile, "fit-dtm");
    const DtmModel model = load_dtm(in);
    if (model.vocabulary_hash != vocab.hash())
      throw CliError(kMissingArtifact, "dtm_model.json does not match vocabulary.tsv; rerun `crisiscomm fit-dtm`");
    tf = topic_frequency(model, bow, c.attribution);
  } else {
    auto in = open_artifact(c.out, kLdaModelFile, "fit-lda");
    const LdaModel model = load_lda(in);
    if (model.vocabulary_hash != vocab.hash() || model.document_count() != bow.size())
      throw CliError(kMissingArtifact, "lda_model.json does not match the current corpus; rerun `crisiscomm fit-lda`");
    tf = topic_frequency(model, bow, c.attribution);
  }

  const PeriodSegmentation segmentation = default_segmentation();
  AlignedReport report = align(tf, sentiment, indicators, segmentation, c.sentiment_window);

  std::set<std::string> agencies;
  for (const auto& r : corpus.records()) agencies.insert(r.agency);
  auto add_words = [&](const std::string& label, const std::optional<std::string>& agency) {
    AgencyTopWords entry{label, top_words_by_period(bow, segmentation, c.top_words, agency)};
    for (const auto& p : entry.periods) {
      if (p.documents == 0) log << "warning: no " << label << " documents in period '" << p.period << "'\n";
    }
    report.top_words.push_back(std::move(entry));
  };
  if (agencies.size() > 1) add_words("all", std::nullopt);
  for (const auto& a : agencies) add_words(a, a);

  ReportFormats formats;
  formats.charts = c.charts;
  const auto files = emit_report(report, c.out / kReportDir, formats);
  echo_config(inv);
  log << "report: " << report.rows.size() << " rows, " << files.size() << " files in "
      << (c.out / kReportDir).string() << '\n';
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Agency crisis-communication analytics: topics, sentiment and outbreak alignment"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path, out_dir;
  std::optional<std::uint64_t> seed;
  bool strict = false;
  std::vector<std::string> overrides;
  app.add_option("--config", config_path, "Flat key = value run configuration");
  app.add_option("--out", out_dir, "Output directory (overrides `out`)");
  app.add_option("--seed", seed, "Random seed (overrides `seed`)");
  app.add_flag("--strict", strict, "Abort on the first malformed input line");
  app.add_option("--set", overrides, "Override any config key: --set key=value");

  auto* ingest = app.add_subcommand("ingest", "Validate archives and persist the corpus and indicator series");
  auto* fit_lda_cmd = app.add_subcommand("fit-lda", "Fit static LDA, selecting K by NPMI coherence");
  auto* fit_dtm_cmd = app.add_subcommand("fit-dtm", "Fit the dynamic topic model");
  auto* sentiment = app.add_subcommand("sentiment", "Daily and rolling lexicon sentiment");
  auto* report = app.add_subcommand("report", "Join topics, sentiment and indicators into the period report");
  bool all = false;
  report->add_flag("--all", all, "Run every upstream command first");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kConfigFailure;
  }

  try {
    Settings settings;
    if (!config_path.empty()) settings.load_file(config_path);
    const fs::path cwd = fs::current_path();
    for (const auto& kv : overrides) {
      auto eq = kv.find('=');
      if (eq == std::string::npos) throw CliError(kConfigFailure, "--set expects key=value, got '" + kv + "'");
      settings.set(kv.substr(0, eq), kv.substr(eq + 1), cwd);
    }
    if (!out_dir.empty()) settings.set("out", out_dir, cwd);
    if (seed) settings.set("seed", std::to_string(*seed), cwd);
    if (strict) settings.set("strict", "true", cwd);

    Invocation inv{settings.resolve(), settings.render()};
    if (ingest->parsed()) {
      cmd_ingest(inv, err);
    } else if (fit_lda_cmd->parsed()) {
      cmd_fit_lda(inv, err);
    } else if (fit_dtm_cmd->parsed()) {
      cmd_fit_dtm(inv, err);
    } else if (sentiment->parsed()) {
      cmd_sentiment(inv, err);
    } else if (report->parsed()) {
      cmd_report(inv, all, err);
    }
    return kOk;
  } catch (const CliError& e) {
    err << "error: " << e.what() << '\n';
    return e.code();
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigFailure;
  } catch (const DataError& e) {
    err << "data error: " << e.what() << '\n';
    return kDataFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kDataFailure;
  }
}

}  // namespace crisiscomm::cli
