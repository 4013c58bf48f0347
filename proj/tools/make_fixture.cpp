// Writes the bundled synthetic fixture: agency tweets over 2020-02-21 ..
// 2020-06-06, a daily cases/deaths curve peaking on 2020-04-10 at
// 40,000 / 2,500, and a run configuration pointing at both.
//
//   make_fixture <output-dir> [tweet-count] [seed]

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "crisiscomm/calendar.hpp"
#include "json.hpp"

namespace {

using crisiscomm::Date;

struct Theme {
  const char* name;
  std::vector<const char*> words;
};

const std::vector<Theme> kThemes = {
    {"transmission", {"community", "transmission", "spread", "virus", "cases", "outbreak", "countries"}},
    {"masks", {"wear", "masks", "face", "covering", "cloth", "public", "protect"}},
    {"distancing", {"social", "distancing", "stay", "home", "quarantine", "apart", "gatherings"}},
    {"testing", {"testing", "sites", "test", "results", "screening", "drive", "available"}},
    {"supplies", {"medical", "supplies", "ppe", "nurses", "hospitals", "equipment", "shortage"}},
    {"vaccine", {"vaccine", "research", "trials", "development", "scientists", "treatment", "tobacco"}},
    {"travel", {"airports", "travel", "roadway", "construction", "drivers", "lanes", "florida"}},
    {"hurricane", {"hurricane", "season", "prepare", "evacuation", "shelters", "storm", "plan"}},
    {"stress", {"mental", "stress", "cope", "older", "adults", "hospitalization", "rates"}},
};

// Theme weights per agency and period (4 periods).
struct AgencyProfile {
  const char* name;
  int tweets_share;  // out of 100
  std::vector<std::vector<double>> weights;  // period x theme
};

const std::vector<AgencyProfile> kAgencies = {
    {"WHO", 40,
     {{5, 1, 1, 1, 2, 4, 0, 0, 1}, {2, 2, 3, 1, 5, 2, 0, 0, 1}, {1, 5, 4, 1, 3, 2, 0, 0, 1}, {1, 3, 2, 1, 2, 4, 0, 0, 2}}},
    {"CDC", 20,
     {{4, 0, 1, 2, 1, 1, 0, 0, 3}, {3, 1, 2, 4, 1, 0, 0, 0, 2}, {1, 2, 4, 2, 1, 0, 0, 0, 4}, {1, 2, 2, 1, 1, 0, 0, 0, 5}}},
    {"FEMA", 22,
     {{3, 0, 1, 1, 2, 0, 0, 2, 0}, {2, 0, 1, 2, 5, 0, 0, 1, 0}, {1, 0, 1, 5, 3, 0, 0, 2, 0}, {1, 0, 1, 3, 2, 0, 0, 5, 0}}},
    {"FDOT", 18,
     {{2, 0, 0, 0, 0, 0, 5, 0, 0}, {1, 0, 2, 0, 0, 0, 5, 0, 0}, {0, 1, 4, 0, 0, 0, 4, 0, 0}, {0, 1, 2, 0, 0, 0, 5, 1, 0}}},
};

const std::vector<const char*> kPositive = {"hope", "support", "thanks", "safe", "recovery", "strong", "heroes", "great"};
const std::vector<const char*> kNegative = {"crisis", "risk", "deaths", "fear", "shortage", "severe", "worried", "lack"};
const std::vector<const char*> kFiller = {"today", "information", "learn", "everyone", "latest", "update", "guidance", "health"};

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  std::size_t below(std::size_t n) { return std::min(n - 1, static_cast<std::size_t>(uniform() * n)); }
  std::size_t pick(const std::vector<double>& weights) {
    double total = 0.0;
    for (double w : weights) total += w;
    double u = uniform() * total;
    for (std::size_t i = 0; i < weights.size(); ++i) {
      if (u < weights[i]) return i;
      u -= weights[i];
    }
    return weights.size() - 1;
  }

 private:
  std::mt19937_64 engine_;
};

int period_of(int day_index) {
  // 2020-02-21 is day 0; boundaries at 03-20 (28), 04-11 (50), 05-11 (80).
  if (day_index < 28) return 0;
  if (day_index < 50) return 1;
  if (day_index < 80) return 2;
  return 3;
}

// Smooth rise from 03-20, peak on 04-10 (day 49), plateau, decline after 05-10.
double epidemic_shape(int day) {
  const int peak = 49;
  if (day < 28) return 0.002 * day;
  if (day <= peak) return 0.06 + 0.94 * std::pow((day - 28) / double(peak - 28), 2.0);
  if (day <= 79) return 0.8 + 0.12 * std::cos((day - peak) * 0.35);
  return std::max(0.25, 0.8 - 0.02 * (day - 79));
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: make_fixture <output-dir> [tweet-count] [seed]\n";
    return 1;
  }
  const std::filesystem::path dir = argv[1];
  const std::size_t count = argc > 2 ? std::stoul(argv[2]) : 500;
  const std::uint64_t seed = argc > 3 ? std::stoull(argv[3]) : 20200221;
  std::filesystem::create_directories(dir);

  const Date first = crisiscomm::default_window().first;
  const int days = static_cast<int>(crisiscomm::default_window().length());
  Rng rng(seed);

  std::vector<double> agency_weights;
  for (const auto& a : kAgencies) agency_weights.push_back(a.tweets_share);

  struct Row {
    std::int64_t sort_key;
    std::string line;
  };
  std::vector<Row> rows;
  for (std::size_t i = 0; i < count; ++i) {
    const auto& agency = kAgencies[rng.pick(agency_weights)];
    const int day = static_cast<int>(rng.below(static_cast<std::size_t>(days)));
    const int period = period_of(day);
    const auto& theme = kThemes[rng.pick(agency.weights[static_cast<std::size_t>(period)])];

    std::string text;
    auto add = [&](const std::string& w) {
      if (!text.empty()) text += ' ';
      text += w;
    };
    const std::size_t theme_words = 4 + rng.below(4);
    for (std::size_t j = 0; j < theme_words; ++j) {
      std::string w = theme.words[rng.below(theme.words.size())];
      if (j == 0) w[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(w[0])));
      add(w);
    }
    add(kFiller[rng.below(kFiller.size())]);
    // Sentiment darkens around the peak and recovers in the reopening phase.
    const double p_negative = period == 1 ? 0.7 : period == 2 ? 0.5 : period == 0 ? 0.4 : 0.25;
    add(rng.uniform() < p_negative ? kNegative[rng.below(kNegative.size())] : kPositive[rng.below(kPositive.size())]);
    if (rng.uniform() < 0.3) add("#COVID19");
    if (rng.uniform() < 0.3) add("https://t.co/" + std::to_string(100000 + i));
    if (rng.uniform() < 0.15) text = "@" + std::string(agency.name) + "gov " + text;

    const int seconds = static_cast<int>(rng.below(86400));
    const crisiscomm::Timestamp ts = crisiscomm::Timestamp{first + std::chrono::days(day)} + std::chrono::seconds(seconds);
    nlohmann::ordered_json obj;
    char id[32];
    std::snprintf(id, sizeof(id), "%s-%04zu", agency.name, i);
    obj["id"] = id;
    obj["created_at"] = crisiscomm::format_timestamp(ts);
    obj["agency"] = agency.name;
    obj["text"] = text;
    rows.push_back({ts.time_since_epoch().count(), obj.dump()});
  }

  {
    std::ofstream out(dir / "tweets.jsonl", std::ios::binary);
    for (const auto& r : rows) out << r.line << '\n';
  }
  {
    std::ofstream out(dir / "indicators.csv", std::ios::binary);
    out << "date,new_cases,new_deaths\n";
    for (int d = 0; d < days; ++d) {
      std::int64_t cases = std::llround(40000.0 * epidemic_shape(d));
      std::int64_t deaths = std::llround(2500.0 * epidemic_shape(d));
      if (d == 49) {
        cases = 40000;
        deaths = 2500;
      } else {
        cases = std::min<std::int64_t>(cases, 39990);
        deaths = std::min<std::int64_t>(deaths, 2490);
      }
      out << crisiscomm::format_date(first + std::chrono::days(d)) << ',' << cases << ',' << deaths << '\n';
    }
  }
  {
    std::ofstream out(dir / "run.cfg", std::ios::binary);
    out << "# Synthetic four-agency fixture.\n"
           "tweets = tweets.jsonl\n"
           "indicators = indicators.csv\n"
           "lexicon = ../lexicon_en.tsv\n"
           "window_start = 2020-02-21\n"
           "window_end = 2020-06-06\n"
           "k_grid = 4,6,8,10\n"
           "alpha = 0.1\n"
           "iterations = 600\n"
           "burn_in = 300\n"
           "seed = 7\n"
           "dtm_topics = 6\n"
           "dtm_iterations = 300\n"
           "dtm_burn_in = 150\n"
           "slice_merge = 7\n"
           "sentiment_window = 7\n"
           "charts = true\n";
  }
  std::cout << "wrote " << count << " tweets and " << days << " indicator days to " << dir.string() << '\n';
  return 0;
}
