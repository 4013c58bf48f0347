#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include <unistd.h>

#include "crisiscomm/report.hpp"
#include "support/builders.hpp"

namespace fs = std::filesystem;
using namespace crisiscomm;
using namespace crisiscomm::testing;

namespace {

AlignedReport sample_report() {
  const auto seg = default_segmentation();
  Matrix values(107, 2);
  std::vector<std::size_t> docs(107);
  std::vector<std::optional<double>> sent(107);
  std::vector<DailyIndicator> ind(107);
  for (std::size_t d = 0; d < 107; ++d) {
    values(d, 0) = static_cast<double>(d % 3);
    values(d, 1) = 1.0;
    docs[d] = d % 3 + 1;
    if (d % 5 != 0) sent[d] = (static_cast<double>(d % 7) - 3.0) / 6.0;
    ind[d] = {static_cast<std::int64_t>(100 * d), static_cast<std::int64_t>(d)};
  }
  const TopicFrequencySeries tf{day("2020-02-21"), values, docs, {"masks home testing", "nurses supplies ppe"}};
  const SentimentSeries s(day("2020-02-21"), sent, docs);
  return align(tf, s, IndicatorSeries(day("2020-02-21"), ind), seg, 7);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  auto dir = fs::temp_directory_path() / ("crisiscomm_report_" + std::to_string(::getpid()) + "_" + name);
  fs::remove_all(dir);
  return dir;
}

}  // namespace

TEST(AlignedTable, HeaderAndRows) {
  std::ostringstream out;
  write_aligned_table(sample_report(), out);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "date,period,topic_0,topic_1,sentiment_raw,sentiment_rolling,new_cases,new_deaths");
  std::size_t rows = 0;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, 107u);
  EXPECT_NE(out.str().find("\n2020-02-21,Before the lockdown,0,1,,"), std::string::npos);
}

TEST(Summary, PerPeriodTotals) {
  const auto doc = nlohmann::json::parse(summary_document(sample_report()));
  ASSERT_EQ(doc["periods"].size(), 4u);
  EXPECT_EQ(doc["periods"][0]["name"], "Before the lockdown");
  EXPECT_EQ(doc["periods"][0]["days"], 28);
  std::int64_t cases = 0;
  for (std::int64_t d = 0; d < 28; ++d) cases += 100 * d;
  EXPECT_EQ(doc["periods"][0]["total_new_cases"], cases);
  EXPECT_EQ(doc["rolling_window_days"], 7);
}

TEST(EmitReport, DeterministicAndOptionalCharts) {
  const auto report = sample_report();
  const auto a = scratch("a"), b = scratch("b"), c = scratch("c");
  const auto files_a = emit_report(report, a, {true, true, true});
  const auto files_b = emit_report(report, b, {true, true, true});
  ASSERT_EQ(files_a.size(), files_b.size());
  EXPECT_GT(files_a.size(), 2u);
  for (std::size_t i = 0; i < files_a.size(); ++i) {
    EXPECT_EQ(fs::relative(files_a[i], a), fs::relative(files_b[i], b));
    EXPECT_EQ(slurp(files_a[i]), slurp(files_b[i]));
  }
  const auto plain = emit_report(report, c, {true, true, false});
  ASSERT_EQ(plain.size(), 2u);
  EXPECT_EQ(plain[0].filename(), "aligned.csv");
  EXPECT_EQ(plain[1].filename(), "summary.json");
  EXPECT_FALSE(fs::exists(c / "charts"));
  for (const auto& d : {a, b, c}) fs::remove_all(d);
}

TEST(Charts, MissingValuesBreakTheLine) {
  const std::vector<std::optional<double>> v = {1.0, 2.0, std::nullopt, 3.0, 4.0};
  const auto svg = render_line_chart("sentiment", v, "2020-02-21", "2020-02-25");
  EXPECT_EQ(svg.rfind("<svg", 0), 0u);
  std::size_t lines = 0;
  for (auto pos = svg.find("<polyline"); pos != std::string::npos; pos = svg.find("<polyline", pos + 1)) ++lines;
  EXPECT_EQ(lines, 2u);
}
