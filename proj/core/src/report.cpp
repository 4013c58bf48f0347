#include "crisiscomm/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "crisiscomm/numeric_text.hpp"
#include "json.hpp"

namespace crisiscomm {
namespace {

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << content;
  out.close();
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

std::string svg_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string fixed(double v, int precision) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", precision, v);
  return buf;
}

}  // namespace

void write_aligned_table(const AlignedReport& report, std::ostream& sink) {
  sink << "date,period";
  for (std::size_t k = 0; k < report.topic_labels.size(); ++k) sink << ",topic_" << k;
  sink << ",sentiment_raw,sentiment_rolling,new_cases,new_deaths\n";
  for (const auto& row : report.rows) {
    sink << format_date(row.date) << ',' << row.period;
    for (const auto& cell : row.topics) {
      sink << ',';
      if (cell) sink << format_number(*cell);
    }
    sink << ',';
    if (row.sentiment_raw) sink << format_number(*row.sentiment_raw);
    sink << ',';
    if (row.sentiment_rolling) sink << format_number(*row.sentiment_rolling);
    sink << ',';
    if (row.new_cases) sink << *row.new_cases;
    sink << ',';
    if (row.new_deaths) sink << *row.new_deaths;
    sink << '\n';
  }
}

std::string summary_document(const AlignedReport& report) {
  using nlohmann::ordered_json;
  ordered_json doc;
  doc["rows"] = report.rows.size();
  doc["rolling_window_days"] = report.rolling_window;
  doc["topics"] = ordered_json::array();
  for (std::size_t k = 0; k < report.topic_labels.size(); ++k)
    doc["topics"].push_back({{"id", k}, {"label", report.topic_labels[k]}});

  ordered_json periods = ordered_json::array();
  for (const auto& period : report.periods) {
    ordered_json p;
    p["name"] = period.name;
    p["first"] = format_date(period.first);
    p["last"] = format_date(period.last);

    std::size_t days = 0, sentiment_days = 0, indicator_days = 0;
    double sentiment_sum = 0.0;
    std::int64_t cases = 0, deaths = 0;
    std::vector<double> topic_totals(report.topic_labels.size(), 0.0);
    for (const auto& row : report.rows) {
      if (row.period != period.name) continue;
      ++days;
      if (row.sentiment_raw) {
        sentiment_sum += *row.sentiment_raw;
        ++sentiment_days;
      }
      if (row.new_cases) {
        cases += *row.new_cases;
        deaths += row.new_deaths.value_or(0);
        ++indicator_days;
      }
      for (std::size_t k = 0; k < row.topics.size(); ++k) topic_totals[k] += row.topics[k].value_or(0.0);
    }
    p["days"] = days;
    p["mean_sentiment"] = sentiment_days ? ordered_json(sentiment_sum / static_cast<double>(sentiment_days))
                                         : ordered_json(nullptr);
    p["sentiment_days"] = sentiment_days;
    p["total_new_cases"] = cases;
    p["total_new_deaths"] = deaths;
    p["indicator_days"] = indicator_days;
    p["topic_totals"] = topic_totals;
    periods.push_back(std::move(p));
  }
  doc["periods"] = std::move(periods);

  ordered_json words = ordered_json::array();
  for (const auto& agency : report.top_words) {
    ordered_json a;
    a["agency"] = agency.agency;
    a["periods"] = ordered_json::array();
    for (const auto& p : agency.periods)
      a["periods"].push_back({{"period", p.period}, {"documents", p.documents}, {"words", p.words}});
    words.push_back(std::move(a));
  }
  doc["top_words"] = std::move(words);
  return doc.dump(2) + "\n";
}

std::string render_line_chart(const std::string& title, std::span<const std::optional<double>> values,
                              const std::string& first_label, const std::string& last_label) {
  constexpr double kWidth = 800, kHeight = 300, kLeft = 60, kRight = 20, kTop = 30, kBottom = 40;
  double lo = 0.0, hi = 0.0;
  bool seen = false;
  for (const auto& v : values) {
    if (!v) continue;
    lo = seen ? std::min(lo, *v) : *v;
    hi = seen ? std::max(hi, *v) : *v;
    seen = true;
  }
  if (!seen || hi == lo) {
    lo -= 1.0;
    hi += 1.0;
  }
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  const double step = values.size() > 1 ? plot_w / static_cast<double>(values.size() - 1) : 0.0;

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<text x=\"" << kLeft << "\" y=\"20\" font-family=\"sans-serif\" font-size=\"14\">" << svg_escape(title)
      << "</text>\n";
  svg << "<line x1=\"" << kLeft << "\" y1=\"" << kTop + plot_h << "\" x2=\"" << kLeft + plot_w << "\" y2=\""
      << kTop + plot_h << "\" stroke=\"black\"/>\n";
  svg << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft << "\" y2=\"" << kTop + plot_h
      << "\" stroke=\"black\"/>\n";
  svg << "<text x=\"" << kLeft - 5 << "\" y=\"" << kTop + 4 << "\" font-family=\"sans-serif\" font-size=\"10\" "
      << "text-anchor=\"end\">" << fixed(hi, 3) << "</text>\n";
  svg << "<text x=\"" << kLeft - 5 << "\" y=\"" << kTop + plot_h << "\" font-family=\"sans-serif\" "
      << "font-size=\"10\" text-anchor=\"end\">" << fixed(lo, 3) << "</text>\n";
  svg << "<text x=\"" << kLeft << "\" y=\"" << kHeight - 15 << "\" font-family=\"sans-serif\" font-size=\"10\">"
      << svg_escape(first_label) << "</text>\n";
  svg << "<text x=\"" << kLeft + plot_w << "\" y=\"" << kHeight - 15 << "\" font-family=\"sans-serif\" "
      << "font-size=\"10\" text-anchor=\"end\">" << svg_escape(last_label) << "</text>\n";

  std::string points;
  auto flush = [&] {
    if (!points.empty()) svg << "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"1.5\" points=\""
                             << points << "\"/>\n";
    points.clear();
  };
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!values[i]) {
      flush();
      continue;
    }
    const double x = kLeft + step * static_cast<double>(i);
    const double y = kTop + plot_h * (1.0 - (*values[i] - lo) / (hi - lo));
    if (!points.empty()) points += ' ';
    points += fixed(x, 2) + ',' + fixed(y, 2);
  }
  flush();
  svg << "</svg>\n";
  return svg.str();
}

std::vector<std::filesystem::path> emit_report(const AlignedReport& report, const std::filesystem::path& directory,
                                               const ReportFormats& formats) {
  std::error_code ec;
  std::filesystem::create_directories(directory, ec);
  if (ec) throw std::runtime_error("cannot create " + directory.string() + ": " + ec.message());

  std::vector<std::filesystem::path> written;
  if (formats.table) {
    std::ostringstream table;
    write_aligned_table(report, table);
    written.push_back(directory / "aligned.csv");
    write_file(written.back(), table.str());
  }
  if (formats.summary) {
    written.push_back(directory / "summary.json");
    write_file(written.back(), summary_document(report));
  }
  if (formats.charts && !report.rows.empty()) {
    const auto charts = directory / "charts";
    std::filesystem::create_directories(charts, ec);
    if (ec) throw std::runtime_error("cannot create " + charts.string() + ": " + ec.message());
    const std::string first = format_date(report.rows.front().date);
    const std::string last = format_date(report.rows.back().date);
    auto chart = [&](const std::string& name, const std::string& title, auto extract) {
      std::vector<std::optional<double>> series;
      for (const auto& row : report.rows) series.push_back(extract(row));
      written.push_back(charts / (name + ".svg"));
      write_file(written.back(), render_line_chart(title, series, first, last));
    };
    for (std::size_t k = 0; k < report.topic_labels.size(); ++k) {
      chart("topic_" + std::to_string(k), "Topic " + std::to_string(k) + ": " + report.topic_labels[k],
            [k](const AlignedRow& r) { return r.topics[k]; });
    }
    chart("sentiment_raw", "Daily mean sentiment", [](const AlignedRow& r) { return r.sentiment_raw; });
    chart("sentiment_rolling", "Rolling mean sentiment (" + std::to_string(report.rolling_window) + " days)",
          [](const AlignedRow& r) { return r.sentiment_rolling; });
    chart("new_cases", "Daily new cases", [](const AlignedRow& r) -> std::optional<double> {
      if (!r.new_cases) return std::nullopt;
      return static_cast<double>(*r.new_cases);
    });
    chart("new_deaths", "Daily new deaths", [](const AlignedRow& r) -> std::optional<double> {
      if (!r.new_deaths) return std::nullopt;
      return static_cast<double>(*r.new_deaths);
    });
  }
  return written;
}

}  // namespace crisiscomm
