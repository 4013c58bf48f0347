#include "crisiscomm/model_io.hpp"

#include <cstdio>
#include <istream>
#include <ostream>

#include "crisiscomm/error.hpp"
#include "json.hpp"

namespace crisiscomm {
namespace {

using nlohmann::ordered_json;

std::string hex64(std::uint64_t v) {
  char buf[24];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::uint64_t parse_hex64(const std::string& s) {
  try {
    std::size_t used = 0;
    auto v = std::stoull(s, &used, 16);
    if (used != s.size()) throw DataError("bad hex value '" + s + "'");
    return v;
  } catch (const std::logic_error&) {
    throw DataError("bad hex value '" + s + "'");
  }
}

ordered_json matrix_json(const Matrix& m) {
  ordered_json rows = ordered_json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) rows.push_back(std::vector<double>(m.row(r).begin(), m.row(r).end()));
  return rows;
}

Matrix matrix_from(const ordered_json& j, std::size_t cols) {
  Matrix m(j.size(), cols);
  for (std::size_t r = 0; r < j.size(); ++r) {
    const auto row = j[r].get<std::vector<double>>();
    if (row.size() != cols) throw DataError("model matrix row has the wrong width");
    std::copy(row.begin(), row.end(), m.row(r).begin());
  }
  return m;
}

ordered_json parse_document(std::istream& source, const char* format) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(source);
  } catch (const ordered_json::parse_error& e) {
    throw DataError(std::string(format) + ": " + e.what());
  }
  if (!doc.is_object() || doc.value("format", "") != format)
    throw DataError(std::string("not a ") + format + " document");
  if (doc.value("version", 0) != kModelFormatVersion)
    throw DataError(std::string(format) + ": unsupported version");
  return doc;
}

template <typename F>
auto guarded(const char* format, F&& f) {
  try {
    return f();
  } catch (const ordered_json::exception& e) {
    throw DataError(std::string(format) + ": " + e.what());
  }
}

ordered_json lda_config_json(const LdaConfig& c) {
  ordered_json j;
  j["num_topics"] = c.num_topics;
  j["alpha"] = c.alpha ? ordered_json(*c.alpha) : ordered_json(nullptr);
  j["eta"] = c.eta;
  j["iterations"] = c.iterations;
  j["burn_in"] = c.burn_in;
  j["seed"] = c.seed;
  return j;
}

LdaConfig lda_config_from(const ordered_json& j) {
  LdaConfig c;
  c.num_topics = j.at("num_topics").get<std::size_t>();
  if (!j.at("alpha").is_null()) c.alpha = j.at("alpha").get<double>();
  c.eta = j.at("eta").get<double>();
  c.iterations = j.at("iterations").get<std::size_t>();
  c.burn_in = j.at("burn_in").get<std::size_t>();
  c.seed = j.at("seed").get<std::uint64_t>();
  return c;
}

}  // namespace

void save_lda(const LdaModel& model, std::ostream& sink) {
  ordered_json doc;
  doc["format"] = "crisiscomm-lda";
  doc["version"] = kModelFormatVersion;
  doc["config"] = {{"num_topics", model.num_topics}, {"alpha", model.alpha},       {"eta", model.eta},
                   {"iterations", model.iterations}, {"burn_in", model.burn_in}, {"seed", model.seed}};
  doc["vocabulary_hash"] = hex64(model.vocabulary_hash);
  doc["vocabulary_size"] = model.vocabulary_size();
  doc["document_count"] = model.document_count();
  doc["topic_token_mass"] = model.topic_token_mass;
  doc["phi"] = matrix_json(model.phi);
  doc["theta"] = matrix_json(model.theta);
  doc["assignments"] = model.assignments;
  sink << doc.dump() << '\n';
}

LdaModel load_lda(std::istream& source) {
  const auto doc = parse_document(source, "crisiscomm-lda");
  return guarded("crisiscomm-lda", [&] {
    LdaModel m;
    const auto& cfg = doc.at("config");
    m.num_topics = cfg.at("num_topics").get<std::size_t>();
    m.alpha = cfg.at("alpha").get<double>();
    m.eta = cfg.at("eta").get<double>();
    m.iterations = cfg.at("iterations").get<std::size_t>();
    m.burn_in = cfg.at("burn_in").get<std::size_t>();
    m.seed = cfg.at("seed").get<std::uint64_t>();
    m.vocabulary_hash = parse_hex64(doc.at("vocabulary_hash").get<std::string>());
    const auto V = doc.at("vocabulary_size").get<std::size_t>();
    m.phi = matrix_from(doc.at("phi"), V);
    m.theta = matrix_from(doc.at("theta"), m.num_topics);
    m.topic_token_mass = doc.at("topic_token_mass").get<std::vector<double>>();
    m.assignments = doc.at("assignments").get<std::vector<std::vector<std::uint32_t>>>();
    if (m.phi.rows() != m.num_topics || m.theta.rows() != doc.at("document_count").get<std::size_t>() ||
        m.assignments.size() != m.theta.rows() || m.topic_token_mass.size() != m.num_topics)
      throw DataError("crisiscomm-lda: inconsistent shapes");
    return m;
  });
}

void save_dtm(const DtmModel& model, std::ostream& sink) {
  ordered_json doc;
  doc["format"] = "crisiscomm-dtm";
  doc["version"] = kModelFormatVersion;
  const auto& c = model.config;
  doc["config"] = {{"num_topics", c.num_topics},
                   {"sigma2", c.sigma2},
                   {"obs_scale", c.obs_scale},
                   {"obs_variance_floor", c.obs_variance_floor},
                   {"probability_floor", c.probability_floor},
                   {"prior_mean", c.prior_mean},
                   {"prior_variance", c.prior_variance},
                   {"slice_merge", c.slice_merge},
                   {"lda", lda_config_json(c.lda)}};
  doc["vocabulary_hash"] = hex64(model.vocabulary_hash);
  doc["vocabulary_size"] = model.vocabulary_size;
  ordered_json slices = ordered_json::array();
  for (std::size_t t = 0; t < model.slices(); ++t) {
    ordered_json s;
    s["date"] = format_date(model.slice_dates[t]);
    s["observed"] = static_cast<bool>(model.observed[t]);
    s["beta"] = model.beta[t];
    s["beta_variance"] = model.beta_variance[t];
    s["alpha"] = model.alpha[t];
    s["alpha_variance"] = model.alpha_variance[t];
    s["topic_token_mass"] = model.topic_token_mass[t];
    slices.push_back(std::move(s));
  }
  doc["slices"] = std::move(slices);
  sink << doc.dump() << '\n';
}

DtmModel load_dtm(std::istream& source) {
  const auto doc = parse_document(source, "crisiscomm-dtm");
  return guarded("crisiscomm-dtm", [&] {
    DtmModel m;
    const auto& c = doc.at("config");
    m.config.num_topics = c.at("num_topics").get<std::size_t>();
    m.config.sigma2 = c.at("sigma2").get<double>();
    m.config.obs_scale = c.at("obs_scale").get<double>();
    m.config.obs_variance_floor = c.at("obs_variance_floor").get<double>();
    m.config.probability_floor = c.at("probability_floor").get<double>();
    m.config.prior_mean = c.at("prior_mean").get<double>();
    m.config.prior_variance = c.at("prior_variance").get<double>();
    m.config.slice_merge = c.at("slice_merge").get<std::size_t>();
    m.config.lda = lda_config_from(c.at("lda"));
    m.num_topics = m.config.num_topics;
    m.vocabulary_hash = parse_hex64(doc.at("vocabulary_hash").get<std::string>());
    m.vocabulary_size = doc.at("vocabulary_size").get<std::size_t>();
    for (const auto& s : doc.at("slices")) {
      auto date = parse_date(s.at("date").get<std::string>());
      if (!date) throw DataError("crisiscomm-dtm: bad slice date");
      if (!m.slice_dates.empty() && *date <= m.slice_dates.back())
        throw DataError("crisiscomm-dtm: slice dates not increasing");
      m.slice_dates.push_back(*date);
      m.observed.push_back(s.at("observed").get<bool>());
      m.beta.push_back(s.at("beta").get<std::vector<NaturalParams>>());
      m.beta_variance.push_back(s.at("beta_variance").get<std::vector<std::vector<double>>>());
      m.alpha.push_back(s.at("alpha").get<NaturalParams>());
      m.alpha_variance.push_back(s.at("alpha_variance").get<std::vector<double>>());
      m.topic_token_mass.push_back(s.at("topic_token_mass").get<std::vector<double>>());
      if (m.beta.back().size() != m.num_topics || m.alpha.back().size() != m.num_topics)
        throw DataError("crisiscomm-dtm: inconsistent shapes");
      for (const auto& b : m.beta.back()) {
        if (b.size() != m.vocabulary_size || b.back() != 0.0) throw DataError("crisiscomm-dtm: bad beta vector");
      }
    }
    if (m.slice_dates.empty()) throw DataError("crisiscomm-dtm: no slices");
    return m;
  });
}

void save_coherence_report(const CoherenceReport& report, std::ostream& sink) {
  ordered_json doc;
  doc["format"] = "crisiscomm-coherence";
  doc["version"] = kModelFormatVersion;
  doc["selected_k"] = report.selected_k;
  doc["entries"] = ordered_json::array();
  for (const auto& e : report.entries)
    doc["entries"].push_back({{"num_topics", e.num_topics}, {"mean_npmi", e.mean_coherence}});
  sink << doc.dump(2) << '\n';
}

CoherenceReport load_coherence_report(std::istream& source) {
  const auto doc = parse_document(source, "crisiscomm-coherence");
  return guarded("crisiscomm-coherence", [&] {
    CoherenceReport r;
    r.selected_k = doc.at("selected_k").get<std::size_t>();
    for (const auto& e : doc.at("entries"))
      r.entries.push_back({e.at("num_topics").get<std::size_t>(), e.at("mean_npmi").get<double>()});
    return r;
  });
}

}  // namespace crisiscomm
