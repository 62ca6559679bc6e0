/* Copyright 2026 The skelimg Authors.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include "skelimg/eval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <set>

#include "skelimg/errors.hpp"

namespace skelimg {

using nlohmann::json;

SplitPlan MakeSplitPlan(std::vector<std::string> signers) {
  std::sort(signers.begin(), signers.end());
  signers.erase(std::unique(signers.begin(), signers.end()), signers.end());
  if (signers.size() < 3) {
    throw ValidationError("nested LOPO needs at least 3 distinct signers, got " +
                          std::to_string(signers.size()));
  }
  SplitPlan plan;
  plan.signers = signers;
  plan.sessions.reserve(signers.size() * (signers.size() - 1));
  for (const std::string& test : signers) {
    for (const std::string& val : signers) {
      if (val == test) continue;
      Session s{test, val, {}};
      for (const std::string& other : signers) {
        if (other != test && other != val) s.train.push_back(other);
      }
      plan.sessions.push_back(std::move(s));
    }
  }
  return plan;
}

SplitPlan MakeSplitPlan(const DatasetManifest& manifest) {
  return MakeSplitPlan(manifest.Signers());
}

json SplitPlanToJson(const SplitPlan& plan) {
  json doc;
  doc["signers"] = plan.signers;
  doc["session_count"] = plan.sessions.size();
  doc["sessions"] = json::array();
  for (const Session& s : plan.sessions) {
    doc["sessions"].push_back({{"test", s.test}, {"val", s.val}, {"train", s.train}});
  }
  return doc;
}

SplitPlan SplitPlanFromJson(const json& doc) {
  SplitPlan plan;
  try {
    plan.signers = doc.at("signers").get<std::vector<std::string>>();
    for (const auto& s : doc.at("sessions")) {
      plan.sessions.push_back({s.at("test").get<std::string>(), s.at("val").get<std::string>(),
                               s.at("train").get<std::vector<std::string>>()});
    }
  } catch (const json::exception& e) {
    throw SchemaError(std::string("split plan: ") + e.what());
  }
  return plan;
}

MetricsReport ComputeMetrics(std::span<const std::string> truth,
                             std::span<const std::string> predicted,
                             std::span<const std::string> classes) {
  if (truth.size() != predicted.size()) {
    throw ValidationError("truth has " + std::to_string(truth.size()) +
                          " labels but predictions have " +
                          std::to_string(predicted.size()));
  }
  if (truth.empty()) throw ValidationError("no labels to score");
  if (classes.empty()) throw ValidationError("empty class set");

  MetricsReport r;
  r.classes.assign(classes.begin(), classes.end());
  std::map<std::string, std::size_t> position;
  for (std::size_t i = 0; i < r.classes.size(); ++i) {
    if (!position.emplace(r.classes[i], i).second) {
      throw ValidationError("duplicate class '" + r.classes[i] + "'");
    }
  }
  auto index_of = [&](const std::string& label) {
    auto it = position.find(label);
    if (it == position.end()) throw ValidationError("unknown label '" + label + "'");
    return it->second;
  };

  const std::size_t k = r.classes.size();
  r.confusion.assign(k, std::vector<std::size_t>(k, 0));
  std::size_t correct = 0;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    const std::size_t t = index_of(truth[i]);
    const std::size_t p = index_of(predicted[i]);
    ++r.confusion[t][p];
    if (t == p) ++correct;
  }
  r.accuracy = static_cast<double>(correct) / static_cast<double>(truth.size());

  for (std::size_t c = 0; c < k; ++c) {
    std::size_t predicted_c = 0;
    std::size_t actual_c = 0;
    for (std::size_t o = 0; o < k; ++o) {
      predicted_c += r.confusion[o][c];
      actual_c += r.confusion[c][o];
    }
    const double tp = static_cast<double>(r.confusion[c][c]);
    ClassMetrics m;
    m.label = r.classes[c];
    m.support = actual_c;
    m.precision = predicted_c ? tp / static_cast<double>(predicted_c) : 0.0;
    m.recall = actual_c ? tp / static_cast<double>(actual_c) : 0.0;
    m.f1 = (m.precision + m.recall) > 0.0
               ? 2.0 * m.precision * m.recall / (m.precision + m.recall)
               : 0.0;
    r.macro_precision += m.precision;
    r.macro_recall += m.recall;
    r.macro_f1 += m.f1;
    r.per_class.push_back(std::move(m));
  }
  r.macro_precision /= static_cast<double>(k);
  r.macro_recall /= static_cast<double>(k);
  r.macro_f1 /= static_cast<double>(k);
  return r;
}

json MetricsToJson(const MetricsReport& r) {
  json doc;
  doc["accuracy"] = r.accuracy;
  doc["macro_precision"] = r.macro_precision;
  doc["macro_recall"] = r.macro_recall;
  doc["macro_f1"] = r.macro_f1;
  doc["classes"] = r.classes;
  doc["confusion"] = r.confusion;
  doc["per_class"] = json::array();
  for (const ClassMetrics& m : r.per_class) {
    doc["per_class"].push_back({{"label", m.label},
                                {"support", m.support},
                                {"precision", m.precision},
                                {"recall", m.recall},
                                {"f1", m.f1}});
  }
  return doc;
}

MeanSd ComputeMeanSd(std::span<const double> values, SdKind kind) {
  if (values.empty()) throw ValidationError("mean/SD of an empty list");
  const double n = static_cast<double>(values.size());
  double sum = 0.0;
  for (double v : values) sum += v;
  const double mean = sum / n;
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  double denom = n;
  if (kind == SdKind::kSample) denom = values.size() > 1 ? n - 1.0 : 1.0;
  return {mean, std::sqrt(ss / denom)};
}

namespace {

struct Quad {
  double accuracy, precision, recall, f1;
};

Quad FromReport(const MetricsReport& r) {
  return {r.accuracy, r.macro_precision, r.macro_recall, r.macro_f1};
}

MetricSummary Summarize(const std::vector<Quad>& quads, AggregationMode mode, SdKind sd) {
  std::vector<double> a, p, r, f;
  for (const Quad& q : quads) {
    a.push_back(q.accuracy);
    p.push_back(q.precision);
    r.push_back(q.recall);
    f.push_back(q.f1);
  }
  MetricSummary s;
  s.mode = mode;
  s.count = quads.size();
  s.accuracy = ComputeMeanSd(a, sd);
  s.precision = ComputeMeanSd(p, sd);
  s.recall = ComputeMeanSd(r, sd);
  s.f1 = ComputeMeanSd(f, sd);
  return s;
}

json MeanSdJson(const MeanSd& m) { return {{"mean", m.mean}, {"sd", m.sd}}; }

MeanSd MeanSdFromJson(const json& j) {
  return {j.at("mean").get<double>(), j.at("sd").get<double>()};
}

std::string Cell(const MeanSd& m) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.2f (%.2f)", m.mean, m.sd);
  return buf;
}

}  // namespace

MetricSummary AggregateSessions(std::span<const SessionResult> results,
                                AggregationMode mode, SdKind sd) {
  if (results.empty()) throw ValidationError("no session reports to aggregate");
  std::vector<Quad> quads;
  if (mode == AggregationMode::kPerSession) {
    for (const SessionResult& r : results) quads.push_back(FromReport(r.metrics));
    return Summarize(quads, mode, sd);
  }
  std::map<std::string, std::vector<Quad>> by_signer;
  for (const SessionResult& r : results) {
    by_signer[r.session.test].push_back(FromReport(r.metrics));
  }
  for (const auto& [signer, list] : by_signer) {
    Quad mean{0, 0, 0, 0};
    for (const Quad& q : list) {
      mean.accuracy += q.accuracy;
      mean.precision += q.precision;
      mean.recall += q.recall;
      mean.f1 += q.f1;
    }
    const double n = static_cast<double>(list.size());
    quads.push_back({mean.accuracy / n, mean.precision / n, mean.recall / n, mean.f1 / n});
  }
  return Summarize(quads, mode, sd);
}

MetricSummary AggregateReports(std::span<const MetricsReport> reports, SdKind sd) {
  if (reports.empty()) throw ValidationError("no session reports to aggregate");
  std::vector<Quad> quads;
  for (const MetricsReport& r : reports) quads.push_back(FromReport(r));
  return Summarize(quads, AggregationMode::kPerSession, sd);
}

std::string_view ModeName(AggregationMode mode) {
  return mode == AggregationMode::kPerSession ? "per_session" : "per_test_signer";
}

std::optional<AggregationMode> ParseMode(std::string_view name) {
  if (name == "per_session") return AggregationMode::kPerSession;
  if (name == "per_test_signer") return AggregationMode::kPerTestSigner;
  return std::nullopt;
}

json SummaryToJson(const MetricSummary& s) {
  return {{"mode", ModeName(s.mode)},
          {"count", s.count},
          {"accuracy", MeanSdJson(s.accuracy)},
          {"precision", MeanSdJson(s.precision)},
          {"recall", MeanSdJson(s.recall)},
          {"f1", MeanSdJson(s.f1)}};
}

MetricSummary SummaryFromJson(const json& doc) {
  MetricSummary s;
  try {
    const auto mode = ParseMode(doc.at("mode").get<std::string>());
    if (!mode) throw SchemaError("unknown aggregation mode");
    s.mode = *mode;
    s.count = doc.at("count").get<std::size_t>();
    s.accuracy = MeanSdFromJson(doc.at("accuracy"));
    s.precision = MeanSdFromJson(doc.at("precision"));
    s.recall = MeanSdFromJson(doc.at("recall"));
    s.f1 = MeanSdFromJson(doc.at("f1"));
  } catch (const json::exception& e) {
    throw SchemaError(std::string("summary: ") + e.what());
  }
  return s;
}

double F1ImprovementPp(const MetricSummary& imputed, const MetricSummary& raw) {
  return (imputed.f1.mean - raw.f1.mean) * 100.0;
}

std::string RenderResultsTable(std::span<const ResultRow> rows) {
  const std::vector<std::string> header = {"Dataset",   "Land. subset", "Accuracy",
                                           "Precision", "Recall",       "F1-score",
                                           "F1-score imp. (p.p.)"};
  std::vector<std::vector<std::string>> cells;
  for (const ResultRow& r : rows) {
    std::string imp = "-";
    if (r.f1_improvement_pp) {
      char buf[32];
      std::snprintf(buf, sizeof(buf), "%.0f", *r.f1_improvement_pp);
      imp = buf;
    }
    cells.push_back({r.dataset, r.subset, Cell(r.summary.accuracy), Cell(r.summary.precision),
                     Cell(r.summary.recall), Cell(r.summary.f1), imp});
  }
  std::vector<std::size_t> width(header.size());
  for (std::size_t c = 0; c < header.size(); ++c) {
    width[c] = header[c].size();
    for (const auto& row : cells) width[c] = std::max(width[c], row[c].size());
  }
  auto line = [&](const std::vector<std::string>& row) {
    std::string out;
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += " | ";
      out += row[c];
      out.append(width[c] - row[c].size(), ' ');
    }
    while (!out.empty() && out.back() == ' ') out.pop_back();
    return out + '\n';
  };
  std::string text = line(header);
  std::size_t total = 0;
  for (std::size_t w : width) total += w;
  text += std::string(total + 3 * (width.size() - 1), '-') + '\n';
  for (const auto& row : cells) text += line(row);
  return text;
}

void NearestCentroidProbe::Fit(std::span<const std::vector<double>> samples,
                               std::span<const std::string> labels) {
  if (samples.size() != labels.size() || samples.empty()) {
    throw ValidationError("probe needs one label per sample and at least one sample");
  }
  const std::size_t dim = samples.front().size();
  std::map<std::string, std::pair<std::vector<double>, std::size_t>> sums;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (samples[i].size() != dim) {
      throw ValidationError("probe samples differ in length");
    }
    auto& [sum, count] = sums[labels[i]];
    if (sum.empty()) sum.assign(dim, 0.0);
    for (std::size_t d = 0; d < dim; ++d) sum[d] += samples[i][d];
    ++count;
  }
  classes_.clear();
  centroids_.clear();
  for (auto& [label, acc] : sums) {
    for (double& v : acc.first) v /= static_cast<double>(acc.second);
    classes_.push_back(label);
    centroids_.push_back(std::move(acc.first));
  }
}

std::string NearestCentroidProbe::Predict(std::span<const double> sample) const {
  if (centroids_.empty()) throw ValidationError("probe is not fitted");
  double best = std::numeric_limits<double>::infinity();
  std::size_t best_i = 0;
  for (std::size_t c = 0; c < centroids_.size(); ++c) {
    if (centroids_[c].size() != sample.size()) {
      throw ValidationError("probe sample length differs from training data");
    }
    double d = 0.0;
    for (std::size_t k = 0; k < sample.size(); ++k) {
      const double diff = sample[k] - centroids_[c][k];
      d += diff * diff;
    }
    if (d < best) {
      best = d;
      best_i = c;
    }
  }
  return classes_[best_i];
}

}  // namespace skelimg
