/*
 * Copyright 2026 The pdrec Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "pdrec/features.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <utility>

#include "graph_util.h"
#include "pdrec/error.h"

namespace pdrec {
namespace {

struct CatalogEntry {
  const char* name;
  const char* description;
  FeatureSource source;
};

// Order is the vector layout; append-only within a catalog version.
constexpr CatalogEntry kCatalog[] = {
    {"n_events", "Total number of events in the log",
     FeatureSource::kLogStatistics},
    {"n_cases", "Number of traces (cases)", FeatureSource::kLogStatistics},
    {"n_activities", "Number of distinct activity labels",
     FeatureSource::kLogStatistics},
    {"n_variants", "Number of distinct trace variants", FeatureSource::kVariant},
    {"events_per_case_mean", "Average number of events per case",
     FeatureSource::kLogStatistics},
    {"rework_ratio",
     "Fraction of events repeating an activity already seen in the same case",
     FeatureSource::kLogStatistics},

    {"trace_len_min", "Shortest trace length", FeatureSource::kTraceLength},
    {"trace_len_max", "Longest trace length", FeatureSource::kTraceLength},
    {"trace_len_mean", "Mean trace length", FeatureSource::kTraceLength},
    {"trace_len_median", "Median trace length", FeatureSource::kTraceLength},
    {"trace_len_std", "Population standard deviation of trace length",
     FeatureSource::kTraceLength},
    {"trace_len_p25", "25th percentile of trace length (linear interpolation)",
     FeatureSource::kTraceLength},
    {"trace_len_p75", "75th percentile of trace length (linear interpolation)",
     FeatureSource::kTraceLength},
    {"trace_len_iqr", "Interquartile range of trace length",
     FeatureSource::kTraceLength},
    {"trace_len_cv", "Coefficient of variation of trace length",
     FeatureSource::kTraceLength},
    {"trace_len_skewness", "Population skewness of trace length",
     FeatureSource::kTraceLength},

    {"act_freq_min", "Occurrence count of the rarest activity",
     FeatureSource::kActivity},
    {"act_freq_max", "Occurrence count of the most frequent activity",
     FeatureSource::kActivity},
    {"act_freq_mean", "Mean occurrence count per activity",
     FeatureSource::kActivity},
    {"act_freq_std", "Standard deviation of activity occurrence counts",
     FeatureSource::kActivity},
    {"act_freq_median", "Median activity occurrence count",
     FeatureSource::kActivity},
    {"n_start_activities", "Number of distinct first activities of traces",
     FeatureSource::kActivity},
    {"n_end_activities", "Number of distinct last activities of traces",
     FeatureSource::kActivity},
    {"activity_entropy",
     "Shannon entropy (bits) of the activity occurrence distribution",
     FeatureSource::kActivity},
    {"act_case_coverage_mean",
     "Mean fraction of cases in which an activity occurs",
     FeatureSource::kActivity},
    {"act_ubiquitous_ratio", "Fraction of activities occurring in every case",
     FeatureSource::kActivity},

    {"ratio_most_common_variant",
     "Fraction of cases following the most frequent variant",
     FeatureSource::kVariant},
    {"ratio_top_10pct_variants",
     "Fraction of cases covered by the most frequent 10% of variants",
     FeatureSource::kVariant},
    {"variant_entropy", "Shannon entropy (bits) of the variant distribution",
     FeatureSource::kVariant},
    {"ratio_singleton_variants",
     "Fraction of variants that occur in exactly one case",
     FeatureSource::kVariant},
    {"variant_length_mean", "Mean length of the distinct variants",
     FeatureSource::kVariant},
    {"variant_length_std",
     "Standard deviation of the lengths of the distinct variants",
     FeatureSource::kVariant},
    {"variant_ratio", "Number of variants divided by number of cases",
     FeatureSource::kVariant},

    {"dfg_n_edges", "Number of directly-follows edges", FeatureSource::kDfg},
    {"dfg_density", "Directly-follows edges divided by activities squared",
     FeatureSource::kDfg},
    {"dfg_max_out_degree", "Largest out-degree of a directly-follows node",
     FeatureSource::kDfg},
    {"dfg_mean_out_degree", "Mean out-degree of directly-follows nodes",
     FeatureSource::kDfg},
    {"dfg_n_self_loops", "Number of activities directly following themselves",
     FeatureSource::kDfg},
    {"dfg_n_nodes_in_cycles",
     "Number of activities lying on a directly-follows cycle",
     FeatureSource::kDfg},
    {"dfg_reciprocal_ratio",
     "Fraction of non-loop edges whose reverse edge also exists",
     FeatureSource::kDfg},
    {"dfg_max_edge_ratio",
     "Largest directly-follows edge count divided by the number of events",
     FeatureSource::kDfg},
    {"dfg_n_start_activities", "Number of start nodes in the directly-follows graph",
     FeatureSource::kDfg},
    {"dfg_n_end_activities", "Number of end nodes in the directly-follows graph",
     FeatureSource::kDfg},

    {"fp_sequence_ratio",
     "Fraction of ordered activity pairs in the causal (->) relation",
     FeatureSource::kFootprint},
    {"fp_parallel_ratio",
     "Fraction of ordered activity pairs in the parallel (||) relation",
     FeatureSource::kFootprint},
    {"fp_choice_ratio",
     "Fraction of ordered activity pairs in the choice (#) relation",
     FeatureSource::kFootprint},
    {"fp_self_parallel_ratio",
     "Fraction of activities in the parallel relation with themselves",
     FeatureSource::kFootprint},
    {"fp_sequence_chains3",
     "Number of causal chains a->b->c over three distinct activities",
     FeatureSource::kFootprint},
};

static_assert(std::size(kCatalog) == kNumFeatures);

double Mean(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double PopulationStd(const std::vector<double>& v, double mean) {
  if (v.empty()) return 0.0;
  double sum = 0.0;
  for (double x : v) sum += (x - mean) * (x - mean);
  return std::sqrt(sum / static_cast<double>(v.size()));
}

// `sorted` must be ascending and non-empty.
double Quantile(const std::vector<double>& sorted, double q) {
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (pos - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

double EntropyBits(const std::vector<double>& counts) {
  const double total = std::accumulate(counts.begin(), counts.end(), 0.0);
  if (total <= 0) return 0.0;
  double h = 0.0;
  for (double c : counts) {
    if (c <= 0) continue;
    const double p = c / total;
    h -= p * std::log2(p);
  }
  return std::max(0.0, h);
}

double SafeRatio(double num, double den) { return den > 0 ? num / den : 0.0; }

}  // namespace

std::string_view FeatureSourceName(FeatureSource source) {
  switch (source) {
    case FeatureSource::kLogStatistics:
      return "log-statistics";
    case FeatureSource::kTraceLength:
      return "trace-length";
    case FeatureSource::kActivity:
      return "activity";
    case FeatureSource::kVariant:
      return "variant";
    case FeatureSource::kDfg:
      return "dfg";
    case FeatureSource::kFootprint:
      return "footprint";
  }
  return "unknown";
}

const std::vector<FeatureDescriptor>& FeatureCatalog() {
  static const std::vector<FeatureDescriptor> catalog = [] {
    std::vector<FeatureDescriptor> out;
    for (std::size_t i = 0; i < std::size(kCatalog); ++i) {
      out.push_back({kCatalog[i].name, kCatalog[i].description,
                     kCatalog[i].source, i});
    }
    return out;
  }();
  return catalog;
}

const FeatureDescriptor* FindFeature(std::string_view name) {
  for (const FeatureDescriptor& d : FeatureCatalog()) {
    if (d.name == name) return &d;
  }
  return nullptr;
}

FeatureVector ExtractFeatures(const EventLog& log, std::string log_id) {
  const VariantLog vlog = VariantLog::FromEventLog(log);
  const std::size_t n_act = vlog.activities.size();
  const double n_cases = static_cast<double>(log.num_traces());
  const double n_events = static_cast<double>(log.num_events());

  std::vector<double> values;
  values.reserve(kNumFeatures);

  // Per-activity statistics, trace lengths, rework.
  std::vector<double> act_count(n_act, 0.0);
  std::vector<double> act_cases(n_act, 0.0);
  std::vector<double> lengths;
  lengths.reserve(log.num_traces());
  double rework = 0.0;
  std::vector<int> seen_stamp(n_act, -1);
  int stamp = 0;
  for (const auto& [sequence, count] : vlog.variants) {
    const double c = static_cast<double>(count);
    for (std::size_t k = 0; k < count; ++k) {
      lengths.push_back(static_cast<double>(sequence.size()));
    }
    for (int a : sequence) {
      act_count[a] += c;
      if (seen_stamp[a] == stamp) {
        rework += c;
      } else {
        seen_stamp[a] = stamp;
        act_cases[a] += c;
      }
    }
    ++stamp;
  }

  // Log statistics.
  values.push_back(n_events);
  values.push_back(n_cases);
  values.push_back(static_cast<double>(n_act));
  values.push_back(static_cast<double>(vlog.variants.size()));
  values.push_back(n_events / n_cases);
  values.push_back(SafeRatio(rework, n_events));

  // Trace length.
  std::sort(lengths.begin(), lengths.end());
  const double len_mean = Mean(lengths);
  const double len_std = PopulationStd(lengths, len_mean);
  double skew = 0.0;
  if (len_std > 0) {
    double m3 = 0.0;
    for (double x : lengths) m3 += std::pow(x - len_mean, 3);
    m3 /= static_cast<double>(lengths.size());
    skew = m3 / std::pow(len_std, 3);
  }
  const double p25 = Quantile(lengths, 0.25);
  const double p75 = Quantile(lengths, 0.75);
  values.push_back(lengths.front());
  values.push_back(lengths.back());
  values.push_back(len_mean);
  values.push_back(Quantile(lengths, 0.5));
  values.push_back(len_std);
  values.push_back(p25);
  values.push_back(p75);
  values.push_back(p75 - p25);
  values.push_back(SafeRatio(len_std, len_mean));
  values.push_back(skew);

  // Activities.
  const DirectlyFollowsGraph dfg = ComputeDfg(log);
  std::vector<double> freq_sorted = act_count;
  std::sort(freq_sorted.begin(), freq_sorted.end());
  const double freq_mean = Mean(act_count);
  double coverage_sum = 0.0;
  double ubiquitous = 0.0;
  for (std::size_t a = 0; a < n_act; ++a) {
    coverage_sum += act_cases[a] / n_cases;
    if (act_cases[a] == n_cases) ubiquitous += 1.0;
  }
  values.push_back(freq_sorted.front());
  values.push_back(freq_sorted.back());
  values.push_back(freq_mean);
  values.push_back(PopulationStd(act_count, freq_mean));
  values.push_back(Quantile(freq_sorted, 0.5));
  values.push_back(static_cast<double>(dfg.start_activities.size()));
  values.push_back(static_cast<double>(dfg.end_activities.size()));
  values.push_back(EntropyBits(act_count));
  values.push_back(coverage_sum / static_cast<double>(n_act));
  values.push_back(ubiquitous / static_cast<double>(n_act));

  // Variants.
  std::vector<double> variant_counts;
  std::vector<double> variant_lengths;
  double singletons = 0.0;
  for (const auto& [sequence, count] : vlog.variants) {
    variant_counts.push_back(static_cast<double>(count));
    variant_lengths.push_back(static_cast<double>(sequence.size()));
    if (count == 1) singletons += 1.0;
  }
  std::vector<double> by_freq = variant_counts;
  std::sort(by_freq.begin(), by_freq.end(), std::greater<>());
  const auto top_k = static_cast<std::size_t>(
      std::ceil(0.1 * static_cast<double>(by_freq.size())));
  const double top_sum =
      std::accumulate(by_freq.begin(), by_freq.begin() + top_k, 0.0);
  const double n_variants = static_cast<double>(by_freq.size());
  const double vlen_mean = Mean(variant_lengths);
  values.push_back(by_freq.front() / n_cases);
  values.push_back(top_sum / n_cases);
  values.push_back(EntropyBits(variant_counts));
  values.push_back(singletons / n_variants);
  values.push_back(vlen_mean);
  values.push_back(PopulationStd(variant_lengths, vlen_mean));
  values.push_back(n_variants / n_cases);

  // Directly-follows graph, over activity ids.
  std::vector<std::vector<int>> successors(n_act);
  std::set<std::pair<int, int>> edge_set;
  double max_edge = 0.0;
  double self_loops = 0.0;
  for (const auto& [edge, count] : dfg.edges) {
    const int a = vlog.ActivityId(edge.first);
    const int b = vlog.ActivityId(edge.second);
    successors[a].push_back(b);
    edge_set.insert({a, b});
    max_edge = std::max(max_edge, static_cast<double>(count));
    if (a == b) self_loops += 1.0;
  }
  double max_out = 0.0;
  for (const auto& s : successors) {
    max_out = std::max(max_out, static_cast<double>(s.size()));
  }
  int n_components = 0;
  const std::vector<int> component =
      internal::StronglyConnectedComponents(successors, &n_components);
  std::vector<int> component_size(n_components, 0);
  for (int c : component) ++component_size[c];
  double in_cycles = 0.0;
  for (std::size_t a = 0; a < n_act; ++a) {
    if (component_size[component[a]] > 1 ||
        edge_set.count({static_cast<int>(a), static_cast<int>(a)}) > 0) {
      in_cycles += 1.0;
    }
  }
  double non_loop_edges = 0.0;
  double reciprocal = 0.0;
  for (const auto& [a, b] : edge_set) {
    if (a == b) continue;
    non_loop_edges += 1.0;
    if (edge_set.count({b, a}) > 0) reciprocal += 1.0;
  }
  const double n_edges = static_cast<double>(edge_set.size());
  const double n_act_d = static_cast<double>(n_act);
  values.push_back(n_edges);
  values.push_back(n_edges / (n_act_d * n_act_d));
  values.push_back(max_out);
  values.push_back(n_edges / n_act_d);
  values.push_back(self_loops);
  values.push_back(in_cycles);
  values.push_back(SafeRatio(reciprocal, non_loop_edges));
  values.push_back(max_edge / n_events);
  values.push_back(static_cast<double>(dfg.start_activities.size()));
  values.push_back(static_cast<double>(dfg.end_activities.size()));

  // Footprint.
  const FootprintMatrix fp = ComputeFootprint(dfg);
  double seq = 0.0, par = 0.0, choice = 0.0, self_par = 0.0;
  std::vector<std::vector<int>> causal(n_act);
  for (std::size_t i = 0; i < n_act; ++i) {
    for (std::size_t j = 0; j < n_act; ++j) {
      switch (fp.At(i, j)) {
        case Relation::kSequence:
          seq += 1.0;
          causal[i].push_back(static_cast<int>(j));
          break;
        case Relation::kParallel:
          par += 1.0;
          if (i == j) self_par += 1.0;
          break;
        case Relation::kChoice:
          choice += 1.0;
          break;
        case Relation::kReverseSequence:
          break;
      }
    }
  }
  double chains = 0.0;
  for (std::size_t a = 0; a < n_act; ++a) {
    for (int b : causal[a]) {
      for (int c : causal[b]) {
        if (c != static_cast<int>(a)) chains += 1.0;
      }
    }
  }
  const double pairs = n_act_d * n_act_d;
  values.push_back(seq / pairs);
  values.push_back(par / pairs);
  values.push_back(choice / pairs);
  values.push_back(self_par / n_act_d);
  values.push_back(chains);

  for (double& v : values) {
    if (!std::isfinite(v)) v = 0.0;
  }
  return FeatureVector{std::move(values), std::move(log_id)};
}

double Pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) {
    throw Error(ErrorCode::kLengthMismatch,
                "pearson: sequences differ in length");
  }
  if (x.size() < 2) {
    throw Error(ErrorCode::kTooFewSamples, "pearson: need at least 2 values");
  }
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx <= 0.0 || syy <= 0.0) return 0.0;
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

std::vector<int> PruneRedundant(const std::vector<std::vector<double>>& rows,
                                double threshold) {
  if (rows.size() < 2) {
    throw Error(ErrorCode::kTooFewSamples, "pruning needs at least 2 rows");
  }
  const std::size_t width = rows.front().size();
  std::vector<std::vector<double>> columns(width,
                                           std::vector<double>(rows.size()));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != width) {
      throw Error(ErrorCode::kLengthMismatch, "ragged feature matrix");
    }
    for (std::size_t c = 0; c < width; ++c) columns[c][r] = rows[r][c];
  }
  std::vector<int> retained;
  for (std::size_t c = 0; c < width; ++c) {
    bool redundant = false;
    for (int kept : retained) {
      if (std::abs(Pearson(columns[kept], columns[c])) >= threshold) {
        redundant = true;
        break;
      }
    }
    if (!redundant) retained.push_back(static_cast<int>(c));
  }
  return retained;
}

std::string FeaturesCsvHeader() {
  std::string out = "log_id";
  for (const FeatureDescriptor& d : FeatureCatalog()) {
    out += ',';
    out += d.name;
  }
  return out;
}

std::string FeaturesCsvRow(const FeatureVector& vector) {
  std::string out = vector.log_id;
  char buffer[32];
  for (double v : vector.values) {
    std::snprintf(buffer, sizeof(buffer), "%.17g", v);
    out += ',';
    out += buffer;
  }
  return out;
}

nlohmann::json FeatureVectorToJson(const FeatureVector& vector) {
  nlohmann::json items = nlohmann::json::array();
  const auto& catalog = FeatureCatalog();
  for (std::size_t i = 0; i < vector.values.size() && i < catalog.size(); ++i) {
    items.push_back({{"name", catalog[i].name}, {"value", vector.values[i]}});
  }
  return {{"log_id", vector.log_id},
          {"catalog_version", kFeatureCatalogVersion},
          {"features", std::move(items)}};
}

nlohmann::json FeatureCatalogToJson() {
  nlohmann::json out = nlohmann::json::array();
  for (const FeatureDescriptor& d : FeatureCatalog()) {
    out.push_back({{"index", d.index},
                   {"name", d.name},
                   {"description", d.description},
                   {"source", FeatureSourceName(d.source)}});
  }
  return out;
}

}  // namespace pdrec
