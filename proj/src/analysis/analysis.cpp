#include "tfts/analysis/analysis.hpp"

#include <algorithm>
#include <cmath>

#include "tfts/cohort/cohort.hpp"
#include "tfts/core/errors.hpp"
#include "tfts/core/fact_bank.hpp"

namespace tfts::analysis {

namespace {

constexpr int kMeanGuardPlaces = 4;

std::int64_t pow10_int(int p) {
  std::int64_t v = 1;
  for (int i = 0; i < p; ++i) v *= 10;
  return v;
}

}  // namespace

SelectionRule SelectionRule::defaults() {
  SelectionRule rule;
  rule.min_baseline_nights = 1;
  for (const auto& info : metric_catalog()) {
    rule.priority_weights[info.id] = Decimal(10, 1);  // 1.0
  }
  rule.priority_weights[MetricId::SleepScore] = Decimal(5, 1);  // 0.5
  rule.rule_version = "select-v1";
  return rule;
}

void SelectionRule::validate() const {
  if (min_baseline_nights < 1) throw InvalidSpecError("min_baseline_nights must be >= 1");
  for (const auto& info : metric_catalog()) {
    auto it = priority_weights.find(info.id);
    if (it == priority_weights.end()) {
      throw InvalidSpecError("priority_weights must cover " + std::string(info.name));
    }
    if (it->second <= Decimal(0, 0)) {
      throw InvalidSpecError("priority weight must be > 0");
    }
  }
}

BaselineStats compute_baseline(std::span<const UserNightRecord> history, MetricId metric,
                               int window_nights) {
  BaselineStats stats;
  stats.metric = metric;
  std::size_t window = std::min<std::size_t>(history.size(), static_cast<std::size_t>(window_nights));

  const int precision = metric_info(metric).precision;
  std::int64_t sum = 0;      // in catalog-precision units
  std::int64_t sum_sq = 0;   // squared catalog-precision units
  std::int64_t count = 0;
  for (std::size_t i = history.size() - window; i < history.size(); ++i) {
    auto it = history[i].values.find(metric);
    if (it == history[i].values.end()) continue;
    std::int64_t units = it->second.rescale(precision).units();
    sum += units;
    sum_sq += units * units;
    ++count;
  }
  stats.count = count;
  if (count == 0) return stats;

  const int mean_places = precision + kMeanGuardPlaces;
  std::int64_t mean_units = rational_round_haz(sum * pow10_int(kMeanGuardPlaces), count);
  stats.mean = Decimal(mean_units, mean_places);

  // Population variance from the exact sums, then one sqrt in double.
  double n = static_cast<double>(count);
  double scale = static_cast<double>(pow10_int(precision));
  double mean_raw = static_cast<double>(sum) / n / scale;
  double ex2 = static_cast<double>(sum_sq) / n / (scale * scale);
  double variance = std::max(0.0, ex2 - mean_raw * mean_raw);
  stats.std_dev = Decimal(std::llround(std::sqrt(variance) * std::pow(10.0, mean_places)),
                          mean_places);
  return stats;
}

std::optional<ComparisonFact> compare(const Decimal& current, const BaselineStats& baseline,
                                      MetricId metric) {
  if (!baseline.defined() || !baseline.mean.has_value()) {
    throw std::invalid_argument("compare requires baseline.count >= 1");
  }
  const Decimal& mean = *baseline.mean;
  if (mean.units() == 0) return std::nullopt;  // zero baseline, comparison undefined

  const int precision = metric_info(metric).precision;
  Decimal cur = current.rescale(precision >= current.places() ? precision : current.places());
  // Bring both to the mean's scale; the shared factor cancels in the ratio.
  int p = std::max(cur.places(), mean.places());
  std::int64_t c = cur.rescale(p).units();
  std::int64_t m = mean.rescale(p).units();

  ComparisonFact fact;
  fact.metric = metric;
  fact.current = current.round_half_away(precision);
  fact.baseline_mean = mean.round_half_away(precision);
  fact.pct_delta = rational_round_haz(100 * (c - m), m);
  fact.direction = fact.pct_delta == 0   ? Direction::Flat
                   : fact.pct_delta > 0 ? Direction::Up
                                        : Direction::Down;
  fact.display =
      ComparisonFact::render_display(metric, fact.current, fact.baseline_mean, fact.pct_delta);
  return fact;
}

std::optional<RankingDecision> rank(const std::vector<ComparisonFact>& comparisons,
                                    const std::map<MetricId, BaselineStats>& baselines,
                                    const SelectionRule& rule) {
  rule.validate();
  std::map<MetricId, const ComparisonFact*> by_metric;
  for (const auto& fact : comparisons) by_metric[fact.metric] = &fact;

  RankingDecision decision;
  decision.rule_version = rule.rule_version;
  bool have_best = false;
  Decimal best_score(0, 0);

  // Catalog order: the first metric attaining the maximum wins ties.
  for (const auto& info : metric_catalog()) {
    auto fact_it = by_metric.find(info.id);
    if (fact_it == by_metric.end()) continue;
    auto base_it = baselines.find(info.id);
    if (base_it == baselines.end() ||
        base_it->second.count < rule.min_baseline_nights) {
      continue;
    }
    decision.eligible.push_back(info.id);
    std::int64_t pct = fact_it->second->pct_delta;
    Decimal score = rule.priority_weights.at(info.id).times_int(pct < 0 ? -pct : pct);
    decision.scores[info.id] = score;
    if (!have_best || score > best_score) {
      have_best = true;
      best_score = score;
      decision.selected = info.id;
    }
  }
  if (!have_best) return std::nullopt;  // nothing eligible: cold-start night
  return decision;
}

AttributionSet attribute(const std::vector<LoggedEvent>& events,
                         const std::vector<TagName>& candidates, const Decimal& threshold) {
  if (threshold <= Decimal(0, 0) || threshold > Decimal(1, 0)) {
    throw std::invalid_argument("attribution threshold must be in (0,1]");
  }
  AttributionSet out;
  out.threshold = threshold;
  for (const auto& tag : candidates) {
    Decimal evidence(0, 0);
    bool seen = false;
    for (const auto& event : events) {
      if (event.tag != tag) continue;
      if (!seen || event.strength > evidence) evidence = event.strength;
      seen = true;
    }
    if (seen && evidence >= threshold) {
      out.allowed.push_back({tag, evidence});
    }
  }
  std::stable_sort(out.allowed.begin(), out.allowed.end(),
                   [](const AttributionEntry& a, const AttributionEntry& b) {
                     if (a.evidence != b.evidence) return a.evidence > b.evidence;
                     return a.tag < b.tag;
                   });
  return out;
}

std::string ReferenceReport::text() const {
  std::string out = header;
  for (const auto& line : lines) {
    out.push_back('\n');
    out += line.text;
  }
  out.push_back('\n');
  return out;
}

ReferenceReport format_reference_report(const UserNightRecord& record,
                                        const std::vector<ComparisonFact>& comparisons) {
  std::map<MetricId, const ComparisonFact*> by_metric;
  for (const auto& fact : comparisons) by_metric[fact.metric] = &fact;

  ReferenceReport report;
  report.header = "night " + record.user_id + " " + record.date.to_string();
  for (const auto& info : metric_catalog()) {
    auto value_it = record.values.find(info.id);
    if (value_it == record.values.end()) continue;
    std::string unit_suffix = info.unit.empty() ? "" : " " + std::string(info.unit);
    std::string text = std::string(info.report_label) + ": " +
                       render_metric_value(info.id, value_it->second) + unit_suffix;
    auto fact_it = by_metric.find(info.id);
    if (fact_it != by_metric.end()) {
      const auto& fact = *fact_it->second;
      std::string pct = fact.pct_delta > 0 ? "+" + std::to_string(fact.pct_delta)
                                           : std::to_string(fact.pct_delta);
      text += " (baseline " + fact.baseline_mean.to_string() + unit_suffix + ", " + pct + "%)";
    } else {
      text += " (no baseline)";
    }
    report.lines.push_back({info.id, text});
  }
  return report;
}

std::vector<ChartPoint> build_chart(std::span<const UserNightRecord> history,
                                    const UserNightRecord& record, MetricId metric,
                                    int window_nights) {
  std::vector<ChartPoint> chart;
  std::size_t window = std::min<std::size_t>(history.size(), static_cast<std::size_t>(window_nights));
  for (std::size_t i = history.size() - window; i < history.size(); ++i) {
    auto it = history[i].values.find(metric);
    if (it == history[i].values.end()) continue;
    chart.push_back({history[i].date, it->second});
  }
  auto cur = record.values.find(metric);
  if (cur != record.values.end()) {
    chart.push_back({record.date, cur->second});
  }
  return chart;
}

WriterPacket build_packet(const FactBank& bank, const ReferenceReport& report,
                          const AttributionSet& attribution,
                          const std::vector<ChartPoint>& chart,
                          const StyleConstraints& constraints) {
  (void)report;  // carried alongside the packet into the prompt, not embedded
  auto fact_it = bank.comparisons.find(bank.selected);
  if (fact_it == bank.comparisons.end() || !bank.values.count(bank.selected)) {
    throw IncompleteBankError("bank is missing facts for " + metric_name(bank.selected));
  }
  WriterPacket packet;
  packet.schema_id = kInsightSchemaId;
  packet.selected = bank.selected;
  packet.comparison_display = fact_it->second.display;
  packet.allowed_numbers = bank.allowed_numbers;
  packet.allowed_tags = attribution.allowed;
  packet.no_tags_permitted = attribution.allowed.empty();
  packet.chart = chart;
  packet.style_constraints = constraints;
  return packet;
}

std::string render_writer_prompt(const WriterPacket& packet, const std::string& report_text) {
  const auto& info = metric_info(packet.selected);
  std::string p;
  p += "[" + packet.schema_id + "] Write tonight's sleep insight as one JSON object.\n";
  p += "Schema: {\"headline\": {\"title\", \"core_insight\", \"how_to_improve\"}, "
       "\"analysis_card\": {\"metric_id\", \"finding_statement\", \"tags\", \"chart\"}}\n";
  p += "Bounds: title <= " + std::to_string(packet.style_constraints.title_max_chars) +
       " chars, core_insight <= " +
       std::to_string(packet.style_constraints.core_insight_max_chars) +
       " chars, how_to_improve <= " +
       std::to_string(packet.style_constraints.how_to_improve_max_chars) + " chars.\n";
  p += "Selected metric: " + std::string(info.name) + "\n";
  p += "Comparison: " + packet.comparison_display + "\n";
  p += "Allowed numbers (use no others):";
  for (const auto& n : packet.allowed_numbers) {
    p += " " + n.value.to_string() + "[" + unit_class_name(n.cls) + "]";
  }
  p += "\n";
  if (packet.no_tags_permitted) {
    p += "Allowed tags: none (no tags permitted)\n";
  } else {
    p += "Allowed tags (copy exactly, add none):";
    for (const auto& t : packet.allowed_tags) {
      p += " " + t.tag + "(" + t.evidence.to_string() + ")";
    }
    p += "\n";
  }
  p += "Chart (echo into analysis_card.chart):";
  for (const auto& c : packet.chart) {
    p += " " + c.date.to_string() + "=" + c.value.to_string();
  }
  p += "\n";
  if (!report_text.empty()) {
    p += "Reference report:\n" + report_text;
  }
  p += "Do not add new tags or recalculate numbers. Respond with only the JSON object.\n";
  return p;
}

AnalysisConfig AnalysisConfig::defaults() {
  AnalysisConfig config;
  config.rule = SelectionRule::defaults();
  config.tag_candidates = cohort::default_tag_vocabulary();
  return config;
}

std::optional<LayerOutputs> run_reference_layers(const UserNightRecord& record,
                                                 std::span<const UserNightRecord> history,
                                                 const AnalysisConfig& config) {
  LayerOutputs out;
  for (const auto& [id, value] : record.values) {
    BaselineStats stats = compute_baseline(history, id, config.window_nights);
    if (stats.defined()) {
      if (auto fact = compare(value, stats, id)) {
        out.comparisons.push_back(*fact);
      }
    }
    out.baselines[id] = std::move(stats);
  }
  out.report = format_reference_report(record, out.comparisons);
  auto ranking = rank(out.comparisons, out.baselines, config.rule);
  if (!ranking) return std::nullopt;
  out.ranking = std::move(*ranking);
  out.attribution = attribute(record.events, config.tag_candidates, config.attribution_threshold);
  out.bank = build_fact_bank(record, out.comparisons, out.ranking, out.attribution);
  out.chart = build_chart(history, record, out.ranking.selected, config.window_nights);
  out.packet = build_packet(out.bank, out.report, out.attribution, out.chart, config.style);
  return out;
}

}  // namespace tfts::analysis
