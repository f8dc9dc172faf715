#pragma once
// The deterministic analytical layers: baseline statistics, numerical
// comparison, metric ranking, evidence-gated attribution, reference-report
// formatting, and handoff compaction. Every function here is pure; per-night
// runs are independent and safe to execute in parallel.

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tfts/core/types.hpp"

namespace tfts::analysis {

inline constexpr int kBaselineWindowNights = 14;
inline constexpr char kInsightSchemaId[] = "insight-v1";

struct SelectionRule {
  int min_baseline_nights = 1;
  std::map<MetricId, Decimal> priority_weights;  // must cover the whole catalog
  std::string rule_version = "select-v1";

  static SelectionRule defaults();
  void validate() const;
};

// Population statistics over at most `window_nights` trailing nights that
// contain the metric. `history` must be sorted by date, same user, current
// night excluded. count == 0 marks the metric ineligible; that is not an
// error. The mean is kept at catalog precision + 4 guard places.
BaselineStats compute_baseline(std::span<const UserNightRecord> history, MetricId metric,
                               int window_nights = kBaselineWindowNights);

// pct_delta = round_half_away_from_zero(100 * (current - mean) / mean),
// computed in exact integer arithmetic against the stored decimal mean.
// Returns nullopt when the baseline mean is zero (metric ineligible).
// Requires baseline.count >= 1.
std::optional<ComparisonFact> compare(const Decimal& current, const BaselineStats& baseline,
                                      MetricId metric);

// score(m) = priority_weights[m] * |pct_delta(m)| over eligible metrics
// (comparison defined and baseline count >= min_baseline_nights); ties break
// by catalog order. Returns nullopt when nothing is eligible (cold start).
std::optional<RankingDecision> rank(const std::vector<ComparisonFact>& comparisons,
                                    const std::map<MetricId, BaselineStats>& baselines,
                                    const SelectionRule& rule);

// evidence(tag) = max strength of same-tag events this night; allowed = the
// candidates with evidence >= threshold (inclusive gate), ordered by
// descending evidence then tag name. threshold must be in (0,1].
AttributionSet attribute(const std::vector<LoggedEvent>& events,
                         const std::vector<TagName>& candidates, const Decimal& threshold);

struct ReportLine {
  MetricId metric = MetricId::SleepScore;
  std::string text;
};

struct ReferenceReport {
  std::string header;
  std::vector<ReportLine> lines;  // catalog order, one per metric present

  // The text form is derived, so structure and text cannot drift apart.
  std::string text() const;
};

ReferenceReport format_reference_report(const UserNightRecord& record,
                                        const std::vector<ComparisonFact>& comparisons);

// Trailing window of the selected metric plus the current night.
std::vector<ChartPoint> build_chart(std::span<const UserNightRecord> history,
                                    const UserNightRecord& record, MetricId metric,
                                    int window_nights = kBaselineWindowNights);

// Compacts the bank into the bounded writer interface. Throws
// IncompleteBankError when the bank lacks the selected metric's facts.
WriterPacket build_packet(const FactBank& bank, const ReferenceReport& report,
                          const AttributionSet& attribution,
                          const std::vector<ChartPoint>& chart,
                          const StyleConstraints& constraints);

// Deterministic writer prompt, versioned by the packet's schema_id.
std::string render_writer_prompt(const WriterPacket& packet, const std::string& report_text);

struct AnalysisConfig {
  SelectionRule rule;
  Decimal attribution_threshold = Decimal(5, 1);  // 0.5, inclusive gate
  std::vector<TagName> tag_candidates;            // defaults to the cohort vocabulary
  int window_nights = kBaselineWindowNights;
  StyleConstraints style;

  static AnalysisConfig defaults();
};

// All reference layers for one night. nullopt on cold-start nights
// (no eligible metric).
struct LayerOutputs {
  std::map<MetricId, BaselineStats> baselines;
  std::vector<ComparisonFact> comparisons;  // catalog order
  ReferenceReport report;
  RankingDecision ranking;
  AttributionSet attribution;
  FactBank bank;
  std::vector<ChartPoint> chart;
  WriterPacket packet;
};

std::optional<LayerOutputs> run_reference_layers(const UserNightRecord& record,
                                                 std::span<const UserNightRecord> history,
                                                 const AnalysisConfig& config);

}  // namespace tfts::analysis
