#pragma once
// Shared domain types. Everything here is an immutable value after
// construction and safe to copy across threads.

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tfts/core/decimal.hpp"
#include "tfts/core/metrics.hpp"

namespace tfts {

using TagName = std::string;

// Calendar date, proleptic Gregorian. Stored as y/m/d; arithmetic goes
// through the usual civil-days conversion.
struct Date {
  int year = 1970;
  int month = 1;
  int day = 1;

  static Date parse(const std::string& iso);  // "YYYY-MM-DD"
  std::string to_string() const;
  Date plus_days(std::int64_t n) const;
  std::int64_t to_days() const;  // days since 1970-01-01

  auto operator<=>(const Date&) const = default;
};

struct NightKey {
  std::string user_id;
  Date date;
  auto operator<=>(const NightKey&) const = default;
  std::string to_string() const { return user_id + " " + date.to_string(); }
};

struct LoggedEvent {
  TagName tag;
  Decimal strength;  // in [0,1]
  std::string note;
};

struct UserNightRecord {
  std::string user_id;
  Date date;
  std::map<MetricId, Decimal> values;  // map order == catalog order
  std::vector<LoggedEvent> events;

  NightKey key() const { return {user_id, date}; }
  // Throws InvariantViolationError naming the offending field.
  void validate(const std::vector<TagName>& tag_vocabulary, std::int64_t line = 0) const;
};

struct BaselineStats {
  MetricId metric = MetricId::SleepScore;
  std::int64_t count = 0;
  // Defined only when count > 0, at catalog precision + 4 extra places.
  std::optional<Decimal> mean;
  std::optional<Decimal> std_dev;  // population formula
  bool defined() const { return count > 0; }
};

enum class Direction : std::uint8_t { Up, Down, Flat };
std::string direction_name(Direction d);

struct ComparisonFact {
  MetricId metric = MetricId::SleepScore;
  Decimal current;        // at catalog precision
  Decimal baseline_mean;  // at catalog precision
  std::int64_t pct_delta = 0;
  Direction direction = Direction::Flat;
  std::string display;

  // "<current> vs <baseline> <unit> (<signed pct>%)", byte-stable.
  static std::string render_display(MetricId metric, const Decimal& current,
                                    const Decimal& baseline_mean, std::int64_t pct_delta);
};

struct RankingDecision {
  MetricId selected = MetricId::SleepScore;
  std::map<MetricId, Decimal> scores;  // eligible metrics only
  std::vector<MetricId> eligible;      // catalog order
  std::string rule_version;
};

struct AttributionEntry {
  TagName tag;
  Decimal evidence;  // in [0,1]
};

struct AttributionSet {
  std::vector<AttributionEntry> allowed;  // descending evidence, ties by tag name
  Decimal threshold;

  std::vector<TagName> names() const;
  bool contains(const TagName& tag) const;
};

struct AllowedNumber {
  Decimal value;
  UnitClass cls = UnitClass::Unitless;

  friend bool operator==(const AllowedNumber& a, const AllowedNumber& b) {
    return a.cls == b.cls && a.value.units() == b.value.units() &&
           a.value.places() == b.value.places();
  }
};

struct MetricValueEntry {
  Decimal value;  // at catalog precision
  std::string unit;
  int precision = 0;
};

struct FactBank {
  NightKey night;
  std::map<MetricId, MetricValueEntry> values;
  std::map<MetricId, ComparisonFact> comparisons;
  std::vector<AllowedNumber> allowed_numbers;  // sorted by (class, value), deduped
  std::vector<TagName> allowed_tags;           // attribution order
  MetricId selected = MetricId::SleepScore;
};

struct ChartPoint {
  Date date;
  Decimal value;
};

struct StyleConstraints {
  int title_max_chars = 60;
  int core_insight_max_chars = 280;
  int how_to_improve_max_chars = 280;
};

struct WriterPacket {
  std::string schema_id;
  MetricId selected = MetricId::SleepScore;
  std::string comparison_display;
  std::vector<AllowedNumber> allowed_numbers;
  std::vector<AttributionEntry> allowed_tags;
  bool no_tags_permitted = false;  // explicit marker, true iff allowed_tags empty
  std::vector<ChartPoint> chart;
  StyleConstraints style_constraints;
};

struct InsightHeadline {
  std::string title;
  std::string core_insight;
  std::string how_to_improve;
};

struct AnalysisCard {
  MetricId metric_id = MetricId::SleepScore;
  std::string finding_statement;
  std::vector<TagName> tags;
  std::vector<ChartPoint> chart;
};

struct InsightOutput {
  InsightHeadline headline;
  AnalysisCard analysis_card;
};

enum class SchemaErrorKind : std::uint8_t { Parse, MissingField, WrongType, BoundViolation };
std::string schema_error_kind_name(SchemaErrorKind k);

struct SchemaError {
  SchemaErrorKind kind = SchemaErrorKind::Parse;
  std::string detail;  // first violation encountered
};

struct CallUsage {
  std::int64_t input_tokens = 0;
  std::int64_t output_tokens = 0;
};

struct Usage {
  std::vector<CallUsage> calls;
};

enum class LayerId : std::uint8_t { ReferenceReport, Comparison, Ranker, Attribution, Handoff };
std::string layer_name(LayerId layer);
std::optional<LayerId> layer_from_name(const std::string& name);

struct ArtifactRecord {
  LayerId layer = LayerId::Comparison;
  std::string raw_text;
  bool parsed_ok = false;
  std::string parse_error;    // set when !parsed_ok
  std::string artifact_json;  // canonical serialization of the parsed artifact
};

// Outputs of the deterministic layers, always stored so traces can be scored
// without re-running the pipeline.
struct ReferenceFacts {
  FactBank bank;
  RankingDecision ranking;
  AttributionSet attribution;
};

// Which injected writer faults actually fired (test side-channel).
struct FaultOutcome {
  bool numeric_fired = false;
  bool tag_add_fired = false;
  bool tag_add_applicable = true;
  bool metric_swap_fired = false;
  bool schema_fired = false;
};

struct TraceRecord {
  std::string condition;  // canonical condition name, validated by the harness
  std::string model;
  NightKey night;
  WriterPacket packet;  // the packet actually handed to the writer
  ReferenceFacts reference;
  std::optional<ArtifactRecord> artifact;  // replacement conditions only
  std::string raw_output;
  std::optional<InsightOutput> parsed;
  std::optional<SchemaError> parse_error;
  std::string backend_error;  // non-empty when the writer call itself failed
  Usage usage;
  std::int64_t latency_ms = 0;
  Decimal cost_usd = Decimal(0, 0);
  std::optional<FaultOutcome> fault_outcome;
};

}  // namespace tfts
