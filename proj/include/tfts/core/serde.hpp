#pragma once
// Canonical JSON forms for the shared domain types. One JSON object per
// value, lower_snake_case keys, dates as ISO-8601 strings, decimals as
// strings carrying their exact precision ("34.2"). Key order is fixed by
// construction (ordered_json + insertion order), so dump() is byte-stable.

#include <string>

#include <json.hpp>

#include "tfts/core/types.hpp"

namespace tfts {

using Json = nlohmann::ordered_json;

// Thrown by the *_from_json readers; `what()` carries a path-ish context.
struct SerdeError : std::runtime_error {
  explicit SerdeError(const std::string& m) : std::runtime_error(m) {}
};

// Strict object reader: every key must be consumed, unknown keys throw.
class ObjReader {
public:
  ObjReader(const Json& j, std::string context);
  const Json& require(const std::string& key);
  const Json* optional(const std::string& key);
  void finish();  // throws on unconsumed keys
  const std::string& context() const { return context_; }

private:
  const Json& json_;
  std::string context_;
  std::vector<std::string> consumed_;
};

std::string require_string(const Json& j, const std::string& context);
std::int64_t require_int(const Json& j, const std::string& context);
bool require_bool(const Json& j, const std::string& context);
Decimal require_decimal(const Json& j, const std::string& context);
MetricId require_metric(const Json& j, const std::string& context);
Date require_date(const Json& j, const std::string& context);

Json event_to_json(const LoggedEvent& e);
LoggedEvent event_from_json(const Json& j);

Json record_to_json(const UserNightRecord& r);
UserNightRecord record_from_json(const Json& j);

Json baseline_to_json(const BaselineStats& b);
BaselineStats baseline_from_json(const Json& j);

Json comparison_to_json(const ComparisonFact& c);
ComparisonFact comparison_from_json(const Json& j);

Json ranking_to_json(const RankingDecision& r);
RankingDecision ranking_from_json(const Json& j);

Json attribution_to_json(const AttributionSet& a);
AttributionSet attribution_from_json(const Json& j);

Json allowed_number_to_json(const AllowedNumber& n);
AllowedNumber allowed_number_from_json(const Json& j);

Json bank_to_json(const FactBank& b);
FactBank bank_from_json(const Json& j);

Json chart_point_to_json(const ChartPoint& p);
ChartPoint chart_point_from_json(const Json& j);

Json packet_to_json(const WriterPacket& p);
WriterPacket packet_from_json(const Json& j);

Json output_to_json(const InsightOutput& o);
// Trusted reload of a stored output; schema scoring uses eval::parse_output.
InsightOutput output_from_json(const Json& j);

Json usage_to_json(const Usage& u);
Usage usage_from_json(const Json& j);

Json schema_error_to_json(const SchemaError& e);
SchemaError schema_error_from_json(const Json& j);

Json trace_to_json(const TraceRecord& t);
TraceRecord trace_from_json(const Json& j);

}  // namespace tfts
