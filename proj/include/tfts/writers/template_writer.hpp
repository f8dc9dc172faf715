#pragma once
// Deterministic template writer: renders the packet's facts into the output
// schema without inventing a single literal. It is the system's oracle — its
// outputs must score zero on every evaluator metric.

#include <optional>
#include <string>

#include "tfts/core/fact_bank.hpp"
#include "tfts/core/types.hpp"

namespace tfts::writers {

// Numbers parsed back out of a packet's comparison_display
// ("34.2 vs 41.3 ms (-17%)"). The display is the writer's only number source.
struct DisplayFacts {
  Decimal current;
  Decimal baseline;
  std::int64_t pct_delta = 0;
};

std::optional<DisplayFacts> parse_comparison_display(const std::string& display,
                                                     MetricId metric);

// How a current value appears in template prose ("34 ms", "7h 50m", "84").
struct ProseNumber {
  std::string text;      // rendered phrase including unit
  Decimal surface;       // literal as written (minutes total for h/m forms)
  int places = 0;
  UnitClass cls = UnitClass::Unitless;
  NumberForm form = NumberForm::Plain;
};

ProseNumber prose_number(MetricId metric, const Decimal& current);

InsightOutput template_output(const WriterPacket& packet);

// Canonical serialization of template_output; byte-identical across runs.
std::string template_write(const WriterPacket& packet);

}  // namespace tfts::writers
