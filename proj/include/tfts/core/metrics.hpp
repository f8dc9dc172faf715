#pragma once
// The closed metric catalog. Catalog order doubles as the ranking tie-break
// priority, so reordering entries is a behavioural change.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "tfts/core/decimal.hpp"

namespace tfts {

enum class MetricId : std::uint8_t {
  SleepScore = 0,
  DurationMin,
  DeepMin,
  RemMin,
  LightMin,
  HrvMs,
  HeartRateBpm,
  RespRateBrpm,
  SnorePct,
};

constexpr std::size_t kMetricCount = 9;

enum class UnitClass : std::uint8_t {
  Unitless = 0,
  Minutes,
  HoursMinutes,  // h-part literals and h/m compound claims, valued in minutes
  Ms,
  Bpm,
  Brpm,
  Percent,
};

struct MetricInfo {
  MetricId id;
  std::string_view name;       // canonical id used in JSON and CLI
  std::string_view unit;       // display unit suffix ("" for unitless)
  int precision;               // display decimal places
  UnitClass unit_class;
  std::string_view report_label;  // short label used in the reference report
  std::string_view prose_noun;    // subject used by the template writer
  bool is_duration;
};

const std::array<MetricInfo, kMetricCount>& metric_catalog();

const MetricInfo& metric_info(MetricId id);
std::optional<MetricId> metric_from_name(std::string_view name);
inline std::string metric_name(MetricId id) { return std::string(metric_info(id).name); }

std::string unit_class_name(UnitClass cls);
std::optional<UnitClass> unit_class_from_name(std::string_view name);

// Renders a value at the metric's display precision, e.g. 342/1 -> "34.2".
// Duration metrics render in minutes here; h/m form is a separate helper.
std::string render_metric_value(MetricId id, const Decimal& value);

// "7h 50m" / "8h" / "42m" for a whole-minute duration value.
std::string render_hours_minutes(std::int64_t minutes);

}  // namespace tfts
