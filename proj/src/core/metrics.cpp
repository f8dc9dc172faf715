#include "tfts/core/metrics.hpp"

#include <stdexcept>

namespace tfts {

const std::array<MetricInfo, kMetricCount>& metric_catalog() {
  static const std::array<MetricInfo, kMetricCount> catalog = {{
      {MetricId::SleepScore, "sleep_score", "", 0, UnitClass::Unitless, "sleep_score", "sleep score", false},
      {MetricId::DurationMin, "duration_min", "min", 0, UnitClass::Minutes, "duration", "sleep time", true},
      {MetricId::DeepMin, "deep_min", "min", 0, UnitClass::Minutes, "deep", "deep sleep", true},
      {MetricId::RemMin, "rem_min", "min", 0, UnitClass::Minutes, "rem", "REM sleep", true},
      {MetricId::LightMin, "light_min", "min", 0, UnitClass::Minutes, "light", "light sleep", true},
      {MetricId::HrvMs, "hrv_ms", "ms", 1, UnitClass::Ms, "hrv", "HRV", false},
      {MetricId::HeartRateBpm, "heart_rate_bpm", "bpm", 1, UnitClass::Bpm, "heart_rate", "heart rate", false},
      {MetricId::RespRateBrpm, "resp_rate_brpm", "brpm", 1, UnitClass::Brpm, "resp_rate", "breathing rate", false},
      {MetricId::SnorePct, "snore_pct", "%", 1, UnitClass::Percent, "snore_percent", "snoring", false},
  }};
  return catalog;
}

const MetricInfo& metric_info(MetricId id) {
  return metric_catalog().at(static_cast<std::size_t>(id));
}

std::optional<MetricId> metric_from_name(std::string_view name) {
  for (const auto& m : metric_catalog()) {
    if (m.name == name) return m.id;
  }
  return std::nullopt;
}

std::string unit_class_name(UnitClass cls) {
  switch (cls) {
    case UnitClass::Unitless: return "unitless";
    case UnitClass::Minutes: return "minutes";
    case UnitClass::HoursMinutes: return "hours_minutes";
    case UnitClass::Ms: return "ms";
    case UnitClass::Bpm: return "bpm";
    case UnitClass::Brpm: return "brpm";
    case UnitClass::Percent: return "percent";
  }
  throw std::logic_error("bad unit class");
}

std::optional<UnitClass> unit_class_from_name(std::string_view name) {
  for (auto cls : {UnitClass::Unitless, UnitClass::Minutes, UnitClass::HoursMinutes,
                   UnitClass::Ms, UnitClass::Bpm, UnitClass::Brpm, UnitClass::Percent}) {
    if (unit_class_name(cls) == name) return cls;
  }
  return std::nullopt;
}

std::string render_metric_value(MetricId id, const Decimal& value) {
  return value.round_half_away(metric_info(id).precision).to_string();
}

std::string render_hours_minutes(std::int64_t minutes) {
  if (minutes < 0) throw std::invalid_argument("negative duration");
  std::int64_t h = minutes / 60;
  std::int64_t m = minutes % 60;
  if (h == 0) return std::to_string(m) + "m";
  if (m == 0) return std::to_string(h) + "h";
  return std::to_string(h) + "h " + std::to_string(m) + "m";
}

}  // namespace tfts
