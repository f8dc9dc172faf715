#include "tfts/core/types.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>

#include "tfts/core/errors.hpp"

namespace tfts {

namespace {

// Howard Hinnant's civil date algorithms.
std::int64_t days_from_civil(int y, int m, int d) {
  y -= m <= 2;
  const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153u * static_cast<unsigned>(m + (m > 2 ? -3 : 9)) + 2u) / 5u +
                       static_cast<unsigned>(d) - 1u;
  const unsigned doe = yoe * 365u + yoe / 4u - yoe / 100u + doy;
  return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

void civil_from_days(std::int64_t z, int& y, int& m, int& d) {
  z += 719468;
  const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
  const unsigned doe = static_cast<unsigned>(z - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  const std::int64_t yy = static_cast<std::int64_t>(yoe) + era * 400;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  d = static_cast<int>(doy - (153 * mp + 2) / 5 + 1);
  m = static_cast<int>(mp + (mp < 10 ? 3 : -9));
  y = static_cast<int>(yy + (m <= 2));
}

}  // namespace

Date Date::parse(const std::string& iso) {
  if (iso.size() != 10 || iso[4] != '-' || iso[7] != '-') {
    throw std::invalid_argument("bad date: " + iso);
  }
  for (std::size_t i : {0u, 1u, 2u, 3u, 5u, 6u, 8u, 9u}) {
    if (!std::isdigit(static_cast<unsigned char>(iso[i]))) {
      throw std::invalid_argument("bad date: " + iso);
    }
  }
  Date out;
  out.year = std::stoi(iso.substr(0, 4));
  out.month = std::stoi(iso.substr(5, 2));
  out.day = std::stoi(iso.substr(8, 2));
  if (out.month < 1 || out.month > 12 || out.day < 1 || out.day > 31) {
    throw std::invalid_argument("bad date: " + iso);
  }
  return out;
}

std::string Date::to_string() const {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", year, month, day);
  return buf;
}

std::int64_t Date::to_days() const { return days_from_civil(year, month, day); }

Date Date::plus_days(std::int64_t n) const {
  Date out;
  civil_from_days(to_days() + n, out.year, out.month, out.day);
  return out;
}

void UserNightRecord::validate(const std::vector<TagName>& tag_vocabulary,
                               std::int64_t line) const {
  auto fail = [&](const std::string& field, const std::string& msg) {
    throw InvariantViolationError(line, field, msg);
  };
  if (user_id.empty()) fail("user_id", "must be non-empty");
  const Decimal zero(0, 0);
  for (const auto& [id, value] : values) {
    const auto& info = metric_info(id);
    if (value < zero) fail(std::string(info.name), "must be non-negative");
    if (value.places() != info.precision) {
      fail(std::string(info.name), "wrong precision, expected " + std::to_string(info.precision));
    }
  }
  auto get = [&](MetricId id) -> std::optional<Decimal> {
    auto it = values.find(id);
    if (it == values.end()) return std::nullopt;
    return it->second;
  };
  if (auto score = get(MetricId::SleepScore); score && *score > Decimal(100, 0)) {
    fail("sleep_score", "must be in [0,100]");
  }
  if (auto snore = get(MetricId::SnorePct); snore && *snore > Decimal(100, 0)) {
    fail("snore_pct", "must be in [0,100]");
  }
  auto duration = get(MetricId::DurationMin);
  Decimal stage_sum(0, 0);
  bool any_stage = false;
  for (MetricId id : {MetricId::DeepMin, MetricId::RemMin, MetricId::LightMin}) {
    if (auto v = get(id)) {
      stage_sum = stage_sum.plus(*v);
      any_stage = true;
    }
  }
  if (any_stage) {
    if (!duration) fail("duration_min", "required when sleep stages are present");
    if (stage_sum > *duration) fail("duration_min", "deep+rem+light exceeds duration");
  }
  for (const auto& event : events) {
    if (event.strength < zero || event.strength > Decimal(1, 0)) {
      fail("events.strength", "must be in [0,1]");
    }
    if (!tag_vocabulary.empty() &&
        std::find(tag_vocabulary.begin(), tag_vocabulary.end(), event.tag) ==
            tag_vocabulary.end()) {
      fail("events.tag", "unknown tag: " + event.tag);
    }
  }
}

std::string direction_name(Direction d) {
  switch (d) {
    case Direction::Up: return "up";
    case Direction::Down: return "down";
    case Direction::Flat: return "flat";
  }
  throw std::logic_error("bad direction");
}

std::string ComparisonFact::render_display(MetricId metric, const Decimal& current,
                                           const Decimal& baseline_mean,
                                           std::int64_t pct_delta) {
  const auto& info = metric_info(metric);
  std::string unit_suffix = info.unit.empty() ? "" : " " + std::string(info.unit);
  std::string pct = pct_delta > 0 ? "+" + std::to_string(pct_delta) : std::to_string(pct_delta);
  return current.to_string() + " vs " + baseline_mean.to_string() + unit_suffix + " (" + pct +
         "%)";
}

std::vector<TagName> AttributionSet::names() const {
  std::vector<TagName> out;
  out.reserve(allowed.size());
  for (const auto& entry : allowed) out.push_back(entry.tag);
  return out;
}

bool AttributionSet::contains(const TagName& tag) const {
  for (const auto& entry : allowed) {
    if (entry.tag == tag) return true;
  }
  return false;
}

std::string schema_error_kind_name(SchemaErrorKind k) {
  switch (k) {
    case SchemaErrorKind::Parse: return "parse";
    case SchemaErrorKind::MissingField: return "missing_field";
    case SchemaErrorKind::WrongType: return "wrong_type";
    case SchemaErrorKind::BoundViolation: return "bound_violation";
  }
  throw std::logic_error("bad schema error kind");
}

std::string layer_name(LayerId layer) {
  switch (layer) {
    case LayerId::ReferenceReport: return "reference_report";
    case LayerId::Comparison: return "comparison";
    case LayerId::Ranker: return "ranker";
    case LayerId::Attribution: return "attribution";
    case LayerId::Handoff: return "handoff";
  }
  throw std::logic_error("bad layer");
}

std::optional<LayerId> layer_from_name(const std::string& name) {
  for (auto layer : {LayerId::ReferenceReport, LayerId::Comparison, LayerId::Ranker,
                     LayerId::Attribution, LayerId::Handoff}) {
    if (layer_name(layer) == name) return layer;
  }
  return std::nullopt;
}

}  // namespace tfts
