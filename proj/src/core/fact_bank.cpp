#include "tfts/core/fact_bank.hpp"

#include <algorithm>

#include "tfts/core/errors.hpp"

namespace tfts {

namespace {

struct NumberCollector {
  std::vector<AllowedNumber> numbers;

  void add(const Decimal& value, UnitClass cls) {
    AllowedNumber n{value, cls};
    for (const auto& existing : numbers) {
      if (existing == n) return;
    }
    numbers.push_back(n);
  }

  // Adds a metric value plus, for durations, its h/m literal parts.
  void add_value_forms(MetricId id, const Decimal& value) {
    const auto& info = metric_info(id);
    add(value, info.unit_class);
    if (info.is_duration) {
      std::int64_t minutes = value.round_half_away(0).units();
      std::int64_t h = minutes / 60;
      std::int64_t m = minutes % 60;
      if (h > 0) add(Decimal(h * 60, 0), UnitClass::HoursMinutes);  // the "<h>h" literal
      if (h > 0 && m > 0) add(Decimal(m, 0), UnitClass::Minutes);   // the "<m>m" literal
    }
  }

  std::vector<AllowedNumber> sorted() && {
    std::sort(numbers.begin(), numbers.end(), [](const AllowedNumber& a, const AllowedNumber& b) {
      if (a.cls != b.cls) return a.cls < b.cls;
      if (a.value != b.value) return a.value < b.value;
      return a.value.places() < b.value.places();
    });
    return std::move(numbers);
  }
};

}  // namespace

FactBank build_fact_bank(const UserNightRecord& record,
                         const std::vector<ComparisonFact>& comparisons,
                         const RankingDecision& ranking,
                         const AttributionSet& attribution) {
  FactBank bank;
  bank.night = record.key();

  for (const auto& [id, value] : record.values) {
    const auto& info = metric_info(id);
    bank.values[id] = MetricValueEntry{value, std::string(info.unit), info.precision};
  }

  for (const auto& fact : comparisons) {
    if (!record.values.count(fact.metric)) {
      throw InconsistentNightError("comparison for " + metric_name(fact.metric) +
                                   " has no value in record " + record.key().to_string());
    }
    bank.comparisons[fact.metric] = fact;
  }

  if (!bank.comparisons.count(ranking.selected)) {
    throw MissingComparisonError("selected metric " + metric_name(ranking.selected) +
                                 " lacks a comparison");
  }
  bank.selected = ranking.selected;
  bank.allowed_tags = attribution.names();

  NumberCollector collector;
  for (const auto& [id, entry] : bank.values) {
    collector.add_value_forms(id, entry.value);
  }
  for (const auto& [id, fact] : bank.comparisons) {
    collector.add_value_forms(id, fact.baseline_mean);
    std::int64_t pct = fact.pct_delta < 0 ? -fact.pct_delta : fact.pct_delta;
    collector.add(Decimal(pct, 0), UnitClass::Percent);
  }
  bank.allowed_numbers = std::move(collector).sorted();
  return bank;
}

namespace {

bool is_duration_class(UnitClass cls) {
  return cls == UnitClass::Minutes || cls == UnitClass::HoursMinutes;
}

// haz(fact_minutes / 60) at `places`, compared against the hour literal.
bool matches_as_hours(const Decimal& fact_minutes, const Decimal& claim_hours, int places) {
  return fact_minutes.divided_haz(60, places) == claim_hours;
}

}  // namespace

bool number_supported(const Decimal& surface_value, int places, UnitClass cls, NumberForm form,
                      const std::vector<AllowedNumber>& allowed) {
  switch (form) {
    case NumberForm::Plain: {
      Decimal target = cls == UnitClass::Percent ? surface_value.abs() : surface_value;
      for (const auto& fact : allowed) {
        if (fact.cls != cls) continue;
        if (fact.value.round_half_away(places) == target) return true;
      }
      return false;
    }
    case NumberForm::HoursUnit: {
      // surface_value is the hour literal as written ("7.5").
      for (const auto& fact : allowed) {
        if (!is_duration_class(fact.cls)) continue;
        if (matches_as_hours(fact.value, surface_value, places)) return true;
      }
      return false;
    }
    case NumberForm::HoursMinutes: {
      // surface_value is whole minutes.
      for (const auto& fact : allowed) {
        if (!is_duration_class(fact.cls)) continue;
        if (fact.value.round_half_away(0) == surface_value) return true;
      }
      return false;
    }
  }
  return false;
}

}  // namespace tfts
