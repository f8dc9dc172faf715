#pragma once

#include <vector>

#include "tfts/core/types.hpp"

namespace tfts {

// Collects the verified facts for one night: current values for every metric
// present, baseline means and |pct_delta| for every compared metric, duration
// values additionally in h/m literal form, and the evidence-gated tags.
// Throws InconsistentNightError when a comparison references a metric absent
// from the record, MissingComparisonError when the selected metric has none.
FactBank build_fact_bank(const UserNightRecord& record,
                         const std::vector<ComparisonFact>& comparisons,
                         const RankingDecision& ranking,
                         const AttributionSet& attribution);

// Surface form of a numeric literal, which fixes how rounding is applied
// when checking it against the fact set.
enum class NumberForm : std::uint8_t {
  Plain,         // "34", "34.2", "17%", "470 min"
  HoursUnit,     // "8 h", "7.5 hours"
  HoursMinutes,  // "7h 50m"
};

// True iff some allowed number of a compatible unit class, rounded half away
// from zero at the literal's displayed precision (in the literal's surface
// unit), equals the literal. `surface_value` is the number as written, except
// for h/m compounds where it is the total in minutes. Percent literals match
// by absolute value.
bool number_supported(const Decimal& surface_value, int places, UnitClass cls, NumberForm form,
                      const std::vector<AllowedNumber>& allowed);

}  // namespace tfts
