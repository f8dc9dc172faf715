#pragma once
// Seeded synthetic cohorts shaped like the evaluation dataset (20 users x 14
// nights by default), plus JSONL ingestion of externally supplied records.
// Generation is a pure function of the spec: per-user baselines and per-night
// noise come from named substreams, so any run of the same spec produces a
// byte-identical cohort regardless of thread count.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "tfts/core/parallel.hpp"
#include "tfts/core/types.hpp"

namespace tfts::cohort {

// Multiplicative shift per metric at full event strength; an event with
// strength s applies 1 + (shift - 1) * s.
using EffectProfile = std::map<MetricId, double>;

struct CohortSpec {
  std::uint64_t seed = 7;
  int n_users = 20;
  int nights_per_user = 14;
  Date start_date{2026, 1, 1};
  double event_rate = 0.3;  // probability a night logs an event
  std::map<TagName, EffectProfile> effect_profiles;

  static CohortSpec defaults();
  void validate() const;  // throws InvalidSpecError
};

const std::vector<TagName>& default_tag_vocabulary();  // Alcohol, Stress, Sick, Fever
const std::map<TagName, EffectProfile>& default_effect_profiles();

// Event strengths are drawn from this ladder so the 0.5 attribution threshold
// is exercised from both sides.
inline const std::vector<Decimal>& event_strength_ladder() {
  static const std::vector<Decimal> ladder = {Decimal(3, 1), Decimal(6, 1), Decimal(9, 1)};
  return ladder;
}

std::vector<UserNightRecord> generate_cohort(const CohortSpec& spec,
                                             const ExecPolicy& policy = ExecPolicy{});

// Reference implementation used by the determinism tests and the benchmark.
inline std::vector<UserNightRecord> generate_cohort_serial(const CohortSpec& spec) {
  return generate_cohort(spec, ExecPolicy::serial());
}

// JSONL, one record per line. Parse problems raise CohortParseError with the
// 1-based line number; invariant problems raise InvariantViolationError.
std::vector<UserNightRecord> load_records(const std::string& path);
std::vector<UserNightRecord> load_records(const std::string& path,
                                          const std::vector<TagName>& tag_vocabulary);

void write_records(const std::string& path, const std::vector<UserNightRecord>& records);

std::string user_id_for_index(int index, int n_users);

}  // namespace tfts::cohort
