#include "tfts/cohort/cohort.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "tfts/core/errors.hpp"
#include "tfts/core/rng.hpp"
#include "tfts/core/serde.hpp"

namespace tfts::cohort {

namespace {

constexpr double kNightNoise = 0.10;     // per-night value perturbation
constexpr double kFractionNoise = 0.05;  // per-night sleep-stage fraction jitter
constexpr double kSecondEventFactor = 0.3;

struct Range {
  double lo;
  double hi;
};

// Per-user baseline ranges. Stage metrics are derived from duration via the
// fraction ranges below; fraction maxima sum to 0.95 so the stage-sum
// invariant holds even at full upward jitter.
constexpr Range kScoreRange{70.0, 92.0};
constexpr Range kDurationRange{400.0, 520.0};
constexpr Range kDeepFracRange{0.12, 0.20};
constexpr Range kRemFracRange{0.15, 0.25};
constexpr Range kLightFracRange{0.40, 0.50};
constexpr Range kHrvRange{30.0, 70.0};
constexpr Range kHeartRateRange{50.0, 70.0};
constexpr Range kRespRateRange{13.0, 17.0};
constexpr Range kSnoreRange{2.0, 12.0};

struct UserBaseline {
  double score;
  double duration;
  double deep_frac;
  double rem_frac;
  double light_frac;
  double hrv;
  double heart_rate;
  double resp_rate;
  double snore;
};

// Draw order here is part of the cohort format; do not reorder.
UserBaseline draw_user_baseline(SplitMix64& rng) {
  UserBaseline b;
  b.score = rng.next_range(kScoreRange.lo, kScoreRange.hi);
  b.duration = rng.next_range(kDurationRange.lo, kDurationRange.hi);
  b.deep_frac = rng.next_range(kDeepFracRange.lo, kDeepFracRange.hi);
  b.rem_frac = rng.next_range(kRemFracRange.lo, kRemFracRange.hi);
  b.light_frac = rng.next_range(kLightFracRange.lo, kLightFracRange.hi);
  b.hrv = rng.next_range(kHrvRange.lo, kHrvRange.hi);
  b.heart_rate = rng.next_range(kHeartRateRange.lo, kHeartRateRange.hi);
  b.resp_rate = rng.next_range(kRespRateRange.lo, kRespRateRange.hi);
  b.snore = rng.next_range(kSnoreRange.lo, kSnoreRange.hi);
  return b;
}

Decimal quantize(double value, int places) {
  double scale = std::pow(10.0, places);
  return Decimal(std::llround(value * scale), places);
}

Decimal clamp_decimal(Decimal v, const Decimal& lo, const Decimal& hi) {
  if (v < lo) return lo;
  if (v > hi) return hi;
  return v;
}

}  // namespace

const std::vector<TagName>& default_tag_vocabulary() {
  static const std::vector<TagName> vocab = {"Alcohol", "Stress", "Sick", "Fever"};
  return vocab;
}

const std::map<TagName, EffectProfile>& default_effect_profiles() {
  static const std::map<TagName, EffectProfile> profiles = {
      {"Alcohol",
       {{MetricId::HrvMs, 0.82},
        {MetricId::HeartRateBpm, 1.10},
        {MetricId::DeepMin, 0.85},
        {MetricId::SleepScore, 0.92}}},
      {"Stress",
       {{MetricId::HrvMs, 0.88}, {MetricId::SleepScore, 0.93}, {MetricId::DurationMin, 0.95}}},
      {"Sick",
       {{MetricId::HrvMs, 0.90},
        {MetricId::RespRateBrpm, 1.12},
        {MetricId::SleepScore, 0.88}}},
      {"Fever",
       {{MetricId::HeartRateBpm, 1.15},
        {MetricId::RespRateBrpm, 1.15},
        {MetricId::SleepScore, 0.85}}},
  };
  return profiles;
}

CohortSpec CohortSpec::defaults() {
  CohortSpec spec;
  spec.effect_profiles = default_effect_profiles();
  return spec;
}

void CohortSpec::validate() const {
  if (n_users < 1) throw InvalidSpecError("n_users must be >= 1");
  if (nights_per_user < 1) throw InvalidSpecError("nights_per_user must be >= 1");
  if (event_rate < 0.0 || event_rate > 1.0) throw InvalidSpecError("event_rate must be in [0,1]");
}

std::string user_id_for_index(int index, int n_users) {
  int width = 3;
  for (int n = n_users; n >= 1000; n /= 10) ++width;
  std::string digits = std::to_string(index + 1);
  return "u" + std::string(static_cast<std::size_t>(width) - digits.size(), '0') + digits;
}

namespace {

std::vector<UserNightRecord> generate_user_nights(const CohortSpec& spec, int user_index) {
  const std::string uid = user_id_for_index(user_index, spec.n_users);
  SplitMix64 user_rng = substream(spec.seed, "user:" + uid);
  const UserBaseline base = draw_user_baseline(user_rng);
  const auto& vocab = default_tag_vocabulary();

  std::vector<UserNightRecord> nights;
  nights.reserve(static_cast<std::size_t>(spec.nights_per_user));

  for (int n = 0; n < spec.nights_per_user; ++n) {
    UserNightRecord rec;
    rec.user_id = uid;
    rec.date = spec.start_date.plus_days(n);
    SplitMix64 rng = substream(spec.seed, "night:" + uid + ":" + rec.date.to_string());

    // Fixed draw order: duration, stage fractions, remaining metrics, events.
    double duration_noise = rng.next_range(-kNightNoise, kNightNoise);
    double deep_jitter = rng.next_range(-kFractionNoise, kFractionNoise);
    double rem_jitter = rng.next_range(-kFractionNoise, kFractionNoise);
    double light_jitter = rng.next_range(-kFractionNoise, kFractionNoise);
    double score_noise = rng.next_range(-kNightNoise, kNightNoise);
    double hrv_noise = rng.next_range(-kNightNoise, kNightNoise);
    double hr_noise = rng.next_range(-kNightNoise, kNightNoise);
    double resp_noise = rng.next_range(-kNightNoise, kNightNoise);
    double snore_noise = rng.next_range(-kNightNoise, kNightNoise);

    if (rng.next_unit() < spec.event_rate) {
      std::size_t tag_idx = static_cast<std::size_t>(rng.next_below(vocab.size()));
      std::size_t strength_idx =
          static_cast<std::size_t>(rng.next_below(event_strength_ladder().size()));
      rec.events.push_back({vocab[tag_idx], event_strength_ladder()[strength_idx], ""});
      if (rng.next_unit() < spec.event_rate * kSecondEventFactor && vocab.size() > 1) {
        std::size_t other = static_cast<std::size_t>(rng.next_below(vocab.size() - 1));
        if (other >= tag_idx) ++other;
        std::size_t strength2 =
            static_cast<std::size_t>(rng.next_below(event_strength_ladder().size()));
        rec.events.push_back({vocab[other], event_strength_ladder()[strength2], ""});
      }
    }

    auto event_multiplier = [&](MetricId id) {
      double mult = 1.0;
      for (const auto& event : rec.events) {
        auto profile = spec.effect_profiles.find(event.tag);
        if (profile == spec.effect_profiles.end()) continue;
        auto shift = profile->second.find(id);
        if (shift == profile->second.end()) continue;
        mult *= 1.0 + (shift->second - 1.0) * event.strength.to_double();
      }
      return mult;
    };

    double duration_raw =
        base.duration * (1.0 + duration_noise) * event_multiplier(MetricId::DurationMin);
    Decimal duration = clamp_decimal(quantize(duration_raw, 0), Decimal(60, 0), Decimal(1440, 0));

    double dur = static_cast<double>(duration.units());
    Decimal deep = quantize(dur * base.deep_frac * (1.0 + deep_jitter) *
                                event_multiplier(MetricId::DeepMin),
                            0);
    Decimal rem = quantize(dur * base.rem_frac * (1.0 + rem_jitter) *
                               event_multiplier(MetricId::RemMin),
                           0);
    Decimal light = quantize(dur * base.light_frac * (1.0 + light_jitter) *
                                 event_multiplier(MetricId::LightMin),
                             0);
    // Rounding can push the stage sum one or two minutes past the duration;
    // light absorbs the excess.
    std::int64_t excess = deep.units() + rem.units() + light.units() - duration.units();
    if (excess > 0) {
      light = Decimal(std::max<std::int64_t>(0, light.units() - excess), 0);
    }

    Decimal score = clamp_decimal(quantize(base.score * (1.0 + score_noise) *
                                               event_multiplier(MetricId::SleepScore),
                                           0),
                                  Decimal(0, 0), Decimal(100, 0));
    Decimal hrv = quantize(base.hrv * (1.0 + hrv_noise) * event_multiplier(MetricId::HrvMs), 1);
    Decimal heart_rate = quantize(
        base.heart_rate * (1.0 + hr_noise) * event_multiplier(MetricId::HeartRateBpm), 1);
    Decimal resp_rate = quantize(
        base.resp_rate * (1.0 + resp_noise) * event_multiplier(MetricId::RespRateBrpm), 1);
    Decimal snore = clamp_decimal(
        quantize(base.snore * (1.0 + snore_noise) * event_multiplier(MetricId::SnorePct), 1),
        Decimal(0, 1), Decimal(1000, 1));

    rec.values[MetricId::SleepScore] = score;
    rec.values[MetricId::DurationMin] = duration;
    rec.values[MetricId::DeepMin] = deep;
    rec.values[MetricId::RemMin] = rem;
    rec.values[MetricId::LightMin] = light;
    rec.values[MetricId::HrvMs] = hrv;
    rec.values[MetricId::HeartRateBpm] = heart_rate;
    rec.values[MetricId::RespRateBrpm] = resp_rate;
    rec.values[MetricId::SnorePct] = snore;

    nights.push_back(std::move(rec));
  }
  return nights;
}

}  // namespace

std::vector<UserNightRecord> generate_cohort(const CohortSpec& spec, const ExecPolicy& policy) {
  spec.validate();
  std::vector<std::vector<UserNightRecord>> per_user(static_cast<std::size_t>(spec.n_users));
  parallel_for_index(per_user.size(), policy, [&](std::size_t u) {
    per_user[u] = generate_user_nights(spec, static_cast<int>(u));
  });
  std::vector<UserNightRecord> all;
  all.reserve(static_cast<std::size_t>(spec.n_users) *
              static_cast<std::size_t>(spec.nights_per_user));
  for (auto& nights : per_user) {
    for (auto& rec : nights) all.push_back(std::move(rec));
  }
  return all;
}

std::vector<UserNightRecord> load_records(const std::string& path) {
  return load_records(path, default_tag_vocabulary());
}

std::vector<UserNightRecord> load_records(const std::string& path,
                                          const std::vector<TagName>& tag_vocabulary) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  std::vector<UserNightRecord> records;
  std::string line;
  std::int64_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    Json j = Json::parse(line, nullptr, false);
    if (j.is_discarded()) throw CohortParseError(line_no, "invalid JSON");
    UserNightRecord rec;
    try {
      rec = record_from_json(j);
    } catch (const SerdeError& e) {
      throw CohortParseError(line_no, e.what());
    }
    rec.validate(tag_vocabulary, line_no);
    records.push_back(std::move(rec));
  }
  return records;
}

void write_records(const std::string& path, const std::vector<UserNightRecord>& records) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  for (const auto& rec : records) {
    out << record_to_json(rec).dump() << "\n";
  }
  if (!out) throw IoError("write failed: " + path);
}

}  // namespace tfts::cohort
