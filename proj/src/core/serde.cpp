#include "tfts/core/serde.hpp"

#include <algorithm>

namespace tfts {

ObjReader::ObjReader(const Json& j, std::string context)
    : json_(j), context_(std::move(context)) {
  if (!j.is_object()) throw SerdeError(context_ + ": expected object");
}

const Json& ObjReader::require(const std::string& key) {
  auto it = json_.find(key);
  if (it == json_.end()) throw SerdeError(context_ + ": missing field '" + key + "'");
  consumed_.push_back(key);
  return *it;
}

const Json* ObjReader::optional(const std::string& key) {
  auto it = json_.find(key);
  if (it == json_.end()) return nullptr;
  consumed_.push_back(key);
  return &*it;
}

void ObjReader::finish() {
  for (auto it = json_.begin(); it != json_.end(); ++it) {
    if (std::find(consumed_.begin(), consumed_.end(), it.key()) == consumed_.end()) {
      throw SerdeError(context_ + ": unknown field '" + it.key() + "'");
    }
  }
}

std::string require_string(const Json& j, const std::string& context) {
  if (!j.is_string()) throw SerdeError(context + ": expected string");
  return j.get<std::string>();
}

std::int64_t require_int(const Json& j, const std::string& context) {
  if (!j.is_number_integer()) throw SerdeError(context + ": expected integer");
  return j.get<std::int64_t>();
}

bool require_bool(const Json& j, const std::string& context) {
  if (!j.is_boolean()) throw SerdeError(context + ": expected boolean");
  return j.get<bool>();
}

Decimal require_decimal(const Json& j, const std::string& context) {
  try {
    return Decimal::parse(require_string(j, context));
  } catch (const std::invalid_argument& e) {
    throw SerdeError(context + ": " + e.what());
  } catch (const std::out_of_range& e) {
    throw SerdeError(context + ": " + e.what());
  }
}

MetricId require_metric(const Json& j, const std::string& context) {
  auto id = metric_from_name(require_string(j, context));
  if (!id) throw SerdeError(context + ": unknown metric");
  return *id;
}

Date require_date(const Json& j, const std::string& context) {
  try {
    return Date::parse(require_string(j, context));
  } catch (const std::invalid_argument& e) {
    throw SerdeError(context + ": " + e.what());
  }
}

Json event_to_json(const LoggedEvent& e) {
  Json j;
  j["tag"] = e.tag;
  j["strength"] = e.strength.to_string();
  if (!e.note.empty()) j["note"] = e.note;
  return j;
}

LoggedEvent event_from_json(const Json& j) {
  ObjReader r(j, "event");
  LoggedEvent e;
  e.tag = require_string(r.require("tag"), "event.tag");
  e.strength = require_decimal(r.require("strength"), "event.strength");
  if (const Json* note = r.optional("note")) e.note = require_string(*note, "event.note");
  r.finish();
  return e;
}

Json record_to_json(const UserNightRecord& rec) {
  Json j;
  j["user_id"] = rec.user_id;
  j["date"] = rec.date.to_string();
  Json values = Json::object();
  for (const auto& [id, value] : rec.values) values[metric_name(id)] = value.to_string();
  j["values"] = values;
  Json events = Json::array();
  for (const auto& e : rec.events) events.push_back(event_to_json(e));
  j["events"] = events;
  return j;
}

UserNightRecord record_from_json(const Json& j) {
  ObjReader r(j, "record");
  UserNightRecord rec;
  rec.user_id = require_string(r.require("user_id"), "record.user_id");
  rec.date = require_date(r.require("date"), "record.date");
  const Json& values = r.require("values");
  if (!values.is_object()) throw SerdeError("record.values: expected object");
  for (auto it = values.begin(); it != values.end(); ++it) {
    auto id = metric_from_name(it.key());
    if (!id) throw SerdeError("record.values: unknown metric '" + it.key() + "'");
    if (rec.values.count(*id)) throw SerdeError("record.values: duplicate metric");
    rec.values[*id] = require_decimal(*it, "record.values." + it.key());
  }
  const Json& events = r.require("events");
  if (!events.is_array()) throw SerdeError("record.events: expected array");
  for (const auto& e : events) rec.events.push_back(event_from_json(e));
  r.finish();
  return rec;
}

Json baseline_to_json(const BaselineStats& b) {
  Json j;
  j["metric"] = metric_name(b.metric);
  if (b.mean) j["mean"] = b.mean->to_string();
  if (b.std_dev) j["std"] = b.std_dev->to_string();
  j["count"] = b.count;
  return j;
}

BaselineStats baseline_from_json(const Json& j) {
  ObjReader r(j, "baseline");
  BaselineStats b;
  b.metric = require_metric(r.require("metric"), "baseline.metric");
  if (const Json* mean = r.optional("mean")) b.mean = require_decimal(*mean, "baseline.mean");
  if (const Json* sd = r.optional("std")) b.std_dev = require_decimal(*sd, "baseline.std");
  b.count = require_int(r.require("count"), "baseline.count");
  if (b.count < 0) throw SerdeError("baseline.count: must be >= 0");
  if ((b.count == 0) == b.mean.has_value()) {
    throw SerdeError("baseline.mean: defined iff count > 0");
  }
  r.finish();
  return b;
}

Json comparison_to_json(const ComparisonFact& c) {
  Json j;
  j["metric"] = metric_name(c.metric);
  j["current"] = c.current.to_string();
  j["baseline_mean"] = c.baseline_mean.to_string();
  j["pct_delta"] = c.pct_delta;
  j["direction"] = direction_name(c.direction);
  j["display"] = c.display;
  return j;
}

ComparisonFact comparison_from_json(const Json& j) {
  ObjReader r(j, "comparison");
  ComparisonFact c;
  c.metric = require_metric(r.require("metric"), "comparison.metric");
  c.current = require_decimal(r.require("current"), "comparison.current");
  c.baseline_mean = require_decimal(r.require("baseline_mean"), "comparison.baseline_mean");
  c.pct_delta = require_int(r.require("pct_delta"), "comparison.pct_delta");
  std::string dir = require_string(r.require("direction"), "comparison.direction");
  if (dir == "up") c.direction = Direction::Up;
  else if (dir == "down") c.direction = Direction::Down;
  else if (dir == "flat") c.direction = Direction::Flat;
  else throw SerdeError("comparison.direction: unknown value");
  c.display = require_string(r.require("display"), "comparison.display");
  r.finish();
  bool sign_ok = (c.pct_delta == 0 && c.direction == Direction::Flat) ||
                 (c.pct_delta > 0 && c.direction == Direction::Up) ||
                 (c.pct_delta < 0 && c.direction == Direction::Down);
  if (!sign_ok) throw SerdeError("comparison.direction: inconsistent with pct_delta");
  if (c.display !=
      ComparisonFact::render_display(c.metric, c.current, c.baseline_mean, c.pct_delta)) {
    throw SerdeError("comparison.display: does not regenerate from fields");
  }
  return c;
}

Json ranking_to_json(const RankingDecision& rank) {
  Json j;
  j["selected"] = metric_name(rank.selected);
  Json scores = Json::object();
  for (const auto& [id, score] : rank.scores) scores[metric_name(id)] = score.to_string();
  j["scores"] = scores;
  Json eligible = Json::array();
  for (MetricId id : rank.eligible) eligible.push_back(metric_name(id));
  j["eligible"] = eligible;
  j["rule_version"] = rank.rule_version;
  return j;
}

RankingDecision ranking_from_json(const Json& j) {
  ObjReader r(j, "ranking");
  RankingDecision rank;
  rank.selected = require_metric(r.require("selected"), "ranking.selected");
  const Json& scores = r.require("scores");
  if (!scores.is_object()) throw SerdeError("ranking.scores: expected object");
  for (auto it = scores.begin(); it != scores.end(); ++it) {
    auto id = metric_from_name(it.key());
    if (!id) throw SerdeError("ranking.scores: unknown metric '" + it.key() + "'");
    rank.scores[*id] = require_decimal(*it, "ranking.scores." + it.key());
  }
  const Json& eligible = r.require("eligible");
  if (!eligible.is_array()) throw SerdeError("ranking.eligible: expected array");
  for (const auto& e : eligible) {
    rank.eligible.push_back(require_metric(e, "ranking.eligible"));
  }
  rank.rule_version = require_string(r.require("rule_version"), "ranking.rule_version");
  r.finish();
  if (std::find(rank.eligible.begin(), rank.eligible.end(), rank.selected) ==
      rank.eligible.end()) {
    throw SerdeError("ranking.selected: not in eligible set");
  }
  if (!std::is_sorted(rank.eligible.begin(), rank.eligible.end())) {
    throw SerdeError("ranking.eligible: must be in catalog order");
  }
  return rank;
}

Json attribution_to_json(const AttributionSet& a) {
  Json j;
  Json allowed = Json::array();
  for (const auto& entry : a.allowed) {
    Json e;
    e["tag"] = entry.tag;
    e["evidence"] = entry.evidence.to_string();
    allowed.push_back(e);
  }
  j["allowed"] = allowed;
  j["threshold"] = a.threshold.to_string();
  return j;
}

AttributionSet attribution_from_json(const Json& j) {
  ObjReader r(j, "attribution");
  AttributionSet a;
  const Json& allowed = r.require("allowed");
  if (!allowed.is_array()) throw SerdeError("attribution.allowed: expected array");
  for (const auto& item : allowed) {
    ObjReader er(item, "attribution.allowed[]");
    AttributionEntry entry;
    entry.tag = require_string(er.require("tag"), "attribution.allowed[].tag");
    entry.evidence = require_decimal(er.require("evidence"), "attribution.allowed[].evidence");
    er.finish();
    a.allowed.push_back(entry);
  }
  a.threshold = require_decimal(r.require("threshold"), "attribution.threshold");
  r.finish();
  for (std::size_t i = 0; i < a.allowed.size(); ++i) {
    if (a.allowed[i].evidence < a.threshold) {
      throw SerdeError("attribution.allowed: evidence below threshold");
    }
    for (std::size_t k = i + 1; k < a.allowed.size(); ++k) {
      if (a.allowed[i].tag == a.allowed[k].tag) {
        throw SerdeError("attribution.allowed: duplicate tag");
      }
    }
    if (i > 0) {
      const auto& prev = a.allowed[i - 1];
      const auto& cur = a.allowed[i];
      bool ordered = prev.evidence > cur.evidence ||
                     (prev.evidence == cur.evidence && prev.tag < cur.tag);
      if (!ordered) throw SerdeError("attribution.allowed: not in canonical order");
    }
  }
  return a;
}

Json allowed_number_to_json(const AllowedNumber& n) {
  Json j;
  j["value"] = n.value.to_string();
  j["unit_class"] = unit_class_name(n.cls);
  return j;
}

AllowedNumber allowed_number_from_json(const Json& j) {
  ObjReader r(j, "allowed_number");
  AllowedNumber n;
  n.value = require_decimal(r.require("value"), "allowed_number.value");
  auto cls = unit_class_from_name(require_string(r.require("unit_class"), "allowed_number.unit_class"));
  if (!cls) throw SerdeError("allowed_number.unit_class: unknown value");
  n.cls = *cls;
  r.finish();
  return n;
}

Json bank_to_json(const FactBank& b) {
  Json j;
  Json night;
  night["user_id"] = b.night.user_id;
  night["date"] = b.night.date.to_string();
  j["night"] = night;
  Json values = Json::object();
  for (const auto& [id, entry] : b.values) {
    Json v;
    v["value"] = entry.value.to_string();
    v["unit"] = entry.unit;
    v["precision"] = entry.precision;
    values[metric_name(id)] = v;
  }
  j["values"] = values;
  Json comparisons = Json::object();
  for (const auto& [id, fact] : b.comparisons) comparisons[metric_name(id)] = comparison_to_json(fact);
  j["comparisons"] = comparisons;
  Json numbers = Json::array();
  for (const auto& n : b.allowed_numbers) numbers.push_back(allowed_number_to_json(n));
  j["allowed_numbers"] = numbers;
  j["allowed_tags"] = b.allowed_tags;
  j["selected"] = metric_name(b.selected);
  return j;
}

FactBank bank_from_json(const Json& j) {
  ObjReader r(j, "fact_bank");
  FactBank b;
  {
    ObjReader nr(r.require("night"), "fact_bank.night");
    b.night.user_id = require_string(nr.require("user_id"), "fact_bank.night.user_id");
    b.night.date = require_date(nr.require("date"), "fact_bank.night.date");
    nr.finish();
  }
  const Json& values = r.require("values");
  if (!values.is_object()) throw SerdeError("fact_bank.values: expected object");
  for (auto it = values.begin(); it != values.end(); ++it) {
    auto id = metric_from_name(it.key());
    if (!id) throw SerdeError("fact_bank.values: unknown metric '" + it.key() + "'");
    ObjReader vr(*it, "fact_bank.values." + it.key());
    MetricValueEntry entry;
    entry.value = require_decimal(vr.require("value"), "fact_bank.values.value");
    entry.unit = require_string(vr.require("unit"), "fact_bank.values.unit");
    entry.precision = static_cast<int>(require_int(vr.require("precision"), "fact_bank.values.precision"));
    vr.finish();
    b.values[*id] = entry;
  }
  const Json& comparisons = r.require("comparisons");
  if (!comparisons.is_object()) throw SerdeError("fact_bank.comparisons: expected object");
  for (auto it = comparisons.begin(); it != comparisons.end(); ++it) {
    auto id = metric_from_name(it.key());
    if (!id) throw SerdeError("fact_bank.comparisons: unknown metric");
    b.comparisons[*id] = comparison_from_json(*it);
  }
  const Json& numbers = r.require("allowed_numbers");
  if (!numbers.is_array()) throw SerdeError("fact_bank.allowed_numbers: expected array");
  for (const auto& n : numbers) b.allowed_numbers.push_back(allowed_number_from_json(n));
  const Json& tags = r.require("allowed_tags");
  if (!tags.is_array()) throw SerdeError("fact_bank.allowed_tags: expected array");
  for (const auto& t : tags) b.allowed_tags.push_back(require_string(t, "fact_bank.allowed_tags"));
  b.selected = require_metric(r.require("selected"), "fact_bank.selected");
  r.finish();
  return b;
}

Json chart_point_to_json(const ChartPoint& p) {
  Json j;
  j["date"] = p.date.to_string();
  j["value"] = p.value.to_string();
  return j;
}

ChartPoint chart_point_from_json(const Json& j) {
  ObjReader r(j, "chart_point");
  ChartPoint p;
  p.date = require_date(r.require("date"), "chart_point.date");
  p.value = require_decimal(r.require("value"), "chart_point.value");
  r.finish();
  return p;
}

Json packet_to_json(const WriterPacket& p) {
  Json j;
  j["schema_id"] = p.schema_id;
  j["selected"] = metric_name(p.selected);
  j["comparison_display"] = p.comparison_display;
  Json numbers = Json::array();
  for (const auto& n : p.allowed_numbers) numbers.push_back(allowed_number_to_json(n));
  j["allowed_numbers"] = numbers;
  Json tags = Json::array();
  for (const auto& t : p.allowed_tags) {
    Json e;
    e["tag"] = t.tag;
    e["evidence"] = t.evidence.to_string();
    tags.push_back(e);
  }
  j["allowed_tags"] = tags;
  j["no_tags_permitted"] = p.no_tags_permitted;
  Json chart = Json::array();
  for (const auto& c : p.chart) chart.push_back(chart_point_to_json(c));
  j["chart"] = chart;
  Json style;
  style["title_max_chars"] = p.style_constraints.title_max_chars;
  style["core_insight_max_chars"] = p.style_constraints.core_insight_max_chars;
  style["how_to_improve_max_chars"] = p.style_constraints.how_to_improve_max_chars;
  j["style_constraints"] = style;
  return j;
}

WriterPacket packet_from_json(const Json& j) {
  ObjReader r(j, "packet");
  WriterPacket p;
  p.schema_id = require_string(r.require("schema_id"), "packet.schema_id");
  p.selected = require_metric(r.require("selected"), "packet.selected");
  p.comparison_display = require_string(r.require("comparison_display"), "packet.comparison_display");
  const Json& numbers = r.require("allowed_numbers");
  if (!numbers.is_array()) throw SerdeError("packet.allowed_numbers: expected array");
  for (const auto& n : numbers) p.allowed_numbers.push_back(allowed_number_from_json(n));
  const Json& tags = r.require("allowed_tags");
  if (!tags.is_array()) throw SerdeError("packet.allowed_tags: expected array");
  for (const auto& t : tags) {
    ObjReader tr(t, "packet.allowed_tags[]");
    AttributionEntry entry;
    entry.tag = require_string(tr.require("tag"), "packet.allowed_tags[].tag");
    entry.evidence = require_decimal(tr.require("evidence"), "packet.allowed_tags[].evidence");
    tr.finish();
    p.allowed_tags.push_back(entry);
  }
  p.no_tags_permitted = require_bool(r.require("no_tags_permitted"), "packet.no_tags_permitted");
  const Json& chart = r.require("chart");
  if (!chart.is_array()) throw SerdeError("packet.chart: expected array");
  for (const auto& c : chart) p.chart.push_back(chart_point_from_json(c));
  {
    ObjReader sr(r.require("style_constraints"), "packet.style_constraints");
    p.style_constraints.title_max_chars =
        static_cast<int>(require_int(sr.require("title_max_chars"), "packet.style.title"));
    p.style_constraints.core_insight_max_chars =
        static_cast<int>(require_int(sr.require("core_insight_max_chars"), "packet.style.core"));
    p.style_constraints.how_to_improve_max_chars =
        static_cast<int>(require_int(sr.require("how_to_improve_max_chars"), "packet.style.how"));
    sr.finish();
  }
  r.finish();
  if (p.no_tags_permitted != p.allowed_tags.empty()) {
    throw SerdeError("packet.no_tags_permitted: inconsistent with allowed_tags");
  }
  return p;
}

Json output_to_json(const InsightOutput& o) {
  Json j;
  Json headline;
  headline["title"] = o.headline.title;
  headline["core_insight"] = o.headline.core_insight;
  headline["how_to_improve"] = o.headline.how_to_improve;
  j["headline"] = headline;
  Json card;
  card["metric_id"] = metric_name(o.analysis_card.metric_id);
  card["finding_statement"] = o.analysis_card.finding_statement;
  card["tags"] = o.analysis_card.tags;
  Json chart = Json::array();
  for (const auto& c : o.analysis_card.chart) chart.push_back(chart_point_to_json(c));
  card["chart"] = chart;
  j["analysis_card"] = card;
  return j;
}

InsightOutput output_from_json(const Json& j) {
  ObjReader r(j, "output");
  InsightOutput o;
  {
    ObjReader hr(r.require("headline"), "output.headline");
    o.headline.title = require_string(hr.require("title"), "output.headline.title");
    o.headline.core_insight = require_string(hr.require("core_insight"), "output.headline.core_insight");
    o.headline.how_to_improve =
        require_string(hr.require("how_to_improve"), "output.headline.how_to_improve");
    hr.finish();
  }
  {
    ObjReader cr(r.require("analysis_card"), "output.analysis_card");
    o.analysis_card.metric_id = require_metric(cr.require("metric_id"), "output.analysis_card.metric_id");
    o.analysis_card.finding_statement =
        require_string(cr.require("finding_statement"), "output.analysis_card.finding_statement");
    const Json& tags = cr.require("tags");
    if (!tags.is_array()) throw SerdeError("output.analysis_card.tags: expected array");
    for (const auto& t : tags) {
      o.analysis_card.tags.push_back(require_string(t, "output.analysis_card.tags"));
    }
    const Json& chart = cr.require("chart");
    if (!chart.is_array()) throw SerdeError("output.analysis_card.chart: expected array");
    for (const auto& c : chart) o.analysis_card.chart.push_back(chart_point_from_json(c));
    cr.finish();
  }
  r.finish();
  return o;
}

Json usage_to_json(const Usage& u) {
  Json j;
  Json calls = Json::array();
  for (const auto& c : u.calls) {
    Json e;
    e["input_tokens"] = c.input_tokens;
    e["output_tokens"] = c.output_tokens;
    calls.push_back(e);
  }
  j["calls"] = calls;
  return j;
}

Usage usage_from_json(const Json& j) {
  ObjReader r(j, "usage");
  Usage u;
  const Json& calls = r.require("calls");
  if (!calls.is_array()) throw SerdeError("usage.calls: expected array");
  for (const auto& c : calls) {
    ObjReader cr(c, "usage.calls[]");
    CallUsage cu;
    cu.input_tokens = require_int(cr.require("input_tokens"), "usage.calls[].input_tokens");
    cu.output_tokens = require_int(cr.require("output_tokens"), "usage.calls[].output_tokens");
    cr.finish();
    if (cu.input_tokens < 0 || cu.output_tokens < 0) {
      throw SerdeError("usage.calls[]: token counts must be >= 0");
    }
    u.calls.push_back(cu);
  }
  r.finish();
  return u;
}

Json schema_error_to_json(const SchemaError& e) {
  Json j;
  j["kind"] = schema_error_kind_name(e.kind);
  j["detail"] = e.detail;
  return j;
}

SchemaError schema_error_from_json(const Json& j) {
  ObjReader r(j, "schema_error");
  SchemaError e;
  std::string kind = require_string(r.require("kind"), "schema_error.kind");
  if (kind == "parse") e.kind = SchemaErrorKind::Parse;
  else if (kind == "missing_field") e.kind = SchemaErrorKind::MissingField;
  else if (kind == "wrong_type") e.kind = SchemaErrorKind::WrongType;
  else if (kind == "bound_violation") e.kind = SchemaErrorKind::BoundViolation;
  else throw SerdeError("schema_error.kind: unknown value");
  e.detail = require_string(r.require("detail"), "schema_error.detail");
  r.finish();
  return e;
}

namespace {

Json fault_outcome_to_json(const FaultOutcome& f) {
  Json j;
  j["numeric_fired"] = f.numeric_fired;
  j["tag_add_fired"] = f.tag_add_fired;
  j["tag_add_applicable"] = f.tag_add_applicable;
  j["metric_swap_fired"] = f.metric_swap_fired;
  j["schema_fired"] = f.schema_fired;
  return j;
}

FaultOutcome fault_outcome_from_json(const Json& j) {
  ObjReader r(j, "fault_outcome");
  FaultOutcome f;
  f.numeric_fired = require_bool(r.require("numeric_fired"), "fault_outcome.numeric_fired");
  f.tag_add_fired = require_bool(r.require("tag_add_fired"), "fault_outcome.tag_add_fired");
  f.tag_add_applicable =
      require_bool(r.require("tag_add_applicable"), "fault_outcome.tag_add_applicable");
  f.metric_swap_fired =
      require_bool(r.require("metric_swap_fired"), "fault_outcome.metric_swap_fired");
  f.schema_fired = require_bool(r.require("schema_fired"), "fault_outcome.schema_fired");
  r.finish();
  return f;
}

}  // namespace

Json trace_to_json(const TraceRecord& t) {
  Json j;
  j["condition"] = t.condition;
  j["model"] = t.model;
  Json night;
  night["user_id"] = t.night.user_id;
  night["date"] = t.night.date.to_string();
  j["night"] = night;
  j["packet"] = packet_to_json(t.packet);
  Json reference;
  reference["fact_bank"] = bank_to_json(t.reference.bank);
  reference["ranking"] = ranking_to_json(t.reference.ranking);
  reference["attribution"] = attribution_to_json(t.reference.attribution);
  j["reference"] = reference;
  if (t.artifact) {
    Json a;
    a["layer"] = layer_name(t.artifact->layer);
    a["raw_text"] = t.artifact->raw_text;
    a["parsed_ok"] = t.artifact->parsed_ok;
    if (t.artifact->parsed_ok) {
      a["artifact"] = Json::parse(t.artifact->artifact_json);
    } else {
      a["parse_error"] = t.artifact->parse_error;
    }
    j["artifact"] = a;
  }
  j["raw_output"] = t.raw_output;
  Json parsed;
  if (t.parsed) {
    parsed["ok"] = true;
    parsed["output"] = output_to_json(*t.parsed);
  } else {
    parsed["ok"] = false;
    parsed["error"] = schema_error_to_json(t.parse_error.value_or(SchemaError{}));
  }
  j["parsed"] = parsed;
  if (!t.backend_error.empty()) j["backend_error"] = t.backend_error;
  j["usage"] = usage_to_json(t.usage);
  j["latency_ms"] = t.latency_ms;
  j["cost_usd"] = t.cost_usd.to_string();
  if (t.fault_outcome) j["fault_outcome"] = fault_outcome_to_json(*t.fault_outcome);
  return j;
}

TraceRecord trace_from_json(const Json& j) {
  ObjReader r(j, "trace");
  TraceRecord t;
  t.condition = require_string(r.require("condition"), "trace.condition");
  t.model = require_string(r.require("model"), "trace.model");
  {
    ObjReader nr(r.require("night"), "trace.night");
    t.night.user_id = require_string(nr.require("user_id"), "trace.night.user_id");
    t.night.date = require_date(nr.require("date"), "trace.night.date");
    nr.finish();
  }
  t.packet = packet_from_json(r.require("packet"));
  {
    ObjReader rr(r.require("reference"), "trace.reference");
    t.reference.bank = bank_from_json(rr.require("fact_bank"));
    t.reference.ranking = ranking_from_json(rr.require("ranking"));
    t.reference.attribution = attribution_from_json(rr.require("attribution"));
    rr.finish();
  }
  if (const Json* a = r.optional("artifact")) {
    ObjReader ar(*a, "trace.artifact");
    ArtifactRecord rec;
    auto layer = layer_from_name(require_string(ar.require("layer"), "trace.artifact.layer"));
    if (!layer) throw SerdeError("trace.artifact.layer: unknown value");
    rec.layer = *layer;
    rec.raw_text = require_string(ar.require("raw_text"), "trace.artifact.raw_text");
    rec.parsed_ok = require_bool(ar.require("parsed_ok"), "trace.artifact.parsed_ok");
    if (rec.parsed_ok) {
      rec.artifact_json = ar.require("artifact").dump();
    } else {
      rec.parse_error = require_string(ar.require("parse_error"), "trace.artifact.parse_error");
    }
    ar.finish();
    t.artifact = rec;
  }
  t.raw_output = require_string(r.require("raw_output"), "trace.raw_output");
  {
    ObjReader pr(r.require("parsed"), "trace.parsed");
    bool ok = require_bool(pr.require("ok"), "trace.parsed.ok");
    if (ok) {
      t.parsed = output_from_json(pr.require("output"));
    } else {
      t.parse_error = schema_error_from_json(pr.require("error"));
    }
    pr.finish();
  }
  if (const Json* be = r.optional("backend_error")) {
    t.backend_error = require_string(*be, "trace.backend_error");
  }
  t.usage = usage_from_json(r.require("usage"));
  t.latency_ms = require_int(r.require("latency_ms"), "trace.latency_ms");
  t.cost_usd = require_decimal(r.require("cost_usd"), "trace.cost_usd");
  if (const Json* f = r.optional("fault_outcome")) t.fault_outcome = fault_outcome_from_json(*f);
  r.finish();
  return t;
}

}  // namespace tfts
