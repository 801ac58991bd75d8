#include "cfl/json_io.hpp"

#include <json.hpp>

#include "cfl/error.hpp"
#include "cfl/proof.hpp"

namespace cfl {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

constexpr Setting kSettings[] = {Setting::One, Setting::Two};
constexpr Sign kSigns[] = {Sign::Plus, Sign::Minus};

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("invalid JSON: ") + e.what());
  }
}

double number_at(const json& obj, const std::string& key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw SchemaError(where + ": missing key \"" + key + "\"");
  }
  const json& v = obj.at(key);
  if (!v.is_number()) throw SchemaError(where + ": \"" + key + "\" is not a number");
  return v.get<double>();
}

void require_exact_keys(const json& obj, std::initializer_list<const char*> keys,
                        const std::string& where) {
  if (!obj.is_object()) throw SchemaError(where + " must be an object");
  for (const auto& [k, v] : obj.items()) {
    bool known = false;
    for (const char* allowed : keys) known = known || k == allowed;
    if (!known) throw SchemaError(where + ": unexpected key \"" + k + "\"");
  }
}

std::string pair_key(Setting l, Setting r) {
  return std::string{'L', setting_digit(l), ',', 'R', setting_digit(r)};
}

std::string outcome_key(Sign l, Sign r) { return std::string{sign_char(l), sign_char(r)}; }

ordered_json world_json(const std::optional<World>& w) {
  if (!w) return nullptr;
  return to_string(*w);
}

}  // namespace

std::string write_config_json(const HardyConfig& cfg) {
  ordered_json j;
  j["theta"] = cfg.theta;
  j["angles"] = {{"L1", cfg.angle_l1}, {"L2", cfg.angle_l2}, {"R1", cfg.angle_r1}, {"R2", cfg.angle_r2}};
  return j.dump(2) + "\n";
}

HardyConfig read_config_json(std::string_view text) {
  const json j = parse_json(text);
  require_exact_keys(j, {"theta", "angles"}, "config");
  if (!j.contains("angles")) throw SchemaError("config: missing key \"angles\"");
  const json& a = j.at("angles");
  require_exact_keys(a, {"L1", "L2", "R1", "R2"}, "config.angles");
  HardyConfig cfg;
  cfg.theta = number_at(j, "theta", "config");
  cfg.angle_l1 = number_at(a, "L1", "config.angles");
  cfg.angle_l2 = number_at(a, "L2", "config.angles");
  cfg.angle_r1 = number_at(a, "R1", "config.angles");
  cfg.angle_r2 = number_at(a, "R2", "config.angles");
  return cfg;
}

std::string write_model_json(const Model& m) {
  ordered_json j;
  j["epsilon"] = m.epsilon();
  ordered_json table = ordered_json::object();
  for (Setting l : kSettings) {
    for (Setting r : kSettings) {
      ordered_json row = ordered_json::object();
      for (Sign ol : kSigns) {
        for (Sign orr : kSigns) row[outcome_key(ol, orr)] = m.table().get(l, r, ol, orr);
      }
      table[pair_key(l, r)] = row;
    }
  }
  j["table"] = table;
  return j.dump(2) + "\n";
}

ProbabilityTable read_table_json(std::string_view text, double* epsilon_out) {
  const json j = parse_json(text);
  require_exact_keys(j, {"epsilon", "table"}, "model");
  const double epsilon = number_at(j, "epsilon", "model");
  if (!j.contains("table")) throw SchemaError("model: missing key \"table\"");
  const json& t = j.at("table");
  require_exact_keys(t, {"L1,R1", "L1,R2", "L2,R1", "L2,R2"}, "model.table");
  ProbabilityTable table;
  for (Setting l : kSettings) {
    for (Setting r : kSettings) {
      const std::string pk = pair_key(l, r);
      if (!t.contains(pk)) throw SchemaError("model.table: missing key \"" + pk + "\"");
      const json& row = t.at(pk);
      require_exact_keys(row, {"++", "+-", "-+", "--"}, "model.table." + pk);
      for (Sign ol : kSigns) {
        for (Sign orr : kSigns) {
          table.set(l, r, ol, orr, number_at(row, outcome_key(ol, orr), "model.table." + pk));
        }
      }
    }
  }
  if (epsilon_out) *epsilon_out = epsilon;
  return table;
}

Model read_model_json(std::string_view text) {
  double epsilon = Model::kDefaultEpsilon;
  ProbabilityTable table = read_table_json(text, &epsilon);
  return build_model(table, epsilon);
}

std::string audit_to_json(const AuditReport& report) {
  ordered_json lines = ordered_json::array();
  for (const LineAudit& a : report.lines) {
    ordered_json l;
    l["index"] = a.index;
    l["statement"] = a.statement;
    l["rule"] = a.rule;
    l["rule_ok"] = a.verdict.valid();
    l["rule_status"] = std::string(to_string(a.verdict.status));
    if (!a.verdict.valid()) l["rule_detail"] = a.verdict.detail;
    l["sem_every"] = a.sem_every;
    l["sem_some"] = a.sem_some;
    l["witness_every"] = world_json(a.witness_every);
    l["witness_some"] = world_json(a.witness_some);
    l["scope"] = a.scope;
    l["divergent"] = a.divergent;
    lines.push_back(std::move(l));
  }
  const FinalVerdict& f = report.final;
  ordered_json fin;
  fin["line5_true"] = f.line5_true;
  fin["line6_refuted"] = f.line6_refuted;
  fin["side_conditions_hold"] = f.side_conditions_hold;
  fin["conflict"] = f.conflict_first ? ordered_json::array({*f.conflict_first, *f.conflict_second})
                                     : ordered_json(nullptr);
  fin["reductio_witness"] = world_json(f.reductio_witness);
  fin["notes"] = f.notes;
  ordered_json j;
  j["lines"] = std::move(lines);
  j["final"] = std::move(fin);
  j["normalizations"] = report.normalizations;
  return j.dump(2) + "\n";
}

}  // namespace cfl
