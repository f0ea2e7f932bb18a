#include "dtcmc/scenario_io.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <vector>

#include "dtcmc/errors.hpp"

namespace dtcmc {

using nlohmann::json;

namespace {

void reject_unknown(const json& obj, const std::string& where, std::initializer_list<const char*> allowed) {
  const std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [key, _] : obj.items()) {
    if (!ok.contains(key)) throw ValidationError("unknown field", where.empty() ? key : where + "." + key);
  }
}

const json& require_object(const json& parent, const char* key, const std::string& where) {
  const auto it = parent.find(key);
  const std::string name = where.empty() ? key : where + "." + key;
  if (it == parent.end()) throw ValidationError("missing required field", name);
  if (!it->is_object()) throw ValidationError("must be an object", name);
  return *it;
}

double get_number(const json& obj, const char* key, const std::string& where, double fallback) {
  const auto it = obj.find(key);
  if (it == obj.end()) return fallback;
  if (!it->is_number()) throw ValidationError("must be a number", where + "." + key);
  return it->get<double>();
}

bool get_bool(const json& obj, const char* key, const std::string& where, bool fallback) {
  const auto it = obj.find(key);
  if (it == obj.end()) return fallback;
  if (!it->is_boolean()) throw ValidationError("must be true or false", where + "." + key);
  return it->get<bool>();
}

MachineParams parse_machine(const json& m) {
  reject_unknown(m, "machine", {"Rs", "Rr", "Ls", "Lr", "Lm", "p", "J", "f_visc"});
  MachineSpec spec;
  spec.Rs = get_number(m, "Rs", "machine", spec.Rs);
  spec.Rr = get_number(m, "Rr", "machine", spec.Rr);
  spec.Ls = get_number(m, "Ls", "machine", spec.Ls);
  spec.Lr = get_number(m, "Lr", "machine", spec.Lr);
  spec.Lm = get_number(m, "Lm", "machine", spec.Lm);
  if (m.contains("p")) {
    if (!m["p"].is_number_integer()) throw ValidationError("must be an integer", "machine.p");
    spec.p = m["p"].get<int>();
  }
  spec.J = get_number(m, "J", "machine", spec.J);
  spec.f_visc = get_number(m, "f_visc", "machine", spec.f_visc);
  try {
    return MachineParams(spec);
  } catch (const ValidationError& e) {
    throw ValidationError(e.detail(), e.field().empty() ? "machine" : "machine." + e.field());
  }
}

}  // namespace

std::string mode_name(ControlMode mode) {
  return mode == ControlMode::kFixedFrequency ? "fixed_frequency" : "variable_frequency";
}

Scenario scenario_from_json(const json& doc) {
  if (!doc.is_object()) throw ValidationError("scenario must be a JSON object");
  std::vector<std::string> missing;
  for (const char* key : {"machine", "grid", "controller", "duration"}) {
    if (!doc.contains(key)) missing.emplace_back(key);
  }
  if (!missing.empty()) {
    std::string list;
    for (const auto& k : missing) list += (list.empty() ? "" : ", ") + k;
    throw ValidationError("missing required fields: " + list, missing.front());
  }
  reject_unknown(doc, "", {"name", "machine", "load", "grid", "controller", "carrier", "T_s", "mode",
                           "duration", "max_substep", "capture_decimation", "analysis"});

  Scenario s;
  if (doc.contains("name")) {
    if (!doc["name"].is_string()) throw ValidationError("must be a string", "name");
    s.name = doc["name"].get<std::string>();
  }
  s.machine = parse_machine(require_object(doc, "machine", ""));

  if (doc.contains("load")) {
    const json& l = require_object(doc, "load", "");
    reject_unknown(l, "load", {"mode", "T_load", "omega_m"});
    if (l.contains("mode")) {
      const auto mode = l["mode"].is_string() ? l["mode"].get<std::string>() : "";
      if (mode == "speed_locked") s.load.mode = LoadMode::kSpeedLocked;
      else if (mode == "free") s.load.mode = LoadMode::kFree;
      else throw ValidationError("must be \"speed_locked\" or \"free\"", "load.mode");
    }
    s.load.T_load = get_number(l, "T_load", "load", s.load.T_load);
    s.load.locked_speed = get_number(l, "omega_m", "load", s.load.locked_speed);
  }

  const json& g = require_object(doc, "grid", "");
  reject_unknown(g, "grid", {"V_phase_rms", "f_grid", "phase_offset"});
  s.grid.V_phase_rms = get_number(g, "V_phase_rms", "grid", s.grid.V_phase_rms);
  s.grid.f_grid = get_number(g, "f_grid", "grid", s.grid.f_grid);
  s.grid.phase_offset = get_number(g, "phase_offset", "grid", s.grid.phase_offset);

  const json& c = require_object(doc, "controller", "");
  reject_unknown(c, "controller", {"B_phi", "B_H", "phi_ref", "include_rs_drop", "torque_steps"});
  s.controller.B_phi = get_number(c, "B_phi", "controller", s.controller.B_phi);
  s.controller.B_H = get_number(c, "B_H", "controller", s.controller.B_H);
  s.controller.phi_ref = get_number(c, "phi_ref", "controller", s.controller.phi_ref);
  s.controller.include_rs_drop = get_bool(c, "include_rs_drop", "controller", true);
  if (c.contains("torque_steps")) {
    const json& steps = c["torque_steps"];
    if (!steps.is_array() || steps.empty()) {
      throw ValidationError("must be a non-empty array", "controller.torque_steps");
    }
    s.controller.torque_steps.clear();
    for (std::size_t i = 0; i < steps.size(); ++i) {
      const std::string where = "controller.torque_steps[" + std::to_string(i) + "]";
      if (!steps[i].is_object()) throw ValidationError("must be an object", where);
      reject_unknown(steps[i], where, {"t", "T_ref"});
      if (!steps[i].contains("t") || !steps[i].contains("T_ref")) {
        throw ValidationError("needs both t and T_ref", where);
      }
      s.controller.torque_steps.push_back(
          {get_number(steps[i], "t", where, 0.0), get_number(steps[i], "T_ref", where, 0.0)});
    }
  }

  bool carrier_present = false;
  if (doc.contains("carrier")) {
    const json& k = require_object(doc, "carrier", "");
    reject_unknown(k, "carrier", {"enabled", "A_tr", "f_tr", "max_torque_slope", "allow_violation"});
    carrier_present = true;
    const bool enabled = get_bool(k, "enabled", "carrier", true);
    const double f_tr = get_number(k, "f_tr", "carrier", 5000.0);
    const double a_tr = get_number(k, "A_tr", "carrier", 2.0 * s.controller.B_H);
    s.carrier = CarrierConfig(a_tr, f_tr, enabled);
    if (k.contains("max_torque_slope")) s.max_torque_slope = get_number(k, "max_torque_slope", "carrier", 0.0);
    s.allow_carrier_violation = get_bool(k, "allow_violation", "carrier", false);
  }

  s.T_s = get_number(doc, "T_s", "", s.T_s);
  if (doc.contains("mode")) {
    const auto mode = doc["mode"].is_string() ? doc["mode"].get<std::string>() : "";
    if (mode == "fixed_frequency") s.mode = ControlMode::kFixedFrequency;
    else if (mode == "variable_frequency") s.mode = ControlMode::kVariableFrequency;
    else throw ValidationError("must be \"fixed_frequency\" or \"variable_frequency\"", "mode");
  } else {
    s.mode = carrier_present && s.carrier.enabled() ? ControlMode::kFixedFrequency
                                                    : ControlMode::kVariableFrequency;
  }
  if (!doc["duration"].is_number()) throw ValidationError("must be a number", "duration");
  s.duration = doc["duration"].get<double>();
  s.max_substep = get_number(doc, "max_substep", "", s.max_substep);
  if (doc.contains("capture_decimation")) {
    if (!doc["capture_decimation"].is_number_integer()) {
      throw ValidationError("must be an integer", "capture_decimation");
    }
    s.capture_decimation = doc["capture_decimation"].get<int>();
  }
  if (doc.contains("analysis")) {
    const json& a = require_object(doc, "analysis", "");
    reject_unknown(a, "analysis", {"settle_time", "segment_settle", "thd_max_order"});
    s.analysis.settle_time = get_number(a, "settle_time", "analysis", s.analysis.settle_time);
    s.analysis.segment_settle = get_number(a, "segment_settle", "analysis", s.analysis.segment_settle);
    if (a.contains("thd_max_order")) {
      if (!a["thd_max_order"].is_number_integer()) throw ValidationError("must be an integer", "analysis.thd_max_order");
      s.analysis.thd_max_order = a["thd_max_order"].get<int>();
    }
  }
  s.validate();
  return s;
}

Scenario parse_scenario(const std::string& text) {
  if (text.find_first_not_of(" \t\r\n") == std::string::npos) return scenario_from_json(json::object());
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("malformed JSON: ") + e.what());
  }
  return scenario_from_json(doc);
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open scenario file '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_scenario(ss.str());
}

json scenario_to_json(const Scenario& s) {
  const auto& m = s.machine.spec();
  json steps = json::array();
  for (const auto& st : s.controller.torque_steps) steps.push_back({{"t", st.t}, {"T_ref", st.T_ref}});
  json carrier = {{"enabled", s.carrier.enabled()},
                  {"A_tr", s.carrier.A_tr()},
                  {"f_tr", s.carrier.f_tr()},
                  {"allow_violation", s.allow_carrier_violation}};
  if (s.max_torque_slope) carrier["max_torque_slope"] = *s.max_torque_slope;
  return {
      {"name", s.name},
      {"machine", {{"Rs", m.Rs}, {"Rr", m.Rr}, {"Ls", m.Ls}, {"Lr", m.Lr}, {"Lm", m.Lm}, {"p", m.p},
                   {"J", m.J}, {"f_visc", m.f_visc}}},
      {"load", {{"mode", s.load.mode == LoadMode::kFree ? "free" : "speed_locked"},
                {"T_load", s.load.T_load}, {"omega_m", s.load.locked_speed}}},
      {"grid", {{"V_phase_rms", s.grid.V_phase_rms}, {"f_grid", s.grid.f_grid},
                {"phase_offset", s.grid.phase_offset}}},
      {"controller", {{"B_phi", s.controller.B_phi}, {"B_H", s.controller.B_H},
                      {"phi_ref", s.controller.phi_ref},
                      {"include_rs_drop", s.controller.include_rs_drop}, {"torque_steps", steps}}},
      {"carrier", carrier},
      {"T_s", s.T_s},
      {"mode", mode_name(s.mode)},
      {"duration", s.duration},
      {"max_substep", s.max_substep},
      {"capture_decimation", s.capture_decimation},
      {"analysis", {{"settle_time", s.analysis.settle_time},
                    {"segment_settle", s.analysis.segment_settle},
                    {"thd_max_order", s.analysis.thd_max_order}}},
  };
}

}  // namespace dtcmc
