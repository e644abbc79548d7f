#pragma once

// JSON state and ensemble files.
//
//   state:    { "dims": [d0, d1, ...], "amps": [[re, im], ...], "label": "..." }
//   ensemble: { "members": [ { "weight": p, "state": <state> }, ... ] }
//
// Amplitudes are listed by flat index with site 0 as the least significant
// digit. "label" is optional. Doubles are written with round-trip precision,
// so save followed by load reproduces the amplitudes exactly.

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "mems/error.hpp"
#include "mems/state.hpp"

namespace mems {

using json = nlohmann::json;

inline json state_to_json(const PureState& state) {
  json amps = json::array();
  for (const Complex& a : state.amps()) amps.push_back({a.real(), a.imag()});
  json j = {{"dims", state.dims()}, {"amps", std::move(amps)}};
  if (!state.label().empty()) j["label"] = state.label();
  return j;
}

namespace detail {

[[noreturn]] inline void field_error(const std::string& where, const std::string& what) {
  fail(ErrorKind::ParseError, "field '" + where + "': " + what);
}

inline double number_at(const json& j, const std::string& where) {
  if (!j.is_number()) field_error(where, "expected a number, got " + std::string(j.type_name()));
  return j.get<double>();
}

inline json parse_json_text(const std::string& text, const std::string& source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    // nlohmann reports "line L, column C" in its message.
    fail(ErrorKind::ParseError, source + ": " + e.what());
  }
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::IoError, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace detail

inline PureState state_from_json(const json& j, const std::string& where = "state") {
  if (!j.is_object()) detail::field_error(where, "expected an object");
  if (!j.contains("dims")) detail::field_error(where + ".dims", "missing");
  if (!j.contains("amps")) detail::field_error(where + ".amps", "missing");
  const json& jd = j.at("dims");
  if (!jd.is_array()) detail::field_error(where + ".dims", "expected an array");
  Dims dims;
  for (std::size_t k = 0; k < jd.size(); ++k) {
    const std::string at = where + ".dims[" + std::to_string(k) + "]";
    if (!jd[k].is_number_integer() || jd[k].get<long long>() < 2) detail::field_error(at, "expected an integer >= 2");
    dims.push_back(jd[k].get<std::size_t>());
  }
  const json& ja = j.at("amps");
  if (!ja.is_array()) detail::field_error(where + ".amps", "expected an array");
  std::vector<Complex> amps;
  amps.reserve(ja.size());
  for (std::size_t k = 0; k < ja.size(); ++k) {
    const std::string at = where + ".amps[" + std::to_string(k) + "]";
    if (!ja[k].is_array() || ja[k].size() != 2) detail::field_error(at, "expected a [re, im] pair");
    amps.emplace_back(detail::number_at(ja[k][0], at + "[0]"), detail::number_at(ja[k][1], at + "[1]"));
  }
  std::string label;
  if (j.contains("label")) {
    if (!j.at("label").is_string()) detail::field_error(where + ".label", "expected a string");
    label = j.at("label").get<std::string>();
  }
  return make_state(std::move(dims), std::move(amps), std::move(label));
}

inline PureState parse_state(const std::string& text, const std::string& source = "<input>") {
  return state_from_json(detail::parse_json_text(text, source));
}

inline PureState load_state(const std::string& path) { return parse_state(detail::read_file(path), path); }

inline void save_state(const PureState& state, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::IoError, "cannot write '" + path + "'");
  out << state_to_json(state).dump(2) << '\n';
  if (!out) fail(ErrorKind::IoError, "write to '" + path + "' failed");
}

inline json ensemble_to_json(const Ensemble& ensemble) {
  json members = json::array();
  for (const auto& m : ensemble.members()) members.push_back({{"weight", m.weight}, {"state", state_to_json(m.state)}});
  return {{"members", std::move(members)}};
}

inline Ensemble ensemble_from_json(const json& j) {
  if (!j.is_object() || !j.contains("members") || !j.at("members").is_array()) {
    detail::field_error("members", "expected an array of {weight, state} objects");
  }
  std::vector<EnsembleMember> members;
  const json& jm = j.at("members");
  for (std::size_t k = 0; k < jm.size(); ++k) {
    const std::string at = "members[" + std::to_string(k) + "]";
    if (!jm[k].is_object() || !jm[k].contains("weight") || !jm[k].contains("state")) {
      detail::field_error(at, "expected {\"weight\": p, \"state\": {...}}");
    }
    const double weight = detail::number_at(jm[k].at("weight"), at + ".weight");
    members.push_back({weight, state_from_json(jm[k].at("state"), at + ".state")});
  }
  return Ensemble(std::move(members));
}

inline Ensemble load_ensemble(const std::string& path) {
  return ensemble_from_json(detail::parse_json_text(detail::read_file(path), path));
}

}  // namespace mems
