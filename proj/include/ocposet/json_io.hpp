#pragma once

#include <fstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "dyadic.hpp"
#include "error.hpp"
#include "forcing.hpp"
#include "interval.hpp"
#include "poset.hpp"
#include "representation.hpp"

namespace ocposet {

using json = nlohmann::json;

inline json poset_to_json(const Poset& p) {
  json j;
  j["elements"] = p.names();
  json strict = json::array();
  for (const auto& [a, b] : p.strict_pairs()) strict.push_back(json::array({a, b}));
  j["strict"] = std::move(strict);
  return j;
}

inline Poset poset_from_json(const json& j) {
  if (!j.is_object() || !j.contains("elements") || !j["elements"].is_array())
    fail(Errc::parse_error, "poset JSON needs an \"elements\" array");
  std::vector<std::string> elements;
  for (const auto& e : j["elements"]) {
    if (!e.is_string()) fail(Errc::parse_error, "element names must be strings");
    elements.push_back(e.get<std::string>());
  }
  std::vector<std::pair<std::string, std::string>> strict;
  if (j.contains("strict")) {
    if (!j["strict"].is_array()) fail(Errc::parse_error, "\"strict\" must be an array of pairs");
    for (const auto& pr : j["strict"]) {
      if (!pr.is_array() || pr.size() != 2 || !pr[0].is_string() || !pr[1].is_string())
        fail(Errc::parse_error, "each strict relation must be a pair of names");
      strict.emplace_back(pr[0].get<std::string>(), pr[1].get<std::string>());
    }
  }
  return Poset::from_relations(elements, strict);
}

inline json rep_to_json(const Representation& r) {
  json intervals = json::object();
  for (const auto& [name, iv] : r.intervals) {
    intervals[name] = {{"center", iv.center.str()}, {"type", std::string(1, type_letter(iv.type))}};
  }
  return json{{"unit_length", 2}, {"intervals", std::move(intervals)}};
}

// The allowed set is recovered as the union of types present.
inline Representation rep_from_json(const json& j) {
  if (!j.is_object() || !j.contains("intervals") || !j["intervals"].is_object())
    fail(Errc::parse_error, "representation JSON needs an \"intervals\" object");
  if (!j.contains("unit_length") || j["unit_length"] != 2)
    fail(Errc::parse_error, "unit_length must be 2");
  Representation r;
  unsigned mask = 0;
  for (const auto& [name, iv] : j["intervals"].items()) {
    if (!iv.is_object() || !iv.contains("center") || !iv.contains("type") ||
        !iv["center"].is_string() || !iv["type"].is_string())
      fail(Errc::parse_error, "interval for '" + name + "' needs center and type strings");
    std::string ts = iv["type"].get<std::string>();
    if (ts.size() != 1) fail(Errc::parse_error, "type must be one of A, B, C, D");
    IntervalType t = type_from_letter(ts[0]);
    r.intervals.emplace(name, PlacedInterval{Dyadic::parse(iv["center"].get<std::string>()), t});
    mask |= 1u << static_cast<int>(t);
  }
  r.allowed = TypeSet(mask);
  return r;
}

inline json trail_to_json(const ForcingTrail& t) {
  json steps = json::array();
  for (Step s : t.steps) steps.push_back(s == Step::prec ? "prec" : "par");
  return json{{"nodes", t.nodes}, {"steps", std::move(steps)}};
}

inline ForcingTrail trail_from_json(const json& j) {
  if (!j.contains("nodes") || !j["nodes"].is_array() || !j.contains("steps") ||
      !j["steps"].is_array())
    fail(Errc::parse_error, "certificate needs \"nodes\" and \"steps\" arrays");
  ForcingTrail t;
  for (const auto& n : j["nodes"]) {
    if (!n.is_string()) fail(Errc::parse_error, "cycle nodes must be strings");
    t.nodes.push_back(n.get<std::string>());
  }
  for (const auto& s : j["steps"]) {
    if (s == "prec")
      t.steps.push_back(Step::prec);
    else if (s == "par")
      t.steps.push_back(Step::par);
    else
      fail(Errc::parse_error, "steps must be \"prec\" or \"par\"");
  }
  return t;
}

inline json cert_to_json(const Certificate& c) {
  if (const auto* pc = std::get_if<PositiveCycleCert>(&c)) {
    json j = trail_to_json(pc->cycle);
    j["kind"] = "positive_cycle";
    return j;
  }
  const auto& zc = std::get<ZeroCycleCert>(c);
  json j = trail_to_json(zc.cycle);
  j["kind"] = "unrepresentable_zero_cycle";
  json centers = json::object();
  for (const auto& [name, c2] : zc.centers) centers[name] = c2.str();
  j["centers"] = std::move(centers);
  j["types_allowed"] = zc.allowed.str();
  return j;
}

inline Certificate cert_from_json(const json& j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
    fail(Errc::parse_error, "certificate JSON needs a \"kind\" string");
  std::string kind = j["kind"].get<std::string>();
  if (kind == "positive_cycle") return PositiveCycleCert{trail_from_json(j)};
  if (kind != "unrepresentable_zero_cycle")
    fail(Errc::parse_error, "unknown certificate kind '" + kind + "'");
  ZeroCycleCert zc;
  zc.cycle = trail_from_json(j);
  if (!j.contains("centers") || !j["centers"].is_object())
    fail(Errc::parse_error, "zero-cycle certificate needs a \"centers\" object");
  for (const auto& [name, c] : j["centers"].items()) {
    if (!c.is_string()) fail(Errc::parse_error, "centers must be fraction strings");
    zc.centers.emplace(name, Dyadic::parse(c.get<std::string>()));
  }
  if (!j.contains("types_allowed") || !j["types_allowed"].is_string())
    fail(Errc::parse_error, "zero-cycle certificate needs \"types_allowed\"");
  zc.allowed = TypeSet::parse(j["types_allowed"].get<std::string>());
  return zc;
}

enum class JsonKind { poset, representation, certificate };

inline JsonKind json_kind(const json& j) {
  if (j.is_object() && j.contains("kind")) return JsonKind::certificate;
  if (j.is_object() && j.contains("intervals")) return JsonKind::representation;
  if (j.is_object() && j.contains("elements")) return JsonKind::poset;
  fail(Errc::kind_mismatch, "JSON is neither a poset, a representation, nor a certificate");
}

inline json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::io_error, "cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    fail(Errc::parse_error, "invalid JSON in '" + path + "': " + e.what());
  }
}

inline void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) fail(Errc::io_error, "cannot open '" + path + "' for writing");
  out << content;
  if (!out) fail(Errc::io_error, "write to '" + path + "' failed");
}

inline std::string dump_json(const json& j) { return j.dump(2) + "\n"; }

}  // namespace ocposet
