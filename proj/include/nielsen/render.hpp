#pragma once

// Text and JSON renderings of classifier and selfcoincidence results.

#include <cstdint>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "nielsen/classifier.hpp"
#include "nielsen/errors.hpp"
#include "nielsen/fgab.hpp"
#include "nielsen/selfcoincidence.hpp"

namespace nielsen {

enum class OutputMode { Text, Machine };

using Json = nlohmann::ordered_json;

/// `3*i2 + 1*eta` style rendering of an element against generator labels;
/// unlabeled coordinates fall back to g0, g1, ...
inline std::string describe_element(const GroupElement& x, const std::vector<std::string>& labels = {}) {
  std::string s;
  for (std::size_t i = 0; i < x.coords().size(); ++i) {
    const Integer& c = x.coords()[i];
    if (c == 0) continue;
    if (!s.empty()) s += " + ";
    s += c.str() + "*" + (i < labels.size() ? labels[i] : "g" + std::to_string(i));
  }
  return s.empty() ? "0" : s;
}

namespace detail {

inline const char* setting_name(Setting s) {
  switch (s) {
    case Setting::Projective: return "projective";
    case Setting::Sphere: return "sphere";
    case Setting::SpaceForm: return "spaceform";
  }
  return "?";
}

inline Setting parse_setting(const std::string& s) {
  if (s == "projective") return Setting::Projective;
  if (s == "sphere") return Setting::Sphere;
  if (s == "spaceform") return Setting::SpaceForm;
  throw InvalidArgument("unknown setting '" + s + "'");
}

inline Json ext_json(const ExtNat& v) {
  if (v.infinite) return "inf";
  return v.value;
}

inline ExtNat ext_from_json(const Json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() != "inf") throw InvalidArgument("expected \"inf\" or a count");
    return ExtNat::inf();
  }
  return ExtNat{j.get<std::uint64_t>()};
}

// Exact quantities are plain values; intervals are {"min": .., "max": ..}.
inline Json quantity_json(const Quantity& q) {
  if (q.is_exact()) return ext_json(q.lo);
  Json j;
  j["min"] = ext_json(q.lo);
  j["max"] = ext_json(q.hi);
  return j;
}

inline Quantity quantity_from_json(const Json& j) {
  if (j.is_object()) return Quantity::between(ext_from_json(j.at("min")), ext_from_json(j.at("max")));
  return Quantity::exact(ext_from_json(j));
}

inline Json optional_bool(const std::optional<bool>& b) { return b ? Json(*b) : Json(nullptr); }
inline std::optional<bool> optional_bool_from(const Json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<bool>();
}

inline Json integer_json(const Integer& v) {
  if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max())
    return v.convert_to<std::int64_t>();
  return v.str();
}
inline Integer integer_from_json(const Json& j) {
  if (j.is_string()) return Integer(j.get<std::string>());
  return Integer(j.get<std::int64_t>());
}

inline std::string yes_no(std::optional<bool> b) {
  if (!b) return "unknown";
  return *b ? "yes" : "no";
}

}  // namespace detail

// ---------------------------------------------------------------------------
// CoincidenceAnswer

inline Json answer_json(const CoincidenceAnswer& a, const std::string& db_version = "") {
  Json j;
  j["kind"] = "coincidence";
  j["setting"] = detail::setting_name(a.setting);
  j["case_id"] = a.case_id ? Json(*a.case_id) : Json(nullptr);
  j["case_label"] = a.case_label;
  j["condition"] = a.condition;
  j["nielsen"] = detail::quantity_json(a.nielsen);
  j["mcc"] = detail::quantity_json(a.mcc);
  j["mc"] = detail::quantity_json(a.mc);
  j["reidemeister"] = detail::quantity_json(a.reidemeister);
  j["flags"] = {{"omega_sharp_zero", detail::optional_bool(a.omega_sharp_zero)},
                {"loose", detail::optional_bool(a.loose)},
                {"loose_small", detail::optional_bool(a.loose_small)}};
  j["residue_present"] = a.residue_present;
  j["notes"] = a.notes;
  j["db_version"] = db_version;
  return j;
}

inline CoincidenceAnswer answer_from_json(const Json& j, std::string* db_version = nullptr) {
  if (j.at("kind") != "coincidence") throw InvalidArgument("not a coincidence answer document");
  CoincidenceAnswer a;
  a.setting = detail::parse_setting(j.at("setting").get<std::string>());
  if (!j.at("case_id").is_null()) a.case_id = j.at("case_id").get<int>();
  a.case_label = j.at("case_label").get<std::string>();
  a.condition = j.at("condition").get<std::string>();
  a.nielsen = detail::quantity_from_json(j.at("nielsen"));
  a.mcc = detail::quantity_from_json(j.at("mcc"));
  a.mc = detail::quantity_from_json(j.at("mc"));
  a.reidemeister = detail::quantity_from_json(j.at("reidemeister"));
  const Json& f = j.at("flags");
  a.omega_sharp_zero = detail::optional_bool_from(f.at("omega_sharp_zero"));
  a.loose = detail::optional_bool_from(f.at("loose"));
  a.loose_small = detail::optional_bool_from(f.at("loose_small"));
  a.residue_present = j.at("residue_present").get<bool>();
  a.notes = j.at("notes").get<std::vector<std::string>>();
  if (db_version) *db_version = j.at("db_version").get<std::string>();
  return a;
}

inline std::string render(const CoincidenceAnswer& a, OutputMode mode, const std::string& db_version = "") {
  if (mode == OutputMode::Machine) return answer_json(a, db_version).dump() + "\n";

  std::ostringstream out;
  if (a.case_id)
    out << "case " << *a.case_id << ": " << a.condition << "\n";
  else
    out << "case " << a.case_label << ": " << a.condition << "\n";
  out << "N#=" << a.nielsen.to_string() << " MCC=" << a.mcc.to_string() << " MC=" << a.mc.to_string() << "\n";
  if (a.setting == Setting::SpaceForm && a.nielsen == a.mcc && a.nielsen.is_exact())
    out << "N#=MCC=" << a.nielsen.to_string() << "\n";
  if (a.case_id) {
    out << "row " << *a.case_id << " | N# MCC MC | " << a.nielsen.to_string() << " " << a.mcc.to_string() << " "
        << a.mc.to_string() << "\n";
  }
  out << "#pi0(E)=" << a.reidemeister.to_string() << "\n";
  out << "omega#=0: " << detail::yes_no(a.omega_sharp_zero) << "  loose: " << detail::yes_no(a.loose);
  if (a.loose_small) out << "  loose by small deformation: " << detail::yes_no(a.loose_small);
  out << "\n";
  for (const auto& n : a.notes) out << "note: " << n << "\n";
  if (!db_version.empty()) out << "db: " << db_version << "\n";
  return out.str();
}

// ---------------------------------------------------------------------------
// LoosenessVerdict

inline constexpr const char* kGapMarker = "OMEGA#-BLIND";

inline Json verdict_json(const LoosenessVerdict& v, const std::string& db_version = "") {
  Json j;
  j["kind"] = "self";
  j["K"] = std::string(1, field_letter(v.field));
  j["m"] = v.m;
  j["nprime"] = v.nprime;
  Json torsion = Json::array();
  for (const auto& d : v.lift.parent().torsion()) torsion.push_back(detail::integer_json(d));
  j["lift_group"] = {{"free_rank", v.lift.parent().free_rank()}, {"torsion", torsion}};
  Json coords = Json::array();
  for (const auto& c : v.lift.coords()) coords.push_back(detail::integer_json(c));
  j["lift"] = coords;
  j["small_deformation"] = v.small_deformation;
  j["loose"] = v.loose;
  j["coincidence_producing"] = v.coincidence_producing;
  j["omega_sharp_zero"] = v.omega_sharp_zero;
  j["lifted_pair_loose"] = detail::optional_bool(v.lifted_pair_loose);
  j["gap_witness"] = v.gap_witness;
  j["db_version"] = db_version;
  return j;
}

inline LoosenessVerdict verdict_from_json(const Json& j, std::string* db_version = nullptr) {
  if (j.at("kind") != "self") throw InvalidArgument("not a selfcoincidence verdict document");
  auto k = parse_field(j.at("K").get<std::string>());
  if (!k) throw InvalidArgument("bad field letter");
  std::vector<Integer> torsion;
  for (const auto& d : j.at("lift_group").at("torsion")) torsion.push_back(detail::integer_from_json(d));
  FgAbGroup g(j.at("lift_group").at("free_rank").get<std::size_t>(), std::move(torsion));
  std::vector<Integer> coords;
  for (const auto& c : j.at("lift")) coords.push_back(detail::integer_from_json(c));
  LoosenessVerdict v{*k, j.at("m").get<int>(), j.at("nprime").get<int>(), GroupElement(g, std::move(coords)), false, false, false, false, std::nullopt, false};
  v.small_deformation = j.at("small_deformation").get<bool>();
  v.loose = j.at("loose").get<bool>();
  v.coincidence_producing = j.at("coincidence_producing").get<bool>();
  v.omega_sharp_zero = j.at("omega_sharp_zero").get<bool>();
  v.lifted_pair_loose = detail::optional_bool_from(j.at("lifted_pair_loose"));
  v.gap_witness = j.at("gap_witness").get<bool>();
  if (db_version) *db_version = j.at("db_version").get<std::string>();
  return v;
}

inline std::string render(const LoosenessVerdict& v, OutputMode mode, const std::string& db_version = "") {
  if (mode == OutputMode::Machine) return verdict_json(v, db_version).dump() + "\n";

  const std::string omega = v.omega_sharp_zero ? "omega#=0" : "omega#!=0";
  std::ostringstream out;
  out << "(f,f): ";
  if (v.small_deformation)
    out << "loose; by small deformation; " << omega << "\n";
  else
    out << "NOT loose; coincidence producing; " << omega << "\n";

  out << "(f~,f~): ";
  if (!v.lifted_pair_loose) {
    out << "looseness unknown\n";
  } else if (!*v.lifted_pair_loose) {
    out << "NOT loose; omega#!=0\n";
  } else {
    const char* small = v.field == Field::R ? "by small deformation" : "by small xi_K-deformation";
    out << "loose; " << (v.small_deformation ? "" : "NOT ") << small << "; omega#=0\n";
  }
  if (v.gap_witness) out << kGapMarker << ": omega#(f,f) = 0 but (f,f) is not loose\n";
  if (!db_version.empty()) out << "db: " << db_version << "\n";
  return out.str();
}

}  // namespace nielsen
