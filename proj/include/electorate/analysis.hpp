#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "electorate/dynamics.hpp"
#include "electorate/ensemble.hpp"
#include "electorate/format.hpp"
#include "electorate/model.hpp"

namespace electorate {

/// Everything `electorate analyze` reports for one system.
struct AnalysisRecord {
  ElectoralSystem system;
  DynamicAttributes attributes;
  std::optional<EnsembleReport> brute_force;
  Bounds flexibility_bounds;
  Bounds rigidity_bounds;
  std::string timestamp;
};

inline AnalysisRecord analyze(const ElectoralSystem& sys, bool with_brute_force, std::uint64_t cap,
                              std::string timestamp) {
  const auto m = static_cast<std::int64_t>(sys.parties());
  AnalysisRecord rec{sys, closed_form_attributes(sys), std::nullopt,
                     electorate::flexibility_bounds(m), electorate::rigidity_bounds(m), std::move(timestamp)};
  if (with_brute_force) rec.brute_force = brute_force_report(sys, cap);
  return rec;
}

/// Brute-force fluctuation and alignment match the closed form. True when
/// no brute-force report was requested.
inline bool brute_force_agrees(const AnalysisRecord& rec, double tolerance = 1e-9) {
  if (!rec.brute_force) return true;
  const auto& b = *rec.brute_force;
  const double n = static_cast<double>(rec.system.electors());
  const double f = std::sqrt(b.variance) / b.mean_alignment;
  return std::abs(f - rec.attributes.fractional_fluctuation) <= tolerance &&
         std::abs(b.mean_alignment - n) <= tolerance * n;
}

inline nlohmann::json to_json(const AnalysisRecord& rec) {
  nlohmann::json j;
  j["system"] = {{"electors", rec.system.electors()},
                 {"parties", rec.system.parties()},
                 {"probs", std::vector<double>(rec.system.probs().begin(), rec.system.probs().end())}};
  const auto& a = rec.attributes;
  j["attributes"] = {{"fractional_fluctuation", a.fractional_fluctuation},
                     {"volatility", a.volatility},
                     {"flexibility", a.flexibility},
                     {"stability", a.stability},
                     {"rigidity", a.rigidity}};
  if (rec.brute_force) {
    const auto& b = *rec.brute_force;
    j["brute_force"] = {{"variance", b.variance},
                        {"mean_alignment", b.mean_alignment},
                        {"weighted_sum", b.weighted_sum},
                        {"total_weight", b.total_weight}};
  } else {
    j["brute_force"] = nullptr;
  }
  j["bounds"] = {{"flexibility", {rec.flexibility_bounds.lower, rec.flexibility_bounds.upper}},
                 {"rigidity", {rec.rigidity_bounds.lower, rec.rigidity_bounds.upper}}};
  j["timestamp"] = rec.timestamp;
  return j;
}

/// Inverse of to_json. The embedded system is re-validated.
inline AnalysisRecord analysis_from_json(const nlohmann::json& j) {
  const auto& s = j.at("system");
  AnalysisRecord rec{validate_system(s.at("electors").get<std::int64_t>(), s.at("probs").get<std::vector<double>>()),
                     {}, std::nullopt, {}, {}, j.at("timestamp").get<std::string>()};
  const auto& a = j.at("attributes");
  rec.attributes.fractional_fluctuation = a.at("fractional_fluctuation").get<double>();
  rec.attributes.volatility = a.at("volatility").get<double>();
  rec.attributes.flexibility = a.at("flexibility").get<double>();
  rec.attributes.stability = a.at("stability").get<double>();
  rec.attributes.rigidity = a.at("rigidity").get<double>();
  if (const auto& b = j.at("brute_force"); !b.is_null())
    rec.brute_force = EnsembleReport{b.at("variance").get<double>(), b.at("mean_alignment").get<double>(),
                                     b.at("weighted_sum").get<double>(), b.at("total_weight").get<double>()};
  const auto& bounds = j.at("bounds");
  rec.flexibility_bounds = {bounds.at("flexibility").at(0).get<double>(), bounds.at("flexibility").at(1).get<double>()};
  rec.rigidity_bounds = {bounds.at("rigidity").at(0).get<double>(), bounds.at("rigidity").at(1).get<double>()};
  return rec;
}

inline std::string analysis_csv(const AnalysisRecord& rec) {
  using format::shortest;
  std::vector<std::string> head = {"electors", "parties", "probs", "fractional_fluctuation", "volatility",
                                   "flexibility", "stability", "rigidity", "flexibility_lower",
                                   "flexibility_upper", "rigidity_lower", "rigidity_upper", "variance",
                                   "mean_alignment", "weighted_sum", "total_weight", "timestamp"};
  std::string probs;
  for (std::size_t k = 0; k < rec.system.parties(); ++k) probs += (k ? "," : "") + shortest(rec.system.probs()[k]);
  const auto& a = rec.attributes;
  auto opt = [&](double EnsembleReport::*field) {
    return rec.brute_force ? shortest((*rec.brute_force).*field) : std::string();
  };
  std::vector<std::string> row = {std::to_string(rec.system.electors()), std::to_string(rec.system.parties()),
                                  probs, shortest(a.fractional_fluctuation), shortest(a.volatility),
                                  shortest(a.flexibility), shortest(a.stability), shortest(a.rigidity),
                                  shortest(rec.flexibility_bounds.lower), shortest(rec.flexibility_bounds.upper),
                                  shortest(rec.rigidity_bounds.lower), shortest(rec.rigidity_bounds.upper),
                                  opt(&EnsembleReport::variance), opt(&EnsembleReport::mean_alignment),
                                  opt(&EnsembleReport::weighted_sum), opt(&EnsembleReport::total_weight),
                                  rec.timestamp};
  return format::csv_row(head) + format::csv_row(row);
}

inline std::string analysis_text(const AnalysisRecord& rec) {
  using format::shortest;
  const auto& a = rec.attributes;
  std::string out;
  out += "electors               " + std::to_string(rec.system.electors()) + '\n';
  out += "probabilities          " + format::bracketed(rec.system.probs()) + '\n';
  out += "fractional fluctuation " + shortest(a.fractional_fluctuation) + '\n';
  out += "volatility             " + shortest(a.volatility) + '\n';
  out += "flexibility            " + shortest(a.flexibility) + "  (bounds [" + shortest(rec.flexibility_bounds.lower) +
         ", " + shortest(rec.flexibility_bounds.upper) + "])\n";
  out += "stability              " + shortest(a.stability) + '\n';
  out += "rigidity               " + shortest(a.rigidity) + "  (bounds [" + shortest(rec.rigidity_bounds.lower) +
         ", " + shortest(rec.rigidity_bounds.upper) + "])\n";
  if (rec.brute_force) {
    out += "brute-force variance   " + shortest(rec.brute_force->variance) + " = " +
           shortest(rec.brute_force->weighted_sum) + " / " + shortest(rec.brute_force->total_weight) + '\n';
    out += "brute-force alignment  " + shortest(rec.brute_force->mean_alignment) + '\n';
  }
  out += "timestamp              " + rec.timestamp + '\n';
  return out;
}

}  // namespace electorate
