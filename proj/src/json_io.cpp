// SPDX-License-Identifier: Apache-2.0
#include "amgm/json_io.hpp"

#include <cmath>
#include <fmt/format.h>

#include "amgm/errors.hpp"

namespace amgm {

using nlohmann::json;

json to_json(const DiscreteDistribution& d) {
  json atoms = json::array();
  for (const auto& a : d.atoms()) atoms.push_back({{"x", a.x}, {"p", a.p}});
  return json{{"atoms", std::move(atoms)}};
}

DiscreteDistribution distribution_from_json(const json& j) {
  if (j.is_array()) {
    std::vector<double> values;
    values.reserve(j.size());
    for (const auto& e : j) {
      if (!e.is_number()) {
        throw NegativeValueError(
            fmt::format("value {}: bare arrays must contain numbers only", e.dump()));
      }
      values.push_back(e.get<double>());
    }
    return uniform_from_values(values);
  }
  if (!j.is_object() || !j.contains("atoms") || !j.at("atoms").is_array()) {
    throw NegativeValueError(
        "input must be a bare array of values or an object {\"atoms\":[{\"x\":..,\"p\":..},..]}");
  }
  std::vector<std::pair<double, double>> pairs;
  pairs.reserve(j.at("atoms").size());
  for (const auto& e : j.at("atoms")) {
    if (!e.is_object() || !e.contains("x") || !e.contains("p") || !e.at("x").is_number() ||
        !e.at("p").is_number()) {
      throw NegativeValueError(
          fmt::format("atom {}: each atom needs numeric \"x\" and \"p\"", e.dump()));
    }
    pairs.emplace_back(e.at("x").get<double>(), e.at("p").get<double>());
  }
  return make_distribution(pairs);
}

namespace {

json finite_or_null(double x) {
  if (std::isfinite(x)) return json(x);
  return json(nullptr);
}

}  // namespace

json to_json(const MomentSummary& s) {
  return json{{"mean", s.mean}, {"log_mean", finite_or_null(s.log_mean)},
              {"gap", s.gap},   {"v", s.V},
              {"m", s.m},       {"M", s.M},
              {"e", s.E},       {"f", finite_or_null(s.F.as_double())}};
}

json to_json(const BoundResult& r) {
  return json{{"upper", r.upper},
              {"lower", r.lower},
              {"e_vf", finite_or_null(r.e_vf)},
              {"gap", r.gap},
              {"admissible_hi", r.admissible_hi},
              {"admissible_lo", r.admissible_lo},
              {"equality_case", r.equality_case}};
}

json to_json(const TwoPointSpec& s) {
  return json{{"u", s.u}, {"v", s.v}, {"p", s.p}};
}

json to_json(const VerificationReport& r) {
  json witness = r.witness ? to_json(*r.witness) : json(nullptr);
  return json{{"trials", r.trials},
              {"failures", r.failures},
              {"worst_violation", finite_or_null(r.worst_violation)},
              {"witness", std::move(witness)},
              {"elapsed_ms", r.elapsed_ms}};
}

}  // namespace amgm
