// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <json.hpp>

#include "amgm/bounds.hpp"
#include "amgm/core_stats.hpp"
#include "amgm/extremal.hpp"
#include "amgm/verify.hpp"

namespace amgm {

// {"atoms":[{"x":..,"p":..},...]}, atoms ascending in x.
nlohmann::json to_json(const DiscreteDistribution& d);

// Accepts either the atoms object above (atom order irrelevant) or a bare
// array of numbers, which is read as uniform_from_values.  Validation
// errors surface as the library's typed exceptions; malformed JSON throws
// nlohmann::json::exception.
DiscreteDistribution distribution_from_json(const nlohmann::json& j);

// {"mean","log_mean","gap","v","m","M","e","f"}; log_mean is null when -inf.
nlohmann::json to_json(const MomentSummary& s);

// {"upper","lower","e_vf","gap","admissible_hi","admissible_lo","equality_case"}.
nlohmann::json to_json(const BoundResult& r);

// {"u","v","p"}.
nlohmann::json to_json(const TwoPointSpec& s);

// {"trials","failures","worst_violation","witness","elapsed_ms"}; witness is
// null when no trial failed.
nlohmann::json to_json(const VerificationReport& r);

}  // namespace amgm
