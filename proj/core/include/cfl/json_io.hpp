#pragma once

#include <string>
#include <string_view>

#include "cfl/model.hpp"
#include "cfl/quantum.hpp"

namespace cfl {

// {"theta": t, "angles": {"L1": a, "L2": a, "R1": a, "R2": a}}, radians.
std::string write_config_json(const HardyConfig& cfg);
HardyConfig read_config_json(std::string_view text);

// {"epsilon": e, "table": {"L1,R1": {"++": p, "+-": p, "-+": p, "--": p}, ...}}
// Outcome strings are ordered (L, R). Keys are written in canonical order and
// accepted in any order.
std::string write_model_json(const Model& m);
ProbabilityTable read_table_json(std::string_view text, double* epsilon_out = nullptr);
Model read_model_json(std::string_view text);

}  // namespace cfl
