#pragma once

#include <iosfwd>
#include <string>

#include "hermeis/sweep.hpp"

namespace hermeis {

// Flat key-value configuration with dotted section prefixes, e.g.
//
//   grid.f_lo = 0.05
//   clocks.f_s = 200e3
//   channel.1.r_f = 100e3
//
// '#' starts a comment. Unknown and duplicate keys are rejected.
SweepConfig parse_config(const std::string& path);
SweepConfig parse_config_text(const std::string& text, const std::string& origin = "<config>");

// HERMEIS_SEED, when set, replaces the reference seed and every channel seed
// (channel seed = HERMEIS_SEED + channel id) for reproducible CI runs.
void apply_seed_override(SweepConfig& cfg, const char* env_value);

}  // namespace hermeis
