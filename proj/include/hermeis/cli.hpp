#pragma once

#include <iosfwd>
#include <string>

#include "hermeis/freq_plan.hpp"

namespace hermeis {

// Command implementations behind the CLI front end. Each returns a process
// exit status: 0 success, 1 failed verification, 2 usage/configuration error.
int cmd_plan(double f_i, const ClockConfig& clocks, std::ostream& out, std::ostream& err);
int cmd_sweep(const std::string& config_path, const std::string& out_path, int threads_override,
              std::ostream& out, std::ostream& err);
int cmd_verify(const std::string& config_path, const std::string& out_path, int threads_override,
               std::ostream& out, std::ostream& err);
int cmd_capacity(double throughput_bytes_per_s, double pair_bytes, std::ostream& out,
                 std::ostream& err);

}  // namespace hermeis
