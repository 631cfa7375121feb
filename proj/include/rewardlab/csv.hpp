#pragma once

// Tabular export for external plotting. All numbers are written with 17
// significant digits so files re-read bit-exactly; files are written to
// a temporary name and renamed into place.

#include <string>

#include "rewardlab/dynamics.hpp"

namespace rewardlab {

std::string format_g17(double x);

void write_text_file_atomic(const std::string& path, const std::string& content);

// header: step,time,prob_0..prob_{n-1},v_proxy,v_truth,reward_variance_proxy
void write_trajectory_csv(const trajectory& traj, const std::string& path);
trajectory read_trajectory_csv(const std::string& path);

}  // namespace rewardlab
