// commands.hpp: Command dispatch for the qotto front end

#pragma once

#include <filesystem>
#include <vector>

#include "json.hpp"
#include "qotto/app/config.hpp"

namespace qotto::app {

struct RunReport {
    std::vector<std::filesystem::path> files;  // in write order
    nlohmann::json summary;
};

// Reported work unit: 2π·kHz (ħ = 1). Power: that unit per µs of stroke time.
double work_to_report(double work_rad_s);
double power_to_report(double power_rad_s2);

// Runs config.command and writes its outputs into out_dir (created if needed).
RunReport run(const RunConfig& config, const std::filesystem::path& out_dir);

} // namespace qotto::app
